//! Closed-form 2-adic valuations (normalized so that `v(2) = 1`) of
//! `η + 1 + η⁻¹` and `ω - 1` for roots of unity of a given order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use crate::error::{domain, Result};

/// A valuation: `∞` or a nonnegative rational `num / 2^log2_den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite { num: u64, log2_den: u32 },
    Infinite,
}

impl Valuation {
    pub fn finite(num: u64, log2_den: u32) -> Self {
        let (mut num, mut log2_den) = (num, log2_den);
        while log2_den > 0 && num % 2 == 0 {
            num /= 2;
            log2_den -= 1;
        }
        if num == 0 {
            log2_den = 0;
        }
        Valuation::Finite { num, log2_den }
    }

    pub fn zero() -> Self {
        Self::finite(0, 0)
    }

    /// `1 / 2^k`.
    pub fn inv_pow2(k: u32) -> Self {
        Self::finite(1, k)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Valuation::Finite { num: a, log2_den: x }, Valuation::Finite { num: b, log2_den: y }) => {
                let d = x.max(y);
                Self::finite((a << (d - x)) + (b << (d - y)), d)
            }
            _ => Valuation::Infinite,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite { num: a, log2_den: x }, Valuation::Finite { num: b, log2_den: y }) => {
                let d = *x.max(y);
                ((*a as u128) << (d - x)).cmp(&((*b as u128) << (d - y)))
            }
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Valuation::Infinite => write!(f, "inf"),
            Valuation::Finite { num, log2_den: 0 } => write!(f, "{num}"),
            Valuation::Finite { num, log2_den } => write!(f, "{num}/{}", 1u128 << log2_den),
        }
    }
}

/// If `n = 2^(k+1)` for some `k >= 0`, returns `k`.
fn log2_minus_one(n: u64) -> Option<u32> {
    (n >= 2 && n.is_power_of_two()).then(|| n.trailing_zeros() - 1)
}

/// `v(ω - 1)` for `ω` a primitive `l`-th root of unity.
pub fn valuation_omega(l: u64) -> Result<Valuation> {
    match l {
        0 => domain("root of unity order must be positive"),
        1 => Ok(Valuation::Infinite),
        _ => Ok(log2_minus_one(l).map_or(Valuation::zero(), Valuation::inv_pow2)),
    }
}

/// `v(η + 1 + η⁻¹)` for `η` a primitive `m`-th root of unity.
pub fn valuation_eta(m: u64) -> Result<Valuation> {
    match m {
        0 => domain("root of unity order must be positive"),
        3 => Ok(Valuation::Infinite),
        _ if m % 3 == 0 => Ok(log2_minus_one(m / 3).map_or(Valuation::zero(), Valuation::inv_pow2)),
        _ => Ok(Valuation::zero()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::gcd;

    #[test]
    fn eta_values() {
        assert_eq!(valuation_eta(3).unwrap(), Valuation::Infinite);
        assert_eq!(valuation_eta(6).unwrap(), Valuation::finite(1, 0));
        assert_eq!(valuation_eta(12).unwrap(), Valuation::inv_pow2(1));
        assert_eq!(valuation_eta(24).unwrap(), Valuation::inv_pow2(2));
        assert_eq!(valuation_eta(5).unwrap(), Valuation::zero());
        assert_eq!(valuation_eta(1).unwrap(), Valuation::zero());
        assert_eq!(valuation_eta(9).unwrap(), Valuation::zero());
        assert!(valuation_eta(0).is_err());
    }

    #[test]
    fn omega_values() {
        assert_eq!(valuation_omega(1).unwrap(), Valuation::Infinite);
        assert_eq!(valuation_omega(2).unwrap(), Valuation::finite(1, 0));
        assert_eq!(valuation_omega(4).unwrap(), Valuation::inv_pow2(1));
        assert_eq!(valuation_omega(6).unwrap(), Valuation::zero());
    }

    #[test]
    fn eta_is_difference_of_omegas() {
        // v(η+1+η⁻¹) = v(η³-1) - v(η-1) for η ≠ 1 of order m
        for m in 2..500u64 {
            let cube_order = m / gcd(m, 3);
            let lhs = valuation_eta(m).unwrap();
            let top = valuation_omega(cube_order).unwrap();
            let bottom = valuation_omega(m).unwrap();
            if top.is_infinite() {
                assert!(lhs.is_infinite());
            } else {
                assert_eq!(lhs + bottom, top, "m = {m}");
            }
        }
    }

    #[test]
    fn arithmetic_and_display() {
        assert_eq!(Valuation::inv_pow2(1) + Valuation::inv_pow2(1), Valuation::finite(1, 0));
        assert_eq!(Valuation::inv_pow2(2) + Valuation::Infinite, Valuation::Infinite);
        assert_eq!(Valuation::inv_pow2(2).to_string(), "1/4");
        assert_eq!(Valuation::finite(3, 2).to_string(), "3/4");
        assert_eq!(Valuation::Infinite.to_string(), "inf");
        assert!(Valuation::inv_pow2(3) < Valuation::inv_pow2(1));
        assert!(Valuation::finite(5, 0) < Valuation::Infinite);
    }
}
