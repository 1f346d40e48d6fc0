//! The norm function `g(m)`: the product of `1 + 2cos(2πa/m)` over reduced
//! residues `1 <= a < m/2`, computed by evaluating `Φ_m` at a primitive cube
//! root of unity.

use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclo::{lambda_element, CycloElement};
use crate::error::{domain, Error, Result};
use crate::numtheory::{gcd, totient};
use crate::poly::cyclotomic_poly;

/// `a + b·ζ₃` with `ζ₃² = -1 - ζ₃`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zeta() -> Self {
        Self::new(0, 1)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Add for &EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: Self) -> EisensteinInt {
        EisensteinInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Mul for &EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, rhs: Self) -> EisensteinInt {
        // (a + bζ)(c + dζ) = ac + (ad + bc)ζ + bdζ² = (ac - bd) + (ad + bc - bd)ζ
        let bd = &self.b * &rhs.b;
        EisensteinInt {
            a: &self.a * &rhs.a - &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a - bd,
        }
    }
}

impl Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt { a: -self.a, b: -self.b }
    }
}

/// `Φ_m(ζ₃)` by Horner's rule.
pub fn cyclotomic_at_zeta3(m: u64) -> EisensteinInt {
    let zeta = EisensteinInt::zeta();
    cyclotomic_poly(m)
        .coeffs()
        .iter()
        .rev()
        .fold(EisensteinInt::new(0, 0), |acc, c| {
            &(&acc * &zeta) + &EisensteinInt::new(c.clone(), 0)
        })
}

/// `g(m) = Φ_m(ζ₃) · ζ₃^{-φ(m)/2} · (-1)^{φ(m)/2}` for `m >= 4`.
pub fn g(m: u64) -> Result<BigInt> {
    if m < 4 {
        return domain(format!("g(m) is defined for m >= 4, got {m}"));
    }
    let half = totient(m) / 2;
    // ζ₃^{-h} = ζ₃^{2h mod 3}
    let twist = EisensteinInt::zeta().pow((2 * half) % 3);
    let mut value = &cyclotomic_at_zeta3(m) * &twist;
    if half % 2 == 1 {
        value = -value;
    }
    if !value.b.is_zero() {
        return Err(Error::Invariant(format!("g({m}) has nonzero ζ₃ component {}", value.b)));
    }
    Ok(value.a)
}

/// `g(m)` straight from its definition as a product of conjugates, multiplied
/// out in `Z[X]/(Φ_m)`.
pub fn g_by_product(m: u64) -> Result<BigInt> {
    if m < 4 {
        return domain(format!("g(m) is defined for m >= 4, got {m}"));
    }
    let mut acc = CycloElement::constant(m, BigInt::one());
    for a in (1..m).take_while(|&a| 2 * a < m).filter(|&a| gcd(a, m) == 1) {
        acc = acc.mul(&lambda_element(m, a)?);
    }
    acc.as_constant()
        .ok_or_else(|| Error::Invariant(format!("conjugate product for m = {m} is not an integer")))
}
