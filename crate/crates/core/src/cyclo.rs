//! Exact arithmetic in `Z[X]/(Φ_N)`, the ring generated by a primitive
//! `N`-th root of unity `ζ`. Elements of the form `1 + ζ^p + ζ^{-p}` stand
//! for the real numbers `1 + 2cos(2πp/N)`, so trigonometric identities
//! among them become exact polynomial identities.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::poly::{cyclotomic_poly, IntPoly};

/// Residue class in `Z[X]/(Φ_N)`, stored as the `φ(N)` coefficients of the
/// canonical remainder.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    conductor: u64,
    coeffs: Vec<BigInt>,
}

impl CycloElement {
    /// Reduces an arbitrary polynomial in `ζ` modulo `Φ_N`.
    pub fn from_poly(conductor: u64, poly: &IntPoly) -> Self {
        let phi = cyclotomic_poly(conductor);
        let (_, r) = poly.div_rem(&phi);
        let deg = phi.degree().expect("cyclotomic polynomials are nonzero");
        let coeffs = (0..deg).map(|i| r.coeff(i)).collect();
        Self { conductor, coeffs }
    }

    pub fn constant(conductor: u64, c: impl Into<BigInt>) -> Self {
        Self::from_poly(conductor, &IntPoly::new(vec![c.into()]))
    }

    /// `ζ^k` for any integer `k`.
    pub fn root_power(conductor: u64, k: i64) -> Self {
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut c = vec![BigInt::zero(); e + 1];
        c[e] = 1.into();
        Self::from_poly(conductor, &IntPoly::new(c))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor, "conductors differ");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self {
            conductor: self.conductor,
            coeffs,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor, "conductors differ");
        let product = IntPoly::new(self.coeffs.clone()).mul(&IntPoly::new(other.coeffs.clone()));
        Self::from_poly(self.conductor, &product)
    }

    /// The integer this element equals, if it is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }
}

/// `1 + ζ^p + ζ^{-p}` in conductor `N`, i.e. `1 + 2cos(2πp/N)`.
pub fn lambda_element(conductor: u64, p: u64) -> Result<CycloElement> {
    if conductor < 2 || p == 0 || p >= conductor {
        return domain(format!("exponent {p} outside [1, {}]", conductor.saturating_sub(1)));
    }
    Ok(lambda_any(conductor, p))
}

/// `lambda_element` for any exponent (taken mod `N`; exponent 0 gives 3).
pub(crate) fn lambda_any(conductor: u64, p: u64) -> CycloElement {
    let n = conductor as i64;
    let p = (p % conductor) as i64;
    CycloElement::constant(conductor, 1)
        .add(&CycloElement::root_power(conductor, p))
        .add(&CycloElement::root_power(conductor, n - p))
}

/// `X^k mod Φ_N` for `k` in `0..N`, as machine integers when they fit.
struct PowerTable {
    rows: Option<Vec<Vec<i64>>>,
}

fn power_table(conductor: u64) -> Arc<PowerTable> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<PowerTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("power table cache poisoned").get(&conductor) {
        return Arc::clone(t);
    }
    let rows: Option<Vec<Vec<i64>>> = (0..conductor as i64)
        .map(|k| {
            CycloElement::root_power(conductor, k)
                .coeffs
                .iter()
                .map(ToPrimitive::to_i64)
                .collect()
        })
        .collect();
    let table = Arc::new(PowerTable { rows });
    cache
        .lock()
        .expect("power table cache poisoned")
        .entry(conductor)
        .or_insert_with(|| Arc::clone(&table));
    table
}

/// Element of the group ring `Z[X]/(X^N - 1)`, which maps onto `Z[X]/(Φ_N)`.
/// Products of the sparse factors used here are cheap in this form.
fn group_ring_product(conductor: u64, exps: &[u64]) -> Option<Vec<i128>> {
    let n = conductor as usize;
    let mut acc = vec![0i128; n];
    acc[0] = 1;
    for &e in exps {
        let e = (e % conductor) as usize;
        let mut next = vec![0i128; n];
        for (k, &c) in acc.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for shift in [0, e, (n - e) % n] {
                let slot = &mut next[(k + shift) % n];
                *slot = slot.checked_add(c)?;
            }
        }
        acc = next;
    }
    Some(acc)
}

/// Whether a group-ring element equals the integer `target` modulo `Φ_N`.
/// `None` when machine arithmetic would overflow.
fn group_ring_equals(conductor: u64, element: &[i128], target: i128) -> Option<bool> {
    let table = power_table(conductor);
    let rows = table.rows.as_ref()?;
    let width = rows[0].len();
    let mut residue = vec![0i128; width];
    for (k, &c) in element.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (slot, &t) in residue.iter_mut().zip(&rows[k]) {
            *slot = slot.checked_add(c.checked_mul(t as i128)?)?;
        }
    }
    residue[0] = residue[0].checked_sub(target)?;
    Some(residue.iter().all(|&x| x == 0))
}

fn product_slow(conductor: u64, exps: &[u64], target: i64) -> bool {
    let product = exps.iter().fold(CycloElement::constant(conductor, 1), |acc, &e| {
        acc.mul(&lambda_any(conductor, e))
    });
    product == CycloElement::constant(conductor, target)
}

/// Whether `∏ (1 + ζ^{p_i} + ζ^{-p_i}) = target` holds exactly in conductor `N`.
pub fn product_equals(conductor: u64, exps: &[u64], target: i64) -> Result<bool> {
    if exps.is_empty() {
        return domain("empty exponent list");
    }
    if let Some(&p) = exps.iter().find(|&&p| p == 0 || p >= conductor) {
        return domain(format!("exponent {p} outside [1, {}]", conductor.saturating_sub(1)));
    }
    Ok(product_equals_any(conductor, exps, target))
}

/// `product_equals` with exponents taken mod `N` (exponent 0 is the factor 3).
pub(crate) fn product_equals_any(conductor: u64, exps: &[u64], target: i64) -> bool {
    group_ring_product(conductor, exps)
        .and_then(|g| group_ring_equals(conductor, &g, target as i128))
        .unwrap_or_else(|| product_slow(conductor, exps, target))
}

/// Whether `Σ (ζ^{e_i} + ζ^{-e_i}) = target`, i.e. `Σ 2cos(2π e_i/N) = target`,
/// holds exactly. Exponents are taken mod `N`.
pub fn cosine_sum_equals(conductor: u64, exps: &[u64], target: i64) -> bool {
    let n = conductor as usize;
    let mut element = vec![0i128; n];
    for &e in exps {
        let e = (e % conductor) as usize;
        element[e] += 1;
        element[(n - e) % n] += 1;
    }
    group_ring_equals(conductor, &element, target as i128).unwrap_or_else(|| {
        let sum = exps.iter().fold(CycloElement::constant(conductor, 0), |acc, &e| {
            acc.add(&CycloElement::root_power(conductor, e as i64))
                .add(&CycloElement::root_power(conductor, -(e as i64)))
        });
        sum == CycloElement::constant(conductor, target)
    })
}
