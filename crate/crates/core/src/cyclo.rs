//! Exact arithmetic in the ring of cyclotomic integers `Z[ζ_m]`.
//!
//! Elements are kept in canonical form: the power basis `1, ζ, ..., ζ^(φ(m)-1)`
//! after reduction modulo the cyclotomic polynomial `Φ_m`. Two elements are
//! equal exactly when their coefficient vectors are equal.
//!
//! Coefficients are `i64` with checked arithmetic. Every quantity produced by
//! this crate is bounded by a small power of `|X| <= 4096`, far inside the
//! `i64` range; an overflow panics rather than wrapping.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{usage, Result};

/// Coefficients of `Φ_m`, constant term first.
///
/// Computed by exact division of `x^m - 1` by `Φ_d` for every proper divisor
/// `d` of `m`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Exact division by a monic polynomial; panics on a nonzero remainder.
fn div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![0i64; a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db];
        quot[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Reduction data for one order `m`.
#[derive(Debug)]
pub struct CycloRing {
    order: u32,
    phi: usize,
    polynomial: Vec<i64>,
    /// `powers[k]` is the canonical coefficient vector of `ζ^k`, `0 <= k < m`.
    powers: Vec<Vec<i64>>,
}

impl CycloRing {
    fn build(order: u32) -> CycloRing {
        let polynomial = cyclotomic_polynomial(order);
        let phi = polynomial.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x, then fold the x^phi term back using the monic Φ_m
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
            for k in 0..phi {
                next[k] -= top * polynomial[k];
            }
            cur = next;
        }
        CycloRing { order, phi, polynomial, powers }
    }

    /// Shared ring for order `m`, cached for the lifetime of the process.
    pub fn get(order: u32) -> Arc<CycloRing> {
        static RINGS: OnceLock<Mutex<HashMap<u32, Arc<CycloRing>>>> = OnceLock::new();
        let rings = RINGS.get_or_init(Default::default);
        let mut map = rings.lock().expect("ring cache poisoned");
        map.entry(order)
            .or_insert_with(|| Arc::new(CycloRing::build(order)))
            .clone()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(m)`, the dimension of the power basis.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn polynomial(&self) -> &[i64] {
        &self.polynomial
    }
}

/// An element of `Z[ζ_m]` in canonical form.
#[derive(Clone)]
pub struct CycloInt {
    ring: Arc<CycloRing>,
    coeffs: Vec<i64>,
}

impl PartialEq for CycloInt {
    fn eq(&self, other: &Self) -> bool {
        self.ring.order == other.ring.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloInt {}

impl fmt::Debug for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloInt<{}>({})", self.ring.order, self)
    }
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("cyclotomic coefficient overflow")
}

/// Floating-point image of a cyclotomic integer under `ζ ↦ e^(2πi/m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approx {
    pub value: Complex64,
    /// Bound on the absolute rounding error: `φ(m) · max|c_k| · u`, with `u`
    /// scaled for the handful of operations per term.
    pub error_bound: f64,
}

impl CycloInt {
    pub fn zero(order: u32) -> CycloInt {
        let ring = CycloRing::get(order);
        let coeffs = vec![0; ring.phi];
        CycloInt { ring, coeffs }
    }

    pub fn from_int(order: u32, n: i64) -> CycloInt {
        let mut z = CycloInt::zero(order);
        z.coeffs[0] = n;
        z
    }

    pub fn one(order: u32) -> CycloInt {
        CycloInt::from_int(order, 1)
    }

    /// `ζ_m^(k mod m)`.
    pub fn root_of_unity(order: u32, k: i64) -> CycloInt {
        let ring = CycloRing::get(order);
        let idx = k.rem_euclid(order as i64) as usize;
        let coeffs = ring.powers[idx].clone();
        CycloInt { ring, coeffs }
    }

    /// Builds an element from raw power-basis coefficients of any length,
    /// reducing modulo `Φ_m`.
    pub fn from_coeffs(order: u32, raw: &[i64]) -> CycloInt {
        let ring = CycloRing::get(order);
        let mut counts = vec![0i64; order as usize];
        for (k, &c) in raw.iter().enumerate() {
            let slot = &mut counts[k % order as usize];
            *slot = checked_add(*slot, c);
        }
        CycloInt::from_exponent_counts(&ring, &counts)
    }

    /// `Σ_k counts[k] ζ^k` for `k < m`. This is how character sums are
    /// assembled: tally exponents, then reduce once.
    pub fn from_exponent_counts(ring: &Arc<CycloRing>, counts: &[i64]) -> CycloInt {
        debug_assert!(counts.len() <= ring.order as usize);
        let mut coeffs = vec![0i64; ring.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (slot, &v) in coeffs.iter_mut().zip(&ring.powers[k]) {
                if v != 0 {
                    *slot = checked_add(*slot, checked_mul(c, v));
                }
            }
        }
        CycloInt { ring: ring.clone(), coeffs }
    }

    pub fn order(&self) -> u32 {
        self.ring.order
    }

    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same_order(&self, other: &CycloInt) -> Result<()> {
        if self.ring.order == other.ring.order {
            Ok(())
        } else {
            Err(usage(format!(
                "cannot combine elements of Z[ζ_{}] and Z[ζ_{}]",
                self.ring.order, other.ring.order
            )))
        }
    }

    pub fn try_add(&self, other: &CycloInt) -> Result<CycloInt> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| checked_add(a, b))
            .collect();
        Ok(CycloInt { ring: self.ring.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &CycloInt) -> Result<CycloInt> {
        self.try_add(&other.negate())
    }

    pub fn try_mul(&self, other: &CycloInt) -> Result<CycloInt> {
        self.same_order(other)?;
        let phi = self.ring.phi;
        let mut full = vec![0i64; 2 * phi - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    full[i + j] = checked_add(full[i + j], checked_mul(a, b));
                }
            }
        }
        let mut coeffs = full[..phi].to_vec();
        let m = self.ring.order as usize;
        for (k, &c) in full.iter().enumerate().skip(phi) {
            if c == 0 {
                continue;
            }
            for (slot, &v) in coeffs.iter_mut().zip(&self.ring.powers[k % m]) {
                if v != 0 {
                    *slot = checked_add(*slot, checked_mul(c, v));
                }
            }
        }
        Ok(CycloInt { ring: self.ring.clone(), coeffs })
    }

    pub fn negate(&self) -> CycloInt {
        CycloInt {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|&c| c.checked_neg().expect("overflow")).collect(),
        }
    }

    pub fn scale(&self, n: i64) -> CycloInt {
        CycloInt {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|&c| checked_mul(c, n)).collect(),
        }
    }

    /// Exact division by a rational integer, if every coefficient divides.
    pub fn div_exact(&self, n: i64) -> Option<CycloInt> {
        if n == 0 || self.coeffs.iter().any(|&c| c % n != 0) {
            return None;
        }
        Some(CycloInt {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|&c| c / n).collect(),
        })
    }

    /// Complex conjugation, `ζ ↦ ζ^(-1)`.
    pub fn conjugate(&self) -> CycloInt {
        let m = self.ring.order as usize;
        let mut counts = vec![0i64; m];
        for (k, &c) in self.coeffs.iter().enumerate() {
            counts[(m - k) % m] = c;
        }
        CycloInt::from_exponent_counts(&self.ring, &counts)
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// `Some(n)` when the element is the rational integer `n`.
    pub fn as_rational_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn approx(&self) -> Approx {
        let m = self.ring.order as f64;
        let mut value = Complex64::new(0.0, 0.0);
        let mut max = 0i64;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            max = max.max(c.abs());
            let angle = 2.0 * std::f64::consts::PI * k as f64 / m;
            value += Complex64::from_polar(c as f64, angle);
        }
        let u = f64::EPSILON / 2.0;
        Approx {
            value,
            error_bound: 8.0 * self.ring.phi as f64 * max as f64 * u,
        }
    }
}

impl fmt::Display for CycloInt {
    /// Renders `c0 + c1·z + c2·z^2 + ...` with `z = ζ_m`, skipping zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            let monomial = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            match (k, mag) {
                (0, _) => write!(f, "{mag}")?,
                (_, 1) => write!(f, "{monomial}")?,
                _ => write!(f, "{mag}·{monomial}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CycloInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let a = self.approx().value;
        let mut s = serializer.serialize_struct("CycloInt", 3)?;
        s.serialize_field("order", &self.ring.order)?;
        s.serialize_field("coeffs", &self.coeffs)?;
        s.serialize_field("approx", &[a.re, a.im])?;
        s.end()
    }
}

impl Add for &CycloInt {
    type Output = CycloInt;
    fn add(self, rhs: &CycloInt) -> CycloInt {
        self.try_add(rhs).expect("mixed-order cyclotomic addition")
    }
}

impl Sub for &CycloInt {
    type Output = CycloInt;
    fn sub(self, rhs: &CycloInt) -> CycloInt {
        self.try_sub(rhs).expect("mixed-order cyclotomic subtraction")
    }
}

impl Mul for &CycloInt {
    type Output = CycloInt;
    fn mul(self, rhs: &CycloInt) -> CycloInt {
        self.try_mul(rhs).expect("mixed-order cyclotomic multiplication")
    }
}

impl Neg for &CycloInt {
    type Output = CycloInt;
    fn neg(self) -> CycloInt {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    fn z(m: u32, k: i64) -> CycloInt {
        CycloInt::root_of_unity(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        // (x^6 - 1) / ((x - 1)(x + 1)(x^2 + x + 1))
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(z(2, 1).as_rational_integer(), Some(-1));
        assert_eq!(z(5, 5), CycloInt::one(5));
        assert_eq!(z(5, 4).coeffs(), &[-1, -1, -1, -1]);
        assert_eq!(z(5, -1), z(5, 4));
    }

    #[test]
    fn ring_examples() {
        let s = &(&z(5, 1) + &z(5, 4)) + &(&z(5, 2) + &z(5, 3));
        assert_eq!(s.as_rational_integer(), Some(-1));
        assert_eq!(&z(3, 1) * &z(3, 2), CycloInt::one(3));
        let one = CycloInt::one(4);
        let i = z(4, 1);
        assert_eq!((&(&one + &i) * &(&one - &i)).as_rational_integer(), Some(2));
    }

    #[test]
    fn conjugates() {
        assert_eq!(z(5, 1).conjugate().coeffs(), &[-1, -1, -1, -1]);
        assert_eq!(CycloInt::from_int(7, -1).conjugate(), CycloInt::from_int(7, -1));
        assert_eq!(z(4, 1).conjugate(), z(4, 1).negate());
    }

    #[test]
    fn rational_integers() {
        assert_eq!(CycloInt::from_int(2, -2).as_rational_integer(), Some(-2));
        assert_eq!(z(5, 1).as_rational_integer(), None);
    }

    #[test]
    fn approximations() {
        let a = CycloInt::from_int(3, -1).approx();
        assert_eq!(a.value, Complex64::new(-1.0, 0.0));
        let golden = (&z(5, 1) + &z(5, 4)).approx();
        let oracle = 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos();
        assert!((golden.value.re - oracle).abs() < 1e-12);
        assert!((golden.value.re - 0.618034).abs() < 1e-6);
        assert!(golden.value.im.abs() <= golden.error_bound.max(1e-15));
        let i = z(4, 1).approx();
        assert!((i.value - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn mixed_orders_are_rejected() {
        assert!(matches!(z(3, 1).try_add(&z(5, 1)), Err(Error::Usage(_))));
        assert!(matches!(z(3, 1).try_mul(&z(4, 1)), Err(Error::Usage(_))));
    }

    #[test]
    fn full_period_sums_vanish() {
        for m in 2..=40u32 {
            let s = (0..m as i64).fold(CycloInt::zero(m), |acc, k| &acc + &z(m, k));
            assert!(s.is_zero(), "sum of {m}-th roots");
        }
    }

    #[test]
    fn display_format() {
        assert_eq!(z(5, 4).to_string(), "-1 - z - z^2 - z^3");
        assert_eq!(CycloInt::from_coeffs(8, &[2, 0, -3]).to_string(), "2 - 3·z^2");
        assert_eq!(CycloInt::zero(5).to_string(), "0");
    }

    fn element(m: u32) -> impl Strategy<Value = CycloInt> {
        prop::collection::vec(-20i64..20, m as usize)
            .prop_map(move |raw| CycloInt::from_coeffs(m, &raw))
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent(m in 1u32..30, raw in prop::collection::vec(-50i64..50, 0..40)) {
            let a = CycloInt::from_coeffs(m, &raw);
            prop_assert_eq!(CycloInt::from_coeffs(m, a.coeffs()), a);
        }

        #[test]
        fn ring_axioms_order_12((a, b, c) in (element(12), element(12), element(12))) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, CycloInt::zero(12));
        }

        #[test]
        fn conjugation_is_a_ring_involution((a, b) in (element(15), element(15))) {
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        }

        #[test]
        fn approx_is_a_homomorphism((a, b) in (element(9), element(9))) {
            let lhs = (&a * &b).approx().value;
            let rhs = a.approx().value * b.approx().value;
            prop_assert!((lhs - rhs).norm() < 1e-6);
        }
    }
}
