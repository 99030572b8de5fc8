//! Finite fields `F_q`, `q = p^e`, in a polynomial basis over `F_p`.
//!
//! A [`Field`] precomputes full addition and multiplication tables, so the
//! supported fields are small (`q <= 256` by default). Elements are plain
//! indices into those tables: the element with coefficient vector
//! `(c_0, ..., c_{e-1})` (constant term first) has index `sum c_k p^k`.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};

/// Default upper bound on `q`.
pub const DEFAULT_FIELD_BOUND: usize = 256;

/// Field description as it appears in configuration files.
///
/// `modulus` lists the `e + 1` coefficients of a monic degree-`e` polynomial,
/// constant term first. It may be omitted for prime fields and for the
/// built-in extension fields of order 4, 8, 9, 16, 25 and 27.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, e: 1, modulus: None }
    }

    pub fn extension(p: u32, e: u32) -> Self {
        FieldSpec { p, e, modulus: None }
    }

    pub fn order(&self) -> Option<usize> {
        (self.p as usize).checked_pow(self.e)
    }
}

/// Moduli shipped with the library, constant term first.
pub fn builtin_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, e) {
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (3, 2) => &[1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (5, 2) => &[2, 0, 1],
        (3, 3) => &[1, 2, 0, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

/// An element of a [`Field`], stored as its table index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A finite field with precomputed arithmetic tables.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    p: u32,
    e: u32,
    q: usize,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    trace: Vec<u8>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m` over `Z_p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (k, &c) in m.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + k] = (r[shift + k] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for k in 1..=deg / 2 {
        let count = (p as usize).pow(k as u32);
        for code in 0..count {
            let mut f = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                f.push((c % p as usize) as u32);
                c /= p as usize;
            }
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(spec: &FieldSpec) -> Result<Field> {
        Field::with_bound(spec, DEFAULT_FIELD_BOUND)
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(&FieldSpec::prime(p))
    }

    pub fn extension(p: u32, e: u32) -> Result<Field> {
        Field::new(&FieldSpec::extension(p, e))
    }

    pub fn with_bound(spec: &FieldSpec, bound: usize) -> Result<Field> {
        let (p, e) = (spec.p, spec.e);
        if !is_prime(p) {
            return Err(Error::Domain(format!("characteristic {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Domain("extension degree must be at least 1".into()));
        }
        let q = spec
            .order()
            .filter(|&q| q <= bound)
            .ok_or(Error::Resource {
                what: "field order",
                needed: spec.order().unwrap_or(usize::MAX),
                bound,
            })?;
        if q > u16::MAX as usize {
            return Err(Error::Resource {
                what: "field order",
                needed: q,
                bound: u16::MAX as usize,
            });
        }
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            let m = match &spec.modulus {
                Some(m) => m.clone(),
                None => builtin_modulus(p, e).ok_or_else(|| {
                    Error::Config(format!(
                        "no built-in modulus for F_{p}^{e}; supply one in the config"
                    ))
                })?,
            };
            if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                return Err(Error::Domain(format!(
                    "modulus {m:?} is not a monic degree-{e} polynomial over F_{p}"
                )));
            }
            if !is_irreducible(&m, p) {
                return Err(Error::Domain(format!("modulus {m:?} is reducible over F_{p}")));
            }
            m
        };

        let mut field = Field {
            spec: FieldSpec { p, e, modulus: spec.modulus.clone() },
            p,
            e,
            q,
            modulus,
            add: vec![0; q * q],
            mul: vec![0; q * q],
            neg: vec![0; q],
            inv: vec![0; q],
            trace: vec![0; q],
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let e = self.e as usize;
        let p = self.p;
        let coeffs: Vec<Vec<u32>> = (0..q).map(|a| self.digits(a)).collect();
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = (0..e).map(|k| (coeffs[a][k] + coeffs[b][k]) % p).collect();
                self.add[a * q + b] = self.undigits(&sum) as u16;

                let mut prod = vec![0u32; 2 * e - 1];
                for i in 0..e {
                    for j in 0..e {
                        prod[i + j] =
                            ((prod[i + j] as u64 + coeffs[a][i] as u64 * coeffs[b][j] as u64)
                                % p as u64) as u32;
                    }
                }
                let mut red = poly_rem(&prod, &self.modulus, p);
                red.resize(e, 0);
                self.mul[a * q + b] = self.undigits(&red) as u16;
            }
        }
        for a in 0..q {
            for b in 0..q {
                if self.add[a * q + b] == 0 {
                    self.neg[a] = b as u16;
                }
                if self.mul[a * q + b] == 1 {
                    self.inv[a] = b as u16;
                }
            }
        }
        for a in 0..q {
            let mut acc = FieldElement(0);
            let mut x = FieldElement(a as u16);
            for _ in 0..e {
                acc = self.add(acc, x);
                x = self.pow(x, p as u64);
            }
            debug_assert!(acc.index() < p as usize, "trace must land in the prime field");
            self.trace[a] = acc.0 as u8;
        }
    }

    fn digits(&self, mut a: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            out.push((a % self.p as usize) as u32);
            a /= self.p as usize;
        }
        out
    }

    fn undigits(&self, c: &[u32]) -> usize {
        c.iter().rev().fold(0usize, |acc, &d| acc * self.p as usize + d as usize)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u16).map(FieldElement)
    }

    /// Element from its polynomial-basis coefficients, constant term first.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(usage(format!(
                "{coeffs:?} is not a coefficient vector of F_{}",
                self.q
            )));
        }
        Ok(FieldElement(self.undigits(coeffs) as u16))
    }

    /// The image of the integer `n` under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u16)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        self.digits(a.index())
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.index() < self.q
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(usage(format!("element index {} is not in F_{}", a.0, self.q)))
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.index() * self.q + b.index()])
    }

    /// Checked addition: rejects elements that do not belong to this field.
    pub fn try_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::Domain("zero has no multiplicative inverse".into()));
        }
        Ok(FieldElement(self.inv[a.index()]))
    }

    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Absolute trace `a + a^p + ... + a^(p^(e-1))`, as a residue mod `p`.
    #[inline]
    pub fn trace(&self, a: FieldElement) -> u32 {
        self.trace[a.index()] as u32
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<usize> {
        if a.is_zero() || !self.contains(a) {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// The least element of multiplicative order `q - 1`, where elements are
    /// compared lexicographically by coefficient vector (constant term first).
    pub fn primitive_element(&self) -> FieldElement {
        let mut candidates: Vec<(Vec<u32>, FieldElement)> = self
            .elements()
            .skip(1)
            .map(|a| (self.coeffs(a), a))
            .collect();
        candidates.sort();
        candidates
            .into_iter()
            .map(|(_, a)| a)
            .find(|&a| self.multiplicative_order(a) == Some(self.q - 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        a.is_zero() || self.elements().any(|b| self.mul(b, b) == a)
    }

    /// The nonsquare of least index, if any (none in characteristic 2).
    pub fn least_nonsquare(&self) -> Option<FieldElement> {
        self.elements().find(|&a| !self.is_square(a))
    }

    /// Elements of the subfield `F_{p^k}`, in index order. Requires `k | e`.
    pub fn subfield(&self, k: u32) -> Result<Vec<FieldElement>> {
        if k == 0 || !self.e.is_multiple_of(k) {
            return Err(usage(format!(
                "F_{}^{} has no subfield of degree {k}",
                self.p, self.e
            )));
        }
        let sub_q = (self.p as u64).pow(k);
        Ok(self.elements().filter(|&a| self.pow(a, sub_q) == a).collect())
    }

    /// Trace from the subfield `F_{p^k}` down to `F_p` of an element of that
    /// subfield, as a residue mod `p`.
    pub fn subfield_trace(&self, a: FieldElement, k: u32) -> u32 {
        let mut acc = FieldElement::ZERO;
        let mut x = a;
        for _ in 0..k {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as u64);
        }
        debug_assert!(acc.index() < self.p as usize);
        acc.0 as u32
    }
}
