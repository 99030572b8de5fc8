//! The finite abelian group `X` carrying the scheme, with its inner product.
//!
//! Every space is a product of coordinate groups (copies of `F_q`, of a
//! subfield `F_q ⊂ F_{q^2}`, or of cyclic groups `Z_m`). Only the free
//! coordinates of a structured matrix are stored:
//!
//! * alternating matrices keep the strict upper triangle,
//! * symmetric matrices keep the upper triangle including the diagonal,
//! * Hermitian matrices keep the diagonal (over `F_q`) and the strict upper
//!   triangle (over `F_{q^2}`).
//!
//! Points are numbered by mixed-radix encoding of their free coordinates,
//! first coordinate least significant, so index 0 is always the zero element.

use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloInt, CycloRing};
use crate::error::{usage, Error, Result};
use crate::gf::{Field, FieldElement, FieldSpec};
use crate::matrix::FieldMatrix;

/// Default upper bound on `|X|`.
pub const DEFAULT_SIZE_BOUND: usize = 4096;

/// Space description as it appears in configuration files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceSpec {
    Vector { n: usize, field: FieldSpec },
    MatrixFull { m: usize, n: usize, field: FieldSpec },
    MatrixAlternating { m: usize, field: FieldSpec },
    /// `field` is `F_{q^2}`; the diagonal lives in its subfield `F_q`.
    MatrixHermitian { m: usize, field: FieldSpec },
    MatrixSymmetric { m: usize, field: FieldSpec },
    CyclicProduct { moduli: Vec<u32> },
}

impl SpaceSpec {
    pub fn field(&self) -> Option<&FieldSpec> {
        match self {
            SpaceSpec::Vector { field, .. }
            | SpaceSpec::MatrixFull { field, .. }
            | SpaceSpec::MatrixAlternating { field, .. }
            | SpaceSpec::MatrixHermitian { field, .. }
            | SpaceSpec::MatrixSymmetric { field, .. } => Some(field),
            SpaceSpec::CyclicProduct { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceKind {
    Vector { n: usize },
    MatrixFull { m: usize, n: usize },
    MatrixAlternating { m: usize },
    MatrixHermitian { m: usize },
    MatrixSymmetric { m: usize },
    CyclicProduct { moduli: Vec<u32> },
}

impl SpaceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SpaceKind::Vector { .. } => "vector",
            SpaceKind::MatrixFull { .. } => "matrix_full",
            SpaceKind::MatrixAlternating { .. } => "matrix_alternating",
            SpaceKind::MatrixHermitian { .. } => "matrix_hermitian",
            SpaceKind::MatrixSymmetric { .. } => "matrix_symmetric",
            SpaceKind::CyclicProduct { .. } => "cyclic_product",
        }
    }
}

/// A point of `X`, identified by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point(pub u32);

impl Point {
    pub const ZERO: Point = Point(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Coord {
    Field,
    Subfield,
    Cyclic(u32),
}

/// How one coordinate contributes to the bilinear pairing.
#[derive(Debug, Clone, Copy)]
enum PairTerm {
    /// `w · x_k · y_k`
    Plain(FieldElement),
    /// `x_k · conj(y_k) + conj(x_k) · y_k`
    Hermitian,
    /// `x_k · y_k · (ν / m_k)` in `Z_ν`
    Cyclic(u32),
}

#[derive(Debug, Clone)]
pub struct AbelianSpace {
    kind: SpaceKind,
    field: Option<Arc<Field>>,
    /// Hermitian only: the subfield `F_q` and digit lookup.
    subfield: Vec<FieldElement>,
    subfield_digit: Vec<u16>,
    subfield_degree: u32,
    conj: Vec<FieldElement>,
    coord_kinds: Vec<Coord>,
    radices: Vec<u32>,
    pair_terms: Vec<PairTerm>,
    /// Matrix kinds: `(row, col)` of each free coordinate.
    positions: Vec<(usize, usize)>,
    size: usize,
    exponent: u32,
    lambda: u32,
    coords: Vec<u16>,
    negation: Vec<u32>,
}

impl PartialEq for AbelianSpace {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.field.as_deref() == other.field.as_deref()
            && self.lambda == other.lambda
    }
}

impl AbelianSpace {
    pub fn new(spec: &SpaceSpec) -> Result<AbelianSpace> {
        AbelianSpace::with_options(spec, DEFAULT_SIZE_BOUND, 1)
    }

    /// Builds a space. The inner product uses the additive character
    /// `λ(a) = ζ_p^(c · tr(a))` where `c = lambda_multiplier`.
    pub fn with_options(
        spec: &SpaceSpec,
        size_bound: usize,
        lambda_multiplier: u32,
    ) -> Result<AbelianSpace> {
        let field = match spec.field() {
            Some(fs) => Some(Arc::new(Field::new(fs)?)),
            None => None,
        };
        let mut subfield = Vec::new();
        let mut subfield_degree = 0;
        let mut conj = Vec::new();
        let mut coord_kinds = Vec::new();
        let mut pair_terms = Vec::new();
        let mut positions = Vec::new();
        let one = FieldElement::ONE;

        let kind = match spec {
            SpaceSpec::Vector { n, .. } => {
                for _ in 0..*n {
                    coord_kinds.push(Coord::Field);
                    pair_terms.push(PairTerm::Plain(one));
                }
                SpaceKind::Vector { n: *n }
            }
            SpaceSpec::MatrixFull { m, n, .. } => {
                if m > n {
                    return Err(usage(format!("matrix_full needs m <= n, got {m} x {n}")));
                }
                for i in 0..*m {
                    for j in 0..*n {
                        positions.push((i, j));
                        coord_kinds.push(Coord::Field);
                        pair_terms.push(PairTerm::Plain(one));
                    }
                }
                SpaceKind::MatrixFull { m: *m, n: *n }
            }
            SpaceSpec::MatrixAlternating { m, .. } => {
                for i in 0..*m {
                    for j in i + 1..*m {
                        positions.push((i, j));
                        coord_kinds.push(Coord::Field);
                        pair_terms.push(PairTerm::Plain(one));
                    }
                }
                SpaceKind::MatrixAlternating { m: *m }
            }
            SpaceSpec::MatrixSymmetric { m, .. } => {
                let f = field.as_ref().expect("field-based kind");
                if f.characteristic() == 2 {
                    return Err(Error::Domain(
                        "symmetric forms need odd q for a nondegenerate pairing".into(),
                    ));
                }
                let two = f.from_int(2);
                for i in 0..*m {
                    for j in i..*m {
                        positions.push((i, j));
                        coord_kinds.push(Coord::Field);
                        pair_terms.push(PairTerm::Plain(if i == j { one } else { two }));
                    }
                }
                SpaceKind::MatrixSymmetric { m: *m }
            }
            SpaceSpec::MatrixHermitian { m, .. } => {
                let f = field.as_ref().expect("field-based kind");
                if f.degree() % 2 != 0 {
                    return Err(Error::Domain(
                        "Hermitian forms need a field F_{q^2} of even degree".into(),
                    ));
                }
                subfield_degree = f.degree() / 2;
                subfield = f.subfield(subfield_degree)?;
                let base_q = (f.characteristic() as u64).pow(subfield_degree);
                conj = f.elements().map(|a| f.pow(a, base_q)).collect();
                for i in 0..*m {
                    for j in i..*m {
                        positions.push((i, j));
                        if i == j {
                            coord_kinds.push(Coord::Subfield);
                            pair_terms.push(PairTerm::Plain(one));
                        } else {
                            coord_kinds.push(Coord::Field);
                            pair_terms.push(PairTerm::Hermitian);
                        }
                    }
                }
                SpaceKind::MatrixHermitian { m: *m }
            }
            SpaceSpec::CyclicProduct { moduli } => {
                if moduli.iter().any(|&m| m < 1) {
                    return Err(usage("cyclic moduli must be positive"));
                }
                SpaceKind::CyclicProduct { moduli: moduli.clone() }
            }
        };

        let exponent = match (&kind, &field) {
            (SpaceKind::CyclicProduct { moduli }, _) => {
                moduli.iter().fold(1u32, |acc, &m| acc.lcm(&m))
            }
            (_, Some(f)) => f.characteristic(),
            _ => unreachable!(),
        };
        if let SpaceKind::CyclicProduct { moduli } = &kind {
            for &m in moduli {
                coord_kinds.push(Coord::Cyclic(m));
                pair_terms.push(PairTerm::Cyclic(exponent / m));
            }
        }
        if exponent > 1 && lambda_multiplier.gcd(&exponent) != 1 {
            return Err(usage("the character multiplier must be coprime to the exponent"));
        }

        let radices: Vec<u32> = coord_kinds
            .iter()
            .map(|c| match c {
                Coord::Field => field.as_ref().unwrap().order() as u32,
                Coord::Subfield => subfield.len() as u32,
                Coord::Cyclic(m) => *m,
            })
            .collect();
        let size = radices
            .iter()
            .try_fold(1usize, |acc, &r| acc.checked_mul(r as usize))
            .filter(|&s| s <= size_bound)
            .ok_or_else(|| Error::Resource {
                what: "space size",
                needed: radices
                    .iter()
                    .try_fold(1usize, |acc, &r| acc.checked_mul(r as usize))
                    .unwrap_or(usize::MAX),
                bound: size_bound,
            })?;

        let mut subfield_digit = Vec::new();
        if let Some(f) = &field {
            subfield_digit = vec![u16::MAX; f.order()];
            for (d, a) in subfield.iter().enumerate() {
                subfield_digit[a.index()] = d as u16;
            }
        }

        let mut space = AbelianSpace {
            kind,
            field,
            subfield,
            subfield_digit,
            subfield_degree,
            conj,
            coord_kinds,
            radices,
            pair_terms,
            positions,
            size,
            exponent,
            lambda: lambda_multiplier % exponent.max(1),
            coords: Vec::new(),
            negation: Vec::new(),
        };
        space.materialize();
        Ok(space)
    }

    fn materialize(&mut self) {
        let k = self.coord_kinds.len();
        let mut coords = vec![0u16; self.size * k];
        for idx in 0..self.size {
            let mut rest = idx;
            for c in 0..k {
                let r = self.radices[c] as usize;
                let digit = rest % r;
                rest /= r;
                coords[idx * k + c] = match self.coord_kinds[c] {
                    Coord::Subfield => self.subfield[digit].0,
                    _ => digit as u16,
                };
            }
        }
        self.coords = coords;
        self.negation = (0..self.size)
            .map(|i| {
                let neg: Vec<u16> = (0..k)
                    .map(|c| self.coord_neg(c, self.coords[i * k + c]))
                    .collect();
                self.encode(&neg).0
            })
            .collect();
    }

    fn coord_neg(&self, c: usize, v: u16) -> u16 {
        match self.coord_kinds[c] {
            Coord::Field | Coord::Subfield => self.field().unwrap().neg(FieldElement(v)).0,
            Coord::Cyclic(m) => ((m - v as u32) % m) as u16,
        }
    }

    fn coord_add(&self, c: usize, a: u16, b: u16) -> u16 {
        match self.coord_kinds[c] {
            Coord::Field | Coord::Subfield => {
                self.field().unwrap().add(FieldElement(a), FieldElement(b)).0
            }
            Coord::Cyclic(m) => ((a as u32 + b as u32) % m) as u16,
        }
    }

    fn digit(&self, c: usize, v: u16) -> Option<usize> {
        match self.coord_kinds[c] {
            Coord::Field => ((v as u32) < self.radices[c]).then_some(v as usize),
            Coord::Subfield => self
                .subfield_digit
                .get(v as usize)
                .filter(|&&d| d != u16::MAX)
                .map(|&d| d as usize),
            Coord::Cyclic(m) => ((v as u32) < m).then_some(v as usize),
        }
    }

    fn encode(&self, coords: &[u16]) -> Point {
        self.try_encode(coords).expect("coordinates out of range")
    }

    fn try_encode(&self, coords: &[u16]) -> Option<Point> {
        let mut idx = 0usize;
        for c in (0..self.coord_kinds.len()).rev() {
            idx = idx * self.radices[c] as usize + self.digit(c, coords[c])?;
        }
        Some(Point(idx as u32))
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn field(&self) -> Option<&Field> {
        self.field.as_deref()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Exponent of `X`; also the order `m` of the cyclotomic ring holding
    /// inner-product values.
    pub fn character_order(&self) -> u32 {
        self.exponent
    }

    pub fn ring(&self) -> Arc<CycloRing> {
        CycloRing::get(self.exponent)
    }

    pub fn lambda_multiplier(&self) -> u32 {
        self.lambda
    }

    pub fn dimension(&self) -> usize {
        self.coord_kinds.len()
    }

    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    /// For Hermitian spaces, the degree of `F_q` over `F_p`.
    pub fn subfield_degree(&self) -> u32 {
        self.subfield_degree
    }

    pub fn points(&self) -> impl Iterator<Item = Point> {
        (0..self.size as u32).map(Point)
    }

    /// All points in index order, zero first.
    pub fn enumerate(&self) -> Vec<Point> {
        self.points().collect()
    }

    pub fn contains(&self, x: Point) -> bool {
        x.index() < self.size
    }

    fn check(&self, x: Point) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(usage(format!("point {} is not in a space of size {}", x.0, self.size)))
        }
    }

    /// Free coordinates of a point: field element indices or cyclic residues.
    #[inline]
    pub fn coords(&self, x: Point) -> &[u16] {
        let k = self.coord_kinds.len();
        &self.coords[x.index() * k..(x.index() + 1) * k]
    }

    pub fn point_from_coords(&self, coords: &[u16]) -> Result<Point> {
        if coords.len() != self.coord_kinds.len() {
            return Err(usage(format!(
                "expected {} coordinates, got {}",
                self.coord_kinds.len(),
                coords.len()
            )));
        }
        self.try_encode(coords)
            .ok_or_else(|| usage(format!("coordinates {coords:?} are out of range")))
    }

    #[inline]
    pub fn add(&self, x: Point, y: Point) -> Point {
        let (cx, cy) = (self.coords(x), self.coords(y));
        let mut idx = 0usize;
        for c in (0..cx.len()).rev() {
            let v = self.coord_add(c, cx[c], cy[c]);
            let d = match self.coord_kinds[c] {
                Coord::Subfield => self.subfield_digit[v as usize] as usize,
                _ => v as usize,
            };
            idx = idx * self.radices[c] as usize + d;
        }
        Point(idx as u32)
    }

    #[inline]
    pub fn neg(&self, x: Point) -> Point {
        Point(self.negation[x.index()])
    }

    #[inline]
    pub fn sub(&self, x: Point, y: Point) -> Point {
        self.add(x, self.neg(y))
    }

    pub fn try_add(&self, x: Point, y: Point) -> Result<Point> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add(x, y))
    }

    pub fn try_neg(&self, x: Point) -> Result<Point> {
        self.check(x)?;
        Ok(self.neg(x))
    }

    /// `u · x` for a rational integer `u`.
    pub fn scalar_int(&self, x: Point, u: i64) -> Point {
        let coords: Vec<u16> = self
            .coords(x)
            .iter()
            .enumerate()
            .map(|(c, &v)| match self.coord_kinds[c] {
                Coord::Field | Coord::Subfield => {
                    let f = self.field().unwrap();
                    f.mul(f.from_int(u), FieldElement(v)).0
                }
                Coord::Cyclic(m) => ((v as i64 * u).rem_euclid(m as i64)) as u16,
            })
            .collect();
        self.encode(&coords)
    }

    /// Scalar multiplication by a field element, for `F_q`-vector spaces.
    pub fn scalar_field(&self, x: Point, s: FieldElement) -> Result<Point> {
        let f = self.field().ok_or_else(|| usage("not a field-based space"))?;
        if self.coord_kinds.iter().any(|c| *c != Coord::Field) {
            return Err(usage("field scalars only act on F_q-coordinate spaces"));
        }
        let coords: Vec<u16> = self.coords(x).iter().map(|&v| f.mul(s, FieldElement(v)).0).collect();
        Ok(self.encode(&coords))
    }

    /// Coordinates of a vector-kind point as field elements.
    pub fn vector(&self, x: Point) -> Vec<FieldElement> {
        self.coords(x).iter().map(|&v| FieldElement(v)).collect()
    }

    pub fn from_vector(&self, v: &[FieldElement]) -> Result<Point> {
        let coords: Vec<u16> = v.iter().map(|a| a.0).collect();
        self.point_from_coords(&coords)
    }

    pub fn matrix_shape(&self) -> Option<(usize, usize)> {
        match self.kind {
            SpaceKind::MatrixFull { m, n } => Some((m, n)),
            SpaceKind::MatrixAlternating { m }
            | SpaceKind::MatrixHermitian { m }
            | SpaceKind::MatrixSymmetric { m } => Some((m, m)),
            _ => None,
        }
    }

    /// The full matrix of a point of a matrix-kind space.
    pub fn to_matrix(&self, x: Point) -> Result<FieldMatrix> {
        let (rows, cols) = self.matrix_shape().ok_or_else(|| usage("not a matrix space"))?;
        let f = self.field().unwrap();
        let mut a = FieldMatrix::zeros(rows, cols);
        for (&(i, j), &v) in self.positions.iter().zip(self.coords(x)) {
            let v = FieldElement(v);
            a.set(i, j, v);
            if i != j {
                match self.kind {
                    SpaceKind::MatrixAlternating { .. } => a.set(j, i, f.neg(v)),
                    SpaceKind::MatrixSymmetric { .. } => a.set(j, i, v),
                    SpaceKind::MatrixHermitian { .. } => a.set(j, i, self.conj[v.index()]),
                    _ => {}
                }
            }
        }
        Ok(a)
    }

    /// The point with matrix `a`; fails if `a` lacks the space's structure.
    pub fn from_matrix(&self, a: &FieldMatrix) -> Result<Point> {
        let shape = self.matrix_shape().ok_or_else(|| usage("not a matrix space"))?;
        if (a.rows(), a.cols()) != shape {
            return Err(usage("matrix has the wrong shape"));
        }
        let coords: Vec<u16> = self.positions.iter().map(|&(i, j)| a.get(i, j).0).collect();
        let x = self.point_from_coords(&coords)?;
        if self.to_matrix(x)? != *a {
            return Err(usage(format!("matrix does not belong to {}", self.kind.name())));
        }
        Ok(x)
    }

    /// The `F_q`-valued (or `Z_ν`-valued) bilinear pairing `x · y`.
    fn pairing_value(&self, x: Point, y: Point) -> u32 {
        let (cx, cy) = (self.coords(x), self.coords(y));
        match self.field() {
            Some(f) => {
                let mut acc = FieldElement::ZERO;
                for (k, term) in self.pair_terms.iter().enumerate() {
                    let (a, b) = (FieldElement(cx[k]), FieldElement(cy[k]));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let t = match *term {
                        PairTerm::Plain(w) => f.mul(w, f.mul(a, b)),
                        PairTerm::Hermitian => f.add(
                            f.mul(a, self.conj[b.index()]),
                            f.mul(self.conj[a.index()], b),
                        ),
                        PairTerm::Cyclic(_) => unreachable!(),
                    };
                    acc = f.add(acc, t);
                }
                if let SpaceKind::MatrixHermitian { .. } = self.kind {
                    assert!(
                        self.subfield_digit[acc.index()] != u16::MAX,
                        "Hermitian pairing left the base field"
                    );
                    f.subfield_trace(acc, self.subfield_degree)
                } else {
                    f.trace(acc)
                }
            }
            None => {
                let mut acc = 0u64;
                for (k, term) in self.pair_terms.iter().enumerate() {
                    if let PairTerm::Cyclic(w) = *term {
                        acc += cx[k] as u64 * cy[k] as u64 * w as u64;
                    }
                }
                (acc % self.exponent as u64) as u32
            }
        }
    }

    /// Exponent `k` with `⟨x, y⟩ = ζ_ν^k`.
    #[inline]
    pub fn pairing_exponent(&self, x: Point, y: Point) -> u32 {
        let v = self.pairing_value(x, y) as u64;
        (v * self.lambda as u64 % self.exponent as u64) as u32
    }

    pub fn inner_product(&self, x: Point, y: Point) -> CycloInt {
        CycloInt::root_of_unity(self.exponent, self.pairing_exponent(x, y) as i64)
    }

    pub fn try_inner_product(&self, x: Point, y: Point) -> Result<CycloInt> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.inner_product(x, y))
    }

    /// Exhaustive check that `⟨x, ·⟩` is nontrivial for every `x ≠ 0`.
    /// Returns the first degenerate point on failure.
    pub fn verify_nondegenerate(&self) -> std::result::Result<(), Point> {
        for x in self.points().skip(1) {
            if self.points().all(|y| self.pairing_exponent(x, y) == 0) {
                return Err(x);
            }
        }
        Ok(())
    }

    /// Points with exactly one nonzero free coordinate. They generate `X`
    /// additively.
    pub fn single_coordinate_points(&self) -> Vec<Point> {
        self.points()
            .filter(|&x| self.coords(x).iter().filter(|&&v| v != 0).count() == 1)
            .collect()
    }

    /// Human-readable coordinates.
    pub fn describe(&self, x: Point) -> String {
        match self.kind {
            SpaceKind::Vector { .. } | SpaceKind::CyclicProduct { .. } => format!("{:?}", self.coords(x)),
            _ => {
                let a = self.to_matrix(x).expect("matrix kind");
                let rows: Vec<String> = (0..a.rows())
                    .map(|i| {
                        let r: Vec<String> = (0..a.cols()).map(|j| a.get(i, j).0.to_string()).collect();
                        r.join(" ")
                    })
                    .collect();
                format!("[{}]", rows.join("; "))
            }
        }
    }
}
