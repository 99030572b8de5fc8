//! Group actions on `X`, presented by generating additive automorphisms.
//!
//! A group is never materialized. Each family contributes a small generating
//! set; every generator is kept both as structured data (a matrix pair, a
//! monomial map, a scalar, ...) and as a permutation of point indices. Orbits
//! are the connected components of the union of the generator permutations.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::gf::{Field, FieldElement};
use crate::matrix::FieldMatrix;
use crate::poset::WeakOrderPoset;
use crate::space::{AbelianSpace, Point, SpaceKind};

/// Action description as it appears in configuration files.
///
/// Dimensions are taken from the space; when given here they must match.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ActionSpec {
    Central,
    Cyclotomic {
        d: u32,
    },
    Bilinear {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
    Alternating {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
    },
    Hermitian {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
    },
    Symmetric {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
    },
    Hamming {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
    WeakHamming {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        levels: Option<Vec<usize>>,
    },
    WeakHammingDual {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        levels: Option<Vec<usize>>,
    },
    Custom {
        generators: Vec<Vec<u32>>,
    },
}

/// A resolved action family, validated against its space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionFamily {
    /// Units of `Z/ν`, `ν` the exponent of `X`, acting by multiplication.
    Central,
    /// The subgroup `⟨ω^d⟩ ≤ F_q^×` acting on `F_q`.
    Cyclotomic { d: u32 },
    Bilinear { m: usize, n: usize },
    Alternating { m: usize },
    Hermitian { m: usize },
    Symmetric { m: usize, q_mod_4: u32 },
    Hamming { n: usize },
    /// `Aut(F_q^n, w_P)` for the weak order poset with these levels.
    WeakHamming { levels: Vec<usize> },
    /// `Aut(F_q^n, w_P̌)` for the dual of the weak order poset with these
    /// levels, on the same coordinates.
    WeakHammingDual { levels: Vec<usize> },
    Custom { generators: Vec<Vec<u32>> },
}

fn dims_match(given: Option<usize>, actual: usize, what: &str) -> Result<()> {
    match given {
        Some(g) if g != actual => Err(usage(format!(
            "action expects {what} = {g} but the space has {what} = {actual}"
        ))),
        _ => Ok(()),
    }
}

impl ActionFamily {
    pub fn resolve(spec: &ActionSpec, space: &AbelianSpace) -> Result<ActionFamily> {
        let kind = space.kind();
        let mismatch = |family: &str| {
            Err(usage(format!(
                "the {family} action does not act on a {} space",
                kind.name()
            )))
        };
        Ok(match spec {
            ActionSpec::Central => ActionFamily::Central,
            ActionSpec::Cyclotomic { d } => {
                let SpaceKind::Vector { n: 1 } = kind else {
                    return mismatch("cyclotomic");
                };
                let q = space.field().unwrap().order() as u32;
                if q.is_multiple_of(2) {
                    return Err(usage("cyclotomic classes need an odd prime power q"));
                }
                if *d == 0 || !(q - 1).is_multiple_of(2 * d) {
                    return Err(usage(format!(
                        "cyclotomic classes need 2d | q - 1, but d = {d} and q = {q}"
                    )));
                }
                ActionFamily::Cyclotomic { d: *d }
            }
            ActionSpec::Bilinear { m, n } => {
                let SpaceKind::MatrixFull { m: sm, n: sn } = *kind else {
                    return mismatch("bilinear");
                };
                dims_match(*m, sm, "m")?;
                dims_match(*n, sn, "n")?;
                ActionFamily::Bilinear { m: sm, n: sn }
            }
            ActionSpec::Alternating { m } => {
                let SpaceKind::MatrixAlternating { m: sm } = *kind else {
                    return mismatch("alternating");
                };
                dims_match(*m, sm, "m")?;
                ActionFamily::Alternating { m: sm }
            }
            ActionSpec::Hermitian { m } => {
                let SpaceKind::MatrixHermitian { m: sm } = *kind else {
                    return mismatch("hermitian");
                };
                dims_match(*m, sm, "m")?;
                ActionFamily::Hermitian { m: sm }
            }
            ActionSpec::Symmetric { m } => {
                let SpaceKind::MatrixSymmetric { m: sm } = *kind else {
                    return mismatch("symmetric");
                };
                dims_match(*m, sm, "m")?;
                let q = space.field().unwrap().order() as u32;
                ActionFamily::Symmetric { m: sm, q_mod_4: q % 4 }
            }
            ActionSpec::Hamming { n } => {
                let SpaceKind::Vector { n: sn } = *kind else {
                    return mismatch("hamming");
                };
                dims_match(*n, sn, "n")?;
                ActionFamily::Hamming { n: sn }
            }
            ActionSpec::WeakHamming { levels } | ActionSpec::WeakHammingDual { levels } => {
                let SpaceKind::Vector { n: sn } = *kind else {
                    return mismatch("weak_hamming");
                };
                let levels = levels.clone().unwrap_or_else(|| vec![sn]);
                WeakOrderPoset::new(&levels)?;
                if levels.iter().sum::<usize>() != sn {
                    return Err(usage(format!(
                        "weak order levels {levels:?} do not sum to the dimension {sn}"
                    )));
                }
                if matches!(spec, ActionSpec::WeakHamming { .. }) {
                    ActionFamily::WeakHamming { levels }
                } else {
                    ActionFamily::WeakHammingDual { levels }
                }
            }
            ActionSpec::Custom { generators } => ActionFamily::Custom { generators: generators.clone() },
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ActionFamily::Central => "central",
            ActionFamily::Cyclotomic { .. } => "cyclotomic",
            ActionFamily::Bilinear { .. } => "bilinear",
            ActionFamily::Alternating { .. } => "alternating",
            ActionFamily::Hermitian { .. } => "hermitian",
            ActionFamily::Symmetric { .. } => "symmetric",
            ActionFamily::Hamming { .. } => "hamming",
            ActionFamily::WeakHamming { .. } => "weak_hamming",
            ActionFamily::WeakHammingDual { .. } => "weak_hamming_dual",
            ActionFamily::Custom { .. } => "custom",
        }
    }

    /// The weak order poset whose automorphism group this family is.
    pub fn poset(&self) -> Option<WeakOrderPoset> {
        match self {
            ActionFamily::WeakHamming { levels } => WeakOrderPoset::new(levels).ok(),
            ActionFamily::WeakHammingDual { levels } => WeakOrderPoset::new(levels).ok().map(|p| p.dual()),
            _ => None,
        }
    }

    /// Short description including parameters, e.g. `bilinear(2,2)`.
    pub fn label(&self) -> String {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            ActionFamily::Central => "central".into(),
            ActionFamily::Cyclotomic { d } => format!("cyclotomic(d={d})"),
            ActionFamily::Bilinear { m, n } => format!("bilinear({m},{n})"),
            ActionFamily::Alternating { m } => format!("alternating({m})"),
            ActionFamily::Hermitian { m } => format!("hermitian({m})"),
            ActionFamily::Symmetric { m, .. } => format!("symmetric({m})"),
            ActionFamily::Hamming { n } => format!("hamming({n})"),
            ActionFamily::WeakHamming { levels } => format!("weak_hamming({})", join(levels)),
            ActionFamily::WeakHammingDual { levels } => format!("weak_hamming_dual({})", join(levels)),
            ActionFamily::Custom { generators } => format!("custom({} generators)", generators.len()),
        }
    }
}

/// Structured form of a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorData {
    /// `x ↦ u·x` for a unit `u` of `Z/ν`.
    UnitMultiplier(u32),
    /// `x ↦ s·x` for a field scalar.
    FieldScalar(FieldElement),
    /// `A ↦ ᵗα A β`.
    BilinearPair { alpha: FieldMatrix, beta: FieldMatrix },
    /// `A ↦ ᵗα A α` (alternating, symmetric) or `A ↦ *α A α` (Hermitian).
    Congruence { alpha: FieldMatrix },
    /// `φ_σ φ_α`: `(φ_σ φ_α x)_σ(k) = α_k x_k`. `perm[k] = σ(k)`.
    Monomial { perm: Vec<usize>, scalars: Vec<FieldElement> },
    /// The linear map fixing every `e_k` except `e_source ↦ e_source + c·e_target`.
    Bleed { source: usize, target: usize, coeff: FieldElement },
    /// An explicit permutation with no further structure.
    Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub data: GeneratorData,
    perm: Vec<u32>,
}

impl Generator {
    #[inline]
    pub fn apply(&self, x: Point) -> Point {
        Point(self.perm[x.index()])
    }

    pub fn permutation(&self) -> &[u32] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    fn materialize(data: GeneratorData, space: &AbelianSpace) -> Result<Generator> {
        let perm = space
            .points()
            .map(|x| apply_data(&data, space, x).map(|y| y.0))
            .collect::<Result<Vec<u32>>>()?;
        let g = Generator { data, perm };
        g.check_bijective_fixing_zero()?;
        Ok(g)
    }

    fn from_permutation(perm: Vec<u32>, space: &AbelianSpace) -> Result<Generator> {
        if perm.len() != space.size() {
            return Err(usage(format!(
                "custom generator has {} entries, the space has {} points",
                perm.len(),
                space.size()
            )));
        }
        let g = Generator { data: GeneratorData::Permutation, perm };
        g.check_bijective_fixing_zero()?;
        if let Err((x, y)) = check_additive(&g, space) {
            return Err(usage(format!(
                "custom generator is not additive: g({} + {}) != g({}) + g({})",
                x.0, y.0, x.0, y.0
            )));
        }
        Ok(g)
    }

    fn check_bijective_fixing_zero(&self) -> Result<()> {
        let mut seen = vec![false; self.perm.len()];
        for &p in &self.perm {
            let slot = seen
                .get_mut(p as usize)
                .ok_or_else(|| usage(format!("generator maps to {p}, outside the space")))?;
            if *slot {
                return Err(usage("generator is not a bijection"));
            }
            *slot = true;
        }
        if self.perm.first().copied().unwrap_or(0) != 0 {
            return Err(usage("generator does not fix 0"));
        }
        Ok(())
    }
}

fn apply_data(data: &GeneratorData, space: &AbelianSpace, x: Point) -> Result<Point> {
    let field = || space.field().ok_or_else(|| usage("generator needs a field-based space"));
    match data {
        GeneratorData::UnitMultiplier(u) => Ok(space.scalar_int(x, *u as i64)),
        GeneratorData::FieldScalar(s) => space.scalar_field(x, *s),
        GeneratorData::BilinearPair { alpha, beta } => {
            let f = field()?;
            let a = space.to_matrix(x)?;
            space.from_matrix(&alpha.transpose().mul(f, &a).mul(f, beta))
        }
        GeneratorData::Congruence { alpha } => {
            let f = field()?;
            let a = space.to_matrix(x)?;
            let left = match space.kind() {
                SpaceKind::MatrixHermitian { .. } => alpha.conjugate_transpose(f, base_order(space)),
                _ => alpha.transpose(),
            };
            space.from_matrix(&left.mul(f, &a).mul(f, alpha))
        }
        GeneratorData::Monomial { perm, scalars } => {
            let f = field()?;
            let v = space.vector(x);
            let mut out = vec![FieldElement::ZERO; v.len()];
            for k in 0..v.len() {
                out[perm[k]] = f.mul(scalars[k], v[k]);
            }
            space.from_vector(&out)
        }
        GeneratorData::Bleed { source, target, coeff } => {
            let f = field()?;
            let mut v = space.vector(x);
            // x = Σ x_k e_k, and only e_source moves
            v[*target] = f.add(v[*target], f.mul(*coeff, v[*source]));
            space.from_vector(&v)
        }
        GeneratorData::Permutation => Err(usage("explicit permutations carry no formula")),
    }
}

fn base_order(space: &AbelianSpace) -> u64 {
    let f = space.field().expect("field-based space");
    (f.characteristic() as u64).pow(space.subfield_degree())
}

/// Exhaustive additivity check `g(x + y) = g(x) + g(y)`.
pub fn check_additive(g: &Generator, space: &AbelianSpace) -> std::result::Result<(), (Point, Point)> {
    for x in space.points() {
        for y in space.points() {
            if g.apply(space.add(x, y)) != space.add(g.apply(x), g.apply(y)) {
                return Err((x, y));
            }
        }
    }
    Ok(())
}

/// Classical generators of `GL(k, F)`: the `k`-cycle, the transvection
/// `I + E_12` and `diag(ω, 1, ..., 1)`, skipping any that are trivial.
fn gl_generators(field: &Field, k: usize) -> Vec<FieldMatrix> {
    let mut gens = Vec::new();
    if k >= 2 {
        gens.push(FieldMatrix::cycle(k));
        gens.push(FieldMatrix::elementary(k, 0, 1, FieldElement::ONE));
    }
    let omega = field.primitive_element();
    if k >= 1 && omega != FieldElement::ONE {
        let mut d = FieldMatrix::identity(k);
        d.set(0, 0, omega);
        gens.push(d);
    }
    gens
}

fn monomial_generators(field: &Field, n: usize, coords: &[usize]) -> Vec<GeneratorData> {
    let mut out = Vec::new();
    for w in coords.windows(2) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(w[0], w[1]);
        out.push(GeneratorData::Monomial { perm, scalars: vec![FieldElement::ONE; n] });
    }
    let omega = field.primitive_element();
    if let (Some(&first), true) = (coords.first(), omega != FieldElement::ONE) {
        let mut scalars = vec![FieldElement::ONE; n];
        scalars[first] = omega;
        out.push(GeneratorData::Monomial { perm: (0..n).collect(), scalars });
    }
    out
}

/// A finite generating set of the acting group, materialized on `X`.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

impl GeneratorSet {
    pub fn from_generators(gens: Vec<Generator>) -> Self {
        GeneratorSet { gens }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

/// Generating set for a family acting on a space.
pub fn generators(family: &ActionFamily, space: &AbelianSpace) -> Result<GeneratorSet> {
    let mut data = Vec::new();
    match family {
        ActionFamily::Central => {
            let nu = space.character_order();
            for u in 1..nu.max(2) {
                if num_integer::gcd(u, nu) == 1 {
                    data.push(GeneratorData::UnitMultiplier(u));
                }
            }
        }
        ActionFamily::Cyclotomic { d } => {
            let f = space.field().unwrap();
            data.push(GeneratorData::FieldScalar(f.pow(f.primitive_element(), *d as u64)));
        }
        ActionFamily::Bilinear { m, n } => {
            let f = space.field().unwrap();
            for a in gl_generators(f, *m) {
                data.push(GeneratorData::BilinearPair { alpha: a, beta: FieldMatrix::identity(*n) });
            }
            for b in gl_generators(f, *n) {
                data.push(GeneratorData::BilinearPair { alpha: FieldMatrix::identity(*m), beta: b });
            }
        }
        ActionFamily::Alternating { m } | ActionFamily::Hermitian { m } | ActionFamily::Symmetric { m, .. } => {
            for a in gl_generators(space.field().unwrap(), *m) {
                data.push(GeneratorData::Congruence { alpha: a });
            }
        }
        ActionFamily::Hamming { n } => {
            let coords: Vec<usize> = (0..*n).collect();
            data.extend(monomial_generators(space.field().unwrap(), *n, &coords));
        }
        ActionFamily::WeakHamming { .. } | ActionFamily::WeakHammingDual { .. } => {
            let f = space.field().unwrap();
            let poset = family.poset().expect("weak Hamming families carry a poset");
            let n = poset.len();
            let t = poset.levels().len();
            for s in 0..t {
                data.extend(monomial_generators(f, n, &poset.level_members(s)));
            }
            for s in 0..t {
                for lower in 0..s {
                    data.push(GeneratorData::Bleed {
                        source: poset.level_members(s)[0],
                        target: poset.level_members(lower)[0],
                        coeff: FieldElement::ONE,
                    });
                }
            }
        }
        ActionFamily::Custom { generators } => {
            let gens = generators
                .iter()
                .map(|p| Generator::from_permutation(p.clone(), space))
                .collect::<Result<Vec<_>>>()?;
            return Ok(GeneratorSet { gens });
        }
    }
    let gens = data
        .into_iter()
        .map(|d| Generator::materialize(d, space))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorSet { gens })
}

/// The partition `O_0 = {0}, O_1, ..., O_d` of `X`, classes ordered by their
/// minimal point index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    class_of: Vec<u32>,
    classes: Vec<Vec<Point>>,
}

impl OrbitPartition {
    /// Builds a partition from arbitrary classes, normalizing the order.
    /// Class 0 must be `{0}`.
    pub fn from_classes(size: usize, mut classes: Vec<Vec<Point>>) -> Result<OrbitPartition> {
        for c in classes.iter_mut() {
            c.sort();
        }
        classes.retain(|c| !c.is_empty());
        classes.sort_by_key(|c| c[0]);
        let mut class_of = vec![u32::MAX; size];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                let slot = class_of
                    .get_mut(x.index())
                    .ok_or_else(|| usage(format!("point {} is outside the space", x.0)))?;
                if *slot != u32::MAX {
                    return Err(usage(format!("point {} lies in two classes", x.0)));
                }
                *slot = i as u32;
            }
        }
        if let Some(x) = class_of.iter().position(|&c| c == u32::MAX) {
            return Err(usage(format!("point {x} is in no class")));
        }
        if classes.first().map(|c| c.as_slice()) != Some(&[Point::ZERO]) {
            return Err(usage("class 0 must be exactly {0}"));
        }
        Ok(OrbitPartition { class_of, classes })
    }

    /// Partition by a key function, e.g. a weight or rank oracle.
    pub fn from_key<K: Ord + Clone>(space: &AbelianSpace, key: impl Fn(Point) -> K) -> Result<OrbitPartition> {
        let mut groups: std::collections::BTreeMap<K, Vec<Point>> = Default::default();
        for x in space.points() {
            groups.entry(key(x)).or_default().push(x);
        }
        OrbitPartition::from_classes(space.size(), groups.into_values().collect())
    }

    /// Number of nonzero classes.
    pub fn d(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    #[inline]
    pub fn class_of(&self, x: Point) -> usize {
        self.class_of[x.index()] as usize
    }

    pub fn class(&self, i: usize) -> &[Point] {
        &self.classes[i]
    }

    pub fn classes(&self) -> &[Vec<Point>] {
        &self.classes
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }

    /// Minimal point of class `i`.
    pub fn representative(&self, i: usize) -> Point {
        self.classes[i][0]
    }

    /// Reorders the nonzero classes by `key`, ties broken by minimal index.
    pub fn sorted_by_key<K: Ord>(self, key: impl Fn(&[Point]) -> K) -> OrbitPartition {
        let size = self.size();
        let mut classes = self.classes;
        let rest = classes.split_off(1);
        let mut keyed: Vec<(K, Vec<Point>)> = rest.into_iter().map(|c| (key(&c), c)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1[0].cmp(&b.1[0])));
        classes.extend(keyed.into_iter().map(|(_, c)| c));
        let mut class_of = vec![0u32; size];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x.index()] = i as u32;
            }
        }
        OrbitPartition { class_of, classes }
    }
}

/// Orbits in the order used for schemes: minimal index, except that the
/// weak Hamming families list classes by poset weight. For the standard
/// layout the two orders coincide.
pub fn scheme_orbits(family: &ActionFamily, gens: &GeneratorSet, space: &AbelianSpace) -> OrbitPartition {
    let partition = orbits(gens, space);
    match family.poset() {
        Some(poset) => partition.sorted_by_key(|c| poset.p_weight(&space.vector(c[0])).unwrap_or(0)),
        None => partition,
    }
}

/// Orbits by breadth-first closure over the generator permutations.
pub fn orbits(gens: &GeneratorSet, space: &AbelianSpace) -> OrbitPartition {
    let n = space.size();
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        let mut members = Vec::new();
        class_of[start] = id;
        queue.push_back(Point(start as u32));
        while let Some(x) = queue.pop_front() {
            members.push(x);
            for g in &gens.gens {
                let y = g.apply(x);
                if class_of[y.index()] == u32::MAX {
                    class_of[y.index()] = id;
                    queue.push_back(y);
                }
            }
        }
        members.sort();
        classes.push(members);
    }
    OrbitPartition { class_of, classes }
}

/// Checks that every generator maps every class onto itself.
pub fn verify_invariance(gens: &GeneratorSet, partition: &OrbitPartition) -> std::result::Result<(), (usize, Point)> {
    for (gi, g) in gens.gens.iter().enumerate() {
        for x in (0..partition.size() as u32).map(Point) {
            if partition.class_of(g.apply(x)) != partition.class_of(x) {
                return Err((gi, x));
            }
        }
    }
    Ok(())
}

/// A point whose negation lies in a different class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NegationWitness {
    pub point: Point,
    pub negated: Point,
    pub class: usize,
    pub negated_class: usize,
}

/// Condition (4): every class is closed under negation.
pub fn check_condition_4(partition: &OrbitPartition, space: &AbelianSpace) -> std::result::Result<(), NegationWitness> {
    for x in space.points() {
        let nx = space.neg(x);
        let (a, b) = (partition.class_of(x), partition.class_of(nx));
        if a != b {
            return Err(NegationWitness { point: x, negated: nx, class: a, negated_class: b });
        }
    }
    Ok(())
}

/// Condition (6): `−O_i = O_j(i)` for a well-defined involution `j`.
/// Verified exhaustively; `None` if some class is split by negation.
pub fn check_condition_6(partition: &OrbitPartition, space: &AbelianSpace) -> Option<Vec<usize>> {
    let mut pairing = Vec::with_capacity(partition.num_classes());
    for class in partition.classes() {
        let target = partition.class_of(space.neg(class[0]));
        if class.iter().any(|&x| partition.class_of(space.neg(x)) != target) {
            return None;
        }
        if partition.class(target).len() != class.len() {
            return None;
        }
        pairing.push(target);
    }
    Some(pairing)
}

/// Which group the adjoint images belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Codomain {
    SameGroup,
    DualPosetGroup,
}

/// Generator-level adjoint map `g ↦ ι(g)`.
#[derive(Debug, Clone)]
pub struct AdjointMap {
    images: Vec<Generator>,
    codomain: Codomain,
}

impl AdjointMap {
    /// Adjoint images given directly, e.g. for negative controls.
    pub fn from_images(images: Vec<Generator>, codomain: Codomain) -> Self {
        AdjointMap { images, codomain }
    }

    pub fn images(&self) -> &[Generator] {
        &self.images
    }

    pub fn codomain(&self) -> Codomain {
        self.codomain
    }
}

fn adjoint_data(data: &GeneratorData, space: &AbelianSpace) -> Result<GeneratorData> {
    Ok(match data {
        GeneratorData::UnitMultiplier(_) | GeneratorData::FieldScalar(_) => data.clone(),
        GeneratorData::BilinearPair { alpha, beta } => GeneratorData::BilinearPair {
            alpha: alpha.transpose(),
            beta: beta.transpose(),
        },
        GeneratorData::Congruence { alpha } => GeneratorData::Congruence {
            alpha: match space.kind() {
                SpaceKind::MatrixHermitian { .. } => {
                    alpha.conjugate_transpose(space.field().unwrap(), base_order(space))
                }
                _ => alpha.transpose(),
            },
        },
        GeneratorData::Monomial { perm, scalars } => {
            // φ_σ φ_α ↦ φ_σ⁻¹ φ_(α_σ⁻¹)
            let n = perm.len();
            let mut inverse = vec![0; n];
            for (k, &s) in perm.iter().enumerate() {
                inverse[s] = k;
            }
            let shifted = (0..n).map(|k| scalars[inverse[k]]).collect();
            GeneratorData::Monomial { perm: inverse, scalars: shifted }
        }
        GeneratorData::Bleed { source, target, coeff } => GeneratorData::Bleed {
            source: *target,
            target: *source,
            coeff: *coeff,
        },
        GeneratorData::Permutation => {
            return Err(Error::Unsupported("explicit permutations carry no built-in adjoint".into()))
        }
    })
}

/// The built-in adjoint for a family: transpose-type maps for the matrix and
/// monomial families, the identity for central and cyclotomic actions.
pub fn adjoint_map(family: &ActionFamily, gens: &GeneratorSet, space: &AbelianSpace) -> Result<AdjointMap> {
    if let ActionFamily::Custom { .. } = family {
        return Err(Error::Unsupported("custom actions have no built-in adjoint map".into()));
    }
    let images = gens
        .gens
        .iter()
        .map(|g| Generator::materialize(adjoint_data(&g.data, space)?, space))
        .collect::<Result<Vec<_>>>()?;
    let codomain = match family {
        ActionFamily::WeakHamming { .. } | ActionFamily::WeakHammingDual { .. } => Codomain::DualPosetGroup,
        _ => Codomain::SameGroup,
    };
    Ok(AdjointMap { images, codomain })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdjointWitness {
    pub generator: usize,
    pub x: Point,
    pub y: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjointCheck {
    pub pass: bool,
    /// All pairs of points (true) or pairs of single-coordinate points,
    /// which generate `X`, relying on bilinearity (false).
    pub exhaustive: bool,
    pub witness: Option<AdjointWitness>,
}

/// Spaces up to this size get the exhaustive adjoint check.
pub const ADJOINT_EXHAUSTIVE_BOUND: usize = 1024;

/// Checks `⟨g x, y⟩ = ⟨x, ι(g) y⟩` for every generator.
pub fn verify_adjoint(gens: &GeneratorSet, adjoint: &AdjointMap, space: &AbelianSpace) -> AdjointCheck {
    let exhaustive = space.size() <= ADJOINT_EXHAUSTIVE_BOUND;
    let points: Vec<Point> = if exhaustive {
        space.enumerate()
    } else {
        space.single_coordinate_points()
    };
    if gens.len() != adjoint.images.len() {
        return AdjointCheck { pass: false, exhaustive, witness: None };
    }
    for (gi, (g, ig)) in gens.gens.iter().zip(&adjoint.images).enumerate() {
        for &x in &points {
            let gx = g.apply(x);
            for &y in &points {
                if space.pairing_exponent(gx, y) != space.pairing_exponent(x, ig.apply(y)) {
                    return AdjointCheck {
                        pass: false,
                        exhaustive,
                        witness: Some(AdjointWitness { generator: gi, x, y }),
                    };
                }
            }
        }
    }
    AdjointCheck { pass: true, exhaustive, witness: None }
}

/// Checks that every adjoint image preserves the classes of the codomain
/// group, i.e. acts like an element of it.
pub fn verify_codomain(adjoint: &AdjointMap, codomain: &OrbitPartition) -> std::result::Result<(), (usize, Point)> {
    verify_invariance(&GeneratorSet { gens: adjoint.images.clone() }, codomain)
}

/// Rank of a matrix-space point by Gaussian elimination.
pub fn point_rank(space: &AbelianSpace, x: Point) -> Option<usize> {
    let f = space.field()?;
    Some(space.to_matrix(x).ok()?.rank(f))
}

/// Semantic label for every class, where the family defines one.
pub fn class_labels(family: &ActionFamily, space: &AbelianSpace, partition: &OrbitPartition) -> Vec<String> {
    (0..partition.num_classes())
        .map(|i| class_label(family, space, partition, i))
        .collect()
}

fn class_label(family: &ActionFamily, space: &AbelianSpace, partition: &OrbitPartition, i: usize) -> String {
    let rep = partition.representative(i);
    if i == 0 {
        return "zero".into();
    }
    match family {
        ActionFamily::Bilinear { .. } | ActionFamily::Alternating { .. } | ActionFamily::Hermitian { .. } => {
            format!("rank {}", point_rank(space, rep).unwrap_or(0))
        }
        ActionFamily::Symmetric { m, .. } => {
            let f = space.field().unwrap();
            let r = point_rank(space, rep).unwrap_or(0);
            let plus = symmetric_representative(space, *m, r, FieldElement::ONE);
            let minus = f
                .least_nonsquare()
                .and_then(|eps| symmetric_representative(space, *m, r, eps));
            let sign = if plus.map(|p| partition.class_of(p)) == Some(i) {
                "+"
            } else if minus.map(|p| partition.class_of(p)) == Some(i) {
                "-"
            } else {
                "?"
            };
            format!("({r},{sign})")
        }
        ActionFamily::Hamming { .. } => {
            let w = space.coords(rep).iter().filter(|&&c| c != 0).count();
            format!("weight {w}")
        }
        ActionFamily::WeakHamming { .. } | ActionFamily::WeakHammingDual { .. } => {
            let poset = family.poset().unwrap();
            let w = poset.p_weight(&space.vector(rep)).unwrap_or(0);
            format!("poset weight {w}")
        }
        ActionFamily::Cyclotomic { d } => {
            let f = space.field().unwrap();
            let omega = f.primitive_element();
            let x = FieldElement(space.coords(rep)[0]);
            let log = (0..f.order() as u64).find(|&k| f.pow(omega, k) == x).unwrap_or(0);
            format!("ω^{} G", log % *d as u64)
        }
        ActionFamily::Central | ActionFamily::Custom { .. } => format!("orbit of {}", space.describe(rep)),
    }
}

/// `J_r^+ = I_r ∔ O` (eps = 1) or `J_r^- = ε I_1 ∔ I_(r-1) ∔ O`.
pub fn symmetric_representative(space: &AbelianSpace, m: usize, r: usize, eps: FieldElement) -> Option<Point> {
    if r == 0 || r > m {
        return None;
    }
    let mut a = FieldMatrix::zeros(m, m);
    for k in 0..r {
        a.set(k, k, FieldElement::ONE);
    }
    a.set(0, 0, eps);
    space.from_matrix(&a).ok()
}
