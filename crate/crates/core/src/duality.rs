//! Character-sum eigenmatrices, idempotents, Krein parameters and duality
//! certificates for a pair of translation schemes on the same space.
//!
//! Throughout, `G` is the scheme being analysed and `Ǧ` the candidate dual,
//! both given by partitions of the same space `X`. Rows of `Q` are indexed by
//! the classes `X_i` of `G` and columns by the classes `X̌_j` of `Ǧ`; `P` is
//! the other way round.

use rayon::prelude::*;
use serde::Serialize;

use crate::action::{self, AdjointCheck, OrbitPartition};
use crate::cyclo::CycloInt;
use crate::error::{Error, Result};
use crate::scheme::{IntersectionTensor, TranslationScheme, PRODUCT_CHECK_BOUND};
use crate::space::{AbelianSpace, Point};

pub type CycloMatrix = Vec<Vec<CycloInt>>;

/// `f_j(y) = Σ_{x ∈ C_j} ⟨y, x⟩` for every class `C_j` of `check` and every
/// point `y`, indexed `[j][y]`.
pub fn character_sums(space: &AbelianSpace, check: &OrbitPartition) -> Vec<Vec<CycloInt>> {
    let ring = space.ring();
    let m = space.character_order() as usize;
    let n = check.num_classes();
    let per_point: Vec<Vec<CycloInt>> = space
        .enumerate()
        .par_iter()
        .map(|&y| {
            let mut counts = vec![0i64; n * m];
            for x in space.points() {
                counts[check.class_of(x) * m + space.pairing_exponent(y, x) as usize] += 1;
            }
            (0..n)
                .map(|j| CycloInt::from_exponent_counts(&ring, &counts[j * m..(j + 1) * m]))
                .collect()
        })
        .collect();
    (0..n).map(|j| per_point.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Two points of one class on which some `f_j` differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstancyWitness {
    pub class: usize,
    pub check_class: usize,
    pub y: Point,
    pub y_prime: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constancy {
    /// `F[i][j]`, the common value of `f_j` on `X_i`.
    Pass(CycloMatrix),
    Fail(ConstancyWitness),
}

impl Constancy {
    pub fn passed(&self) -> bool {
        matches!(self, Constancy::Pass(_))
    }

    pub fn matrix(&self) -> Option<&CycloMatrix> {
        match self {
            Constancy::Pass(f) => Some(f),
            Constancy::Fail(_) => None,
        }
    }

    pub fn witness(&self) -> Option<ConstancyWitness> {
        match self {
            Constancy::Pass(_) => None,
            Constancy::Fail(w) => Some(*w),
        }
    }
}

fn check_same_space(a: &TranslationScheme, b: &TranslationScheme) -> Result<()> {
    if a.space() == b.space() {
        Ok(())
    } else {
        Err(crate::error::usage("the two schemes live on different spaces"))
    }
}

/// Is every `f_j` (sums over the classes of `check`) constant on every class
/// of `scheme`?
pub fn constancy_test(scheme: &TranslationScheme, check: &TranslationScheme) -> Result<Constancy> {
    check_same_space(scheme, check)?;
    let sums = character_sums(scheme.space(), check.partition());
    Ok(constancy_from_sums(scheme.partition(), &sums))
}

fn constancy_from_sums(rows: &OrbitPartition, sums: &[Vec<CycloInt>]) -> Constancy {
    let mut f = Vec::with_capacity(rows.num_classes());
    for (i, class) in rows.classes().iter().enumerate() {
        let rep = class[0];
        let mut row = Vec::with_capacity(sums.len());
        for (j, values) in sums.iter().enumerate() {
            let value = &values[rep.index()];
            if let Some(&y) = class.iter().find(|y| values[y.index()] != *value) {
                return Constancy::Fail(ConstancyWitness { class: i, check_class: j, y: rep, y_prime: y });
            }
            row.push(value.clone());
        }
        f.push(row);
    }
    Constancy::Pass(f)
}

/// `Q[i][j] = Σ_{x ∈ X̌_j} ⟨y, x⟩` for `y ∈ X_i`.
pub fn q_matrix(g: &TranslationScheme, g_check: &TranslationScheme) -> Result<CycloMatrix> {
    match constancy_test(g, g_check)? {
        Constancy::Pass(q) => Ok(q),
        Constancy::Fail(w) => Err(Error::InvalidState(format!(
            "f_{} is not constant on class {} (points {} and {})",
            w.check_class, w.class, w.y.0, w.y_prime.0
        ))),
    }
}

/// `P[i][j] = Σ_{x ∈ X_j} ⟨y, x⟩` for `y ∈ X̌_i`: the mirrored table.
pub fn p_matrix(g: &TranslationScheme, g_check: &TranslationScheme) -> Result<CycloMatrix> {
    q_matrix(g_check, g)
}

/// `P` evaluated at the minimal representative of each `X̌_i` only, without
/// any constancy check.
pub fn p_matrix_at_representatives(g: &TranslationScheme, g_check: &TranslationScheme) -> CycloMatrix {
    let space = g.space();
    let ring = space.ring();
    let m = space.character_order() as usize;
    let n = g.partition().num_classes();
    (0..g_check.partition().num_classes())
        .map(|i| {
            let y = g_check.partition().representative(i);
            let mut counts = vec![0i64; n * m];
            for x in space.points() {
                counts[g.partition().class_of(x) * m + space.pairing_exponent(y, x) as usize] += 1;
            }
            (0..n)
                .map(|j| CycloInt::from_exponent_counts(&ring, &counts[j * m..(j + 1) * m]))
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &CycloMatrix, b: &CycloMatrix) -> CycloMatrix {
    let order = a[0][0].order();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(CycloInt::zero(order), |acc, l| &acc + &(&a[i][l] * &b[l][j])))
                .collect()
        })
        .collect()
}

/// An entry that broke an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryWitness {
    pub check: &'static str,
    pub row: usize,
    pub col: usize,
    pub found: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenReport {
    /// `PQ = |X| I`.
    pub pq_identity: bool,
    /// `Σ_i v_i Q[i][j] conj(Q[i][j']) = |X| m_j δ_jj'`.
    pub row_orthogonality: bool,
    /// `Q[i][0] = 1`, `Q[0][j] = m_j`, `P[i][0] = 1`, `P[0][j] = v_j`.
    pub borders: bool,
    /// Every entry of `P` and `Q` is fixed by complex conjugation.
    pub real_entries: bool,
    /// `P = Q` entrywise; required in self mode.
    pub p_equals_q: bool,
    /// `v_i = m_i`.
    pub valencies_equal_multiplicities: bool,
    pub witnesses: Vec<EntryWitness>,
}

impl EigenReport {
    pub fn all_pass(&self, self_mode: bool) -> bool {
        self.pq_identity
            && self.row_orthogonality
            && self.borders
            && self.real_entries
            && (!self_mode || (self.p_equals_q && self.valencies_equal_multiplicities))
    }
}

/// Exact identities between `P`, `Q`, the valencies `v` of `G` and the
/// multiplicities `m_j = |X̌_j|`.
pub fn verify_eigen_identities(
    p: &CycloMatrix,
    q: &CycloMatrix,
    valencies: &[usize],
    multiplicities: &[usize],
    self_mode: bool,
) -> EigenReport {
    let n = q.len();
    let size: usize = valencies.iter().sum();
    let order = q[0][0].order();
    let int = |v: i64| CycloInt::from_int(order, v);
    let mut witnesses = Vec::new();
    let mut check = |name: &'static str, row: usize, col: usize, found: &CycloInt, expected: &CycloInt| {
        if found != expected {
            witnesses.push(EntryWitness {
                check: name,
                row,
                col,
                found: found.to_string(),
                expected: expected.to_string(),
            });
            false
        } else {
            true
        }
    };

    let pq = mat_mul(p, q);
    let mut pq_identity = true;
    for i in 0..n {
        for j in 0..n {
            let expected = int(if i == j { size as i64 } else { 0 });
            pq_identity &= check("pq_identity", i, j, &pq[i][j], &expected);
        }
    }

    let mut row_orthogonality = true;
    for j in 0..n {
        for k in 0..n {
            let sum = (0..n).fold(CycloInt::zero(order), |acc, i| {
                &acc + &(&q[i][j] * &q[i][k].conjugate()).scale(valencies[i] as i64)
            });
            let expected = int(if j == k { (size * multiplicities[j]) as i64 } else { 0 });
            row_orthogonality &= check("row_orthogonality", j, k, &sum, &expected);
        }
    }

    let mut borders = true;
    for i in 0..n {
        borders &= check("q_column_0", i, 0, &q[i][0], &int(1));
        borders &= check("q_row_0", 0, i, &q[0][i], &int(multiplicities[i] as i64));
        borders &= check("p_column_0", i, 0, &p[i][0], &int(1));
        borders &= check("p_row_0", 0, i, &p[0][i], &int(valencies[i] as i64));
    }

    let real_entries = p.iter().chain(q.iter()).flatten().all(|e| e.is_real());

    let mut p_equals_q = true;
    for i in 0..n {
        for j in 0..n {
            if self_mode {
                p_equals_q &= check("p_equals_q", i, j, &p[i][j], &q[i][j]);
            } else {
                p_equals_q &= p[i][j] == q[i][j];
            }
        }
    }

    EigenReport {
        pq_identity,
        row_orthogonality,
        borders,
        real_entries,
        p_equals_q,
        valencies_equal_multiplicities: valencies == multiplicities,
        witnesses,
    }
}

/// The idempotents `|X| E_j`, stored by their first row: translation
/// invariance gives `(|X| E_j)[a][b] = f_j(a − b)`.
#[derive(Debug, Clone)]
pub struct IdempotentSet {
    space: std::sync::Arc<AbelianSpace>,
    f: Vec<Vec<CycloInt>>,
}

impl IdempotentSet {
    pub fn num_idempotents(&self) -> usize {
        self.f.len()
    }

    /// `(|X| E_j)[a][b]`.
    pub fn entry(&self, j: usize, a: Point, b: Point) -> &CycloInt {
        &self.f[j][self.space.sub(a, b).index()]
    }

    /// The full matrix `|X| E_j`.
    pub fn matrix(&self, j: usize) -> CycloMatrix {
        self.space
            .points()
            .map(|a| self.space.points().map(|b| self.entry(j, a, b).clone()).collect())
            .collect()
    }

    fn size(&self) -> usize {
        self.space.size()
    }
}

/// `|X| E_j` with entries `Σ_{x ∈ X̌_j} ⟨a − b, x⟩`.
pub fn idempotents(g_check: &TranslationScheme, matrix_bound: usize) -> Result<IdempotentSet> {
    let space = g_check.space();
    if space.size() > matrix_bound {
        return Err(Error::Resource { what: "idempotent matrices", needed: space.size(), bound: matrix_bound });
    }
    Ok(IdempotentSet { space: space.clone(), f: character_sums(space, g_check.partition()) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentReport {
    /// `(|X|E_i)(|X|E_j) = δ_ij |X| (|X|E_i)`.
    pub orthogonality: bool,
    /// `Σ_j |X| E_j = |X| I`.
    pub sum_is_identity: bool,
    /// `|X| E_0 = J`.
    pub e0_is_all_ones: bool,
    /// Each `|X| E_j` is constant on every relation of `G`.
    pub bose_mesner_membership: bool,
    /// `(|X|E_i) χ_x = δ_{i,σ(j)} |X| χ_x` for one `x` per class `X̌_j`,
    /// over the `E_i` in the Bose–Mesner algebra of `G`.
    pub eigenvector_relation: bool,
    /// Products checked on every entry (true) or on the row of `0` (false).
    pub full_products: bool,
}

impl IdempotentReport {
    pub fn all_pass(&self) -> bool {
        self.orthogonality
            && self.sum_is_identity
            && self.e0_is_all_ones
            && self.bose_mesner_membership
            && self.eigenvector_relation
    }
}

/// `σ(j)` for `j = 0..=d`, from the eigenvector relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaOutcome {
    pub sigma: Option<Vec<usize>>,
    pub identity: bool,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Whether each `E_j` is constant on every class of `g`.
fn membership(g: &TranslationScheme, e: &IdempotentSet) -> Vec<bool> {
    let part = g.partition();
    e.f.iter()
        .map(|f| {
            (0..part.num_classes()).all(|c| {
                let class = part.class(c);
                class.iter().all(|y| f[y.index()] == f[class[0].index()])
            })
        })
        .collect()
}

/// For each `j` and `x ∈ X̌_j`, the idempotents `E_i` of the Bose–Mesner algebra
/// of `g` with `(|X|E_i) χ_x = |X| χ_x`, after checking
/// `(|X|E_i) χ_x ∈ {0, |X| χ_x}`.
fn eigenvector_hits(e: &IdempotentSet, g_check: &TranslationScheme, member: &[bool]) -> (bool, Vec<Vec<usize>>) {
    let space = &e.space;
    let order = space.character_order();
    let size = e.size() as i64;
    let results: Vec<(bool, Vec<usize>)> = (0..g_check.partition().num_classes())
        .into_par_iter()
        .map(|j| {
            let x = g_check.partition().representative(j);
            let chi: Vec<CycloInt> = space
                .points()
                .map(|b| CycloInt::root_of_unity(order, space.pairing_exponent(b, x) as i64))
                .collect();
            let mut ok = true;
            let mut hits = Vec::new();
            for i in 0..e.num_idempotents() {
                let mut is_zero = true;
                let mut is_full = true;
                for a in space.points() {
                    let v = space
                        .points()
                        .fold(CycloInt::zero(order), |acc, b| &acc + &(e.entry(i, a, b) * &chi[b.index()]));
                    is_zero &= v.is_zero();
                    is_full &= v == chi[a.index()].scale(size);
                }
                ok &= is_zero || is_full;
                if is_full && member[i] {
                    hits.push(i);
                }
            }
            (ok, hits)
        })
        .collect();
    let ok = results.iter().all(|(ok, _)| *ok);
    (ok, results.into_iter().map(|(_, h)| h).collect())
}

fn sigma_from_hits(hits: &[Vec<usize>], method: &'static str) -> SigmaOutcome {
    let fail = |msg: String| SigmaOutcome { sigma: None, identity: false, method, error: Some(msg) };
    let mut sigma = Vec::with_capacity(hits.len());
    for (j, h) in hits.iter().enumerate() {
        if h.len() != 1 {
            return fail(format!("class {j} of the dual partition matches {} idempotents", h.len()));
        }
        sigma.push(h[0]);
    }
    let mut seen = vec![false; sigma.len()];
    for &s in &sigma {
        if std::mem::replace(&mut seen[s], true) {
            return fail("σ is not injective".into());
        }
    }
    let identity = sigma.iter().enumerate().all(|(j, &s)| j == s);
    SigmaOutcome { sigma: Some(sigma), identity, method, error: None }
}

/// Exact checks of the idempotent identities, plus `σ` from the eigenvector
/// relation.
pub fn verify_idempotents(g: &TranslationScheme, g_check: &TranslationScheme, e: &IdempotentSet) -> (IdempotentReport, SigmaOutcome) {
    let space = &e.space;
    let order = space.character_order();
    let n = e.num_idempotents();
    let size = e.size();
    let full_products = size <= PRODUCT_CHECK_BOUND;
    let zero = CycloInt::zero(order);

    let rows: Vec<Point> = if full_products { space.enumerate() } else { vec![Point::ZERO] };
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let orthogonality = pairs.par_iter().all(|&(i, j)| {
        rows.iter().all(|&a| {
            space.points().all(|b| {
                let prod = space
                    .points()
                    .fold(zero.clone(), |acc, c| &acc + &(e.entry(i, a, c) * e.entry(j, c, b)));
                let expected = if i == j { e.entry(i, a, b).scale(size as i64) } else { zero.clone() };
                prod == expected
            })
        })
    });

    let sum_is_identity = space.points().all(|y| {
        let s = (0..n).fold(zero.clone(), |acc, j| &acc + &e.f[j][y.index()]);
        s == CycloInt::from_int(order, if y == Point::ZERO { size as i64 } else { 0 })
    });
    let e0_is_all_ones = e.f[0].iter().all(|v| *v == CycloInt::one(order));
    let member = membership(g, e);
    let bose_mesner_membership = member.iter().all(|&m| m);

    let (eigen_ok, hits) = eigenvector_hits(e, g_check, &member);
    let sigma = sigma_from_hits(&hits, "eigenvector");
    let report = IdempotentReport {
        orthogonality,
        sum_is_identity,
        e0_is_all_ones,
        bose_mesner_membership,
        eigenvector_relation: eigen_ok && sigma.sigma.is_some(),
        full_products,
    };
    (report, sigma)
}

/// `σ` without idempotent matrices: `E_i` acts on `χ_x`, `x ∈ X̌_j`, by
/// `(PQ)[j][i] / |X|`.
pub fn sigma_from_eigenmatrices(p: &CycloMatrix, q: &CycloMatrix, size: usize) -> SigmaOutcome {
    let pq = mat_mul(p, q);
    let full = CycloInt::from_int(q[0][0].order(), size as i64);
    let hits: Vec<Vec<usize>> = pq
        .iter()
        .map(|row| (0..row.len()).filter(|&i| row[i] == full).collect())
        .collect();
    sigma_from_hits(&hits, "eigenmatrix")
}

/// The Krein parameters `q_ij^k` and their flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KreinTensor {
    n: usize,
    /// `|X| q_ij^k`, indexed `[(i * n + j) * n + k]`.
    scaled: Vec<CycloInt>,
    size: usize,
}

impl KreinTensor {
    /// `|X| q_ij^k = Σ_l P[k][l] Q[l][i] Q[l][j]`.
    pub fn from_eigenmatrices(p: &CycloMatrix, q: &CycloMatrix, size: usize) -> KreinTensor {
        let n = q.len();
        let order = q[0][0].order();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect();
        let scaled = triples
            .par_iter()
            .map(|&(i, j, k)| {
                (0..n).fold(CycloInt::zero(order), |acc, l| &acc + &(&p[k][l] * &(&q[l][i] * &q[l][j])))
            })
            .collect();
        KreinTensor { n, scaled, size }
    }

    pub fn num_classes(&self) -> usize {
        self.n
    }

    /// `q_ij^k` when `|X|` divides the scaled value in `Z[ζ_m]`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Option<CycloInt> {
        self.scaled[(i * self.n + j) * self.n + k].div_exact(self.size as i64)
    }

    pub fn integral(&self) -> bool {
        self.scaled.iter().all(|v| v.div_exact(self.size as i64).is_some())
    }

    /// Every `q_ij^k` is fixed by complex conjugation.
    pub fn real(&self) -> bool {
        self.scaled.iter().all(|v| v.is_real())
    }

    /// Every `q_ij^k ≥ −10⁻⁹` in floating approximation.
    pub fn nonnegative(&self) -> bool {
        self.scaled
            .iter()
            .all(|v| v.approx().value.re / self.size as f64 >= -1e-9)
    }

    /// Exact equality with an intersection tensor.
    pub fn equals(&self, tensor: &IntersectionTensor) -> bool {
        tensor.num_classes() == self.n
            && (0..self.n).all(|i| {
                (0..self.n).all(|j| {
                    (0..self.n).all(|k| {
                        self.get(i, j, k).and_then(|v| v.as_rational_integer()) == Some(tensor.get(i, j, k) as i64)
                    })
                })
            })
    }

    /// `[k][i][j]`, each entry an integer when rational, else the exact
    /// cyclotomic value, else `null`.
    pub fn to_json(&self) -> serde_json::Value {
        let entry = |i, j, k| match self.get(i, j, k) {
            Some(v) => match v.as_rational_integer() {
                Some(int) => serde_json::json!(int),
                None => serde_json::to_value(&v).expect("cyclotomic values serialize"),
            },
            None => serde_json::Value::Null,
        };
        serde_json::Value::Array(
            (0..self.n)
                .map(|k| {
                    serde_json::Value::Array(
                        (0..self.n)
                            .map(|i| serde_json::Value::Array((0..self.n).map(|j| entry(i, j, k)).collect()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// Checks `(|X|E_i) ∘ (|X|E_j) = Σ_k q_ij^k (|X|E_k)` on the row of `0`,
    /// which determines these translation-invariant matrices.
    pub fn verify_hadamard(&self, e: &IdempotentSet) -> bool {
        let order = e.space.character_order();
        let pairs: Vec<(usize, usize)> = (0..self.n).flat_map(|i| (0..self.n).map(move |j| (i, j))).collect();
        pairs.par_iter().all(|&(i, j)| {
            let coeffs: Option<Vec<CycloInt>> = (0..self.n).map(|k| self.get(i, j, k)).collect();
            let Some(coeffs) = coeffs else { return false };
            e.space.points().all(|b| {
                let lhs = &e.f[i][b.index()] * &e.f[j][b.index()];
                let rhs = (0..self.n).fold(CycloInt::zero(order), |acc, k| &acc + &(&coeffs[k] * &e.f[k][b.index()]));
                lhs == rhs
            })
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[serde(rename = "self")]
    SelfDual,
    Cross,
}

/// Outcome of the adjoint step, computed by the caller who knows the
/// families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AdjointStatus {
    Checked {
        #[serde(flatten)]
        check: AdjointCheck,
        /// The images preserve the classes of `Ǧ`.
        codomain_ok: bool,
    },
    Unavailable { reason: String },
}

impl AdjointStatus {
    pub fn passed(&self) -> Option<bool> {
        match self {
            AdjointStatus::Checked { check, codomain_ok } => Some(check.pass && *codomain_ok),
            AdjointStatus::Unavailable { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DualityOptions {
    pub matrix_bound: usize,
    pub verify_representatives: bool,
}

impl Default for DualityOptions {
    fn default() -> Self {
        DualityOptions { matrix_bound: crate::scheme::DEFAULT_MATRIX_BOUND, verify_representatives: true }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstancyReport {
    pub forward: bool,
    pub mirrored: bool,
    pub directions_agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct KreinReport {
    #[serde(serialize_with = "krein_json")]
    pub tensor: KreinTensor,
    pub integral: bool,
    pub real: bool,
    pub nonnegative: bool,
    /// `q_ij^k = p̌_ij^k` against the intersection numbers of `Ǧ`.
    pub matches_dual_p_tensor: bool,
    /// `q_ij^k = p_ij^k`; required in self mode.
    pub matches_p_tensor: bool,
    /// Hadamard products of the idempotents agree, when materialized.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hadamard_check: Option<bool>,
}

fn krein_json<S: serde::Serializer>(t: &KreinTensor, s: S) -> std::result::Result<S::Ok, S::Error> {
    t.to_json().serialize(s)
}

impl KreinReport {
    pub fn all_pass(&self, self_mode: bool) -> bool {
        self.integral
            && self.real
            && self.nonnegative
            && self.matches_dual_p_tensor
            && (!self_mode || self.matches_p_tensor)
            && self.hadamard_check.unwrap_or(true)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Checks {
    pub preconditions: bool,
    pub adjoint: AdjointStatus,
    pub constancy: ConstancyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigen: Option<EigenReport>,
    /// `P` at single representatives equals the mirrored constancy table,
    /// i.e. `p_ij = q̌_ij`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_equals_dual_q: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<IdempotentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotents_skipped: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityCertificate {
    pub mode: Mode,
    pub pass: bool,
    pub status: String,
    /// `P = Q`, `v = m` and `p_ij^k = q_ij^k`, whatever the mode.
    pub self_dual: bool,
    pub scheme: String,
    pub dual_scheme: String,
    pub size: usize,
    pub valencies: Vec<usize>,
    pub multiplicities: Vec<usize>,
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q: Option<CycloMatrix>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    pub p: Option<CycloMatrix>,
    pub sigma: Option<SigmaOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub krein: Option<KreinReport>,
    pub checks: Checks,
    pub witnesses: Vec<serde_json::Value>,
}

fn witness<T: Serialize>(kind: &str, value: &T) -> serde_json::Value {
    serde_json::json!({ "kind": kind, "detail": value })
}

/// Full pipeline: preconditions, constancy both ways, `Q` and `P`, the
/// eigenmatrix identities, idempotents under the matrix bound, `σ`, the Krein
/// parameters and their cross-checks.
pub fn duality_report(
    g: &TranslationScheme,
    g_check: &TranslationScheme,
    mode: Mode,
    adjoint: AdjointStatus,
    options: DualityOptions,
) -> Result<DualityCertificate> {
    check_same_space(g, g_check)?;
    let space = g.space();
    let size = space.size();
    let valencies = g.valencies();
    let multiplicities = g_check.valencies();
    let mut witnesses = Vec::new();

    let mut preconditions = valencies.len() == multiplicities.len();
    if !preconditions {
        witnesses.push(serde_json::json!({
            "kind": "class_count",
            "detail": { "scheme": valencies.len(), "dual_scheme": multiplicities.len() }
        }));
    }
    for (name, s) in [("scheme", g), ("dual_scheme", g_check)] {
        if let Err(w) = action::check_condition_4(s.partition(), space) {
            preconditions = false;
            witnesses.push(serde_json::json!({ "kind": "condition_4", "scheme": name, "detail": w }));
        }
    }
    if let AdjointStatus::Checked { check: AdjointCheck { witness: Some(w), .. }, .. } = &adjoint {
        witnesses.push(witness("adjoint", w));
    }

    let forward = constancy_test(g, g_check)?;
    let mirrored = constancy_test(g_check, g)?;
    for c in [&forward, &mirrored] {
        if let Some(w) = c.witness() {
            witnesses.push(witness("constancy", &w));
        }
    }
    let constancy = ConstancyReport {
        forward: forward.passed(),
        mirrored: mirrored.passed(),
        directions_agree: forward.passed() == mirrored.passed(),
    };

    let mut cert = DualityCertificate {
        mode,
        pass: false,
        status: String::new(),
        self_dual: false,
        scheme: g.label().to_string(),
        dual_scheme: g_check.label().to_string(),
        size,
        valencies: valencies.clone(),
        multiplicities: multiplicities.clone(),
        q: None,
        p: None,
        sigma: None,
        krein: None,
        checks: Checks {
            preconditions,
            adjoint: adjoint.clone(),
            constancy,
            eigen: None,
            p_equals_dual_q: None,
            idempotents: None,
            idempotents_skipped: None,
        },
        witnesses,
    };

    let (Some(q), Some(p), true) = (forward.matrix(), mirrored.matrix(), preconditions) else {
        cert.status = "fail".into();
        return Ok(cert);
    };
    let self_mode = mode == Mode::SelfDual;
    let eigen = verify_eigen_identities(p, q, &valencies, &multiplicities, self_mode);
    for w in &eigen.witnesses {
        cert.witnesses.push(witness("eigenmatrix", w));
    }
    let p_equals_dual_q = p_matrix_at_representatives(g, g_check) == *p;

    let (idempotent_report, sigma, e) = match idempotents(g_check, options.matrix_bound) {
        Ok(e) => {
            let (report, sigma) = verify_idempotents(g, g_check, &e);
            (Some(report), sigma, Some(e))
        }
        Err(err) => {
            cert.checks.idempotents_skipped = Some(err.to_string());
            (None, sigma_from_eigenmatrices(p, q, size), None)
        }
    };

    let krein_tensor = KreinTensor::from_eigenmatrices(p, q, size);
    let dual_tensor = g_check.intersection_numbers(options.verify_representatives);
    let matches_dual_p_tensor = dual_tensor.as_ref().is_ok_and(|t| krein_tensor.equals(t));
    if let Err(err) = &dual_tensor {
        cert.witnesses.push(witness("dual_intersection_numbers", &err.to_string()));
    }
    let matches_p_tensor = g
        .intersection_numbers(options.verify_representatives)
        .is_ok_and(|t| krein_tensor.equals(&t));
    let krein = KreinReport {
        integral: krein_tensor.integral(),
        real: krein_tensor.real(),
        nonnegative: krein_tensor.nonnegative(),
        matches_dual_p_tensor,
        matches_p_tensor,
        hadamard_check: e.as_ref().map(|e| krein_tensor.verify_hadamard(e)),
        tensor: krein_tensor,
    };

    let pass = eigen.all_pass(self_mode)
        && p_equals_dual_q
        && idempotent_report.as_ref().is_none_or(|r| r.all_pass())
        && sigma.sigma.is_some()
        && krein.all_pass(self_mode)
        && adjoint.passed().unwrap_or(true);
    cert.self_dual = pass
        && eigen.p_equals_q
        && eigen.valencies_equal_multiplicities
        && krein.matches_p_tensor;
    cert.status = match (pass, adjoint.passed(), mode) {
        (false, _, _) => "fail".into(),
        (true, None, _) => "dual (no adjoint witness)".into(),
        (true, Some(_), Mode::SelfDual) => "self-dual".into(),
        (true, Some(_), Mode::Cross) => "dual pair".into(),
    };
    cert.pass = pass;
    cert.q = Some(q.clone());
    cert.p = Some(p.clone());
    cert.sigma = Some(sigma);
    cert.krein = Some(krein);
    cert.checks.eigen = Some(eigen);
    cert.checks.p_equals_dual_q = Some(p_equals_dual_q);
    cert.checks.idempotents = idempotent_report;
    Ok(cert)
}
