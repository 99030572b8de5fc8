//! Translation association schemes `(x, y) ∈ R_i ⇔ y − x ∈ X_i`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::action::{self, ActionFamily, GeneratorSet, OrbitPartition};
use crate::error::{Error, Result};
use crate::space::{AbelianSpace, Point};

/// Largest `|X|` for which adjacency matrices are built by default.
pub const DEFAULT_MATRIX_BOUND: usize = 512;
/// Largest `|X|` for which full matrix products are checked.
pub const PRODUCT_CHECK_BOUND: usize = 64;
/// Representative-independence is verified by default up to this size.
pub const VERIFY_REPRESENTATIVES_BOUND: usize = 1024;

#[derive(Debug, Clone)]
pub struct TranslationScheme {
    space: Arc<AbelianSpace>,
    partition: OrbitPartition,
    label: String,
    class_labels: Vec<String>,
}

impl TranslationScheme {
    pub fn new(space: Arc<AbelianSpace>, partition: OrbitPartition, label: impl Into<String>) -> Self {
        let class_labels = (0..partition.num_classes())
            .map(|i| if i == 0 { "zero".to_string() } else { format!("class {i}") })
            .collect();
        TranslationScheme { space, partition, label: label.into(), class_labels }
    }

    /// Orbits of a family's generators, with the family's class labels.
    pub fn from_action(space: Arc<AbelianSpace>, family: &ActionFamily) -> Result<(Self, GeneratorSet)> {
        let gens = action::generators(family, &space)?;
        let partition = action::scheme_orbits(family, &gens, &space);
        let class_labels = action::class_labels(family, &space, &partition);
        let scheme = TranslationScheme { space, partition, label: family.label(), class_labels };
        Ok((scheme, gens))
    }

    pub fn with_class_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.partition.num_classes());
        self.class_labels = labels;
        self
    }

    pub fn space(&self) -> &Arc<AbelianSpace> {
        &self.space
    }

    pub fn partition(&self) -> &OrbitPartition {
        &self.partition
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    pub fn d(&self) -> usize {
        self.partition.d()
    }

    pub fn valencies(&self) -> Vec<usize> {
        self.partition.sizes()
    }

    #[inline]
    pub fn relation(&self, x: Point, y: Point) -> usize {
        self.partition.class_of(self.space.sub(y, x))
    }

    /// `p_ij^k` from one sweep per `k`: with `u ∈ X_k`,
    /// `p_ij^k = #{z ∈ X_i : u − z ∈ X_j}`. With `verify_representatives`
    /// every `u ∈ X_k` is swept and must give the same counts.
    pub fn intersection_numbers(&self, verify_representatives: bool) -> Result<IntersectionTensor> {
        let n = self.partition.num_classes();
        let sweep = |u: Point| -> Vec<u64> {
            let mut counts = vec![0u64; n * n];
            for z in self.space.points() {
                let i = self.partition.class_of(z);
                let j = self.partition.class_of(self.space.sub(u, z));
                counts[i * n + j] += 1;
            }
            counts
        };
        let slices: Vec<Vec<u64>> = (0..n)
            .into_par_iter()
            .map(|k| -> Result<Vec<u64>> {
                let class = self.partition.class(k);
                let first = sweep(class[0]);
                if verify_representatives {
                    let bad = class[1..].par_iter().find_map_first(|&u| {
                        let other = sweep(u);
                        other
                            .iter()
                            .zip(&first)
                            .position(|(a, b)| a != b)
                            .map(|pos| (u, pos))
                    });
                    if let Some((u, pos)) = bad {
                        return Err(Error::Integrity(format!(
                            "p_{}{}^{} differs between representatives {} and {} of class {k}",
                            pos / n,
                            pos % n,
                            k,
                            class[0].0,
                            u.0
                        )));
                    }
                }
                Ok(first)
            })
            .collect::<Result<_>>()?;
        let mut data = vec![0u64; n * n * n];
        for (k, slice) in slices.iter().enumerate() {
            for ij in 0..n * n {
                data[ij * n + k] = slice[ij];
            }
        }
        Ok(IntersectionTensor { n, data })
    }

    /// Verifies the four scheme axioms. Failures are listed, not thrown.
    pub fn verify_axioms(&self, verify_representatives: bool) -> AxiomReport {
        let space = &self.space;
        let sizes = self.valencies();
        let partition = sizes.iter().sum::<usize>() == space.size()
            && space.points().all(|x| self.partition.class(self.partition.class_of(x)).binary_search(&x).is_ok());
        let diagonal = self.partition.class(0) == [Point::ZERO];
        let (symmetric, symmetry_witness) = match action::check_condition_4(&self.partition, space) {
            Ok(()) => (true, None),
            Err(w) => (false, Some(w)),
        };
        let tensor = self.intersection_numbers(verify_representatives);
        let (intersection_numbers, intersection_error) = match &tensor {
            Ok(_) => (true, None),
            Err(e) => (false, Some(e.to_string())),
        };
        AxiomReport {
            partition,
            diagonal,
            symmetric,
            intersection_numbers,
            representatives_verified: verify_representatives,
            symmetry_witness,
            intersection_error,
            tensor: tensor.ok(),
        }
    }

    /// Dense 0/1 adjacency matrix of `R_i`, row-major.
    pub fn adjacency_matrix(&self, i: usize, bound: usize) -> Result<Vec<Vec<u8>>> {
        let size = self.space.size();
        if size > bound {
            return Err(Error::Resource { what: "adjacency matrix", needed: size, bound });
        }
        Ok(self
            .space
            .points()
            .map(|x| self.space.points().map(|y| (self.relation(x, y) == i) as u8).collect())
            .collect())
    }

    /// Checks `A_i A_j = Σ_k p_ij^k A_k` and `A_i A_j = A_j A_i` with full
    /// integer matrix products.
    pub fn verify_bose_mesner(&self, tensor: &IntersectionTensor, bound: usize) -> Result<bool> {
        let n = self.partition.num_classes();
        let size = self.space.size();
        let a: Vec<Vec<Vec<u8>>> = (0..n).map(|i| self.adjacency_matrix(i, bound)).collect::<Result<_>>()?;
        let product = |x: &Vec<Vec<u8>>, y: &Vec<Vec<u8>>| -> Vec<Vec<u64>> {
            (0..size)
                .map(|r| {
                    (0..size)
                        .map(|c| (0..size).map(|t| (x[r][t] * y[t][c]) as u64).sum())
                        .collect()
                })
                .collect()
        };
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        Ok(pairs.par_iter().all(|&(i, j)| {
            let ab = product(&a[i], &a[j]);
            let ba = product(&a[j], &a[i]);
            ab == ba
                && (0..size).all(|r| {
                    (0..size).all(|c| {
                        let expected: u64 = (0..n).map(|k| tensor.get(i, j, k) * a[k][r][c] as u64).sum();
                        ab[r][c] == expected
                    })
                })
        }))
    }
}

/// `p_ij^k` for `i, j, k ∈ 0..=d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionTensor {
    n: usize,
    data: Vec<u64>,
}

impl IntersectionTensor {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    data.push(f(i, j, k));
                }
            }
        }
        IntersectionTensor { n, data }
    }

    pub fn num_classes(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.data[(i * self.n + j) * self.n + k]
    }

    /// Nested as `p[k][i][j]`.
    pub fn to_nested(&self) -> Vec<Vec<Vec<u64>>> {
        (0..self.n)
            .map(|k| (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j, k)).collect()).collect())
            .collect()
    }
}

impl Serialize for IntersectionTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_nested().serialize(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub partition: bool,
    pub diagonal: bool,
    pub symmetric: bool,
    pub intersection_numbers: bool,
    pub representatives_verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry_witness: Option<action::NegationWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection_error: Option<String>,
    #[serde(skip)]
    pub tensor: Option<IntersectionTensor>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.partition && self.diagonal && self.symmetric && self.intersection_numbers
    }
}
