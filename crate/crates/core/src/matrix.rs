//! Small dense matrices over a [`Field`]: just enough for the congruence
//! actions and the rank oracle.

use crate::gf::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FieldMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<FieldElement>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        FieldMatrix { rows, cols, data }
    }

    /// The `n × n` permutation matrix of the cycle `e_i ↦ e_(i+1 mod n)`.
    pub fn cycle(n: usize) -> Self {
        let mut m = FieldMatrix::zeros(n, n);
        for i in 0..n {
            m.set((i + 1) % n, i, FieldElement::ONE);
        }
        m
    }

    /// `I + c·E_ij`.
    pub fn elementary(n: usize, i: usize, j: usize, c: FieldElement) -> Self {
        let mut m = FieldMatrix::identity(n);
        m.set(i, j, c);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[FieldElement] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == FieldMatrix::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = FieldMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise `a ↦ a^power`, the Frobenius conjugation when `power` is the
    /// order of the fixed subfield.
    pub fn frobenius(&self, field: &Field, power: u64) -> Self {
        FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| field.pow(a, power)).collect(),
        }
    }

    /// `*A`, the conjugate transpose with respect to `a ↦ a^power`.
    pub fn conjugate_transpose(&self, field: &Field, power: u64) -> Self {
        self.transpose().frobenius(field, power)
    }

    pub fn mul(&self, field: &Field, other: &FieldMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = FieldMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, field.add(cur, field.mul(a, other.get(k, j))));
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, field: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(FieldElement::ZERO, |acc, j| {
                    field.add(acc, field.mul(self.get(i, j), v[j]))
                })
            })
            .collect()
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self, field: &Field) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            let Some(pivot) = (rank..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            for j in 0..a.cols {
                a.data.swap(pivot * a.cols + j, rank * a.cols + j);
            }
            let inv = field.inv(a.get(rank, col)).expect("pivot is nonzero");
            for r in 0..a.rows {
                if r == rank || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = field.mul(a.get(r, col), inv);
                for j in col..a.cols {
                    let v = field.sub(a.get(r, j), field.mul(factor, a.get(rank, j)));
                    a.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }
}
