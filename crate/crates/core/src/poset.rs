//! Weak order posets (ordinal sums of antichains) and their poset weights.
//!
//! Coordinates are numbered `0..n`. In the standard layout built by
//! [`WeakOrderPoset::new`], level 1 holds the first `n_1` coordinates,
//! level 2 the next `n_2`, and so on; `k < l` exactly when `k` sits on a
//! strictly lower level than `l`. The dual poset keeps the coordinates and
//! reverses the order.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::gf::FieldElement;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSpec {
    pub levels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakOrderPoset {
    /// `n_s` for `s = 1..=t`, bottom level first.
    levels: Vec<usize>,
    /// 0-based level of each coordinate.
    level_of: Vec<usize>,
}

impl WeakOrderPoset {
    pub fn new(levels: &[usize]) -> Result<Self> {
        if levels.is_empty() || levels.contains(&0) {
            return Err(usage(format!("weak order levels must be positive, got {levels:?}")));
        }
        let level_of = levels
            .iter()
            .enumerate()
            .flat_map(|(s, &n)| std::iter::repeat_n(s, n))
            .collect();
        Ok(WeakOrderPoset { levels: levels.to_vec(), level_of })
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    /// Number of coordinates `n = Σ n_s`.
    pub fn len(&self) -> usize {
        self.level_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.level_of.is_empty()
    }

    pub fn level_of(&self, coordinate: usize) -> usize {
        self.level_of[coordinate]
    }

    /// Coordinates on the given 0-based level, in increasing order.
    pub fn level_members(&self, level: usize) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.level_of[k] == level).collect()
    }

    /// Strict order relation `k < l`.
    pub fn less(&self, k: usize, l: usize) -> bool {
        self.level_of[k] < self.level_of[l]
    }

    pub fn dual(&self) -> WeakOrderPoset {
        let t = self.levels.len();
        WeakOrderPoset {
            levels: self.levels.iter().rev().copied().collect(),
            level_of: self.level_of.iter().map(|&s| t - 1 - s).collect(),
        }
    }

    fn check_dim(&self, x: &[FieldElement]) -> Result<()> {
        if x.len() == self.len() {
            Ok(())
        } else {
            Err(usage(format!(
                "vector of length {} does not match a poset on {} points",
                x.len(),
                self.len()
            )))
        }
    }

    /// Size of the order ideal generated by the support, straight from the
    /// definition.
    pub fn ideal_weight(&self, x: &[FieldElement]) -> Result<usize> {
        self.check_dim(x)?;
        let support: Vec<usize> = (0..x.len()).filter(|&j| !x[j].is_zero()).collect();
        Ok((0..self.len())
            .filter(|&i| support.iter().any(|&j| i == j || self.less(i, j)))
            .count())
    }

    /// Block formula: all levels below the top nonempty level `s`, plus the
    /// Hamming weight of the level-`s` block.
    pub fn block_weight(&self, x: &[FieldElement]) -> Result<usize> {
        self.check_dim(x)?;
        let Some(top) = (0..x.len()).filter(|&j| !x[j].is_zero()).map(|j| self.level_of[j]).max()
        else {
            return Ok(0);
        };
        let below: usize = self.levels_in_layout_order()[..top].iter().sum();
        let block = (0..x.len())
            .filter(|&j| self.level_of[j] == top && !x[j].is_zero())
            .count();
        Ok(below + block)
    }

    /// Level sizes indexed by 0-based level.
    fn levels_in_layout_order(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.levels.len()];
        for &s in &self.level_of {
            sizes[s] += 1;
        }
        sizes
    }

    /// The poset weight `w_P(x)`. Both formulas are evaluated and must agree.
    pub fn p_weight(&self, x: &[FieldElement]) -> Result<usize> {
        let ideal = self.ideal_weight(x)?;
        let block = self.block_weight(x)?;
        assert_eq!(ideal, block, "poset weight formulas disagree on {x:?}");
        Ok(ideal)
    }

    /// `|S_P(i)|` for `i = 0..=n`, by exhaustive enumeration of `F_q^n`.
    pub fn sphere_sizes(&self, q: usize) -> Vec<usize> {
        let n = self.len();
        let mut sizes = vec![0usize; n + 1];
        let total = q.pow(n as u32);
        let mut x = vec![FieldElement::ZERO; n];
        for mut code in 0..total {
            for slot in x.iter_mut() {
                *slot = FieldElement((code % q) as u16);
                code /= q;
            }
            sizes[self.block_weight(&x).expect("dimension matches")] += 1;
        }
        sizes
    }

    /// Relation index of `(x, y)` in the wreath product
    /// `H(n_1, q) ≀ ... ≀ H(n_t, q)`: find the highest level `s` on which the
    /// blocks differ; the index is `n_1 + ... + n_(s-1) + d_H(x_s, y_s)`.
    pub fn wreath_relation(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<usize> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let sizes = self.levels_in_layout_order();
        for s in (0..sizes.len()).rev() {
            let distance = (0..x.len())
                .filter(|&j| self.level_of[j] == s && x[j] != y[j])
                .count();
            if distance > 0 {
                return Ok(sizes[..s].iter().sum::<usize>() + distance);
            }
        }
        Ok(0)
    }
}
