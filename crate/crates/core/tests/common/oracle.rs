//! Reference implementations that share no code with the library.

use scheme_forge::gf::{Field, FieldElement};
use scheme_forge::space::{AbelianSpace, Point};

pub fn rank_oracle(field: &Field, mut rows: Vec<Vec<FieldElement>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][c]).unwrap();
        let pivot_row: Vec<FieldElement> = rows[rank].iter().map(|&v| field.mul(v, inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let factor = row[c];
                for (k, v) in row.iter_mut().enumerate() {
                    *v = field.sub(*v, field.mul(factor, pivot_row[k]));
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn matrix_rows(space: &AbelianSpace, x: Point) -> Vec<Vec<FieldElement>> {
    let a = space.to_matrix(x).unwrap();
    (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j)).collect()).collect()
}

/// `w_P(x)` straight from the order ideal, with the poset given by the level
/// of each coordinate.
pub fn ideal_weight(level: &[usize], x: &[FieldElement]) -> usize {
    (0..x.len())
        .filter(|&i| (0..x.len()).any(|j| !x[j].is_zero() && (i == j || level[i] < level[j])))
        .count()
}

pub fn standard_levels(levels: &[usize]) -> Vec<usize> {
    levels.iter().enumerate().flat_map(|(s, &n)| std::iter::repeat_n(s, n)).collect()
}

/// `n_1 + ... + n_(s-1) + d_H(x_s, y_s)` for the top level `s` where the
/// blocks differ.
pub fn wreath_oracle(levels: &[usize], x: &[FieldElement], y: &[FieldElement]) -> usize {
    let mut start = levels.iter().sum::<usize>();
    for s in (0..levels.len()).rev() {
        start -= levels[s];
        let d = (start..start + levels[s]).filter(|&k| x[k] != y[k]).count();
        if d > 0 {
            return levels[..s].iter().sum::<usize>() + d;
        }
    }
    0
}
