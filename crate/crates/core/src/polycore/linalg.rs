//! Exact row reduction over a [`Scalar`] field.

use super::Scalar;

/// Dense row-major matrix.
pub type Matrix<F> = Vec<Vec<F>>;

/// Reduced row echelon form in place, pivoting only within the first `cols`
/// columns (trailing columns ride along); returns the pivot columns.
pub fn rref<F: Scalar>(m: &mut Matrix<F>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = F::one() / m[row][col].clone();
        for v in m[row].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in 0..m[i].len() {
                let t = m[row][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - t;
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Basis of `{v : M v = 0}`, one vector per free column.
pub fn null_space<F: Scalar>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Outcome of solving `A s + b = 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum AffineSolution<F> {
    Unique(Vec<F>),
    Inconsistent,
    /// Solutions exist but `dim` parameters stay free.
    Underdetermined { dim: usize },
}

/// Solves the affine system whose rows are `[a_1 … a_m | b]`.
pub fn solve_affine<F: Scalar>(rows: &Matrix<F>, unknowns: usize) -> AffineSolution<F> {
    let mut a = rows.clone();
    let pivots = rref(&mut a, unknowns);
    let consistent = a
        .iter()
        .skip(pivots.len())
        .all(|r| r[unknowns].is_zero());
    if !consistent {
        return AffineSolution::Inconsistent;
    }
    if pivots.len() < unknowns {
        return AffineSolution::Underdetermined { dim: unknowns - pivots.len() };
    }
    AffineSolution::Unique(a.iter().take(unknowns).map(|r| -r[unknowns].clone()).collect())
}
