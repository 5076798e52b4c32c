//! Exact Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type Row = Vec<Q>;

/// Reduced row echelon form with leading ones; zero rows are dropped.
/// Returns the rows and the pivot column of each.
pub fn rref(mut rows: Vec<Row>, ncols: usize) -> (Vec<Row>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// A basis of `{x : row · x = 0 for every row}`, itself in reduced form.
pub fn nullspace(rows: Vec<Row>, ncols: usize) -> Vec<Row> {
    let (reduced, pivots) = rref(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<Row> = (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Q::zero(); ncols];
            v[free] = Q::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect();
    rref(basis, ncols).0
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Whether `v` lies in the row space of an RREF matrix with the given pivots.
pub fn in_row_space(reduced: &[Row], pivots: &[usize], v: &[Q]) -> bool {
    let mut rest = v.to_vec();
    for (row, &p) in reduced.iter().zip(pivots) {
        if !rest[p].is_zero() {
            let factor = rest[p].clone();
            for (x, r) in rest.iter_mut().zip(row) {
                *x -= &factor * r;
            }
        }
    }
    rest.iter().all(Zero::is_zero)
}
