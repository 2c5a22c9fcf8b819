//! Dense exact matrices over complex rationals. Row-major, acting on
//! column vectors.

use num_traits::Zero;

use crate::exact::{c_is_zero, cint, CRational};

pub type Matrix = Vec<Vec<CRational>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![cint(0, 0); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = cint(1, 0);
    }
    m
}

pub fn is_rectangular(m: &Matrix, rows: usize, cols: usize) -> bool {
    m.len() == rows && m.iter().all(|r| r.len() == cols)
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate().take(inner) {
            if c_is_zero(aik) {
                continue;
            }
            for j in 0..cols {
                out[i][j] = &out[i][j] + aik * &b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[CRational]) -> Vec<CRational> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(cint(0, 0), |acc, (x, y)| acc + x * y))
        .collect()
}

pub fn submatrix(m: &Matrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
    m[rows].iter().map(|r| r[cols.clone()].to_vec()).collect()
}

/// Row-reduces in place; returns the rank.
fn row_reduce(m: &mut Matrix, augmented_cols: usize) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len) - augmented_cols;
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !c_is_zero(&m[r][col])) else { continue };
        m.swap(rank, pivot);
        let inv = cint(1, 0) / &m[rank][col];
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || c_is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.re.is_zero() || !p.im.is_zero() {
                    *x = &*x - &factor * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(m: &Matrix) -> usize {
    let mut work = m.clone();
    if work.is_empty() {
        return 0;
    }
    row_reduce(&mut work, 0)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut work: Matrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    if row_reduce(&mut work, n) < n {
        return None;
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}
