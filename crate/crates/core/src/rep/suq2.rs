//! The basic representation of SU_q(2) on `l^2(N) (x) l^2(Z)`.

use super::basis::{Basis, BasisIndex};
use crate::linalg::{SparseMatrix, C64};

/// `pi_0(a) e_{k,l} = sqrt(1 - q^{2k+2}) e_{k+1,l}`.
pub fn a_coeff(k: usize, q: f64) -> f64 {
    (1.0 - q.powi(2 * k as i32 + 2)).sqrt()
}

/// `pi_0(b) e_{k,l} = q^k e_{k,l+1}`.
pub fn b_coeff(k: usize, q: f64) -> f64 {
    q.powi(k as i32)
}

pub fn generators(basis: &Basis, q: f64) -> (SparseMatrix, SparseMatrix) {
    let n = basis.len();
    let mut ta = Vec::new();
    let mut tb = Vec::new();
    for (col, lab) in basis.labels().iter().enumerate() {
        let BasisIndex::SUq2Basic { k, l } = *lab else {
            continue;
        };
        if let Some(row) = basis.position(&BasisIndex::SUq2Basic { k: k + 1, l }) {
            ta.push((row, col, C64::new(a_coeff(k, q), 0.0)));
        }
        if let Some(row) = basis.position(&BasisIndex::SUq2Basic { k, l: l + 1 }) {
            tb.push((row, col, C64::new(b_coeff(k, q), 0.0)));
        }
    }
    (
        SparseMatrix::from_triplets(n, n, ta),
        SparseMatrix::from_triplets(n, n, tb),
    )
}
