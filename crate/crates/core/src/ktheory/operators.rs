use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, C64};
use crate::rep::{BasisIndex, TruncationWindow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "+" | "plus" => Some(Sign::Plus),
            "-" | "minus" => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// An operator on `H ⊗ C^d` given directly by its truncated matrix,
/// component-major.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    matrix: SparseMatrix,
    components: usize,
}

impl TruncatedOperator {
    pub fn new(matrix: SparseMatrix, components: usize) -> Result<Self> {
        if components == 0
            || matrix.nrows() != matrix.ncols()
            || !matrix.nrows().is_multiple_of(components)
        {
            return Err(Error::InvalidParameter(format!(
                "{}x{} matrix does not split into {components} components",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { matrix, components })
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn block_dim(&self) -> usize {
        self.matrix.nrows() / self.components
    }
}

/// Rank-one projection onto `e_{k,+}` (first summand) or `e_{k,-}` (second
/// summand) of the doubled Podleś space.
pub fn spectral_projection(
    k: usize,
    sign: Sign,
    window: TruncationWindow,
) -> Result<TruncatedOperator> {
    let TruncationWindow::Podles { n, .. } = window else {
        return Err(Error::InvalidParameter(
            "spectral projections live on the Podleś window".into(),
        ));
    };
    let label = BasisIndex::PodlesPM {
        k,
        plus: sign == Sign::Plus,
    };
    if k >= n {
        return Err(Error::OutsideWindow {
            index: label.to_string(),
            window: window.to_string(),
        });
    }
    let pos = window
        .basis()
        .iter()
        .position(|b| *b == label)
        .expect("label inside window");
    let dim = 2 * n;
    let p = SparseMatrix::from_triplets(dim, dim, [(pos, pos, C64::new(1.0, 0.0))]);
    TruncatedOperator::new(p, 1)
}

/// The isometry `e_k -> e_{k+1}` truncated to `k < n`.
pub fn shift(n: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(
        n,
        n,
        (0..n.saturating_sub(1)).map(|k| (k + 1, k, C64::new(1.0, 0.0))),
    )
}

fn p0(n: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(n, n, [(0, 0, C64::new(1.0, 0.0))])
}

/// `f_t` on `l^2(N) ⊗ C^2` truncated to `k < n`:
/// `1/2 (sqrt(1-t^2) + 1, t S*; t S, (1 - sqrt(1-t^2))(1 - p_0) + 2 p_0)`
/// for the plus branch, without the `2 p_0` term for the minus branch.
pub fn homotopy_f(t: f64, branch: Sign, n: usize) -> Result<TruncatedOperator> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t = {t} outside [0, 1]")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "homotopy window {n} too small"
        )));
    }
    let c = (1.0 - t * t).sqrt();
    let id = SparseMatrix::identity(n);
    let s = shift(n);
    let p = p0(n);
    let half = C64::new(0.5, 0.0);
    let f11 = id.scale(C64::new(c + 1.0, 0.0));
    let f12 = s.adjoint().scale(C64::new(t, 0.0));
    let f21 = s.scale(C64::new(t, 0.0));
    let mut f22 = id.sub(&p).scale(C64::new(1.0 - c, 0.0));
    if branch == Sign::Plus {
        f22 = f22.add(&p.scale(C64::new(2.0, 0.0)));
    }
    let m = SparseMatrix::from_blocks(&[vec![f11, f12], vec![f21, f22]]).scale(half);
    TruncatedOperator::new(m, 2)
}

/// Generator of the circle action on `l^2(N) ⊗ C^2`: `N ⊗ 1 - 1 ⊗ diag(0, 1)`.
pub fn circle_generator(n: usize) -> SparseMatrix {
    let d: Vec<f64> = (0..2 * n)
        .map(|i| (i % n) as f64 - (i / n) as f64)
        .collect();
    SparseMatrix::real_diagonal(&d)
}

/// `max |(f^2 - f)_{ij}|` over indices with `k < n - 1`, where the truncated
/// shift still satisfies `S* S = 1`.
pub fn projection_residual(f: &TruncatedOperator) -> f64 {
    let n = f.block_dim();
    let mask: Vec<bool> = (0..f.matrix.nrows()).map(|i| i % n + 1 < n).collect();
    f.matrix
        .mul(&f.matrix)
        .sub(&f.matrix)
        .max_abs_masked(&mask, &mask)
}

/// `max |[G, f]|` for the circle generator `G`.
pub fn circle_residual(f: &TruncatedOperator) -> f64 {
    let g = circle_generator(f.block_dim());
    g.mul(&f.matrix).sub(&f.matrix.mul(&g)).max_abs()
}
