use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::element::{CharacterWeight, MatrixAlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, C64};
use crate::rep::{Arrow, BasisIndex, ModularModule, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelOptions {
    /// Singular values below this span the kernel.
    pub kernel_tol: f64,
    /// Largest allowed ratio between the top kernel singular value and the
    /// smallest retained one.
    pub max_gap_ratio: f64,
    /// Shells removed from the codomain window to form the domain.
    pub domain_margin: usize,
}

impl Default for KernelOptions {
    fn default() -> Self {
        Self {
            kernel_tol: 1e-6,
            max_gap_ratio: 0.1,
            domain_margin: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelReport {
    pub index: f64,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
    /// `<xi, K~ xi>` for an orthonormal kernel basis.
    pub kernel_weights: Vec<f64>,
    pub cokernel_weights: Vec<f64>,
    pub largest_below: f64,
    pub smallest_above: f64,
    pub gap_ratio: f64,
    /// Norm of the projection of the normalized expected kernel vector onto
    /// the computed kernel, when one is known.
    pub expected_overlap: Option<f64>,
    pub domain_dim: usize,
    pub codomain_dim: usize,
}

/// Kernel of a rectangular compression, split along its connected blocks.
struct Null {
    vectors: Vec<(Vec<usize>, DVector<C64>)>,
    largest_below: f64,
    smallest_above: f64,
}

fn null_space(m: &SparseMatrix, tol: f64) -> Null {
    let blocks = m.components();
    let parts: Vec<Null> = blocks
        .par_iter()
        .filter(|(_, cols)| !cols.is_empty())
        .map(|(rows, cols)| {
            let sub = m.submatrix(rows, cols).to_dense();
            // pad to at least square so that every right singular vector is returned
            let r = sub.nrows().max(cols.len());
            let mut dense = DMatrix::<C64>::zeros(r, cols.len());
            dense
                .view_mut((0, 0), (sub.nrows(), sub.ncols()))
                .copy_from(&sub);
            let svd = dense.svd(false, true);
            let vt = svd.v_t.expect("requested right singular vectors");
            let mut out = Null {
                vectors: Vec::new(),
                largest_below: 0.0,
                smallest_above: f64::INFINITY,
            };
            for (n, &s) in svd.singular_values.iter().enumerate() {
                if s < tol {
                    out.largest_below = out.largest_below.max(s);
                    let v: DVector<C64> = vt.row(n).transpose().map(|z| z.conj());
                    out.vectors.push((cols.clone(), v));
                } else {
                    out.smallest_above = out.smallest_above.min(s);
                }
            }
            out
        })
        .collect();
    parts.into_iter().fold(
        Null {
            vectors: Vec::new(),
            largest_below: 0.0,
            smallest_above: f64::INFINITY,
        },
        |mut acc, p| {
            acc.vectors.extend(p.vectors);
            acc.largest_below = acc.largest_below.max(p.largest_below);
            acc.smallest_above = acc.smallest_above.min(p.smallest_above);
            acc
        },
    )
}

/// The expected kernel vector of the DLSSV module,
/// `(|0,0,-1/2>up ; -q^-1 |0,0,1/2>up)`, in full `H ⊗ C^2` coordinates.
fn expected_kernel_vector(m: &ModularModule) -> Option<Vec<(usize, C64)>> {
    let q = m.params().q;
    let first = m.basis().position(&BasisIndex::Dlssv {
        two_j: 0,
        two_mu: 0,
        two_n: -1,
        arrow: Arrow::Up,
    })?;
    let second = m.basis().position(&BasisIndex::Dlssv {
        two_j: 0,
        two_mu: 0,
        two_n: 1,
        arrow: Arrow::Up,
    })?;
    let norm = (1.0 + 1.0 / (q * q)).sqrt();
    Some(vec![
        (first, C64::new(1.0 / norm, 0.0)),
        (m.dim() + second, C64::new(-1.0 / (q * norm), 0.0)),
    ])
}

/// Modular index `tr(K~|ker) - tr(K~|coker)` of `E v E` with
/// `E = 1/2 (1 + F) ⊗ 1`, from singular value decompositions of the
/// compressions of `v` and `v*` from the inner shells to the full window.
pub fn modular_index_kernel(
    m: &ModularModule,
    v: &MatrixAlgebraElement,
    delta: &CharacterWeight,
    opts: KernelOptions,
) -> Result<KernelReport> {
    if m.parity() != Parity::Odd {
        return Err(Error::InvalidParameter(format!(
            "{} has the wrong parity for this pairing",
            m.kind()
        )));
    }
    if delta.dim() != v.size() {
        return Err(Error::InvalidParameter(
            "weight and matrix sizes differ".into(),
        ));
    }
    if !v.is_unitary()? {
        return Err(Error::Invariant(format!("{v} is not unitary")));
    }
    let dim = m.dim();
    let d = v.size();
    let dv = delta.values(m.params())?;
    let f = m.f().diag();
    let inner = m.window().with_margin(opts.domain_margin);
    let labels = m.basis().labels();
    let positive = |n: usize| f[n % dim].re > 0.0;
    let codomain: Vec<usize> = (0..d * dim).filter(|&n| positive(n)).collect();
    let domain: Vec<usize> = codomain
        .iter()
        .copied()
        .filter(|&n| inner.is_interior(&labels[n % dim]))
        .collect();
    let weight = |n: usize| m.k_diag()[n % dim] * dv[n / dim];

    let forward = v.represent(m)?.submatrix(&codomain, &domain);
    let backward = v.adjoint().represent(m)?.submatrix(&codomain, &domain);
    let ker = null_space(&forward, opts.kernel_tol);
    let coker = null_space(&backward, opts.kernel_tol);

    let weights = |null: &Null| -> Vec<f64> {
        null.vectors
            .iter()
            .map(|(cols, x)| {
                cols.iter()
                    .zip(x.iter())
                    .map(|(&c, z)| z.norm_sqr() * weight(domain[c]))
                    .sum()
            })
            .collect()
    };
    let kernel_weights = weights(&ker);
    let cokernel_weights = weights(&coker);
    let index = kernel_weights.iter().sum::<f64>() - cokernel_weights.iter().sum::<f64>();

    let largest_below = ker.largest_below.max(coker.largest_below);
    let smallest_above = ker.smallest_above.min(coker.smallest_above);
    let gap_ratio = if largest_below == 0.0 {
        0.0
    } else {
        largest_below / smallest_above
    };
    if gap_ratio > opts.max_gap_ratio {
        return Err(Error::NoSpectralGap {
            below: largest_below,
            above: smallest_above,
        });
    }

    let expected_overlap = expected_kernel_vector(m).map(|xi| {
        let overlap_sq: f64 = ker
            .vectors
            .iter()
            .map(|(cols, x)| {
                let dot: C64 = cols
                    .iter()
                    .zip(x.iter())
                    .map(|(&c, z)| {
                        xi.iter()
                            .find(|(n, _)| *n == domain[c])
                            .map_or(C64::new(0.0, 0.0), |(_, w)| w.conj() * z)
                    })
                    .sum();
                dot.norm_sqr()
            })
            .sum();
        overlap_sq.sqrt()
    });

    Ok(KernelReport {
        index,
        kernel_dim: ker.vectors.len(),
        cokernel_dim: coker.vectors.len(),
        kernel_weights,
        cokernel_weights,
        largest_below,
        smallest_above,
        gap_ratio,
        expected_overlap,
        domain_dim: domain.len(),
        codomain_dim: codomain.len(),
    })
}
