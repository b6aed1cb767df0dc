use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, C64};
use crate::rep::ModularModule;

/// A truncated trace together with its tail estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: C64,
    pub tail: f64,
}

impl Estimate {
    pub fn zero() -> Self {
        Self {
            value: C64::new(0.0, 0.0),
            tail: 0.0,
        }
    }

    pub fn scale(self, c: C64) -> Self {
        Self {
            value: self.value * c,
            tail: self.tail * c.norm(),
        }
    }

    pub fn add(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            tail: self.tail + other.tail,
        }
    }
}

/// Partial sums of per-level contributions up to (excluding) `cutoff`,
/// with the tail taken as `|S(cutoff) - S(cutoff / 2)|`.
pub fn level_sum(contrib: &[(usize, C64)], cutoff: usize) -> Estimate {
    let mut full = C64::new(0.0, 0.0);
    let mut half = C64::new(0.0, 0.0);
    for &(level, v) in contrib {
        if level < cutoff {
            full += v;
            if level < cutoff / 2 {
                half += v;
            }
        }
    }
    Estimate {
        value: full,
        tail: (full - half).norm(),
    }
}

/// Diagonal of `g * m` without forming the product.
pub fn diag_of_product(g: &SparseMatrix, m: &SparseMatrix) -> Vec<C64> {
    (0..g.nrows())
        .map(|i| g.row(i).map(|(j, v)| v * m.get(j, i)).sum())
        .collect()
}

/// Per-level contributions of `Tr(K * diag)`.
fn contributions(m: &ModularModule, diag: &[C64]) -> Vec<(usize, C64)> {
    m.basis()
        .labels()
        .iter()
        .zip(diag)
        .zip(m.k_diag())
        .map(|((b, d), k)| (b.level(), d * *k))
        .collect()
}

fn cutoff(m: &ModularModule, extra_margin: usize) -> usize {
    let w = m.window();
    w.levels().saturating_sub(w.margin().max(extra_margin))
}

/// `Phi(T) = Tr(K T)` summed over the levels at distance at least
/// `max(margin, extra_margin)` from the cut.
pub fn weight_eval_with_margin(
    m: &ModularModule,
    t: &SparseMatrix,
    extra_margin: usize,
) -> Estimate {
    level_sum(&contributions(m, &t.diag()), cutoff(m, extra_margin))
}

/// `Phi(G M)` for a sparse left factor `G`.
pub fn weight_of_product(
    m: &ModularModule,
    g: &SparseMatrix,
    rest: &SparseMatrix,
    extra_margin: usize,
) -> Estimate {
    level_sum(
        &contributions(m, &diag_of_product(g, rest)),
        cutoff(m, extra_margin),
    )
}

pub fn weight_eval(m: &ModularModule, t: &SparseMatrix) -> Estimate {
    weight_eval_with_margin(m, t, 0)
}

/// Full-window `Tr(K T)` without interior restriction.
pub fn weight_full(m: &ModularModule, t: &SparseMatrix) -> C64 {
    t.weighted_trace(m.k_diag())
}

/// As [`weight_eval`], failing when the tail exceeds `tolerance`.
pub fn weight_eval_checked(
    m: &ModularModule,
    t: &SparseMatrix,
    tolerance: f64,
) -> Result<Estimate> {
    let e = weight_eval(m, t);
    check_tail(m, e, tolerance)
}

pub fn check_tail(m: &ModularModule, e: Estimate, tolerance: f64) -> Result<Estimate> {
    if e.tail > tolerance {
        let w = m.window();
        return Err(Error::WindowTooSmall {
            tail: e.tail,
            tolerance,
            suggested: w.with_levels(2 * w.levels()).to_string(),
        });
    }
    Ok(e)
}

fn gamma_half_integer(k: u64) -> f64 {
    // Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)
    let mut v = std::f64::consts::PI.sqrt();
    for i in 1..=k {
        v *= (2 * i - 1) as f64 / 2.0;
    }
    v
}

fn factorial(k: u64) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Normalization constants of the Chern character:
/// `(-1)^{n(n-1)/2} Gamma(n/2 + 1)`, times `sqrt(2i) = 1 + i` for odd `n`.
pub fn lambda_constant(n: u64) -> C64 {
    let sign = if (n * n.saturating_sub(1) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    if n.is_multiple_of(2) {
        C64::new(sign * factorial(n / 2), 0.0)
    } else {
        let g = gamma_half_integer(n.div_ceil(2));
        C64::new(1.0, 1.0) * (sign * g)
    }
}
