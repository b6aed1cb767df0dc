use super::element::{CharacterWeight, MatrixAlgebraElement};
use super::operators::TruncatedOperator;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, C64};
use crate::modular::{level_sum, Estimate};
use crate::rep::{ModularModule, Parity};

/// Imaginary parts above this (relative to `max(1, |value|)`) are rejected.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Power `n` in the odd index formula for 3-summable modules.
pub const ODD_POWER: usize = 2;

fn require(m: &ModularModule, parity: Parity) -> Result<()> {
    if m.parity() != parity {
        return Err(Error::InvalidParameter(format!(
            "{} has the wrong parity for this pairing",
            m.kind()
        )));
    }
    Ok(())
}

fn check_weight(m: &ModularModule, delta: &CharacterWeight, components: usize) -> Result<Vec<f64>> {
    if delta.dim() != components {
        return Err(Error::InvalidParameter(format!(
            "weight of dimension {} against {components} components",
            delta.dim()
        )));
    }
    delta.values(m.params())
}

/// `F ⊗ 1` on `d` copies.
pub fn amplify(x: &SparseMatrix, d: usize) -> SparseMatrix {
    let z = SparseMatrix::zeros(x.nrows(), x.ncols());
    let rows: Vec<Vec<SparseMatrix>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { x.clone() } else { z.clone() })
                .collect()
        })
        .collect();
    SparseMatrix::from_blocks(&rows)
}

/// `Tr((K ⊗ Delta)(G ⊗ 1) X)` summed by level, where `G` is the grading or
/// the identity, restricted to levels at distance `margin` from the cut.
fn weighted_trace(
    m: &ModularModule,
    delta: &[f64],
    graded: bool,
    x: &SparseMatrix,
    margin: usize,
) -> Estimate {
    let dim = m.dim();
    let k = m.k_diag();
    let gamma = if graded { m.gamma() } else { None };
    let labels = m.basis().labels();
    let contrib: Vec<(usize, C64)> = x
        .diag()
        .into_iter()
        .enumerate()
        .map(|(n, v)| {
            let (c, i) = (n / dim, n % dim);
            let g = gamma.map_or(1.0, |g| g[i]);
            (labels[i].level(), v * (k[i] * delta[c] * g))
        })
        .collect();
    let w = m.window();
    level_sum(&contrib, w.levels().saturating_sub(w.margin().max(margin)))
}

fn real(e: Estimate) -> Result<Estimate> {
    if e.value.im.abs() > IMAGINARY_TOLERANCE * e.value.re.abs().max(1.0) {
        return Err(Error::Invariant(format!(
            "index has imaginary part {:e}",
            e.value.im
        )));
    }
    Ok(e)
}

fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn even_from_matrices(
    m: &ModularModule,
    p: &SparseMatrix,
    c: &SparseMatrix,
    delta: &[f64],
    margin: usize,
) -> Result<Estimate> {
    let n = m.summability() / 2;
    let mut x = p.clone();
    for _ in 0..2 * n {
        x = x.mul(c);
    }
    real(weighted_trace(m, delta, true, &x, margin).scale(C64::new(sign(n), 0.0)))
}

/// `(-1)^n Tr((K ⊗ Delta)(gamma ⊗ 1) p [F ⊗ 1, p]^{2n})` with `2n` the
/// summability of the module.
pub fn index_even(
    m: &ModularModule,
    p: &MatrixAlgebraElement,
    delta: &CharacterWeight,
) -> Result<Estimate> {
    require(m, Parity::Even)?;
    let dv = check_weight(m, delta, p.size())?;
    if !p.is_invariant(delta)? {
        return Err(Error::Invariant(format!(
            "{p} is not invariant under the weight"
        )));
    }
    let margin = p.degree() * (m.summability() + 1) + 1;
    even_from_matrices(m, &p.represent(m)?, &p.commutator(m)?, &dv, margin)
}

/// As [`index_even`] for an operator given by its matrix. Invariance is
/// checked numerically against `K ⊗ Delta`.
pub fn index_even_operator(
    m: &ModularModule,
    p: &TruncatedOperator,
    delta: &CharacterWeight,
) -> Result<Estimate> {
    require(m, Parity::Even)?;
    let d = p.components();
    if p.block_dim() != m.dim() {
        return Err(Error::InvalidParameter(format!(
            "operator blocks of size {} on a module of dimension {}",
            p.block_dim(),
            m.dim()
        )));
    }
    let dv = check_weight(m, delta, d)?;
    let kt: Vec<f64> = (0..d * m.dim())
        .map(|n| m.k_diag()[n % m.dim()] * dv[n / m.dim()])
        .collect();
    let x = p.matrix();
    let drift = x
        .triplets()
        .map(|(i, j, v)| (v * (kt[j] / kt[i] - 1.0)).norm())
        .fold(0.0, f64::max);
    if drift > 1e-12 {
        return Err(Error::Invariant(format!(
            "operator is not weight invariant (drift {drift:e})"
        )));
    }
    let f = amplify(m.f(), d);
    let c = f.mul(x).sub(&x.mul(&f));
    even_from_matrices(m, x, &c, &dv, m.window().margin())
}

/// `(-1)^n / 2^{2n} Tr((K ⊗ Delta)(F ⊗ 1)([F ⊗ 1, v][F ⊗ 1, v*])^n)` with
/// `n = 2`.
pub fn index_odd(
    m: &ModularModule,
    v: &MatrixAlgebraElement,
    delta: &CharacterWeight,
) -> Result<Estimate> {
    require(m, Parity::Odd)?;
    let dv = check_weight(m, delta, v.size())?;
    if !v.is_invariant(delta)? {
        return Err(Error::Invariant(format!(
            "{v} is not invariant under the weight"
        )));
    }
    if !v.is_unitary()? {
        return Err(Error::Invariant(format!("{v} is not unitary")));
    }
    let n = ODD_POWER;
    let c = v.commutator(m)?;
    let cs = v.adjoint().commutator(m)?;
    let y = c.mul(&cs);
    let mut x = amplify(m.f(), v.size());
    for _ in 0..n {
        x = x.mul(&y);
    }
    let margin = v.degree() * 2 * n + 1;
    let pre = sign(n) / 4f64.powi(n as i32);
    real(weighted_trace(m, &dv, false, &x, margin).scale(C64::new(pre, 0.0)))
}
