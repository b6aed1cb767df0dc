use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::weight::{lambda_constant, weight_of_product, Estimate};
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, C64};
use crate::ncalg::{q_product, FreeProductElement, Generator, NCPolynomial};
use crate::rep::{ModularModule, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// `lambda_n / 2 * Phi(gamma F [F,a_0] ... [F,a_n])`.
    Lambda,
    /// `Phi(gamma F [F,a_0] ... [F,a_n])`.
    Raw,
    /// Index-pairing prefactor: `(-1)^p / 2` for `n = 2p`, `(-1)^m / 2^{2m}`
    /// for `n = 2m - 1`.
    Index,
}

impl Normalization {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lambda" => Some(Normalization::Lambda),
            "raw" => Some(Normalization::Raw),
            "index" => Some(Normalization::Index),
            _ => None,
        }
    }
}

pub fn prefactor(n: usize, norm: Normalization) -> C64 {
    match norm {
        Normalization::Raw => C64::new(1.0, 0.0),
        Normalization::Lambda => lambda_constant(n as u64) * 0.5,
        Normalization::Index => {
            if n.is_multiple_of(2) {
                let sign = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
                C64::new(sign * 0.5, 0.0)
            } else {
                let m = n.div_ceil(2);
                let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
                C64::new(sign / 4f64.powi(m as i32), 0.0)
            }
        }
    }
}

/// The multilinear functional `(a_0, ..., a_n) -> c Phi(gamma F [F,a_0] ... [F,a_n])`
/// of a module, with commutators cached per argument.
pub struct ChernFunctional<'a> {
    module: &'a ModularModule,
    normalization: Normalization,
    gamma_f: SparseMatrix,
    cache: RwLock<HashMap<NCPolynomial, Arc<SparseMatrix>>>,
}

impl<'a> ChernFunctional<'a> {
    pub fn new(module: &'a ModularModule, normalization: Normalization) -> Self {
        let gamma_f = match module.gamma_matrix() {
            Some(g) => g.mul(module.f()),
            None => module.f().clone(),
        };
        Self {
            module,
            normalization,
            gamma_f,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn module(&self) -> &ModularModule {
        self.module
    }

    pub fn arity(&self) -> usize {
        self.module.summability() + 1
    }

    pub fn commutator(&self, p: &NCPolynomial) -> Result<Arc<SparseMatrix>> {
        if let Some(c) = self.cache.read().expect("cache poisoned").get(p) {
            return Ok(c.clone());
        }
        let c = Arc::new(self.module.commutator(p)?);
        self.cache
            .write()
            .expect("cache poisoned")
            .insert(p.clone(), c.clone());
        Ok(c)
    }

    /// Evaluates on exactly `arity` arguments.
    pub fn eval(&self, args: &[NCPolynomial]) -> Result<Estimate> {
        if args.len() != self.arity() {
            return Err(Error::InvalidParameter(format!(
                "expected {} arguments, got {}",
                self.arity(),
                args.len()
            )));
        }
        let mut product: Option<SparseMatrix> = None;
        for a in args {
            let c = self.commutator(a)?;
            if c.nnz() == 0 {
                return Ok(Estimate::zero());
            }
            product = Some(match product {
                None => (*c).clone(),
                Some(p) => p.mul(&c),
            });
        }
        let product = product.expect("arity is positive");
        let margin = args.iter().map(NCPolynomial::degree).sum::<usize>() + 1;
        let e = weight_of_product(self.module, &self.gamma_f, &product, margin);
        Ok(e.scale(prefactor(self.module.summability(), self.normalization)))
    }
}

/// Residual of a cocycle identity with the tail estimates of the terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub residual: f64,
    pub tail: f64,
}

fn sigma_all(args: &[NCPolynomial]) -> Vec<NCPolynomial> {
    args.iter().map(NCPolynomial::apply_sigma).collect()
}

/// `|phi(a_0..a_n) - phi(sigma a_0 .. sigma a_n)|`.
pub fn check_sigma_invariance(phi: &ChernFunctional, args: &[NCPolynomial]) -> Result<CheckResult> {
    let x = phi.eval(args)?;
    let y = phi.eval(&sigma_all(args))?;
    Ok(CheckResult {
        residual: (x.value - y.value).norm(),
        tail: x.tail + y.tail,
    })
}

/// `|phi(a_0..a_n) - (-1)^n phi(sigma(a_n), a_0 .. a_{n-1})|`.
pub fn check_sigma_cyclicity(phi: &ChernFunctional, args: &[NCPolynomial]) -> Result<CheckResult> {
    let n = args.len() - 1;
    let x = phi.eval(args)?;
    let mut rotated = vec![args[n].apply_sigma()];
    rotated.extend_from_slice(&args[..n]);
    let y = phi.eval(&rotated)?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(CheckResult {
        residual: (x.value - y.value * sign).norm(),
        tail: x.tail + y.tail,
    })
}

/// `|b^sigma phi (a_0 .. a_{n+1})|`.
pub fn check_hochschild(phi: &ChernFunctional, args: &[NCPolynomial]) -> Result<CheckResult> {
    if args.len() != phi.arity() + 1 {
        return Err(Error::InvalidParameter(format!(
            "Hochschild check needs {} arguments, got {}",
            phi.arity() + 1,
            args.len()
        )));
    }
    let n = phi.arity() - 1;
    let mut total = Estimate::zero();
    for j in 0..=n {
        let mut slot: Vec<NCPolynomial> = args[..j].to_vec();
        slot.push(args[j].multiply(&args[j + 1])?);
        slot.extend_from_slice(&args[j + 2..]);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total = total.add(phi.eval(&slot)?.scale(C64::new(sign, 0.0)));
    }
    let mut wrap = vec![args[n + 1].apply_sigma().multiply(&args[0])?];
    wrap.extend_from_slice(&args[1..=n]);
    let sign = if (n + 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    total = total.add(phi.eval(&wrap)?.scale(C64::new(sign, 0.0)));
    Ok(CheckResult {
        residual: total.value.norm(),
        tail: total.tail,
    })
}

/// Both sides of the doubled-representation formula
/// `Ch_{2p}(a_0..a_{2p}) = lambda_{2p} (-1)^p phi(q(a_0) ... q(a_{2p}))`
/// with `phi(x) = 1/2 Phi(gamma x)` evaluated on the realized free product.
pub fn chern_vs_free_product(m: &ModularModule, args: &[NCPolynomial]) -> Result<(C64, C64)> {
    if m.parity() != Parity::Even {
        return Err(Error::InvalidParameter(
            "the comparison needs an even module".into(),
        ));
    }
    let n = args.len() - 1;
    let p = n / 2;
    let lhs = ChernFunctional::new(m, Normalization::Lambda)
        .eval(args)?
        .value;
    let x: FreeProductElement = q_product(args)?;
    let realized = m.realize_free_product(&x)?;
    let gamma = m.gamma_matrix().expect("even module");
    let margin = args.iter().map(NCPolynomial::degree).sum::<usize>() + 1;
    let phi = weight_of_product(m, &gamma, &realized, margin).value * 0.5;
    let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    let rhs = lambda_constant(n as u64) * sign * phi;
    Ok((lhs, rhs))
}

/// `|Phi(x y) - Phi(sigma(y) x)|` on realized free-product elements, with
/// `sigma` acting factorwise.
pub fn twisted_trace_residual(
    m: &ModularModule,
    x: &FreeProductElement,
    y: &FreeProductElement,
) -> Result<f64> {
    let rx = m.realize_free_product(x)?;
    let ry = m.realize_free_product(y)?;
    let rsy = m.realize_free_product(&y.apply_sigma())?;
    let lhs = super::weight::diag_of_product(&rx, &ry);
    let rhs = super::weight::diag_of_product(&rsy, &rx);
    let k = m.k_diag();
    let a: C64 = lhs.iter().zip(k).map(|(v, k)| v * *k).sum();
    let b: C64 = rhs.iter().zip(k).map(|(v, k)| v * *k).sum();
    Ok((a - b).norm())
}

/// Grading charge of a homogeneous polynomial: the net `(k, l)` shift for
/// SU_q(2) and the net `k` shift for the Podleś sphere. `None` if mixed.
pub fn charge(p: &NCPolynomial) -> Option<(i64, i64)> {
    let mut out = None;
    for w in p.terms().keys() {
        let mut c = (0i64, 0i64);
        for g in w {
            match g {
                Generator::A => {}
                Generator::B => c.0 -= 1,
                Generator::BStar => c.0 += 1,
                Generator::Alpha => c.0 += 1,
                Generator::AlphaStar => c.0 -= 1,
                Generator::Beta => c.1 += 1,
                Generator::BetaStar => c.1 -= 1,
            }
        }
        match out {
            None => out = Some(c),
            Some(prev) if prev != c => return None,
            _ => {}
        }
    }
    Some(out.unwrap_or((0, 0)))
}
