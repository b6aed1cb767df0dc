use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chern::{
    charge, check_hochschild, check_sigma_cyclicity, check_sigma_invariance, CheckResult,
    ChernFunctional,
};
use crate::error::Result;
use crate::ncalg::{normal_monomials, NCPolynomial};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub evaluated: usize,
    /// Tuples with nonzero total charge; every term vanishes identically.
    pub skipped_by_charge: usize,
    pub max_residual: f64,
    pub max_tail: f64,
    pub worst: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub invariance: CheckSummary,
    pub cyclicity: CheckSummary,
    pub hochschild: CheckSummary,
}

impl SuiteReport {
    pub fn max_residual(&self) -> f64 {
        self.invariance
            .max_residual
            .max(self.cyclicity.max_residual)
            .max(self.hochschild.max_residual)
    }
}

fn tuple(monos: &[NCPolynomial], mut code: usize, len: usize) -> Vec<NCPolynomial> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(monos[code % monos.len()].clone());
        code /= monos.len();
    }
    out
}

fn total_charge(args: &[NCPolynomial]) -> (i64, i64) {
    args.iter()
        .map(|a| charge(a).expect("monomials are homogeneous"))
        .fold((0, 0), |acc, c| (acc.0 + c.0, acc.1 + c.1))
}

fn run<F>(monos: &[NCPolynomial], len: usize, check: F) -> Result<CheckSummary>
where
    F: Fn(&[NCPolynomial]) -> Result<CheckResult> + Sync,
{
    let count = monos.len().pow(len as u32);
    let results: Vec<Option<(CheckResult, usize)>> = (0..count)
        .into_par_iter()
        .map(|code| {
            let args = tuple(monos, code, len);
            if total_charge(&args) != (0, 0) {
                return Ok(None);
            }
            check(&args).map(|r| Some((r, code)))
        })
        .collect::<Result<_>>()?;
    let mut s = CheckSummary::default();
    for r in results {
        match r {
            None => s.skipped_by_charge += 1,
            Some((c, code)) => {
                s.evaluated += 1;
                s.max_tail = s.max_tail.max(c.tail);
                if c.residual > s.max_residual || s.worst.is_none() {
                    s.max_residual = s.max_residual.max(c.residual);
                    let args = tuple(monos, code, len);
                    s.worst = Some(
                        args.iter()
                            .map(|a| format!("({a})"))
                            .collect::<Vec<_>>()
                            .join(", "),
                    );
                }
            }
        }
    }
    Ok(s)
}

/// All three cocycle identities on every tuple of normal monomials of
/// degree at most `max_degree`.
pub fn cocycle_suite(phi: &ChernFunctional, max_degree: usize) -> Result<SuiteReport> {
    let monos = normal_monomials(phi.module().kind().algebra(), max_degree);
    let n1 = phi.arity();
    Ok(SuiteReport {
        invariance: run(&monos, n1, |a| check_sigma_invariance(phi, a))?,
        cyclicity: run(&monos, n1, |a| check_sigma_cyclicity(phi, a))?,
        hochschild: run(&monos, n1 + 1, |a| check_hochschild(phi, a))?,
    })
}
