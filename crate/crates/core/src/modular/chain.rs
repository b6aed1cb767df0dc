use super::chern::ChernFunctional;
use super::weight::Estimate;
use crate::error::{Error, Result};
use crate::ncalg::{AlgebraKind, Generator, NCPolynomial, Scalar};

/// Finite sum of elementary tensors with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedChain {
    kind: AlgebraKind,
    terms: Vec<(Scalar, Vec<NCPolynomial>)>,
}

impl TwistedChain {
    pub fn new(kind: AlgebraKind) -> Self {
        Self {
            kind,
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Scalar, factors: Vec<NCPolynomial>) -> Result<()> {
        if let Some(bad) = factors.iter().find(|f| f.kind() != self.kind) {
            return Err(Error::AlgebraMismatch {
                left: self.kind.name(),
                right: bad.kind().name(),
            });
        }
        if let Some((_, first)) = self.terms.first() {
            if first.len() != factors.len() {
                return Err(Error::InvalidParameter(
                    "chain terms of different lengths".into(),
                ));
            }
        }
        self.terms.push((c, factors));
        Ok(())
    }

    pub fn terms(&self) -> &[(Scalar, Vec<NCPolynomial>)] {
        &self.terms
    }

    /// The twisted Hochschild 2-cycle of the Podleś sphere:
    ///
    /// ```text
    /// 2 (A.B.B* - A.B*.B + 2 B.B*.A - 2 q^-2 B.A.B* + (q^4 - 1) A.A.A)
    ///   + (1 - q^-2) s^2 (1 - s^2) 1.1.1
    ///   + (1 - s^2) (1.B*.B - q^-2 1.B.B* + (1 - q^2) 1.A.A)
    /// ```
    pub fn omega2() -> Self {
        use Generator::{BStar, A, B};
        let kind = AlgebraKind::Podles;
        let one = NCPolynomial::one(kind);
        let g = NCPolynomial::generator;
        let int = Scalar::int;
        let s2 = Scalar::s_pow(2);
        let one_minus_s2 = &Scalar::one() - &s2;
        let qm2 = Scalar::q_pow(-2);
        let mut c = Self::new(kind);
        let mut add =
            |coef: Scalar, f: [NCPolynomial; 3]| c.push(coef, f.to_vec()).expect("uniform chain");
        add(int(2), [g(A), g(B), g(BStar)]);
        add(int(-2), [g(A), g(BStar), g(B)]);
        add(int(4), [g(B), g(BStar), g(A)]);
        add(&int(-4) * &qm2, [g(B), g(A), g(BStar)]);
        add(&int(2) * &(&Scalar::q_pow(4) - &int(1)), [g(A), g(A), g(A)]);
        add(
            &(&(&int(1) - &qm2) * &s2) * &one_minus_s2,
            [one.clone(), one.clone(), one.clone()],
        );
        add(one_minus_s2.clone(), [one.clone(), g(BStar), g(B)]);
        add(&-&one_minus_s2 * &qm2, [one.clone(), g(B), g(BStar)]);
        add(
            &one_minus_s2 * &(&int(1) - &Scalar::q_pow(2)),
            [one.clone(), g(A), g(A)],
        );
        c
    }
}

/// `sum_terms c * phi(factors)`.
pub fn pair_with_chain(phi: &ChernFunctional, chain: &TwistedChain) -> Result<Estimate> {
    let p = phi.module().params();
    let mut total = Estimate::zero();
    for (c, factors) in chain.terms() {
        total = total.add(phi.eval(factors)?.scale(c.eval(p.q, p.s)));
    }
    Ok(total)
}
