use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, C64};
use crate::ncalg::{AlgebraKind, Generator, NCPolynomial, Scalar};
use crate::rep::{ModularModule, Params};

/// Diagonal weight `Delta_X` on the auxiliary space, with exact monomial
/// entries and an overall positive factor.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterWeight {
    diag: Vec<Scalar>,
    factor: f64,
}

impl CharacterWeight {
    pub fn new(diag: Vec<Scalar>) -> Self {
        Self { diag, factor: 1.0 }
    }

    pub fn trivial(d: usize) -> Self {
        Self::new(vec![Scalar::one(); d])
    }

    /// `diag(q^-1, q)`.
    pub fn standard() -> Self {
        Self::new(vec![Scalar::q_pow(-1), Scalar::q_pow(1)])
    }

    /// The same weight multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "weight factor {c} is not positive"
            )));
        }
        Ok(Self {
            diag: self.diag.clone(),
            factor: self.factor * c,
        })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.diag
    }

    pub fn values(&self, params: Params) -> Result<Vec<f64>> {
        self.diag
            .iter()
            .map(|d| {
                let v = d.eval(params.q, params.s);
                if v.im != 0.0 || !(v.re > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "weight entry {d} is not positive"
                    )));
                }
                Ok(v.re * self.factor)
            })
            .collect()
    }
}

/// Element of `A ⊗ End(C^d)` written as a matrix of polynomials over a
/// common scalar denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixAlgebraElement {
    kind: AlgebraKind,
    size: usize,
    entries: Vec<NCPolynomial>,
    denominator: Scalar,
}

impl MatrixAlgebraElement {
    /// Row-major entries.
    pub fn new(kind: AlgebraKind, size: usize, entries: Vec<NCPolynomial>) -> Result<Self> {
        if entries.len() != size * size || size == 0 {
            return Err(Error::InvalidParameter(format!(
                "{} entries do not form a {size}x{size} matrix",
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.kind() != kind) {
            return Err(Error::AlgebraMismatch {
                left: kind.name(),
                right: e.kind().name(),
            });
        }
        Ok(Self {
            kind,
            size,
            entries,
            denominator: Scalar::one(),
        })
    }

    pub fn identity(kind: AlgebraKind, size: usize) -> Self {
        let entries = (0..size * size)
            .map(|n| {
                if n / size == n % size {
                    NCPolynomial::one(kind)
                } else {
                    NCPolynomial::zero(kind)
                }
            })
            .collect();
        Self {
            kind,
            size,
            entries,
            denominator: Scalar::one(),
        }
    }

    pub fn with_denominator(mut self, d: Scalar) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        self.denominator = d;
        Ok(self)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &NCPolynomial {
        &self.entries[i * self.size + j]
    }

    pub fn denominator(&self) -> &Scalar {
        &self.denominator
    }

    pub fn degree(&self) -> usize {
        self.entries
            .iter()
            .map(NCPolynomial::degree)
            .max()
            .unwrap_or(0)
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::AlgebraMismatch {
                left: self.kind.name(),
                right: other.kind.name(),
            });
        }
        if self.size != other.size {
            return Err(Error::InvalidParameter(format!(
                "sizes {} and {} differ",
                self.size, other.size
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let d = self.size;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = NCPolynomial::zero(self.kind);
                for k in 0..d {
                    acc = acc.try_add(&self.entry(i, k).multiply(other.entry(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(Self {
            kind: self.kind,
            size: d,
            entries,
            denominator: &self.denominator * &other.denominator,
        })
    }

    /// Entrywise involution and transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.size;
        let entries = (0..d * d)
            .map(|n| self.entry(n % d, n / d).involution())
            .collect();
        Self {
            kind: self.kind,
            size: d,
            entries,
            denominator: self.denominator.conj(),
        }
    }

    /// Exact equality of the represented elements, comparing `x / c` and
    /// `y / e` as `e x = c y`.
    pub fn same_element(&self, other: &Self) -> Result<bool> {
        self.check_size(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(x, y)| (&x.scale(&other.denominator) - &y.scale(&self.denominator)).is_zero()))
    }

    pub fn is_self_adjoint(&self) -> Result<bool> {
        self.same_element(&self.adjoint())
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        self.same_element(&self.multiply(self)?)
    }

    pub fn is_unitary(&self) -> Result<bool> {
        let one = Self::identity(self.kind, self.size);
        let adj = self.adjoint();
        Ok(adj.multiply(self)?.same_element(&one)? && self.multiply(&adj)?.same_element(&one)?)
    }

    /// `Delta_i^-1 sigma(x_ij) Delta_j = x_ij` for all entries, checked as
    /// `sigma(x_ij) Delta_j = Delta_i x_ij`.
    pub fn is_invariant(&self, delta: &CharacterWeight) -> Result<bool> {
        if delta.dim() != self.size {
            return Err(Error::InvalidParameter(format!(
                "weight of dimension {} on a {}x{} matrix",
                delta.dim(),
                self.size,
                self.size
            )));
        }
        let d = delta.entries();
        for i in 0..self.size {
            for j in 0..self.size {
                let x = self.entry(i, j);
                if !(&x.apply_sigma().scale(&d[j]) - &x.scale(&d[i])).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn inverse_denominator(&self, m: &ModularModule) -> C64 {
        let p = m.params();
        C64::new(1.0, 0.0) / self.denominator.eval(p.q, p.s)
    }

    fn blocks(
        &self,
        f: impl Fn(&NCPolynomial) -> Result<SparseMatrix>,
        c: C64,
    ) -> Result<SparseMatrix> {
        let d = self.size;
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(d);
            for j in 0..d {
                row.push(f(self.entry(i, j))?.scale(c));
            }
            rows.push(row);
        }
        Ok(SparseMatrix::from_blocks(&rows))
    }

    /// Image on `H ⊗ C^d`, component-major.
    pub fn represent(&self, m: &ModularModule) -> Result<SparseMatrix> {
        self.blocks(|p| m.represent(p), self.inverse_denominator(m))
    }

    /// `[F ⊗ 1, pi(x)]` through the module's stable commutators.
    pub fn commutator(&self, m: &ModularModule) -> Result<SparseMatrix> {
        self.blocks(|p| m.commutator(p), self.inverse_denominator(m))
    }
}

impl fmt::Display for MatrixAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.denominator.is_one() {
            write!(f, "1/({}) * ", self.denominator)?;
        }
        write!(f, "[")?;
        for i in 0..self.size {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.size {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Outcome of the exact checks on a K-theory representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicChecks {
    pub self_adjoint: bool,
    pub idempotent: bool,
    pub unitary: bool,
    pub invariant: bool,
}

fn g(x: Generator) -> NCPolynomial {
    NCPolynomial::generator(x)
}

fn c(kind: AlgebraKind, s: Scalar) -> NCPolynomial {
    NCPolynomial::constant(kind, s)
}

/// `M / (1 + s^2)` with `M = (1 - q^2 A, B; B*, A + s^2)`.
pub fn podles_projection_numerator() -> Result<MatrixAlgebraElement> {
    use Generator::{BStar, A, B};
    let k = AlgebraKind::Podles;
    let m11 = &c(k, Scalar::one()) - &g(A).scale(&Scalar::q_pow(2));
    let m22 = &g(A) + &c(k, Scalar::s_pow(2));
    MatrixAlgebraElement::new(k, 2, vec![m11, g(B), g(BStar), m22])
}

/// The projection `P` and its weight `diag(q^-1, q)`, after exact
/// verification of `P* = P`, `P^2 = P` and invariance.
pub fn podles_projection_p() -> Result<(MatrixAlgebraElement, CharacterWeight)> {
    let p = podles_projection_numerator()?.with_denominator(Scalar::one() + Scalar::s_pow(2))?;
    let delta = CharacterWeight::standard();
    let checks = SymbolicChecks {
        self_adjoint: p.is_self_adjoint()?,
        idempotent: p.is_idempotent()?,
        unitary: false,
        invariant: p.is_invariant(&delta)?,
    };
    if !(checks.self_adjoint && checks.idempotent && checks.invariant) {
        return Err(Error::Presentation(format!(
            "projection checks failed: {checks:?}"
        )));
    }
    Ok((p, delta))
}

/// `V = (-q b*, a*; a, b)` with weight `diag(q^-1, q)`, after exact
/// verification of unitarity and invariance.
pub fn suq2_unitary_v() -> Result<(MatrixAlgebraElement, CharacterWeight)> {
    use Generator::{Alpha, AlphaStar, Beta, BetaStar};
    let k = AlgebraKind::SUq2;
    let v = MatrixAlgebraElement::new(
        k,
        2,
        vec![
            g(BetaStar).scale(&-Scalar::q_pow(1)),
            g(AlphaStar),
            g(Alpha),
            g(Beta),
        ],
    )?;
    let delta = CharacterWeight::standard();
    if !v.is_unitary()? {
        return Err(Error::Presentation(format!("{v} is not unitary")));
    }
    if !v.is_invariant(&delta)? {
        return Err(Error::Presentation(format!("{v} is not invariant")));
    }
    Ok((v, delta))
}

/// The same symbolic checks reported without failing.
pub fn symbolic_checks(
    x: &MatrixAlgebraElement,
    delta: &CharacterWeight,
) -> Result<SymbolicChecks> {
    Ok(SymbolicChecks {
        self_adjoint: x.is_self_adjoint()?,
        idempotent: x.is_idempotent()?,
        unitary: x.is_unitary()?,
        invariant: x.is_invariant(delta)?,
    })
}
