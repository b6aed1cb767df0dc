use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::basis::{Arrow, Basis, BasisIndex, TruncationWindow};
use super::{dlssv, podles, suq2};
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, C64};
use crate::ncalg::{
    AlgebraKind, FreeProductElement, Generator, NCPolynomial, Scalar, SpanningForm, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleKind {
    Podles,
    Suq2Basic,
    Suq2Dlssv,
}

impl ModuleKind {
    pub fn name(self) -> &'static str {
        match self {
            ModuleKind::Podles => "podles",
            ModuleKind::Suq2Basic => "suq2-basic",
            ModuleKind::Suq2Dlssv => "suq2-dlssv",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "podles" => Some(ModuleKind::Podles),
            "suq2-basic" => Some(ModuleKind::Suq2Basic),
            "suq2-dlssv" => Some(ModuleKind::Suq2Dlssv),
            _ => None,
        }
    }

    pub fn algebra(self) -> AlgebraKind {
        match self {
            ModuleKind::Podles => AlgebraKind::Podles,
            _ => AlgebraKind::SUq2,
        }
    }

    pub fn summability(self) -> usize {
        match self {
            ModuleKind::Podles => 2,
            _ => 3,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            ModuleKind::Podles => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn default_window(self) -> TruncationWindow {
        match self {
            ModuleKind::Podles => TruncationWindow::podles(80),
            ModuleKind::Suq2Basic => TruncationWindow::suq2_basic(60, 8),
            ModuleKind::Suq2Dlssv => TruncationWindow::dlssv(12),
        }
    }
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Deformation parameters; `s` is ignored for SU_q(2).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub q: f64,
    pub s: f64,
}

impl Params {
    pub fn new(q: f64, s: f64) -> Self {
        Self { q, s }
    }

    pub fn suq2(q: f64) -> Self {
        Self { q, s: 1.0 }
    }

    pub fn validate(&self, kind: ModuleKind) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "q = {} must lie in (0, 1)",
                self.q
            )));
        }
        if kind == ModuleKind::Podles && !(self.s > 0.0 && self.s <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "s = {} must lie in (0, 1]",
                self.s
            )));
        }
        Ok(())
    }
}

/// Images of a word in both Podleś summands and their difference, with the
/// difference propagated by `D(xy) = D(x) pi_+(y) + pi_-(x) D(y)`.
#[derive(Clone, Debug)]
struct Split {
    plus: SparseMatrix,
    minus: SparseMatrix,
    diff: SparseMatrix,
}

#[derive(Debug)]
struct PodlesHalves {
    plus: podles::HalfGenerators,
    minus: podles::HalfGenerators,
    diff: podles::HalfGenerators,
}

impl PodlesHalves {
    fn letter(&self, g: Generator) -> Split {
        let pick = |h: &podles::HalfGenerators| match g {
            Generator::A => h.a.clone(),
            Generator::B => h.b.clone(),
            Generator::BStar => h.b.adjoint(),
            _ => unreachable!("not a Podleś generator"),
        };
        Split {
            plus: pick(&self.plus),
            minus: pick(&self.minus),
            diff: pick(&self.diff),
        }
    }
}

/// A truncated modular Fredholm module: representation, symmetry `F`,
/// optional grading and the diagonal modular generator `K`.
#[derive(Debug)]
pub struct ModularModule {
    kind: ModuleKind,
    params: Params,
    window: TruncationWindow,
    basis: Arc<Basis>,
    generators: BTreeMap<Generator, SparseMatrix>,
    halves: Option<PodlesHalves>,
    f: SparseMatrix,
    f_diag: Option<Vec<f64>>,
    gamma: Option<Vec<f64>>,
    k: Vec<f64>,
    interior: Vec<bool>,
    word_cache: RwLock<HashMap<Word, SparseMatrix>>,
    split_cache: RwLock<HashMap<Word, Split>>,
}

pub fn build_module(
    kind: ModuleKind,
    params: Params,
    window: TruncationWindow,
) -> Result<ModularModule> {
    params.validate(kind)?;
    window.validate()?;
    let compatible = matches!(
        (kind, window),
        (ModuleKind::Podles, TruncationWindow::Podles { .. })
            | (ModuleKind::Suq2Basic, TruncationWindow::SUq2Basic { .. })
            | (ModuleKind::Suq2Dlssv, TruncationWindow::Dlssv { .. })
    );
    if !compatible {
        return Err(Error::InvalidParameter(format!(
            "window {window} does not fit module {kind}"
        )));
    }
    let basis = Arc::new(Basis::new(window.basis()));
    let dim = basis.len();
    let q = params.q;
    let mut generators = BTreeMap::new();
    let mut halves = None;
    let (f, f_diag, gamma, k);
    match kind {
        ModuleKind::Podles => {
            let TruncationWindow::Podles { n, .. } = window else {
                unreachable!()
            };
            let h = PodlesHalves {
                plus: podles::plus_half(n, q, params.s),
                minus: podles::minus_half(n, q, params.s),
                diff: podles::diff_half(n, q, params.s),
            };
            let z = SparseMatrix::zeros(n, n);
            let block = |p: &SparseMatrix, m: &SparseMatrix| {
                SparseMatrix::from_blocks(&[vec![p.clone(), z.clone()], vec![z.clone(), m.clone()]])
            };
            let a = block(&h.plus.a, &h.minus.a);
            let b = block(&h.plus.b, &h.minus.b);
            generators.insert(Generator::BStar, b.adjoint());
            generators.insert(Generator::A, a);
            generators.insert(Generator::B, b);
            halves = Some(h);
            let id = SparseMatrix::identity(n);
            f = SparseMatrix::from_blocks(&[vec![z.clone(), id.clone()], vec![id, z]]);
            f_diag = None;
            gamma = Some((0..dim).map(|i| if i < n { 1.0 } else { -1.0 }).collect());
            k = basis
                .labels()
                .iter()
                .map(|b| q.powi(-2 * b.level() as i32))
                .collect();
        }
        ModuleKind::Suq2Basic | ModuleKind::Suq2Dlssv => {
            let (a, b) = if kind == ModuleKind::Suq2Basic {
                suq2::generators(&basis, q)
            } else {
                dlssv::generators(&basis, q)
            };
            generators.insert(Generator::AlphaStar, a.adjoint());
            generators.insert(Generator::BetaStar, b.adjoint());
            generators.insert(Generator::Alpha, a);
            generators.insert(Generator::Beta, b);
            let fd: Vec<f64> = basis
                .labels()
                .iter()
                .map(|lab| match *lab {
                    BasisIndex::SUq2Basic { l, .. } => {
                        if l >= 0 {
                            1.0
                        } else {
                            -1.0
                        }
                    }
                    BasisIndex::Dlssv { arrow, .. } => {
                        if arrow == Arrow::Up {
                            1.0
                        } else {
                            -1.0
                        }
                    }
                    _ => unreachable!(),
                })
                .collect();
            f = SparseMatrix::real_diagonal(&fd);
            f_diag = Some(fd);
            gamma = None;
            k = basis
                .labels()
                .iter()
                .map(|lab| match *lab {
                    BasisIndex::SUq2Basic { k, .. } => q.powi(-2 * k as i32),
                    BasisIndex::Dlssv { two_mu, two_n, .. } => q.powi(-(two_mu + two_n) as i32),
                    _ => unreachable!(),
                })
                .collect();
        }
    }
    let interior = basis
        .labels()
        .iter()
        .map(|b| window.is_interior(b))
        .collect();
    Ok(ModularModule {
        kind,
        params,
        window,
        basis,
        generators,
        halves,
        f,
        f_diag,
        gamma,
        k,
        interior,
        word_cache: RwLock::new(HashMap::new()),
        split_cache: RwLock::new(HashMap::new()),
    })
}

impl ModularModule {
    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn window(&self) -> TruncationWindow {
        self.window
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn summability(&self) -> usize {
        self.kind.summability()
    }

    pub fn parity(&self) -> Parity {
        self.kind.parity()
    }

    pub fn f(&self) -> &SparseMatrix {
        &self.f
    }

    pub fn gamma(&self) -> Option<&[f64]> {
        self.gamma.as_deref()
    }

    pub fn gamma_matrix(&self) -> Option<SparseMatrix> {
        self.gamma.as_deref().map(SparseMatrix::real_diagonal)
    }

    pub fn k_diag(&self) -> &[f64] {
        &self.k
    }

    pub fn k_matrix(&self) -> SparseMatrix {
        SparseMatrix::real_diagonal(&self.k)
    }

    pub fn interior(&self) -> &[bool] {
        &self.interior
    }

    pub fn levels(&self) -> Vec<usize> {
        self.basis.labels().iter().map(BasisIndex::level).collect()
    }

    pub fn generator(&self, g: Generator) -> Result<&SparseMatrix> {
        self.generators.get(&g).ok_or(Error::AlgebraMismatch {
            left: g.algebra().name(),
            right: self.kind.algebra().name(),
        })
    }

    fn check_algebra(&self, kind: AlgebraKind) -> Result<()> {
        if kind == self.kind.algebra() {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: kind.name(),
                right: self.kind.algebra().name(),
            })
        }
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree + self.window.margin() >= self.window.levels() {
            return Err(Error::WindowUnderflow {
                degree,
                window: self.window.to_string(),
            });
        }
        Ok(())
    }

    /// Product of truncated generator matrices along a word, no reordering.
    pub fn word_matrix(&self, w: &[Generator]) -> Result<SparseMatrix> {
        if let Some(m) = self.word_cache.read().expect("cache poisoned").get(w) {
            return Ok(m.clone());
        }
        let mut acc = SparseMatrix::identity(self.dim());
        for g in w {
            acc = acc.mul(self.generator(*g)?);
        }
        self.word_cache
            .write()
            .expect("cache poisoned")
            .insert(w.to_vec(), acc.clone());
        Ok(acc)
    }

    fn split_word(&self, w: &[Generator]) -> Split {
        if let Some(s) = self.split_cache.read().expect("cache poisoned").get(w) {
            return s.clone();
        }
        let h = self.halves.as_ref().expect("Podleś module");
        let out = match w.split_first() {
            None => {
                let n = self.dim() / 2;
                Split {
                    plus: SparseMatrix::identity(n),
                    minus: SparseMatrix::identity(n),
                    diff: SparseMatrix::zeros(n, n),
                }
            }
            Some((g, rest)) => {
                let x = h.letter(*g);
                let y = self.split_word(rest);
                Split {
                    plus: x.plus.mul(&y.plus),
                    minus: x.minus.mul(&y.minus),
                    diff: x.diff.mul(&y.plus).add(&x.minus.mul(&y.diff)),
                }
            }
        };
        self.split_cache
            .write()
            .expect("cache poisoned")
            .insert(w.to_vec(), out.clone());
        out
    }

    fn eval(&self, c: &Scalar) -> C64 {
        c.eval(self.params.q, self.params.s)
    }

    /// Image of a polynomial; each normal-form word is the product of the
    /// truncated generators.
    pub fn represent(&self, p: &NCPolynomial) -> Result<SparseMatrix> {
        self.check_algebra(p.kind())?;
        self.check_degree(p.degree())?;
        let mut acc = SparseMatrix::zeros(self.dim(), self.dim());
        for (w, c) in p.terms() {
            acc = acc.axpy(self.eval(c), &self.word_matrix(w)?);
        }
        Ok(acc)
    }

    /// `[F, pi(p)]`. For the Podleś module the difference of the two
    /// summands is propagated through products so tail entries keep their
    /// relative precision.
    pub fn commutator(&self, p: &NCPolynomial) -> Result<SparseMatrix> {
        self.check_algebra(p.kind())?;
        self.check_degree(p.degree())?;
        if self.halves.is_none() {
            return Ok(self.commutator_f(&self.represent(p)?));
        }
        let n = self.dim() / 2;
        let mut d = SparseMatrix::zeros(n, n);
        for (w, c) in p.terms() {
            if w.is_empty() {
                continue;
            }
            d = d.axpy(self.eval(c), &self.split_word(w).diff);
        }
        let z = SparseMatrix::zeros(n, n);
        Ok(SparseMatrix::from_blocks(&[
            vec![z.clone(), d.scale(C64::new(-1.0, 0.0))],
            vec![d, z],
        ]))
    }

    /// `F x - x F` for an arbitrary square operator.
    pub fn commutator_f(&self, x: &SparseMatrix) -> SparseMatrix {
        match &self.f_diag {
            Some(fd) => SparseMatrix::from_triplets(
                x.nrows(),
                x.ncols(),
                x.triplets().map(|(i, j, v)| (i, j, v * (fd[i] - fd[j]))),
            ),
            None => self.f.mul(x).sub(&x.mul(&self.f)),
        }
    }

    /// Numeric value of the modular automorphism on a word.
    pub fn sigma_scalar(&self, w: &[Generator]) -> f64 {
        let pres = self.kind.algebra().presentation();
        pres.sigma_word_scalar(w)
            .eval(self.params.q, self.params.s)
            .re
    }

    /// `sigma(x) = K^-1 x K` on the window.
    pub fn sigma_matrix(&self, x: &SparseMatrix) -> SparseMatrix {
        let kinv: Vec<C64> = self.k.iter().map(|v| C64::new(1.0 / v, 0.0)).collect();
        let k: Vec<C64> = self.k.iter().map(|v| C64::new(*v, 0.0)).collect();
        x.scale_rows(&kinv).scale_cols(&k)
    }

    /// `F [F, pi(p)]`, the image of `q(p)`.
    pub fn q_image(&self, p: &NCPolynomial) -> Result<SparseMatrix> {
        Ok(self.f.mul(&self.commutator(p)?))
    }

    /// Homomorphic image of a free-product element: `iota -> pi`,
    /// `iotabar -> F pi F`, evaluated through the spanning form so that
    /// every `q` factor is a stable commutator.
    pub fn realize_free_product(&self, x: &FreeProductElement) -> Result<SparseMatrix> {
        self.check_algebra(x.kind())?;
        let kind = x.kind();
        let sf = SpanningForm::from_free(x, 2 * x.length().max(1) + 2)?;
        let mut acc = SparseMatrix::zeros(self.dim(), self.dim());
        for ((a0, qs), c) in sf.terms() {
            let mut term = self.word_matrix(a0)?;
            for w in qs {
                term = term.mul(&self.q_image(&NCPolynomial::word(kind, w, Scalar::one())?)?);
            }
            acc = acc.axpy(self.eval(c), &term);
        }
        Ok(acc)
    }

    /// Direct image of an alternating word expansion, without passing
    /// through the spanning form.
    pub fn realize_direct(&self, x: &FreeProductElement) -> Result<SparseMatrix> {
        self.check_algebra(x.kind())?;
        let mut acc = SparseMatrix::zeros(self.dim(), self.dim());
        for (w, c) in x.terms() {
            let mut term = SparseMatrix::identity(self.dim());
            for fac in w {
                let m = self.word_matrix(&fac.word)?;
                let m = match fac.inclusion {
                    crate::ncalg::Inclusion::Iota => m,
                    crate::ncalg::Inclusion::IotaBar => self.f.mul(&m).mul(&self.f),
                };
                term = term.mul(&m);
            }
            acc = acc.axpy(self.eval(c), &term);
        }
        Ok(acc)
    }

    /// Largest absolute entry among interior rows and columns.
    pub fn interior_max(&self, x: &SparseMatrix) -> f64 {
        x.max_abs_masked(&self.interior, &self.interior)
    }

    /// Largest column norm of `x` over interior columns.
    pub fn interior_column_norm(&self, x: &SparseMatrix) -> f64 {
        let mut col = vec![0.0; x.ncols()];
        for (_, j, v) in x.triplets() {
            col[j] += v.norm_sqr();
        }
        col.iter()
            .zip(&self.interior)
            .filter(|(_, m)| **m)
            .map(|(c, _)| c.sqrt())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualRow {
    pub name: String,
    pub residual: f64,
}

/// Residual of every defining relation and of star-compatibility on the
/// interior of the window.
pub fn relations_residual(m: &ModularModule) -> Result<Vec<ResidualRow>> {
    let kind = m.kind().algebra();
    let pres = kind.presentation();
    let mut rows = Vec::new();
    for (name, terms) in pres.relations() {
        let mut acc = SparseMatrix::zeros(m.dim(), m.dim());
        for (w, c) in &terms {
            acc = acc.axpy(m.eval(c), &m.word_matrix(w)?);
        }
        rows.push(ResidualRow {
            name,
            residual: m.interior_column_norm(&acc),
        });
    }
    for g in pres.generators() {
        let x = m.generator(*g)?;
        let xs = m.generator(g.star())?;
        rows.push(ResidualRow {
            name: format!("pi({})* = pi({})", g.name(), g.star().name()),
            residual: m.interior_max(&x.adjoint().sub(xs)),
        });
    }
    for g in pres.generators() {
        let p = NCPolynomial::generator(*g);
        let lhs = m.sigma_matrix(&m.represent(&p)?);
        let rhs = m.represent(&p.apply_sigma())?;
        rows.push(ResidualRow {
            name: format!("K^-1 pi({0}) K = pi(sigma({0}))", g.name()),
            residual: m.interior_max(&lhs.sub(&rhs)),
        });
    }
    Ok(rows)
}

pub fn max_residual(rows: &[ResidualRow]) -> f64 {
    rows.iter().map(|r| r.residual).fold(0.0, f64::max)
}
