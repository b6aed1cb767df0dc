//! The unital free product of an algebra with itself and the q-ideal calculus.
//!
//! Elements are combinations of alternating words whose factors are
//! nonconstant normal words tagged by the inclusion they came from.
//!
//! Embedding convention for the product rule: with both bare factors taken
//! through the left inclusion,
//!
//! ```text
//! q(ab) = q(a) iota(b) + iota(a) q(b) - q(a) q(b)
//! ```
//!
//! holds exactly (expand `q(x) = iota(x) - iotabar(x)`). The mirrored form
//! uses `iotabar` for both bare factors and `+ q(a) q(b)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::{format_word, NCPolynomial};
use super::presentation::{AlgebraKind, Word};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Default bound on the number of `q` factors in a spanning-form term.
pub const DEFAULT_Q_DEGREE_BOUND: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Inclusion {
    Iota,
    IotaBar,
}

impl Inclusion {
    pub fn flipped(self) -> Inclusion {
        match self {
            Inclusion::Iota => Inclusion::IotaBar,
            Inclusion::IotaBar => Inclusion::Iota,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub inclusion: Inclusion,
    pub word: Word,
}

pub type AltWord = Vec<Factor>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProductElement {
    kind: AlgebraKind,
    terms: BTreeMap<AltWord, Scalar>,
}

fn add_alt(t: &mut BTreeMap<AltWord, Scalar>, w: AltWord, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&w) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                t.remove(&w);
            }
        }
        None => {
            t.insert(w, c.clone());
        }
    }
}

impl FreeProductElement {
    pub fn zero(kind: AlgebraKind) -> Self {
        Self {
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(kind: AlgebraKind) -> Self {
        Self::scalar(kind, Scalar::one())
    }

    pub fn scalar(kind: AlgebraKind, c: Scalar) -> Self {
        let mut out = Self::zero(kind);
        add_alt(&mut out.terms, Vec::new(), &c);
        out
    }

    pub fn embed(p: &NCPolynomial, inclusion: Inclusion) -> Self {
        let mut out = Self::zero(p.kind());
        for (w, c) in p.terms() {
            let alt = if w.is_empty() {
                Vec::new()
            } else {
                vec![Factor {
                    inclusion,
                    word: w.clone(),
                }]
            };
            add_alt(&mut out.terms, alt, c);
        }
        out
    }

    pub fn iota(p: &NCPolynomial) -> Self {
        Self::embed(p, Inclusion::Iota)
    }

    pub fn iota_bar(p: &NCPolynomial) -> Self {
        Self::embed(p, Inclusion::IotaBar)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn terms(&self) -> &BTreeMap<AltWord, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.kind);
        for (w, v) in &self.terms {
            add_alt(&mut out.terms, w.clone(), &(v * c));
        }
        out
    }

    fn same_kind(&self, other: &Self) -> Result<()> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.kind.name(),
                right: other.kind.name(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_kind(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_alt(&mut out.terms, w.clone(), c);
        }
        Ok(out)
    }

    /// Product in the free product; adjacent factors from the same
    /// inclusion are multiplied in the algebra and constants collapse.
    pub fn free_multiply(&self, other: &Self) -> Result<Self> {
        self.same_kind(other)?;
        let mut out = Self::zero(self.kind);
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                mul_words(self.kind, u, v, &(cu * cv), &mut out.terms)?;
            }
        }
        Ok(out)
    }

    /// `sigma` extended factor-wise, i.e. `sigma(q(a)) = q(sigma(a))`.
    pub fn apply_sigma(&self) -> Self {
        let p = self.kind.presentation();
        let mut out = Self::zero(self.kind);
        for (w, c) in &self.terms {
            let s = w
                .iter()
                .fold(Scalar::one(), |acc, f| &acc * &p.sigma_word_scalar(&f.word));
            add_alt(&mut out.terms, w.clone(), &(c * &s));
        }
        out
    }

    /// Exchanges the two inclusions; an automorphism of the free product.
    pub fn flip_inclusions(&self) -> Self {
        let mut out = Self::zero(self.kind);
        for (w, c) in &self.terms {
            let fw = w
                .iter()
                .map(|f| Factor {
                    inclusion: f.inclusion.flipped(),
                    word: f.word.clone(),
                })
                .collect();
            add_alt(&mut out.terms, fw, c);
        }
        out
    }

    /// Number of factors in the longest alternating word.
    pub fn length(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

fn mul_words(
    kind: AlgebraKind,
    u: &[Factor],
    v: &[Factor],
    c: &Scalar,
    out: &mut BTreeMap<AltWord, Scalar>,
) -> Result<()> {
    let (Some(last), Some(first)) = (u.last(), v.first()) else {
        let mut w = u.to_vec();
        w.extend_from_slice(v);
        add_alt(out, w, c);
        return Ok(());
    };
    if last.inclusion != first.inclusion {
        let mut w = u.to_vec();
        w.extend_from_slice(v);
        add_alt(out, w, c);
        return Ok(());
    }
    let mut joined = last.word.clone();
    joined.extend_from_slice(&first.word);
    let prod = NCPolynomial::word(kind, &joined, Scalar::one())?;
    let head = &u[..u.len() - 1];
    let tail = &v[1..];
    for (w, cw) in prod.terms() {
        let coeff = c * cw;
        if w.is_empty() {
            mul_words(kind, head, tail, &coeff, out)?;
        } else {
            let mut nw = head.to_vec();
            nw.push(Factor {
                inclusion: last.inclusion,
                word: w.clone(),
            });
            nw.extend_from_slice(tail);
            add_alt(out, nw, &coeff);
        }
    }
    Ok(())
}

/// `q(a) = iota(a) - iotabar(a)`; constants are annihilated.
pub fn q_map(p: &NCPolynomial) -> FreeProductElement {
    let np = p.without_constant();
    FreeProductElement::iota(&np)
        .try_add(&FreeProductElement::iota_bar(&np).scale(&Scalar::int(-1)))
        .expect("same algebra")
}

/// Product `q(a_1) ... q(a_m)`.
pub fn q_product(args: &[NCPolynomial]) -> Result<FreeProductElement> {
    let kind = args
        .first()
        .map(NCPolynomial::kind)
        .ok_or_else(|| Error::InvalidParameter("empty q-product".into()))?;
    let mut acc = FreeProductElement::one(kind);
    for a in args {
        acc = acc.free_multiply(&q_map(a))?;
    }
    Ok(acc)
}

/// Residual `q(ab) - q(a) iota(b) - iota(a) q(b) + q(a) q(b)`; must vanish.
pub fn verify_q_identity(a: &NCPolynomial, b: &NCPolynomial) -> Result<FreeProductElement> {
    let ab = a.multiply(b)?;
    let qa = q_map(a);
    let qb = q_map(b);
    let ia = FreeProductElement::iota(a);
    let ib = FreeProductElement::iota(b);
    let residual = q_map(&ab)
        .try_add(&qa.free_multiply(&ib)?.scale(&Scalar::int(-1)))?
        .try_add(&ia.free_multiply(&qb)?.scale(&Scalar::int(-1)))?
        .try_add(&qa.free_multiply(&qb)?)?;
    if residual.is_zero() {
        Ok(residual)
    } else {
        Err(Error::QIdentityViolated(residual.to_string()))
    }
}

/// Key `(a0, [a1, ..., am])` standing for `iota(a0) q(a1) ... q(am)`; an
/// empty `a0` is the unit and every `ai` is a nonconstant normal word.
pub type SpanningKey = (Word, Vec<Word>);

/// Elements written in the basis `a0 q(a1) ... q(am)` of the free product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningForm {
    kind: AlgebraKind,
    terms: BTreeMap<SpanningKey, Scalar>,
    bound: usize,
}

fn add_span(t: &mut BTreeMap<SpanningKey, Scalar>, k: SpanningKey, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&k) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                t.remove(&k);
            }
        }
        None => {
            t.insert(k, c.clone());
        }
    }
}

impl SpanningForm {
    pub fn terms(&self) -> &BTreeMap<SpanningKey, Scalar> {
        &self.terms
    }

    pub fn q_degree(&self) -> usize {
        self.terms.keys().map(|(_, qs)| qs.len()).max().unwrap_or(0)
    }

    fn unit(kind: AlgebraKind, bound: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((Vec::new(), Vec::new()), Scalar::one());
        Self { kind, terms, bound }
    }

    fn push(
        &self,
        out: &mut BTreeMap<SpanningKey, Scalar>,
        k: SpanningKey,
        c: &Scalar,
    ) -> Result<()> {
        if k.1.len() > self.bound {
            return Err(Error::SpanningForm {
                degree: k.1.len(),
                bound: self.bound,
            });
        }
        add_span(out, k, c);
        Ok(())
    }

    /// Right multiplication of a single term by `q(p)`.
    fn term_times_q(
        &self,
        key: &SpanningKey,
        c: &Scalar,
        p: &NCPolynomial,
        out: &mut BTreeMap<SpanningKey, Scalar>,
    ) -> Result<()> {
        for (w, cw) in p.terms() {
            if w.is_empty() {
                continue;
            }
            let mut qs = key.1.clone();
            qs.push(w.clone());
            self.push(out, (key.0.clone(), qs), &(c * cw))?;
        }
        Ok(())
    }

    /// Right multiplication of a single term by `iota(p)`, moving the bare
    /// factor left through `q(x) iota(p) = q(xp) - iota(x) q(p) + q(x) q(p)`.
    fn term_times_iota(
        &self,
        key: &SpanningKey,
        c: &Scalar,
        p: &NCPolynomial,
        out: &mut BTreeMap<SpanningKey, Scalar>,
    ) -> Result<()> {
        let kind = self.kind;
        let (a0, qs) = key;
        match qs.split_last() {
            None => {
                let a0p = NCPolynomial::word(kind, a0, Scalar::one())?.multiply(p)?;
                for (w, cw) in a0p.terms() {
                    self.push(out, (w.clone(), Vec::new()), &(c * cw))?;
                }
            }
            Some((last, init)) => {
                let head: SpanningKey = (a0.clone(), init.to_vec());
                let last_poly = NCPolynomial::word(kind, last, Scalar::one())?;
                // head * q(last p)
                self.term_times_q(&head, c, &last_poly.multiply(p)?, out)?;
                // -(head * iota(last)) * q(p)
                let mut moved = BTreeMap::new();
                self.term_times_iota(&head, &-c, &last_poly, &mut moved)?;
                for (k, v) in &moved {
                    self.term_times_q(k, v, p, out)?;
                }
                // head * q(last) * q(p)
                self.term_times_q(key, c, p, out)?;
            }
        }
        Ok(())
    }

    fn times_factor(&self, f: &Factor) -> Result<Self> {
        let p = NCPolynomial::word(self.kind, &f.word, Scalar::one())?;
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            self.term_times_iota(k, c, &p, &mut out)?;
            if f.inclusion == Inclusion::IotaBar {
                // iotabar(p) = iota(p) - q(p)
                self.term_times_q(k, &-c, &p, &mut out)?;
            }
        }
        Ok(Self {
            kind: self.kind,
            terms: out,
            bound: self.bound,
        })
    }

    pub fn from_free(x: &FreeProductElement, bound: usize) -> Result<Self> {
        let mut acc = BTreeMap::new();
        for (w, c) in x.terms() {
            let mut sf = Self::unit(x.kind(), bound);
            for f in w {
                sf = sf.times_factor(f)?;
            }
            for (k, v) in sf.terms {
                add_span(&mut acc, k, &(&v * c));
            }
        }
        Ok(Self {
            kind: x.kind(),
            terms: acc,
            bound,
        })
    }

    pub fn to_free(&self) -> Result<FreeProductElement> {
        let kind = self.kind;
        let mut out = FreeProductElement::zero(kind);
        for ((a0, qs), c) in &self.terms {
            let mut term = FreeProductElement::iota(&NCPolynomial::word(kind, a0, c.clone())?);
            for w in qs {
                term = term.free_multiply(&q_map(&NCPolynomial::word(kind, w, Scalar::one())?))?;
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }
}

/// The twisted extension of `sigma` to the free product, applied termwise on
/// the spanning form:
/// `a0 q(a1)...q(am) -> (-1)^m (sigma(a0) - q(sigma(a0))) q(sigma(a1))...q(sigma(am))`.
pub fn apply_sigma_tilde(
    x: &FreeProductElement,
    q_degree_bound: usize,
) -> Result<FreeProductElement> {
    let kind = x.kind();
    let pres = kind.presentation();
    let sf = SpanningForm::from_free(x, q_degree_bound)?;
    let mut out = FreeProductElement::zero(kind);
    for ((a0, qs), c) in sf.terms() {
        let sign = if qs.len() % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::int(-1)
        };
        let a0p = NCPolynomial::word(kind, a0, Scalar::one())?.apply_sigma();
        let mut term =
            FreeProductElement::iota(&a0p).try_add(&q_map(&a0p).scale(&Scalar::int(-1)))?;
        for w in qs {
            let s = pres.sigma_word_scalar(w);
            term = term.free_multiply(&q_map(&NCPolynomial::word(kind, w, s)?))?;
        }
        out = out.try_add(&term.scale(&(c * &sign)))?;
    }
    Ok(out)
}

impl fmt::Display for FreeProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&AltWord> = self.terms.keys().collect();
        keys.sort_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)));
        let parts: Vec<String> = keys
            .iter()
            .map(|w| {
                let c = &self.terms[*w];
                let ctext = if c.terms().count() > 1 {
                    format!("({c})")
                } else {
                    c.to_string()
                };
                let body = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter()
                        .map(|fac| {
                            let tag = match fac.inclusion {
                                Inclusion::Iota => "iota",
                                Inclusion::IotaBar => "iotabar",
                            };
                            format!("{tag}({})", format_word(&fac.word))
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                format!("{ctext} * {body}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &FreeProductElement {
    type Output = FreeProductElement;
    fn add(self, rhs: &FreeProductElement) -> FreeProductElement {
        self.try_add(rhs).expect("elements from different algebras")
    }
}

impl Sub for &FreeProductElement {
    type Output = FreeProductElement;
    fn sub(self, rhs: &FreeProductElement) -> FreeProductElement {
        self + &(-rhs)
    }
}

impl Neg for &FreeProductElement {
    type Output = FreeProductElement;
    fn neg(self) -> FreeProductElement {
        self.scale(&Scalar::int(-1))
    }
}

impl Mul for &FreeProductElement {
    type Output = FreeProductElement;
    fn mul(self, rhs: &FreeProductElement) -> FreeProductElement {
        self.free_multiply(rhs)
            .expect("free product multiplication failed")
    }
}
