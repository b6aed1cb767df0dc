use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::presentation::{add_into, AlgebraKind, Generator, Presentation, Terms, Word};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A noncommutative polynomial, always stored in normal form for its
/// presentation. Equality of term maps is equality in the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCPolynomial {
    kind: AlgebraKind,
    terms: BTreeMap<Word, Scalar>,
}

impl NCPolynomial {
    pub fn zero(kind: AlgebraKind) -> Self {
        Self {
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(kind: AlgebraKind) -> Self {
        Self::constant(kind, Scalar::one())
    }

    pub fn constant(kind: AlgebraKind, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { kind, terms }
    }

    pub fn generator(g: Generator) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![g], Scalar::one());
        Self {
            kind: g.algebra(),
            terms,
        }
    }

    /// Builds `c * w` for an arbitrary word and reduces it.
    pub fn word(kind: AlgebraKind, w: &[Generator], c: Scalar) -> Result<Self> {
        let t: Terms = [(w.to_vec(), c)].into_iter().collect();
        Self::from_terms(kind, &t)
    }

    /// Reduces an arbitrary linear combination of words to normal form.
    pub fn from_terms(kind: AlgebraKind, terms: &Terms) -> Result<Self> {
        let terms = kind.presentation().normal_form(terms)?;
        Ok(Self { kind, terms })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn presentation(&self) -> &'static Presentation {
        self.kind.presentation()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Vec::new()).cloned().unwrap_or_default()
    }

    /// The polynomial with its constant term removed.
    pub fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&Vec::new());
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
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_into(&mut terms, w.clone(), c);
        }
        Ok(Self {
            kind: self.kind,
            terms,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut terms = BTreeMap::new();
        for (w, v) in &self.terms {
            let x = v * c;
            if !x.is_zero() {
                terms.insert(w.clone(), x);
            }
        }
        Self {
            kind: self.kind,
            terms,
        }
    }

    /// Normal form of the product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_kind(other)?;
        let mut raw = Terms::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                add_into(&mut raw, w, &(ca * cb));
            }
        }
        Self::from_terms(self.kind, &raw)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.kind);
        for _ in 0..n {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// Antilinear, antimultiplicative involution.
    pub fn involution(&self) -> Self {
        let mut raw = Terms::new();
        for (w, c) in &self.terms {
            let starred: Word = w.iter().rev().map(|g| g.star()).collect();
            add_into(&mut raw, starred, &c.conj());
        }
        Self::from_terms(self.kind, &raw)
            .expect("starred normal words stay within the presentation")
    }

    /// Modular automorphism: each normal word is scaled by the product of
    /// its generator scalars.
    pub fn apply_sigma(&self) -> Self {
        let p = self.presentation();
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let x = c * &p.sigma_word_scalar(w);
            if !x.is_zero() {
                terms.insert(w.clone(), x);
            }
        }
        Self {
            kind: self.kind,
            terms,
        }
    }

    /// `sigma^{-1}`.
    pub fn apply_sigma_inverse(&self) -> Self {
        let p = self.presentation();
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            // Generator scalars are monomials q^k, so their inverses are q^-k.
            let s = p.sigma_word_scalar(w);
            let inv = invert_monomial(&s);
            terms.insert(w.clone(), c * &inv);
        }
        Self {
            kind: self.kind,
            terms,
        }
    }

    /// Parses `"A B* + 2 q^2 A"`-style input: terms separated by `+`/`-`,
    /// each an optional integer coefficient followed by generator names
    /// (with optional `^k` powers). Only integer coefficients are accepted.
    pub fn parse(kind: AlgebraKind, text: &str) -> Result<Self> {
        let mut raw = Terms::new();
        let normalized = text.replace('-', "+-");
        for chunk in normalized.split('+') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(rest) => (-1i128, rest.trim()),
                None => (1, chunk),
            };
            let mut coeff = Scalar::int(sign);
            let mut word = Vec::new();
            for tok in body.split_whitespace() {
                if let Ok(n) = tok.parse::<i128>() {
                    coeff = &coeff * &Scalar::int(n);
                    continue;
                }
                let (name, power) = match tok.split_once('^') {
                    Some((n, p)) => (
                        n,
                        p.parse::<usize>().map_err(|_| {
                            Error::InvalidParameter(format!("bad power in {tok:?}"))
                        })?,
                    ),
                    None => (tok, 1),
                };
                if name == "q" {
                    coeff = &coeff * &Scalar::q_pow(power as i32);
                    continue;
                }
                if name == "s" {
                    coeff = &coeff * &Scalar::s_pow(power as u32);
                    continue;
                }
                if name == "1" {
                    continue;
                }
                let g = Generator::parse(name).ok_or_else(|| {
                    Error::InvalidParameter(format!("unknown generator {name:?}"))
                })?;
                word.extend(std::iter::repeat_n(g, power));
            }
            add_into(&mut raw, word, &coeff);
        }
        Self::from_terms(kind, &raw)
    }
}

pub(crate) fn invert_monomial(s: &Scalar) -> Scalar {
    let mut out = Scalar::zero();
    for (qe, se, c) in s.terms() {
        assert!(
            se == 0 && c.im == num_rational::Ratio::from_integer(0),
            "not a q-monomial"
        );
        let inv = num_complex::Complex::new(num_rational::Ratio::from_integer(1) / c.re, c.im);
        out = &out + &Scalar::monomial(inv, -qe, 0);
    }
    out
}

/// Run-length text of a word, e.g. `A^2 B*`; the empty word is `1`.
pub fn format_word(w: &[Generator]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let run = j - i;
        if run == 1 {
            parts.push(w[i].name().to_string());
        } else {
            parts.push(format!("{}^{}", w[i].name(), run));
        }
        i = j;
    }
    parts.join(" ")
}

/// Canonical text: `coeff * word` terms in (degree, word) order joined by
/// ` + `; multi-term coefficients are parenthesized.
pub fn format_terms(terms: &BTreeMap<Word, Scalar>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut keys: Vec<&Word> = terms.keys().collect();
    keys.sort_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)));
    keys.iter()
        .map(|w| {
            let c = &terms[*w];
            let ctext = c.to_string();
            let ctext = if c.terms().count() > 1 {
                format!("({ctext})")
            } else {
                ctext
            };
            format!("{} * {}", ctext, format_word(w))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.terms))
    }
}

impl Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.try_add(rhs)
            .expect("polynomials from different algebras")
    }
}

impl Add for NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: NCPolynomial) -> NCPolynomial {
        &self + &rhs
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.scale(&Scalar::int(-1))
    }
}

impl Neg for NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        -&self
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        self + &(-rhs)
    }
}

impl Sub for NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: NCPolynomial) -> NCPolynomial {
        &self - &rhs
    }
}

impl Mul for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.multiply(rhs).expect("polynomial product failed")
    }
}

impl Mul for NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: NCPolynomial) -> NCPolynomial {
        &self * &rhs
    }
}

/// Normal-form monomials `c * w` with `deg(w) <= max_degree`, including 1.
pub fn normal_monomials(kind: AlgebraKind, max_degree: usize) -> Vec<NCPolynomial> {
    let p = kind.presentation();
    let mut out = vec![NCPolynomial::one(kind)];
    for w in p.all_words(max_degree) {
        if p.is_normal(&w) {
            out.push(NCPolynomial::word(kind, &w, Scalar::one()).expect("normal word"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn g(x: Generator) -> NCPolynomial {
        NCPolynomial::generator(x)
    }

    #[test]
    fn podles_commutation_reorders() {
        let ba = &g(B) * &g(A);
        let ab = &g(A) * &g(B);
        assert_eq!(ba, ab.scale(&Scalar::q_pow(2)));
        assert_eq!(ab.terms().len(), 1);
    }

    #[test]
    fn podles_bstar_b_expands() {
        let lhs = &g(BStar) * &g(B);
        let s2 = Scalar::s_pow(2);
        let expected = NCPolynomial::constant(AlgebraKind::Podles, s2.clone())
            + g(A).scale(&(&Scalar::one() - &s2))
            - &g(A) * &g(A);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn trivial_products() {
        let one = NCPolynomial::one(AlgebraKind::Podles);
        assert_eq!(&g(A) * &one, g(A));
        let lhs = &(&g(A) + &one) * &(&g(A) - &one);
        assert_eq!(lhs, &(&g(A) * &g(A)) - &one);
    }

    #[test]
    fn involution_examples() {
        assert_eq!(g(A).involution(), g(A));
        let ab_star = (&g(A) * &g(B)).involution();
        assert_eq!(ab_star, (&g(A) * &g(BStar)).scale(&Scalar::q_pow(-2)));
        let i1 = NCPolynomial::constant(AlgebraKind::Podles, Scalar::i());
        assert_eq!(
            i1.involution(),
            NCPolynomial::constant(AlgebraKind::Podles, -Scalar::i())
        );
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(g(A).apply_sigma(), g(A));
        assert_eq!(g(BStar).apply_sigma(), g(BStar).scale(&Scalar::q_pow(2)));
        let one = NCPolynomial::one(AlgebraKind::SUq2);
        assert_eq!(one.apply_sigma(), one);
        let x = &g(Alpha) * &g(BetaStar);
        assert_eq!(x.apply_sigma().apply_sigma_inverse(), x);
    }

    #[test]
    fn sigma_applied_to_relations_reduces_to_zero() {
        for p in [Presentation::podles(), Presentation::suq2()] {
            for (name, rel) in p.relations() {
                let mut scaled = Terms::new();
                for (w, c) in &rel {
                    add_into(&mut scaled, w.clone(), &(c * &p.sigma_word_scalar(w)));
                }
                let nf = NCPolynomial::from_terms(p.kind(), &scaled).unwrap();
                assert!(nf.is_zero(), "{name}: {nf}");
            }
        }
    }

    #[test]
    fn suq2_unit_relations() {
        let one = NCPolynomial::one(AlgebraKind::SUq2);
        let lhs = &(&g(Alpha) * &g(AlphaStar)) + &(&g(Beta) * &g(BetaStar));
        assert_eq!(lhs, one);
        let lhs =
            &(&g(AlphaStar) * &g(Alpha)) + &(&g(Beta) * &g(BetaStar)).scale(&Scalar::q_pow(2));
        assert_eq!(lhs, one);
    }

    #[test]
    fn mismatched_algebras_error() {
        assert!(matches!(
            g(A).multiply(&g(Alpha)),
            Err(Error::AlgebraMismatch { .. })
        ));
    }

    #[test]
    fn canonical_text() {
        let p = &(&g(BStar) * &g(B)) + &g(B);
        assert_eq!(p.to_string(), "s^2 * 1 + (1 - s^2) * A + 1 * B + -1 * A^2");
        let parsed = NCPolynomial::parse(AlgebraKind::Podles, "B* B + B").unwrap();
        assert_eq!(parsed, p);
        assert_eq!(
            NCPolynomial::parse(AlgebraKind::Podles, "2 q^2 A B - A").unwrap(),
            (&g(A) * &g(B)).scale(&(&Scalar::int(2) * &Scalar::q_pow(2))) - g(A)
        );
    }

    #[test]
    fn monomial_bases() {
        assert_eq!(normal_monomials(AlgebraKind::Podles, 2).len(), 9);
        assert_eq!(normal_monomials(AlgebraKind::SUq2, 2).len(), 14);
    }
}
