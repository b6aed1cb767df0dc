//! The two fixed presentations: the Podleś sphere and SU_q(2).
//!
//! Every defining relation is oriented as a length-two rewrite rule
//! `xy -> rhs`. Reduction terminates for the order that compares total
//! degree, then (for SU_q(2)) the number of `a`/`a*` letters, then words
//! lexicographically with `A < B < B*` and `a < a* < b < b*`. All rules
//! strictly decrease this order, and normal words form the bases
//! `A^k B^m`, `A^k (B*)^m` and `a^i b^j (b*)^k`, `(a*)^i b^j (b*)^k`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    A,
    B,
    BStar,
    Alpha,
    AlphaStar,
    Beta,
    BetaStar,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::A => "A",
            Generator::B => "B",
            Generator::BStar => "B*",
            Generator::Alpha => "a",
            Generator::AlphaStar => "a*",
            Generator::Beta => "b",
            Generator::BetaStar => "b*",
        }
    }

    pub fn star(self) -> Generator {
        match self {
            Generator::A => Generator::A,
            Generator::B => Generator::BStar,
            Generator::BStar => Generator::B,
            Generator::Alpha => Generator::AlphaStar,
            Generator::AlphaStar => Generator::Alpha,
            Generator::Beta => Generator::BetaStar,
            Generator::BetaStar => Generator::Beta,
        }
    }

    pub fn algebra(self) -> AlgebraKind {
        match self {
            Generator::A | Generator::B | Generator::BStar => AlgebraKind::Podles,
            _ => AlgebraKind::SUq2,
        }
    }

    pub fn parse(name: &str) -> Option<Generator> {
        Some(match name {
            "A" => Generator::A,
            "B" => Generator::B,
            "B*" | "Bstar" => Generator::BStar,
            "a" => Generator::Alpha,
            "a*" | "astar" => Generator::AlphaStar,
            "b" => Generator::Beta,
            "b*" | "bstar" => Generator::BetaStar,
            _ => return None,
        })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Word = Vec<Generator>;

/// Raw linear combination of (not necessarily reduced) words.
pub type Terms = BTreeMap<Word, Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraKind {
    Podles,
    SUq2,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Podles => "podles",
            AlgebraKind::SUq2 => "suq2",
        }
    }

    pub fn presentation(self) -> &'static Presentation {
        match self {
            AlgebraKind::Podles => Presentation::podles(),
            AlgebraKind::SUq2 => Presentation::suq2(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: [Generator; 2],
    pub rhs: Terms,
}

/// Which redex a reduction step rewrites first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// A critical-pair witness: an overlap word reduced along both rules.
#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub word: Word,
    pub via_left: Terms,
    pub via_right: Terms,
}

impl CriticalPair {
    pub fn joins(&self) -> bool {
        self.via_left == self.via_right
    }
}

#[derive(Debug)]
pub struct Presentation {
    kind: AlgebraKind,
    generators: Vec<Generator>,
    rules: Vec<Rule>,
    step_bound: usize,
}

pub const DEFAULT_STEP_BOUND: usize = 1_000_000;

fn term(word: &[Generator], c: Scalar) -> (Word, Scalar) {
    (word.to_vec(), c)
}

fn terms<const N: usize>(items: [(Word, Scalar); N]) -> Terms {
    let mut out = Terms::new();
    for (w, c) in items {
        if !c.is_zero() {
            out.insert(w, c);
        }
    }
    out
}

impl Presentation {
    pub fn podles() -> &'static Presentation {
        static CELL: OnceLock<Presentation> = OnceLock::new();
        CELL.get_or_init(|| {
            use Generator::{BStar, A, B};
            let s2 = Scalar::s_pow(2);
            let one_minus_s2 = &Scalar::one() - &s2;
            let rules = vec![
                Rule {
                    lhs: [B, A],
                    rhs: terms([term(&[A, B], Scalar::q_pow(2))]),
                },
                Rule {
                    lhs: [BStar, A],
                    rhs: terms([term(&[A, BStar], Scalar::q_pow(-2))]),
                },
                // B*B = -(A - 1)(A + s^2)
                Rule {
                    lhs: [BStar, B],
                    rhs: terms([
                        term(&[], s2.clone()),
                        term(&[A], one_minus_s2.clone()),
                        term(&[A, A], Scalar::int(-1)),
                    ]),
                },
                // BB* = -(q^2 A - 1)(q^2 A + s^2)
                Rule {
                    lhs: [B, BStar],
                    rhs: terms([
                        term(&[], s2.clone()),
                        term(&[A], &one_minus_s2 * &Scalar::q_pow(2)),
                        term(&[A, A], -Scalar::q_pow(4)),
                    ]),
                },
            ];
            Presentation {
                kind: AlgebraKind::Podles,
                generators: vec![A, B, BStar],
                rules,
                step_bound: DEFAULT_STEP_BOUND,
            }
        })
    }

    pub fn suq2() -> &'static Presentation {
        static CELL: OnceLock<Presentation> = OnceLock::new();
        CELL.get_or_init(|| {
            use Generator::{Alpha as a, AlphaStar as ast, Beta as b, BetaStar as bst};
            let rules = vec![
                Rule {
                    lhs: [b, a],
                    rhs: terms([term(&[a, b], Scalar::q_pow(1))]),
                },
                Rule {
                    lhs: [bst, a],
                    rhs: terms([term(&[a, bst], Scalar::q_pow(1))]),
                },
                Rule {
                    lhs: [b, ast],
                    rhs: terms([term(&[ast, b], Scalar::q_pow(-1))]),
                },
                Rule {
                    lhs: [bst, ast],
                    rhs: terms([term(&[ast, bst], Scalar::q_pow(-1))]),
                },
                Rule {
                    lhs: [bst, b],
                    rhs: terms([term(&[b, bst], Scalar::one())]),
                },
                Rule {
                    lhs: [a, ast],
                    rhs: terms([term(&[], Scalar::one()), term(&[b, bst], Scalar::int(-1))]),
                },
                Rule {
                    lhs: [ast, a],
                    rhs: terms([term(&[], Scalar::one()), term(&[b, bst], -Scalar::q_pow(2))]),
                },
            ];
            Presentation {
                kind: AlgebraKind::SUq2,
                generators: vec![a, ast, b, bst],
                rules,
                step_bound: DEFAULT_STEP_BOUND,
            }
        })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Modular automorphism on a generator: `sigma(g) = scalar * g`.
    ///
    /// The scalars are those of `T -> K^{-1} T K` for the diagonal modular
    /// operators of the truncated representations, so `sigma(B) = q^-2 B` on
    /// the Podleś sphere and `sigma(a) = q^2 a` on SU_q(2), where `a` raises
    /// the `k` index.
    pub fn sigma_scalar(&self, g: Generator) -> Scalar {
        match g {
            Generator::A => Scalar::one(),
            Generator::B => Scalar::q_pow(-2),
            Generator::BStar => Scalar::q_pow(2),
            Generator::Alpha => Scalar::q_pow(2),
            Generator::AlphaStar => Scalar::q_pow(-2),
            Generator::Beta | Generator::BetaStar => Scalar::one(),
        }
    }

    pub fn sigma_word_scalar(&self, w: &[Generator]) -> Scalar {
        w.iter()
            .fold(Scalar::one(), |acc, g| &acc * &self.sigma_scalar(*g))
    }

    fn rule_for(&self, x: Generator, y: Generator) -> Option<&Rule> {
        self.rules.iter().find(|r| r.lhs == [x, y])
    }

    fn find_redex(&self, w: &[Generator], strategy: Strategy) -> Option<(usize, &Rule)> {
        let positions: Box<dyn Iterator<Item = usize>> = match strategy {
            Strategy::Leftmost => Box::new(0..w.len().saturating_sub(1)),
            Strategy::Rightmost => Box::new((0..w.len().saturating_sub(1)).rev()),
        };
        for i in positions {
            if let Some(rule) = self.rule_for(w[i], w[i + 1]) {
                return Some((i, rule));
            }
        }
        None
    }

    pub fn is_normal(&self, w: &[Generator]) -> bool {
        self.find_redex(w, Strategy::Leftmost).is_none()
    }

    fn check_letters(&self, w: &[Generator]) -> Result<()> {
        match w.iter().find(|g| g.algebra() != self.kind) {
            Some(g) => Err(Error::AlgebraMismatch {
                left: self.kind.name(),
                right: g.algebra().name(),
            }),
            None => Ok(()),
        }
    }

    fn rewrite_at(w: &[Generator], pos: usize, rule: &Rule, c: &Scalar, out: &mut Terms) {
        for (rw, rc) in &rule.rhs {
            let mut nw = Vec::with_capacity(w.len() + rw.len());
            nw.extend_from_slice(&w[..pos]);
            nw.extend_from_slice(rw);
            nw.extend_from_slice(&w[pos + 2..]);
            add_into(out, nw, &(c * rc));
        }
    }

    /// Reduces a linear combination of words to normal form.
    pub fn normal_form(&self, input: &Terms) -> Result<Terms> {
        self.reduce(input, Strategy::Leftmost)
    }

    pub fn reduce(&self, input: &Terms, strategy: Strategy) -> Result<Terms> {
        let mut pending = Terms::new();
        for (w, c) in input {
            self.check_letters(w)?;
            add_into(&mut pending, w.clone(), c);
        }
        let mut done = Terms::new();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_last() {
            match self.find_redex(&w, strategy) {
                None => add_into(&mut done, w, &c),
                Some((pos, rule)) => {
                    steps += 1;
                    if steps > self.step_bound {
                        return Err(Error::Presentation(format!(
                            "{} reduction exceeded {} steps",
                            self.kind.name(),
                            self.step_bound
                        )));
                    }
                    Self::rewrite_at(&w, pos, rule, &c, &mut pending);
                }
            }
        }
        Ok(done)
    }

    /// All overlaps `xyz` where both `xy` and `yz` are rule heads, reduced
    /// along each rule first and then to normal form.
    pub fn critical_pairs(&self) -> Result<Vec<CriticalPair>> {
        let mut out = Vec::new();
        for r1 in &self.rules {
            for r2 in &self.rules {
                if r1.lhs[1] != r2.lhs[0] {
                    continue;
                }
                let word = vec![r1.lhs[0], r1.lhs[1], r2.lhs[1]];
                let one = Scalar::one();
                let mut left = Terms::new();
                Self::rewrite_at(&word, 0, r1, &one, &mut left);
                let mut right = Terms::new();
                Self::rewrite_at(&word, 1, r2, &one, &mut right);
                out.push(CriticalPair {
                    word,
                    via_left: self.normal_form(&left)?,
                    via_right: self.normal_form(&right)?,
                });
            }
        }
        Ok(out)
    }

    /// Every word of length `1..=max_len` over the generators.
    pub fn all_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in &self.generators {
                    let mut nw = w.clone();
                    nw.push(*g);
                    next.push(nw);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Checks that leftmost and rightmost reduction agree on every word up
    /// to `max_len`; returns the offending words.
    pub fn confluence_failures(&self, max_len: usize) -> Result<Vec<Word>> {
        let mut bad = Vec::new();
        for w in self.all_words(max_len) {
            let t: Terms = [(w.clone(), Scalar::one())].into_iter().collect();
            if self.reduce(&t, Strategy::Leftmost)? != self.reduce(&t, Strategy::Rightmost)? {
                bad.push(w);
            }
        }
        Ok(bad)
    }

    /// Words `rule.lhs - rule.rhs`, i.e. the defining relations as
    /// unreduced expressions that vanish in the algebra.
    pub fn relations(&self) -> Vec<(String, Terms)> {
        self.rules
            .iter()
            .map(|r| {
                let mut t = Terms::new();
                add_into(&mut t, r.lhs.to_vec(), &Scalar::one());
                for (w, c) in &r.rhs {
                    add_into(&mut t, w.clone(), &(-c));
                }
                let name = format!(
                    "{}{} = {}",
                    r.lhs[0],
                    r.lhs[1],
                    super::poly::format_terms(&r.rhs)
                );
                (name, t)
            })
            .collect()
    }
}

pub(crate) fn add_into(t: &mut Terms, w: Word, c: &Scalar) {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules_strictly_decrease_the_order() {
        fn key(p: &Presentation, w: &[Generator]) -> (usize, usize, Word) {
            let heavy = match p.kind() {
                AlgebraKind::SUq2 => w
                    .iter()
                    .filter(|g| matches!(g, Generator::Alpha | Generator::AlphaStar))
                    .count(),
                AlgebraKind::Podles => 0,
            };
            (w.len(), heavy, w.to_vec())
        }
        for p in [Presentation::podles(), Presentation::suq2()] {
            for r in p.rules() {
                for w in r.rhs.keys() {
                    assert!(key(p, w) < key(p, &r.lhs), "{:?} -> {:?}", r.lhs, w);
                }
            }
        }
    }

    #[test]
    fn critical_pairs_join() {
        for p in [Presentation::podles(), Presentation::suq2()] {
            let pairs = p.critical_pairs().unwrap();
            assert!(!pairs.is_empty());
            for cp in pairs {
                assert!(cp.joins(), "{:?} does not join", cp.word);
            }
        }
    }

    #[test]
    fn reduction_order_independent_up_to_length_four() {
        for p in [Presentation::podles(), Presentation::suq2()] {
            assert!(p.confluence_failures(4).unwrap().is_empty());
        }
    }

    #[test]
    fn sigma_respects_every_relation() {
        for p in [Presentation::podles(), Presentation::suq2()] {
            for r in p.rules() {
                let lhs_scalar = p.sigma_word_scalar(&r.lhs);
                for w in r.rhs.keys() {
                    assert_eq!(p.sigma_word_scalar(w), lhs_scalar, "{:?}", r.lhs);
                }
            }
        }
    }

    #[test]
    fn mixed_letters_are_rejected() {
        let t: Terms = [(vec![Generator::A, Generator::Alpha], Scalar::one())]
            .into_iter()
            .collect();
        assert!(matches!(
            Presentation::podles().normal_form(&t),
            Err(Error::AlgebraMismatch { .. })
        ));
    }
}
