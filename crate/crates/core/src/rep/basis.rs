use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Arrow {
    Up,
    Down,
}

/// Label of an orthonormal basis vector. Half-integers are stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisIndex {
    PodlesPM {
        k: usize,
        plus: bool,
    },
    SUq2Basic {
        k: usize,
        l: i64,
    },
    Dlssv {
        two_j: i64,
        two_mu: i64,
        two_n: i64,
        arrow: Arrow,
    },
}

impl BasisIndex {
    /// The grading level used for truncation: `k`, or `2j` for DLSSV.
    pub fn level(&self) -> usize {
        match *self {
            BasisIndex::PodlesPM { k, .. } | BasisIndex::SUq2Basic { k, .. } => k,
            BasisIndex::Dlssv { two_j, .. } => two_j as usize,
        }
    }

    /// Whether the label satisfies the range constraints of its family.
    pub fn is_valid(&self) -> bool {
        match *self {
            BasisIndex::PodlesPM { .. } | BasisIndex::SUq2Basic { .. } => true,
            BasisIndex::Dlssv {
                two_j,
                two_mu,
                two_n,
                arrow,
            } => {
                if two_j < 0 || two_mu.abs() > two_j || (two_j - two_mu) % 2 != 0 {
                    return false;
                }
                let two_bound = match arrow {
                    Arrow::Up => two_j + 1,
                    Arrow::Down => two_j - 1,
                };
                two_bound >= 0 && two_n.abs() <= two_bound && (two_bound - two_n) % 2 == 0
            }
        }
    }
}

fn half(x: i64) -> String {
    if x % 2 == 0 {
        format!("{}", x / 2)
    } else {
        format!("{}/2", x)
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisIndex::PodlesPM { k, plus } => {
                write!(f, "e({k},{})", if plus { "+" } else { "-" })
            }
            BasisIndex::SUq2Basic { k, l } => write!(f, "e({k},{l})"),
            BasisIndex::Dlssv {
                two_j,
                two_mu,
                two_n,
                arrow,
            } => write!(
                f,
                "|{},{},{}>{}",
                half(two_j),
                half(two_mu),
                half(two_n),
                if arrow == Arrow::Up { "up" } else { "down" }
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TruncationWindow {
    /// `k < n` in both summands.
    Podles { n: usize, margin: usize },
    /// `k < n`, `|l| <= l`.
    SUq2Basic { n: usize, l: usize, margin: usize },
    /// `2j <= two_jmax`; the margin counts half-steps in `j`.
    Dlssv { two_jmax: usize, margin: usize },
}

impl TruncationWindow {
    pub fn podles(n: usize) -> Self {
        TruncationWindow::Podles { n, margin: 2 }
    }

    pub fn suq2_basic(n: usize, l: usize) -> Self {
        TruncationWindow::SUq2Basic { n, l, margin: 2 }
    }

    pub fn dlssv(jmax: usize) -> Self {
        TruncationWindow::Dlssv {
            two_jmax: 2 * jmax,
            margin: 2,
        }
    }

    pub fn margin(&self) -> usize {
        match *self {
            TruncationWindow::Podles { margin, .. }
            | TruncationWindow::SUq2Basic { margin, .. }
            | TruncationWindow::Dlssv { margin, .. } => margin,
        }
    }

    pub fn with_margin(self, margin: usize) -> Self {
        match self {
            TruncationWindow::Podles { n, .. } => TruncationWindow::Podles { n, margin },
            TruncationWindow::SUq2Basic { n, l, .. } => {
                TruncationWindow::SUq2Basic { n, l, margin }
            }
            TruncationWindow::Dlssv { two_jmax, .. } => {
                TruncationWindow::Dlssv { two_jmax, margin }
            }
        }
    }

    /// Number of distinct levels in the window.
    pub fn levels(&self) -> usize {
        match *self {
            TruncationWindow::Podles { n, .. } | TruncationWindow::SUq2Basic { n, .. } => n,
            TruncationWindow::Dlssv { two_jmax, .. } => two_jmax + 1,
        }
    }

    /// Same window with the level count replaced (used for dyadic comparisons).
    pub fn with_levels(self, levels: usize) -> Self {
        match self {
            TruncationWindow::Podles { margin, .. } => {
                TruncationWindow::Podles { n: levels, margin }
            }
            TruncationWindow::SUq2Basic { l, margin, .. } => TruncationWindow::SUq2Basic {
                n: levels,
                l,
                margin,
            },
            TruncationWindow::Dlssv { margin, .. } => TruncationWindow::Dlssv {
                two_jmax: levels.saturating_sub(1),
                margin,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let min_shift = 1;
        if self.margin() < min_shift {
            return Err(Error::InvalidParameter(format!(
                "interior margin {} below the generator shift {min_shift}",
                self.margin()
            )));
        }
        if self.levels() <= 2 * self.margin() {
            return Err(Error::InvalidParameter(format!(
                "window {self} has no interior"
            )));
        }
        if let TruncationWindow::SUq2Basic { l, margin, .. } = *self {
            if l < margin + 1 {
                return Err(Error::InvalidParameter(format!(
                    "l-window {l} has no interior"
                )));
            }
        }
        Ok(())
    }

    pub fn basis(&self) -> Vec<BasisIndex> {
        match *self {
            TruncationWindow::Podles { n, .. } => [true, false]
                .into_iter()
                .flat_map(|plus| (0..n).map(move |k| BasisIndex::PodlesPM { k, plus }))
                .collect(),
            TruncationWindow::SUq2Basic { n, l, .. } => {
                let l = l as i64;
                (0..n)
                    .flat_map(|k| (-l..=l).map(move |l| BasisIndex::SUq2Basic { k, l }))
                    .collect()
            }
            TruncationWindow::Dlssv { two_jmax, .. } => dlssv_basis(0, two_jmax as i64),
        }
    }

    /// Whether a label lies far enough from the cut to be free of boundary effects.
    pub fn is_interior(&self, b: &BasisIndex) -> bool {
        match (*self, *b) {
            (TruncationWindow::Podles { n, margin }, BasisIndex::PodlesPM { k, .. }) => {
                k + margin < n
            }
            (TruncationWindow::SUq2Basic { n, l, margin }, BasisIndex::SUq2Basic { k, l: bl }) => {
                k + margin < n && bl.unsigned_abs() as usize + margin <= l
            }
            (TruncationWindow::Dlssv { two_jmax, margin }, BasisIndex::Dlssv { two_j, .. }) => {
                two_j as usize + margin <= two_jmax
            }
            _ => false,
        }
    }
}

/// DLSSV labels with `two_jmin <= 2j <= two_jmax` in the canonical order:
/// by `j`, then up before down, then lexicographic `(mu, n)`.
pub fn dlssv_basis(two_jmin: i64, two_jmax: i64) -> Vec<BasisIndex> {
    let mut out = Vec::new();
    for two_j in two_jmin..=two_jmax {
        for arrow in [Arrow::Up, Arrow::Down] {
            let two_bound = match arrow {
                Arrow::Up => two_j + 1,
                Arrow::Down => two_j - 1,
            };
            if two_bound < 0 {
                continue;
            }
            for two_mu in (-two_j..=two_j).step_by(2) {
                for two_n in (-two_bound..=two_bound).step_by(2) {
                    out.push(BasisIndex::Dlssv {
                        two_j,
                        two_mu,
                        two_n,
                        arrow,
                    });
                }
            }
        }
    }
    out
}

impl fmt::Display for TruncationWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TruncationWindow::Podles { n, margin } => write!(f, "N={n} margin={margin}"),
            TruncationWindow::SUq2Basic { n, l, margin } => {
                write!(f, "N={n} L={l} margin={margin}")
            }
            TruncationWindow::Dlssv { two_jmax, margin } => {
                write!(f, "Jmax={} margin={margin}", half(two_jmax as i64))
            }
        }
    }
}

/// Ordered basis with reverse lookup.
#[derive(Clone, Debug)]
pub struct Basis {
    labels: Vec<BasisIndex>,
    lookup: HashMap<BasisIndex, usize>,
}

impl Basis {
    pub fn new(labels: Vec<BasisIndex>) -> Self {
        let lookup = labels.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        Self { labels, lookup }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[BasisIndex] {
        &self.labels
    }

    pub fn position(&self, b: &BasisIndex) -> Option<usize> {
        self.lookup.get(b).copied()
    }

    pub fn get(&self, i: usize) -> BasisIndex {
        self.labels[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dlssv_dimension_at_default_window() {
        let b = TruncationWindow::dlssv(12).basis();
        assert_eq!(b.len(), 11050);
        assert!(b.iter().all(BasisIndex::is_valid));
    }

    #[test]
    fn dlssv_has_no_down_states_at_j_zero() {
        let b = dlssv_basis(0, 0);
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|x| matches!(
            x,
            BasisIndex::Dlssv {
                arrow: Arrow::Up,
                ..
            }
        )));
    }

    #[test]
    fn dlssv_n_has_opposite_parity_to_j() {
        for x in dlssv_basis(0, 6) {
            if let BasisIndex::Dlssv {
                two_j,
                two_mu,
                two_n,
                ..
            } = x
            {
                assert_eq!((two_j - two_mu) % 2, 0);
                assert_eq!((two_j - two_n).rem_euclid(2), 1);
            }
        }
    }

    #[test]
    fn podles_basis_puts_plus_block_first() {
        let b = TruncationWindow::podles(3).basis();
        assert_eq!(b[2], BasisIndex::PodlesPM { k: 2, plus: true });
        assert_eq!(b[3], BasisIndex::PodlesPM { k: 0, plus: false });
    }

    #[test]
    fn windows_without_interior_are_rejected() {
        assert!(TruncationWindow::podles(4).validate().is_err());
        assert!(TruncationWindow::podles(5).validate().is_ok());
        assert!(TruncationWindow::podles(40)
            .with_margin(0)
            .validate()
            .is_err());
    }
}
