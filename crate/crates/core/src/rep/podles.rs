//! The two irreducible representations of the Podleś sphere on `l^2(N)`.

use crate::linalg::{SparseMatrix, C64};

/// Coefficient of `pi_+(B) e_k = c e_{k-1}`.
pub fn plus_b(k: usize, q: f64, s: f64) -> f64 {
    let x = q.powi(2 * k as i32);
    ((1.0 - x) * (s * s + x)).sqrt()
}

/// Coefficient of `pi_-(B) e_k = c e_{k-1}`.
pub fn minus_b(k: usize, q: f64, s: f64) -> f64 {
    let x = q.powi(2 * k as i32);
    s * ((1.0 - x) * (1.0 + s * s * x)).sqrt()
}

/// `plus_b - minus_b` without cancellation:
/// `sqrt(1-x) x (1-s^4) / (sqrt(s^2+x) + s sqrt(1+s^2 x))`.
pub fn diff_b(k: usize, q: f64, s: f64) -> f64 {
    let x = q.powi(2 * k as i32);
    let s2 = s * s;
    (1.0 - x).sqrt() * x * (1.0 - s2 * s2) / ((s2 + x).sqrt() + s * (1.0 + s2 * x).sqrt())
}

pub fn plus_a(k: usize, q: f64) -> f64 {
    q.powi(2 * k as i32)
}

pub fn minus_a(k: usize, q: f64, s: f64) -> f64 {
    -s * s * q.powi(2 * k as i32)
}

/// `plus_a - minus_a`.
pub fn diff_a(k: usize, q: f64, s: f64) -> f64 {
    (1.0 + s * s) * q.powi(2 * k as i32)
}

fn diag(n: usize, f: impl Fn(usize) -> f64) -> SparseMatrix {
    SparseMatrix::from_triplets(n, n, (0..n).map(|k| (k, k, C64::new(f(k), 0.0))))
}

fn lowering(n: usize, f: impl Fn(usize) -> f64) -> SparseMatrix {
    SparseMatrix::from_triplets(n, n, (1..n).map(|k| (k - 1, k, C64::new(f(k), 0.0))))
}

/// `(A, B)` images in one summand, or their difference across summands.
#[derive(Clone, Debug)]
pub struct HalfGenerators {
    pub a: SparseMatrix,
    pub b: SparseMatrix,
}

pub fn plus_half(n: usize, q: f64, s: f64) -> HalfGenerators {
    HalfGenerators {
        a: diag(n, |k| plus_a(k, q)),
        b: lowering(n, |k| plus_b(k, q, s)),
    }
}

pub fn minus_half(n: usize, q: f64, s: f64) -> HalfGenerators {
    HalfGenerators {
        a: diag(n, |k| minus_a(k, q, s)),
        b: lowering(n, |k| minus_b(k, q, s)),
    }
}

pub fn diff_half(n: usize, q: f64, s: f64) -> HalfGenerators {
    HalfGenerators {
        a: diag(n, |k| diff_a(k, q, s)),
        b: lowering(n, |k| diff_b(k, q, s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_difference_matches_naive_where_naive_is_accurate() {
        for &(q, s) in &[(0.5, 0.7), (0.3, 0.25), (0.7, 1.0)] {
            for k in 0..6 {
                let naive = plus_b(k, q, s) - minus_b(k, q, s);
                assert!((naive - diff_b(k, q, s)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn difference_keeps_relative_precision_deep_in_the_tail() {
        let (q, s): (f64, f64) = (0.3, 0.5);
        let k = 60;
        let x = q.powi(2 * k);
        let expected = x * (1.0 - s.powi(4)) / (2.0 * s);
        assert!(((diff_b(k as usize, q, s) - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn b_kills_the_vacuum() {
        assert_eq!(plus_b(0, 0.5, 1.0), 0.0);
        assert_eq!(minus_b(0, 0.5, 0.7), 0.0);
    }
}
