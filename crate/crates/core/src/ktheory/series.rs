//! Closed-form series for the Podleś projection pairing.

/// `a_k = sqrt(s^2 + q^{2k}) sqrt(1 + s^2 q^{2k}) q^{2k}`.
pub fn a_term(k: usize, q: f64, s: f64) -> f64 {
    b_term(k, q, s) * q.powi(2 * k as i32)
}

/// `b_k = sqrt(s^2 + q^{2k}) sqrt(1 + s^2 q^{2k})`.
pub fn b_term(k: usize, q: f64, s: f64) -> f64 {
    let x = q.powi(2 * k as i32);
    (s * s + x).sqrt() * (1.0 + s * s * x).sqrt()
}

/// `(sum_{k<=K} (a_{k+1} - a_k), sum_{k<=K} (b_k - b_{k+1}))`, accumulated
/// term by term.
pub fn telescoping_sums(big_k: usize, q: f64, s: f64) -> (f64, f64) {
    (0..=big_k).fold((0.0, 0.0), |(x, y), k| {
        (
            x + (a_term(k + 1, q, s) - a_term(k, q, s)),
            y + (b_term(k, q, s) - b_term(k + 1, q, s)),
        )
    })
}

/// Limits of [`telescoping_sums`]: `-(1 + s^2)` and `1 + s^2 - s`.
pub fn telescoping_limits(s: f64) -> (f64, f64) {
    (-(1.0 + s * s), 1.0 + s * s - s)
}

/// Partial sum over `k <= K` of the level-wise series for `Ch_2(P, P, P)`.
pub fn projection_pairing_series(big_k: usize, q: f64, s: f64) -> f64 {
    let s2 = s * s;
    let sum: f64 = (0..=big_k)
        .map(|k| {
            let x = q.powi(2 * k as i32);
            2.0 * s2 * (q.powi(4) - 1.0) * x * x
                + 2.0 * s * (a_term(k + 1, q, s) - a_term(k, q, s))
                + (q * q - 1.0) * (1.0 - s2).powi(2) * x
                + 2.0 * s * (b_term(k, q, s) - b_term(k + 1, q, s))
        })
        .sum();
    -0.5 * 2.0 * q / (1.0 + s2).powi(2) * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_reach_their_limits() {
        for &(q, s) in &[(0.3, 0.25), (0.5, 0.7), (0.7, 1.0)] {
            let (x, y) = telescoping_sums(200, q, s);
            let (lx, ly) = telescoping_limits(s);
            assert!((x - lx).abs() < 1e-10);
            assert!((y - ly).abs() < 1e-10);
        }
    }

    #[test]
    fn series_gives_q() {
        for &(q, s) in &[(0.3, 0.25), (0.5, 0.7), (0.7, 1.0)] {
            assert!((projection_pairing_series(200, q, s) - q).abs() < 1e-10);
        }
    }
}
