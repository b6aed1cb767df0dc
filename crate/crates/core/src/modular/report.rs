use serde::{Deserialize, Serialize};

use crate::ktheory::KernelReport;
use crate::linalg::C64;

/// Rounds to 15 significant digits so that printed output is stable.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    if !v.is_finite() {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub q: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportValue {
    pub re: f64,
    pub im: f64,
}

/// One computed pairing against its closed-form reference.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingReport {
    pub quantity: String,
    pub params: ReportParams,
    pub window: String,
    pub value: ReportValue,
    pub tail: f64,
    pub reference: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelReport>,
}

impl PairingReport {
    /// Passes iff both `|value - reference|` and the tail are below
    /// `tolerance * scale`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        quantity: &str,
        params: ReportParams,
        window: String,
        value: C64,
        tail: f64,
        reference: f64,
        tolerance: f64,
        scale: f64,
    ) -> Self {
        let bound = tolerance * scale;
        let pass = (value - reference).norm() < bound && tail < bound;
        Self {
            quantity: quantity.to_string(),
            params: ReportParams {
                q: round_sig(params.q),
                s: params.s.map(round_sig),
            },
            window,
            value: ReportValue {
                re: round_sig(value.re),
                im: round_sig(value.im),
            },
            tail: round_sig(tail),
            reference: round_sig(reference),
            pass,
            kernel: None,
        }
    }

    pub fn with_kernel(mut self, k: KernelReport) -> Self {
        self.kernel = Some(k);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_fifteen_digits() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(1.0 / 3.0).to_string(), "0.333333333333333");
        assert_eq!(round_sig(0.0), 0.0);
        assert!(round_sig(-0.0).is_sign_positive());
    }

    #[test]
    fn tail_counts_against_the_tolerance() {
        let p = ReportParams { q: 0.5, s: None };
        let ok = PairingReport::new(
            "x",
            p,
            "w".into(),
            C64::new(0.5, 0.0),
            1e-12,
            0.5,
            1e-8,
            1.0,
        );
        assert!(ok.pass);
        let bad = PairingReport::new("x", p, "w".into(), C64::new(0.5, 0.0), 1e-6, 0.5, 1e-8, 1.0);
        assert!(!bad.pass);
        let json = serde_json::to_string(&ok).unwrap();
        assert_eq!(
            json,
            r#"{"quantity":"x","params":{"q":0.5},"window":"w","value":{"re":0.5,"im":0.0},"tail":1e-12,"reference":0.5,"pass":true}"#
        );
    }
}
