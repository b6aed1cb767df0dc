use super::weight::Estimate;
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Evaluates along a strictly increasing schedule of window sizes and
/// returns the last value, with the larger of the last two successive
/// differences as the error.
pub fn truncation_extrapolate<F>(mut evaluate: F, schedule: &[usize]) -> Result<Estimate>
where
    F: FnMut(usize) -> Result<C64>,
{
    if schedule.len() < 3 {
        return Err(Error::InvalidParameter(
            "schedule needs at least three windows".into(),
        ));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "schedule must be strictly increasing".into(),
        ));
    }
    let values = schedule
        .iter()
        .map(|&n| evaluate(n))
        .collect::<Result<Vec<_>>>()?;
    let k = values.len();
    let prev = (values[k - 2] - values[k - 3]).norm();
    let last = (values[k - 1] - values[k - 2]).norm();
    let floor = 1e-14 * values[k - 1].norm().max(1.0);
    if last > floor && last > prev / 2.0 {
        return Err(Error::NonConvergent { prev, last });
    }
    Ok(Estimate {
        value: values[k - 1],
        tail: prev.max(last),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_evaluator() {
        let e = truncation_extrapolate(|_| Ok(C64::new(3.0, 1.0)), &[4, 8, 16]).unwrap();
        assert_eq!(e.value, C64::new(3.0, 1.0));
        assert_eq!(e.tail, 0.0);
    }

    #[test]
    fn geometric_tail_is_bracketed() {
        let (v, c, q) = (1.25f64, 3.0f64, 0.7f64);
        let eval = |n: usize| Ok(C64::new(v + c * q.powi(2 * n as i32), 0.0));
        let e = truncation_extrapolate(eval, &[4, 5, 6]).unwrap();
        let gap = (e.value.re - v).abs();
        assert!(e.tail >= gap && e.tail <= 10.0 * gap, "{} vs {gap}", e.tail);
    }

    #[test]
    fn divergent_evaluator_is_flagged() {
        let r = truncation_extrapolate(|n| Ok(C64::new(n as f64, 0.0)), &[4, 8, 16]);
        assert!(matches!(r, Err(Error::NonConvergent { .. })));
    }

    #[test]
    fn bad_schedules() {
        assert!(truncation_extrapolate(|_| Ok(C64::new(0.0, 0.0)), &[4, 8]).is_err());
        assert!(truncation_extrapolate(|_| Ok(C64::new(0.0, 0.0)), &[4, 8, 8]).is_err());
    }
}
