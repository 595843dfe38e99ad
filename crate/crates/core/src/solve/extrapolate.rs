//! Richardson extrapolation over resolution doublings and stabilized limit
//! evaluation along a parameter schedule.

use crate::error::{Error, Result};

/// Richardson table for a quantity with an even error expansion
/// `a + c1 h^2 + c2 h^4 + ...`, sampled at successive halvings of `h`.
///
/// Returns the extrapolated value and the difference between the last two
/// highest-order estimates (an error indicator).
pub fn richardson_even(values: &[f64]) -> (f64, f64) {
    assert!(!values.is_empty());
    let mut row: Vec<f64> = values.to_vec();
    let mut factor = 4.0;
    let mut err = f64::NAN;
    while row.len() > 1 {
        let next: Vec<f64> = row.windows(2).map(|w| (factor * w[1] - w[0]) / (factor - 1.0)).collect();
        err = (row[row.len() - 1] - next[next.len() - 1]).abs();
        row = next;
        factor *= 4.0;
    }
    (row[0], if err.is_nan() { 0.0 } else { err })
}

/// Default parameter schedule for limits at infinity.
pub const LIMIT_SCHEDULE: [f64; 5] = [20.0, 25.0, 30.0, 35.0, 40.0];
/// Successive-iterate window for accepting a limit.
pub const LIMIT_WINDOW: f64 = 1e-8;

/// Evaluates `lim_{t -> inf} f(t)` along [`LIMIT_SCHEDULE`].
///
/// Accepts once two successive iterates differ by at most [`LIMIT_WINDOW`]
/// and returns the later iterate corrected by a geometric tail estimate when
/// three iterates are available. Fails at the cap with the last two iterates.
pub fn limit_at_infinity<F: FnMut(f64) -> f64>(mut f: F) -> Result<f64> {
    let mut iterates: Vec<f64> = Vec::with_capacity(LIMIT_SCHEDULE.len());
    for &t in LIMIT_SCHEDULE.iter() {
        let v = f(t);
        if !v.is_finite() {
            let previous = iterates.last().copied().unwrap_or(f64::NAN);
            return Err(Error::LimitConvergence { previous, last: v });
        }
        iterates.push(v);
        let k = iterates.len();
        if k >= 2 && (iterates[k - 1] - iterates[k - 2]).abs() <= LIMIT_WINDOW {
            return Ok(geometric_tail(&iterates));
        }
    }
    let k = iterates.len();
    Err(Error::LimitConvergence { previous: iterates[k - 2], last: iterates[k - 1] })
}

fn geometric_tail(iterates: &[f64]) -> f64 {
    let k = iterates.len();
    let last = iterates[k - 1];
    if k < 3 {
        return last;
    }
    let d1 = iterates[k - 2] - iterates[k - 3];
    let d2 = last - iterates[k - 2];
    // only extrapolate a genuinely contracting tail
    if d1 != 0.0 && d2 != 0.0 && d1.signum() == d2.signum() {
        let ratio = d2 / d1;
        if ratio > 0.0 && ratio < 0.5 {
            return last + d2 * ratio / (1.0 - ratio);
        }
    }
    last
}
