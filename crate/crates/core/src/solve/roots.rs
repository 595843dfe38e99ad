//! Bracketed scalar root finding shared by the shooting solver and the
//! horosphere level searches.

/// Finds a sign change of `f` on `[lo, hi]` by bisection. Returns `None` if
/// `f(lo)` and `f(hi)` have the same strict sign.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, x_tol: f64) -> Option<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() || !f_lo.is_finite() || !f_hi.is_finite() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= x_tol || mid == lo || mid == hi {
            return Some(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Root of a monotone function: expands `[lo, hi]` geometrically until it
/// brackets a sign change, then bisects.
pub fn monotone_root<F: FnMut(f64) -> f64>(mut f: F, guess: f64, scale: f64, x_tol: f64) -> Option<f64> {
    let mut width = scale.abs().max(1e-3);
    let mut lo = guess - width;
    let mut hi = guess + width;
    for _ in 0..80 {
        let (a, b) = (f(lo), f(hi));
        if a.is_finite() && b.is_finite() && a.signum() != b.signum() {
            return bisect(&mut f, lo, hi, x_tol);
        }
        width *= 2.0;
        lo = guess - width;
        hi = guess + width;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cube_root() {
        let r = bisect(|x| x * x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-13);
    }

    #[test]
    fn no_bracket() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_none());
    }

    #[test]
    fn expands_bracket() {
        let r = monotone_root(|x| x - 1234.5, 0.0, 1.0, 1e-10).unwrap();
        assert!((r - 1234.5).abs() < 1e-9);
    }
}
