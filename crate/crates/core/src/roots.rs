//! Bracketing and bisection for monotone scalar functions.

/// Walks `hi = start + step, start + 2 step, start + 4 step, ...` until
/// `f(hi) >= 0`. Returns `None` after `max_doublings` attempts.
pub fn bracket_upward(f: &impl Fn(f64) -> f64, start: f64, step: f64, max_doublings: usize) -> Option<f64> {
    let mut width = step;
    for _ in 0..max_doublings {
        let hi = start + width;
        let v = f(hi);
        if v.is_nan() {
            return None;
        }
        if v >= 0.0 {
            return Some(hi);
        }
        width *= 2.0;
    }
    None
}

/// Bisection on `[lo, hi]` with `f(lo) < 0 <= f(hi)`, run until the bracket
/// stops shrinking in floating point.
pub fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    if !(f(lo) < 0.0 && f(hi) >= 0.0) {
        return None;
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
