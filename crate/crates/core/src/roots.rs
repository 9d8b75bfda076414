//! Sign-change scanning and bisection.

/// Bisects `f` on a bracket with `f(lo)` and `f(hi)` of opposite sign (or one
/// of them zero) until the bracket is narrower than `tol`.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Adjacent grid intervals over which the sampled values change sign.
/// A sample that is exactly zero brackets itself.
pub fn sign_change_brackets(grid: &[f64], values: &[f64]) -> Vec<(f64, f64)> {
    debug_assert_eq!(grid.len(), values.len());
    let mut out = Vec::new();
    for i in 0..grid.len() {
        if values[i] == 0.0 {
            out.push((grid[i], grid[i]));
            continue;
        }
        if i + 1 < grid.len() && values[i + 1] != 0.0 && (values[i] < 0.0) != (values[i + 1] < 0.0) {
            out.push((grid[i], grid[i + 1]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14);
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn brackets_and_exact_zero() {
        let grid = [0.0, 1.0, 2.0, 3.0, 4.0];
        let vals = [1.0, -1.0, 0.0, 2.0, -3.0];
        let b = sign_change_brackets(&grid, &vals);
        assert_eq!(b, vec![(0.0, 1.0), (2.0, 2.0), (3.0, 4.0)]);
    }
}
