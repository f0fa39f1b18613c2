//! One-dimensional maximisation: golden-section search, optionally seeded
//! by a coarse grid scan.

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (√5 − 1)/2

/// Golden-section search for a maximum of `f` on `[lo, hi]`, stopping once
/// the bracket is narrower than `xtol`. Returns `(x, f(x))`.
pub fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > xtol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Scans `points` equally spaced abscissae of `[lo, hi]`, then refines
/// around the best one by golden-section search. The better of the grid
/// optimum and the refined point is returned.
pub fn grid_then_golden_max<F>(f: F, lo: f64, hi: f64, points: usize, xtol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    assert!(points >= 2 && hi > lo);
    let step = (hi - lo) / (points - 1) as f64;
    let at = |i: usize| {
        if i + 1 == points {
            hi
        } else {
            lo + step * i as f64
        }
    };

    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..points {
        let v = f(at(i));
        if v > best.1 {
            best = (i, v);
        }
    }
    let (i, grid_val) = best;
    let left = at(i.saturating_sub(1));
    let right = at((i + 1).min(points - 1));
    let (x, v) = golden_section_max(&f, left, right, xtol);
    if v >= grid_val {
        (x, v)
    } else {
        (at(i), grid_val)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let (x, v) = golden_section_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn kink() {
        let (x, v) = golden_section_max(|x| -(x - 0.3).abs(), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-10);
        assert!(v > -1e-10);
    }

    #[test]
    fn grid_escapes_flat_region() {
        // flat zero on [0, 0.8), narrow bump at 0.9
        let f = |x: f64| (1.0 - ((x - 0.9) / 0.01).powi(2)).max(0.0);
        let (x, v) = grid_then_golden_max(f, 0.0, 1.0, 256, 1e-10);
        assert!((x - 0.9).abs() < 1e-6, "{x}");
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn maximum_at_boundary() {
        let (x, v) = grid_then_golden_max(|x| x, 0.0, 1.0, 256, 1e-9);
        assert!((x - 1.0).abs() < 1e-8);
        assert!((v - 1.0).abs() < 1e-8);
        let (x, _) = grid_then_golden_max(|x| -x, 0.0, 1.0, 256, 1e-9);
        assert!(x < 1e-8);
    }
}
