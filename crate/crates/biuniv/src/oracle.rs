//! Brute-force maximizers that re-derive every maximum the closed forms
//! claim, with no reliance on those forms.
//!
//! Design: deterministic dense grid plus one local refinement pass around
//! the grid argmax (window one coarse step wide, step divided by 100). The
//! objectives are low-degree polynomials on compact boxes, so the coarse
//! error is quadratic in the step and the refinement drives it far below
//! the agreement tolerances. If several grid cells tie within `1e-12` the
//! lexicographically smallest coordinate is reported, which keeps results
//! identical however the evaluation is partitioned.

use rayon::prelude::*;

use crate::proof::{k_poly_value, t_coefficients_unchecked, ProofCoefficients};
use crate::types::ClassParams;
use crate::{Error, Result};

/// Values closer than this tie for the maximum; ties resolve to the
/// lexicographically smallest coordinate.
const TIE_WINDOW: f64 = 1e-12;

/// Refinement step = coarse step / REFINE_DIV.
const REFINE_DIV: f64 = 100.0;

/// Result of one maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct OptResult {
    /// The objective evaluated at `argmax` (stored, not re-derived).
    pub max_value: f64,
    /// Coordinates of the maximizer: `[g1, g2]`, `[c]`, or `[c, g1, g2]`.
    pub argmax: Vec<f64>,
    /// The coarse grid step used.
    pub resolution: f64,
    /// Whether the local refinement pass ran (always true for these ops).
    pub refined: bool,
}

fn check_resolution(resolution: f64, max: f64) -> Result<()> {
    if !resolution.is_finite() || resolution <= 0.0 || resolution > max {
        return Err(Error::Domain {
            name: "resolution",
            requirement: "0 < resolution <= maximum for this operation",
            value: resolution,
        });
    }
    Ok(())
}

/// Number of intervals for a grid of the given step on `[lo, hi]`.
fn intervals(lo: f64, hi: f64, step: f64) -> usize {
    (((hi - lo) / step).round() as usize).max(1)
}

#[inline]
fn grid_point(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    lo + (hi - lo) * (i as f64) / (n as f64)
}

/// Dense 1-D scan: evaluate once per point, take the max, then report the
/// smallest coordinate within the tie window.
fn scan_1d(lo: f64, hi: f64, step: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let n = intervals(lo, hi, step);
    let values: Vec<f64> = (0..=n).map(|i| f(grid_point(lo, hi, n, i))).collect();
    pick_1d(lo, hi, n, &values)
}

/// Parallel variant for expensive objectives. The reduction is two fixed
/// passes over the stored values, so the result does not depend on how the
/// evaluation was partitioned.
fn scan_1d_par(lo: f64, hi: f64, step: f64, f: impl Fn(f64) -> f64 + Sync) -> (f64, f64) {
    let n = intervals(lo, hi, step);
    let values: Vec<f64> = (0..=n)
        .into_par_iter()
        .map(|i| f(grid_point(lo, hi, n, i)))
        .collect();
    pick_1d(lo, hi, n, &values)
}

fn pick_1d(lo: f64, hi: f64, n: usize, values: &[f64]) -> (f64, f64) {
    let max = values.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let idx = values
        .iter()
        .position(|&v| v >= max - TIE_WINDOW)
        .expect("nonempty grid");
    (values[idx], grid_point(lo, hi, n, idx))
}

/// Dense 2-D scan in row-major order (first coordinate outer), same
/// tie-breaking rule.
fn scan_2d(
    (lo1, hi1): (f64, f64),
    (lo2, hi2): (f64, f64),
    step: f64,
    f: impl Fn(f64, f64) -> f64,
) -> (f64, [f64; 2]) {
    let n1 = intervals(lo1, hi1, step);
    let n2 = intervals(lo2, hi2, step);
    let mut values = Vec::with_capacity((n1 + 1) * (n2 + 1));
    for i in 0..=n1 {
        let x = grid_point(lo1, hi1, n1, i);
        for j in 0..=n2 {
            values.push(f(x, grid_point(lo2, hi2, n2, j)));
        }
    }
    let max = values.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let flat = values
        .iter()
        .position(|&v| v >= max - TIE_WINDOW)
        .expect("nonempty grid");
    let (i, j) = (flat / (n2 + 1), flat % (n2 + 1));
    (
        values[flat],
        [grid_point(lo1, hi1, n1, i), grid_point(lo2, hi2, n2, j)],
    )
}

fn clamp_window(center: f64, step: f64, lo: f64, hi: f64) -> (f64, f64) {
    ((center - step).max(lo), (center + step).min(hi))
}

/// Coarse-plus-refined square maximization for a fixed set of expansion
/// coefficients. Returns the better of the two passes (the refined pass can
/// only lose to the coarse one by rounding on the re-evaluated midpoint).
fn square_max(t: &ProofCoefficients, resolution: f64) -> (f64, [f64; 2]) {
    let obj = |g1: f64, g2: f64| t.f(g1, g2);
    let (coarse_val, coarse_arg) = scan_2d((0.0, 1.0), (0.0, 1.0), resolution, obj);
    let w1 = clamp_window(coarse_arg[0], resolution, 0.0, 1.0);
    let w2 = clamp_window(coarse_arg[1], resolution, 0.0, 1.0);
    let (fine_val, fine_arg) = scan_2d(w1, w2, resolution / REFINE_DIV, obj);
    if fine_val >= coarse_val {
        (fine_val, fine_arg)
    } else {
        (coarse_val, coarse_arg)
    }
}

/// Maximize `F(g1, g2)` over the closed unit square at a fixed `c`.
///
/// `resolution <= 0.05`.
pub fn maximize_f_on_square(c: f64, params: ClassParams, resolution: f64) -> Result<OptResult> {
    check_resolution(resolution, 0.05)?;
    if !c.is_finite() || !(0.0..=2.0).contains(&c) {
        return Err(Error::domain("c", "0 <= c <= 2", c));
    }
    let t = t_coefficients_unchecked(c, params);
    let (max_value, argmax) = square_max(&t, resolution);
    Ok(OptResult {
        max_value,
        argmax: argmax.to_vec(),
        resolution,
        refined: true,
    })
}

/// Maximize the boundary polynomial `K(c)` over `[0, 2]`.
///
/// `resolution <= 0.01`.
pub fn maximize_k_on_interval(params: ClassParams, resolution: f64) -> Result<OptResult> {
    check_resolution(resolution, 0.01)?;
    let obj = |c: f64| k_poly_value(c, params);
    let (coarse_val, coarse_arg) = scan_1d(0.0, 2.0, resolution, obj);
    let (w_lo, w_hi) = clamp_window(coarse_arg, resolution, 0.0, 2.0);
    let (fine_val, fine_arg) = scan_1d(w_lo, w_hi, resolution / REFINE_DIV, obj);
    let (max_value, arg) = if fine_val >= coarse_val {
        (fine_val, fine_arg)
    } else {
        (coarse_val, coarse_arg)
    };
    Ok(OptResult {
        max_value,
        argmax: vec![arg],
        resolution,
        refined: true,
    })
}

/// The full Hankel oracle: maximize `F` over the square for every `c` on a
/// grid of `[0, 2]`, then refine in `c` around the best slice. The result
/// must match [`crate::bounds::hankel2_bound`] to within the oracle
/// tolerance; asserting that agreement is the verification suite's job.
///
/// `resolution <= 0.01`. The `c` slices are evaluated in parallel; the
/// reduction is partition-independent.
pub fn hankel_bound_oracle(params: ClassParams, resolution: f64) -> Result<OptResult> {
    check_resolution(resolution, 0.01)?;
    let slice_max = |c: f64| square_max(&t_coefficients_unchecked(c, params), resolution).0;
    let (coarse_val, coarse_c) = scan_1d_par(0.0, 2.0, resolution, slice_max);
    let (w_lo, w_hi) = clamp_window(coarse_c, resolution, 0.0, 2.0);
    let (fine_val, fine_c) = scan_1d_par(w_lo, w_hi, resolution / REFINE_DIV, slice_max);
    let best_c = if fine_val >= coarse_val {
        fine_c
    } else {
        coarse_c
    };
    let (max_value, square_arg) = square_max(&t_coefficients_unchecked(best_c, params), resolution);
    Ok(OptResult {
        max_value,
        argmax: vec![best_c, square_arg[0], square_arg[1]],
        resolution,
        refined: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::hankel2_bound;
    use crate::proof::t_coefficients;

    fn params(lambda: f64, beta: f64) -> ClassParams {
        ClassParams::new(lambda, beta).unwrap()
    }

    #[test]
    fn square_max_finds_the_corner() {
        let r = maximize_f_on_square(1.0, params(0.0, 0.0), 0.01).unwrap();
        assert!((r.max_value - 0.6875).abs() < 1e-12);
        assert_eq!(r.argmax, vec![1.0, 1.0]);
    }

    #[test]
    fn square_max_degenerate_at_c_two() {
        // T2 = T3 = T4 = 0: the objective is constant, every cell ties, and
        // the lexicographically smallest coordinate wins.
        let r = maximize_f_on_square(2.0, params(0.3, 0.4), 0.01).unwrap();
        let t1 = t_coefficients(2.0, params(0.3, 0.4)).unwrap().t1;
        assert!((r.max_value - t1).abs() < 1e-15);
        assert_eq!(r.argmax, vec![0.0, 0.0]);
    }

    #[test]
    fn square_max_at_c_zero() {
        // F = T4 (g1 + g2)^2, maximized at the far corner.
        let r = maximize_f_on_square(0.0, params(0.0, 0.0), 0.01).unwrap();
        assert!((r.max_value - 4.0 / 9.0).abs() < 1e-12);
        assert_eq!(r.argmax, vec![1.0, 1.0]);
    }

    #[test]
    fn k_interval_boundary_and_interior() {
        let r = maximize_k_on_interval(params(0.0, 0.0), 0.005).unwrap();
        assert!((r.max_value - 1.5).abs() < 1e-9);
        assert!((r.argmax[0] - 2.0).abs() < 1e-12);

        let r = maximize_k_on_interval(params(0.0, 0.8), 0.005).unwrap();
        assert!((r.argmax[0] - 1.52585).abs() < 1e-3);
        assert!((r.max_value - 0.025668).abs() < 1e-6);

        let r = maximize_k_on_interval(params(1.0, 0.0), 0.005).unwrap();
        assert!((r.max_value - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn oracle_matches_closed_form_spot_checks() {
        for (lambda, beta) in [(0.0, 0.0), (1.0, 0.0), (0.5, 0.5)] {
            let p = params(lambda, beta);
            let oracle = hankel_bound_oracle(p, 0.01).unwrap();
            let closed = hankel2_bound(p).unwrap().value;
            let tol = 5.0 * 0.01 * 0.01 + 1e-8;
            assert!(
                (oracle.max_value - closed).abs() <= tol,
                "lambda={lambda} beta={beta}: oracle {} vs closed {closed}",
                oracle.max_value
            );
        }
    }

    #[test]
    fn refinement_never_loses_to_coarse() {
        for (lambda, beta) in [(0.0, 0.75), (0.25, 0.6), (1.0, 0.35)] {
            let p = params(lambda, beta);
            let coarse = scan_1d(0.0, 2.0, 0.01, |c| k_poly_value(c, p));
            let refined = maximize_k_on_interval(p, 0.01).unwrap();
            assert!(refined.max_value >= coarse.0);
        }
    }

    #[test]
    fn resolution_preconditions() {
        let p = params(0.0, 0.0);
        assert!(maximize_f_on_square(1.0, p, 0.06).is_err());
        assert!(maximize_f_on_square(1.0, p, 0.0).is_err());
        assert!(maximize_k_on_interval(p, 0.05).is_err());
        assert!(hankel_bound_oracle(p, 0.05).is_err());
        assert!(maximize_f_on_square(2.5, p, 0.01).is_err());
    }

    #[test]
    fn max_value_is_objective_at_argmax() {
        let p = params(0.4, 0.3);
        let r = maximize_k_on_interval(p, 0.01).unwrap();
        assert_eq!(r.max_value, k_poly_value(r.argmax[0], p));

        let r = maximize_f_on_square(0.8, p, 0.01).unwrap();
        let t = t_coefficients(0.8, p).unwrap();
        assert_eq!(r.max_value, t.f(r.argmax[0], r.argmax[1]));
    }
}
