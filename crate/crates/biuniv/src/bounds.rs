//! Closed-form upper bounds: initial coefficients, Fekete-Szego functional,
//! and the second Hankel determinant, plus the direct corollary formulas used
//! as algebraic cross-checks.
//!
//! Every function is pure and returns a [`BoundReport`] recording the value,
//! the active piecewise branch, and the switch point compared against.
//! Tie-breaking convention: piecewise comparisons use `<=` on the
//! first-listed branch, so a value exactly at a switch point is assigned to
//! that branch (the two branches agree there anyway).

use crate::types::{BoundReport, Branch, ClassParams, MindaPhi};
use crate::{check_lambda, Error, Result};

/// Guard for the interior Hankel denominator; it is provably bounded away
/// from zero on the interior region for `lambda in [0, 1]`, so tripping this
/// means the input is out of contract.
const DENOMINATOR_GUARD: f64 = 1e-9;

/// Upper bound for `|a2|`:
/// `B1 sqrt(B1) / sqrt(4 B1 + |(3 - lambda) B1^2 - 4 B2|)`.
pub fn a2_bound(phi: &MindaPhi, lambda: f64) -> Result<BoundReport> {
    check_lambda(lambda)?;
    let b1 = phi.b1();
    let b2 = phi.b2();
    let denom = 4.0 * b1 + ((3.0 - lambda) * b1 * b1 - 4.0 * b2).abs();
    Ok(BoundReport {
        value: b1 * b1.sqrt() / denom.sqrt(),
        branch: Branch::Single,
        threshold: None,
    })
}

/// Upper bound for `|a3|`, piecewise at `B1 = 4 / (3 (1 + lambda))`:
///
/// - `B1` at or above the switch point:
///   `(1 - 4 / (3 (1 + lambda) B1)) B1^3 / (4 B1 + |(3 - lambda) B1^2 - 4 B2|)
///    + B1 / (3 (1 + lambda))`;
/// - below it: `B1 / (3 (1 + lambda))`.
///
/// The two branches agree exactly at the switch point.
pub fn a3_bound(phi: &MindaPhi, lambda: f64) -> Result<BoundReport> {
    check_lambda(lambda)?;
    let b1 = phi.b1();
    let b2 = phi.b2();
    let threshold = 4.0 / (3.0 * (1.0 + lambda));
    let base = b1 / (3.0 * (1.0 + lambda));
    let (value, branch) = if b1 >= threshold {
        let denom = 4.0 * b1 + ((3.0 - lambda) * b1 * b1 - 4.0 * b2).abs();
        let v = (1.0 - 4.0 / (3.0 * (1.0 + lambda) * b1)) * b1.powi(3) / denom + base;
        (v, Branch::LargeB1)
    } else {
        (base, Branch::SmallB1)
    };
    Ok(BoundReport {
        value,
        branch,
        threshold: Some(threshold),
    })
}

/// Fekete-Szego bound for `|a2|`: `sqrt(B1 / (3 - lambda))` when
/// `|B2| <= B1`, else `sqrt(|B2| / (3 - lambda))`. The reported threshold is
/// the switch point `B1` that `|B2|` is compared against.
pub fn fekete_a2_bound(phi: &MindaPhi, lambda: f64) -> Result<BoundReport> {
    check_lambda(lambda)?;
    let b1 = phi.b1();
    let b2 = phi.b2().abs();
    let (num, branch) = if b2 <= b1 {
        (b1, Branch::B1Dominant)
    } else {
        (b2, Branch::B2Dominant)
    };
    Ok(BoundReport {
        value: (num / (3.0 - lambda)).sqrt(),
        branch,
        threshold: Some(b1),
    })
}

/// The weight of the generalized Fekete-Szego functional
/// `|a3 - delta a2^2|` bounded by [`fekete_functional_bound`]:
/// `delta = 4 lambda / (3 + 3 lambda)`.
pub fn fekete_delta(lambda: f64) -> f64 {
    4.0 * lambda / (3.0 + 3.0 * lambda)
}

/// Bound on the generalized functional `|a3 - delta a2^2|` at
/// `delta = 4 lambda / (3 + 3 lambda)`: `B1 / (3 + 3 lambda)` when
/// `|B2| <= B1`, else `|B2| / (3 + 3 lambda)`. Returns the report together
/// with the `delta` the bound applies at.
pub fn fekete_functional_bound(phi: &MindaPhi, lambda: f64) -> Result<(BoundReport, f64)> {
    check_lambda(lambda)?;
    let b1 = phi.b1();
    let b2 = phi.b2().abs();
    let (num, branch) = if b2 <= b1 {
        (b1, Branch::B1Dominant)
    } else {
        (b2, Branch::B2Dominant)
    };
    let report = BoundReport {
        value: num / (3.0 + 3.0 * lambda),
        branch,
        threshold: Some(b1),
    };
    Ok((report, fekete_delta(lambda)))
}

/// The two beta switch points of the Hankel analysis, both clamped to
/// `[0, 1)` with the clamp recorded.
///
/// `theorem` is the operative branch switch of [`hankel2_bound`]: at that
/// beta the interior critical point reaches the boundary `c = 2`, so the two
/// branch formulas agree there. `proof` is where the quartic coefficient of
/// the boundary polynomial `K` changes sign; between the two thresholds the
/// critical point exists but lies outside `(0, 2)`, so the boundary value
/// still wins. The case-analysis verifier uses `proof` to label which
/// mechanism applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaThresholds {
    pub theorem: f64,
    pub proof: f64,
    pub theorem_clamped: bool,
    pub proof_clamped: bool,
}

/// Compute both beta thresholds for a given `lambda`.
pub fn beta_threshold(lambda: f64) -> Result<BetaThresholds> {
    check_lambda(lambda)?;
    let l1 = 1.0 + lambda;
    let l2 = 1.0 + 2.0 * lambda;
    let m = 2.0 - lambda;
    let theorem_raw = 1.0 - (l2 + (l2 * l2 + 18.0 * l1 * l1 * m).sqrt()) / (6.0 * l1 * m);
    let proof_raw =
        1.0 - (l2 + (l2 * l2 + m * (18.0 * l1 * l1 - 8.0 * l2)).sqrt()) / (3.0 * l1 * m);
    Ok(BetaThresholds {
        theorem: theorem_raw.max(0.0),
        proof: proof_raw.max(0.0),
        theorem_clamped: theorem_raw < 0.0,
        proof_clamped: proof_raw < 0.0,
    })
}

/// Numerator and denominator polynomials of the interior Hankel formula,
/// in `u = 1 - beta`.
fn interior_parts(lambda: f64, u: f64) -> (f64, f64) {
    let l1 = 1.0 + lambda;
    let l2 = 1.0 + 2.0 * lambda;
    let m = 2.0 - lambda;
    let num = 36.0 * (8.0 * l2 * m - l2 * l2) * u * u - 324.0 * l1 * l2 * u + 288.0 * l2
        - 729.0 * l1 * l1;
    let den = 9.0 * l1 * l1 * m * u * u - 6.0 * l1 * l2 * u + 8.0 * l2 - 18.0 * l1 * l1;
    (num, den)
}

/// Denominator of the interior Hankel expression, exposed so the
/// verification suite can scan the interior region for near-degeneracy
/// instead of trusting the error path alone.
pub fn interior_denominator(params: ClassParams) -> f64 {
    interior_parts(params.lambda(), 1.0 - params.beta()).1
}

/// Upper bound for the second Hankel determinant `|a2 a4 - a3^2|` on the
/// order-`beta` subclass, piecewise at the theorem threshold of
/// [`beta_threshold`]:
///
/// - `beta <= threshold` (boundary case):
///   `(1 - beta)^2 / (2 (1 + 2 lambda)) * ((2 - lambda)(1 - beta)^2 + 1)`;
/// - otherwise (interior case): the rational expression
///   `(1 - beta)^2 / (72 (1 + 2 lambda)) * num / den` with
///   `num = 36 (8 (1+2L)(2-L) - (1+2L)^2)(1-beta)^2
///          - 324 (1+L)(1+2L)(1-beta) + 288 (1+2L) - 729 (1+L)^2` and
///   `den = 9 (1+L)^2 (2-L)(1-beta)^2 - 6 (1+L)(1+2L)(1-beta)
///          + 8 (1+2L) - 18 (1+L)^2` (writing `L` for lambda).
pub fn hankel2_bound(params: ClassParams) -> Result<BoundReport> {
    let lambda = params.lambda();
    let beta = params.beta();
    let l2 = 1.0 + 2.0 * lambda;
    let u = 1.0 - beta;
    let thresholds = beta_threshold(lambda)?;
    let threshold = thresholds.theorem;
    if beta <= threshold {
        let value = u * u / (2.0 * l2) * ((2.0 - lambda) * u * u + 1.0);
        return Ok(BoundReport {
            value,
            branch: Branch::BoundaryCase,
            threshold: Some(threshold),
        });
    }
    let (num, den) = interior_parts(lambda, u);
    if den.abs() < DENOMINATOR_GUARD {
        return Err(Error::DegenerateDenominator {
            lambda,
            beta,
            denominator: den,
        });
    }
    Ok(BoundReport {
        value: u * u / (72.0 * l2) * (num / den),
        branch: Branch::InteriorCase,
        threshold: Some(threshold),
    })
}

/// Endpoint specializations of the Hankel bound in fully simplified form,
/// evaluated directly (not through [`hankel2_bound`]) so they can serve as
/// independent algebraic cross-checks of the general expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorollaryKind {
    /// `lambda = 0`, order `beta`: piecewise at `(11 - sqrt(37)) / 12`.
    HBeta,
    /// `lambda = 1`, order `beta`:
    /// `(1 - beta)^2 / 24 * (5 beta^2 + 8 beta - 32) / (3 beta^2 - 3 beta - 4)`.
    KBeta,
    /// `lambda = 0`, `beta = 0`: the constant `3/2`.
    H,
    /// `lambda = 1`, `beta = 0`: the constant `1/3`.
    K,
}

/// Evaluate one of the corollary formulas. The parameters must match the
/// corollary's fixed `lambda` (and `beta` for the constant ones) exactly.
pub fn corollary_bounds(params: ClassParams, which: CorollaryKind) -> Result<BoundReport> {
    let lambda = params.lambda();
    let beta = params.beta();
    let require = |name: &'static str, got: f64, want: f64| -> Result<()> {
        if got != want {
            return Err(Error::domain(
                name,
                match which {
                    CorollaryKind::HBeta => "lambda = 0 for the H-beta corollary",
                    CorollaryKind::KBeta => "lambda = 1 for the K-beta corollary",
                    CorollaryKind::H => "lambda = 0 and beta = 0 for the H corollary",
                    CorollaryKind::K => "lambda = 1 and beta = 0 for the K corollary",
                },
                got,
            ));
        }
        Ok(())
    };
    match which {
        CorollaryKind::HBeta => {
            require("lambda", lambda, 0.0)?;
            let threshold = (11.0 - 37.0_f64.sqrt()) / 12.0;
            let u = 1.0 - beta;
            if beta <= threshold {
                Ok(BoundReport {
                    value: u * u * (1.0 + 2.0 * u * u) / 2.0,
                    branch: Branch::BoundaryCase,
                    threshold: Some(threshold),
                })
            } else {
                let num = 60.0 * beta * beta - 84.0 * beta - 25.0;
                let den = 9.0 * beta * beta - 15.0 * beta + 1.0;
                Ok(BoundReport {
                    value: u * u * num / (16.0 * den),
                    branch: Branch::InteriorCase,
                    threshold: Some(threshold),
                })
            }
        }
        CorollaryKind::KBeta => {
            require("lambda", lambda, 1.0)?;
            let u = 1.0 - beta;
            let num = 5.0 * beta * beta + 8.0 * beta - 32.0;
            let den = 3.0 * beta * beta - 3.0 * beta - 4.0;
            Ok(BoundReport {
                value: u * u / 24.0 * (num / den),
                branch: Branch::Single,
                threshold: None,
            })
        }
        CorollaryKind::H => {
            require("lambda", lambda, 0.0)?;
            require("beta", beta, 0.0)?;
            Ok(BoundReport {
                value: 1.5,
                branch: Branch::Single,
                threshold: None,
            })
        }
        CorollaryKind::K => {
            require("lambda", lambda, 1.0)?;
            require("beta", beta, 0.0)?;
            Ok(BoundReport {
                value: 1.0 / 3.0,
                branch: Branch::Single,
                threshold: None,
            })
        }
    }
}
