//! Coefficient bounds for a family of bi-univalent function classes, with
//! independent numerical verification.
//!
//! A function `f(z) = z + a2 z^2 + a3 z^3 + ...`, analytic and univalent on
//! the unit disk, is *bi-univalent* when its inverse is also univalent on a
//! disk around the origin. For a weight `lambda in [0, 1]` and an analytic
//! target `phi` with positive real part and real Taylor coefficients
//! (`phi(z) = 1 + B1 z + B2 z^2 + ...`, `B1 > 0`), the class treated here
//! collects the bi-univalent `f` for which
//!
//! ```text
//! (1 - lambda) f'(z) + lambda (1 + z f''(z) / f'(z))
//! ```
//!
//! is subordinate to `phi`, with the same condition imposed on the inverse
//! map. Taking `phi(z) = (1 + (1 - 2 beta) z) / (1 - z)` specializes to the
//! order-`beta` subfamily on which the second Hankel determinant
//! `|a2 a4 - a3^2|` is bounded.
//!
//! The crate has four layers:
//!
//! - [`bounds`] — the closed-form upper bounds for `|a2|`, `|a3|`, the
//!   Fekete-Szego functional and the second Hankel determinant, each returned
//!   as a [`types::BoundReport`] recording which piecewise branch fired;
//! - [`proof`] — the internal objects of the Hankel-determinant maximization
//!   (the coefficients `T1..T4`, the square objective `F`, the boundary
//!   polynomial `K` and its critical point) as executable functions;
//! - [`oracle`] — deterministic grid maximizers that re-derive every claimed
//!   maximum by brute force, with no reliance on the closed forms;
//! - [`sampler`] — samplers over the Caratheodory and Schwarz coefficient
//!   bodies, used for one-sided empirical checks of every bound.

use thiserror::Error as ThisError;

pub mod bounds;
pub mod oracle;
pub mod proof;
pub mod sampler;
pub mod types;

/// Error type shared by all fallible operations in the crate.
#[derive(Debug, Clone, PartialEq, ThisError)]
pub enum Error {
    /// An input violated its stated domain.
    #[error("{name} must satisfy {requirement} (got {value})")]
    Domain {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// The interior Hankel formula would divide by a vanishing denominator.
    ///
    /// Does not occur for `lambda in [0, 1]` on the interior region (the
    /// verification suite scans for it); returned instead of a garbage value
    /// should an out-of-contract input reach the division.
    #[error(
        "interior denominator degenerate at lambda={lambda}, beta={beta} (value {denominator:e})"
    )]
    DegenerateDenominator {
        lambda: f64,
        beta: f64,
        denominator: f64,
    },

    /// The case analysis predicted an interior maximum but the critical point
    /// does not exist. Indicates an internal inconsistency, not bad input.
    #[error("interior case predicted at lambda={lambda}, beta={beta} but the critical point does not exist")]
    MissingCriticalPoint { lambda: f64, beta: f64 },
}

impl Error {
    pub(crate) fn domain(name: &'static str, requirement: &'static str, value: f64) -> Self {
        Error::Domain {
            name,
            requirement,
            value,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&lambda) || !lambda.is_finite() {
        return Err(Error::domain("lambda", "0 <= lambda <= 1", lambda));
    }
    Ok(())
}
