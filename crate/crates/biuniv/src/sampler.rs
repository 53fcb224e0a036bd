//! Samplers over the Caratheodory and Schwarz coefficient bodies.
//!
//! The Hankel argument runs through a pair of Caratheodory functions `p`
//! (for `f`) and `q` (for the inverse), linked by six coefficient equations.
//! Sampling the `p` side of that system and solving for the `q` side, then
//! keeping only pairs whose `q`-prefix is itself admissible, produces
//! genuine members of the coefficient body; evaluating the functionals on
//! them gives a one-sided empirical check of every bound. The same idea at
//! second order uses Schwarz-function prefixes for the Fekete-Szego bounds.
//!
//! The coefficient body is a relaxation of the function class (nothing here
//! certifies that a prefix extends to a bi-univalent function), so observed
//! maxima are reported but never asserted equal to the bounds.

use num_complex::Complex64;
use rand::Rng;

use crate::types::{
    CaratheodoryPrefix, ClassParams, GrenanderParams, MindaPhi, SchwarzPrefix, TaylorPrefix,
};
use crate::{check_lambda, Error, Result};

/// Membership slack smaller than this counts as a violation. Generous
/// against rounding: prefixes built by [`grenander_prefix`] land within
/// ~1e-14 of exact feasibility.
pub const ADMISSIBILITY_TOL: f64 = 1e-9;

/// Treat `4 - c1^2` below this as the degenerate `c1 = 2` case, where the
/// whole prefix is forced to `(2, 2, 2)`.
const DEGENERATE_GAP: f64 = 1e-12;

/// Acceptance slack for the induced second Schwarz coefficient.
const SCHWARZ_ACCEPT_TOL: f64 = 1e-12;

/// Outcome of a membership test, with the slack of each inequality
/// (nonnegative slack = satisfied; the most negative slack is the violation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Slack of `|2 c2 - c1^2| <= 4 - c1^2`; for degenerate `c1 = 2`,
    /// `-|c2 - 2|`.
    pub x_slack: f64,
    /// Slack of the third-coefficient inequality; for degenerate `c1 = 2`,
    /// `-|c3 - 2|`.
    pub z_slack: f64,
}

/// Build a Caratheodory prefix from `c1` and the free disk parameters:
/// `2 c2 = c1^2 + x (4 - c1^2)` and
/// `4 c3 = c1^3 + 2 c1 (4 - c1^2) x - c1 (4 - c1^2) x^2
///         + 2 (4 - c1^2)(1 - |x|^2) z`.
///
/// Every output passes [`prefix_is_admissible`]; the representation is the
/// exact parameterization of the coefficient body that the membership test
/// inverts.
pub fn grenander_prefix(c1: f64, g: &GrenanderParams) -> Result<CaratheodoryPrefix> {
    if !c1.is_finite() || !(0.0..=2.0).contains(&c1) {
        return Err(Error::domain("c1", "0 <= c1 <= 2", c1));
    }
    let gap = 4.0 - c1 * c1;
    let x = g.x();
    let z = g.z();
    let c2 = (x * gap + c1 * c1) / 2.0;
    let c3 = (2.0 * c1 * gap * x - c1 * gap * x * x
        + 2.0 * gap * (1.0 - x.norm_sqr()) * z
        + c1 * c1 * c1)
        / 4.0;
    CaratheodoryPrefix::new(c1, c2, c3)
}

/// Membership test for a rotation-normalized prefix (`c1` real in `[0, 2]`).
fn admissible_normalized(c1: f64, c2: Complex64, c3: Complex64) -> AdmissibilityReport {
    let gap = 4.0 - c1 * c1;
    if gap < DEGENERATE_GAP {
        // c1 = 2 pins the whole function; the prefix must be (2, 2, 2).
        let x_slack = -(c2 - 2.0).norm();
        let z_slack = -(c3 - 2.0).norm();
        return AdmissibilityReport {
            admissible: x_slack >= -ADMISSIBILITY_TOL && z_slack >= -ADMISSIBILITY_TOL,
            x_slack,
            z_slack,
        };
    }
    let two_c2_minus = 2.0 * c2 - c1 * c1;
    let x_slack = gap - two_c2_minus.norm();
    let x = two_c2_minus / gap;
    let lhs = (4.0 * c3 - c1 * c1 * c1 - 2.0 * c1 * gap * x + c1 * gap * x * x).norm();
    let rhs = 2.0 * gap * (1.0 - x.norm_sqr());
    let z_slack = rhs - lhs;
    AdmissibilityReport {
        admissible: x_slack >= -ADMISSIBILITY_TOL && z_slack >= -ADMISSIBILITY_TOL,
        x_slack,
        z_slack,
    }
}

/// Does the prefix belong to the Caratheodory coefficient body? True iff
/// some `x, z` in the closed unit disk reproduce `(c2, c3)` from `c1`; the
/// test inverts the representation of [`grenander_prefix`] and reports the
/// slack of each inequality.
pub fn prefix_is_admissible(p: &CaratheodoryPrefix) -> AdmissibilityReport {
    admissible_normalized(p.c1(), p.c2(), p.c3())
}

/// Membership test for a prefix whose first coefficient is real in
/// `[-2, 2]`, as produced for the `q` side (`d1 = -c1`).
///
/// A negative first coefficient is handled through the parity rotation
/// `q(w) -> q(-w)`, which maps the prefix `(d1, d2, d3)` to
/// `(-d1, d2, -d3)` and preserves membership.
pub fn q_prefix_is_admissible(d1: f64, d2: Complex64, d3: Complex64) -> AdmissibilityReport {
    if !d1.is_finite() || d1.abs() > 2.0 {
        let slack = 2.0 - d1.abs();
        return AdmissibilityReport {
            admissible: false,
            x_slack: slack,
            z_slack: slack,
        };
    }
    if d1 < 0.0 {
        admissible_normalized(-d1, d2, -d3)
    } else {
        admissible_normalized(d1, d2, d3)
    }
}

/// An accepted sample: the `p`-prefix, the induced `q`-prefix, the Taylor
/// coefficients they generate, and the parameters, with all six defining
/// equations holding by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissiblePair {
    pub p_prefix: CaratheodoryPrefix,
    /// `(d1, d2, d3)` with `d1 = -c1`.
    pub q_prefix: [Complex64; 3],
    pub taylor: TaylorPrefix,
    pub params: ClassParams,
}

impl AdmissiblePair {
    /// Largest absolute residual over the six defining equations and the
    /// combined assembly formulas for `a3` and `a4`. ~1e-15 for pairs built
    /// by this module; a redundancy check against transcription slips.
    pub fn system_residual(&self) -> f64 {
        let lambda = self.params.lambda();
        let u = 1.0 - self.params.beta();
        let l1 = 1.0 + lambda;
        let l2 = 1.0 + 2.0 * lambda;
        let c1 = Complex64::new(self.p_prefix.c1(), 0.0);
        let c2 = self.p_prefix.c2();
        let c3 = self.p_prefix.c3();
        let [d1, d2, d3] = self.q_prefix;
        let TaylorPrefix { a2, a3, a4 } = self.taylor;
        let residuals = [
            2.0 * a2 - u * c1,
            3.0 * l1 * a3 - 4.0 * lambda * a2 * a2 - u * c2,
            4.0 * l2 * a4 - 18.0 * lambda * a2 * a3 + 8.0 * lambda * a2 * a2 * a2 - u * c3,
            -2.0 * a2 - u * d1,
            2.0 * (3.0 + lambda) * a2 * a2 - 3.0 * l1 * a3 - u * d2,
            2.0 * (10.0 + 11.0 * lambda) * a2 * a3
                - 4.0 * (5.0 + 3.0 * lambda) * a2 * a2 * a2
                - 4.0 * l2 * a4
                - u * d3,
            a3 - (u * u / 4.0 * c1 * c1 + u / (6.0 * l1) * (c2 - d2)),
            a4 - (5.0 * lambda * u * u * u / (16.0 * l2) * c1 * c1 * c1
                + 5.0 * u * u / (24.0 * l1) * c1 * (c2 - d2)
                + u / (8.0 * l2) * (c3 - d3)),
        ];
        residuals.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }
}

/// Solve the coefficient system for a given `p`-prefix: the Taylor prefix
/// and the induced `q`-prefix.
fn assemble(p: &CaratheodoryPrefix, params: ClassParams) -> ([Complex64; 3], TaylorPrefix) {
    let lambda = params.lambda();
    let u = 1.0 - params.beta();
    let l1 = 1.0 + lambda;
    let l2 = 1.0 + 2.0 * lambda;
    let a2 = Complex64::new(u * p.c1() / 2.0, 0.0);
    let a3 = (u * p.c2() + 4.0 * lambda * a2 * a2) / (3.0 * l1);
    let a4 = (u * p.c3() + 18.0 * lambda * a2 * a3 - 8.0 * lambda * a2 * a2 * a2) / (4.0 * l2);
    let d1 = Complex64::new(-p.c1(), 0.0);
    let d2 = (2.0 * (3.0 + lambda) * a2 * a2 - 3.0 * l1 * a3) / u;
    let d3 = (2.0 * (10.0 + 11.0 * lambda) * a2 * a3
        - 4.0 * (5.0 + 3.0 * lambda) * a2 * a2 * a2
        - 4.0 * l2 * a4)
        / u;
    ([d1, d2, d3], TaylorPrefix::new(a2, a3, a4))
}

/// Complete a `p`-prefix to a full pair, rejecting it when the induced
/// `q`-prefix falls outside the coefficient body.
pub fn pair_from_p_prefix(p: &CaratheodoryPrefix, params: ClassParams) -> Option<AdmissiblePair> {
    let (q, taylor) = assemble(p, params);
    if !q_prefix_is_admissible(q[0].re, q[1], q[2]).admissible {
        return None;
    }
    Some(AdmissiblePair {
        p_prefix: *p,
        q_prefix: q,
        taylor,
        params,
    })
}

/// Uniform sample from the closed complex unit disk (rejection from the
/// enclosing square).
pub fn sample_unit_disk<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    loop {
        let re = rng.gen_range(-1.0..=1.0);
        let im = rng.gen_range(-1.0..=1.0);
        if re * re + im * im <= 1.0 {
            return Complex64::new(re, im);
        }
    }
}

/// Random admissible prefix: `c1` uniform on `[0, 2]`, `x` and `z` uniform
/// on the closed unit disk, assembled by [`grenander_prefix`].
pub fn sample_caratheodory_prefix<R: Rng + ?Sized>(rng: &mut R) -> CaratheodoryPrefix {
    let c1 = rng.gen_range(0.0..=2.0);
    let x = sample_unit_disk(rng);
    let z = sample_unit_disk(rng);
    let g = GrenanderParams::new(x, z).expect("disk samples are in the disk");
    grenander_prefix(c1, &g).expect("c1 is in range")
}

/// One rejection-sampling draw: build a random `p`-prefix and try to
/// complete it. `None` is a normal outcome; the acceptance rate is a
/// reported statistic, not an error.
pub fn sample_pair<R: Rng + ?Sized>(rng: &mut R, params: ClassParams) -> Option<AdmissiblePair> {
    let p = sample_caratheodory_prefix(rng);
    pair_from_p_prefix(&p, params)
}

/// Random Schwarz prefix: `b1` uniform on the closed unit disk, `b2`
/// uniform on the disk of radius `1 - |b1|^2`.
pub fn sample_schwarz_prefix<R: Rng + ?Sized>(rng: &mut R) -> SchwarzPrefix {
    let b1 = sample_unit_disk(rng);
    let cap = 1.0 - b1.norm_sqr();
    let b2 = sample_unit_disk(rng) * cap;
    SchwarzPrefix::new(b1, b2).expect("scaled sample is within the cap")
}

/// An accepted second-order sample: `a2`, `a3`, and the second coefficient
/// `s2` of the induced Schwarz function on the inverse side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwarzSample {
    pub a2: Complex64,
    pub a3: Complex64,
    pub s2: Complex64,
}

/// Complete a Schwarz prefix to a second-order sample for the target `phi`:
/// `a2 = B1 b1 / 2`, `a3 = (B1 b2 + B2 b1^2 + 4 lambda a2^2) / (3 (1 +
/// lambda))`, and `s2` solved from
/// `(2 (3 - lambda) B1^2 - 8 B2) a2^2 = B1^3 (b2 + s2)`.
///
/// Returns `Ok(None)` when the induced `s2` violates `|s2| <= 1 - |b1|^2`
/// (the inverse-side Schwarz function would be inadmissible).
pub fn schwarz_pair(
    b: &SchwarzPrefix,
    phi: &MindaPhi,
    lambda: f64,
) -> Result<Option<SchwarzSample>> {
    check_lambda(lambda)?;
    let big1 = phi.b1();
    let big2 = phi.b2();
    let b1 = b.b1();
    let b2 = b.b2();
    let a2 = b1 * (big1 / 2.0);
    let a3 = (b2 * big1 + b1 * b1 * big2 + 4.0 * lambda * a2 * a2) / (3.0 * (1.0 + lambda));
    let s2 = a2 * a2 * ((2.0 * (3.0 - lambda) * big1 * big1 - 8.0 * big2) / big1.powi(3)) - b2;
    if s2.norm() > 1.0 - b1.norm_sqr() + SCHWARZ_ACCEPT_TOL {
        return Ok(None);
    }
    Ok(Some(SchwarzSample { a2, a3, s2 }))
}

/// The second Hankel determinant functional `|a2 a4 - a3^2|`.
pub fn hankel2_functional(t: &TaylorPrefix) -> f64 {
    (t.a2 * t.a4 - t.a3 * t.a3).norm()
}

/// The generalized Fekete-Szego functional `|a3 - delta a2^2|`.
pub fn fekete_functional(t: &TaylorPrefix, delta: f64) -> f64 {
    (t.a3 - delta * t.a2 * t.a2).norm()
}
