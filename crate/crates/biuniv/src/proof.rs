//! The internal objects of the Hankel-determinant maximization, reified so
//! each claim in the argument becomes an executable check.
//!
//! For `c in [0, 2]` the triangle-inequality expansion of `|a2 a4 - a3^2|`
//! over the coefficient body is
//!
//! ```text
//! F(g1, g2) = T1 + T2 (g1 + g2) + T3 (g1^2 + g2^2) + T4 (g1 + g2)^2
//! ```
//!
//! on the closed unit square, with `T1, T2, T4 >= 0` and `T3 <= 0`. The
//! square maximum is `F(1, 1) = K(c)`, a quartic polynomial in `c` whose
//! maximum over `[0, 2]` sits either on the boundary `c = 2` or at the
//! interior critical point, depending on the sign of the quartic
//! coefficient. [`crate::bounds::hankel2_bound`] is exactly that maximum.

use crate::bounds::beta_threshold;
use crate::types::ClassParams;
use crate::{Error, Result};

/// The four expansion coefficients at a fixed `c`, together with the context
/// they were computed in.
///
/// Sign facts, checked lattice-wide by the verification suite: `t1`, `t2`,
/// `t4` are nonnegative and `t3` nonpositive for every `c in [0, 2]`, and
/// `t3 + 2 t4 > 0` for `c in (0, 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProofCoefficients {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
    pub c: f64,
    pub params: ClassParams,
}

impl ProofCoefficients {
    /// The square objective `F(g1, g2)`. No domain check; used in hot loops.
    #[inline]
    pub fn f(&self, g1: f64, g2: f64) -> f64 {
        let s = g1 + g2;
        self.t1 + self.t2 * s + self.t3 * (g1 * g1 + g2 * g2) + self.t4 * s * s
    }

    /// The edge function `G(g) = F(0, g) = T1 + T2 g + (T3 + T4) g^2`.
    #[inline]
    pub fn edge_g(&self, g: f64) -> f64 {
        self.t1 + self.t2 * g + (self.t3 + self.t4) * g * g
    }

    /// The edge function
    /// `H(g) = F(1, g) = (T3 + T4) g^2 + (T2 + 2 T4) g + T1 + T2 + T3 + T4`.
    #[inline]
    pub fn edge_h(&self, g: f64) -> f64 {
        (self.t3 + self.t4) * g * g
            + (self.t2 + 2.0 * self.t4) * g
            + (self.t1 + self.t2 + self.t3 + self.t4)
    }

    /// The corner value `F(1, 1) = T1 + 2 T2 + 2 T3 + 4 T4`.
    #[inline]
    pub fn corner(&self) -> f64 {
        self.t1 + 2.0 * self.t2 + 2.0 * self.t3 + 4.0 * self.t4
    }
}

fn check_c(c: f64) -> Result<()> {
    if !c.is_finite() || !(0.0..=2.0).contains(&c) {
        return Err(Error::domain("c", "0 <= c <= 2", c));
    }
    Ok(())
}

pub(crate) fn t_coefficients_unchecked(c: f64, params: ClassParams) -> ProofCoefficients {
    let lambda = params.lambda();
    let u = 1.0 - params.beta();
    let l1 = 1.0 + lambda;
    let l2 = 1.0 + 2.0 * lambda;
    let u2 = u * u;
    let c2 = c * c;
    let gap = 4.0 - c2;
    let t1 = (2.0 - lambda) * u2 * u2 * c2 * c2 / (32.0 * l2)
        + u2 * c2 * c2 / (32.0 * l2)
        + u2 * c * gap / (16.0 * l2);
    let t2 = u2 * u * c2 * gap / (96.0 * l1) + u2 * c2 * gap / (32.0 * l2);
    let t3 = u2 * c2 * gap / (64.0 * l2) - u2 * c * gap / (32.0 * l2);
    let t4 = u2 * gap * gap / (144.0 * l1 * l1);
    ProofCoefficients {
        t1,
        t2,
        t3,
        t4,
        c,
        params,
    }
}

/// Evaluate `T1(c) .. T4(c)` for `c in [0, 2]`.
pub fn t_coefficients(c: f64, params: ClassParams) -> Result<ProofCoefficients> {
    check_c(c)?;
    Ok(t_coefficients_unchecked(c, params))
}

/// The square objective `F(g1, g2)` with full domain checking.
pub fn f_value(g1: f64, g2: f64, c: f64, params: ClassParams) -> Result<f64> {
    for (name, g) in [("gamma1", g1), ("gamma2", g2)] {
        if !g.is_finite() || !(0.0..=1.0).contains(&g) {
            return Err(Error::domain(name, "0 <= gamma <= 1", g));
        }
    }
    Ok(t_coefficients(c, params)?.f(g1, g2))
}

/// Coefficients of the expanded quartic `K(c) = u^2 (P c^4 + Q c^2 + R) /
/// (288 L1^2 L2)` and the cubic `K'(c) = u^2 (P c^3 + Q' c) / (72 L1^2 L2)`,
/// with `Q = 2 Q'`.
struct KPolynomial {
    p: f64,
    q_half: f64,
    scale_k: f64,
    scale_kp: f64,
}

fn k_polynomial(params: ClassParams) -> KPolynomial {
    let lambda = params.lambda();
    let u = 1.0 - params.beta();
    let l1 = 1.0 + lambda;
    let l2 = 1.0 + 2.0 * lambda;
    let m = 2.0 - lambda;
    let p = 9.0 * u * u * l1 * l1 * m - 6.0 * u * l1 * l2 - 18.0 * l1 * l1 + 8.0 * l2;
    let q_half = 12.0 * u * l1 * l2 + 54.0 * l1 * l1 - 32.0 * l2;
    let u2 = u * u;
    KPolynomial {
        p,
        q_half,
        scale_k: u2 / (288.0 * l1 * l1 * l2),
        scale_kp: u2 / (72.0 * l1 * l1 * l2),
    }
}

pub(crate) fn k_poly_value(c: f64, params: ClassParams) -> f64 {
    let kp = k_polynomial(params);
    let l2 = 1.0 + 2.0 * params.lambda();
    let c2 = c * c;
    kp.scale_k * ((kp.p * c2 + 2.0 * kp.q_half) * c2 + 128.0 * l2)
}

/// The boundary polynomial `K(c) = max F = F(1, 1)` and its derivative
/// `K'(c)`, both evaluated as expanded polynomials in `c`.
///
/// Internal consistency: the expanded `K` must agree with
/// `T1 + 2 T2 + 2 T3 + 4 T4` reassembled from [`t_coefficients`]; this is
/// asserted here (debug builds) and checked lattice-wide by the
/// verification suite.
pub fn k_values(c: f64, params: ClassParams) -> Result<(f64, f64)> {
    check_c(c)?;
    let kp = k_polynomial(params);
    let l2 = 1.0 + 2.0 * params.lambda();
    let c2 = c * c;
    let k = kp.scale_k * ((kp.p * c2 + 2.0 * kp.q_half) * c2 + 128.0 * l2);
    let k_prime = kp.scale_kp * (kp.p * c2 + kp.q_half) * c;
    debug_assert!(
        (k - t_coefficients_unchecked(c, params).corner()).abs() <= 1e-12 * (1.0 + k.abs()),
        "polynomial K disagrees with the T-coefficient assembly at c={c}"
    );
    Ok((k, k_prime))
}

/// The positive interior critical point of `K`,
/// `c02 = sqrt(-Q' / P)`, when the radicand is finite and nonnegative;
/// `None` otherwise (in particular whenever `P >= 0`).
pub fn critical_point(params: ClassParams) -> Option<f64> {
    let kp = k_polynomial(params);
    if kp.p == 0.0 {
        return None;
    }
    let ratio = -kp.q_half / kp.p;
    if !ratio.is_finite() || ratio < 0.0 {
        return None;
    }
    Some(ratio.sqrt())
}

/// Where the maximum of `K` over `[0, 2]` is predicted to sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// Maximum on the boundary `c = 2`.
    Boundary,
    /// Maximum at the interior critical point.
    Interior,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::Boundary => "boundary",
            CaseTag::Interior => "interior",
        }
    }
}

/// Predicted argmax of `K` on `[0, 2]` with its case tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasePrediction {
    pub argmax: f64,
    pub tag: CaseTag,
}

/// Classify the maximization case: boundary (`c = 2`) for `beta` at or below
/// the `theorem` threshold of [`beta_threshold`], interior (`c = c02`)
/// above it.
///
/// Interior classification with a missing critical point cannot happen for
/// in-domain parameters; it is reported as an error rather than unwrapped so
/// the verification suite can prove the claim empirically.
pub fn case_classification(params: ClassParams) -> Result<CasePrediction> {
    let thresholds = beta_threshold(params.lambda())?;
    if params.beta() <= thresholds.theorem {
        return Ok(CasePrediction {
            argmax: 2.0,
            tag: CaseTag::Boundary,
        });
    }
    match critical_point(params) {
        Some(c02) => Ok(CasePrediction {
            argmax: c02,
            tag: CaseTag::Interior,
        }),
        None => Err(Error::MissingCriticalPoint {
            lambda: params.lambda(),
            beta: params.beta(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(lambda: f64, beta: f64) -> ClassParams {
        ClassParams::new(lambda, beta).unwrap()
    }

    #[test]
    fn t_coefficients_examples() {
        // c = 2 annihilates T2, T3, T4; T1 equals K(2).
        let t = t_coefficients(2.0, params(0.0, 0.0)).unwrap();
        assert!((t.t1 - 1.5).abs() < 1e-15);
        assert_eq!(t.t2, 0.0);
        assert_eq!(t.t3, 0.0);
        assert_eq!(t.t4, 0.0);

        // c = 0 leaves only T4 = (1 - beta)^2 / (9 (1 + lambda)^2).
        for (lambda, beta) in [(0.0, 0.0), (0.5, 0.3), (1.0, 0.9)] {
            let t = t_coefficients(0.0, params(lambda, beta)).unwrap();
            assert_eq!(t.t1, 0.0);
            assert_eq!(t.t2, 0.0);
            assert_eq!(t.t3, 0.0);
            let expect = (1.0 - beta) * (1.0 - beta) / (9.0 * (1.0 + lambda) * (1.0 + lambda));
            assert!((t.t4 - expect).abs() < 1e-15);
        }

        let t = t_coefficients(1.0, params(0.0, 0.0)).unwrap();
        assert!((t.t1 - 0.28125).abs() < 1e-15);
        assert!((t.t2 - 0.125).abs() < 1e-15);
        assert!((t.t3 + 0.046875).abs() < 1e-15);
        assert!((t.t4 - 0.0625).abs() < 1e-15);

        assert!(t_coefficients(2.1, params(0.0, 0.0)).is_err());
        assert!(t_coefficients(-0.1, params(0.0, 0.0)).is_err());
    }

    #[test]
    fn f_value_examples() {
        let p = params(0.0, 0.0);
        assert!((f_value(0.0, 0.0, 1.0, p).unwrap() - 0.28125).abs() < 1e-15);
        assert!((f_value(1.0, 1.0, 1.0, p).unwrap() - 0.6875).abs() < 1e-15);
        assert!((f_value(1.0, 0.0, 1.0, p).unwrap() - 0.421875).abs() < 1e-15);
        assert!(f_value(1.5, 0.0, 1.0, p).is_err());
        assert!(f_value(0.0, -0.1, 1.0, p).is_err());
    }

    #[test]
    fn edge_functions_match_f() {
        let t = t_coefficients(0.7, params(0.3, 0.2)).unwrap();
        for g in [0.0, 0.25, 0.5, 1.0] {
            assert!((t.edge_g(g) - t.f(0.0, g)).abs() < 1e-15);
            assert!((t.edge_h(g) - t.f(1.0, g)).abs() < 1e-15);
        }
        assert!((t.corner() - t.f(1.0, 1.0)).abs() < 1e-15);
    }

    #[test]
    fn k_values_examples() {
        let (k, _) = k_values(1.0, params(0.0, 0.0)).unwrap();
        assert!((k - 198.0 / 288.0).abs() < 1e-15);

        let (k, _) = k_values(2.0, params(0.0, 0.0)).unwrap();
        assert!((k - 1.5).abs() < 1e-15);

        // Constant term: K(0) = 4 T4(0).
        for (lambda, beta) in [(0.0, 0.0), (0.7, 0.4), (1.0, 0.9)] {
            let p = params(lambda, beta);
            let (k0, kp0) = k_values(0.0, p).unwrap();
            let t0 = t_coefficients(0.0, p).unwrap();
            assert!((k0 - 4.0 * t0.t4).abs() < 1e-15);
            assert_eq!(kp0, 0.0);
        }
    }

    #[test]
    fn critical_point_examples() {
        let c02 = critical_point(params(0.0, 0.8)).unwrap();
        assert!((c02 - 1.52585).abs() < 1e-5);
        assert!(c02 < 2.0);

        // Numerator negative, denominator positive: no real critical point.
        assert!(critical_point(params(0.0, 0.0)).is_none());

        // At the theorem threshold the critical point reaches the boundary.
        let thr = beta_threshold(0.0).unwrap().theorem;
        let c02 = critical_point(params(0.0, thr)).unwrap();
        assert!((c02 - 2.0).abs() < 1e-6);
    }

    #[test]
    fn case_classification_examples() {
        let p = case_classification(params(0.0, 0.2)).unwrap();
        assert_eq!(p.tag, CaseTag::Boundary);
        assert_eq!(p.argmax, 2.0);

        let p = case_classification(params(0.0, 0.8)).unwrap();
        assert_eq!(p.tag, CaseTag::Interior);
        assert!((p.argmax - 1.52585).abs() < 1e-5);

        // theorem threshold at lambda = 1 is 0, so any positive beta is interior.
        let p = case_classification(params(1.0, 0.5)).unwrap();
        assert_eq!(p.tag, CaseTag::Interior);
        assert!(p.argmax < 2.0);
    }
}
