//! Domain types shared by every layer of the crate.
//!
//! All types here are immutable value objects; every operation on them is
//! pure, so they can be shared and sent across threads freely.

use std::fmt;

use num_complex::Complex64;

use crate::{check_lambda, Error, Result};

/// Real Taylor data `(B1, B2, B3)` of a target function
/// `phi(z) = 1 + B1 z + B2 z^2 + B3 z^3 + ...` with `B1 > 0`.
///
/// The implemented bounds read only `B1` and `B2`; `B3` is stored for
/// completeness but unused. Analytic side conditions on `phi` (univalence,
/// starlikeness of the image about 1, symmetry about the real axis) are not
/// decidable from three coefficients and are not encoded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MindaPhi {
    b1: f64,
    b2: f64,
    b3: f64,
}

impl MindaPhi {
    pub fn new(b1: f64, b2: f64, b3: f64) -> Result<Self> {
        if !b1.is_finite() || b1 <= 0.0 {
            return Err(Error::domain("B1", "B1 > 0 and finite", b1));
        }
        if !b2.is_finite() {
            return Err(Error::domain("B2", "finite", b2));
        }
        if !b3.is_finite() {
            return Err(Error::domain("B3", "finite", b3));
        }
        Ok(MindaPhi { b1, b2, b3 })
    }

    pub fn b1(&self) -> f64 {
        self.b1
    }

    pub fn b2(&self) -> f64 {
        self.b2
    }

    pub fn b3(&self) -> f64 {
        self.b3
    }
}

/// Built-in choices of the target function `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiKind {
    /// `phi(z) = (1 + (1 - 2 beta) z) / (1 - z)`, the order-`beta` target:
    /// every coefficient equals `2 (1 - beta)`. Requires `0 <= beta < 1`.
    LinearOrder,
    /// `phi(z) = ((1 + z) / (1 - z))^beta`: `B1 = 2 beta`, `B2 = 2 beta^2`,
    /// `B3 = (2 beta / 3)(1 + 2 beta^2)`. Requires `0 < beta <= 1`.
    Power,
}

/// Construct one of the built-in target functions.
pub fn special_phi(kind: PhiKind, param: f64) -> Result<MindaPhi> {
    match kind {
        PhiKind::LinearOrder => {
            if !param.is_finite() || !(0.0..1.0).contains(&param) {
                return Err(Error::domain("phi param", "0 <= beta < 1", param));
            }
            let b = 2.0 * (1.0 - param);
            MindaPhi::new(b, b, b)
        }
        PhiKind::Power => {
            if !param.is_finite() || !(param > 0.0 && param <= 1.0) {
                return Err(Error::domain("phi param", "0 < beta <= 1", param));
            }
            let b3 = 2.0 * param / 3.0 * (1.0 + 2.0 * param * param);
            MindaPhi::new(2.0 * param, 2.0 * param * param, b3)
        }
    }
}

/// The pair `(lambda, beta)` selecting a subclass: `lambda` weights the
/// convex combination of `f'` and `1 + z f''/f'`, `beta` is the order of the
/// linear target. `0 <= lambda <= 1`, `0 <= beta < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassParams {
    lambda: f64,
    beta: f64,
}

impl ClassParams {
    pub fn new(lambda: f64, beta: f64) -> Result<Self> {
        check_lambda(lambda)?;
        if !beta.is_finite() || !(0.0..1.0).contains(&beta) {
            return Err(Error::domain("beta", "0 <= beta < 1", beta));
        }
        Ok(ClassParams { lambda, beta })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Taylor coefficients `(a2, a3, a4)` of a candidate function
/// `f(z) = z + a2 z^2 + a3 z^3 + a4 z^4 + ...` (`a1 = 1` implicit).
///
/// Coefficients are complex: the samplers produce genuinely complex tuples
/// even though the bound formulas consume only moduli.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorPrefix {
    pub a2: Complex64,
    pub a3: Complex64,
    pub a4: Complex64,
}

impl TaylorPrefix {
    pub fn new(a2: Complex64, a3: Complex64, a4: Complex64) -> Self {
        TaylorPrefix { a2, a3, a4 }
    }

    /// Prefix with real entries, convenient for tests and hand checks.
    pub fn from_real(a2: f64, a3: f64, a4: f64) -> Self {
        TaylorPrefix {
            a2: Complex64::new(a2, 0.0),
            a3: Complex64::new(a3, 0.0),
            a4: Complex64::new(a4, 0.0),
        }
    }
}

/// Coefficients `(A2, A3, A4)` of the inverse series
/// `g(w) = w + A2 w^2 + A3 w^3 + A4 w^4 + ...` of some [`TaylorPrefix`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseCoeffs {
    pub a2: Complex64,
    pub a3: Complex64,
    pub a4: Complex64,
}

/// Inverse-series coefficients of `f`:
/// `A2 = -a2`, `A3 = 2 a2^2 - a3`, `A4 = -(5 a2^3 - 5 a2 a3 + a4)`.
///
/// The composition `g(f(z))` then equals `z` through order 4, which
/// [`compose_prefix`] verifies by honest series arithmetic.
pub fn inverse_prefix(t: &TaylorPrefix) -> InverseCoeffs {
    let a2 = t.a2;
    let a3 = t.a3;
    let a4 = t.a4;
    InverseCoeffs {
        a2: -a2,
        a3: 2.0 * a2 * a2 - a3,
        a4: -(5.0 * a2 * a2 * a2 - 5.0 * a2 * a3 + a4),
    }
}

/// Multiply two degree-4 truncated series (index = degree).
fn mul4(a: &[Complex64; 5], b: &[Complex64; 5]) -> [Complex64; 5] {
    let mut out = [Complex64::new(0.0, 0.0); 5];
    for i in 0..5 {
        for j in 0..(5 - i) {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// Coefficients of `z^1 .. z^4` of the composition `g(f(z))`, where
/// `g(w) = w + g2 w^2 + g3 w^3 + g4 w^4` and `f(z) = z + f2 z^2 + f3 z^3 +
/// f4 z^4`, computed by truncated series multiplication.
///
/// This is the independent oracle for [`inverse_prefix`]: it never uses the
/// inverse-coefficient formulas, only polynomial arithmetic. For a correct
/// inverse the result is `[1, 0, 0, 0]`.
pub fn compose_prefix(g: &InverseCoeffs, f: &TaylorPrefix) -> [Complex64; 4] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let fpow1 = [zero, one, f.a2, f.a3, f.a4];
    let fpow2 = mul4(&fpow1, &fpow1);
    let fpow3 = mul4(&fpow2, &fpow1);
    let fpow4 = mul4(&fpow3, &fpow1);
    let mut out = [zero; 4];
    for d in 1..5 {
        out[d - 1] = fpow1[d] + g.a2 * fpow2[d] + g.a3 * fpow3[d] + g.a4 * fpow4[d];
    }
    out
}

/// First two coefficients `(b1, b2)` of a Schwarz function
/// `u(z) = b1 z + b2 z^2 + ...` (analytic self-map of the disk fixing 0),
/// so `|b1| <= 1` and `|b2| <= 1 - |b1|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwarzPrefix {
    b1: Complex64,
    b2: Complex64,
}

// Allows boundary samples (|b2| = 1 - |b1|^2) that land a rounding error
// outside the constraint.
const SCHWARZ_TOL: f64 = 1e-12;

impl SchwarzPrefix {
    pub fn new(b1: Complex64, b2: Complex64) -> Result<Self> {
        if !b1.is_finite() || b1.norm() > 1.0 + SCHWARZ_TOL {
            return Err(Error::domain("b1", "|b1| <= 1", b1.norm()));
        }
        let cap = 1.0 - b1.norm_sqr();
        if !b2.is_finite() || b2.norm() > cap + SCHWARZ_TOL {
            return Err(Error::domain("b2", "|b2| <= 1 - |b1|^2", b2.norm()));
        }
        Ok(SchwarzPrefix { b1, b2 })
    }

    pub fn b1(&self) -> Complex64 {
        self.b1
    }

    pub fn b2(&self) -> Complex64 {
        self.b2
    }
}

/// First three coefficients `(c1, c2, c3)` of a candidate Caratheodory
/// function `p(z) = 1 + c1 z + c2 z^2 + c3 z^3 + ...`.
///
/// `c1` is kept real in `[0, 2]`: rotation invariance of the class makes
/// this normalization lossless, and the maximization argument assumes it.
/// The constructor checks only the `c1` range and finiteness; genuine
/// membership of the triple in the Caratheodory coefficient body is decided
/// by [`crate::sampler::prefix_is_admissible`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaratheodoryPrefix {
    c1: f64,
    c2: Complex64,
    c3: Complex64,
}

impl CaratheodoryPrefix {
    pub fn new(c1: f64, c2: Complex64, c3: Complex64) -> Result<Self> {
        if !c1.is_finite() || !(0.0..=2.0).contains(&c1) {
            return Err(Error::domain("c1", "0 <= c1 <= 2", c1));
        }
        if !c2.is_finite() {
            return Err(Error::domain("c2", "finite", c2.norm()));
        }
        if !c3.is_finite() {
            return Err(Error::domain("c3", "finite", c3.norm()));
        }
        Ok(CaratheodoryPrefix { c1, c2, c3 })
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> Complex64 {
        self.c2
    }

    pub fn c3(&self) -> Complex64 {
        self.c3
    }
}

/// Free parameters `(x, z)` of the Grenander-Szego representation of a
/// Caratheodory prefix, both in the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrenanderParams {
    x: Complex64,
    z: Complex64,
}

impl GrenanderParams {
    pub fn new(x: Complex64, z: Complex64) -> Result<Self> {
        if !x.is_finite() || x.norm() > 1.0 + SCHWARZ_TOL {
            return Err(Error::domain("x", "|x| <= 1", x.norm()));
        }
        if !z.is_finite() || z.norm() > 1.0 + SCHWARZ_TOL {
            return Err(Error::domain("z", "|z| <= 1", z.norm()));
        }
        Ok(GrenanderParams { x, z })
    }

    pub fn x(&self) -> Complex64 {
        self.x
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }
}

/// Which piecewise branch of a bound formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// The formula has a single branch.
    Single,
    /// `B1` below the switch point; the constant branch of the `|a3|` bound.
    SmallB1,
    /// `B1` at or above the switch point.
    LargeB1,
    /// `|B2| <= B1`: the `B1`-dominant branch of the Fekete-Szego bounds.
    B1Dominant,
    /// `|B2| > B1`: the `B2`-dominant branch.
    B2Dominant,
    /// Hankel maximum attained on the boundary `c = 2`.
    BoundaryCase,
    /// Hankel maximum attained at the interior critical point.
    InteriorCase,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Single => "single",
            Branch::SmallB1 => "small-B1",
            Branch::LargeB1 => "large-B1",
            Branch::B1Dominant => "B1-dominant",
            Branch::B2Dominant => "B2-dominant",
            Branch::BoundaryCase => "boundary-case",
            Branch::InteriorCase => "interior-case",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A computed bound together with the branch that produced it and, for
/// piecewise formulas, the switch point that was compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub value: f64,
    pub branch: Branch,
    pub threshold: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn minda_phi_requires_positive_b1() {
        assert!(MindaPhi::new(2.0, 2.0, 2.0).is_ok());
        assert!(MindaPhi::new(0.0, 1.0, 0.0).is_err());
        assert!(MindaPhi::new(-1.0, 1.0, 0.0).is_err());
        assert!(MindaPhi::new(f64::NAN, 1.0, 0.0).is_err());
        assert!(MindaPhi::new(1.0, f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn class_params_domain() {
        assert!(ClassParams::new(0.0, 0.0).is_ok());
        assert!(ClassParams::new(1.0, 0.999).is_ok());
        assert!(ClassParams::new(1.1, 0.0).is_err());
        assert!(ClassParams::new(-0.1, 0.0).is_err());
        assert!(ClassParams::new(0.5, 1.0).is_err());
        assert!(ClassParams::new(0.5, -0.2).is_err());
    }

    #[test]
    fn special_phi_linear_order() {
        let phi = special_phi(PhiKind::LinearOrder, 0.25).unwrap();
        assert_eq!(phi.b1(), 1.5);
        assert_eq!(phi.b2(), 1.5);
        assert_eq!(phi.b3(), 1.5);
        assert!(special_phi(PhiKind::LinearOrder, 1.0).is_err());
        assert!(special_phi(PhiKind::LinearOrder, -0.1).is_err());
    }

    #[test]
    fn special_phi_power() {
        let phi = special_phi(PhiKind::Power, 0.5).unwrap();
        assert_eq!(phi.b1(), 1.0);
        assert_eq!(phi.b2(), 0.5);
        // (2 beta / 3)(1 + 2 beta^2) at beta = 1/2
        assert!((phi.b3() - 0.5).abs() < 1e-15);

        // Boundary case: the Koebe-type target has every coefficient 2.
        let phi = special_phi(PhiKind::Power, 1.0).unwrap();
        assert_eq!(phi.b1(), 2.0);
        assert_eq!(phi.b2(), 2.0);
        assert_eq!(phi.b3(), 2.0);

        assert!(special_phi(PhiKind::Power, 0.0).is_err());
        assert!(special_phi(PhiKind::Power, 1.01).is_err());
    }

    #[test]
    fn special_phi_satisfies_minda_invariant_on_domain() {
        for i in 0..100 {
            let beta = i as f64 / 100.0;
            assert!(special_phi(PhiKind::LinearOrder, beta).unwrap().b1() > 0.0);
        }
        for i in 1..=100 {
            let beta = i as f64 / 100.0;
            assert!(special_phi(PhiKind::Power, beta).unwrap().b1() > 0.0);
        }
    }

    #[test]
    fn inverse_prefix_examples() {
        let id = inverse_prefix(&TaylorPrefix::from_real(0.0, 0.0, 0.0));
        assert_eq!(id.a2, c(0.0, 0.0));
        assert_eq!(id.a3, c(0.0, 0.0));
        assert_eq!(id.a4, c(0.0, 0.0));

        let koebe = inverse_prefix(&TaylorPrefix::from_real(2.0, 3.0, 4.0));
        assert_eq!(koebe.a2, c(-2.0, 0.0));
        assert_eq!(koebe.a3, c(5.0, 0.0));
        assert_eq!(koebe.a4, c(-14.0, 0.0));

        let e = inverse_prefix(&TaylorPrefix::from_real(1.0, 0.0, 0.0));
        assert_eq!(e.a2, c(-1.0, 0.0));
        assert_eq!(e.a3, c(2.0, 0.0));
        assert_eq!(e.a4, c(-5.0, 0.0));
    }

    #[test]
    fn composition_recovers_identity() {
        for t in [
            TaylorPrefix::from_real(0.0, 0.0, 0.0),
            TaylorPrefix::from_real(2.0, 3.0, 4.0),
            TaylorPrefix::from_real(1.0, 0.0, 0.0),
            TaylorPrefix::new(c(0.3, -0.8), c(-1.2, 0.4), c(0.0, 2.5)),
        ] {
            let g = inverse_prefix(&t);
            let comp = compose_prefix(&g, &t);
            assert!((comp[0] - c(1.0, 0.0)).norm() < 1e-12);
            for coeff in &comp[1..] {
                assert!(coeff.norm() < 1e-12, "residual {coeff}");
            }
        }
    }

    #[test]
    fn schwarz_prefix_constraints() {
        assert!(SchwarzPrefix::new(c(0.5, 0.0), c(0.75, 0.0)).is_ok());
        assert!(SchwarzPrefix::new(c(0.5, 0.0), c(0.76, 0.0)).is_err());
        assert!(SchwarzPrefix::new(c(1.0, 0.1), c(0.0, 0.0)).is_err());
        assert!(SchwarzPrefix::new(c(1.0, 0.0), c(0.0, 0.0)).is_ok());
    }

    #[test]
    fn caratheodory_prefix_c1_range() {
        assert!(CaratheodoryPrefix::new(2.0, c(2.0, 0.0), c(2.0, 0.0)).is_ok());
        assert!(CaratheodoryPrefix::new(-0.1, c(0.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(CaratheodoryPrefix::new(2.1, c(0.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn grenander_params_disk() {
        assert!(GrenanderParams::new(c(0.6, 0.8), c(0.0, -1.0)).is_ok());
        assert!(GrenanderParams::new(c(0.8, 0.8), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn branch_labels() {
        assert_eq!(Branch::BoundaryCase.to_string(), "boundary-case");
        assert_eq!(Branch::SmallB1.to_string(), "small-B1");
    }
}
