//! The verification suite behind `biuniv verify`.
//!
//! Each check scans a lattice (or a sampling stream) and reports the worst
//! violation margin it saw: a margin at or below zero means the check passed
//! with that much slack, a positive margin is a violation and the witness
//! coordinates point at it. Reductions are two-pass over deterministically
//! ordered candidates, so results do not depend on the worker count.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use biuniv::bounds::{
    a2_bound, a3_bound, beta_threshold, corollary_bounds, fekete_a2_bound, fekete_functional_bound,
    hankel2_bound, interior_denominator, CorollaryKind,
};
use biuniv::oracle::{hankel_bound_oracle, maximize_f_on_square, maximize_k_on_interval};
use biuniv::proof::{case_classification, k_values, t_coefficients};
use biuniv::sampler::{
    fekete_functional, hankel2_functional, prefix_is_admissible, sample_caratheodory_prefix,
    sample_pair, sample_schwarz_prefix, schwarz_pair,
};
use biuniv::types::{special_phi, ClassParams, PhiKind, TaylorPrefix};

use crate::fmt::round_sig12;

type Witness = BTreeMap<&'static str, f64>;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: &'static str,
    pub pass: bool,
    /// Worst violation margin: <= 0 passed with that slack, > 0 violated.
    pub worst_residual: f64,
    pub witness: Witness,
}

impl CheckResult {
    fn from_worst(check: &'static str, candidates: Vec<(f64, Witness)>) -> Self {
        let (worst_residual, witness) =
            candidates
                .into_iter()
                .fold((f64::NEG_INFINITY, Witness::new()), |acc, item| {
                    if item.0 > acc.0 {
                        item
                    } else {
                        acc
                    }
                });
        CheckResult {
            check,
            pass: worst_residual <= 0.0,
            worst_residual: round_sig12(worst_residual),
            witness: witness
                .into_iter()
                .map(|(k, v)| (k, round_sig12(v)))
                .collect(),
        }
    }
}

pub struct VerifyConfig {
    /// Lattice for the oracle and sampler checks.
    pub lattice_lambdas: Vec<f64>,
    pub lattice_betas: Vec<f64>,
    /// Denser lattice for the sign/consistency checks.
    pub sign_lambdas: Vec<f64>,
    pub sign_betas: Vec<f64>,
    /// Intervals of the `c` grid on `[0, 2]`.
    pub c_intervals: usize,
    pub resolution: f64,
    pub samples: u64,
    pub seed: u64,
}

impl VerifyConfig {
    fn c_grid(&self) -> Vec<f64> {
        (0..=self.c_intervals)
            .map(|i| 2.0 * i as f64 / self.c_intervals as f64)
            .collect()
    }

    fn sign_cells(&self) -> Vec<ClassParams> {
        let mut cells = Vec::new();
        for &lambda in &self.sign_lambdas {
            for &beta in &self.sign_betas {
                cells.push(ClassParams::new(lambda, beta).expect("domain-checked grid"));
            }
        }
        cells
    }

    fn lattice_cells(&self) -> Vec<(usize, ClassParams)> {
        let mut cells = Vec::new();
        for (i, &lambda) in self.lattice_lambdas.iter().enumerate() {
            for (j, &beta) in self.lattice_betas.iter().enumerate() {
                cells.push((
                    i * self.lattice_betas.len() + j,
                    ClassParams::new(lambda, beta).expect("domain-checked grid"),
                ));
            }
        }
        cells
    }

    fn stream_rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

fn witness3(lambda: f64, beta: f64, c: f64) -> Witness {
    Witness::from([("lambda", lambda), ("beta", beta), ("c", c)])
}

/// Signs of the expansion coefficients: `T1, T2, T4 >= 0`, `T3 <= 0`,
/// `T3 + 2 T4 > 0` on the open interval, `T2 + T3 + 3 T4 >= 0` (edge
/// ordering G(1) <= H(1)) and `T2 + 2 (T3 + T4) >= 0` (the slope claim the
/// case analysis relies on).
pub fn t_sign_suite(cfg: &VerifyConfig) -> CheckResult {
    let c_grid = cfg.c_grid();
    let candidates: Vec<(f64, Witness)> = cfg
        .sign_cells()
        .par_iter()
        .map(|&p| {
            let mut worst = f64::NEG_INFINITY;
            let mut at = 0.0;
            for &c in &c_grid {
                let t = t_coefficients(c, p).expect("c grid in range");
                let mut margin = (-t.t1).max(-t.t2).max(-t.t4).max(t.t3);
                if c > 0.0 && c < 2.0 {
                    margin = margin.max(-(t.t3 + 2.0 * t.t4));
                }
                margin = margin
                    .max(-(t.t2 + t.t3 + 3.0 * t.t4))
                    .max(-(t.t2 + 2.0 * (t.t3 + t.t4)));
                if margin > worst {
                    worst = margin;
                    at = c;
                }
            }
            (worst, witness3(p.lambda(), p.beta(), at))
        })
        .collect();
    CheckResult::from_worst("t-sign-suite", candidates)
}

/// The expanded polynomial `K` against the reassembled `T1 + 2 T2 + 2 T3 +
/// 4 T4` (1e-12 relative) and `K'` against a central difference of `K`
/// (1e-6) across the lattice.
pub fn k_consistency(cfg: &VerifyConfig) -> CheckResult {
    let c_grid = cfg.c_grid();
    let h = 1e-5;
    let candidates: Vec<(f64, Witness)> = cfg
        .sign_cells()
        .par_iter()
        .map(|&p| {
            let mut worst = f64::NEG_INFINITY;
            let mut at = 0.0;
            for &c in &c_grid {
                let (k, kp) = k_values(c, p).expect("c grid in range");
                let t = t_coefficients(c, p).expect("c grid in range");
                let assembled = t.t1 + 2.0 * t.t2 + 2.0 * t.t3 + 4.0 * t.t4;
                let mut margin = (k - assembled).abs() - 1e-12 * (1.0 + k.abs());
                if c >= h && c <= 2.0 - h {
                    let fd = (k_values(c + h, p).expect("in range").0
                        - k_values(c - h, p).expect("in range").0)
                        / (2.0 * h);
                    margin = margin.max((kp - fd).abs() - 1e-6);
                }
                if margin > worst {
                    worst = margin;
                    at = c;
                }
            }
            (worst, witness3(p.lambda(), p.beta(), at))
        })
        .collect();
    CheckResult::from_worst("k-consistency", candidates)
}

/// Where the interior case applies, the critical point lies in `(0, 2)` and
/// `K''(c02) < 0` (second-order condition, by central second difference).
pub fn k_concavity(cfg: &VerifyConfig) -> CheckResult {
    let h = 1e-4;
    let candidates: Vec<(f64, Witness)> = cfg
        .sign_cells()
        .par_iter()
        .filter_map(|&p| {
            let thr = beta_threshold(p.lambda()).expect("lambda in range").theorem;
            if p.beta() <= thr {
                return None;
            }
            let prediction = match case_classification(p) {
                Ok(pred) => pred,
                Err(_) => {
                    // Interior predicted but no critical point: hard failure.
                    return Some((f64::INFINITY, witness3(p.lambda(), p.beta(), f64::NAN)));
                }
            };
            let c02 = prediction.argmax;
            let k = |c: f64| k_values(c, p).expect("in range").0;
            let second = (k(c02 + h) - 2.0 * k(c02) + k(c02 - h)) / (h * h);
            let margin = second.max(c02 - 2.0).max(-c02);
            Some((margin, witness3(p.lambda(), p.beta(), c02)))
        })
        .collect();
    CheckResult::from_worst("k-concavity", candidates)
}

/// The boundary and interior Hankel formulas agree at the branch switch
/// point (straddled by 1e-9 in beta) to 1e-8, for 101 lambdas.
pub fn branch_continuity(_cfg: &VerifyConfig) -> CheckResult {
    let candidates: Vec<(f64, Witness)> = (0..=100)
        .into_par_iter()
        .map(|i| {
            let lambda = i as f64 / 100.0;
            let thr = beta_threshold(lambda).expect("in range").theorem;
            let lo = hankel2_bound(ClassParams::new(lambda, thr).expect("threshold in [0,1)"))
                .expect("boundary branch")
                .value;
            let hi_beta = (thr + 1e-9).min(1.0 - 1e-12);
            let hi = hankel2_bound(ClassParams::new(lambda, hi_beta).expect("in range"))
                .expect("interior branch")
                .value;
            let margin = (lo - hi).abs() - 1e-8;
            (
                margin,
                Witness::from([("lambda", lambda), ("threshold", thr)]),
            )
        })
        .collect();
    CheckResult::from_worst("hankel-branch-continuity", candidates)
}

/// The general Hankel bound equals the simplified endpoint formulas at
/// `lambda = 0` and `lambda = 1` on a 100-point beta grid, to 1e-10.
pub fn corollary_consistency(_cfg: &VerifyConfig) -> CheckResult {
    let candidates: Vec<(f64, Witness)> = (0..100)
        .into_par_iter()
        .map(|i| {
            let beta = i as f64 / 100.0;
            let mut margin = f64::NEG_INFINITY;
            let mut at_lambda = 0.0;
            for (lambda, kind) in [(0.0, CorollaryKind::HBeta), (1.0, CorollaryKind::KBeta)] {
                let p = ClassParams::new(lambda, beta).expect("in range");
                let h = hankel2_bound(p).expect("in range").value;
                let c = corollary_bounds(p, kind).expect("matching params").value;
                let m = (h - c).abs() - 1e-10;
                if m > margin {
                    margin = m;
                    at_lambda = lambda;
                }
            }
            (
                margin,
                Witness::from([("lambda", at_lambda), ("beta", beta)]),
            )
        })
        .collect();
    CheckResult::from_worst("corollary-consistency", candidates)
}

/// The interior denominator stays away from zero on the interior region
/// (scanned densely), so the interior formula never divides by ~0.
pub fn interior_denominator_scan(_cfg: &VerifyConfig) -> CheckResult {
    let candidates: Vec<(f64, Witness)> = (0..=100)
        .into_par_iter()
        .map(|i| {
            let lambda = i as f64 / 100.0;
            let thr = beta_threshold(lambda).expect("in range").theorem;
            let mut worst = f64::NEG_INFINITY;
            let mut at = f64::NAN;
            for j in 0..1000 {
                let beta = j as f64 / 1000.0;
                if beta <= thr {
                    continue;
                }
                let p = ClassParams::new(lambda, beta).expect("in range");
                let margin = 1e-9 - interior_denominator(p).abs();
                // The error path must agree with the scan.
                if hankel2_bound(p).is_err() {
                    worst = f64::INFINITY;
                    at = beta;
                    break;
                }
                if margin > worst {
                    worst = margin;
                    at = beta;
                }
            }
            (worst, Witness::from([("lambda", lambda), ("beta", at)]))
        })
        .collect();
    CheckResult::from_worst("interior-denominator", candidates)
}

/// Brute-force Hankel oracle against the closed form:
/// `|oracle - closed| <= 5 res^2 + 1e-8` on the lattice.
pub fn oracle_agreement(cfg: &VerifyConfig) -> CheckResult {
    let res = cfg.resolution;
    let tol = 5.0 * res * res + 1e-8;
    let candidates: Vec<(f64, Witness)> = cfg
        .lattice_cells()
        .par_iter()
        .map(|&(_, p)| {
            let oracle = hankel_bound_oracle(p, res)
                .expect("resolution validated")
                .max_value;
            let closed = hankel2_bound(p).expect("in range").value;
            let margin = (oracle - closed).abs() - tol;
            (
                margin,
                Witness::from([
                    ("lambda", p.lambda()),
                    ("beta", p.beta()),
                    ("oracle", oracle),
                    ("closed_form", closed),
                ]),
            )
        })
        .collect();
    CheckResult::from_worst("oracle-agreement", candidates)
}

/// The brute-force argmax of `K` lands where the case analysis predicts
/// (within `2 res`).
pub fn argmax_agreement(cfg: &VerifyConfig) -> CheckResult {
    let res = cfg.resolution;
    let candidates: Vec<(f64, Witness)> = cfg
        .lattice_cells()
        .par_iter()
        .map(|&(_, p)| {
            let found = maximize_k_on_interval(p, res)
                .expect("resolution validated")
                .argmax[0];
            match case_classification(p) {
                Ok(pred) => {
                    let margin = (found - pred.argmax).abs() - 2.0 * res;
                    (
                        margin,
                        Witness::from([
                            ("lambda", p.lambda()),
                            ("beta", p.beta()),
                            ("argmax", found),
                            ("predicted", pred.argmax),
                        ]),
                    )
                }
                Err(_) => (
                    f64::INFINITY,
                    Witness::from([("lambda", p.lambda()), ("beta", p.beta())]),
                ),
            }
        })
        .collect();
    CheckResult::from_worst("argmax-agreement", candidates)
}

/// The square maximum of `F` is attained at the corner `(1, 1)` for every
/// interior `c` (within one refinement step).
pub fn corner_dominance(cfg: &VerifyConfig) -> CheckResult {
    let res = cfg.resolution.min(0.05);
    let tol = res / 100.0;
    let c_interior: Vec<f64> = cfg
        .c_grid()
        .into_iter()
        .filter(|&c| c > 0.0 && c < 2.0)
        .collect();
    let candidates: Vec<(f64, Witness)> = cfg
        .sign_cells()
        .par_iter()
        .map(|&p| {
            let mut worst = f64::NEG_INFINITY;
            let mut at = 0.0;
            for &c in &c_interior {
                let r = maximize_f_on_square(c, p, res).expect("resolution validated");
                let margin = (r.argmax[0] - 1.0).abs().max((r.argmax[1] - 1.0).abs()) - tol;
                if margin > worst {
                    worst = margin;
                    at = c;
                }
            }
            (worst, witness3(p.lambda(), p.beta(), at))
        })
        .collect();
    CheckResult::from_worst("corner-dominance", candidates)
}

/// One-sided Hankel check over accepted Caratheodory pairs: the functional
/// never exceeds the closed-form bound (+1e-9), and the six defining
/// equations hold to 1e-10 on every accepted pair.
pub fn sampler_hankel(cfg: &VerifyConfig) -> CheckResult {
    let target = cfg.samples;
    let cap = target.saturating_mul(50);
    let candidates: Vec<(f64, Witness)> = cfg
        .lattice_cells()
        .par_iter()
        .map(|&(cell, p)| {
            let bound = hankel2_bound(p).expect("in range").value;
            let mut rng = cfg.stream_rng(cell as u64);
            let mut accepted = 0u64;
            let mut draws = 0u64;
            let mut worst = f64::NEG_INFINITY;
            let mut empirical_max: f64 = 0.0;
            while accepted < target && draws < cap {
                draws += 1;
                if let Some(pair) = sample_pair(&mut rng, p) {
                    accepted += 1;
                    let value = hankel2_functional(&pair.taylor);
                    empirical_max = empirical_max.max(value);
                    worst = worst
                        .max(value - (bound + 1e-9))
                        .max(pair.system_residual() - 1e-10);
                }
            }
            if accepted < target {
                // Rejection sampling starved; report as a failure.
                worst = f64::INFINITY;
            }
            (
                worst,
                Witness::from([
                    ("lambda", p.lambda()),
                    ("beta", p.beta()),
                    ("bound", bound),
                    ("empirical_max", empirical_max),
                    ("accepted", accepted as f64),
                ]),
            )
        })
        .collect();
    CheckResult::from_worst("sampler-hankel-onesided", candidates)
}

/// One-sided initial-coefficient and Fekete-Szego checks over Schwarz draws
/// against the order-`beta` target: `|a2|` under both `|a2|` bounds, the
/// functional under its bound, and `|a3|` (reconstructed through the
/// difference relation, cross-checked against the direct assembly) under
/// the `|a3|` bound.
pub fn sampler_fekete(cfg: &VerifyConfig) -> CheckResult {
    let candidates: Vec<(f64, Witness)> = cfg
        .lattice_cells()
        .par_iter()
        .map(|&(cell, p)| {
            let lambda = p.lambda();
            let phi = special_phi(PhiKind::LinearOrder, p.beta()).expect("beta in range");
            let b_a2 = a2_bound(&phi, lambda).expect("in range").value;
            let b_a3 = a3_bound(&phi, lambda).expect("in range").value;
            let b_f2 = fekete_a2_bound(&phi, lambda).expect("in range").value;
            let (b_ff, delta) = fekete_functional_bound(&phi, lambda).expect("in range");

            let mut rng = cfg.stream_rng(10_000 + cell as u64);
            let mut worst = f64::NEG_INFINITY;
            let mut accepted = 0u64;
            for _ in 0..cfg.samples {
                let b = sample_schwarz_prefix(&mut rng);
                let Some(s) = schwarz_pair(&b, &phi, lambda).expect("lambda in range") else {
                    continue;
                };
                accepted += 1;
                let a3_alt = s.a2 * s.a2 + phi.b1() * (b.b2() - s.s2) / (6.0 * (1.0 + lambda));
                let t = TaylorPrefix::new(s.a2, s.a3, num_complex::Complex64::new(0.0, 0.0));
                worst = worst
                    .max(s.a2.norm() - (b_a2 + 1e-9))
                    .max(s.a2.norm() - (b_f2 + 1e-9))
                    .max(fekete_functional(&t, delta) - (b_ff.value + 1e-9))
                    .max(a3_alt.norm() - (b_a3 + 1e-9))
                    .max((a3_alt - s.a3).norm() - 1e-10);
            }
            if accepted == 0 {
                worst = f64::INFINITY;
            }
            (
                worst,
                Witness::from([
                    ("lambda", lambda),
                    ("beta", p.beta()),
                    ("accepted", accepted as f64),
                ]),
            )
        })
        .collect();
    CheckResult::from_worst("sampler-fekete-onesided", candidates)
}

/// Round trip of the coefficient-body representation: every generated
/// prefix passes the membership test with nonnegative slack and obeys the
/// classical coefficient estimates.
pub fn lemma_roundtrip(cfg: &VerifyConfig) -> CheckResult {
    let mut rng = cfg.stream_rng(20_000);
    let mut worst = f64::NEG_INFINITY;
    let mut at_c1 = 0.0;
    for _ in 0..cfg.samples {
        let p = sample_caratheodory_prefix(&mut rng);
        let r = prefix_is_admissible(&p);
        let half = p.c1() * p.c1() / 2.0;
        let margin = (-r.x_slack)
            .max(-r.z_slack)
            .max(p.c2().norm() - 2.0)
            .max(p.c3().norm() - 2.0)
            .max((p.c2() - half).norm() - (2.0 - half))
            - 1e-12;
        if margin > worst {
            worst = margin;
            at_c1 = p.c1();
        }
    }
    CheckResult::from_worst(
        "lemma-roundtrip",
        vec![(worst, Witness::from([("c1", at_c1)]))],
    )
}

pub type CheckFn = fn(&VerifyConfig) -> CheckResult;

/// Every check, in reporting order.
pub fn all_checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("t-sign-suite", t_sign_suite),
        ("k-consistency", k_consistency),
        ("k-concavity", k_concavity),
        ("hankel-branch-continuity", branch_continuity),
        ("corollary-consistency", corollary_consistency),
        ("interior-denominator", interior_denominator_scan),
        ("oracle-agreement", oracle_agreement),
        ("argmax-agreement", argmax_agreement),
        ("corner-dominance", corner_dominance),
        ("sampler-hankel-onesided", sampler_hankel),
        ("sampler-fekete-onesided", sampler_fekete),
        ("lemma-roundtrip", lemma_roundtrip),
    ]
}
