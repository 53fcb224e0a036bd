//! `biuniv bounds`: every implemented bound at a single point, as JSON.

use serde::Serialize;

use biuniv::bounds::{
    a2_bound, a3_bound, beta_threshold, fekete_a2_bound, fekete_functional_bound, hankel2_bound,
};
use biuniv::types::{special_phi, BoundReport, ClassParams, MindaPhi, PhiKind};

use crate::args::{BoundsArgs, Format, PhiKindArg};
use crate::fmt::{emit, round_sig12};

#[derive(Serialize)]
struct PhiOut {
    b1: f64,
    b2: f64,
    b3: f64,
}

#[derive(Serialize)]
struct EntryOut {
    value: f64,
    branch: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<f64>,
}

impl From<BoundReport> for EntryOut {
    fn from(r: BoundReport) -> Self {
        EntryOut {
            value: round_sig12(r.value),
            branch: r.branch.as_str(),
            threshold: r.threshold.map(round_sig12),
        }
    }
}

#[derive(Serialize)]
struct FeketeOut {
    value: f64,
    branch: &'static str,
    delta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<f64>,
}

#[derive(Serialize)]
struct ThresholdOut {
    theorem: f64,
    proof: f64,
}

#[derive(Serialize)]
struct BoundsReportOut {
    lambda: f64,
    beta: f64,
    phi: PhiOut,
    a2_bound: EntryOut,
    a3_bound: EntryOut,
    fekete_a2_bound: EntryOut,
    fekete_functional_bound: FeketeOut,
    hankel2_bound: EntryOut,
    beta_threshold: ThresholdOut,
}

fn build_phi(args: &BoundsArgs) -> Result<MindaPhi, String> {
    if let (Some(b1), Some(b2)) = (args.phi_b1, args.phi_b2) {
        // B3 is not read by any implemented bound; custom targets carry 0.
        return MindaPhi::new(b1, b2, 0.0).map_err(|e| e.to_string());
    }
    match args.phi_kind {
        Some(kind) => {
            let param = args
                .phi_param
                .ok_or_else(|| "--phi-kind requires --phi-param".to_string())?;
            let kind = match kind {
                PhiKindArg::Linear => PhiKind::LinearOrder,
                PhiKindArg::Power => PhiKind::Power,
            };
            special_phi(kind, param).map_err(|e| e.to_string())
        }
        None => special_phi(PhiKind::LinearOrder, args.beta).map_err(|e| e.to_string()),
    }
}

pub fn run(args: BoundsArgs) -> Result<(), String> {
    if args.format != Format::Json {
        return Err("bounds reports are JSON; use --format json".into());
    }
    let params = ClassParams::new(args.lambda, args.beta).map_err(|e| e.to_string())?;
    let phi = build_phi(&args)?;
    let lambda = params.lambda();

    let a2 = a2_bound(&phi, lambda).map_err(|e| e.to_string())?;
    let a3 = a3_bound(&phi, lambda).map_err(|e| e.to_string())?;
    let f2 = fekete_a2_bound(&phi, lambda).map_err(|e| e.to_string())?;
    let (ff, delta) = fekete_functional_bound(&phi, lambda).map_err(|e| e.to_string())?;
    let h2 = hankel2_bound(params).map_err(|e| e.to_string())?;
    let thr = beta_threshold(lambda).map_err(|e| e.to_string())?;

    let report = BoundsReportOut {
        lambda: round_sig12(lambda),
        beta: round_sig12(params.beta()),
        phi: PhiOut {
            b1: round_sig12(phi.b1()),
            b2: round_sig12(phi.b2()),
            b3: round_sig12(phi.b3()),
        },
        a2_bound: a2.into(),
        a3_bound: a3.into(),
        fekete_a2_bound: f2.into(),
        fekete_functional_bound: FeketeOut {
            value: round_sig12(ff.value),
            branch: ff.branch.as_str(),
            delta: round_sig12(delta),
            threshold: ff.threshold.map(round_sig12),
        },
        hankel2_bound: h2.into(),
        beta_threshold: ThresholdOut {
            theorem: round_sig12(thr.theorem),
            proof: round_sig12(thr.proof),
        },
    };

    let json = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    emit(args.output.as_deref(), &format!("{json}\n"))
}
