//! The two core pipelines, their cross-check and the invariant suite.

mod deterministic;
mod fixture;
mod probabilistic;
mod verify;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::reduction::{classify_hypotheses, HypothesisReport, ReductionCertificate, Sampler, R_MAX};

pub use deterministic::{build_universal, core_deterministic, generic_ideal, UniversalSetup, Variant};
pub use fixture::{core_negative_fixture_4_11, fixture_ring, Fixture411Report, SampledPrincipal};
pub use probabilistic::core_probabilistic;
pub use verify::{contained_in_reductions, radicals_agree, verify_core, CheckOutcome};

/// Default cap on the number of intersected reductions.
pub const T_MAX: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Probabilistic,
    Deterministic,
    Both,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Probabilistic => "probabilistic",
            Method::Deterministic => "deterministic",
            Method::Both => "both",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoreOptions {
    pub seed: u64,
    pub t_max: usize,
    pub r_max: usize,
    pub exponent: Option<usize>,
    pub variant: Variant,
    /// Run even when the hypothesis classifier reports a violation.
    pub force: bool,
    /// Consecutive unchanged intersections required to stop.
    pub stable_rounds: usize,
    /// Fresh reductions used by the containment check of the verifier.
    pub verify_samples: usize,
}

impl Default for CoreOptions {
    fn default() -> Self {
        CoreOptions {
            seed: 0,
            t_max: T_MAX,
            r_max: R_MAX,
            exponent: None,
            variant: Variant::FPower,
            force: false,
            stable_rounds: 1,
            verify_samples: 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoreResult {
    pub core: Ideal,
    pub method: Method,
    pub t_used: Option<usize>,
    pub exponent_used: Option<usize>,
    pub seed: u64,
    pub certificates: Vec<ReductionCertificate>,
    pub checks: BTreeMap<String, CheckOutcome>,
    pub hypotheses: HypothesisReport,
    /// False when hypotheses fail or the pipelines disagree.
    pub certified: bool,
    /// Both pipeline outputs when they disagree.
    pub candidates: Vec<(Method, Ideal)>,
}

impl CoreResult {
    pub fn checks_pass(&self) -> bool {
        self.checks.values().all(|c| *c != CheckOutcome::Fail)
    }
}

/// Classifies `i` and refuses to continue on a violation unless forced.
pub(crate) fn hypotheses_gate(i: &Ideal, opts: &CoreOptions) -> Result<HypothesisReport> {
    let rep = classify_hypotheses(i)?;
    if rep.violated() && !opts.force {
        return Err(Error::HypothesisViolation(format!(
            "I does not satisfy G_{} (pass --force to run anyway)",
            rep.ell
        )));
    }
    Ok(rep)
}

/// Runs the requested pipeline(s) and the invariant suite.
pub fn compute_core(i: &Ideal, method: Method, opts: &CoreOptions) -> Result<CoreResult> {
    let mut res = match method {
        Method::Probabilistic => core_probabilistic(i, opts)?,
        Method::Deterministic => core_deterministic(i, opts)?,
        Method::Both => {
            let p = core_probabilistic(i, opts)?;
            let d = core_deterministic(i, opts)?;
            let agree = p.core.equals(&d.core)?;
            let mut res = CoreResult {
                core: d.core.clone(),
                method: Method::Both,
                t_used: p.t_used,
                exponent_used: d.exponent_used,
                seed: opts.seed,
                certificates: p.certificates,
                checks: BTreeMap::new(),
                hypotheses: d.hypotheses,
                certified: p.certified && d.certified && agree,
                candidates: Vec::new(),
            };
            res.checks.insert(
                "pipelines_agree".into(),
                if agree { CheckOutcome::Pass } else { CheckOutcome::Fail },
            );
            if !agree {
                res.candidates = vec![(Method::Probabilistic, p.core), (Method::Deterministic, d.core)];
            }
            res
        }
    };
    let mut sampler = Sampler::new(opts.seed ^ 0x5eed_5eed, i.ring().field());
    let vseed = sampler.fork();
    let checks = verify_core(i, &res.core, opts.verify_samples, vseed, opts.r_max)?;
    res.checks.extend(checks);
    if !res.checks_pass() {
        res.certified = false;
    }
    Ok(res)
}
