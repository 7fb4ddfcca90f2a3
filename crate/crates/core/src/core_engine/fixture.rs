use serde::Serialize;

use crate::error::Result;
use crate::ideal::Ideal;
use crate::kernel::Ring;
use crate::reduction::{check_g_s, reduction_number, Sampler, R_MAX};

use super::{core_probabilistic, CoreOptions};
use super::verify::{contained_in_reductions, radicals_agree};

/// One sampled principal reduction `(lambda u + mu v)`.
#[derive(Clone, Debug, Serialize)]
pub struct SampledPrincipal {
    pub lambda: String,
    pub mu: String,
    /// `uw ∈ (lambda u + mu v) R_m`
    pub local_uw: bool,
    pub r: usize,
}

/// The counterexample `R = k[U,V,W]/(U^2+V^2, VW)`, `I = (u, v)`.
#[derive(Clone, Debug, Serialize)]
pub struct Fixture411Report {
    pub i2_equals_meet: bool,
    pub uw_in_i2: bool,
    pub g1_violated: bool,
    pub samples: Vec<SampledPrincipal>,
    /// `I^2 ⊆ I`, radical equality and `I^2 ⊆ (u), (v)`.
    pub i2_checks_pass: bool,
    /// Output of the probabilistic pipeline run with `force`.
    pub forced_core: Vec<String>,
    pub forced_core_equals_i2: bool,
}

impl Fixture411Report {
    /// Every general principal reduction contains `uw`, which is not in
    /// `I^2 = (u) ∩ (v)`, so the intersection of general principal
    /// reductions is strictly larger than `I^2`.
    pub fn reproduces_failure(&self) -> bool {
        self.i2_equals_meet
            && !self.uw_in_i2
            && self.g1_violated
            && self.i2_checks_pass
            && !self.forced_core_equals_i2
            && !self.samples.is_empty()
            && self.samples.iter().all(|s| s.local_uw && s.r == 1)
    }
}

pub fn fixture_ring() -> Result<Ring> {
    let r = Ring::rational(&["U", "V", "W"]);
    r.with_quotient(&[r.parse("U^2 + V^2")?, r.parse("V*W")?])
}

pub fn core_negative_fixture_4_11(seed: u64, samples: usize) -> Result<Fixture411Report> {
    let q = fixture_ring()?;
    let i = Ideal::parse(&q, &["U", "V"])?;
    let u = Ideal::parse(&q, &["U"])?;
    let v = Ideal::parse(&q, &["V"])?;
    let i2 = i.power(2)?;
    let i2_equals_meet = i2.equals(&u.intersection(&v)?)?;
    let uw = q.parse("U*W")?;
    let uw_in_i2 = i2.contains(&uw)?;
    let g1_violated = !check_g_s(&i, 1)?.satisfied;
    let i2_checks_pass =
        i.contains_ideal(&i2)? && radicals_agree(&i, &i2)? && contained_in_reductions(&i2, &[u, v])?;

    let mut sampler = Sampler::new(seed, q.field());
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let (lambda, mu) = (sampler.coeff(), sampler.coeff());
        if lambda.is_zero() || mu.is_zero() {
            continue;
        }
        let gen = i.generators()[0].scale(&lambda).add(&i.generators()[1].scale(&mu))?;
        let j = Ideal::new(&q, vec![gen])?;
        let local_uw = j.local_contains(&uw)?;
        let (r, _) = reduction_number(&i, &j, R_MAX)?;
        out.push(SampledPrincipal {
            lambda: lambda.to_string(),
            mu: mu.to_string(),
            local_uw,
            r,
        });
    }
    let opts = CoreOptions {
        seed,
        force: true,
        ..CoreOptions::default()
    };
    let forced = core_probabilistic(&i, &opts)?.core;
    let forced_core_equals_i2 = forced.equals(&i2)?;
    Ok(Fixture411Report {
        forced_core: forced.generators().iter().map(|g| g.to_string()).collect(),
        forced_core_equals_i2,
        i2_equals_meet,
        uw_in_i2,
        g1_violated,
        samples: out,
        i2_checks_pass,
    })
}
