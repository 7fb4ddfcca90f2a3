use std::collections::BTreeMap;

use crate::core_engine::{hypotheses_gate, CoreOptions, CoreResult, Method};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::reduction::{sample_general_reduction, Sampler};

/// Generators homogeneous of one common degree, so general combinations are
/// homogeneous and equal to their own local contraction.
fn equigenerated_graded(i: &Ideal) -> bool {
    let degs: Vec<Option<u32>> = i.generators().iter().map(|g| g.degree()).collect();
    i.is_homogeneous() && degs.windows(2).all(|w| w[0] == w[1])
}

/// Intersects local contractions of general reductions until one more
/// reduction leaves the intersection unchanged.
pub fn core_probabilistic(i: &Ideal, opts: &CoreOptions) -> Result<CoreResult> {
    let i = &i.minimalized()?;
    let hyp = hypotheses_gate(i, opts)?;
    let m_primary = i.is_m_primary()?;
    if !m_primary && !equigenerated_graded(i) {
        return Err(Error::Unsupported(
            "the probabilistic pipeline needs an m-primary ideal or homogeneous generators of one degree"
                .into(),
        ));
    }
    let local = |j: &Ideal| -> Result<Ideal> {
        if m_primary {
            j.local_contraction_zero_dim()
        } else {
            Ok(j.clone())
        }
    };
    let mut sampler = Sampler::new(opts.seed, i.ring().field());
    let mut certs = Vec::new();
    let first = sample_general_reduction(i, hyp.ell, sampler.fork(), opts.r_max)?;
    let mut c = local(&first.ideal)?;
    certs.push(first);
    let mut t = 1;
    let mut stable = 0;
    let mut drawn = 1;
    while stable < opts.stable_rounds.max(1) {
        if drawn >= opts.t_max {
            return Err(Error::ResourceCap {
                what: "intersected reductions (t_max)".into(),
                cap: opts.t_max,
            });
        }
        let cert = sample_general_reduction(i, hyp.ell, sampler.fork(), opts.r_max)?;
        drawn += 1;
        let next = c.intersection(&local(&cert.ideal)?)?;
        certs.push(cert);
        if next.contains_ideal(&c)? {
            stable += 1;
        } else {
            stable = 0;
            t = drawn;
            c = next.simplified()?;
        }
    }
    Ok(CoreResult {
        core: c.simplified()?,
        method: Method::Probabilistic,
        t_used: Some(t),
        exponent_used: None,
        seed: opts.seed,
        certificates: certs,
        checks: BTreeMap::new(),
        certified: !hyp.violated(),
        hypotheses: hyp,
        candidates: Vec::new(),
    })
}
