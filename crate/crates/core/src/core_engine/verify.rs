use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::ideal::Ideal;
use crate::reduction::{analytic_spread, sample_general_reduction, Sampler};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckOutcome {
    Pass,
    Fail,
    Skipped,
}

impl CheckOutcome {
    fn of(b: bool) -> CheckOutcome {
        if b {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail
        }
    }
}

/// `C ⊆ J R_m` for each listed reduction.
pub fn contained_in_reductions(c: &Ideal, reductions: &[Ideal]) -> Result<bool> {
    for j in reductions {
        if !j.local_contains_each(c.generators())?.into_iter().all(|b| b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `√C = √I`, checked generator by generator in both directions.
pub fn radicals_agree(i: &Ideal, c: &Ideal) -> Result<bool> {
    for g in i.generators() {
        if !c.radical_contains(g)? {
            return Ok(false);
        }
    }
    for g in c.generators() {
        if !i.radical_contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Structural checks on a core candidate `c` of `i`. Failures are reported
/// in the map; errors only come from the underlying Gröbner computations.
pub fn verify_core(
    i: &Ideal,
    c: &Ideal,
    n_samples: usize,
    seed: u64,
    r_max: usize,
) -> Result<BTreeMap<String, CheckOutcome>> {
    let mut out = BTreeMap::new();
    out.insert("core_in_I".to_string(), CheckOutcome::of(i.contains_ideal(c)?));
    out.insert("radical_equal".to_string(), CheckOutcome::of(radicals_agree(i, c)?));

    let bs = if i.ring().is_quotient() {
        CheckOutcome::Skipped
    } else {
        let d = i.ring().nvars() as u32;
        let pow = i.power(d)?;
        CheckOutcome::of(c.local_contains_each(pow.generators())?.into_iter().all(|b| b))
    };
    out.insert("briancon_skoda".to_string(), bs);

    let ell = analytic_spread(i)?;
    let mut sampler = Sampler::new(seed, i.ring().field());
    let mut reductions = Vec::new();
    for _ in 0..n_samples {
        match sample_general_reduction(i, ell, sampler.fork(), r_max) {
            Ok(cert) => reductions.push(cert.ideal),
            Err(e) if e.is_cap() => break,
            Err(e) => return Err(e),
        }
    }
    let sampled = if reductions.len() < n_samples {
        CheckOutcome::Skipped
    } else {
        CheckOutcome::of(contained_in_reductions(c, &reductions)?)
    };
    out.insert("in_sampled_reductions".to_string(), sampled);

    let shape = if i.is_monomial() {
        CheckOutcome::of(c.has_monomial_basis()?)
    } else if i.is_homogeneous() {
        CheckOutcome::of(c.is_homogeneous())
    } else {
        CheckOutcome::Skipped
    };
    out.insert("graded_shape".to_string(), shape);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Ring;

    #[test]
    fn closed_form_passes() {
        let r = Ring::rational(&["U", "V"]);
        let i = Ideal::parse(&r, &["U^3", "U*V^3", "V^4"]).unwrap();
        let c = Ideal::parse(&r, &["U^2", "U*V", "V^2"]).unwrap().product(&i).unwrap();
        let m = verify_core(&i, &c, 3, 1, 20).unwrap();
        assert!(m.values().all(|v| *v == CheckOutcome::Pass), "{m:?}");
    }

    #[test]
    fn non_basic_ideal_is_not_its_own_core() {
        let r = Ring::rational(&["U", "V"]);
        let i = Ideal::parse(&r, &["U^2", "U*V", "V^3"]).unwrap();
        let m = verify_core(&i, &i, 2, 1, 20).unwrap();
        assert_eq!(m["in_sampled_reductions"], CheckOutcome::Fail);
        assert_eq!(m["core_in_I"], CheckOutcome::Pass);
        assert_eq!(m["radical_equal"], CheckOutcome::Pass);
    }

    #[test]
    fn too_small_candidate_fails_briancon_skoda() {
        let r = Ring::rational(&["U", "V"]);
        let i = Ideal::maximal(&r);
        let c = i.power(3).unwrap();
        let m = verify_core(&i, &c, 1, 1, 20).unwrap();
        assert_eq!(m["briancon_skoda"], CheckOutcome::Fail);
        assert_eq!(m["radical_equal"], CheckOutcome::Pass);
    }
}
