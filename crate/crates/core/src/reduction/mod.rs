//! Analytic spread, general reductions, reduction numbers, multiplicity and
//! the hypothesis classifier.

mod hypotheses;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::kernel::{Coeff, FieldMode, Polynomial, Ring};

pub use hypotheses::{check_g_s, classify_hypotheses, Classification, GsReport, HypothesisReport};

/// Default cap on reduction numbers.
pub const R_MAX: usize = 20;
/// Fresh coefficient draws after a failed sample.
pub const RESAMPLES: usize = 5;
/// Integer coefficients are drawn from `[-POOL, POOL]` over Q.
pub const POOL: i64 = 10_000;

/// Seeded source of "general" coefficients.
pub struct Sampler {
    rng: ChaCha8Rng,
    field: FieldMode,
}

impl Sampler {
    pub fn new(seed: u64, field: FieldMode) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            field,
        }
    }

    pub fn coeff(&mut self) -> Coeff {
        match self.field {
            FieldMode::Rational => self.field.from_i64(self.rng.gen_range(-POOL..=POOL)),
            FieldMode::Prime(p) => self.field.from_i64(self.rng.gen_range(0..p) as i64),
        }
    }

    /// Seed for an independent child stream.
    pub fn fork(&mut self) -> u64 {
        self.rng.gen()
    }

    /// `count` combinations `sum_j lambda_jl f_j`, with their coefficients.
    pub fn combinations(&mut self, gens: &[Polynomial], count: usize) -> Result<(Vec<Polynomial>, Vec<Vec<Coeff>>)> {
        let mut out = Vec::with_capacity(count);
        let mut lambdas = Vec::with_capacity(count);
        for _ in 0..count {
            let row: Vec<Coeff> = gens.iter().map(|_| self.coeff()).collect();
            let mut acc = Polynomial::zero(gens[0].ring().clone());
            for (c, f) in row.iter().zip(gens) {
                acc = acc.add(&f.scale(c))?;
            }
            out.push(acc);
            lambdas.push(row);
        }
        Ok((out, lambdas))
    }
}

/// One replayable local membership test `element ∈ J I^power` at the origin.
#[derive(Clone, Debug, Serialize)]
pub struct MembershipCheck {
    pub element: String,
    pub power: usize,
    pub passed: bool,
}

/// A sampled reduction with its reduction number and transcript.
#[derive(Clone, Debug)]
pub struct ReductionCertificate {
    pub ideal: Ideal,
    pub lambdas: Vec<Vec<Coeff>>,
    pub r: usize,
    pub transcript: Vec<MembershipCheck>,
    pub seed: u64,
    pub attempts: usize,
}

impl ReductionCertificate {
    /// Re-runs every membership in the transcript against `i`.
    pub fn replay(&self, i: &Ideal) -> Result<bool> {
        if !i.contains_ideal(&self.ideal)? {
            return Ok(false);
        }
        let j = LocalFactor::new(&self.ideal)?;
        for c in &self.transcript {
            let f = i.ring().parse(&c.element)?;
            if j.times_contains(&i.power(c.power as u32)?, &[f])?[0] != c.passed {
                return Ok(false);
            }
        }
        let ok_round = self.transcript.iter().filter(|c| c.power == self.r);
        let all_pass = ok_round.clone().all(|c| c.passed);
        let complete = ok_round.count() == i.power(self.r as u32 + 1)?.len();
        let witness = self.r == 0 || self.transcript.iter().any(|c| c.power + 1 == self.r && !c.passed);
        Ok(all_pass && complete && witness)
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateSummary {
    pub generators: Vec<String>,
    pub reduction_number: usize,
    pub seed: u64,
    pub attempts: usize,
    pub transcript: Vec<MembershipCheck>,
}

impl From<&ReductionCertificate> for CertificateSummary {
    fn from(c: &ReductionCertificate) -> Self {
        CertificateSummary {
            generators: c.generators().iter().map(|g| g.to_string()).collect(),
            reduction_number: c.r,
            seed: c.seed,
            attempts: c.attempts,
            transcript: c.transcript.clone(),
        }
    }
}

/// Analytic spread: dimension of the fiber cone `k[Y] / (Rees relations)|_{x=0}`.
pub fn analytic_spread(i: &Ideal) -> Result<usize> {
    if i.is_zero()? {
        return Ok(0);
    }
    if i.is_unit()? {
        return Err(Error::Unsupported("analytic spread of the unit ideal".into()));
    }
    let ring = i.ring();
    if !ring.is_quotient() && i.is_m_primary()? {
        return Ok(ring.nvars());
    }
    let gens = i.generators();
    let n = gens.len();
    if n == 1 {
        return Ok(1);
    }
    let amb = ring.ambient();
    let base = amb.nvars();
    let t_name = amb.fresh_name("t_");
    let mut names = vec![t_name];
    let mut weights = vec![1u32];
    for (j, f) in gens.iter().enumerate() {
        names.push(amb.fresh_name(&format!("Y{}", j + 1)));
        weights.push(f.degree().unwrap_or(0) + 1);
    }
    let ext = amb.extend(&names, &weights)?;
    let t = ext.var(base);
    let mut rel = Vec::new();
    for (j, f) in gens.iter().enumerate() {
        let y = ext.var(base + 1 + j);
        let tf = t.mul(&ext.embed(&f.with_ring(&amb))?)?;
        rel.push(y.sub(&tf)?);
    }
    for q in ring.quotient_gens() {
        rel.push(ext.embed(&q.with_ring(&amb))?);
    }
    let kept = crate::ideal::eliminate_in(&ext, &rel, &[base])?;
    let y_names: Vec<&str> = names[1..].iter().map(|s| s.as_str()).collect();
    let y_weights: Vec<i64> = weights[1..].iter().map(|&w| w as i64).collect();
    let fiber_ring = Ring::new(&y_names, &y_weights, ring.field())?;
    let keep: Vec<usize> = (base + 1..base + 1 + n).collect();
    let mut zero_x = vec![false; ext.nvars()];
    zero_x[..base].iter_mut().for_each(|z| *z = true);
    let fiber: Vec<Polynomial> = kept
        .iter()
        .map(|p| crate::ideal::select_vars(&p.set_zero(&zero_x), &fiber_ring, &keep))
        .collect();
    let d = Ideal::new(&fiber_ring, fiber)?.krull_dimension()?;
    Ok(d.max(0) as usize)
}

/// `J` at the origin. A zero-dimensional `J` is replaced by its local
/// contraction `J'`; then `J' K` is supported at the origin for any `K`, so
/// local membership in `J K` is plain membership in `J' K`.
struct LocalFactor {
    ideal: Ideal,
    global: bool,
}

impl LocalFactor {
    fn new(j: &Ideal) -> Result<LocalFactor> {
        if j.krull_dimension()? == 0 {
            Ok(LocalFactor {
                ideal: j.local_contraction_zero_dim()?,
                global: true,
            })
        } else {
            Ok(LocalFactor {
                ideal: j.clone(),
                global: false,
            })
        }
    }

    fn times_contains(&self, k: &Ideal, elems: &[Polynomial]) -> Result<Vec<bool>> {
        let target = self.ideal.product(k)?;
        if self.global {
            elems.iter().map(|f| target.contains(f)).collect()
        } else {
            target.local_contains_each(elems)
        }
    }
}

/// Least `r <= r_max` with `I^{r+1} ⊆ J I^r` at the origin, with the transcript.
pub fn reduction_number(i: &Ideal, j: &Ideal, r_max: usize) -> Result<(usize, Vec<MembershipCheck>)> {
    i.check(j)?;
    if !i.contains_ideal(j)? {
        return Err(Error::Unsupported("J is not contained in I".into()));
    }
    let jl = LocalFactor::new(j)?;
    let mut ipow = Ideal::unit(i.ring());
    let mut previous_failure: Option<MembershipCheck> = None;
    for r in 0..=r_max {
        let next = ipow.product(i)?;
        let verdicts = jl.times_contains(&ipow, next.generators())?;
        let checks: Vec<MembershipCheck> = next
            .generators()
            .iter()
            .zip(&verdicts)
            .map(|(g, &passed)| MembershipCheck {
                element: g.to_string(),
                power: r,
                passed,
            })
            .collect();
        if verdicts.iter().all(|&v| v) {
            let mut transcript = Vec::new();
            transcript.extend(previous_failure);
            transcript.extend(checks);
            return Ok((r, transcript));
        }
        previous_failure = checks.into_iter().find(|c| !c.passed);
        ipow = next;
    }
    Err(Error::NotAReduction(r_max))
}

/// Samples `ell` general combinations of the generators that form a reduction.
pub fn sample_general_reduction(i: &Ideal, ell: usize, seed: u64, r_max: usize) -> Result<ReductionCertificate> {
    if ell == 0 || i.is_empty() {
        return Err(Error::Unsupported("no reduction of the zero ideal".into()));
    }
    let mut sampler = Sampler::new(seed, i.ring().field());
    let mut last_err = None;
    for attempt in 0..=RESAMPLES {
        let (gens, lambdas) = sampler.combinations(i.generators(), ell)?;
        let j = Ideal::new(i.ring(), gens)?;
        match reduction_number(i, &j, r_max) {
            Ok((r, transcript)) => {
                return Ok(ReductionCertificate {
                    ideal: j,
                    lambdas,
                    r,
                    transcript,
                    seed,
                    attempts: attempt + 1,
                })
            }
            Err(e @ Error::NotAReduction(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Sampling(format!(
        "no reduction found in {} samples ({})",
        RESAMPLES + 1,
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}

/// Hilbert-Samuel multiplicity of an m-primary ideal: the length of `R / J`
/// at the origin for a general `d`-generated `J`, taken from two
/// independent samples that must agree.
pub fn multiplicity(i: &Ideal, seed: u64) -> Result<u64> {
    if !i.is_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    let d = Ideal::zero(i.ring()).krull_dimension()?;
    if d == 0 {
        return Ideal::zero(i.ring()).vector_space_dimension();
    }
    let mut sampler = Sampler::new(seed, i.ring().field());
    let mut values = [0u64; 2];
    for v in values.iter_mut() {
        let (gens, _) = sampler.combinations(i.generators(), d as usize)?;
        let j = Ideal::new(i.ring(), gens)?;
        if j.krull_dimension()? != 0 {
            return Err(Error::Sampling("sampled combinations are not a parameter ideal".into()));
        }
        *v = j.local_contraction_zero_dim()?.vector_space_dimension()?;
    }
    if values[0] != values[1] {
        return Err(Error::Sampling(format!(
            "multiplicity samples disagree ({} vs {}); try another seed",
            values[0], values[1]
        )));
    }
    Ok(values[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uv() -> Ring {
        Ring::rational(&["U", "V"])
    }

    pub(crate) fn ex411() -> Ring {
        let r = Ring::rational(&["U", "V", "W"]);
        r.with_quotient(&[r.parse("U^2 + V^2").unwrap(), r.parse("V*W").unwrap()])
            .unwrap()
    }

    #[test]
    fn spreads() {
        let r = uv();
        assert_eq!(analytic_spread(&Ideal::maximal(&r)).unwrap(), 2);
        assert_eq!(analytic_spread(&Ideal::parse(&r, &["U^2 + V"]).unwrap()).unwrap(), 1);
        // not m-primary: (U^2, UV) has fiber cone k[Y1, Y2]
        assert_eq!(analytic_spread(&Ideal::parse(&r, &["U^2", "U*V"]).unwrap()).unwrap(), 2);
        let q = ex411();
        assert_eq!(analytic_spread(&Ideal::parse(&q, &["U", "V"]).unwrap()).unwrap(), 1);
        let r3 = Ring::rational(&["U", "V", "W"]);
        let e2 = Ideal::parse(&r3, &["U^3", "U*V^2*W^2", "V^3*W^3"]).unwrap();
        assert_eq!(analytic_spread(&e2).unwrap(), 2);
    }

    #[test]
    fn parameter_ideal_reductions() {
        let r = uv();
        let i = Ideal::parse(&r, &["U^2", "V^2"]).unwrap();
        let c = sample_general_reduction(&i, 2, 7, R_MAX).unwrap();
        assert_eq!(c.r, 0);
        assert_eq!(c.ideal, i);
        assert!(c.replay(&i).unwrap());
    }

    #[test]
    fn example_411_reduction_number() {
        let q = ex411();
        let i = Ideal::parse(&q, &["U", "V"]).unwrap();
        let u = Ideal::parse(&q, &["U"]).unwrap();
        assert_eq!(reduction_number(&i, &u, R_MAX).unwrap().0, 1);
        let c = sample_general_reduction(&i, 1, 3, R_MAX).unwrap();
        assert_eq!(c.r, 1);
        assert!(c.replay(&i).unwrap());
    }

    #[test]
    fn reduction_of_non_basic_ideal() {
        let r = uv();
        let i = Ideal::parse(&r, &["U^2", "U*V", "V^3"]).unwrap();
        let a = sample_general_reduction(&i, 2, 1, R_MAX).unwrap();
        let b = sample_general_reduction(&i, 2, 2, R_MAX).unwrap();
        assert_eq!(a.r, b.r);
        assert!(a.r >= 1);
        assert_eq!(a.ideal.krull_dimension().unwrap(), 0);
        assert!(a.replay(&i).unwrap());
    }

    #[test]
    fn non_reduction_is_rejected() {
        let r = uv();
        let i = Ideal::maximal(&r);
        let j = Ideal::parse(&r, &["U"]).unwrap();
        assert_eq!(reduction_number(&i, &j, 3).unwrap_err(), Error::NotAReduction(3));
    }

    #[test]
    fn multiplicities() {
        let r = uv();
        let m = |g: &[&str]| multiplicity(&Ideal::parse(&r, g).unwrap(), 11).unwrap();
        assert_eq!(m(&["U", "V"]), 1);
        assert_eq!(m(&["U^2", "V^2"]), 4);
        assert_eq!(m(&["U^2", "U*V", "V^3"]), 5);
        assert_eq!(m(&["U^3", "U*V^3", "V^4"]), 12);
        assert!(multiplicity(&Ideal::parse(&r, &["U"]).unwrap(), 1).is_err());
    }
}
