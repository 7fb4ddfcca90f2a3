use std::collections::BTreeMap;

use serde::Serialize;

use crate::core_engine::{hypotheses_gate, CoreOptions, CoreResult, Method};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::kernel::{Polynomial, Ring};
use crate::reduction::{multiplicity, sample_general_reduction, Sampler};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `B : (B : f^N)`
    FPower,
    /// `B : ((B : h^∞) : I)`
    HSat,
}

/// The generic ideal `B = (sum_j X_jl f_j)` in `T = R[X]` and the auxiliary elements.
#[derive(Clone, Debug)]
pub struct UniversalSetup {
    pub ring: Ring,
    pub x_vars: Vec<usize>,
    pub b: Ideal,
    pub f: Polynomial,
    pub h: Option<Polynomial>,
}

/// `(Q0 : f) = Q0`.
fn is_nonzerodivisor(ring: &Ring, f: &Polynomial) -> Result<bool> {
    if f.is_zero() || Ideal::zero(ring).contains(f)? {
        return Ok(false);
    }
    if !ring.is_quotient() {
        return Ok(true);
    }
    Ideal::zero(ring).colon_element(f)?.is_zero()
}

fn pick_nonzerodivisor(ring: &Ring, pool: &[Polynomial], sampler: &mut Sampler) -> Result<Polynomial> {
    let mut cands: Vec<&Polynomial> = pool.iter().collect();
    cands.sort_by_key(|g| (g.len(), g.degree()));
    for g in cands {
        if is_nonzerodivisor(ring, g)? {
            return Ok(g.clone());
        }
    }
    const TRIES: usize = 5;
    for _ in 0..TRIES {
        let (c, _) = sampler.combinations(pool, 1)?;
        if is_nonzerodivisor(ring, &c[0])? {
            return Ok(c[0].clone());
        }
    }
    Err(Error::NoNonzerodivisor(TRIES))
}

/// Adjoins `X_jl` (`j <= n`, `l <= ell`) and returns `(T, B)`. For
/// homogeneous `I` the weights are `deg X_jl = D - deg f_j` with
/// `D = max deg f_j + 1`, so every generator of `B` is homogeneous of degree `D`.
pub fn generic_ideal(i: &Ideal, ell: usize) -> Result<(Ring, Ideal)> {
    let ring = i.ring();
    let gens = i.generators();
    if gens.is_empty() || ell == 0 {
        return Err(Error::Unsupported("universal setup of the zero ideal".into()));
    }
    let graded = i.is_homogeneous();
    let top = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0) + 1;
    let mut names = Vec::new();
    let mut weights = Vec::new();
    for l in 0..ell {
        for (j, f) in gens.iter().enumerate() {
            names.push(ring.fresh_name(&format!("X{}_{}", j + 1, l + 1)));
            weights.push(if graded { top - f.degree().unwrap_or(0) } else { 1 });
        }
    }
    let ext = ring.extend(&names, &weights)?;
    let base = ring.nvars();
    let lift = i.extend_to(&ext)?;
    let mut bgens = Vec::with_capacity(ell);
    for l in 0..ell {
        let mut acc = Polynomial::zero(ext.clone());
        for (j, f) in lift.generators().iter().enumerate() {
            let x = ext.var(base + l * gens.len() + j);
            acc = acc.add(&x.mul(f)?)?;
        }
        bgens.push(acc);
    }
    let b = Ideal::new(&ext, bgens)?;
    Ok((ext, b))
}

pub fn build_universal(i: &Ideal, ell: usize, want_h: bool, seed: u64) -> Result<UniversalSetup> {
    let (ext, b) = generic_ideal(i, ell)?;
    let ring = i.ring();
    let gens = i.generators();
    let x_vars: Vec<usize> = (ring.nvars()..ext.nvars()).collect();
    let mut sampler = Sampler::new(seed, ring.field());
    let f = pick_nonzerodivisor(ring, gens, &mut sampler)?;
    let h = if want_h {
        let fitt = i.fitting_ideal(ell)?;
        let mut found = None;
        for _ in 0..5 {
            let (c, _) = sampler.combinations(fitt.generators(), 1)?;
            let cand = &c[0];
            if is_nonzerodivisor(ring, cand)? && fitt.radical_contains(cand)? {
                found = Some(cand.clone());
                break;
            }
        }
        Some(found.ok_or(Error::NoNonzerodivisor(5))?)
    } else {
        None
    };
    Ok(UniversalSetup {
        ring: ext,
        x_vars,
        b,
        f,
        h,
    })
}

/// `[H]_0`: the X-free part of `H`, localized at the origin.
fn finalize(h: &Ideal, base: &Ring) -> Result<Ideal> {
    let g = h.contract_to(base)?;
    if g.is_homogeneous() {
        return g.simplified();
    }
    match g.krull_dimension()? {
        0 => g.local_contraction_zero_dim()?.simplified(),
        -1 => Ok(Ideal::unit(base)),
        d => Err(Error::Unsupported(format!(
            "contraction is inhomogeneous of dimension {d}; its local part is not computable here"
        ))),
    }
}

/// `[B : (B : f^N)]_0` (or the `h`-saturation form), with exponent escalation.
pub fn core_deterministic(i: &Ideal, opts: &CoreOptions) -> Result<CoreResult> {
    let i = &i.minimalized()?;
    let hyp = hypotheses_gate(i, opts)?;
    let m_primary = i.is_m_primary()?;
    if !m_primary && !i.is_homogeneous() {
        return Err(Error::Unsupported(
            "the deterministic pipeline needs a weighted-homogeneous or m-primary ideal".into(),
        ));
    }
    let mut sampler = Sampler::new(opts.seed, i.ring().field());
    let setup_seed = sampler.fork();
    let setup = build_universal(i, hyp.ell, opts.variant == Variant::HSat, setup_seed)?;
    let ext = &setup.ring;
    let b = &setup.b;
    let mut certificates = Vec::new();
    let (core, exponent) = match opts.variant {
        Variant::HSat => {
            let h = setup.h.as_ref().expect("requested");
            let h_ext = Ideal::new(i.ring(), vec![h.clone()])?.extend_to(ext)?;
            let sat = b.saturation_element(&h_ext.generators()[0])?;
            let d = sat.colon(&i.extend_to(ext)?)?;
            (finalize(&b.colon(&d)?, i.ring())?, None)
        }
        Variant::FPower => {
            let n = match opts.exponent {
                Some(n) => n,
                None if m_primary => multiplicity(i, sampler.fork())? as usize,
                None => {
                    let c = sample_general_reduction(i, hyp.ell, sampler.fork(), opts.r_max)?;
                    let n = c.r + 1;
                    certificates.push(c);
                    n
                }
            };
            let f = Ideal::new(i.ring(), vec![setup.f.clone()])?.extend_to(ext)?;
            let f = &f.generators()[0];
            // B : f^k for k = 0, 1, ..., stopping once the chain is stationary
            let mut d = b.clone();
            let mut stationary = false;
            for _ in 0..n {
                let next = d.colon_element(f)?;
                if d.contains_ideal(&next)? {
                    stationary = true;
                    break;
                }
                d = next;
            }
            let core = finalize(&b.colon(&d)?, i.ring())?;
            if !stationary {
                let d1 = d.colon_element(f)?;
                if !d.contains_ideal(&d1)? {
                    let core1 = finalize(&b.colon(&d1)?, i.ring())?;
                    if !core1.equals(&core)? {
                        return Err(Error::EscalationDisagreement(n));
                    }
                }
            }
            (core, Some(n))
        }
    };
    Ok(CoreResult {
        core,
        method: Method::Deterministic,
        t_used: None,
        exponent_used: exponent,
        seed: opts.seed,
        certificates,
        checks: BTreeMap::new(),
        certified: !hyp.violated(),
        hypotheses: hyp,
        candidates: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universal_construction() {
        let r = Ring::rational(&["U", "V"]);
        let i = Ideal::parse(&r, &["U^2", "U*V", "V^3"]).unwrap();
        let s = build_universal(&i, 2, false, 0).unwrap();
        assert_eq!(s.ring.nvars(), 8);
        assert_eq!(s.b.len(), 2);
        // degrees 2, 2, 3 and D = 4
        assert_eq!(&s.ring.weights()[2..5], &[2, 2, 1]);
        assert!(s.b.generators().iter().all(|g| g.is_homogeneous()));
        assert_eq!(s.b.generators()[0].degree(), Some(4));
        assert_eq!(s.f.to_string(), "U^2");
    }

    #[test]
    fn example_411_universal() {
        let r = Ring::rational(&["U", "V", "W"]);
        let q = r
            .with_quotient(&[r.parse("U^2 + V^2").unwrap(), r.parse("V*W").unwrap()])
            .unwrap();
        let i = Ideal::parse(&q, &["U", "V"]).unwrap();
        let (_, b) = generic_ideal(&i, 1).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.generators()[0].to_string(), "U*X1_1 + V*X2_1");
        // I has height 0: u * uw = 0 and v * w = 0, so every element of I is a zerodivisor
        assert_eq!(build_universal(&i, 1, false, 0).unwrap_err(), Error::NoNonzerodivisor(5));
    }

    #[test]
    fn maximal_ideal_core() {
        let r = Ring::rational(&["U", "V"]);
        let m = Ideal::maximal(&r);
        let res = core_deterministic(&m, &CoreOptions::default()).unwrap();
        assert_eq!(res.core, m);
    }
}
