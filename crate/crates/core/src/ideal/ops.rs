use crate::error::{Error, Result};
use crate::groebner::engine::GbOptions;
use crate::groebner::{self, divide_exact};
use crate::ideal::Ideal;
use crate::kernel::{Monomial, MonomialOrder, Polynomial, Ring};

/// Iteration cap for [`Ideal::saturation_iterated`].
pub const SATURATION_CAP: usize = 64;

/// Elements of `(gens)` free of the variables `elim`, computed with an
/// elimination order in `ring` (a polynomial ring).
pub(crate) fn eliminate_in(ring: &Ring, gens: &[Polynomial], elim: &[usize]) -> Result<Vec<Polynomial>> {
    let ord = MonomialOrder::elimination(ring.nvars(), elim, ring.weights());
    let gb = groebner::buchberger_in(ring, gens, &ord, &GbOptions::default())?;
    Ok(gb
        .generators()
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|(_, m)| elim.iter().all(|&i| m.exps()[i] == 0))
        })
        .cloned()
        .collect())
}

/// Maps `p` into `target`, whose variables are those of `p`'s ring at `keep`.
pub(crate) fn select_vars(p: &Polynomial, target: &Ring, keep: &[usize]) -> Polynomial {
    let terms = p
        .terms()
        .iter()
        .map(|(c, m)| {
            let e: Vec<u16> = keep.iter().map(|&i| m.exps()[i]).collect();
            (c.clone(), Monomial::new(e, target.weights()))
        })
        .collect();
    Polynomial::from_terms(target.clone(), terms)
}

fn monomial_of(p: &Polynomial) -> Option<&Monomial> {
    if p.is_monomial() {
        Some(&p.terms()[0].1)
    } else {
        None
    }
}

fn gcd_mono(a: &Monomial, b: &Monomial, weights: &[u32]) -> Monomial {
    let e: Vec<u16> = a.exps().iter().zip(b.exps()).map(|(x, y)| *x.min(y)).collect();
    Monomial::new(e, weights)
}

fn mono_poly(ring: &Ring, m: Monomial) -> Polynomial {
    Polynomial::monomial(ring.clone(), ring.field().one(), m)
}

impl Ideal {
    fn ambient_ideal(&self) -> Ideal {
        let amb = self.ambient();
        Ideal::new(&amb, self.ambient_gens()).expect("ambient")
    }

    fn monomials(&self) -> Option<Vec<&Monomial>> {
        if !self.is_monomial() {
            return None;
        }
        self.gens.iter().map(monomial_of).collect()
    }

    /// `I ∩ J`, eliminating a tag variable `s` from `s I + (1 - s) J + Q0`.
    pub fn intersection(&self, o: &Ideal) -> Result<Ideal> {
        self.check(o)?;
        if self.is_unit()? {
            return Ok(o.clone());
        }
        if o.is_unit()? {
            return Ok(self.clone());
        }
        if let (Some(a), Some(b)) = (self.monomials(), o.monomials()) {
            let w = self.ring.weights();
            let mut g = Vec::with_capacity(a.len() * b.len());
            for x in &a {
                for y in &b {
                    g.push(mono_poly(&self.ring, x.lcm(y, w)));
                }
            }
            return Ideal::new(&self.ring, super::prune_monomials(g));
        }
        if self.is_zero()? || o.is_zero()? {
            return Ok(Ideal::zero(&self.ring));
        }
        let amb = self.ambient();
        let s_name = amb.fresh_name("s_");
        let ext = amb.extend(&[s_name], &[1])?;
        let n = amb.nvars();
        let s = ext.var(n);
        let one_minus_s = Polynomial::one(ext.clone()).sub(&s)?;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(ext.embed(&g.with_ring(&amb))?.mul(&s)?);
        }
        for g in &o.gens {
            gens.push(ext.embed(&g.with_ring(&amb))?.mul(&one_minus_s)?);
        }
        for q in self.ring.quotient_gens() {
            gens.push(ext.embed(&q.with_ring(&amb))?);
        }
        let kept = eliminate_in(&ext, &gens, &[n])?;
        let out = kept
            .iter()
            .map(|g| amb.contract(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.from_ambient(out))
    }

    /// `I : g`, as `((I + Q0) ∩ (g)) / g` in the ambient ring.
    pub fn colon_element(&self, g: &Polynomial) -> Result<Ideal> {
        self.check_poly(g)?;
        if g.is_zero() || self.contains(g)? {
            return Ok(Ideal::unit(&self.ring));
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        if let (Some(ms), Some(gm)) = (self.monomials(), monomial_of(g)) {
            let w = self.ring.weights();
            let out = ms
                .iter()
                .map(|m| {
                    let d = gcd_mono(m, gm, w);
                    mono_poly(&self.ring, d.quotient_of(m).expect("gcd divides"))
                })
                .collect();
            return Ideal::new(&self.ring, super::prune_monomials(out));
        }
        let amb = self.ambient();
        let ga = g.with_ring(&amb);
        let principal = Ideal::new(&amb, vec![ga.clone()])?;
        let meet = self.ambient_ideal().intersection(&principal)?;
        let mut out = Vec::with_capacity(meet.len());
        for h in meet.generators() {
            match divide_exact(h, &ga)? {
                Some(q) => out.push(q),
                None => {
                    return Err(Error::Internal(format!(
                        "intersection element {h} is not divisible by {ga}"
                    )))
                }
            }
        }
        Ok(self.from_ambient(out))
    }

    /// `I : J = ∩ (I : g)` over the generators of `J`.
    pub fn colon(&self, j: &Ideal) -> Result<Ideal> {
        self.check(j)?;
        let mut acc = Ideal::unit(&self.ring);
        for g in j.generators() {
            let c = self.colon_element(g)?;
            acc = acc.intersection(&c)?;
        }
        Ok(acc)
    }

    /// `I : g^∞`, eliminating `y` from `I + Q0 + (1 - y g)`.
    pub fn saturation_element(&self, g: &Polynomial) -> Result<Ideal> {
        self.check_poly(g)?;
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        if let (Some(ms), Some(gm)) = (self.monomials(), monomial_of(g)) {
            let w = self.ring.weights();
            let out = ms
                .iter()
                .map(|m| {
                    let e: Vec<u16> = m
                        .exps()
                        .iter()
                        .zip(gm.exps())
                        .map(|(&a, &b)| if b > 0 { 0 } else { a })
                        .collect();
                    mono_poly(&self.ring, Monomial::new(e, w))
                })
                .collect();
            return Ideal::new(&self.ring, super::prune_monomials(out));
        }
        let amb = self.ambient();
        let y_name = amb.fresh_name("y_");
        let ext = amb.extend(&[y_name], &[1])?;
        let n = amb.nvars();
        let y = ext.var(n);
        let mut gens = self
            .ambient_gens()
            .iter()
            .map(|p| ext.embed(p))
            .collect::<Result<Vec<_>>>()?;
        let yg = y.mul(&ext.embed(&g.with_ring(&amb))?)?;
        gens.push(Polynomial::one(ext.clone()).sub(&yg)?);
        let kept = eliminate_in(&ext, &gens, &[n])?;
        let out = kept
            .iter()
            .map(|p| amb.contract(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.from_ambient(out))
    }

    /// `I : J^∞ = ∩ (I : g^∞)` over the generators of `J`.
    pub fn saturation(&self, j: &Ideal) -> Result<Ideal> {
        self.check(j)?;
        let mut acc = Ideal::unit(&self.ring);
        for g in j.generators() {
            acc = acc.intersection(&self.saturation_element(g)?)?;
        }
        Ok(acc)
    }

    /// `I : J^∞` by iterating `K <- K : J` until it stabilizes.
    pub fn saturation_iterated(&self, j: &Ideal) -> Result<Ideal> {
        self.check(j)?;
        let mut k = self.clone();
        for _ in 0..SATURATION_CAP {
            let next = k.colon(j)?;
            if k.contains_ideal(&next)? {
                return Ok(k);
            }
            k = next;
        }
        Err(Error::ResourceCap {
            what: "saturation iterations".into(),
            cap: SATURATION_CAP,
        })
    }

    /// `(I + Q0) ∩ k[remaining variables]`, returned in that polynomial ring.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal> {
        let amb = self.ambient();
        let n = amb.nvars();
        if let Some(&v) = vars.iter().find(|&&v| v >= n) {
            return Err(Error::Unsupported(format!("no variable with index {v}")));
        }
        let keep: Vec<usize> = (0..n).filter(|i| !vars.contains(i)).collect();
        let names: Vec<&str> = keep.iter().map(|&i| amb.names()[i].as_str()).collect();
        let w: Vec<i64> = keep.iter().map(|&i| amb.weights()[i] as i64).collect();
        let target = Ring::new(&names, &w, amb.field())?;
        let kept = eliminate_in(&amb, &self.ambient_gens(), vars)?;
        let out = kept.iter().map(|p| select_vars(p, &target, &keep)).collect();
        Ideal::new(&target, out)
    }

    /// Elimination of the variables of `self.ring()` beyond those of `target`,
    /// whose variables must be a prefix; the defining ideal of `target` is kept.
    pub fn contract_to(&self, target: &Ring) -> Result<Ideal> {
        let amb = self.ambient();
        let k = target.nvars();
        if k > amb.nvars() || target.names() != &amb.names()[..k] {
            return Err(Error::ContextMismatch("contraction target is not a prefix".into()));
        }
        let elim: Vec<usize> = (k..amb.nvars()).collect();
        let kept = eliminate_in(&amb, &self.ambient_gens(), &elim)?;
        let tamb = target.ambient();
        let out = kept
            .iter()
            .map(|p| tamb.contract(p).map(|q| q.with_ring(target)))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(target, out)
    }

    /// Same generators seen in a ring extending ours by trailing variables.
    pub fn extend_to(&self, ext: &Ring) -> Result<Ideal> {
        let amb = self.ambient();
        let eamb = ext.ambient();
        let g = self
            .gens
            .iter()
            .map(|p| eamb.embed(&p.with_ring(&amb)).map(|q| q.with_ring(ext)))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ext, g)
    }

    /// `f ∈ sqrt(I)`: `1 ∈ I + Q0 + (1 - y f)`.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        self.check_poly(f)?;
        if self.contains(f)? {
            return Ok(true);
        }
        let amb = self.ambient();
        let y_name = amb.fresh_name("y_");
        let ext = amb.extend(&[y_name], &[1])?;
        let y = ext.var(amb.nvars());
        let mut gens = self
            .ambient_gens()
            .iter()
            .map(|p| ext.embed(p))
            .collect::<Result<Vec<_>>>()?;
        let yf = y.mul(&ext.embed(&f.with_ring(&amb))?)?;
        gens.push(Polynomial::one(ext.clone()).sub(&yf)?);
        let gb = groebner::buchberger_in(&ext, &gens, ext.order(), &GbOptions::default())?;
        Ok(gb.is_unit())
    }
}
