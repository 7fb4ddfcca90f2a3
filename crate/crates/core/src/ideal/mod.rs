//! Ideals of `k[x]/Q0` with cached Gröbner bases, ideal arithmetic,
//! elimination, localization at the origin and Fitting ideals.

mod fitting;
mod local;
mod ops;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::groebner::engine::GbOptions;
use crate::groebner::{self, GroebnerBasis};
use crate::kernel::{Monomial, MonomialOrder, Polynomial, Ring};

pub use ops::SATURATION_CAP;
pub(crate) use ops::{eliminate_in, select_vars};

type Cache = Arc<Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>>;

/// An ideal given by generators (representatives in the ambient polynomial
/// ring). Clones share the basis cache.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: Cache,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

/// Ideal equality (mutual containment). Panics only on engine failures.
impl PartialEq for Ideal {
    fn eq(&self, o: &Ideal) -> bool {
        self.equals(o).expect("ideal comparison failed")
    }
}

impl Ideal {
    /// Zero generators are dropped; all generators must live in `ring`.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::ContextMismatch(format!(
                    "generator {g} lives in {}, ideal in {}",
                    g.ring().describe(),
                    ring.describe()
                )));
            }
        }
        let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
            cache: Arc::default(),
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring, gens: &[S]) -> Result<Ideal> {
        let g = gens
            .iter()
            .map(|s| ring.parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, g)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).expect("empty")
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring.clone())]).expect("unit")
    }

    /// The ideal of the origin, generated by all variables.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::new(ring, ring.vars()).expect("variables")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub(crate) fn ambient(&self) -> Ring {
        self.ring.ambient()
    }

    /// Generators together with the defining ideal, in the ambient ring.
    pub(crate) fn ambient_gens(&self) -> Vec<Polynomial> {
        let amb = self.ambient();
        let mut v: Vec<Polynomial> = self.gens.iter().map(|g| g.with_ring(&amb)).collect();
        v.extend(self.ring.quotient_gens().iter().map(|g| g.with_ring(&amb)));
        v
    }

    pub(crate) fn from_ambient(&self, gens: Vec<Polynomial>) -> Ideal {
        let g = gens.iter().map(|p| p.with_ring(&self.ring)).collect();
        Ideal::new(&self.ring, g).expect("same ring")
    }

    pub(crate) fn check(&self, o: &Ideal) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::ContextMismatch(format!(
                "{} vs {}",
                self.ring.describe(),
                o.ring.describe()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_poly(&self, f: &Polynomial) -> Result<()> {
        if f.ring() != &self.ring {
            return Err(Error::ContextMismatch(format!(
                "{f} lives in {}, ideal in {}",
                f.ring().describe(),
                self.ring.describe()
            )));
        }
        Ok(())
    }

    /// Reduced Gröbner basis of `gens + Q0` under `ord`, computed once.
    pub fn groebner_basis_in(&self, ord: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        let mut cache = self.cache.lock().expect("basis cache poisoned");
        if let Some(gb) = cache.get(ord) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner::buchberger_in(
            &self.ambient(),
            &self.ambient_gens(),
            ord,
            &GbOptions::default(),
        )?);
        cache.insert(ord.clone(), gb.clone());
        Ok(gb)
    }

    /// Basis under the ring's weighted grevlex order.
    pub fn groebner_basis(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner_basis_in(&self.ring.order().clone())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.gens.contains(f) {
            return Ok(true);
        }
        self.groebner_basis()?.contains(&f.with_ring(&self.ambient()))
    }

    pub fn contains_ideal(&self, o: &Ideal) -> Result<bool> {
        self.check(o)?;
        for g in &o.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, o: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(o)? && o.contains_ideal(self)?)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_poly(f)?;
        let nf = self.groebner_basis()?.normal_form(&f.with_ring(&self.ambient()))?;
        Ok(nf.with_ring(&self.ring))
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        Ok(self.groebner_basis()?.is_unit())
    }

    /// True when every generator lies in the defining ideal.
    pub fn is_zero(&self) -> Result<bool> {
        if !self.ring.is_quotient() {
            return Ok(self.gens.is_empty());
        }
        let q = Ideal::zero(&self.ring);
        q.contains_ideal(self)
    }

    /// Dimension of `R / I`; -1 for the unit ideal.
    pub fn krull_dimension(&self) -> Result<i64> {
        Ok(self.groebner_basis()?.krull_dimension())
    }

    /// Length of `R / I` as a vector space (zero-dimensional ideals only).
    pub fn vector_space_dimension(&self) -> Result<u64> {
        self.groebner_basis()?.vector_space_dimension()
    }

    /// `dim R - dim R/I`.
    pub fn height(&self) -> Result<i64> {
        let d = Ideal::zero(&self.ring).krull_dimension()?;
        let di = self.krull_dimension()?;
        if di < 0 {
            return Ok(i64::MAX);
        }
        Ok(d - di)
    }

    /// Canonical generators: the reduced weighted-grevlex basis of `I + Q0`
    /// minus the elements of `Q0`, sorted by increasing leading monomial.
    pub fn canonical_generators(&self) -> Result<Vec<Polynomial>> {
        let gb = self.groebner_basis()?;
        let q = Ideal::zero(&self.ring);
        let mut out = Vec::new();
        for g in gb.generators() {
            let g = g.with_ring(&self.ring);
            if self.ring.is_quotient() && q.contains(&g)? {
                continue;
            }
            out.push(g);
        }
        Ok(out)
    }

    /// Every generator is homogeneous under the ring weights (Q0 included).
    pub fn is_homogeneous(&self) -> bool {
        self.ambient_gens().iter().all(|g| g.is_homogeneous())
    }

    /// Generated by monomials (in a polynomial ring).
    pub fn is_monomial(&self) -> bool {
        !self.ring.is_quotient() && self.gens.iter().all(|g| g.is_monomial())
    }

    /// Monomial basis test: the reduced basis consists of monomials.
    pub fn has_monomial_basis(&self) -> Result<bool> {
        Ok(self.canonical_generators()?.iter().all(|g| g.is_monomial()))
    }

    /// `sqrt(I + Q0)` is the ideal of the origin.
    pub fn is_m_primary(&self) -> Result<bool> {
        if self.is_unit()? {
            return Ok(false);
        }
        if self.krull_dimension()? != 0 {
            return Ok(false);
        }
        for x in self.ring.vars() {
            if !self.radical_contains(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, o: &Ideal) -> Result<Ideal> {
        self.check(o)?;
        let mut g = self.gens.clone();
        g.extend(o.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, o: &Ideal) -> Result<Ideal> {
        self.check(o)?;
        let mut g = Vec::with_capacity(self.len() * o.len());
        for a in &self.gens {
            for b in &o.gens {
                g.push(a.mul(b)?);
            }
        }
        Ok(Ideal::new(&self.ring, prune_monomials(g))?)
    }

    /// `I^r`; `I^0 = (1)`.
    pub fn power(&self, r: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..r {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `f * I`.
    pub fn scale(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_poly(f)?;
        let g = self.gens.iter().map(|g| g.mul(f)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, g)
    }

    /// Drops generators that lie in the ideal of the remaining ones.
    pub fn minimalized(&self) -> Result<Ideal> {
        if self.is_monomial() {
            return Ideal::new(&self.ring, prune_monomials(self.gens.clone()));
        }
        let mut gens = self.gens.clone();
        let mut k = gens.len();
        while k > 0 && gens.len() > 1 {
            k -= 1;
            let rest: Vec<Polynomial> = gens.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g.clone()).collect();
            if Ideal::new(&self.ring, rest.clone())?.contains(&gens[k])? {
                gens = rest;
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// The same ideal with generators replaced by its canonical ones.
    pub fn simplified(&self) -> Result<Ideal> {
        Ideal::new(&self.ring, self.canonical_generators()?)
    }
}

/// Drops duplicates and monomials divisible by other monomial generators.
fn prune_monomials(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let monos: Vec<Option<&Monomial>> = gens
        .iter()
        .map(|g| if g.is_monomial() { Some(&g.terms()[0].1) } else { None })
        .collect();
    let mut keep = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let redundant = match monos[i] {
            Some(m) => monos.iter().enumerate().any(|(j, o)| match o {
                Some(o) => j != i && o.divides(m) && (*o != m || j < i),
                None => false,
            }),
            None => gens[..i].contains(g),
        };
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep
}
