use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::coeff::Coeff;
use crate::kernel::monomial::Monomial;
use crate::kernel::ring::Ring;

pub type Term = (Coeff, Monomial);

/// Sparse polynomial; terms strictly decreasing in the ring's canonical
/// order, no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && self.ring == o.ring
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: Ring) -> Polynomial {
        Polynomial { ring, terms: Vec::new() }
    }

    pub fn one(ring: Ring) -> Polynomial {
        let c = ring.field().one();
        Polynomial::constant(ring, c)
    }

    pub fn constant(ring: Ring, c: Coeff) -> Polynomial {
        let n = ring.nvars();
        Polynomial::monomial(ring, c, Monomial::one(n))
    }

    pub fn monomial(ring: Ring, c: Coeff, m: Monomial) -> Polynomial {
        let terms = if c.is_zero() { vec![] } else { vec![(c, m)] };
        Polynomial { ring, terms }
    }

    /// Builds a polynomial from arbitrary terms, combining like monomials.
    pub fn from_terms(ring: Ring, mut terms: Vec<Term>) -> Polynomial {
        let ord = ring.order().clone();
        terms.sort_by(|a, b| ord.cmp(b.1.exps(), a.1.exps()));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some(last) if last.1 == m => last.0 = last.0.add(&c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.0.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((c, m));
                }
            }
        }
        if matches!(out.last(), Some(l) if l.0.is_zero()) {
            out.pop();
        }
        Polynomial { ring, terms: out }
    }

    /// Trusts that `terms` is already canonical.
    pub(crate) fn from_sorted(ring: Ring, terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(w[0].1.exps(), w[1].1.exps()) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.0.is_zero()));
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term in the canonical order.
    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Nonzero constant coefficient, if any.
    pub fn constant_coeff(&self) -> Option<&Coeff> {
        self.terms.last().filter(|t| t.1.is_one()).map(|t| &t.0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.1.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Homogeneous under the ring weights (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].1.degree() == w[1].1.degree())
    }

    /// Maximal weighted degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.1.degree()).max()
    }

    fn check(&self, o: &Polynomial) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::ContextMismatch(format!(
                "{} vs {}",
                self.ring.describe(),
                o.ring.describe()
            )));
        }
        Ok(())
    }

    fn merge(&self, o: &Polynomial, negate: bool) -> Polynomial {
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Coeff| if negate { c.neg() } else { c.clone() };
        while i < self.terms.len() && j < o.terms.len() {
            let (a, b) = (&self.terms[i], &o.terms[j]);
            match ord.cmp(a.1.exps(), b.1.exps()) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((sign(&b.0), b.1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a.0.add(&sign(&b.0));
                    if !c.is_zero() {
                        out.push((c, a.1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(|t| (sign(&t.0), t.1.clone())));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check(o)?;
        Ok(self.merge(o, false))
    }

    pub fn sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check(o)?;
        Ok(self.merge(o, true))
    }

    pub fn mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Polynomial::zero(self.ring.clone()));
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut acc = Polynomial::zero(self.ring.clone());
        for (c, m) in &small.terms {
            acc = acc.merge(&big.mul_term(c, m), false);
        }
        Ok(acc)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(c, m)| (c.neg(), m.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring.clone());
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(d, m)| (d.mul(c), m.clone())).collect(),
        }
    }

    /// Multiplication by a single term keeps the order (multiplicativity).
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring.clone());
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(d, n)| (d.mul(c), n.mul(m)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring.clone());
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, n) in &self.terms {
            terms.push((c.clone(), m.quotient_of(n)?));
        }
        Some(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.lead() {
            Some((c, _)) if !c.is_one() => self.scale(&c.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// Substitutes zero for each variable whose flag is set.
    pub fn set_zero(&self, vars: &[bool]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(_, m)| m.exps().iter().zip(vars).all(|(&e, &z)| !(z && e > 0)))
            .cloned()
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Re-homes the terms in `target` (which extends our ring by `extra` variables).
    pub(crate) fn embed_raw(&self, target: &Ring, extra: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| (c.clone(), m.extend(extra)))
            .collect();
        Polynomial::from_terms(target.clone(), terms)
    }

    /// Same terms, seen in another ring with identical variables.
    pub(crate) fn with_ring(&self, ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Sorted under `ord`, highest first.
    pub fn terms_in(&self, ord: &crate::kernel::order::MonomialOrder) -> Vec<Term> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| ord.cmp(b.1.exps(), a.1.exps()));
        t
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.ring.names();
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
