use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::coeff::{is_prime, FieldMode};
use crate::kernel::monomial::Monomial;
use crate::kernel::order::MonomialOrder;
use crate::kernel::poly::{Polynomial, Term};

#[derive(Debug)]
struct RingData {
    names: Vec<String>,
    weights: Vec<u32>,
    field: FieldMode,
    /// Generators of the defining ideal, as canonical term lists.
    quotient: Vec<Vec<Term>>,
    order: MonomialOrder,
}

/// The ambient ring `k[x_1..x_n] / Q0`, localized at the origin for all
/// local questions. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, o: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
            || (self.0.names == o.0.names
                && self.0.weights == o.0.weights
                && self.0.field == o.0.field
                && self.0.quotient == o.0.quotient)
    }
}

impl Eq for Ring {}

fn valid_ident(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S], weights: &[i64], field: FieldMode) -> Result<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() != weights.len() {
            return Err(Error::LengthMismatch(names.len(), weights.len()));
        }
        if let Some(&w) = weights.iter().find(|&&w| w <= 0 || w > u16::MAX as i64) {
            return Err(Error::NonPositiveWeight(w));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_ident(n) {
                return Err(Error::Unsupported(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Unsupported(format!("duplicate variable `{n}`")));
            }
        }
        if let FieldMode::Prime(p) = field {
            if !is_prime(p) || p >= (1 << 32) {
                return Err(Error::Unsupported(format!(
                    "modulus {p} is not a prime below 2^32"
                )));
            }
        }
        let weights: Vec<u32> = weights.iter().map(|&w| w as u32).collect();
        let order = MonomialOrder::WeightedGrevlex(weights.clone());
        Ok(Ring(Arc::new(RingData {
            names,
            weights,
            field,
            quotient: Vec::new(),
            order,
        })))
    }

    /// Standard-graded polynomial ring over Q.
    pub fn rational<S: AsRef<str>>(names: &[S]) -> Ring {
        Ring::new(names, &vec![1; names.len()], FieldMode::Rational).expect("valid ring")
    }

    /// Same variables, defining ideal `gens`. Generators must lie in the
    /// ideal of the origin (so the quotient is proper).
    pub fn with_quotient(&self, gens: &[Polynomial]) -> Result<Ring> {
        let mut quotient = Vec::new();
        for g in gens {
            if g.ring().names() != self.names() || g.ring().field() != self.field() {
                return Err(Error::ContextMismatch("quotient generator from another ring".into()));
            }
            if g.constant_coeff().is_some() {
                return Err(Error::Unsupported(format!(
                    "quotient generator {g} does not vanish at the origin"
                )));
            }
            if !g.is_zero() {
                quotient.push(g.terms().to_vec());
            }
        }
        Ok(Ring(Arc::new(RingData {
            names: self.0.names.clone(),
            weights: self.0.weights.clone(),
            field: self.0.field,
            quotient,
            order: self.0.order.clone(),
        })))
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn field(&self) -> FieldMode {
        self.0.field
    }

    /// Canonical order: weighted grevlex under the ring weights.
    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn is_quotient(&self) -> bool {
        !self.0.quotient.is_empty()
    }

    pub fn quotient_gens(&self) -> Vec<Polynomial> {
        self.0
            .quotient
            .iter()
            .map(|t| Polynomial::from_sorted(self.clone(), t.clone()))
            .collect()
    }

    /// Polynomial ring on the same variables without the defining ideal.
    pub fn ambient(&self) -> Ring {
        if !self.is_quotient() {
            return self.clone();
        }
        Ring(Arc::new(RingData {
            names: self.0.names.clone(),
            weights: self.0.weights.clone(),
            field: self.0.field,
            quotient: Vec::new(),
            order: self.0.order.clone(),
        }))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(self.clone(), self.field().one(), Monomial::var(i, self.weights()))
    }

    pub fn var_by_name(&self, name: &str) -> Result<Polynomial> {
        self.var_index(name)
            .map(|i| self.var(i))
            .ok_or_else(|| Error::Unsupported(format!("unknown variable `{name}`")))
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        crate::kernel::parse::parse_polynomial(self, text)
    }

    /// Appends fresh variables. Existing variables keep their positions and
    /// weights, and the defining ideal is carried over.
    pub fn extend<S: AsRef<str>>(&self, names: &[S], weights: &[u32]) -> Result<Ring> {
        let mut all = self.0.names.clone();
        for n in names {
            let n = n.as_ref();
            if all.iter().any(|m| m == n) {
                return Err(Error::Unsupported(format!("variable `{n}` already exists")));
            }
            all.push(n.to_string());
        }
        let mut w: Vec<i64> = self.0.weights.iter().map(|&x| x as i64).collect();
        w.extend(weights.iter().map(|&x| x as i64));
        let base = Ring::new(&all, &w, self.0.field)?;
        if !self.is_quotient() {
            return Ok(base);
        }
        let extra = names.len();
        let q: Vec<Polynomial> = self
            .quotient_gens()
            .iter()
            .map(|g| g.embed_raw(&base, extra))
            .collect();
        base.with_quotient(&q)
    }

    /// Fresh variable name based on `stem` that does not clash with this ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        while self.var_index(&name).is_some() {
            name.push('_');
        }
        name
    }

    /// Maps a polynomial of a ring whose variables are a prefix of ours.
    pub fn embed(&self, p: &Polynomial) -> Result<Polynomial> {
        let src = p.ring();
        let n = src.nvars();
        if n > self.nvars() || src.names() != &self.names()[..n] || src.field() != self.field() {
            return Err(Error::ContextMismatch(format!(
                "cannot embed [{}] into [{}]",
                src.names().join(","),
                self.names().join(",")
            )));
        }
        Ok(p.embed_raw(self, self.nvars() - n))
    }

    /// Inverse of [`Ring::embed`] for polynomials free of the extra variables.
    pub fn contract(&self, p: &Polynomial) -> Result<Polynomial> {
        let n = self.nvars();
        let src = p.ring();
        if n > src.nvars() || &src.names()[..n] != self.names() {
            return Err(Error::ContextMismatch("contraction target is not a prefix".into()));
        }
        let mut terms = Vec::with_capacity(p.terms().len());
        for (c, m) in p.terms() {
            match m.truncate(n) {
                Some(m) => terms.push((c.clone(), m)),
                None => {
                    return Err(Error::Internal(format!(
                        "cannot contract {p}: it involves eliminated variables"
                    )))
                }
            }
        }
        Ok(Polynomial::from_terms(self.clone(), terms))
    }

    pub fn describe(&self) -> String {
        let mut s = format!("{}[{}]", self.field().name(), self.names().join(","));
        if self.weights().iter().any(|&w| w != 1) {
            let w: Vec<String> = self.weights().iter().map(|w| w.to_string()).collect();
            s.push_str(&format!(" weights [{}]", w.join(",")));
        }
        if self.is_quotient() {
            let q: Vec<String> = self.quotient_gens().iter().map(|g| g.to_string()).collect();
            s.push_str(&format!(" quotient [{}]", q.join(", ")));
        }
        s
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}
