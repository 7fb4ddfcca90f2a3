use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exps = SmallVec<[u16; 16]>;

/// Exponent vector with its weighted degree under the owning ring's weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    deg: u32,
}

impl Monomial {
    pub fn new(exps: impl Into<Exps>, weights: &[u32]) -> Monomial {
        let exps = exps.into();
        debug_assert_eq!(exps.len(), weights.len());
        let deg = dot(&exps, weights);
        Monomial { exps, deg }
    }

    pub fn one(n: usize) -> Monomial {
        Monomial {
            exps: SmallVec::from_elem(0, n),
            deg: 0,
        }
    }

    pub fn var(i: usize, weights: &[u32]) -> Monomial {
        let mut e: Exps = SmallVec::from_elem(0, weights.len());
        e[i] = 1;
        Monomial { exps: e, deg: weights[i] }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Cached weighted degree.
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&o.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            deg: self.deg + o.deg,
        }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        if !self.divides(o) {
            return None;
        }
        let exps = o.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Some(Monomial {
            exps,
            deg: o.deg - self.deg,
        })
    }

    pub fn lcm(&self, o: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&o.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::new(exps, weights)
    }

    pub fn gcd_is_one(&self, o: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&o.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit i set when variable i (mod 64) occurs.
    pub fn divmask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }

    /// Support as a bitmask over the first 64 variables.
    pub fn support(&self) -> u64 {
        self.divmask()
    }

    pub(crate) fn extend(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat(0).take(extra));
        Monomial { exps, deg: self.deg }
    }

    /// Keeps the first `n` variables; the dropped ones must have exponent 0.
    pub(crate) fn truncate(&self, n: usize) -> Option<Monomial> {
        if self.exps[n..].iter().any(|&e| e != 0) {
            return None;
        }
        Some(Monomial {
            exps: self.exps[..n].into(),
            deg: self.deg,
        })
    }
}

fn dot(exps: &[u16], weights: &[u32]) -> u32 {
    exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
}

/// Dot product of exponents with positive integer weights.
pub fn weighted_degree(exps: &[u16], weights: &[i64]) -> Result<i64> {
    if exps.len() != weights.len() {
        return Err(Error::LengthMismatch(exps.len(), weights.len()));
    }
    if let Some(&w) = weights.iter().find(|&&w| w <= 0) {
        return Err(Error::NonPositiveWeight(w));
    }
    Ok(exps.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum())
}
