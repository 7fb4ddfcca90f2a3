//! Reduced Gröbner bases, normal forms, dimensions and syzygies.

pub mod dimension;
pub mod engine;
pub mod syzygy;

use crate::error::{Error, Result};
use crate::kernel::int::Int;
use crate::kernel::monomial::Monomial;
use crate::kernel::order::MonomialOrder;
use crate::kernel::poly::Polynomial;
use crate::kernel::ring::Ring;
use crate::kernel::FieldMode;

use engine::{EPoly, GbOptions, Reducers, Scalars, QQ, ZZ, Zp};

pub use engine::{counters, reset_counters, DEFAULT_PAIR_CAP};
pub use syzygy::{syzygies, SyzygyMatrix};

#[derive(Debug)]
enum EngineBasis {
    Z(Vec<EPoly<Int>>),
    P(Zp, Vec<EPoly<u64>>),
}

/// A reduced Gröbner basis: monic, sorted by increasing leading monomial.
#[derive(Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    gens: Vec<Polynomial>,
    lms: Vec<Monomial>,
    engine: EngineBasis,
}

/// Reduced Gröbner basis of `gens` under `ord` with the default pair cap.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(gens, ord, &GbOptions::default())
}

pub fn buchberger_with(
    gens: &[Polynomial],
    ord: &MonomialOrder,
    opts: &GbOptions,
) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::Internal("buchberger needs a ring; got no generators".into()));
    };
    let ring = first.ring().ambient();
    buchberger_in(&ring, gens, ord, opts)
}

/// Like [`buchberger_with`] but with an explicit ambient ring (allows empty input).
pub fn buchberger_in(
    ring: &Ring,
    gens: &[Polynomial],
    ord: &MonomialOrder,
    opts: &GbOptions,
) -> Result<GroebnerBasis> {
    let ring = ring.ambient();
    ord.validate(ring.nvars())?;
    for g in gens {
        check_ring(&ring, g)?;
    }
    let (engine, polys) = match ring.field() {
        FieldMode::Rational => {
            let input = gens.iter().map(|g| ZZ.import(g, ord)).collect();
            let out = engine::groebner(&ZZ, ord, ring.weights(), input, opts)?;
            let polys = out.iter().map(|p| ZZ.export(p, &ring)).collect();
            (EngineBasis::Z(out), polys)
        }
        FieldMode::Prime(p) => {
            let s = Zp(p);
            let input = gens.iter().map(|g| s.import(g, ord)).collect();
            let out = engine::groebner(&s, ord, ring.weights(), input, opts)?;
            let polys = out.iter().map(|q| s.export(q, &ring)).collect();
            (EngineBasis::P(s, out), polys)
        }
    };
    let lms = match &engine {
        EngineBasis::Z(v) => v.iter().map(|p| p.lm().clone()).collect(),
        EngineBasis::P(_, v) => v.iter().map(|p| p.lm().clone()).collect(),
    };
    Ok(GroebnerBasis {
        ring,
        order: ord.clone(),
        gens: polys,
        lms,
        engine,
    })
}

fn check_ring(ring: &Ring, p: &Polynomial) -> Result<()> {
    if p.ring().names() != ring.names() || p.ring().field() != ring.field() {
        return Err(Error::ContextMismatch(format!(
            "polynomial from {} used with {}",
            p.ring().describe(),
            ring.describe()
        )));
    }
    Ok(())
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.lms
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.lms.len() == 1 && self.lms[0].is_one()
    }

    /// Exact remainder of multivariate division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        check_ring(&self.ring, f)?;
        let f = f.with_ring(&self.ring);
        Ok(match self.ring.field() {
            FieldMode::Rational => exact_nf(&QQ, &self.order, &self.gens, &f, &self.ring),
            FieldMode::Prime(p) => exact_nf(&Zp(p), &self.order, &self.gens, &f, &self.ring),
        })
    }

    /// Membership test; faster than [`normal_form`](Self::normal_form) over Q.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        check_ring(&self.ring, f)?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.is_unit() {
            return Ok(true);
        }
        Ok(match &self.engine {
            EngineBasis::Z(v) => {
                let red = Reducers::new(v.clone());
                engine::reduce_full(&ZZ, &self.order, ZZ.import(f, &self.order), &red, None, false)
                    .is_zero()
            }
            EngineBasis::P(s, v) => {
                let red = Reducers::new(v.clone());
                engine::reduce_full(s, &self.order, s.import(f, &self.order), &red, None, false)
                    .is_zero()
            }
        })
    }

    /// Krull dimension of the quotient by this ideal; -1 for the unit ideal.
    pub fn krull_dimension(&self) -> i64 {
        dimension::krull_dimension(&self.lms, self.ring.nvars())
    }

    /// Number of standard monomials; errors on positive-dimensional input.
    pub fn vector_space_dimension(&self) -> Result<u64> {
        dimension::vector_space_dimension(&self.lms, self.ring.nvars())
    }
}

/// `h / g` when `g` divides `h` exactly in the polynomial ring, else `None`.
pub fn divide_exact(h: &Polynomial, g: &Polynomial) -> Result<Option<Polynomial>> {
    if h.ring().names() != g.ring().names() || h.ring().field() != g.ring().field() {
        return Err(Error::ContextMismatch("exact division across rings".into()));
    }
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let ring = h.ring().clone();
    let ord = ring.order().clone();
    Ok(match ring.field() {
        FieldMode::Rational => div_generic(&QQ, &ord, h, g, &ring),
        FieldMode::Prime(p) => div_generic(&Zp(p), &ord, h, g, &ring),
    })
}

fn div_generic<S: Scalars>(
    s: &S,
    ord: &MonomialOrder,
    h: &Polynomial,
    g: &Polynomial,
    ring: &Ring,
) -> Option<Polynomial> {
    let (mut q, r) = engine::divide_with_quotients(s, ord, s.import(h, ord), &[s.import(g, ord)]);
    if !r.is_zero() {
        return None;
    }
    Some(s.export_raw(&EPoly { terms: q.remove(0) }, ring))
}

fn exact_nf<S: Scalars>(
    s: &S,
    ord: &MonomialOrder,
    gens: &[Polynomial],
    f: &Polynomial,
    ring: &Ring,
) -> Polynomial {
    let red = Reducers::new(gens.iter().map(|g| s.import(g, ord)).collect());
    let r = engine::reduce_full(s, ord, s.import(f, ord), &red, None, false);
    s.export_raw(&r, ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::rational(&["U", "V"])
    }

    fn gb(gens: &[&str]) -> GroebnerBasis {
        let r = ring();
        let g: Vec<_> = gens.iter().map(|s| r.parse(s).unwrap()).collect();
        buchberger(&g, &MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring();
        let g = gb(&["U"]);
        assert!(g.normal_form(&r.parse("U^2").unwrap()).unwrap().is_zero());
        assert_eq!(g.normal_form(&r.parse("U + 1").unwrap()).unwrap().to_string(), "1");
        assert_eq!(g.normal_form(&r.parse("V").unwrap()).unwrap().to_string(), "V");
    }

    #[test]
    fn normal_form_is_exact_over_q() {
        let r = ring();
        let g = gb(&["2*U - 3*V", "V^2 - 1/3"]);
        let f = r.parse("U^2 + 5/7*U*V").unwrap();
        let nf = g.normal_form(&f).unwrap();
        // f - nf must lie in the ideal
        assert!(g.contains(&f.sub(&nf).unwrap()).unwrap());
        assert_eq!(g.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn membership_examples() {
        let r = ring();
        assert!(gb(&["U"]).contains(&r.parse("U*V").unwrap()).unwrap());
        assert!(!gb(&["U", "V"]).contains(&r.parse("1").unwrap()).unwrap());
        assert!(gb(&["U^2 + V^2"]).contains(&r.parse("U^2 + V^2").unwrap()).unwrap());
    }

    #[test]
    fn basis_examples() {
        let g = gb(&["U + V", "U - V"]);
        let s: Vec<_> = g.generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, vec!["V", "U"]);
        assert_eq!(gb(&["U", "V"]).len(), 2);
        let m = gb(&["U^2", "U*V", "V^3"]);
        assert_eq!(m.len(), 3);
    }

    #[test]
    fn dimensions() {
        assert_eq!(gb(&["U", "V"]).krull_dimension(), 0);
        assert_eq!(gb(&["U"]).krull_dimension(), 1);
        assert_eq!(gb(&["1"]).krull_dimension(), -1);
        let r3 = Ring::rational(&["U", "V", "W"]);
        let zero = buchberger_in(&r3, &[], &MonomialOrder::Grevlex, &GbOptions::default()).unwrap();
        assert_eq!(zero.krull_dimension(), 3);
        assert_eq!(gb(&["U", "V"]).vector_space_dimension(), Ok(1));
        assert_eq!(gb(&["U^2", "V^2"]).vector_space_dimension(), Ok(4));
        assert_eq!(gb(&["U^2", "U*V", "V^3"]).vector_space_dimension(), Ok(4));
        assert!(gb(&["U"]).vector_space_dimension().is_err());
    }

    #[test]
    fn vdim_is_order_independent() {
        let r = ring();
        let gens: Vec<_> = ["U^3 - V^2 + U*V", "V^3 - U^2"]
            .iter()
            .map(|s| r.parse(s).unwrap())
            .collect();
        let a = buchberger(&gens, &MonomialOrder::Grevlex).unwrap();
        let b = buchberger(&gens, &MonomialOrder::Lex).unwrap();
        assert_eq!(a.vector_space_dimension(), b.vector_space_dimension());
        assert_eq!(a.vector_space_dimension(), Ok(9));
    }
}
