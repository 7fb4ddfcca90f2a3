//! First syzygies via Buchberger with cofactors.
//!
//! Every basis element carries its representation in terms of the input
//! generators. Syzygies of the basis come from reducing all S-pairs to
//! zero; they are transported back through the representation matrix and
//! completed by the rows `e_j - (B A)_j` expressing each input generator
//! through the basis.

use crate::error::{Error, Result};
use crate::groebner::engine::{self, EPoly, FieldScalars, Scalars};
use crate::kernel::monomial::Monomial;
use crate::kernel::order::MonomialOrder;
use crate::kernel::poly::Polynomial;
use crate::kernel::ring::Ring;

/// Rows `(a_1..a_n)` with `sum a_j f_j = 0`, generating all first syzygies.
#[derive(Clone, Debug)]
pub struct SyzygyMatrix {
    pub rows: Vec<Vec<Polynomial>>,
}

impl SyzygyMatrix {
    /// Checks every row against the generator vector symbolically.
    pub fn annihilates(&self, gens: &[Polynomial]) -> Result<bool> {
        for row in &self.rows {
            let mut acc = Polynomial::zero(gens[0].ring().clone());
            for (a, f) in row.iter().zip(gens) {
                acc = acc.add(&a.mul(f)?)?;
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

type Vecp<E> = Vec<EPoly<E>>;

struct Elem<E> {
    poly: EPoly<E>,
    rep: Vecp<E>,
}

fn zero_vec<E>(n: usize) -> Vecp<E> {
    (0..n).map(|_| EPoly { terms: Vec::new() }).collect()
}

/// `a - c*q*b` componentwise.
fn axpy<S: Scalars>(
    s: &S,
    ord: &MonomialOrder,
    a: &Vecp<S::E>,
    c: &S::E,
    q: &Monomial,
    b: &Vecp<S::E>,
) -> Vecp<S::E> {
    a.iter()
        .zip(b)
        .map(|(x, y)| EPoly {
            terms: engine::sub_mul(s, ord, &x.terms, &s.one(), c, q, &y.terms),
        })
        .collect()
}

fn scale_vec<S: Scalars>(s: &S, v: &Vecp<S::E>, c: &S::E) -> Vecp<S::E> {
    v.iter()
        .map(|p| EPoly {
            terms: p.terms.iter().map(|(d, m)| (s.mul(c, d), m.clone())).collect(),
        })
        .collect()
}

/// Reduces (p, rep) fully by `basis`, mirroring every step on `rep`.
fn reduce_tracked<S: Scalars>(
    s: &S,
    ord: &MonomialOrder,
    mut p: EPoly<S::E>,
    mut rep: Vecp<S::E>,
    basis: &[Elem<S::E>],
) -> (EPoly<S::E>, Vecp<S::E>) {
    let mut rem: Vec<(S::E, Monomial)> = Vec::new();
    while let Some((c, m)) = p.terms.first().cloned() {
        let hit = basis.iter().find(|g| g.poly.lm().divides(&m));
        match hit {
            Some(g) => {
                let q = g.poly.lm().quotient_of(&m).expect("divisible");
                let (alpha, beta) = s.cancel(&c, g.poly.lc());
                debug_assert!(s.is_one(&alpha));
                p.terms = engine::sub_mul(s, ord, &p.terms[1..], &alpha, &beta, &q, &g.poly.terms[1..]);
                rep = axpy(s, ord, &rep, &beta, &q, &g.rep);
            }
            None => rem.push(p.terms.remove(0)),
        }
    }
    (EPoly { terms: rem }, rep)
}

fn make_monic<S: Scalars>(s: &S, e: Elem<S::E>) -> Elem<S::E> {
    if s.is_one(e.poly.lc()) {
        return e;
    }
    let mut poly = e.poly.clone();
    s.normalize(&mut poly);
    let (_, factor) = s.cancel(&s.one(), e.poly.lc());
    Elem {
        rep: scale_vec(s, &e.rep, &factor),
        poly,
    }
}

fn syz_generic<S: Scalars>(
    s: &S,
    ord: &MonomialOrder,
    ring: &Ring,
    gens: &[Polynomial],
    pair_cap: usize,
) -> Result<Vec<Vec<Polynomial>>> {
    let n = gens.len();
    let weights = ring.weights();
    let fs: Vec<EPoly<S::E>> = gens.iter().map(|g| s.import(g, ord)).collect();
    let mut rows: Vec<Vecp<S::E>> = Vec::new();
    let mut basis: Vec<Elem<S::E>> = Vec::new();
    for (j, f) in fs.iter().enumerate() {
        let mut rep = zero_vec(n);
        rep[j] = EPoly {
            terms: vec![(s.one(), Monomial::one(ring.nvars()))],
        };
        if f.is_zero() {
            rows.push(rep);
            continue;
        }
        basis.push(make_monic(s, Elem { poly: f.clone(), rep }));
    }
    // plain Buchberger with the product criterion; cofactors ride along
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut steps = 0usize;
    loop {
        // least lcm first
        let lcm_of = |&(i, j): &(usize, usize)| basis[i].poly.lm().lcm(basis[j].poly.lm(), weights);
        let Some(best) = (0..pairs.len()).min_by(|&x, &y| {
            let (lx, ly) = (lcm_of(&pairs[x]), lcm_of(&pairs[y]));
            lx.degree().cmp(&ly.degree()).then_with(|| ord.cmp(lx.exps(), ly.exps()))
        }) else {
            break;
        };
        let (i, j) = pairs.swap_remove(best);
        let (a, b) = (&basis[i], &basis[j]);
        if a.poly.lm().gcd_is_one(b.poly.lm()) {
            continue;
        }
        let lcm = a.poly.lm().lcm(b.poly.lm(), weights);
        let pending = |x: usize, y: usize| pairs.contains(&(x.min(y), x.max(y)));
        // chain criterion
        if (0..basis.len())
            .any(|k| k != i && k != j && basis[k].poly.lm().divides(&lcm) && !pending(i, k) && !pending(j, k))
        {
            continue;
        }
        steps += 1;
        if steps > pair_cap {
            return Err(Error::ResourceCap {
                what: "syzygy S-pair reductions".into(),
                cap: pair_cap,
            });
        }
        let qa = a.poly.lm().quotient_of(&lcm).expect("lcm");
        let qb = b.poly.lm().quotient_of(&lcm).expect("lcm");
        let one = s.one();
        let a_sh: Vec<_> = a.poly.terms.iter().map(|(c, m)| (c.clone(), m.mul(&qa))).collect();
        let sp = EPoly {
            terms: engine::sub_mul(s, ord, &a_sh, &one, &one, &qb, &b.poly.terms),
        };
        let rep_a = axpy(s, ord, &zero_vec(n), &s.neg(&one), &qa, &a.rep);
        let rep = axpy(s, ord, &rep_a, &one, &qb, &b.rep);
        let (h, hrep) = reduce_tracked(s, ord, sp, rep, &basis);
        if h.is_zero() {
            continue;
        }
        let k = basis.len();
        basis.push(make_monic(s, Elem { poly: h, rep: hrep }));
        for i in 0..k {
            pairs.push((i, k));
        }
    }
    // minimal basis
    let mut keep: Vec<usize> = Vec::new();
    for k in 0..basis.len() {
        let lm = basis[k].poly.lm();
        let dominated = (0..basis.len()).any(|o| {
            o != k
                && basis[o].poly.lm().divides(lm)
                && (basis[o].poly.lm() != lm || o < k)
        });
        if !dominated {
            keep.push(k);
        }
    }
    let g: Vec<&Elem<S::E>> = keep.iter().map(|&k| &basis[k]).collect();
    let gpolys: Vec<EPoly<S::E>> = g.iter().map(|e| e.poly.clone()).collect();
    let t = g.len();
    let one = s.one();
    // transport a syzygy on the basis back to the generators
    let transport = |coeffs: &[Vec<(S::E, Monomial)>]| -> Vecp<S::E> {
        let mut acc = zero_vec(n);
        for (k, q) in coeffs.iter().enumerate() {
            for (c, m) in q {
                acc = axpy(s, ord, &acc, &s.neg(c), m, &g[k].rep);
            }
        }
        acc
    };
    for i in 0..t {
        for jdx in i + 1..t {
            let (a, b) = (&gpolys[i], &gpolys[jdx]);
            let lcm = a.lm().lcm(b.lm(), weights);
            let qa = a.lm().quotient_of(&lcm).expect("lcm");
            let qb = b.lm().quotient_of(&lcm).expect("lcm");
            let a_sh: Vec<_> = a.terms.iter().map(|(c, m)| (c.clone(), m.mul(&qa))).collect();
            let sp = EPoly {
                terms: engine::sub_mul(s, ord, &a_sh, &one, &one, &qb, &b.terms),
            };
            let (mut quots, rem) = engine::divide_with_quotients(s, ord, sp, &gpolys);
            if !rem.is_zero() {
                return Err(Error::Internal("basis S-pair does not reduce to zero".into()));
            }
            // qa*e_i - qb*e_j - sum quots_k e_k
            for q in quots.iter_mut() {
                for t in q.iter_mut() {
                    t.0 = s.neg(&t.0);
                }
            }
            quots[i].push((one.clone(), qa));
            quots[jdx].push((s.neg(&one), qb));
            rows.push(transport(&quots));
        }
    }
    for (j, f) in fs.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let (quots, rem) = engine::divide_with_quotients(s, ord, f.clone(), &gpolys);
        if !rem.is_zero() {
            return Err(Error::Internal("generator not in its own ideal".into()));
        }
        let t = transport(&quots);
        let mut row = scale_vec(s, &t, &s.neg(&one));
        let unit = [(one.clone(), Monomial::one(ring.nvars()))];
        row[j] = EPoly {
            terms: engine::sub_mul(s, ord, &unit, &one, &one, &unit[0].1, &t[j].terms),
        };
        rows.push(row);
    }
    let mut out: Vec<Vec<Polynomial>> = Vec::new();
    for r in rows {
        let row: Vec<Polynomial> = r.iter().map(|p| s.export_raw(p, ring)).collect();
        if row.iter().all(|p| p.is_zero()) || out.contains(&row) {
            continue;
        }
        out.push(row);
    }
    Ok(out)
}

/// Generating set of the first syzygy module of `gens` (over the ambient ring).
pub fn syzygies(gens: &[Polynomial]) -> Result<SyzygyMatrix> {
    syzygies_capped(gens, crate::groebner::DEFAULT_PAIR_CAP)
}

pub fn syzygies_capped(gens: &[Polynomial], pair_cap: usize) -> Result<SyzygyMatrix> {
    let Some(first) = gens.first() else {
        return Ok(SyzygyMatrix { rows: Vec::new() });
    };
    let ring = first.ring().ambient();
    let gens: Vec<Polynomial> = gens.iter().map(|g| g.with_ring(&ring)).collect();
    let ord = ring.order().clone();
    let rows = match FieldScalars::for_mode(ring.field()) {
        FieldScalars::Q(q) => syz_generic(&q, &ord, &ring, &gens, pair_cap)?,
        FieldScalars::P(p) => syz_generic(&p, &ord, &ring, &gens, pair_cap)?,
    };
    Ok(SyzygyMatrix { rows })
}
