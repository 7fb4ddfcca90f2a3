//! Buchberger's algorithm with Gebauer–Möller pair pruning, generic over the
//! coefficient arithmetic.
//!
//! Over Q the engine runs fraction-free on primitive integer polynomials
//! ([`ZZ`]); over F_p it keeps polynomials monic ([`Zp`]). [`QQ`] is a plain
//! rational field used where exact cofactors are needed.

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::coeff::{invmod, Coeff, FieldMode};
use crate::kernel::int::Int;
use crate::kernel::monomial::Monomial;
use crate::kernel::order::MonomialOrder;
use crate::kernel::poly::Polynomial;
use crate::kernel::ring::Ring;

/// Default cap on S-pair reductions per basis computation.
pub const DEFAULT_PAIR_CAP: usize = 200_000;

thread_local! {
    static GB_CALLS: Cell<u64> = const { Cell::new(0) };
    static PAIRS: Cell<u64> = const { Cell::new(0) };
}

/// Work counters for the current thread: (basis computations, S-pair reductions).
pub fn counters() -> (u64, u64) {
    (GB_CALLS.with(|c| c.get()), PAIRS.with(|c| c.get()))
}

pub fn reset_counters() {
    GB_CALLS.with(|c| c.set(0));
    PAIRS.with(|c| c.set(0));
}

pub trait Scalars: Clone {
    type E: Clone + PartialEq + Debug;

    fn is_zero(&self, a: &Self::E) -> bool;
    fn is_one(&self, a: &Self::E) -> bool;
    fn one(&self) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// `a*x - b*y`
    fn mul_sub(&self, a: &Self::E, x: &Self::E, b: &Self::E, y: &Self::E) -> Self::E;
    /// `(alpha, beta)` with `alpha*lp == beta*lg`.
    fn cancel(&self, lp: &Self::E, lg: &Self::E) -> (Self::E, Self::E);
    /// Divides out content (or the leading coefficient).
    fn normalize(&self, p: &mut EPoly<Self::E>);
    /// Divides the common content of several term lists out of all of them.
    fn remove_content(&self, _parts: &mut [&mut Vec<(Self::E, Monomial)>]) {}

    fn import(&self, p: &Polynomial, ord: &MonomialOrder) -> EPoly<Self::E>;
    /// Exports as a monic polynomial in `ring`'s canonical order.
    fn export(&self, p: &EPoly<Self::E>, ring: &Ring) -> Polynomial;
    fn to_coeff(&self, e: &Self::E) -> Coeff;

    /// Exports without rescaling.
    fn export_raw(&self, p: &EPoly<Self::E>, ring: &Ring) -> Polynomial {
        let terms = p
            .terms
            .iter()
            .map(|(c, m)| (self.to_coeff(c), m.clone()))
            .collect();
        Polynomial::from_terms(ring.clone(), terms)
    }
}

/// Engine polynomial: terms strictly decreasing under the active order.
#[derive(Clone, Debug, PartialEq)]
pub struct EPoly<E> {
    pub terms: Vec<(E, Monomial)>,
}

impl<E> EPoly<E> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].1
    }
    pub fn lc(&self) -> &E {
        &self.terms[0].0
    }
}

fn sort_terms<E>(mut terms: Vec<(E, Monomial)>, ord: &MonomialOrder) -> Vec<(E, Monomial)> {
    terms.sort_by(|a, b| ord.cmp(b.1.exps(), a.1.exps()));
    terms
}

/// Fraction-free integer arithmetic for Q-mode bases.
#[derive(Clone, Debug)]
pub struct ZZ;

impl Scalars for ZZ {
    type E = Int;

    fn to_coeff(&self, e: &Int) -> Coeff {
        Coeff::Q(BigRational::from_integer(e.to_big()))
    }

    fn is_zero(&self, a: &Int) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Int) -> bool {
        a.is_one()
    }
    fn one(&self) -> Int {
        Int::ONE
    }
    fn mul(&self, a: &Int, b: &Int) -> Int {
        a.mul(b)
    }
    fn neg(&self, a: &Int) -> Int {
        a.neg()
    }
    fn mul_sub(&self, a: &Int, x: &Int, b: &Int, y: &Int) -> Int {
        a.mul_sub(x, b, y)
    }
    fn cancel(&self, lp: &Int, lg: &Int) -> (Int, Int) {
        let g = lp.gcd(lg);
        let (mut a, mut b) = (lg.div_exact(&g), lp.div_exact(&g));
        if a.is_negative() {
            a = a.neg();
            b = b.neg();
        }
        (a, b)
    }
    fn normalize(&self, p: &mut EPoly<Int>) {
        if p.terms.is_empty() {
            return;
        }
        let mut g = Int::ZERO;
        for (c, _) in &p.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if p.lc().is_negative() {
            g = g.neg();
        }
        if !g.is_one() {
            for t in &mut p.terms {
                t.0 = t.0.div_exact(&g);
            }
        }
    }
    fn remove_content(&self, parts: &mut [&mut Vec<(Int, Monomial)>]) {
        let mut g = Int::ZERO;
        for (c, _) in parts.iter().flat_map(|p| p.iter()) {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        if g.is_zero() {
            return;
        }
        for t in parts.iter_mut().flat_map(|p| p.iter_mut()) {
            t.0 = t.0.div_exact(&g);
        }
    }
    fn import(&self, p: &Polynomial, ord: &MonomialOrder) -> EPoly<Int> {
        let mut den = BigInt::one();
        for (c, _) in p.terms() {
            let r = c.as_rational().expect("rational coefficients");
            den = den.lcm(r.denom());
        }
        let terms = p
            .terms()
            .iter()
            .map(|(c, m)| {
                let r = c.as_rational().expect("rational coefficients");
                let v = r.numer() * (&den / r.denom());
                (Int::from_big(v), m.clone())
            })
            .collect();
        let mut e = EPoly {
            terms: sort_terms(terms, ord),
        };
        self.normalize(&mut e);
        e
    }
    fn export(&self, p: &EPoly<Int>, ring: &Ring) -> Polynomial {
        if p.is_zero() {
            return Polynomial::zero(ring.clone());
        }
        let lc = p.lc().to_big();
        let terms = p
            .terms
            .iter()
            .map(|(c, m)| (Coeff::Q(BigRational::new(c.to_big(), lc.clone())), m.clone()))
            .collect();
        Polynomial::from_terms(ring.clone(), terms)
    }
}

/// Prime field arithmetic; polynomials kept monic.
#[derive(Clone, Debug)]
pub struct Zp(pub u64);

impl Zp {
    fn m(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }
}

impl Scalars for Zp {
    type E = u64;

    fn to_coeff(&self, e: &u64) -> Coeff {
        Coeff::Fp { v: *e, p: self.0 }
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    fn one(&self) -> u64 {
        1
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.m(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn mul_sub(&self, a: &u64, x: &u64, b: &u64, y: &u64) -> u64 {
        let p = self.0;
        (self.m(*a, *x) + p - self.m(*b, *y)) % p
    }
    fn cancel(&self, lp: &u64, lg: &u64) -> (u64, u64) {
        (1, self.m(*lp, invmod(*lg, self.0).expect("nonzero")))
    }
    fn normalize(&self, p: &mut EPoly<u64>) {
        if p.terms.is_empty() || p.terms[0].0 == 1 {
            return;
        }
        let inv = invmod(p.terms[0].0, self.0).expect("nonzero");
        for t in &mut p.terms {
            t.0 = self.m(t.0, inv);
        }
    }
    fn import(&self, p: &Polynomial, ord: &MonomialOrder) -> EPoly<u64> {
        let terms = p
            .terms()
            .iter()
            .map(|(c, m)| match c {
                Coeff::Fp { v, .. } => (*v, m.clone()),
                Coeff::Q(_) => panic!("rational coefficient in prime-field engine"),
            })
            .collect();
        EPoly {
            terms: sort_terms(terms, ord),
        }
    }
    fn export(&self, p: &EPoly<u64>, ring: &Ring) -> Polynomial {
        let mut q = p.clone();
        self.normalize(&mut q);
        let terms = q
            .terms
            .into_iter()
            .map(|(c, m)| (Coeff::Fp { v: c, p: self.0 }, m))
            .collect();
        Polynomial::from_terms(ring.clone(), terms)
    }
}

/// Rational field; used for exact cofactor bookkeeping.
#[derive(Clone, Debug)]
pub struct QQ;

impl Scalars for QQ {
    type E = BigRational;

    fn to_coeff(&self, e: &BigRational) -> Coeff {
        Coeff::Q(e.clone())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul_sub(&self, a: &BigRational, x: &BigRational, b: &BigRational, y: &BigRational) -> BigRational {
        a * x - b * y
    }
    fn cancel(&self, lp: &BigRational, lg: &BigRational) -> (BigRational, BigRational) {
        (BigRational::one(), lp / lg)
    }
    fn normalize(&self, p: &mut EPoly<BigRational>) {
        if p.terms.is_empty() || p.terms[0].0.is_one() {
            return;
        }
        let inv = p.terms[0].0.recip();
        for t in &mut p.terms {
            t.0 = &t.0 * &inv;
        }
    }
    fn import(&self, p: &Polynomial, ord: &MonomialOrder) -> EPoly<BigRational> {
        let terms = p
            .terms()
            .iter()
            .map(|(c, m)| (c.as_rational().expect("rational").clone(), m.clone()))
            .collect();
        EPoly {
            terms: sort_terms(terms, ord),
        }
    }
    fn export(&self, p: &EPoly<BigRational>, ring: &Ring) -> Polynomial {
        let mut q = p.clone();
        self.normalize(&mut q);
        let terms = q.terms.into_iter().map(|(c, m)| (Coeff::Q(c), m)).collect();
        Polynomial::from_terms(ring.clone(), terms)
    }
}

/// Scalars for a field mode that tolerate exact division (used for cofactors).
#[derive(Clone, Debug)]
pub enum FieldScalars {
    Q(QQ),
    P(Zp),
}

impl FieldScalars {
    pub fn for_mode(mode: FieldMode) -> FieldScalars {
        match mode {
            FieldMode::Rational => FieldScalars::Q(QQ),
            FieldMode::Prime(p) => FieldScalars::P(Zp(p)),
        }
    }
}

/// Computes `alpha * p[skip..] - beta * q * g[1..]`, merging under `ord`.
pub fn sub_mul<S: Scalars>(
    s: &S,
    ord: &MonomialOrder,
    p: &[(S::E, Monomial)],
    alpha: &S::E,
    beta: &S::E,
    q: &Monomial,
    g: &[(S::E, Monomial)],
) -> Vec<(S::E, Monomial)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let alpha_one = s.is_one(alpha);
    let mut gm: Option<Monomial> = g.first().map(|t| t.1.mul(q));
    while i < p.len() && j < g.len() {
        let gmono = gm.as_ref().expect("present");
        match ord.cmp(p[i].1.exps(), gmono.exps()) {
            Ordering::Greater => {
                let c = if alpha_one {
                    p[i].0.clone()
                } else {
                    s.mul(alpha, &p[i].0)
                };
                out.push((c, p[i].1.clone()));
                i += 1;
            }
            Ordering::Less => {
                let c = s.neg(&s.mul(beta, &g[j].0));
                out.push((c, gm.take().expect("present")));
                j += 1;
                gm = g.get(j).map(|t| t.1.mul(q));
            }
            Ordering::Equal => {
                let c = s.mul_sub(alpha, &p[i].0, beta, &g[j].0);
                if !s.is_zero(&c) {
                    out.push((c, p[i].1.clone()));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|t| t.1.mul(q));
            }
        }
    }
    while i < p.len() {
        let c = if alpha_one {
            p[i].0.clone()
        } else {
            s.mul(alpha, &p[i].0)
        };
        out.push((c, p[i].1.clone()));
        i += 1;
    }
    while j < g.len() {
        let c = s.neg(&s.mul(beta, &g[j].0));
        out.push((c, gm.take().expect("present")));
        j += 1;
        gm = g.get(j).map(|t| t.1.mul(q));
    }
    out
}

/// Reduction steps between content removals in fraction-free arithmetic.
const CONTENT_EVERY: usize = 8;

/// A reducer set: polynomials with cached leading monomials and divisibility masks.
pub struct Reducers<E> {
    pub polys: Vec<EPoly<E>>,
    masks: Vec<u64>,
}

impl<E: Clone> Reducers<E> {
    pub fn new(polys: Vec<EPoly<E>>) -> Reducers<E> {
        let masks = polys.iter().map(|p| p.lm().divmask()).collect();
        Reducers { polys, masks }
    }

    fn find(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        let mask = m.divmask();
        let mut best: Option<usize> = None;
        for (k, g) in self.polys.iter().enumerate() {
            if Some(k) == skip || self.masks[k] & !mask != 0 {
                continue;
            }
            if g.lm().divides(m) && best.is_none_or(|b| self.polys[b].terms.len() > g.terms.len()) {
                best = Some(k);
            }
        }
        best
    }
}

/// Full reduction (leading and tail terms) of `p` modulo `red`. Over ZZ the
/// result equals the true remainder up to a nonzero scalar.
pub fn reduce_full<S: Scalars>(
    s: &S,
    ord: &MonomialOrder,
    p: EPoly<S::E>,
    red: &Reducers<S::E>,
    skip: Option<usize>,
    normalize: bool,
) -> EPoly<S::E> {
    let mut rem: Vec<(S::E, Monomial)> = Vec::new();
    let mut cur = p.terms;
    let mut start = 0;
    let mut steps = 0usize;
    loop {
        let mut hit = None;
        while start < cur.len() {
            if let Some(k) = red.find(&cur[start].1, skip) {
                hit = Some(k);
                break;
            }
            start += 1;
        }
        // terms before `start` are irreducible
        rem.extend(cur.drain(..start));
        start = 0;
        let Some(k) = hit else { break };
        let g = &red.polys[k];
        let (c, m) = &cur[0];
        let q = g.lm().quotient_of(m).expect("divisible");
        let (alpha, beta) = s.cancel(c, g.lc());
        if !s.is_one(&alpha) {
            for t in &mut rem {
                t.0 = s.mul(&alpha, &t.0);
            }
        }
        cur = sub_mul(s, ord, &cur[1..], &alpha, &beta, &q, &g.terms[1..]);
        steps += 1;
        if steps % CONTENT_EVERY == 0 {
            s.remove_content(&mut [&mut rem, &mut cur]);
        }
    }
    let mut out = EPoly { terms: rem };
    if normalize {
        s.normalize(&mut out);
    }
    out
}

#[derive(Clone, Debug)]
pub struct GbOptions {
    pub pair_cap: usize,
    /// Re-check every S-pair of the result (also enabled by `IDEALCORE_VERIFY_GB=1`).
    pub verify: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            pair_cap: DEFAULT_PAIR_CAP,
            verify: std::env::var("IDEALCORE_VERIFY_GB").is_ok_and(|v| v == "1"),
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn spoly<S: Scalars>(
    s: &S,
    ord: &MonomialOrder,
    f: &EPoly<S::E>,
    g: &EPoly<S::E>,
    lcm: &Monomial,
) -> EPoly<S::E> {
    let qf = f.lm().quotient_of(lcm).expect("lcm");
    let qg = g.lm().quotient_of(lcm).expect("lcm");
    let (alpha, beta) = s.cancel(f.lc(), g.lc());
    // alpha*qf*f - beta*qg*g
    let f_scaled: Vec<_> = f.terms[1..]
        .iter()
        .map(|(c, m)| (c.clone(), m.mul(&qf)))
        .collect();
    EPoly {
        terms: sub_mul(s, ord, &f_scaled, &alpha, &beta, &qg, &g.terms[1..]),
    }
}

fn sugar_of<E>(p: &EPoly<E>) -> u32 {
    p.terms.iter().map(|t| t.1.degree()).max().unwrap_or(0)
}

/// Reduced Gröbner basis of `input` under `ord`, sorted by increasing
/// leading monomial. `weights` are the ring weights (used for lcms).
pub fn groebner<S: Scalars>(
    s: &S,
    ord: &MonomialOrder,
    weights: &[u32],
    input: Vec<EPoly<S::E>>,
    opts: &GbOptions,
) -> Result<Vec<EPoly<S::E>>> {
    GB_CALLS.with(|c| c.set(c.get() + 1));
    let mut input: Vec<EPoly<S::E>> = input.into_iter().filter(|p| !p.is_zero()).collect();
    for p in &mut input {
        s.normalize(p);
    }
    input.sort_by(|a, b| ord.cmp(a.lm().exps(), b.lm().exps()));

    let mut red = Reducers::<S::E> {
        polys: Vec::new(),
        masks: Vec::new(),
    };
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut reductions = 0usize;

    let mut pending: std::collections::VecDeque<(EPoly<S::E>, u32)> =
        input.into_iter().map(|p| {
            let sg = sugar_of(&p);
            (p, sg)
        }).collect();

    loop {
        let (h, h_sugar) = if let Some(x) = pending.pop_front() {
            x
        } else {
            // pick the pair with least sugar, then least lcm
            let Some(best) = (0..pairs.len()).min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| ord.cmp(pairs[a].lcm.exps(), pairs[b].lcm.exps()))
            }) else {
                break;
            };
            let pr = pairs.swap_remove(best);
            reductions += 1;
            PAIRS.with(|c| c.set(c.get() + 1));
            if reductions > opts.pair_cap {
                return Err(Error::ResourceCap {
                    what: "S-pair reductions".into(),
                    cap: opts.pair_cap,
                });
            }
            let sp = spoly(s, ord, &red.polys[pr.i], &red.polys[pr.j], &pr.lcm);
            (sp, pr.sugar)
        };
        let h = reduce_full(s, ord, h, &red, None, true);
        if h.is_zero() {
            continue;
        }
        if h.lm().is_one() {
            return Ok(vec![EPoly {
                terms: vec![(s.one(), h.lm().clone())],
            }]);
        }
        let h_sugar = h_sugar.max(sugar_of(&h));
        let hi = red.polys.len();
        update_pairs(&red, &active, &mut pairs, &h, hi, h_sugar, &sugar, weights);
        for k in 0..hi {
            if active[k] && h.lm().divides(red.polys[k].lm()) {
                active[k] = false;
            }
        }
        red.masks.push(h.lm().divmask());
        red.polys.push(h);
        sugar.push(h_sugar);
        active.push(true);
    }

    // minimal basis, then tail-reduce each element against the others
    let mut basis: Vec<EPoly<S::E>> = red
        .polys
        .into_iter()
        .zip(active)
        .filter_map(|(p, a)| a.then_some(p))
        .collect();
    basis.sort_by(|a, b| ord.cmp(a.lm().exps(), b.lm().exps()));
    let mut minimal: Vec<EPoly<S::E>> = Vec::new();
    for p in basis {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let red = Reducers::new(minimal);
    let mut out = Vec::with_capacity(red.polys.len());
    for k in 0..red.polys.len() {
        let p = red.polys[k].clone();
        out.push(reduce_tail(s, ord, p, &red, k));
    }
    out.sort_by(|a, b| ord.cmp(a.lm().exps(), b.lm().exps()));
    if opts.verify {
        verify_basis(s, ord, weights, &out)?;
    }
    Ok(out)
}

/// Reduces every non-leading term of `red.polys[k]` by the other elements.
fn reduce_tail<S: Scalars>(
    s: &S,
    ord: &MonomialOrder,
    p: EPoly<S::E>,
    red: &Reducers<S::E>,
    k: usize,
) -> EPoly<S::E> {
    let mut head = vec![p.terms[0].clone()];
    let rest = EPoly {
        terms: p.terms[1..].to_vec(),
    };
    // reduce the tail while scaling the head by the same multipliers
    let mut rem: Vec<(S::E, Monomial)> = Vec::new();
    let mut cur = rest.terms;
    let mut steps = 0usize;
    loop {
        let mut idx = None;
        for (i, t) in cur.iter().enumerate() {
            if let Some(g) = red.find(&t.1, Some(k)) {
                idx = Some((i, g));
                break;
            }
        }
        let Some((i, gk)) = idx else {
            rem.extend(cur);
            break;
        };
        rem.extend(cur.drain(..i));
        let g = &red.polys[gk];
        let (c, m) = &cur[0];
        let q = g.lm().quotient_of(m).expect("divisible");
        let (alpha, beta) = s.cancel(c, g.lc());
        if !s.is_one(&alpha) {
            for t in rem.iter_mut().chain(head.iter_mut()) {
                t.0 = s.mul(&alpha, &t.0);
            }
        }
        cur = sub_mul(s, ord, &cur[1..], &alpha, &beta, &q, &g.terms[1..]);
        steps += 1;
        if steps % CONTENT_EVERY == 0 {
            s.remove_content(&mut [&mut head, &mut rem, &mut cur]);
        }
    }
    head.extend(rem);
    let mut out = EPoly { terms: head };
    s.normalize(&mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn update_pairs<E: Clone>(
    red: &Reducers<E>,
    active: &[bool],
    pairs: &mut Vec<Pair>,
    h: &EPoly<E>,
    hi: usize,
    h_sugar: u32,
    sugar: &[u32],
    weights: &[u32],
) {
    let hl = h.lm();
    // old pairs made redundant by h (Buchberger's chain criterion)
    pairs.retain(|p| {
        if !hl.divides(&p.lcm) {
            return true;
        }
        let li = red.polys[p.i].lm().lcm(hl, weights);
        let lj = red.polys[p.j].lm().lcm(hl, weights);
        li == p.lcm || lj == p.lcm
    });
    struct Cand {
        g: usize,
        lcm: Monomial,
        coprime: bool,
        sugar: u32,
        keep: bool,
    }
    let mut cands: Vec<Cand> = (0..hi)
        .filter(|&g| active[g])
        .map(|g| {
            let gl = red.polys[g].lm();
            let lcm = gl.lcm(hl, weights);
            let qh = hl.quotient_of(&lcm).expect("lcm").degree();
            let qg = gl.quotient_of(&lcm).expect("lcm").degree();
            Cand {
                g,
                coprime: gl.gcd_is_one(hl),
                sugar: (sugar[g] + qg).max(h_sugar + qh),
                lcm,
                keep: true,
            }
        })
        .collect();
    // M: drop pairs whose lcm is a proper multiple of another new lcm
    for a in 0..cands.len() {
        for b in 0..cands.len() {
            if a != b && cands[b].lcm != cands[a].lcm && cands[b].lcm.divides(&cands[a].lcm) {
                cands[a].keep = false;
                break;
            }
        }
    }
    // F and product criterion: one representative per lcm, none if any is coprime
    for a in 0..cands.len() {
        if !cands[a].keep {
            continue;
        }
        let same: Vec<usize> = (0..cands.len())
            .filter(|&b| cands[b].keep && cands[b].lcm == cands[a].lcm)
            .collect();
        let any_coprime = same.iter().any(|&b| cands[b].coprime);
        for &b in &same {
            cands[b].keep = false;
        }
        if !any_coprime {
            cands[a].keep = true;
        }
    }
    for c in cands.into_iter().filter(|c| c.keep) {
        pairs.push(Pair {
            i: c.g,
            j: hi,
            lcm: c.lcm,
            sugar: c.sugar,
        });
    }
}

/// Post-hoc check: every S-polynomial of the basis reduces to zero.
pub fn verify_basis<S: Scalars>(
    s: &S,
    ord: &MonomialOrder,
    weights: &[u32],
    basis: &[EPoly<S::E>],
) -> Result<()> {
    let red = Reducers::new(basis.to_vec());
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lcm = basis[i].lm().lcm(basis[j].lm(), weights);
            let sp = spoly(s, ord, &basis[i], &basis[j], &lcm);
            if !reduce_full(s, ord, sp, &red, None, false).is_zero() {
                return Err(Error::Internal(format!(
                    "S-pair ({i},{j}) does not reduce to zero"
                )));
            }
        }
    }
    Ok(())
}

/// Field-only: reduce `p` by `red`, returning the remainder and the quotient
/// attached to each reducer (`p = sum q_k g_k + r`).
pub fn divide_with_quotients<S: Scalars>(
    s: &S,
    ord: &MonomialOrder,
    p: EPoly<S::E>,
    red: &[EPoly<S::E>],
) -> (Vec<Vec<(S::E, Monomial)>>, EPoly<S::E>) {
    let reducers = Reducers::new(red.to_vec());
    let mut quots: Vec<Vec<(S::E, Monomial)>> = vec![Vec::new(); red.len()];
    let mut rem = Vec::new();
    let mut cur = p.terms;
    while let Some((c, m)) = cur.first().cloned() {
        match reducers.find(&m, None) {
            Some(k) => {
                let g = &red[k];
                let q = g.lm().quotient_of(&m).expect("divisible");
                let (alpha, beta) = s.cancel(&c, g.lc());
                debug_assert!(s.is_one(&alpha), "field scalars required");
                quots[k].push((beta.clone(), q.clone()));
                cur = sub_mul(s, ord, &cur[1..], &alpha, &beta, &q, &g.terms[1..]);
            }
            None => {
                rem.push(cur.remove(0));
            }
        }
    }
    for q in &mut quots {
        // quotient terms arrive in decreasing order but may repeat monomials
        let mut merged: Vec<(S::E, Monomial)> = Vec::new();
        let mut sorted = std::mem::take(q);
        sorted.sort_by(|a, b| ord.cmp(b.1.exps(), a.1.exps()));
        for (c, m) in sorted {
            match merged.last_mut() {
                Some(last) if last.1 == m => {
                    last.0 = s.mul_sub(&s.one(), &last.0, &s.neg(&s.one()), &c);
                }
                _ => merged.push((c, m)),
            }
        }
        merged.retain(|t| !s.is_zero(&t.0));
        *q = merged;
    }
    (quots, EPoly { terms: rem })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ring::Ring;

    fn gb_strings(ring: &Ring, gens: &[&str], ord: &MonomialOrder) -> Vec<String> {
        let input: Vec<EPoly<Int>> = gens
            .iter()
            .map(|g| ZZ.import(&ring.parse(g).unwrap(), ord))
            .collect();
        let opts = GbOptions {
            verify: true,
            ..GbOptions::default()
        };
        groebner(&ZZ, ord, ring.weights(), input, &opts)
            .unwrap()
            .iter()
            .map(|p| ZZ.export(p, ring).to_string())
            .collect()
    }

    #[test]
    fn linear_forms() {
        let r = Ring::rational(&["U", "V"]);
        let g = gb_strings(&r, &["U + V", "U - V"], &MonomialOrder::Grevlex);
        assert_eq!(g, vec!["V", "U"]);
    }

    #[test]
    fn monomial_ideals_are_their_own_bases() {
        let r = Ring::rational(&["U", "V"]);
        let g = gb_strings(&r, &["U^2", "U*V", "V^3"], &MonomialOrder::Grevlex);
        assert_eq!(g, vec!["U*V", "U^2", "V^3"]);
    }

    #[test]
    fn unit_ideal_collapses() {
        let r = Ring::rational(&["U", "V"]);
        let g = gb_strings(&r, &["U*V - 1", "U"], &MonomialOrder::Grevlex);
        assert_eq!(g, vec!["1"]);
    }

    #[test]
    fn lex_twisted_cubic() {
        let r = Ring::rational(&["t", "x", "y", "z"]);
        let g = gb_strings(&r, &["x - t", "y - t^2", "z - t^3"], &MonomialOrder::Lex);
        assert!(g.contains(&"x^2 - y".to_string()));
        assert!(g.contains(&"x*y - z".to_string()) || g.contains(&"-x*y + z".to_string()));
    }

    #[test]
    fn cap_is_enforced() {
        let r = Ring::rational(&["x", "y", "z"]);
        let ord = MonomialOrder::Grevlex;
        let input: Vec<_> = ["x*y - z^2", "y*z - x^2", "x*z - y^2"]
            .iter()
            .map(|g| ZZ.import(&r.parse(g).unwrap(), &ord))
            .collect();
        let opts = GbOptions {
            pair_cap: 1,
            verify: false,
        };
        assert!(matches!(
            groebner(&ZZ, &ord, r.weights(), input, &opts),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn prime_field_matches_rational() {
        let q = Ring::rational(&["x", "y", "z"]);
        let p = Ring::new(&["x", "y", "z"], &[1, 1, 1], FieldMode::Prime(32003)).unwrap();
        let gens = ["x^2 + 2*y*z - 3", "y^2 - x*z + 1", "x*y*z - 2*x"];
        let ord = MonomialOrder::Grevlex;
        let a = gb_strings(&q, &gens, &ord);
        let input: Vec<_> = gens
            .iter()
            .map(|g| Zp(32003).import(&p.parse(g).unwrap(), &ord))
            .collect();
        let b = groebner(&Zp(32003), &ord, p.weights(), input, &GbOptions::default()).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            let lx = q.parse(x).unwrap();
            let ly = Zp(32003).export(y, &p);
            assert_eq!(lx.lead().unwrap().1, ly.lead().unwrap().1);
        }
    }
}
