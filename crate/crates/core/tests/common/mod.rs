//! Oracles, generators and property checks shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use idealcore::groebner::syzygies;
use idealcore::ideal::Ideal;
use idealcore::kernel::{Monomial, Polynomial, Ring};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type RawPoly = Vec<(i64, Vec<u16>)>;

pub fn ring(n: usize) -> Ring {
    let names = ["x", "y", "z"];
    Ring::rational(&names[..n])
}

pub fn build(r: &Ring, raw: &RawPoly) -> Polynomial {
    let f = r.field();
    let terms = raw
        .iter()
        .map(|(c, e)| (f.from_i64(*c), Monomial::new(e.clone(), r.weights())))
        .collect();
    Polynomial::from_terms(r.clone(), terms)
}

pub fn raw_poly(n: usize, max_deg: u16, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    let monos: Vec<Vec<u16>> = (0..=max_deg).flat_map(|d| monomials_of_degree(n, d)).collect();
    prop::collection::vec((-6i64..=6, 0..monos.len()), 1..=max_terms)
        .prop_map(move |v| v.into_iter().map(|(c, k)| (c, monos[k].clone())).collect())
}

/// A homogeneous polynomial of degree `d` in `n` variables.
pub fn raw_form(n: usize, d: u16, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    let monos = monomials_of_degree(n, d);
    prop::collection::vec((-4i64..=4, 0..monos.len()), 1..=max_terms)
        .prop_map(move |v| v.into_iter().map(|(c, k)| (c, monos[k].clone())).collect())
}

pub fn monomials_of_degree(n: usize, d: u16) -> Vec<Vec<u16>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn term_map(p: &Polynomial) -> BTreeMap<Vec<u16>, BigRational> {
    p.terms()
        .iter()
        .map(|(c, m)| (m.exps().to_vec(), c.as_rational().expect("rational").clone()))
        .collect()
}

fn rank(rows: &mut [Vec<BigRational>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone() / piv.clone();
                for k in c..cols {
                    let v = rows[r][k].clone() * f.clone();
                    rows[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Membership of a form `f` of degree `d` in the ideal of the forms `gens`,
/// decided by linear algebra on the degree-`d` piece.
pub fn graded_member(n: usize, gens: &[(u16, RawPoly)], f: &RawPoly, d: u16) -> bool {
    let basis = monomials_of_degree(n, d);
    let index: BTreeMap<Vec<u16>, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let to_row = |terms: &BTreeMap<Vec<u16>, BigRational>| {
        let mut row = vec![BigRational::zero(); basis.len()];
        for (m, c) in terms {
            row[index[m]] += c.clone();
        }
        row
    };
    let mut rows = Vec::new();
    for (e, g) in gens {
        if *e > d {
            continue;
        }
        for shift in monomials_of_degree(n, d - e) {
            let mut t: BTreeMap<Vec<u16>, BigRational> = BTreeMap::new();
            for (c, m) in g {
                let key: Vec<u16> = m.iter().zip(&shift).map(|(a, b)| a + b).collect();
                *t.entry(key).or_insert_with(BigRational::zero) += BigRational::from_integer((*c).into());
            }
            rows.push(to_row(&t));
        }
    }
    let mut ft: BTreeMap<Vec<u16>, BigRational> = BTreeMap::new();
    for (c, m) in f {
        *ft.entry(m.clone()).or_insert_with(BigRational::zero) += BigRational::from_integer((*c).into());
    }
    let base = rank(&mut rows.clone());
    rows.push(to_row(&ft));
    rank(&mut rows) == base
}

/// `sum_j row_j * g_j`, computed term by term.
pub fn apply_row(row: &[Polynomial], gens: &[Polynomial]) -> BTreeMap<Vec<u16>, BigRational> {
    let mut acc: BTreeMap<Vec<u16>, BigRational> = BTreeMap::new();
    for (a, g) in row.iter().zip(gens) {
        for (ma, ca) in term_map(a) {
            for (mg, cg) in term_map(g) {
                let key: Vec<u16> = ma.iter().zip(&mg).map(|(x, y)| x + y).collect();
                *acc.entry(key).or_insert_with(BigRational::zero) += ca.clone() * cg;
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

// ---- property checks ----

pub fn check_ring_axioms(a: &RawPoly, b: &RawPoly, c: &RawPoly) -> Result<(), TestCaseError> {
    let r = ring(3);
    let (a, b, c) = (build(&r, a), build(&r, b), build(&r, c));
    let ab = a.mul(&b).unwrap();
    prop_assert_eq!(&ab, &b.mul(&a).unwrap());
    prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
    prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
    prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    prop_assert_eq!(
        a.mul(&b.add(&c).unwrap()).unwrap(),
        ab.add(&a.mul(&c).unwrap()).unwrap()
    );
    prop_assert!(a.sub(&a).unwrap().is_zero());
    prop_assert_eq!(a.mul(&Polynomial::one(r.clone())).unwrap(), a.clone());
    // the product agrees with a term-by-term computation
    let direct = apply_row(std::slice::from_ref(&a), std::slice::from_ref(&b));
    prop_assert_eq!(term_map(&ab), direct);
    Ok(())
}

pub fn check_normal_form(gens: &[RawPoly], f: &RawPoly) -> Result<(), TestCaseError> {
    let r = ring(2);
    let i = Ideal::new(&r, gens.iter().map(|g| build(&r, g)).collect()).unwrap();
    let f = build(&r, f);
    let nf = i.normal_form(&f).unwrap();
    prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
    prop_assert!(i.contains(&f.sub(&nf).unwrap()).unwrap());
    prop_assert_eq!(i.contains(&f).unwrap(), nf.is_zero());
    Ok(())
}

pub fn check_graded_membership(n: usize, gens: &[(u16, RawPoly)], f: &RawPoly, d: u16) -> Result<(), TestCaseError> {
    let r = ring(n);
    let polys: Vec<Polynomial> = gens.iter().map(|(_, g)| build(&r, g)).collect();
    let i = Ideal::new(&r, polys).unwrap();
    let fp = build(&r, f);
    prop_assert_eq!(i.contains(&fp).unwrap(), graded_member(n, gens, f, d));
    Ok(())
}

pub fn check_ideal_identities(i_raw: &[RawPoly], j_raw: &[RawPoly], f: &RawPoly) -> Result<(), TestCaseError> {
    let r = ring(2);
    let i = Ideal::new(&r, i_raw.iter().map(|g| build(&r, g)).collect()).unwrap();
    let j = Ideal::new(&r, j_raw.iter().map(|g| build(&r, g)).collect()).unwrap();
    let f = build(&r, f);
    let g = j.generators().first().cloned().unwrap_or_else(|| Polynomial::one(r.clone()));
    if !g.is_zero() {
        let c = i.colon_element(&g).unwrap();
        for h in c.generators() {
            prop_assert!(i.contains(&g.mul(h).unwrap()).unwrap());
        }
    }
    let meet = i.intersection(&j).unwrap();
    let both = i.contains(&f).unwrap() && j.contains(&f).unwrap();
    prop_assert_eq!(meet.contains(&f).unwrap(), both);
    // a product of generators lies in both
    if let (Some(a), Some(b)) = (i.generators().first(), j.generators().first()) {
        prop_assert!(meet.contains(&a.mul(b).unwrap()).unwrap());
    }
    let s = i.saturation(&j).unwrap();
    prop_assert!(s.contains_ideal(&i).unwrap());
    prop_assert!(s.saturation(&j).unwrap().equals(&s).unwrap());
    Ok(())
}

pub fn check_syzygies(gens: &[RawPoly]) -> Result<(), TestCaseError> {
    let r = ring(3);
    let polys: Vec<Polynomial> = gens.iter().map(|g| build(&r, g)).filter(|p| !p.is_zero()).collect();
    if polys.is_empty() {
        return Ok(());
    }
    let s = syzygies(&polys).unwrap();
    for row in &s.rows {
        prop_assert!(apply_row(row, &polys).is_empty());
    }
    // a Koszul relation is generated: with at least two generators, some row exists
    if polys.len() >= 2 {
        prop_assert!(!s.rows.is_empty());
    }
    Ok(())
}

pub fn graded_case() -> impl Strategy<Value = (usize, Vec<(u16, RawPoly)>, RawPoly, u16)> {
    (2usize..=3, 1u16..=4)
        .prop_flat_map(|(n, d)| {
            let gens = prop::collection::vec(
                (1u16..=d.min(3)).prop_flat_map(move |e| raw_form(n, e, 3).prop_map(move |g| (e, g))),
                1..=3,
            );
            (Just(n), gens, Just(d))
        })
        .prop_flat_map(|(n, gens, d)| {
            let g2 = gens.clone();
            // half the time f is a combination of multiples of generators, so members occur
            let multiple = (0..g2.len(), prop::collection::vec(0..=(d as usize), n), -3i64..=3).prop_map(
                move |(k, _, c)| {
                    let (e, g) = &g2[k];
                    let shift = monomials_of_degree(n, d - e)[0].clone();
                    g.iter()
                        .map(|(cc, m)| (cc * c, m.iter().zip(&shift).map(|(a, b)| a + b).collect()))
                        .collect::<RawPoly>()
                },
            );
            let noise = raw_form(n, d, 3);
            let f = prop_oneof![multiple, noise];
            (Just(n), Just(gens), f, Just(d))
        })
}

// ---- monomial ideals in two variables ----

/// A random m-primary monomial ideal of `Q[U,V]` with at most four minimal
/// generators of degree at most six, as exponent pairs.
pub fn random_mprimary(rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    loop {
        let a = rng.gen_range(1..=6u32);
        let b = rng.gen_range(1..=6u32);
        let mut g = vec![(a, 0), (0, b)];
        for _ in 0..rng.gen_range(0..=2) {
            if a < 2 || b < 2 {
                break;
            }
            let i = rng.gen_range(1..a);
            let j = rng.gen_range(1..b);
            if i + j <= 6 {
                g.push((i, j));
            }
        }
        let minimal: Vec<(u32, u32)> = g
            .iter()
            .copied()
            .filter(|&(x, y)| !g.iter().any(|&(p, q)| (p, q) != (x, y) && p <= x && q <= y))
            .collect();
        let mut m = minimal;
        m.sort();
        m.dedup();
        if m.len() <= 4 {
            return m;
        }
    }
}

pub fn distinct_mprimary(seed: u64, count: usize) -> Vec<Vec<(u32, u32)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<(u32, u32)>> = Vec::new();
    while out.len() < count {
        let g = random_mprimary(&mut rng);
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

pub fn monomial_text(&(a, b): &(u32, u32)) -> String {
    match (a, b) {
        (0, 0) => "1".into(),
        (a, 0) => format!("U^{a}"),
        (0, b) => format!("V^{b}"),
        (a, b) => format!("U^{a}*V^{b}"),
    }
}

pub fn monomial_ideal(r: &Ring, g: &[(u32, u32)]) -> Ideal {
    let texts: Vec<String> = g.iter().map(monomial_text).collect();
    Ideal::parse(r, &texts).unwrap()
}

/// Twice the area of the region between the axes and the Newton boundary of
/// an m-primary monomial ideal, by gift wrapping and the shoelace formula.
pub fn newton_multiplicity(g: &[(u32, u32)]) -> u64 {
    let pts: Vec<(i64, i64)> = g.iter().map(|&(a, b)| (a as i64, b as i64)).collect();
    let start = *pts.iter().filter(|p| p.0 == 0).min_by_key(|p| p.1).expect("V^b");
    let mut chain = vec![start];
    let mut cur = start;
    while cur.1 != 0 {
        // next vertex: the candidate with every point on or above the segment, farthest along
        let mut best: Option<(i64, i64)> = None;
        for &q in &pts {
            if q.0 <= cur.0 || q.1 >= cur.1 {
                continue;
            }
            let ok = pts.iter().all(|&r| (q.0 - cur.0) * (r.1 - cur.1) - (q.1 - cur.1) * (r.0 - cur.0) >= 0);
            if ok && best.is_none_or(|b| q.0 > b.0) {
                best = Some(q);
            }
        }
        cur = best.expect("boundary continues to the U axis");
        chain.push(cur);
    }
    let mut poly = vec![(0i64, 0i64)];
    poly.extend(chain.iter().rev());
    let mut twice: i64 = 0;
    for k in 0..poly.len() {
        let (x0, y0) = poly[k];
        let (x1, y1) = poly[(k + 1) % poly.len()];
        twice += x0 * y1 - x1 * y0;
    }
    twice.unsigned_abs()
}

pub fn one() -> BigRational {
    BigRational::one()
}
