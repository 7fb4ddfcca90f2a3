use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::syzygies;
use crate::ideal::Ideal;
use crate::kernel::{Polynomial, Ring};

/// Determinants of square submatrices, memoized by (row set, column set).
struct Minors<'a> {
    m: &'a [Vec<Polynomial>],
    ring: Ring,
    memo: HashMap<(u64, u64), Polynomial>,
}

impl Minors<'_> {
    fn det(&mut self, rows: u64, cols: u64) -> Result<Polynomial> {
        if rows == 0 {
            return Ok(Polynomial::one(self.ring.clone()));
        }
        if let Some(d) = self.memo.get(&(rows, cols)) {
            return Ok(d.clone());
        }
        // expand along the first chosen row
        let r = rows.trailing_zeros() as usize;
        let rest = rows & !(1 << r);
        let mut acc = Polynomial::zero(self.ring.clone());
        let mut sign = false;
        let mut bits = cols;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let entry = self.m[r][c].clone();
            if !entry.is_zero() {
                let sub = self.det(rest, cols & !(1 << c))?;
                let t = entry.mul(&sub)?;
                acc = if sign { acc.sub(&t)? } else { acc.add(&t)? };
            }
            sign = !sign;
        }
        self.memo.insert((rows, cols), acc.clone());
        Ok(acc)
    }
}

fn subsets(n: usize, k: usize) -> Vec<u64> {
    fn go(n: usize, k: usize, start: usize, have: usize, mask: u64, out: &mut Vec<u64>) {
        if have == k {
            out.push(mask);
            return;
        }
        for i in start..n {
            if n - i < k - have {
                break;
            }
            go(n, k, i + 1, have + 1, mask | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, 0, 0, &mut out);
    out
}

impl Ideal {
    /// Relations among the generators over `R`: syzygies of the generators
    /// together with `Q0`, projected to the generator components.
    pub fn presentation(&self) -> Result<Vec<Vec<Polynomial>>> {
        let n = self.len();
        if n == 0 {
            return Ok(Vec::new());
        }
        let all = self.ambient_gens();
        let z = syzygies(&all)?;
        let mut rows: Vec<Vec<Polynomial>> = Vec::new();
        for row in z.rows {
            let r: Vec<Polynomial> = row[..n].iter().map(|p| p.with_ring(self.ring())).collect();
            if r.iter().all(|p| p.is_zero()) || rows.contains(&r) {
                continue;
            }
            rows.push(r);
        }
        Ok(rows)
    }

    /// `Fitt_j`: the ideal of `(n - j)`-minors of the presentation matrix,
    /// with `n` the number of generators.
    pub fn fitting_ideal(&self, j: usize) -> Result<Ideal> {
        let n = self.len();
        if j >= n {
            return Ok(Ideal::unit(self.ring()));
        }
        let k = n - j;
        let m = self.presentation()?;
        if k > m.len() {
            return Ok(Ideal::zero(self.ring()));
        }
        if m.len() > 64 {
            return Err(Error::ResourceCap {
                what: "presentation rows for Fitting minors".into(),
                cap: 64,
            });
        }
        let mut minors = Minors {
            m: &m,
            ring: self.ring().clone(),
            memo: HashMap::new(),
        };
        let mut gens = Vec::new();
        for rows in subsets(m.len(), k) {
            for cols in subsets(n, k) {
                let d = minors.det(rows, cols)?;
                if !d.is_zero() {
                    gens.push(d.monic());
                }
            }
        }
        Ideal::new(self.ring(), gens)
    }
}
