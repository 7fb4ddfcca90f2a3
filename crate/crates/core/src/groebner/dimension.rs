//! Combinatorics on the leading-term ideal.

use crate::error::{Error, Result};
use crate::kernel::monomial::Monomial;

/// Largest set of variables independent modulo the monomial ideal `lms`,
/// i.e. `n` minus a minimum hitting set of the supports. -1 for the unit ideal.
pub fn krull_dimension(lms: &[Monomial], n: usize) -> i64 {
    assert!(n <= 64, "at most 64 variables");
    if lms.iter().any(|m| m.is_one()) {
        return -1;
    }
    let mut supports: Vec<u64> = lms.iter().map(|m| m.support()).collect();
    supports.sort_by_key(|s| s.count_ones());
    supports.dedup();
    // keep only minimal supports
    let mut minimal: Vec<u64> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|&t| t & s == t) {
            minimal.push(s);
        }
    }
    let mut best = n as u32;
    min_hitting_set(&minimal, 0, 0, &mut best);
    n as i64 - best as i64
}

fn min_hitting_set(sets: &[u64], chosen: u64, size: u32, best: &mut u32) {
    if size >= *best {
        return;
    }
    // smallest set not yet hit
    let unhit = sets
        .iter()
        .filter(|&&s| s & chosen == 0)
        .min_by_key(|s| s.count_ones());
    let Some(&s) = unhit else {
        *best = size;
        return;
    };
    let mut bits = s;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        bits ^= b;
        min_hitting_set(sets, chosen | b, size + 1, best);
    }
}

/// Counts the monomials outside the monomial ideal generated by `lms`.
pub fn vector_space_dimension(lms: &[Monomial], n: usize) -> Result<u64> {
    let dim = krull_dimension(lms, n);
    if dim > 0 {
        return Err(Error::PositiveDimensional(dim));
    }
    if dim < 0 {
        return Ok(0);
    }
    // pure-power bounds exist for every variable in dimension zero
    let mut bound = vec![u16::MAX; n];
    for m in lms {
        let e = m.exps();
        let nz: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        if nz.len() == 1 {
            bound[nz[0]] = bound[nz[0]].min(e[nz[0]]);
        }
    }
    let gens: Vec<&[u16]> = lms.iter().map(|m| m.exps()).collect();
    let mut cur = vec![0u16; n];
    Ok(count(&gens, &bound, &mut cur, 0))
}

fn count(gens: &[&[u16]], bound: &[u16], cur: &mut Vec<u16>, k: usize) -> u64 {
    let n = bound.len();
    if k == n {
        return 1;
    }
    let mut total = 0;
    for e in 0..bound[k] {
        cur[k] = e;
        // prune when a generator living in the first k+1 variables divides
        let blocked = gens.iter().any(|g| {
            g[k + 1..].iter().all(|&x| x == 0) && g[..=k].iter().zip(&cur[..=k]).all(|(a, b)| a <= b)
        });
        if blocked {
            break;
        }
        total += count(gens, bound, cur, k + 1);
    }
    cur[k] = 0;
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e, &vec![1; e.len()])
    }

    #[test]
    fn independent_sets() {
        // (xy, yz) in k[x,y,z]: {x,z} independent, dimension 2
        assert_eq!(krull_dimension(&[m(&[1, 1, 0]), m(&[0, 1, 1])], 3), 2);
        assert_eq!(krull_dimension(&[m(&[1, 0, 0]), m(&[0, 1, 0])], 3), 1);
        assert_eq!(krull_dimension(&[], 4), 4);
        assert_eq!(krull_dimension(&[m(&[0, 0])], 2), -1);
    }

    #[test]
    fn standard_monomial_count() {
        assert_eq!(vector_space_dimension(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 3])], 2), Ok(4));
        assert_eq!(
            vector_space_dimension(&[m(&[3, 0, 0]), m(&[0, 2, 0]), m(&[0, 0, 2])], 3),
            Ok(12)
        );
        assert_eq!(
            vector_space_dimension(&[m(&[1, 0])], 2),
            Err(Error::PositiveDimensional(1))
        );
    }
}
