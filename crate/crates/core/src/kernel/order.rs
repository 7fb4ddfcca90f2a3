use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::kernel::monomial::Monomial;

/// Ordering used inside one block of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BlockOrder {
    Lex,
    Grevlex,
    /// Weighted degree first, then reverse lexicographic; one weight per block variable.
    WeightedGrevlex(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub vars: Vec<usize>,
    pub order: BlockOrder,
}

/// A monomial order. Block orders compare earlier blocks first, so putting
/// variables in the first block makes the order eliminate them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    WeightedGrevlex(Vec<u32>),
    Block(Vec<Block>),
}

impl MonomialOrder {
    /// `[elim | rest]`: grevlex on the eliminated variables, then weighted
    /// grevlex on the remaining ones.
    pub fn elimination(nvars: usize, eliminate: &[usize], weights: &[u32]) -> MonomialOrder {
        let rest: Vec<usize> = (0..nvars).filter(|i| !eliminate.contains(i)).collect();
        let rest_w = rest.iter().map(|&i| weights[i]).collect();
        let elim_w = eliminate.iter().map(|&i| weights[i]).collect();
        MonomialOrder::Block(vec![
            Block {
                vars: eliminate.to_vec(),
                order: BlockOrder::WeightedGrevlex(elim_w),
            },
            Block {
                vars: rest,
                order: BlockOrder::WeightedGrevlex(rest_w),
            },
        ])
    }

    /// Checks that a block order partitions `0..nvars` and weights fit.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            MonomialOrder::WeightedGrevlex(w) => check_weights(w, nvars),
            MonomialOrder::Block(blocks) => {
                let mut seen = vec![false; nvars];
                for b in blocks {
                    for &v in &b.vars {
                        if v >= nvars || seen[v] {
                            return Err(Error::Internal(format!(
                                "block order does not partition the variables (index {v})"
                            )));
                        }
                        seen[v] = true;
                    }
                    if let BlockOrder::WeightedGrevlex(w) = &b.order {
                        check_weights(w, b.vars.len())?;
                    }
                }
                if seen.iter().any(|s| !s) {
                    return Err(Error::Internal("block order misses a variable".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Total, multiplicative comparison with 1 minimal.
    #[inline]
    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                da.cmp(&db).then_with(|| revlex(a, b))
            }
            MonomialOrder::WeightedGrevlex(w) => {
                let da: u32 = a.iter().zip(w).map(|(&e, &w)| e as u32 * w).sum();
                let db: u32 = b.iter().zip(w).map(|(&e, &w)| e as u32 * w).sum();
                da.cmp(&db).then_with(|| revlex(a, b))
            }
            MonomialOrder::Block(blocks) => {
                for blk in blocks {
                    let o = cmp_block(blk, a, b);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp(a.exps(), b.exps())
    }
}

fn check_weights(w: &[u32], n: usize) -> Result<()> {
    if w.len() != n {
        return Err(Error::LengthMismatch(w.len(), n));
    }
    if w.contains(&0) {
        return Err(Error::NonPositiveWeight(0));
    }
    Ok(())
}

#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn cmp_block(blk: &Block, a: &[u16], b: &[u16]) -> Ordering {
    match &blk.order {
        BlockOrder::Lex => {
            for &v in &blk.vars {
                if a[v] != b[v] {
                    return a[v].cmp(&b[v]);
                }
            }
            Ordering::Equal
        }
        BlockOrder::Grevlex | BlockOrder::WeightedGrevlex(_) => {
            let weight = |k: usize| match &blk.order {
                BlockOrder::WeightedGrevlex(w) => w[k],
                _ => 1,
            };
            let (mut da, mut db) = (0u32, 0u32);
            for (k, &v) in blk.vars.iter().enumerate() {
                da += a[v] as u32 * weight(k);
                db += b[v] as u32 * weight(k);
            }
            if da != db {
                return da.cmp(&db);
            }
            for &v in blk.vars.iter().rev() {
                if a[v] != b[v] {
                    return b[v].cmp(&a[v]);
                }
            }
            Ordering::Equal
        }
    }
}

/// Checked comparison for callers holding raw exponent vectors.
pub fn compare(m1: &[u16], m2: &[u16], ord: &MonomialOrder) -> Result<Ordering> {
    if m1.len() != m2.len() {
        return Err(Error::LengthMismatch(m1.len(), m2.len()));
    }
    Ok(ord.cmp(m1, m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spec_examples() {
        assert_eq!(compare(&[2, 0], &[1, 1], &MonomialOrder::Grevlex), Ok(Ordering::Greater));
        assert_eq!(
            compare(&[2, 0], &[1, 1], &MonomialOrder::WeightedGrevlex(vec![1, 1])),
            Ok(Ordering::Greater)
        );
        assert_eq!(compare(&[1, 0], &[0, 3], &MonomialOrder::Lex), Ok(Ordering::Greater));
        assert_eq!(compare(&[3, 1], &[3, 1], &MonomialOrder::Grevlex), Ok(Ordering::Equal));
        assert_eq!(
            compare(&[1], &[1, 0], &MonomialOrder::Lex),
            Err(Error::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(MonomialOrder::Grevlex.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::Grevlex,
            MonomialOrder::WeightedGrevlex(vec![3, 1, 2]),
            MonomialOrder::elimination(3, &[2], &[1, 1, 1]),
            MonomialOrder::Block(vec![
                Block {
                    vars: vec![1],
                    order: BlockOrder::Lex,
                },
                Block {
                    vars: vec![2, 0],
                    order: BlockOrder::Grevlex,
                },
            ]),
        ]
    }

    proptest! {
        #[test]
        fn order_axioms(a in prop::collection::vec(0u16..6, 3),
                        b in prop::collection::vec(0u16..6, 3),
                        c in prop::collection::vec(0u16..6, 3)) {
            for ord in orders() {
                ord.validate(3).unwrap();
                let ab = ord.cmp(&a, &b);
                prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                let ac: Vec<u16> = a.iter().zip(&c).map(|(x, y)| x + y).collect();
                let bc: Vec<u16> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
                prop_assert_eq!(ord.cmp(&ac, &bc), ab);
                prop_assert_ne!(ord.cmp(&[0, 0, 0], &a), Ordering::Greater);
                if ab == Ordering::Less && ord.cmp(&b, &c) == Ordering::Less {
                    prop_assert_eq!(ord.cmp(&a, &c), Ordering::Less);
                }
            }
        }

        #[test]
        fn elimination_order_eliminates(a in prop::collection::vec(0u16..5, 3),
                                        b in prop::collection::vec(0u16..5, 3)) {
            // variable 2 eliminated: anything containing it beats anything without it
            let ord = MonomialOrder::elimination(3, &[2], &[1, 1, 1]);
            if a[2] > 0 && b[2] == 0 {
                prop_assert_eq!(ord.cmp(&a, &b), Ordering::Greater);
            }
        }
    }
}
