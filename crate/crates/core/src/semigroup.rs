//! The product on ordered G-partitions and the power identities it satisfies.

use std::collections::HashMap;

use serde::Serialize;

use crate::combinatorics::{enumerate_ordered_gpartitions, OrderedGPartition};
use crate::error::{Error, Result};
use crate::group::{Color, FiniteGroup};
use crate::guard::SizeGuard;

/// `P·Q`: the blocks `Bᵢ ∩ Cⱼ` in row-major order over `(i, j)`, skipping
/// empty intersections, where block `Bᵢ ∩ Cⱼ` gets color `hⱼ·gᵢ`
/// (`hⱼ` from the right factor `Q`, `gᵢ` from the left factor `P`).
pub fn multiply(group: &FiniteGroup, p: &OrderedGPartition, q: &OrderedGPartition) -> Result<OrderedGPartition> {
    let n = p.n();
    if q.n() != n {
        return Err(Error::SizeMismatch(format!(
            "product of partitions of [{n}] and [{}]",
            q.n()
        )));
    }
    let mut block_of = vec![0usize; n + 1];
    for (j, c) in q.blocks().iter().enumerate() {
        for &x in c.members() {
            block_of[x] = j;
        }
    }
    let mut out = Vec::new();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); q.len()];
    for b in p.blocks() {
        for &x in b.members() {
            buckets[block_of[x]].push(x);
        }
        for (c, bucket) in q.blocks().iter().zip(buckets.iter_mut()) {
            if !bucket.is_empty() {
                out.push((std::mem::take(bucket), group.mul(c.color(), b.color())));
            }
        }
    }
    Ok(OrderedGPartition::from_canonical(n, out))
}

/// `P^k`; `P^0` is the identity `(([n], e))`.
pub fn power(group: &FiniteGroup, p: &OrderedGPartition, k: usize) -> OrderedGPartition {
    let mut acc = OrderedGPartition::unit(p.n());
    for _ in 0..k {
        acc = multiply(group, &acc, p).expect("same n");
    }
    acc
}

/// A failure of one of the identities `x^{|G|+1} = x` or `x·y·x^{|G|} = x·y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCounterexample {
    pub identity: &'static str,
    pub x: String,
    pub y: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub elements: usize,
    pub pairs_checked: u64,
    pub counterexample: Option<IdentityCounterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `x^{|G|+1} = x` for `x` in `xs`, then `x·y·x^{|G|} = x·y` for every
/// `(x, y)` in `pairs`, stopping at the first counterexample.
pub fn check_identities_on<'a>(
    group: &FiniteGroup,
    xs: &[OrderedGPartition],
    pairs: impl IntoIterator<Item = (&'a OrderedGPartition, &'a OrderedGPartition)>,
) -> IdentityReport {
    let m = group.order();
    let render = |p: &OrderedGPartition| crate::text::render_partition(group, p);
    let mut report = IdentityReport {
        elements: xs.len(),
        pairs_checked: 0,
        counterexample: None,
    };
    let mut top = HashMap::with_capacity(xs.len());
    for x in xs {
        let lhs = power(group, x, m + 1);
        if &lhs != x {
            report.counterexample = Some(IdentityCounterexample {
                identity: "x^(|G|+1) = x",
                x: render(x),
                y: None,
                lhs: render(&lhs),
                rhs: render(x),
            });
            return report;
        }
        top.insert(x, power(group, x, m));
    }
    for (x, y) in pairs {
        report.pairs_checked += 1;
        let x_top = match top.get(x) {
            Some(xt) => xt.clone(),
            None => power(group, x, m),
        };
        let xy = multiply(group, x, y).expect("same n");
        let lhs = multiply(group, &xy, &x_top).expect("same n");
        if lhs != xy {
            report.counterexample = Some(IdentityCounterexample {
                identity: "x y x^|G| = x y",
                x: render(x),
                y: Some(render(y)),
                lhs: render(&lhs),
                rhs: render(&xy),
            });
            return report;
        }
    }
    report
}

/// Exhaustive check of both identities over all of the semigroup for `n`.
pub fn check_identities(group: &FiniteGroup, n: usize, guard: &SizeGuard) -> Result<IdentityReport> {
    let all = enumerate_ordered_gpartitions(n, group, guard)?;
    let pairs_estimate = (all.len() as u128).pow(2);
    guard.admit("pairs of ordered G-partitions", pairs_estimate)?;
    let pairs = all.iter().flat_map(|x| all.iter().map(move |y| (x, y)));
    Ok(check_identities_on(group, &all, pairs))
}

/// All idempotents `P·P = P`.
pub fn idempotents(group: &FiniteGroup, n: usize, guard: &SizeGuard) -> Result<Vec<OrderedGPartition>> {
    Ok(enumerate_ordered_gpartitions(n, group, guard)?
        .into_iter()
        .filter(|p| &multiply(group, p, p).expect("same n") == p)
        .collect())
}

/// The expected characterization of idempotents: every block colored by the identity.
pub fn is_identity_colored(p: &OrderedGPartition) -> bool {
    p.blocks().iter().all(|b| b.color() == Color::IDENTITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{apply_permutation, Permutation};

    fn part(blocks: &[(&[usize], u16)]) -> OrderedGPartition {
        OrderedGPartition::new(blocks.iter().map(|(b, c)| (b.to_vec(), Color(*c))).collect()).unwrap()
    }

    /// Literal transcription of the product: all (i, j) with set intersection.
    fn multiply_by_definition(group: &FiniteGroup, p: &OrderedGPartition, q: &OrderedGPartition) -> OrderedGPartition {
        let mut blocks = Vec::new();
        for b in p.blocks() {
            for c in q.blocks() {
                let meet: Vec<usize> = b
                    .members()
                    .iter()
                    .copied()
                    .filter(|x| c.members().contains(x))
                    .collect();
                if !meet.is_empty() {
                    blocks.push((meet, group.mul(c.color(), b.color())));
                }
            }
        }
        OrderedGPartition::new(blocks).unwrap()
    }

    #[test]
    fn hand_examples() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let p = part(&[(&[1], 1), (&[2], 0)]);
        let q = part(&[(&[1, 2], 1)]);
        assert_eq!(multiply(&z2, &p, &q).unwrap(), part(&[(&[1], 0), (&[2], 1)]));
        let unit = OrderedGPartition::unit(2);
        assert_eq!(multiply(&z2, &unit, &q).unwrap(), q);
        assert_eq!(multiply(&z2, &p, &unit).unwrap(), p);
        assert!(multiply(&z2, &p, &OrderedGPartition::unit(3)).is_err());
    }

    #[test]
    fn square_squares_colors() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let p = part(&[(&[2], 1), (&[1, 3], 2)]);
        assert_eq!(multiply(&z3, &p, &p).unwrap(), part(&[(&[2], 2), (&[1, 3], 1)]));
    }

    #[test]
    fn powers() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let p = part(&[(&[1, 2], 1)]);
        assert_eq!(power(&z2, &p, 0), OrderedGPartition::unit(2));
        assert_eq!(power(&z2, &p, 1), p);
        assert_eq!(power(&z2, &p, 2), OrderedGPartition::unit(2));
        assert_eq!(power(&z2, &p, 3), p);
    }

    #[test]
    fn color_order_is_right_factor_on_the_left() {
        // Non-abelian regression: product of one-block partitions has color h·g.
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let g = s3.parse_color("213").unwrap();
        let h = s3.parse_color("231").unwrap();
        assert_ne!(s3.mul(h, g), s3.mul(g, h));
        let p = OrderedGPartition::new(vec![(vec![1, 2], g)]).unwrap();
        let q = OrderedGPartition::new(vec![(vec![1, 2], h)]).unwrap();
        let pq = multiply(&s3, &p, &q).unwrap();
        assert_eq!(pq.blocks()[0].color(), s3.mul(h, g));
    }

    #[test]
    fn matches_definition_exhaustively() {
        let guard = SizeGuard::default();
        for group in [FiniteGroup::cyclic(2).unwrap(), FiniteGroup::symmetric(3).unwrap()] {
            let n = if group.order() == 2 { 3 } else { 2 };
            let all = enumerate_ordered_gpartitions(n, &group, &guard).unwrap();
            for p in &all {
                for q in &all {
                    let pq = multiply(&group, p, q).unwrap();
                    assert_eq!(pq, multiply_by_definition(&group, p, q));
                    assert!(pq.len() >= p.len());
                }
            }
        }
    }

    #[test]
    fn associativity_exhaustive() {
        let guard = SizeGuard::default();
        for group in [FiniteGroup::cyclic(1).unwrap(), FiniteGroup::cyclic(2).unwrap()] {
            for n in 1..=3 {
                let all = enumerate_ordered_gpartitions(n, &group, &guard).unwrap();
                for p in &all {
                    for q in &all {
                        let pq = multiply(&group, p, q).unwrap();
                        for r in &all {
                            assert_eq!(
                                multiply(&group, &pq, r).unwrap(),
                                multiply(&group, p, &multiply(&group, q, r).unwrap()).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn equivariance() {
        let guard = SizeGuard::default();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let all = enumerate_ordered_gpartitions(3, &z2, &guard).unwrap();
        for pi in Permutation::all(3) {
            for p in &all {
                for q in &all {
                    let lhs = apply_permutation(&pi, &multiply(&z2, p, q).unwrap()).unwrap();
                    let rhs = multiply(
                        &z2,
                        &apply_permutation(&pi, p).unwrap(),
                        &apply_permutation(&pi, q).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn identities_hold() {
        let guard = SizeGuard::default();
        for n in 1..=4 {
            let r = check_identities(&FiniteGroup::cyclic(1).unwrap(), n, &guard).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        for n in 1..=3 {
            assert!(check_identities(&FiniteGroup::cyclic(2).unwrap(), n, &guard)
                .unwrap()
                .passed());
        }
        let s3 = check_identities(&FiniteGroup::symmetric(3).unwrap(), 2, &guard).unwrap();
        assert!(s3.passed());
        assert_eq!(s3.elements, 6 + 2 * 36);
    }

    #[test]
    fn idempotent_sets() {
        let guard = SizeGuard::default();
        let trivial = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(idempotents(&trivial, 3, &guard).unwrap().len(), 13);
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(idempotents(&z2, 1, &guard).unwrap(), vec![OrderedGPartition::unit(1)]);
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let idem = idempotents(&z3, 2, &guard).unwrap();
        assert_eq!(enumerate_ordered_gpartitions(2, &z3, &guard).unwrap().len(), 21);
        assert_eq!(idem.len(), 3);
        assert!(idem.iter().all(is_identity_colored));
        // closed under product, and a left regular band
        for x in &idem {
            for y in &idem {
                let xy = multiply(&z3, x, y).unwrap();
                assert!(idem.contains(&xy));
                assert_eq!(multiply(&z3, &xy, x).unwrap(), xy);
            }
        }
    }
}
