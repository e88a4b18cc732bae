//! The wreath product G≀Sₙ as sequences of colored values, its descent
//! compositions, and the identification of chambers with group elements.

use itertools::Itertools;

use crate::combinatorics::{GComposition, OrderedGPartition, Part, Permutation};
use crate::error::{Error, Result};
use crate::group::{Color, FiniteGroup};
use crate::guard::{self, SizeGuard};

/// An element `((π₁,g₁),…,(πₙ,gₙ))` of G≀Sₙ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPermutation {
    entries: Vec<(usize, Color)>,
}

impl ColoredPermutation {
    pub fn new(entries: Vec<(usize, Color)>) -> Result<Self> {
        Permutation::new(entries.iter().map(|&(v, _)| v).collect())?;
        Ok(ColoredPermutation { entries })
    }

    /// The identity `((1,e),…,(n,e))`.
    pub fn identity(n: usize) -> Self {
        ColoredPermutation {
            entries: (1..=n).map(|i| (i, Color::IDENTITY)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, Color)] {
        &self.entries
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::new(self.entries.iter().map(|&(v, _)| v).collect()).expect("validated on construction")
    }

    pub fn check_colors(&self, group: &FiniteGroup) -> Result<()> {
        self.entries.iter().try_for_each(|&(_, c)| group.check(c).map(|_| ()))
    }

    /// `(πᵢ, gᵢ)` at 1-based position `i`.
    fn at(&self, i: usize) -> (usize, Color) {
        self.entries[i - 1]
    }
}

/// `u * v`: with `u = ((π,g))` and `v = ((τ,h))`, entry `j` is `(π_{τⱼ}, g_{τⱼ}·hⱼ)`.
pub fn w_mul(group: &FiniteGroup, u: &ColoredPermutation, v: &ColoredPermutation) -> Result<ColoredPermutation> {
    if u.n() != v.n() {
        return Err(Error::SizeMismatch(format!(
            "product of elements of G≀S{} and G≀S{}",
            u.n(),
            v.n()
        )));
    }
    Ok(ColoredPermutation {
        entries: v
            .entries
            .iter()
            .map(|&(tau_j, h_j)| {
                let (pi, g) = u.at(tau_j);
                (pi, group.mul(g, h_j))
            })
            .collect(),
    })
}

/// Position `πᵢ` of the inverse holds `(i, gᵢ⁻¹)`.
pub fn w_inverse(group: &FiniteGroup, u: &ColoredPermutation) -> ColoredPermutation {
    let mut entries = vec![(0, Color::IDENTITY); u.n()];
    for (i, &(pi, g)) in u.entries.iter().enumerate() {
        entries[pi - 1] = (i + 1, group.inverse(g));
    }
    ColoredPermutation { entries }
}

/// The descent composition `Co(u)`: cut after position `i` whenever
/// `πᵢ > πᵢ₊₁` or `gᵢ ≠ gᵢ₊₁`; each part carries its run's color.
pub fn co(u: &ColoredPermutation) -> GComposition {
    let mut parts: Vec<Part> = Vec::new();
    let mut prev: Option<(usize, Color)> = None;
    for &(pi, g) in &u.entries {
        match (prev, parts.last_mut()) {
            (Some((p, c)), Some(last)) if p < pi && c == g => last.size += 1,
            _ => parts.push(Part::new(1, g)),
        }
        prev = Some((pi, g));
    }
    GComposition::new(parts).expect("nonempty runs")
}

/// Every element of G≀Sₙ, permutations in lexicographic order, colors varying fastest.
pub fn enumerate_wreath(group: &FiniteGroup, n: usize, guard: &SizeGuard) -> Result<Vec<ColoredPermutation>> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    guard.admit("wreath product elements", guard::count_wreath(n, group.order()))?;
    let colorings: Vec<Vec<Color>> = (0..n).map(|_| group.elements()).multi_cartesian_product().collect();
    let mut out = Vec::with_capacity(colorings.len() * guard::factorial(n) as usize);
    for perm in Permutation::all(n) {
        for colors in &colorings {
            out.push(ColoredPermutation {
                entries: perm.images().iter().copied().zip(colors.iter().copied()).collect(),
            });
        }
    }
    Ok(out)
}

pub fn chamber_to_wreath(p: &OrderedGPartition) -> Result<ColoredPermutation> {
    let entries = p
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| match b.members() {
            [x] => Ok((*x, b.color())),
            members => Err(Error::NotAChamber {
                block: i,
                size: members.len(),
            }),
        })
        .collect::<Result<_>>()?;
    Ok(ColoredPermutation { entries })
}

pub fn wreath_to_chamber(u: &ColoredPermutation) -> OrderedGPartition {
    OrderedGPartition::from_canonical(u.n(), u.entries.iter().map(|&(x, c)| (vec![x], c)).collect())
}

/// The permutation τ that lists, for each block `Bᵢ` of `p` in turn, the
/// positions `j` with `πⱼ ∈ Bᵢ` in increasing order (`v = ((π,g))`).
pub fn sorting_permutation(p: &OrderedGPartition, v: &ColoredPermutation) -> Result<Permutation> {
    if p.n() != v.n() {
        return Err(Error::SizeMismatch(format!(
            "partition of [{}] against an element of G≀S{}",
            p.n(),
            v.n()
        )));
    }
    let mut block_of = vec![0usize; p.n() + 1];
    for (i, b) in p.blocks().iter().enumerate() {
        for &x in b.members() {
            block_of[x] = i;
        }
    }
    let mut tau: Vec<usize> = (1..=v.n()).collect();
    // stable: positions stay increasing inside a block
    tau.sort_by_key(|&j| block_of[v.at(j).0]);
    Permutation::new(tau)
}

/// `P·v` for a chamber `v`, computed through the sorting permutation τ:
/// the entries `(π_{τⱼ}, g_{τⱼ}·hᵢ)` where `hᵢ` is the color of the block of `P`
/// that position `j` falls into.
pub fn left_ideal_product(
    group: &FiniteGroup,
    p: &OrderedGPartition,
    v: &ColoredPermutation,
) -> Result<ColoredPermutation> {
    let tau = sorting_permutation(p, v)?;
    let block_colors = p.blocks().iter().flat_map(|b| std::iter::repeat_n(b.color(), b.len()));
    Ok(ColoredPermutation {
        entries: tau
            .images()
            .iter()
            .zip(block_colors)
            .map(|(&t, h)| {
                let (pi, g) = v.at(t);
                (pi, group.mul(g, h))
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_ordered_gpartitions;
    use crate::semigroup::multiply;

    fn cp(entries: &[(usize, u16)]) -> ColoredPermutation {
        ColoredPermutation::new(entries.iter().map(|&(v, c)| (v, Color(c))).collect()).unwrap()
    }

    fn comp(pairs: &[(usize, u16)]) -> GComposition {
        GComposition::from_pairs(pairs).unwrap()
    }

    #[test]
    fn products_and_inverse() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let u = cp(&[(2, 1), (1, 0)]);
        let v = cp(&[(2, 0), (1, 1)]);
        let id = ColoredPermutation::identity(2);
        assert_eq!(w_mul(&z2, &u, &v).unwrap(), id);
        assert_eq!(w_mul(&z2, &u, &id).unwrap(), u);
        assert_eq!(w_mul(&z2, &id, &u).unwrap(), u);
        assert_eq!(w_inverse(&z2, &u), v);
        assert_eq!(w_inverse(&z2, &id), id);
        assert!(w_mul(&z2, &u, &ColoredPermutation::identity(3)).is_err());
        assert!(ColoredPermutation::new(vec![(1, Color(0)), (1, Color(0))]).is_err());
    }

    #[test]
    fn group_axioms() {
        let guard = SizeGuard::default();
        for (group, n) in [
            (FiniteGroup::cyclic(2).unwrap(), 3),
            (FiniteGroup::cyclic(3).unwrap(), 2),
            (FiniteGroup::symmetric(3).unwrap(), 2),
        ] {
            let all = enumerate_wreath(&group, n, &guard).unwrap();
            let id = ColoredPermutation::identity(n);
            for u in &all {
                let inv = w_inverse(&group, u);
                assert_eq!(w_mul(&group, u, &inv).unwrap(), id);
                assert_eq!(w_mul(&group, &inv, u).unwrap(), id);
                for v in &all {
                    let uv = w_mul(&group, u, v).unwrap();
                    for w in all.iter().step_by(5) {
                        assert_eq!(
                            w_mul(&group, &uv, w).unwrap(),
                            w_mul(&group, u, &w_mul(&group, v, w).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_exhaustive() {
        let guard = SizeGuard::default();
        for m in 1..=3 {
            let group = FiniteGroup::cyclic(m).unwrap();
            for n in 1..=3 {
                let id = ColoredPermutation::identity(n);
                for u in enumerate_wreath(&group, n, &guard).unwrap() {
                    assert_eq!(w_mul(&group, &u, &w_inverse(&group, &u)).unwrap(), id);
                }
            }
        }
    }

    #[test]
    fn descent_compositions() {
        // g = 0, h = 1
        let u = cp(&[(3, 0), (6, 0), (4, 0), (1, 1), (2, 1), (5, 1), (8, 0), (7, 0)]);
        assert_eq!(co(&u), comp(&[(2, 0), (1, 0), (3, 1), (1, 0), (1, 0)]));
        assert_eq!(co(&ColoredPermutation::identity(4)), comp(&[(4, 0)]));
        let dec = cp(&[(3, 0), (2, 0), (1, 0)]);
        assert_eq!(co(&dec), comp(&[(1, 0), (1, 0), (1, 0)]));
    }

    #[test]
    fn descent_compositions_are_minimal() {
        let guard = SizeGuard::default();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        for u in enumerate_wreath(&z2, 4, &guard).unwrap() {
            let c = co(&u);
            assert_eq!(c.n(), 4);
            // adjacent parts could only merge if colors agree and values rise
            let mut pos = 0;
            for w in c.parts().windows(2) {
                pos += w[0].size;
                let (a, b) = (u.entries()[pos - 1], u.entries()[pos]);
                assert!(a.0 > b.0 || a.1 != b.1);
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let guard = SizeGuard::default();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(
            enumerate_wreath(&FiniteGroup::cyclic(1).unwrap(), 1, &guard)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            enumerate_wreath(&FiniteGroup::cyclic(2).unwrap(), 2, &guard)
                .unwrap()
                .len(),
            8
        );
        let all = enumerate_wreath(&z3, 3, &guard).unwrap();
        assert_eq!(all.len(), 162);
        assert!(all.windows(2).all(|w| w[0] != w[1]));
        assert!(matches!(
            enumerate_wreath(&z3, 10, &guard),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn chambers() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let guard = SizeGuard::default();
        assert_eq!(
            wreath_to_chamber(&ColoredPermutation::identity(3)),
            OrderedGPartition::new((1..=3).map(|i| (vec![i], Color(0))).collect()).unwrap()
        );
        assert_eq!(
            chamber_to_wreath(&OrderedGPartition::unit(2)),
            Err(Error::NotAChamber { block: 0, size: 2 })
        );
        for n in 1..=3 {
            for p in enumerate_ordered_gpartitions(n, &z2, &guard).unwrap() {
                if p.is_chamber() {
                    assert_eq!(wreath_to_chamber(&chamber_to_wreath(&p).unwrap()), p);
                }
            }
            for u in enumerate_wreath(&z2, n, &guard).unwrap() {
                assert_eq!(chamber_to_wreath(&wreath_to_chamber(&u)).unwrap(), u);
            }
        }
    }

    #[test]
    fn left_ideal_formula_matches_product() {
        let guard = SizeGuard::default();
        for (group, n) in [
            (FiniteGroup::cyclic(2).unwrap(), 3),
            (FiniteGroup::symmetric(3).unwrap(), 2),
        ] {
            let chambers = enumerate_wreath(&group, n, &guard).unwrap();
            for p in enumerate_ordered_gpartitions(n, &group, &guard).unwrap() {
                for v in &chambers {
                    let pq = multiply(&group, &p, &wreath_to_chamber(v)).unwrap();
                    assert!(pq.is_chamber());
                    assert_eq!(
                        chamber_to_wreath(&pq).unwrap(),
                        left_ideal_product(&group, &p, v).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn sorting_permutation_example() {
        // P = ({2,3}, {1}), chamber values (3, 1, 2): positions holding 2 or 3
        // are 1 and 3, then the position holding 1 is 2.
        let p = OrderedGPartition::new(vec![(vec![2, 3], Color(0)), (vec![1], Color(0))]).unwrap();
        let v = cp(&[(3, 0), (1, 0), (2, 0)]);
        assert_eq!(sorting_permutation(&p, &v).unwrap().images(), &[1, 3, 2]);
    }
}
