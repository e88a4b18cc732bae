//! G-compositions, ordered G-partitions, the type map, the refinement order,
//! the action of the symmetric group, and exhaustive enumerators.

use std::cmp::Ordering;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::group::{Color, FiniteGroup};
use crate::guard::{self, SizeGuard};

/// One part `(size, color)` of a [`GComposition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Part {
    pub size: usize,
    pub color: Color,
}

impl Part {
    pub fn new(size: usize, color: Color) -> Self {
        Part { size, color }
    }
}

/// A composition of `n` with a group element attached to every part.
///
/// Ordered canonically by length, then by the size sequence, then by the
/// color sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GComposition {
    parts: Vec<Part>,
}

impl GComposition {
    pub fn new(parts: Vec<Part>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Invalid("a G-composition needs at least one part".into()));
        }
        if let Some(i) = parts.iter().position(|p| p.size == 0) {
            return Err(Error::Invalid(format!("part {i} has size 0")));
        }
        Ok(GComposition { parts })
    }

    /// Convenience constructor from `(size, color index)` pairs.
    pub fn from_pairs(pairs: &[(usize, u16)]) -> Result<Self> {
        GComposition::new(pairs.iter().map(|&(s, c)| Part::new(s, Color(c))).collect())
    }

    /// The one-part composition `((n, color))`.
    pub fn single(n: usize, color: Color) -> Self {
        assert!(n > 0);
        GComposition {
            parts: vec![Part::new(n, color)],
        }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    /// Number of parts, ℓ(α).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer being composed.
    pub fn n(&self) -> usize {
        self.parts.iter().map(|p| p.size).sum()
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.iter().map(|p| p.size)
    }

    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        self.parts.iter().map(|p| p.color)
    }

    pub fn check_colors(&self, group: &FiniteGroup) -> Result<()> {
        self.colors().try_for_each(|c| group.check(c).map(|_| ()))
    }
}

impl Ord for GComposition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.sizes().cmp(other.sizes()))
            .then_with(|| self.colors().cmp(other.colors()))
    }
}

impl PartialOrd for GComposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A colored block of an ordered G-partition; members are strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    members: Vec<usize>,
    color: Color,
}

impl Block {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// An element of the semigroup of ordered G-partitions of `[n] = {1,…,n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedGPartition {
    n: usize,
    blocks: Vec<Block>,
}

impl OrderedGPartition {
    /// Validates and canonicalizes (sorts block members). `n` is the total
    /// number of members, which must be exactly `{1,…,n}`.
    pub fn new(blocks: Vec<(Vec<usize>, Color)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Invalid("an ordered partition needs at least one block".into()));
        }
        let n: usize = blocks.iter().map(|(b, _)| b.len()).sum();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::with_capacity(blocks.len());
        for (i, (mut members, color)) in blocks.into_iter().enumerate() {
            if members.is_empty() {
                return Err(Error::Invalid(format!("block {i} is empty")));
            }
            members.sort_unstable();
            for &x in &members {
                if x == 0 || x > n {
                    return Err(Error::Invalid(format!("element {x} in block {i} is outside [1, {n}]")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Invalid(format!("element {x} appears twice")));
                }
            }
            out.push(Block { members, color });
        }
        Ok(OrderedGPartition { n, blocks: out })
    }

    /// Builds from blocks already known to be canonical and to cover `[n]`.
    pub(crate) fn from_canonical(n: usize, blocks: Vec<(Vec<usize>, Color)>) -> Self {
        debug_assert_eq!(blocks.iter().map(|(b, _)| b.len()).sum::<usize>(), n);
        OrderedGPartition {
            n,
            blocks: blocks
                .into_iter()
                .map(|(members, color)| Block { members, color })
                .collect(),
        }
    }

    /// The semigroup identity `(([n], e))`.
    pub fn unit(n: usize) -> Self {
        assert!(n > 0);
        OrderedGPartition::from_canonical(n, vec![((1..=n).collect(), Color::IDENTITY)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// All blocks are singletons.
    pub fn is_chamber(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn check_colors(&self, group: &FiniteGroup) -> Result<()> {
        self.blocks.iter().try_for_each(|b| group.check(b.color).map(|_| ()))
    }

    pub fn gtype(&self) -> GComposition {
        GComposition {
            parts: self.blocks.iter().map(|b| Part::new(b.len(), b.color)).collect(),
        }
    }
}

pub fn gtype(p: &OrderedGPartition) -> GComposition {
    p.gtype()
}

/// A permutation of `[n]` in one-line notation `(π(1),…,π(n))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Invalid(format!("{images:?} is not a permutation of [1, {n}]")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n).map(|images| Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// π(i) for `i` in `[n]`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self ∘ other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }
}

/// π·P: maps every block elementwise through π, keeping colors and block order.
pub fn apply_permutation(pi: &Permutation, p: &OrderedGPartition) -> Result<OrderedGPartition> {
    if pi.degree() != p.n() {
        return Err(Error::SizeMismatch(format!(
            "permutation of degree {} acting on a partition of [{}]",
            pi.degree(),
            p.n()
        )));
    }
    let blocks = p
        .blocks
        .iter()
        .map(|b| {
            let mut members: Vec<usize> = b.members.iter().map(|&x| pi.apply(x)).collect();
            members.sort_unstable();
            (members, b.color)
        })
        .collect();
    Ok(OrderedGPartition::from_canonical(p.n(), blocks))
}

/// All compositions of `n` (uncolored), ordered by length then lexicographically.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = (0u64..1 << (n - 1))
        .map(|cuts| {
            let mut parts = Vec::new();
            let mut run = 1;
            for i in 0..n - 1 {
                if cuts >> i & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            parts
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Every G-composition of `n`, once each, in canonical order.
pub fn enumerate_gcompositions(n: usize, group: &FiniteGroup, guard: &SizeGuard) -> Result<Vec<GComposition>> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    guard.admit("G-compositions", guard::count_gcompositions(n, group.order()))?;
    let mut out = Vec::new();
    for sizes in compositions(n) {
        for colors in (0..sizes.len()).map(|_| group.elements()).multi_cartesian_product() {
            out.push(GComposition {
                parts: sizes.iter().zip(colors).map(|(&s, c)| Part::new(s, c)).collect(),
            });
        }
    }
    out.sort();
    Ok(out)
}

/// Every ordered G-partition of type `alpha`, once each.
pub fn enumerate_of_type(alpha: &GComposition, guard: &SizeGuard) -> Result<Vec<OrderedGPartition>> {
    let sizes: Vec<usize> = alpha.sizes().collect();
    guard.admit("ordered G-partitions of one type", guard::multinomial(&sizes))?;
    let n = alpha.n();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(alpha.len());
    fill_blocks(alpha.parts(), (1..=n).collect(), &mut current, &mut |blocks| {
        out.push(OrderedGPartition::from_canonical(n, blocks.to_vec()));
    });
    Ok(out)
}

type Blocks = [(Vec<usize>, Color)];

fn fill_blocks(
    parts: &[Part],
    remaining: Vec<usize>,
    current: &mut Vec<(Vec<usize>, Color)>,
    emit: &mut dyn FnMut(&Blocks),
) {
    let Some((first, rest)) = parts.split_first() else {
        emit(current);
        return;
    };
    for chosen in remaining.iter().copied().combinations(first.size) {
        let left: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|x| chosen.binary_search(x).is_err())
            .collect();
        current.push((chosen, first.color));
        fill_blocks(rest, left, current, emit);
        current.pop();
    }
}

/// Every element of the semigroup of ordered G-partitions of `[n]`.
pub fn enumerate_ordered_gpartitions(
    n: usize,
    group: &FiniteGroup,
    guard: &SizeGuard,
) -> Result<Vec<OrderedGPartition>> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    guard.admit(
        "ordered G-partitions",
        guard::count_ordered_gpartitions(n, group.order()),
    )?;
    let mut out = Vec::new();
    for alpha in enumerate_gcompositions(n, group, &SizeGuard::unlimited())? {
        out.extend(enumerate_of_type(&alpha, &SizeGuard::unlimited())?);
    }
    Ok(out)
}

/// True iff `fine` is a color-preserving refinement of `coarse`, i.e.
/// `coarse ≤ fine` in the refinement order.
pub fn is_refinement(fine: &GComposition, coarse: &GComposition) -> Result<bool> {
    if fine.n() != coarse.n() {
        return Err(Error::SizeMismatch(format!(
            "compositions of {} and {}",
            fine.n(),
            coarse.n()
        )));
    }
    let mut fine_parts = fine.parts().iter();
    for target in coarse.parts() {
        let mut sum = 0;
        while sum < target.size {
            match fine_parts.next() {
                Some(p) if p.color == target.color => sum += p.size,
                _ => return Ok(false),
            }
        }
        if sum != target.size {
            return Ok(false);
        }
    }
    Ok(fine_parts.next().is_none())
}

/// Every β with β ≤ α (α refines β), including α itself, in canonical order.
pub fn coarsenings(alpha: &GComposition) -> Vec<GComposition> {
    // For each maximal run of equal colors, every way of merging adjacent parts.
    let runs: Vec<Vec<Vec<Part>>> = alpha
        .parts()
        .iter()
        .chunk_by(|p| p.color)
        .into_iter()
        .map(|(color, run)| {
            let sizes: Vec<usize> = run.map(|p| p.size).collect();
            let r = sizes.len();
            (0u64..1 << (r - 1))
                .map(|keep| {
                    let mut merged = Vec::new();
                    let mut acc = sizes[0];
                    for (i, &size) in sizes.iter().enumerate().skip(1) {
                        if keep >> (i - 1) & 1 == 1 {
                            merged.push(Part::new(acc, color));
                            acc = size;
                        } else {
                            acc += size;
                        }
                    }
                    merged.push(Part::new(acc, color));
                    merged
                })
                .collect()
        })
        .collect();
    let mut out: Vec<GComposition> = runs
        .into_iter()
        .multi_cartesian_product()
        .map(|choice| GComposition {
            parts: choice.into_iter().flatten().collect(),
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn comp(pairs: &[(usize, u16)]) -> GComposition {
        GComposition::from_pairs(pairs).unwrap()
    }

    fn part(blocks: &[(&[usize], u16)]) -> OrderedGPartition {
        OrderedGPartition::new(blocks.iter().map(|(b, c)| (b.to_vec(), Color(*c))).collect()).unwrap()
    }

    #[test]
    fn type_map() {
        let p = part(&[(&[3, 1], 1), (&[2], 2)]);
        assert_eq!(p.blocks()[0].members(), &[1, 3]);
        assert_eq!(gtype(&p), comp(&[(2, 1), (1, 2)]));
        assert_eq!(OrderedGPartition::unit(4).gtype(), comp(&[(4, 0)]));
        let chamber = part(&[(&[2], 0), (&[1], 0), (&[3], 0)]);
        assert!(chamber.is_chamber());
        assert_eq!(chamber.gtype(), comp(&[(1, 0), (1, 0), (1, 0)]));
    }

    #[test]
    fn partition_validation() {
        let e = Color::IDENTITY;
        assert!(OrderedGPartition::new(vec![(vec![1, 1], e)]).is_err());
        assert!(OrderedGPartition::new(vec![(vec![1, 3], e)]).is_err());
        assert!(OrderedGPartition::new(vec![(vec![1], e), (vec![], e)]).is_err());
        assert!(OrderedGPartition::new(vec![]).is_err());
        assert!(GComposition::from_pairs(&[(0, 0)]).is_err());
        assert!(GComposition::from_pairs(&[]).is_err());
    }

    #[test]
    fn permutation_action() {
        let p = part(&[(&[1, 3], 1), (&[2], 2)]);
        let pi = Permutation::new(vec![2, 3, 1]).unwrap();
        let moved = apply_permutation(&pi, &p).unwrap();
        assert_eq!(moved, part(&[(&[2, 1], 1), (&[3], 2)]));
        assert_eq!(apply_permutation(&Permutation::identity(3), &p).unwrap(), p);
        assert!(apply_permutation(&Permutation::identity(2), &p).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
    }

    #[test]
    fn action_is_a_left_action() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let all = enumerate_ordered_gpartitions(3, &z2, &SizeGuard::default()).unwrap();
        for pi in Permutation::all(3) {
            for rho in Permutation::all(3) {
                let pr = pi.compose(&rho);
                for p in &all {
                    let lhs = apply_permutation(&pr, p).unwrap();
                    let rhs = apply_permutation(&pi, &apply_permutation(&rho, p).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                    assert_eq!(lhs.gtype(), p.gtype());
                }
            }
        }
    }

    #[test]
    fn composition_counts() {
        let trivial = FiniteGroup::cyclic(1).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let g = SizeGuard::default();
        assert_eq!(enumerate_gcompositions(1, &trivial, &g).unwrap(), vec![comp(&[(1, 0)])]);
        let two = enumerate_gcompositions(2, &z2, &g).unwrap();
        assert_eq!(two.len(), 6);
        assert_eq!(two.iter().filter(|a| a.len() == 1).count(), 2);
        assert_eq!(enumerate_gcompositions(3, &trivial, &g).unwrap().len(), 4);
        assert!(enumerate_gcompositions(0, &trivial, &g).is_err());
        // canonical order: length, sizes, colors
        assert_eq!(
            two,
            vec![
                comp(&[(2, 0)]),
                comp(&[(2, 1)]),
                comp(&[(1, 0), (1, 0)]),
                comp(&[(1, 0), (1, 1)]),
                comp(&[(1, 1), (1, 0)]),
                comp(&[(1, 1), (1, 1)]),
            ]
        );
    }

    #[test]
    fn of_type_counts() {
        let g = SizeGuard::default();
        assert_eq!(
            enumerate_of_type(&comp(&[(3, 1)]), &g).unwrap(),
            vec![part(&[(&[1, 2, 3], 1)])]
        );
        assert_eq!(enumerate_of_type(&comp(&[(1, 0), (1, 0)]), &g).unwrap().len(), 2);
        let twos = enumerate_of_type(&comp(&[(2, 0), (1, 1)]), &g).unwrap();
        assert_eq!(twos.len(), 3);
        assert!(twos.iter().all(|p| p.gtype() == comp(&[(2, 0), (1, 1)])));
        assert!(matches!(
            enumerate_of_type(&comp(&[(1, 0); 12]), &g),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn semigroup_counts() {
        let g = SizeGuard::default();
        let trivial = FiniteGroup::cyclic(1).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(enumerate_ordered_gpartitions(1, &trivial, &g).unwrap().len(), 1);
        assert_eq!(enumerate_ordered_gpartitions(3, &trivial, &g).unwrap().len(), 13);
        let all = enumerate_ordered_gpartitions(3, &z2, &g).unwrap();
        assert_eq!(all.len(), 74);
        assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), 74);
        let err = enumerate_ordered_gpartitions(9, &z2, &g).unwrap_err();
        assert!(matches!(err, Error::SizeGuard { .. }));
        assert!(err.to_string().contains("estimated"));
    }

    #[test]
    fn refinement_examples() {
        assert!(is_refinement(&comp(&[(2, 0), (2, 0)]), &comp(&[(4, 0)])).unwrap());
        let a = comp(&[(1, 1), (2, 0)]);
        assert!(is_refinement(&a, &a).unwrap());
        assert!(!is_refinement(&comp(&[(2, 0), (2, 1)]), &comp(&[(4, 0)])).unwrap());
        assert!(!is_refinement(&comp(&[(4, 0)]), &comp(&[(2, 0), (2, 0)])).unwrap());
        assert!(!is_refinement(&comp(&[(1, 0), (2, 0)]), &comp(&[(2, 0), (1, 0)])).unwrap());
        assert!(is_refinement(&comp(&[(1, 0)]), &comp(&[(2, 0)])).is_err());
    }

    #[test]
    fn coarsening_examples() {
        assert_eq!(coarsenings(&comp(&[(3, 1)])), vec![comp(&[(3, 1)])]);
        assert_eq!(
            coarsenings(&comp(&[(1, 0), (1, 0)])),
            vec![comp(&[(2, 0)]), comp(&[(1, 0), (1, 0)])]
        );
        assert_eq!(coarsenings(&comp(&[(1, 0), (1, 1)])), vec![comp(&[(1, 0), (1, 1)])]);
    }

    /// Transitive closure of the cover relations `(a+b, g) < (a, g), (b, g)`.
    fn coarsenings_by_covers(alpha: &GComposition) -> BTreeSet<GComposition> {
        let mut seen = BTreeSet::from([alpha.clone()]);
        let mut frontier = vec![alpha.clone()];
        while let Some(beta) = frontier.pop() {
            for i in 0..beta.len().saturating_sub(1) {
                let (p, q) = (beta.parts()[i], beta.parts()[i + 1]);
                if p.color == q.color {
                    let mut parts = beta.parts().to_vec();
                    parts.splice(i..i + 2, [Part::new(p.size + q.size, p.color)]);
                    let merged = GComposition::new(parts).unwrap();
                    if seen.insert(merged.clone()) {
                        frontier.push(merged);
                    }
                }
            }
        }
        seen
    }

    #[test]
    fn refinement_matches_cover_closure() {
        let g = SizeGuard::default();
        for group in [FiniteGroup::cyclic(1).unwrap(), FiniteGroup::cyclic(2).unwrap()] {
            for n in 1..=4 {
                let all = enumerate_gcompositions(n, &group, &g).unwrap();
                for alpha in &all {
                    let closure = coarsenings_by_covers(alpha);
                    let listed: BTreeSet<_> = coarsenings(alpha).into_iter().collect();
                    assert_eq!(closure, listed);
                    for beta in &all {
                        assert_eq!(is_refinement(alpha, beta).unwrap(), closure.contains(beta));
                    }
                }
            }
        }
    }

    #[test]
    fn refinement_is_a_partial_order() {
        let g = SizeGuard::default();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        for n in 1..=4 {
            let all = enumerate_gcompositions(n, &z2, &g).unwrap();
            let r = |a: &GComposition, b: &GComposition| is_refinement(a, b).unwrap();
            for a in &all {
                assert!(r(a, a));
                for b in &all {
                    if r(a, b) && r(b, a) {
                        assert_eq!(a, b);
                    }
                    for c in &all {
                        if r(a, b) && r(b, c) {
                            assert!(r(a, c));
                        }
                    }
                }
            }
        }
    }
}
