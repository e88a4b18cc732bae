//! Sparse integer linear combinations over a canonical basis.

use std::collections::btree_map::{self, BTreeMap, Entry};
use std::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A finite formal sum `Σ c_k·k` with exact integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of linear combinations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearCombination<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

impl<K: Ord> Default for LinearCombination<K> {
    fn default() -> Self {
        LinearCombination { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinearCombination<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector `δ_key`.
    pub fn basis(key: K) -> Self {
        let mut lc = Self::zero();
        lc.add_term(key, BigInt::one());
        lc
    }

    /// Sum of the given keys, each with coefficient 1 (repeats accumulate).
    pub fn sum_of(keys: impl IntoIterator<Item = K>) -> Self {
        let mut lc = Self::zero();
        for k in keys {
            lc.add_term(k, BigInt::one());
        }
        lc
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, BigInt)>) -> Self {
        let mut lc = Self::zero();
        for (k, c) in terms {
            lc.add_term(k, c);
        }
        lc
    }

    pub fn add_term(&mut self, key: K, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, key: &K) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, BigInt> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, BigInt> {
        self.terms.keys()
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        LinearCombination {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * factor)).collect(),
        }
    }

    /// Bilinear product determined by `basis_product` on pairs of keys.
    pub fn bilinear<F>(&self, other: &Self, mut basis_product: F) -> Self
    where
        F: FnMut(&K, &K) -> Self,
    {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let coeff = ca * cb;
                for (k, c) in basis_product(a, b).terms {
                    out.add_term(k, c * &coeff);
                }
            }
        }
        out
    }

    /// Bilinear product when basis elements multiply to single basis elements.
    pub fn bilinear_monomial<F>(&self, other: &Self, mut basis_product: F) -> Self
    where
        F: FnMut(&K, &K) -> K,
    {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(basis_product(a, b), ca * cb);
            }
        }
        out
    }

    /// Linear extension of `image` on basis elements.
    pub fn map_linear<L: Ord + Clone, F>(&self, mut image: F) -> LinearCombination<L>
    where
        F: FnMut(&K) -> LinearCombination<L>,
    {
        let mut out = LinearCombination::zero();
        for (k, c) in &self.terms {
            out += image(k).scale(c);
        }
        out
    }

    /// First key (in canonical order) where `self` and `other` differ,
    /// with the two coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(K, BigInt, BigInt)> {
        let mut keys: Vec<&K> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.coeff(k), other.coeff(k));
            (a != b).then(|| (k.clone(), a, b))
        })
    }
}

impl<K: Ord + Clone> AddAssign for LinearCombination<K> {
    fn add_assign(&mut self, rhs: Self) {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
    }
}

impl<K: Ord + Clone> Add for LinearCombination<K> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<K: Ord + Clone> Neg for LinearCombination<K> {
    type Output = Self;

    fn neg(self) -> Self {
        LinearCombination {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<K: Ord + Clone> Sub for LinearCombination<K> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigInt)> for LinearCombination<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigInt)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinearCombination<K> {
    type Item = (&'a K, &'a BigInt);
    type IntoIter = btree_map::Iter<'a, K, BigInt>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
