//! The group algebra of G≀Sₙ, the descent bases `Y_α` and `X_α`, and the map
//! `f(σ_α) = X_α` from the invariant subalgebra.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{coarsenings, enumerate_gcompositions, enumerate_of_type, is_refinement, GComposition};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::guard::SizeGuard;
use crate::invariant::{sigma_product, SigmaElement};
use crate::linear::LinearCombination;
use crate::semigroup::multiply;
use crate::text;
use crate::wreath::{chamber_to_wreath, co, enumerate_wreath, w_mul, wreath_to_chamber, ColoredPermutation};

/// An element of the integral group algebra of G≀Sₙ.
pub type GroupAlgebraElement = LinearCombination<ColoredPermutation>;

/// Bilinear extension of the wreath product.
pub fn ga_mul(group: &FiniteGroup, x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    let mut ns = x.keys().chain(y.keys()).map(ColoredPermutation::n);
    if let Some(n) = ns.next() {
        if let Some(bad) = ns.find(|&m| m != n) {
            return Err(Error::SizeMismatch(format!(
                "group-algebra elements over G≀S{n} and G≀S{bad}"
            )));
        }
    }
    Ok(x.bilinear_monomial(y, |u, v| w_mul(group, u, v).expect("uniform n checked")))
}

/// How a sweep over pairs of G-compositions chooses its pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum SweepMode {
    Exhaustive,
    /// `samples` pairs drawn uniformly (with replacement) from the canonical
    /// basis order by a ChaCha8 generator seeded with `seed`.
    Sampled {
        samples: usize,
        seed: u64,
    },
}

impl SweepMode {
    /// The index pairs to check for a basis of the given size.
    pub fn pairs(&self, len: usize) -> Vec<(usize, usize)> {
        match *self {
            SweepMode::Exhaustive => (0..len).flat_map(|i| (0..len).map(move |j| (i, j))).collect(),
            SweepMode::Sampled { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..samples)
                    .map(|_| (rng.gen_range(0..len), rng.gen_range(0..len)))
                    .collect()
            }
        }
    }
}

/// One failed check in a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

/// Number of checks performed and the failures found, in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepOutcome {
    pub checked: u64,
    pub failures: Vec<Failure>,
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: SweepOutcome) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    pub(crate) fn from_results(results: Vec<Option<Failure>>) -> Self {
        SweepOutcome {
            checked: results.len() as u64,
            failures: results.into_iter().flatten().collect(),
        }
    }
}

/// G≀Sₙ for fixed `G` and `n`, indexed by descent composition.
#[derive(Clone, Debug)]
pub struct DescentAlgebra {
    group: FiniteGroup,
    n: usize,
    guard: SizeGuard,
    basis: Vec<GComposition>,
    elements: Vec<ColoredPermutation>,
    fibers: BTreeMap<GComposition, Vec<ColoredPermutation>>,
    descent: HashMap<ColoredPermutation, GComposition>,
}

impl DescentAlgebra {
    pub fn new(group: &FiniteGroup, n: usize, guard: &SizeGuard) -> Result<Self> {
        let basis = enumerate_gcompositions(n, group, guard)?;
        let elements = enumerate_wreath(group, n, guard)?;
        let mut fibers: BTreeMap<GComposition, Vec<ColoredPermutation>> = BTreeMap::new();
        let mut descent = HashMap::with_capacity(elements.len());
        for u in &elements {
            let alpha = co(u);
            fibers.entry(alpha.clone()).or_default().push(u.clone());
            descent.insert(u.clone(), alpha);
        }
        Ok(DescentAlgebra {
            group: group.clone(),
            n,
            guard: *guard,
            basis,
            elements,
            fibers,
            descent,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// All G-compositions of `n`, in canonical order.
    pub fn basis(&self) -> &[GComposition] {
        &self.basis
    }

    pub fn elements(&self) -> &[ColoredPermutation] {
        &self.elements
    }

    /// The elements `u` with `Co(u) = α`.
    pub fn fiber(&self, alpha: &GComposition) -> &[ColoredPermutation] {
        self.fibers.get(alpha).map_or(&[], Vec::as_slice)
    }

    fn check(&self, alpha: &GComposition) -> Result<()> {
        if alpha.n() != self.n {
            return Err(Error::SizeMismatch(format!(
                "composition of {} in the descent algebra of G≀S{}",
                alpha.n(),
                self.n
            )));
        }
        alpha.check_colors(&self.group)
    }

    /// `Y_α = Σ_{Co(u) = α} u`.
    pub fn y_basis(&self, alpha: &GComposition) -> Result<GroupAlgebraElement> {
        self.check(alpha)?;
        Ok(GroupAlgebraElement::sum_of(self.fiber(alpha).iter().cloned()))
    }

    /// `X_α = Σ_{β ≤ α} Y_β`.
    pub fn x_basis(&self, alpha: &GComposition) -> Result<GroupAlgebraElement> {
        self.check(alpha)?;
        Ok(GroupAlgebraElement::sum_of(
            coarsenings(alpha)
                .iter()
                .flat_map(|beta| self.fiber(beta).iter().cloned()),
        ))
    }

    /// `Σ_{u : Co(u) ≤ α} u`, filtering the whole group by the refinement test.
    pub fn x_basis_direct(&self, alpha: &GComposition) -> Result<GroupAlgebraElement> {
        self.check(alpha)?;
        Ok(GroupAlgebraElement::sum_of(
            self.elements
                .iter()
                .filter(|u| is_refinement(alpha, &self.descent[*u]).expect("same n"))
                .cloned(),
        ))
    }

    /// `Σ_{β ≤ α} (−1)^{ℓ(α)−ℓ(β)} X_β`.
    pub fn y_from_x(&self, alpha: &GComposition) -> Result<GroupAlgebraElement> {
        self.check(alpha)?;
        let mut out = GroupAlgebraElement::zero();
        for beta in coarsenings(alpha) {
            let x = self.x_basis(&beta)?;
            out += if (alpha.len() - beta.len()).is_multiple_of(2) {
                x
            } else {
                -x
            };
        }
        Ok(out)
    }

    /// Linear extension of `σ_α ↦ X_α`.
    pub fn f_map(&self, x: &SigmaElement) -> Result<GroupAlgebraElement> {
        for alpha in x.keys() {
            self.check(alpha)?;
        }
        Ok(x.map_linear(|alpha| self.x_basis(alpha).expect("checked")))
    }

    pub fn ga_mul(&self, x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        ga_mul(&self.group, x, y)
    }

    /// Coordinates in the `Y` basis; fails unless `z` is constant on every
    /// descent-composition fiber.
    pub fn express_in_y_basis(&self, z: &GroupAlgebraElement) -> Result<LinearCombination<GComposition>> {
        let mut out = LinearCombination::zero();
        let mut done = std::collections::BTreeSet::new();
        for u in z.keys() {
            let alpha = self.descent.get(u).ok_or_else(|| {
                Error::SizeMismatch(format!(
                    "{} is not an element of G≀S{}",
                    text::render_colored_permutation(&self.group, u),
                    self.n
                ))
            })?;
            if !done.insert(alpha) {
                continue;
            }
            let fiber = self.fiber(alpha);
            let first = z.coeff(&fiber[0]);
            if let Some(other) = fiber.iter().find(|v| z.coeff(v) != first) {
                return Err(Error::NotInSpan {
                    first: text::render_colored_permutation(&self.group, &fiber[0]),
                    first_coeff: text::render_coeff(&first),
                    second: text::render_colored_permutation(&self.group, other),
                    second_coeff: text::render_coeff(&z.coeff(other)),
                });
            }
            out.add_term(alpha.clone(), first);
        }
        Ok(out)
    }

    /// Coordinates in the `X` basis, through the `Y` basis and Möbius inversion.
    pub fn express_in_x_basis(&self, z: &GroupAlgebraElement) -> Result<LinearCombination<GComposition>> {
        let y = self.express_in_y_basis(z)?;
        let mut out = LinearCombination::zero();
        for (alpha, c) in &y {
            for beta in coarsenings(alpha) {
                let sign = if (alpha.len() - beta.len()) % 2 == 0 { 1 } else { -1 };
                out.add_term(beta, c * BigInt::from(sign));
            }
        }
        Ok(out)
    }

    /// `σ_α` acting on the chamber of `v` by left multiplication in the
    /// semigroup, read back as a group-algebra element.
    pub fn sigma_act_on_chamber(&self, alpha: &GComposition, v: &ColoredPermutation) -> Result<GroupAlgebraElement> {
        self.check(alpha)?;
        if v.n() != self.n {
            return Err(Error::SizeMismatch(format!(
                "element of G≀S{} acted on in G≀S{}",
                v.n(),
                self.n
            )));
        }
        v.check_colors(&self.group)?;
        let chamber = wreath_to_chamber(v);
        let mut out = GroupAlgebraElement::zero();
        for p in enumerate_of_type(alpha, &self.guard)? {
            let product = multiply(&self.group, &p, &chamber)?;
            out.add_term(chamber_to_wreath(&product)?, BigInt::from(1));
        }
        Ok(out)
    }

    /// `X_α` for every basis element, aligned with [`Self::basis`].
    pub fn x_table(&self) -> Vec<GroupAlgebraElement> {
        self.basis
            .par_iter()
            .map(|a| self.x_basis(a).expect("basis element"))
            .collect()
    }

    fn f_map_cached(&self, x: &SigmaElement, table: &[GroupAlgebraElement]) -> GroupAlgebraElement {
        x.map_linear(|alpha| {
            let i = self.basis.binary_search(alpha).expect("γ in basis");
            table[i].clone()
        })
    }

    /// Checks `f(σ_α σ_β) = X_β * X_α` for the pairs chosen by `mode`.
    pub fn verify_theorem1(&self, mode: SweepMode) -> SweepOutcome {
        let table = self.x_table();
        let render = |a: &GComposition| text::render_composition(&self.group, a);
        let results = mode
            .pairs(self.basis.len())
            .into_par_iter()
            .map(|(i, j)| {
                let (alpha, beta) = (&self.basis[i], &self.basis[j]);
                let lhs = self.f_map_cached(&sigma_product(&self.group, alpha, beta).expect("same n"), &table);
                let rhs = self.ga_mul(&table[j], &table[i]).expect("same n");
                lhs.first_difference(&rhs).map(|(u, l, r)| Failure {
                    case: format!("alpha={} beta={}", render(alpha), render(beta)),
                    detail: format!(
                        "coefficient of {}: f(sigma_alpha sigma_beta) has {}, X_beta*X_alpha has {}",
                        text::render_colored_permutation(&self.group, &u),
                        l,
                        r
                    ),
                })
            })
            .collect();
        SweepOutcome::from_results(results)
    }

    /// Checks that `X_β * X_α` lies in the span of the `X` basis.
    pub fn verify_closure(&self, mode: SweepMode) -> SweepOutcome {
        let table = self.x_table();
        let render = |a: &GComposition| text::render_composition(&self.group, a);
        let results = mode
            .pairs(self.basis.len())
            .into_par_iter()
            .map(|(i, j)| {
                let product = self.ga_mul(&table[j], &table[i]).expect("same n");
                self.express_in_x_basis(&product).err().map(|e| Failure {
                    case: format!("X_{} * X_{}", render(&self.basis[j]), render(&self.basis[i])),
                    detail: e.to_string(),
                })
            })
            .collect();
        SweepOutcome::from_results(results)
    }
}
