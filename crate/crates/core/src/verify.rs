//! Verification suites over small instances, with JSON-serializable reports.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{enumerate_gcompositions, enumerate_ordered_gpartitions, GComposition, OrderedGPartition};
use crate::descent::{DescentAlgebra, Failure, GroupAlgebraElement, SweepMode, SweepOutcome};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::guard::{self, SizeGuard};
use crate::invariant::{sigma_product, sigma_product_bruteforce, SigmaElement};
use crate::semigroup::{check_identities_on, multiply};
use crate::text;
use crate::wreath::{chamber_to_wreath, enumerate_wreath, left_ideal_product, wreath_to_chamber, ColoredPermutation};

pub const SCHEMA_VERSION: u32 = 1;

/// Failures kept verbatim in a report; the total is always recorded.
const MAX_REPORTED_FAILURES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Identities,
    Prop1,
    Mobius,
    Theorem1,
    LeftIdeal,
    Counts,
}

impl Target {
    pub const ALL: [Target; 6] = [
        Target::Identities,
        Target::Prop1,
        Target::Mobius,
        Target::Theorem1,
        Target::LeftIdeal,
        Target::Counts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Identities => "identities",
            Target::Prop1 => "prop1",
            Target::Mobius => "mobius",
            Target::Theorem1 => "theorem1",
            Target::LeftIdeal => "left-ideal",
            Target::Counts => "counts",
        }
    }

    fn statement(self) -> &'static str {
        match self {
            Target::Identities => "x^(|G|+1) = x and x y x^|G| = x y on ordered G-partitions",
            Target::Prop1 => "sigma_alpha sigma_beta = sum over compatible matrices M of sigma_M'",
            Target::Mobius => {
                "Y_alpha = sum_{beta <= alpha} (-1)^(l(alpha)-l(beta)) X_beta, X via coarsenings = X by descent filter"
            }
            Target::Theorem1 => "f(sigma_alpha sigma_beta) = X_beta * X_alpha, and X_beta * X_alpha lies in the X span",
            Target::LeftIdeal => "chambers form a left ideal; sigma_alpha v = v * X_alpha; sigma_alpha I = X_alpha",
            Target::Counts => "cardinalities of the semigroup, the composition basis and the wreath product",
        }
    }

    /// Whether the target draws pairs from the sweep mode.
    fn samples_pairs(self) -> bool {
        matches!(self, Target::Identities | Target::Prop1 | Target::Theorem1)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                Error::Invalid(format!(
                    "unknown verification target {s:?}; expected one of identities, prop1, mobius, theorem1, left-ideal, counts"
                ))
            })
    }
}

/// Everything a verification run needs.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub group: FiniteGroup,
    pub group_name: String,
    pub n: usize,
    pub mode: SweepMode,
    pub seed: u64,
    pub guard: SizeGuard,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub theorem: String,
    pub statement: String,
    pub group: String,
    pub group_order: usize,
    pub n: usize,
    pub mode: String,
    pub samples: Option<usize>,
    pub seed: u64,
    pub pairs_checked: u64,
    pub passed: bool,
    pub failures_total: u64,
    pub failures: Vec<Failure>,
    pub details: Vec<String>,
}

/// Runs one suite.
pub fn run(target: Target, config: &VerifyConfig) -> Result<VerificationReport> {
    let mode = if target.samples_pairs() {
        config.mode
    } else {
        SweepMode::Exhaustive
    };
    let (outcome, details) = match target {
        Target::Identities => (identities(config, mode)?, Vec::new()),
        Target::Prop1 => (prop1(config, mode)?, Vec::new()),
        Target::Mobius => (mobius(config)?, Vec::new()),
        Target::Theorem1 => {
            let algebra = DescentAlgebra::new(&config.group, config.n, &config.guard)?;
            let mut outcome = algebra.verify_theorem1(mode);
            outcome.merge(algebra.verify_closure(mode));
            (outcome, Vec::new())
        }
        Target::LeftIdeal => (left_ideal(config)?, Vec::new()),
        Target::Counts => counts(config)?,
    };
    let failures_total = outcome.failures.len() as u64;
    let mut failures = outcome.failures;
    failures.truncate(MAX_REPORTED_FAILURES);
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        theorem: target.name().to_string(),
        statement: target.statement().to_string(),
        group: config.group_name.clone(),
        group_order: config.group.order(),
        n: config.n,
        mode: match mode {
            SweepMode::Exhaustive => "exhaustive".into(),
            SweepMode::Sampled { .. } => "sampled".into(),
        },
        samples: match mode {
            SweepMode::Exhaustive => None,
            SweepMode::Sampled { samples, .. } => Some(samples),
        },
        seed: config.seed,
        pairs_checked: outcome.checked,
        passed: failures_total == 0,
        failures_total,
        failures,
        details,
    })
}

/// Both power identities; all elements for the first, pairs by `mode` for the second.
pub fn identities(config: &VerifyConfig, mode: SweepMode) -> Result<SweepOutcome> {
    let group = &config.group;
    let all = enumerate_ordered_gpartitions(config.n, group, &config.guard)?;
    if mode == SweepMode::Exhaustive {
        config.guard.admit(
            "pairs of ordered G-partitions",
            (all.len() as u128).saturating_mul(all.len() as u128),
        )?;
    }
    let pairs: Vec<(usize, usize)> = mode.pairs(all.len());
    let report = check_identities_on(group, &all, pairs.iter().map(|&(i, j)| (&all[i], &all[j])));
    Ok(SweepOutcome {
        checked: report.pairs_checked,
        failures: report
            .counterexample
            .into_iter()
            .map(|c| Failure {
                case: match &c.y {
                    Some(y) => format!("x={} y={}", c.x, y),
                    None => format!("x={}", c.x),
                },
                detail: format!("{} fails: {} != {}", c.identity, c.lhs, c.rhs),
            })
            .collect(),
    })
}

/// Compatible-matrix products against the literal semigroup expansion.
pub fn prop1(config: &VerifyConfig, mode: SweepMode) -> Result<SweepOutcome> {
    let group = &config.group;
    let basis = enumerate_gcompositions(config.n, group, &config.guard)?;
    let render = |a: &GComposition| text::render_composition(group, a);
    let results: Vec<Option<Failure>> = mode
        .pairs(basis.len())
        .into_par_iter()
        .map(|(i, j)| {
            let (a, b) = (&basis[i], &basis[j]);
            let case = || format!("alpha={} beta={}", render(a), render(b));
            let fast = sigma_product(group, a, b).expect("same n");
            match sigma_product_bruteforce(group, a, b, &config.guard) {
                Ok(slow) => fast.first_difference(&slow).map(|(g, x, y)| Failure {
                    case: case(),
                    detail: format!(
                        "coefficient of sigma{}: compatible matrices give {x}, semigroup expansion gives {y}",
                        render(&g)
                    ),
                }),
                Err(e) => Some(Failure {
                    case: case(),
                    detail: e.to_string(),
                }),
            }
        })
        .collect();
    Ok(SweepOutcome::from_results(results))
}

/// Möbius round trip and the two routes to `X_α`, for every α.
pub fn mobius(config: &VerifyConfig) -> Result<SweepOutcome> {
    let algebra = DescentAlgebra::new(&config.group, config.n, &config.guard)?;
    let render = |a: &GComposition| text::render_composition(&config.group, a);
    let results = algebra
        .basis()
        .par_iter()
        .map(|a| {
            let y = algebra.y_basis(a).expect("basis");
            let round_trip = algebra.y_from_x(a).expect("basis");
            if let Some((u, l, r)) = round_trip.first_difference(&y) {
                return Some(Failure {
                    case: format!("alpha={}", render(a)),
                    detail: format!(
                        "coefficient of {}: Mobius sum gives {l}, Y_alpha has {r}",
                        text::render_colored_permutation(&config.group, &u)
                    ),
                });
            }
            let direct = algebra.x_basis_direct(a).expect("basis");
            algebra
                .x_basis(a)
                .expect("basis")
                .first_difference(&direct)
                .map(|(u, l, r)| Failure {
                    case: format!("alpha={}", render(a)),
                    detail: format!(
                        "coefficient of {}: X via coarsenings gives {l}, descent filter gives {r}",
                        text::render_colored_permutation(&config.group, &u)
                    ),
                })
        })
        .collect();
    Ok(SweepOutcome::from_results(results))
}

/// Left-ideal property, the sorting-permutation formula, and the action of
/// `σ_α` on chambers, over every partition, chamber and composition.
pub fn left_ideal(config: &VerifyConfig) -> Result<SweepOutcome> {
    let group = &config.group;
    let partitions = enumerate_ordered_gpartitions(config.n, group, &config.guard)?;
    let chambers = enumerate_wreath(group, config.n, &config.guard)?;
    config.guard.admit(
        "partition-chamber pairs",
        (partitions.len() as u128).saturating_mul(chambers.len() as u128),
    )?;
    let algebra = DescentAlgebra::new(group, config.n, &config.guard)?;
    let rp = |p: &OrderedGPartition| text::render_partition(group, p);
    let rv = |v: &ColoredPermutation| text::render_colored_permutation(group, v);

    let mut results: Vec<Option<Failure>> = partitions
        .par_iter()
        .flat_map_iter(|p| {
            chambers.iter().map(move |v| {
                let product = multiply(group, p, &wreath_to_chamber(v)).expect("same n");
                let case = || format!("P={} chamber={}", rp(p), rv(v));
                let Ok(as_wreath) = chamber_to_wreath(&product) else {
                    return Some(Failure {
                        case: case(),
                        detail: format!("product {} is not a chamber", rp(&product)),
                    });
                };
                let formula = left_ideal_product(group, p, v).expect("same n");
                (as_wreath != formula).then(|| Failure {
                    case: case(),
                    detail: format!(
                        "semigroup product {} but sorting formula {}",
                        rv(&as_wreath),
                        rv(&formula)
                    ),
                })
            })
        })
        .collect();

    let table = algebra.x_table();
    let identity = ColoredPermutation::identity(config.n);
    let action: Vec<Option<Failure>> = algebra
        .basis()
        .par_iter()
        .zip(table.par_iter())
        .flat_map_iter(|(a, x)| {
            let algebra = &algebra;
            let identity = &identity;
            chambers.iter().map(move |v| {
                let acted = algebra.sigma_act_on_chamber(a, v).expect("valid");
                let expected = algebra
                    .ga_mul(&GroupAlgebraElement::basis(v.clone()), x)
                    .expect("same n");
                let case = || format!("alpha={} v={}", text::render_composition(group, a), rv(v));
                if let Some((u, l, r)) = acted.first_difference(&expected) {
                    return Some(Failure {
                        case: case(),
                        detail: format!("coefficient of {}: sigma_alpha v has {l}, v * X_alpha has {r}", rv(&u)),
                    });
                }
                (v == identity && &acted != x).then(|| Failure {
                    case: case(),
                    detail: "sigma_alpha I differs from X_alpha".into(),
                })
            })
        })
        .collect();
    results.extend(action);
    Ok(SweepOutcome::from_results(results))
}

/// Enumerated cardinalities against closed forms, plus the fiber partition
/// and the independence of the `X` basis.
pub fn counts(config: &VerifyConfig) -> Result<(SweepOutcome, Vec<String>)> {
    let (group, n) = (&config.group, config.n);
    let m = group.order();
    let mut details = Vec::new();
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut compare = |what: String, enumerated: u128, formula: u128| {
        checked += 1;
        if enumerated == formula {
            details.push(format!("{what} = {enumerated}"));
        } else {
            failures.push(Failure {
                case: what,
                detail: format!("enumerated {enumerated}, closed form {formula}"),
            });
        }
    };

    let partitions = enumerate_ordered_gpartitions(n, group, &config.guard)?;
    let distinct = partitions.iter().collect::<BTreeSet<_>>().len();
    compare(
        format!("|Sigma_{n}^G| (sum_k k! S({n},k) {m}^k)"),
        partitions.len() as u128,
        guard::count_ordered_gpartitions(n, m),
    );
    compare(
        "distinct ordered G-partitions".into(),
        distinct as u128,
        partitions.len() as u128,
    );

    let algebra = DescentAlgebra::new(group, n, &config.guard)?;
    compare(
        format!("#G-compositions of {n} (sum_l C({},l-1) {m}^l)", n - 1),
        algebra.basis().len() as u128,
        guard::count_gcompositions(n, m),
    );
    compare(
        format!("|G wr S_{n}| ({m}^{n} {n}!)"),
        algebra.elements().len() as u128,
        guard::count_wreath(n, m),
    );

    let mut covered = GroupAlgebraElement::zero();
    for a in algebra.basis() {
        covered += algebra.y_basis(a)?;
    }
    let everything = GroupAlgebraElement::sum_of(algebra.elements().iter().cloned());
    compare(
        "elements covered exactly once by Y supports".into(),
        if covered == everything {
            everything.len() as u128
        } else {
            0
        },
        algebra.elements().len() as u128,
    );

    let independent = algebra.basis().iter().all(|a| {
        algebra
            .x_basis(a)
            .and_then(|x| algebra.express_in_x_basis(&x))
            .is_ok_and(|c| c == SigmaElement::basis(a.clone()))
    });
    compare(
        "dim D(G wr S_n) (independent X_alpha)".into(),
        if independent { algebra.basis().len() as u128 } else { 0 },
        guard::count_gcompositions(n, m),
    );

    Ok((SweepOutcome { checked, failures }, details))
}
