//! The invariant subalgebra spanned by the `σ_α`: products via compatible
//! matrices, and the literal expansion inside the semigroup algebra.

use std::collections::BTreeSet;
use std::io::Write;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::combinatorics::{enumerate_gcompositions, enumerate_of_type, GComposition, OrderedGPartition, Part};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::guard::{self, SizeGuard};
use crate::linear::LinearCombination;
use crate::semigroup::multiply;
use crate::text;

pub type SigmaElement = LinearCombination<GComposition>;

/// A `k×ℓ` matrix whose nonzero cells are `(size, color)`, compatible with
/// a row composition α and a column composition β.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompatibleMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Option<Part>>,
}

impl CompatibleMatrix {
    /// Builds a matrix from explicit rows and checks row sums, column sums
    /// and the color condition against `alpha` and `beta`.
    pub fn new(
        group: &FiniteGroup,
        alpha: &GComposition,
        beta: &GComposition,
        rows: Vec<Vec<Option<Part>>>,
    ) -> Result<Self> {
        let (k, l) = (alpha.len(), beta.len());
        if rows.len() != k || rows.iter().any(|r| r.len() != l) {
            return Err(Error::SizeMismatch(format!("expected a {k}×{l} matrix")));
        }
        let m = CompatibleMatrix {
            rows: k,
            cols: l,
            cells: rows.into_iter().flatten().collect(),
        };
        if !m.is_compatible(group, alpha, beta) {
            return Err(Error::Invalid("matrix is not compatible with the margins".into()));
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell(&self, i: usize, j: usize) -> Option<Part> {
        self.cells[i * self.cols + j]
    }

    /// Row sums equal α's sizes, column sums equal β's sizes, and every
    /// nonzero cell `(i, j)` has color `hⱼ·gᵢ`.
    pub fn is_compatible(&self, group: &FiniteGroup, alpha: &GComposition, beta: &GComposition) -> bool {
        if self.rows != alpha.len() || self.cols != beta.len() {
            return false;
        }
        let size = |i, j| self.cell(i, j).map_or(0, |p: Part| p.size);
        let rows_ok = alpha
            .parts()
            .iter()
            .enumerate()
            .all(|(i, a)| (0..self.cols).map(|j| size(i, j)).sum::<usize>() == a.size);
        let cols_ok = beta
            .parts()
            .iter()
            .enumerate()
            .all(|(j, b)| (0..self.rows).map(|i| size(i, j)).sum::<usize>() == b.size);
        let colors_ok = alpha.parts().iter().enumerate().all(|(i, a)| {
            beta.parts().iter().enumerate().all(|(j, b)| match self.cell(i, j) {
                Some(p) => p.size > 0 && p.color == group.mul(b.color, a.color),
                None => true,
            })
        });
        rows_ok && cols_ok && colors_ok
    }

    /// `M′`: the nonzero entries read row by row.
    pub fn read_row_by_row(&self) -> GComposition {
        GComposition::new(self.cells.iter().flatten().copied().collect())
            .expect("a compatible matrix has a nonzero cell")
    }
}

/// Visits every nonnegative integer matrix (row-major) with the given row and
/// column sums. Cells are filled one at a time, bounded above by the remaining
/// row and column margins and below by what the rest of the row can absorb.
pub fn for_each_contingency_table(row_sums: &[usize], col_sums: &[usize], visit: &mut dyn FnMut(&[usize])) {
    if row_sums.is_empty() || col_sums.is_empty() {
        return;
    }
    if row_sums.iter().sum::<usize>() != col_sums.iter().sum::<usize>() {
        return;
    }
    let mut search = TableSearch {
        row_sums,
        cols: col_sums.len(),
        col_rem: col_sums.to_vec(),
        cells: vec![0; row_sums.len() * col_sums.len()],
    };
    search.fill(0, row_sums[0], visit);
}

struct TableSearch<'a> {
    row_sums: &'a [usize],
    cols: usize,
    col_rem: Vec<usize>,
    cells: Vec<usize>,
}

impl TableSearch<'_> {
    fn fill(&mut self, idx: usize, row_rem: usize, visit: &mut dyn FnMut(&[usize])) {
        let (i, j) = (idx / self.cols, idx % self.cols);
        let capacity_after: usize = self.col_rem[j + 1..].iter().sum();
        let lo = row_rem.saturating_sub(capacity_after);
        let hi = row_rem.min(self.col_rem[j]);
        for x in lo..=hi {
            self.cells[idx] = x;
            self.col_rem[j] -= x;
            if j + 1 < self.cols {
                self.fill(idx + 1, row_rem - x, visit);
            } else if i + 1 < self.row_sums.len() {
                self.fill(idx + 1, self.row_sums[i + 1], visit);
            } else if self.col_rem.iter().all(|&c| c == 0) {
                visit(&self.cells);
            }
            self.col_rem[j] += x;
        }
        self.cells[idx] = 0;
    }
}

fn check_same_n(alpha: &GComposition, beta: &GComposition) -> Result<()> {
    if alpha.n() != beta.n() {
        return Err(Error::SizeMismatch(format!(
            "compositions of {} and {}",
            alpha.n(),
            beta.n()
        )));
    }
    Ok(())
}

fn decorate(group: &FiniteGroup, alpha: &GComposition, beta: &GComposition, sizes: &[usize]) -> Vec<Option<Part>> {
    let l = beta.len();
    sizes
        .iter()
        .enumerate()
        .map(|(idx, &s)| {
            (s > 0).then(|| {
                let (g, h) = (alpha.parts()[idx / l].color, beta.parts()[idx % l].color);
                Part::new(s, group.mul(h, g))
            })
        })
        .collect()
}

/// All matrices compatible with `alpha` (rows) and `beta` (columns).
pub fn enumerate_compatible_matrices(
    group: &FiniteGroup,
    alpha: &GComposition,
    beta: &GComposition,
) -> Result<Vec<CompatibleMatrix>> {
    check_same_n(alpha, beta)?;
    let rows: Vec<usize> = alpha.sizes().collect();
    let cols: Vec<usize> = beta.sizes().collect();
    let mut out = Vec::new();
    for_each_contingency_table(&rows, &cols, &mut |sizes| {
        out.push(CompatibleMatrix {
            rows: rows.len(),
            cols: cols.len(),
            cells: decorate(group, alpha, beta, sizes),
        });
    });
    Ok(out)
}

pub fn read_row_by_row(m: &CompatibleMatrix) -> GComposition {
    m.read_row_by_row()
}

/// `σ_α·σ_β = Σ_M σ_{M′}` over all compatible matrices `M`.
pub fn sigma_product(group: &FiniteGroup, alpha: &GComposition, beta: &GComposition) -> Result<SigmaElement> {
    check_same_n(alpha, beta)?;
    let rows: Vec<usize> = alpha.sizes().collect();
    let cols: Vec<usize> = beta.sizes().collect();
    let mut out = SigmaElement::zero();
    for_each_contingency_table(&rows, &cols, &mut |sizes| {
        let parts = decorate(group, alpha, beta, sizes).into_iter().flatten().collect();
        out.add_term(GComposition::new(parts).expect("nonempty"), BigInt::from(1));
    });
    Ok(out)
}

/// `σ_α·σ_β` computed literally in the semigroup algebra: every `P` of type
/// α times every `Q` of type β, then re-expressed in the σ basis after
/// checking that each type fiber carries a constant coefficient.
pub fn sigma_product_bruteforce(
    group: &FiniteGroup,
    alpha: &GComposition,
    beta: &GComposition,
    guard: &SizeGuard,
) -> Result<SigmaElement> {
    check_same_n(alpha, beta)?;
    let a_sizes: Vec<usize> = alpha.sizes().collect();
    let b_sizes: Vec<usize> = beta.sizes().collect();
    guard.admit(
        "semigroup products for one σ pair",
        guard::multinomial(&a_sizes).saturating_mul(guard::multinomial(&b_sizes)),
    )?;
    let ps = enumerate_of_type(alpha, guard)?;
    let qs = enumerate_of_type(beta, guard)?;
    let mut expansion = LinearCombination::<OrderedGPartition>::zero();
    for p in &ps {
        for q in &qs {
            expansion.add_term(multiply(group, p, q)?, BigInt::from(1));
        }
    }
    let types: BTreeSet<GComposition> = expansion.keys().map(OrderedGPartition::gtype).collect();
    let mut out = SigmaElement::zero();
    for gamma in types {
        let fiber = enumerate_of_type(&gamma, guard)?;
        let first = expansion.coeff(&fiber[0]);
        if let Some(other) = fiber.iter().find(|r| expansion.coeff(r) != first) {
            return Err(Error::InvarianceViolation {
                composition: text::render_composition(group, &gamma),
                witness: format!(
                    "{} has coefficient {} but {} has {}",
                    text::render_partition(group, &fiber[0]),
                    first,
                    text::render_partition(group, other),
                    expansion.coeff(other)
                ),
            });
        }
        out.add_term(gamma, first);
    }
    Ok(out)
}

fn check_uniform_n(x: &SigmaElement, y: &SigmaElement) -> Result<()> {
    let mut ns = x.keys().chain(y.keys()).map(GComposition::n);
    if let Some(n) = ns.next() {
        if let Some(bad) = ns.find(|&m| m != n) {
            return Err(Error::SizeMismatch(format!(
                "σ-combinations mix compositions of {n} and {bad}"
            )));
        }
    }
    Ok(())
}

/// Bilinear extension of [`sigma_product`].
pub fn inv_mul(group: &FiniteGroup, x: &SigmaElement, y: &SigmaElement) -> Result<SigmaElement> {
    check_uniform_n(x, y)?;
    Ok(x.bilinear(y, |a, b| sigma_product(group, a, b).expect("uniform n checked")))
}

/// Writes the full table of structure constants as JSON:
/// `{ "schema_version", "n", "group", "seed", "basis": [...], "products": { "i,j": [[γ, c], ...] } }`.
/// The table does not depend on `seed`; it is recorded so every output of a
/// run carries it.
/// Products are computed one row `i` at a time and written as they finish.
pub fn write_structure_constants(
    out: &mut dyn Write,
    group: &FiniteGroup,
    group_name: &str,
    n: usize,
    seed: u64,
    guard: &SizeGuard,
) -> Result<()> {
    let basis = enumerate_gcompositions(n, group, guard)?;
    guard.admit(
        "structure-constant pairs",
        (basis.len() as u128).saturating_mul(basis.len() as u128),
    )?;
    let index_of = |gamma: &GComposition| basis.binary_search(gamma).expect("γ is a G-composition of n");
    let rendered: Vec<String> = basis.iter().map(|a| text::render_composition(group, a)).collect();
    write!(
        out,
        "{{\"schema_version\":1,\"n\":{n},\"group\":{},\"seed\":{seed},\"basis\":{},\"products\":{{",
        Value::from(group_name),
        serde_json::to_string(&rendered).expect("strings serialize")
    )?;
    let mut first = true;
    for (i, alpha) in basis.iter().enumerate() {
        let row: Vec<Vec<(usize, BigInt)>> = basis
            .par_iter()
            .map(|beta| {
                sigma_product(group, alpha, beta)
                    .expect("same n")
                    .iter()
                    .map(|(gamma, c)| (index_of(gamma), c.clone()))
                    .collect()
            })
            .collect();
        for (j, terms) in row.into_iter().enumerate() {
            let mut sorted = terms;
            sorted.sort_by_key(|(g, _)| *g);
            let entries: Vec<Value> = sorted.into_iter().map(|(g, c)| json!([g, coeff_json(&c)])).collect();
            if !first {
                out.write_all(b",")?;
            }
            first = false;
            write!(out, "\"{i},{j}\":{}", Value::from(entries))?;
        }
    }
    out.write_all(b"}}\n")?;
    Ok(())
}

/// A coefficient as a JSON number when it fits in `i64`, otherwise as a decimal string.
pub fn coeff_json(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(c.to_string()),
    }
}
