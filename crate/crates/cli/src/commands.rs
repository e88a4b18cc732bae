use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde_json::{json, Value};
use wreath_descent::combinatorics::{enumerate_gcompositions, enumerate_ordered_gpartitions};
use wreath_descent::invariant::{inv_mul, sigma_product, write_structure_constants};
use wreath_descent::semigroup::multiply as semigroup_multiply;
use wreath_descent::text::{self, CombinationKind, Element};
use wreath_descent::verify::{self, Target, VerifyConfig, SCHEMA_VERSION};
use wreath_descent::wreath::{enumerate_wreath, w_mul};
use wreath_descent::{DescentAlgebra, Error, FiniteGroup, Result};

use crate::{Family, Format, RunConfig, Status};

fn load_group(config: &RunConfig) -> Result<FiniteGroup> {
    FiniteGroup::from_spec(&config.group_spec)
}

/// Prints `text` or `value` on stdout per `--format`, and writes `value` to
/// `--out` if given.
fn emit(config: &RunConfig, text: &str, value: &Value) -> Result<()> {
    let pretty = serde_json::to_string_pretty(value).expect("JSON values serialize");
    if let Some(path) = &config.out {
        std::fs::write(path, format!("{pretty}\n"))?;
    }
    let mut stdout = io::stdout().lock();
    match config.format {
        Format::Text => writeln!(stdout, "{text}")?,
        Format::Json => writeln!(stdout, "{pretty}")?,
    }
    Ok(())
}

fn header(config: &RunConfig, group: &FiniteGroup, command: &str) -> serde_json::Map<String, Value> {
    let mut map = serde_json::Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    map.insert("group".into(), json!(config.group_spec));
    map.insert("group_order".into(), json!(group.order()));
    map.insert("seed".into(), json!(config.seed));
    map
}

pub fn group(config: &RunConfig) -> Result<Status> {
    let group = load_group(config)?;
    let mut value = header(config, &group, "group");
    let cayley = group.to_cayley_file();
    value.insert("abelian".into(), json!(group.is_abelian()));
    value.insert("labels".into(), json!(group.labels()));
    value.insert("table".into(), json!(cayley.table));

    let width = group.labels().iter().map(String::len).max().unwrap_or(1);
    let mut text = format!(
        "{}: order {}, {}\n",
        config.group_spec,
        group.order(),
        if group.is_abelian() { "abelian" } else { "non-abelian" }
    );
    for a in group.elements() {
        let row: Vec<String> = group
            .elements()
            .map(|b| format!("{:>width$}", group.label(group.mul(a, b))))
            .collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    emit(config, text.trim_end(), &Value::Object(value))?;
    Ok(Status::Ok)
}

pub fn enumerate(config: &RunConfig, family: Family) -> Result<Status> {
    let group = load_group(config)?;
    let n = config.require_n()?;
    let (name, items): (&str, Vec<String>) = match family {
        Family::Compositions => (
            "compositions",
            enumerate_gcompositions(n, &group, &config.guard)?
                .iter()
                .map(|a| text::render_composition(&group, a))
                .collect(),
        ),
        Family::Partitions => (
            "partitions",
            enumerate_ordered_gpartitions(n, &group, &config.guard)?
                .iter()
                .map(|p| text::render_partition(&group, p))
                .collect(),
        ),
        Family::Wreath => (
            "wreath",
            enumerate_wreath(&group, n, &config.guard)?
                .iter()
                .map(|u| text::render_colored_permutation(&group, u))
                .collect(),
        ),
    };
    let mut value = header(config, &group, "enumerate");
    value.insert("n".into(), json!(n));
    value.insert("family".into(), json!(name));
    value.insert("count".into(), json!(items.len()));
    value.insert("items".into(), json!(items));
    emit(config, &items.join("\n"), &Value::Object(value))?;
    Ok(Status::Ok)
}

/// Size of the ground set an operand lives over; `None` for the zero combination.
fn operand_n(e: &Element) -> Option<usize> {
    match e {
        Element::Partition(p) => Some(p.n()),
        Element::Wreath(u) => Some(u.n()),
        Element::Combination(_, lc) => lc.keys().next().map(|a| a.n()),
    }
}

fn product(config: &RunConfig, group: &FiniteGroup, lhs: &Element, rhs: &Element) -> Result<Element> {
    let n = match (operand_n(lhs), operand_n(rhs), config.n) {
        (Some(a), Some(b), _) if a != b => return Err(Error::SizeMismatch(format!("operands over [{a}] and [{b}]"))),
        (Some(a), _, Some(n)) | (_, Some(a), Some(n)) if a != n => {
            return Err(Error::SizeMismatch(format!("operand over [{a}] but --n {n}")))
        }
        (Some(a), _, _) | (_, Some(a), _) => a,
        (None, None, n) => n.unwrap_or(1),
    };
    Ok(match (lhs, rhs) {
        (Element::Partition(p), Element::Partition(q)) => Element::Partition(semigroup_multiply(group, p, q)?),
        (Element::Wreath(u), Element::Wreath(v)) => Element::Wreath(w_mul(group, u, v)?),
        (Element::Combination(CombinationKind::Sigma, x), Element::Combination(CombinationKind::Sigma, y)) => {
            Element::Combination(CombinationKind::Sigma, inv_mul(group, x, y)?)
        }
        (Element::Combination(CombinationKind::X, x), Element::Combination(CombinationKind::X, y)) => {
            let algebra = DescentAlgebra::new(group, n, &config.guard)?;
            // f_map expands each σ_α to X_α, so it also expands X-coordinates.
            let z = algebra.ga_mul(&algebra.f_map(x)?, &algebra.f_map(y)?)?;
            Element::Combination(CombinationKind::X, algebra.express_in_x_basis(&z)?)
        }
        _ => {
            return Err(Error::Invalid(format!(
                "cannot multiply a {} by a {}",
                lhs.kind_name(),
                rhs.kind_name()
            )))
        }
    })
}

pub fn multiply(config: &RunConfig, lhs: &str, rhs: &str) -> Result<Status> {
    let group = load_group(config)?;
    let parse = |side: &str, src: &str| {
        text::parse_element(&group, src).map_err(|e| match e {
            Error::Parse { pos, message } => Error::Parse {
                pos,
                message: format!("{message} (in {side} operand)"),
            },
            other => other,
        })
    };
    let (x, y) = (parse("left", lhs)?, parse("right", rhs)?);
    let z = product(config, &group, &x, &y)?;
    let rendered = text::render_element(&group, &z);
    let mut value = header(config, &group, "multiply");
    value.insert("kind".into(), json!(z.kind_name()));
    value.insert("lhs".into(), json!(text::render_element(&group, &x)));
    value.insert("rhs".into(), json!(text::render_element(&group, &y)));
    value.insert("product".into(), json!(rendered));
    emit(config, &rendered, &Value::Object(value))?;
    Ok(Status::Ok)
}

pub fn structure_constants(config: &RunConfig) -> Result<Status> {
    let group = load_group(config)?;
    let n = config.require_n()?;
    let write_json =
        |out: &mut dyn Write| write_structure_constants(out, &group, &config.group_spec, n, config.seed, &config.guard);
    if let Some(path) = &config.out {
        let mut file = BufWriter::new(File::create(path)?);
        write_json(&mut file)?;
        file.flush()?;
    }
    let mut stdout = BufWriter::new(io::stdout().lock());
    match config.format {
        Format::Json => write_json(&mut stdout)?,
        Format::Text => {
            let basis = enumerate_gcompositions(n, &group, &config.guard)?;
            config.guard.admit(
                "structure-constant pairs",
                (basis.len() as u128).saturating_mul(basis.len() as u128),
            )?;
            let sigma = |a| format!("sigma{}", text::render_composition(&group, a));
            for a in &basis {
                for b in &basis {
                    let c = sigma_product(&group, a, b)?;
                    writeln!(
                        stdout,
                        "{} {} = {}",
                        sigma(a),
                        sigma(b),
                        text::render_combination(&group, CombinationKind::Sigma, &c)
                    )?;
                }
            }
        }
    }
    stdout.flush()?;
    Ok(Status::Ok)
}

pub fn verify(config: &RunConfig, target: Target) -> Result<Status> {
    let group = load_group(config)?;
    let n = config.require_n()?;
    let report = verify::run(
        target,
        &VerifyConfig {
            group,
            group_name: config.group_spec.clone(),
            n,
            mode: config.mode,
            seed: config.seed,
            guard: config.guard,
        },
    )?;
    let mut text = format!(
        "{} {} on {} n={} ({}, {} checks, seed {})",
        if report.passed { "PASS" } else { "FAIL" },
        report.theorem,
        report.group,
        report.n,
        report.mode,
        report.pairs_checked,
        report.seed
    );
    for d in &report.details {
        text.push_str(&format!("\n  {d}"));
    }
    if !report.passed {
        text.push_str(&format!("\n  {} failures", report.failures_total));
        for f in &report.failures {
            text.push_str(&format!("\n  {}: {}", f.case, f.detail));
        }
    }
    let value = serde_json::to_value(&report).expect("reports serialize");
    emit(config, &text, &value)?;
    Ok(if report.passed {
        Status::Ok
    } else {
        Status::VerificationFailed
    })
}
