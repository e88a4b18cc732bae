//! Text forms of the algebraic objects.
//!
//! ```text
//! composition      (2:g1|1:g2)            color optional, defaults to the identity
//! partition        ({1,3}:g1|{2}:g2)
//! colored perm     [(3:g)(6:g)(4:h)]
//! combination      2*sigma(2:0|1:1) - X(3:0)
//! ```
//!
//! Colors are written by label or by index. Whitespace is ignored between
//! tokens, and parse errors carry the byte offset where parsing failed.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{GComposition, OrderedGPartition, Part};
use crate::error::{Error, Result};
use crate::group::{Color, FiniteGroup};
use crate::linear::LinearCombination;
use crate::wreath::ColoredPermutation;

/// Which basis a combination of compositions is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombinationKind {
    /// `σ_α`, the invariant subalgebra.
    Sigma,
    /// `X_α`, the descent algebra.
    X,
}

impl CombinationKind {
    fn keyword(self) -> &'static str {
        match self {
            CombinationKind::Sigma => "sigma",
            CombinationKind::X => "X",
        }
    }
}

/// Any operand the command line accepts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Partition(OrderedGPartition),
    Wreath(ColoredPermutation),
    Combination(CombinationKind, LinearCombination<GComposition>),
}

impl Element {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Element::Partition(_) => "partition",
            Element::Wreath(_) => "wreath",
            Element::Combination(CombinationKind::Sigma, _) => "sigma-combination",
            Element::Combination(CombinationKind::X, _) => "x-combination",
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn word(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &self.src[start..start + len]))
    }

    fn integer(&mut self, what: &str) -> Result<(usize, BigInt)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return self.error(format!("expected {what}"));
        }
        self.pos += len;
        Ok((start, self.src[start..start + len].parse().expect("digits")))
    }

    fn small(&mut self, what: &str) -> Result<usize> {
        let (start, value) = self.integer(what)?;
        usize::try_from(&value).map_err(|_| Error::Parse {
            pos: start,
            message: format!("{what} {value} is too large"),
        })
    }

    fn color(&mut self, group: &FiniteGroup) -> Result<Color> {
        match self.word() {
            Some((start, token)) => group.parse_color(token).ok_or_else(|| Error::Parse {
                pos: start,
                message: format!("unknown color {token:?} for a group of order {}", group.order()),
            }),
            None => self.error("expected a color label or index"),
        }
    }

    fn optional_color(&mut self, group: &FiniteGroup) -> Result<Color> {
        if self.eat(':') {
            self.color(group)
        } else {
            Ok(Color::IDENTITY)
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected trailing '{c}'")),
        }
    }
}

fn composition_body(cur: &mut Cursor<'_>, group: &FiniteGroup) -> Result<GComposition> {
    let start = cur.pos;
    cur.expect('(')?;
    let mut parts = Vec::new();
    loop {
        let size = cur.small("part size")?;
        if size == 0 {
            return cur.error("part sizes must be positive");
        }
        parts.push(Part::new(size, cur.optional_color(group)?));
        if !cur.eat('|') {
            break;
        }
    }
    cur.expect(')')?;
    GComposition::new(parts).map_err(|e| Error::Parse {
        pos: start,
        message: e.to_string(),
    })
}

pub fn parse_composition(group: &FiniteGroup, src: &str) -> Result<GComposition> {
    let mut cur = Cursor::new(src);
    let alpha = composition_body(&mut cur, group)?;
    cur.finish()?;
    Ok(alpha)
}

pub fn parse_partition(group: &FiniteGroup, src: &str) -> Result<OrderedGPartition> {
    let mut cur = Cursor::new(src);
    let start = cur.peek().map(|_| cur.pos).unwrap_or(0);
    cur.expect('(')?;
    let mut blocks = Vec::new();
    loop {
        cur.expect('{')?;
        let mut members = vec![cur.small("block element")?];
        while cur.eat(',') {
            members.push(cur.small("block element")?);
        }
        cur.expect('}')?;
        blocks.push((members, cur.optional_color(group)?));
        if !cur.eat('|') {
            break;
        }
    }
    cur.expect(')')?;
    cur.finish()?;
    OrderedGPartition::new(blocks).map_err(|e| Error::Parse {
        pos: start,
        message: e.to_string(),
    })
}

pub fn parse_colored_permutation(group: &FiniteGroup, src: &str) -> Result<ColoredPermutation> {
    let mut cur = Cursor::new(src);
    let start = cur.peek().map(|_| cur.pos).unwrap_or(0);
    cur.expect('[')?;
    let mut entries = Vec::new();
    while cur.eat('(') {
        let value = cur.small("permutation value")?;
        entries.push((value, cur.optional_color(group)?));
        cur.expect(')')?;
    }
    cur.expect(']')?;
    cur.finish()?;
    ColoredPermutation::new(entries).map_err(|e| Error::Parse {
        pos: start,
        message: e.to_string(),
    })
}

/// Parses `c₁*kind(α₁) ± c₂*kind(α₂) …` where every kind is the same keyword.
pub fn parse_combination(group: &FiniteGroup, src: &str) -> Result<(CombinationKind, LinearCombination<GComposition>)> {
    let mut cur = Cursor::new(src);
    let mut kind = None;
    let mut out = LinearCombination::zero();
    let mut first = true;
    loop {
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            break;
        };
        first = false;
        let coeff = if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            let (_, c) = cur.integer("coefficient")?;
            cur.eat('*');
            c
        } else {
            BigInt::one()
        };
        let this_kind = match cur.word() {
            Some((_, "sigma")) => CombinationKind::Sigma,
            Some((_, "X")) => CombinationKind::X,
            Some((start, other)) => {
                return Err(Error::Parse {
                    pos: start,
                    message: format!("expected 'sigma' or 'X', found {other:?}"),
                })
            }
            None => return cur.error("expected 'sigma' or 'X'"),
        };
        if let Some(k) = kind {
            if k != this_kind {
                return cur.error("cannot mix sigma and X terms in one combination");
            }
        }
        kind = Some(this_kind);
        let alpha = composition_body(&mut cur, group)?;
        out.add_term(alpha, if negative { -coeff } else { coeff });
    }
    cur.finish()?;
    Ok((kind.expect("at least one term"), out))
}

/// Detects the operand kind from its first characters and parses it.
pub fn parse_element(group: &FiniteGroup, src: &str) -> Result<Element> {
    let trimmed = src.trim_start();
    let mut chars = trimmed.chars().filter(|c| !c.is_whitespace());
    match (chars.next(), chars.next()) {
        (Some('['), _) => Ok(Element::Wreath(parse_colored_permutation(group, src)?)),
        (Some('('), Some('{')) => Ok(Element::Partition(parse_partition(group, src)?)),
        _ => {
            let (kind, lc) = parse_combination(group, src)?;
            Ok(Element::Combination(kind, lc))
        }
    }
}

pub fn render_color(group: &FiniteGroup, c: Color) -> &str {
    if group.contains(c) {
        group.label(c)
    } else {
        "?"
    }
}

pub fn render_composition(group: &FiniteGroup, alpha: &GComposition) -> String {
    let parts: Vec<String> = alpha
        .parts()
        .iter()
        .map(|p| format!("{}:{}", p.size, render_color(group, p.color)))
        .collect();
    format!("({})", parts.join("|"))
}

pub fn render_partition(group: &FiniteGroup, p: &OrderedGPartition) -> String {
    let blocks: Vec<String> = p
        .blocks()
        .iter()
        .map(|b| {
            let members: Vec<String> = b.members().iter().map(|x| x.to_string()).collect();
            format!("{{{}}}:{}", members.join(","), render_color(group, b.color()))
        })
        .collect();
    format!("({})", blocks.join("|"))
}

pub fn render_colored_permutation(group: &FiniteGroup, u: &ColoredPermutation) -> String {
    let mut s = String::from("[");
    for &(v, c) in u.entries() {
        write!(s, "({v}:{})", render_color(group, c)).expect("write to string");
    }
    s.push(']');
    s
}

/// Renders `Σ c_k·k` as `c*k + c*k - …`, omitting unit coefficients; zero is `0`.
pub fn render_linear<K: Ord + Clone>(lc: &LinearCombination<K>, mut key: impl FnMut(&K) -> String) -> String {
    if lc.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (k, c)) in lc.iter().enumerate() {
        let sign = if c.is_negative() { "-" } else { "+" };
        match (i, sign) {
            (0, "-") => s.push('-'),
            (0, _) => {}
            _ => write!(s, " {sign} ").expect("write to string"),
        }
        let abs = c.abs();
        if !abs.is_one() {
            write!(s, "{abs}*").expect("write to string");
        }
        s.push_str(&key(k));
    }
    s
}

pub fn render_combination(group: &FiniteGroup, kind: CombinationKind, lc: &LinearCombination<GComposition>) -> String {
    render_linear(lc, |a| format!("{}{}", kind.keyword(), render_composition(group, a)))
}

pub fn render_element(group: &FiniteGroup, e: &Element) -> String {
    match e {
        Element::Partition(p) => render_partition(group, p),
        Element::Wreath(u) => render_colored_permutation(group, u),
        Element::Combination(kind, lc) => render_combination(group, *kind, lc),
    }
}

/// Coefficient as text, used in reports.
pub fn render_coeff(c: &BigInt) -> String {
    if c.is_zero() {
        "0".into()
    } else {
        c.to_string()
    }
}
