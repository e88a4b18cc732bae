//! Finite groups given by Cayley table.
//!
//! Elements are dense indices `0..order` with index 0 the identity. The table
//! stores `table[a][b] = a·b`, and every product in the crate goes through
//! [`FiniteGroup::mul`] with its arguments in exactly that order.

use std::fmt;
use std::path::Path;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a [`FiniteGroup`], by index. `Color(0)` is always the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Color(pub u16);

impl Color {
    pub const IDENTITY: Color = Color(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite group with validated multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    labels: Vec<String>,
}

/// On-disk Cayley table: `{ "order": m, "table": [[...]], "labels": [...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// The cyclic group ℤ/m with `a·b = (a+b) mod m`.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOrder(m));
        }
        if m > u16::MAX as usize {
            return Err(Error::TableFormat(format!("order {m} exceeds {}", u16::MAX)));
        }
        let table = (0..m).flat_map(|a| (0..m).map(move |b| ((a + b) % m) as u16)).collect();
        Ok(FiniteGroup {
            order: m,
            table,
            labels: (0..m).map(|a| a.to_string()).collect(),
        })
    }

    /// The symmetric group on `m ≤ 5` letters.
    ///
    /// Elements are permutations of `1..=m` in one-line notation, enumerated
    /// lexicographically (so the identity comes first) and labelled by their
    /// one-line word, e.g. `"132"`. The product is composition of maps with the
    /// right factor applied first: `(a·b)(i) = a(b(i))`.
    pub fn symmetric(m: usize) -> Result<Self> {
        if !(1..=5).contains(&m) {
            return Err(Error::SymmetricDegree(m));
        }
        let perms: Vec<Vec<usize>> = (0..m).permutations(m).collect();
        let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let order = perms.len();
        let mut table = Vec::with_capacity(order * order);
        for a in &perms {
            for b in &perms {
                let ab: Vec<usize> = b.iter().map(|&i| a[i]).collect();
                table.push(index_of(&ab) as u16);
            }
        }
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<String>())
            .collect();
        Ok(FiniteGroup { order, table, labels })
    }

    /// The Klein four-group ℤ/2 × ℤ/2 with labels `e, a, b, c` (`a·b = c`).
    pub fn klein4() -> Self {
        let raw = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        let labels = ["e", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
        FiniteGroup::from_table(raw, Some(labels)).expect("klein four table is a group")
    }

    /// Validates a user-supplied table. Index 0 must be the identity.
    pub fn from_table(raw: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let m = raw.len();
        if m == 0 {
            return Err(Error::TableFormat("table is empty".into()));
        }
        if m > u16::MAX as usize {
            return Err(Error::TableFormat(format!("order {m} exceeds {}", u16::MAX)));
        }
        for (a, row) in raw.iter().enumerate() {
            if row.len() != m {
                return Err(Error::TableFormat(format!(
                    "row {a} has {} entries, expected {m}",
                    row.len()
                )));
            }
            if let Some((b, &x)) = row.iter().enumerate().find(|&(_, &x)| x >= m) {
                return Err(Error::TableFormat(format!(
                    "entry [{a}][{b}] = {x} is out of range 0..{m}"
                )));
            }
        }
        let labels = match labels {
            Some(labels) => {
                if labels.len() != m {
                    return Err(Error::TableFormat(format!(
                        "{} labels given for a table of order {m}",
                        labels.len()
                    )));
                }
                for (i, l) in labels.iter().enumerate() {
                    if l.is_empty() || !l.chars().all(|c| c.is_alphanumeric() || c == '_') {
                        return Err(Error::TableFormat(format!(
                            "label {i} ({l:?}) must be a non-empty alphanumeric word"
                        )));
                    }
                    if labels[..i].contains(l) {
                        return Err(Error::TableFormat(format!("duplicate label {l:?}")));
                    }
                }
                labels
            }
            None => (0..m).map(|a| a.to_string()).collect(),
        };

        for (b, &prod) in raw[0].iter().enumerate() {
            if prod != b {
                return Err(Error::GroupAxiom(format!(
                    "index 0 is not a left identity: 0·{b} = {prod}"
                )));
            }
        }
        for (a, row) in raw.iter().enumerate() {
            if row[0] != a {
                return Err(Error::GroupAxiom(format!(
                    "index 0 is not a right identity: {a}·0 = {}",
                    row[0]
                )));
            }
        }
        fn is_perm(m: usize, mut it: impl Iterator<Item = usize>) -> bool {
            let mut seen = vec![false; m];
            it.all(|x| !std::mem::replace(&mut seen[x], true))
        }
        for (a, row) in raw.iter().enumerate() {
            if !is_perm(m, row.iter().copied()) {
                return Err(Error::GroupAxiom(format!(
                    "row {a} is not a permutation (missing inverses)"
                )));
            }
        }
        for b in 0..m {
            if !is_perm(m, raw.iter().map(|row| row[b])) {
                return Err(Error::GroupAxiom(format!(
                    "column {b} is not a permutation (missing inverses)"
                )));
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = raw[a][b];
                for c in 0..m {
                    if raw[ab][c] != raw[a][raw[b][c]] {
                        return Err(Error::GroupAxiom(format!("not associative on ({a}, {b}, {c})")));
                    }
                }
            }
        }

        let group = FiniteGroup {
            order: m,
            table: raw.iter().flatten().map(|&x| x as u16).collect(),
            labels,
        };
        for a in group.elements() {
            if group.pow(a, m) != Color::IDENTITY {
                return Err(Error::GroupAxiom(format!("{a}^{m} is not the identity")));
            }
        }
        Ok(group)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CayleyFile = serde_json::from_str(text).map_err(|e| Error::TableFormat(e.to_string()))?;
        if file.order != file.table.len() {
            return Err(Error::TableFormat(format!(
                "declared order {} but table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        FiniteGroup::from_table(file.table, file.labels)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        FiniteGroup::from_json(&text)
    }

    /// Builds a group from `cyclic:<m>`, `symmetric:<m>`, `klein4` or `file:<path>`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let parse_order = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Invalid(format!("bad group order {s:?}")))
        };
        if let Some(m) = spec.strip_prefix("cyclic:") {
            FiniteGroup::cyclic(parse_order(m)?)
        } else if let Some(m) = spec.strip_prefix("symmetric:") {
            FiniteGroup::symmetric(parse_order(m)?)
        } else if spec == "klein4" {
            Ok(FiniteGroup::klein4())
        } else if let Some(path) = spec.strip_prefix("file:") {
            FiniteGroup::from_json_file(path)
        } else {
            Err(Error::Invalid(format!(
                "unknown group specifier {spec:?}; expected cyclic:<m>, symmetric:<m>, klein4 or file:<path>"
            )))
        }
    }

    pub fn to_cayley_file(&self) -> CayleyFile {
        CayleyFile {
            order: self.order,
            table: self.table(),
            labels: Some(self.labels.clone()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Color {
        Color::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = Color> + Clone {
        (0..self.order as u16).map(Color)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|row| row.iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Color) -> &str {
        &self.labels[a.index()]
    }

    pub fn contains(&self, a: Color) -> bool {
        a.index() < self.order
    }

    pub fn check(&self, a: Color) -> Result<Color> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange {
                index: a.index(),
                order: self.order,
            })
        }
    }

    /// The product `a·b`. Panics if either index is out of range.
    #[inline]
    pub fn mul(&self, a: Color, b: Color) -> Color {
        assert!(self.contains(a) && self.contains(b), "color out of range");
        Color(self.table[a.index() * self.order + b.index()])
    }

    /// The product `a·b`, rejecting out-of-range indices.
    pub fn gmul(&self, a: Color, b: Color) -> Result<Color> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// `a^k` by repeated multiplication; `a^0` is the identity.
    pub fn pow(&self, a: Color, k: usize) -> Color {
        (0..k).fold(Color::IDENTITY, |acc, _| self.mul(acc, a))
    }

    pub fn gpow(&self, a: Color, k: usize) -> Result<Color> {
        self.check(a)?;
        Ok(self.pow(a, k))
    }

    pub fn inverse(&self, a: Color) -> Color {
        self.elements()
            .find(|&b| self.mul(a, b) == Color::IDENTITY)
            .expect("validated group has inverses")
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .cartesian_product(self.elements())
            .all(|(a, b)| self.mul(a, b) == self.mul(b, a))
    }

    /// Resolves a color token: an exact label match wins, otherwise a decimal index.
    pub fn parse_color(&self, token: &str) -> Option<Color> {
        if let Some(i) = self.labels.iter().position(|l| l == token) {
            return Some(Color(i as u16));
        }
        token
            .parse::<usize>()
            .ok()
            .filter(|&i| i < self.order)
            .map(|i| Color(i as u16))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_small() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().table(), vec![vec![0]]);
        assert_eq!(FiniteGroup::cyclic(2).unwrap().table(), vec![vec![0, 1], vec![1, 0]]);
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(z3.mul(Color(1), Color(1)), Color(2));
        assert_eq!(z3.mul(Color(2), Color(1)), Color(0));
        assert_eq!(z3.gmul(Color(1), Color(2)).unwrap(), Color(0));
        assert_eq!(FiniteGroup::cyclic(0), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn symmetric_groups() {
        assert_eq!(FiniteGroup::symmetric(1).unwrap().order(), 1);
        let s2 = FiniteGroup::symmetric(2).unwrap();
        assert_eq!(s2.table(), FiniteGroup::cyclic(2).unwrap().table());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.labels()[0], "123");
        assert!(!s3.is_abelian());
        // transposition (12) and 3-cycle 231
        let t = s3.parse_color("213").unwrap();
        let c = s3.parse_color("231").unwrap();
        assert_ne!(s3.mul(t, c), s3.mul(c, t));
        // (t·c)(i) = t(c(i)): c = 231 sends 1→2, then t sends 2→1, so 1→1.
        assert_eq!(s3.label(s3.mul(t, c)), "132");
        assert_eq!(FiniteGroup::symmetric(6), Err(Error::SymmetricDegree(6)));
        assert_eq!(FiniteGroup::symmetric(0), Err(Error::SymmetricDegree(0)));
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], None).is_ok());
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None),
            Err(Error::GroupAxiom(msg)) if msg.contains("row 1")
        ));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1]], None),
            Err(Error::TableFormat(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]], None),
            Err(Error::TableFormat(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], None),
            Err(Error::GroupAxiom(msg)) if msg.contains("identity")
        ));
        // A Latin square with identity 0 that is not associative.
        let quasi = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(quasi, None),
            Err(Error::GroupAxiom(msg)) if msg.contains("associative")
        ));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], Some(vec!["e".into(), "e".into()])),
            Err(Error::TableFormat(_))
        ));
    }

    #[test]
    fn klein_four() {
        let k = FiniteGroup::klein4();
        assert!(k.is_abelian());
        for a in k.elements().skip(1) {
            assert_ne!(a, Color::IDENTITY);
            assert_eq!(k.pow(a, 2), Color::IDENTITY);
        }
        assert_eq!(k.label(k.mul(Color(1), Color(2))), "c");
    }

    #[test]
    fn powers() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.pow(Color(1), 3), Color(3));
        assert_eq!(z4.pow(Color(3), 0), Color::IDENTITY);
        assert!(z4.gpow(Color(4), 1).is_err());
        for g in [
            FiniteGroup::cyclic(5).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::klein4(),
        ] {
            for a in g.elements() {
                assert_eq!(g.pow(a, g.order()), Color::IDENTITY);
                assert_eq!(g.mul(a, g.inverse(a)), Color::IDENTITY);
            }
        }
    }

    #[test]
    fn gmul_bounds() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(
            z3.gmul(Color(3), Color(0)),
            Err(Error::ElementOutOfRange { index: 3, order: 3 })
        );
    }

    #[test]
    fn associativity_exhaustive() {
        for g in [FiniteGroup::symmetric(4).unwrap(), FiniteGroup::cyclic(12).unwrap()] {
            for a in g.elements() {
                for b in g.elements() {
                    for c in g.elements() {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        for m in 1..=6 {
            let g = FiniteGroup::cyclic(m).unwrap();
            let text = serde_json::to_string(&g.to_cayley_file()).unwrap();
            assert_eq!(FiniteGroup::from_json(&text).unwrap(), g);
            assert_eq!(FiniteGroup::from_table(g.table(), None).unwrap(), g);
        }
        let unlabeled = r#"{"order": 2, "table": [[0,1],[1,0]]}"#;
        assert_eq!(FiniteGroup::from_json(unlabeled).unwrap().order(), 2);
        let wrong = r#"{"order": 3, "table": [[0,1],[1,0]]}"#;
        assert!(matches!(FiniteGroup::from_json(wrong), Err(Error::TableFormat(_))));
    }

    #[test]
    fn specs() {
        assert_eq!(FiniteGroup::from_spec("cyclic:3").unwrap().order(), 3);
        assert_eq!(FiniteGroup::from_spec("symmetric:3").unwrap().order(), 6);
        assert_eq!(FiniteGroup::from_spec("klein4").unwrap().order(), 4);
        assert!(FiniteGroup::from_spec("dihedral:4").is_err());
        assert!(FiniteGroup::from_spec("cyclic:x").is_err());
    }
}
