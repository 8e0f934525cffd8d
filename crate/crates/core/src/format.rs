//! On-disk formats.
//!
//! The `.dts` text form is a header line `n k scope` followed by one line
//! of `k + 1` space-separated integers per block. The JSON form carries the
//! same data plus provenance (`algorithm`, `seed`). Packings use a header
//! `v n k` followed by one line of residues per block.

use serde::{Deserialize, Serialize};

use crate::dts::TriangleSet;
use crate::error::{DtsError, Result};
use crate::packing::Packing;

pub fn emit_text(set: &TriangleSet) -> String {
    let mut out = format!("{} {} {}\n", set.n(), set.k(), set.scope());
    for block in set.blocks() {
        push_row(&mut out, block.elements().iter());
    }
    out
}

fn push_row<T: std::fmt::Display>(out: &mut String, row: impl Iterator<Item = T>) {
    let mut first = true;
    for v in row {
        if !first {
            out.push(' ');
        }
        first = false;
        out.push_str(&v.to_string());
    }
    out.push('\n');
}

fn parse_ints(line: &str, lineno: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| DtsError::parse(lineno, format!("not an integer: {tok:?}")))
        })
        .collect()
}

fn header(line: Option<(usize, &str)>) -> Result<(usize, [u64; 3])> {
    let (idx, line) = line.ok_or_else(|| DtsError::parse(1, "missing header line"))?;
    let vals = parse_ints(line, idx + 1)?;
    if vals.len() != 3 || vals.iter().any(|&v| v < 0) {
        return Err(DtsError::parse(
            idx + 1,
            "header must be three non-negative integers",
        ));
    }
    Ok((idx + 1, [vals[0] as u64, vals[1] as u64, vals[2] as u64]))
}

/// Raw rows of a `.dts` file, header consistency checked but not the
/// difference property. Lets `verify` report collisions on bad files.
pub fn parse_text_raw(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (hline, [n, k, scope]) = header(lines.next())?;
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let row = parse_ints(line, idx + 1)?;
        if row.len() as u64 != k + 1 {
            return Err(DtsError::parse(
                idx + 1,
                format!("expected {} entries, found {}", k + 1, row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() as u64 != n {
        return Err(DtsError::parse(
            hline,
            format!("header declares {n} blocks, file has {}", rows.len()),
        ));
    }
    let actual = rows.iter().flatten().copied().max().unwrap_or(0);
    if actual != scope as i64 {
        return Err(DtsError::parse(
            hline,
            format!("header declares scope {scope}, blocks reach {actual}"),
        ));
    }
    Ok(rows)
}

pub fn parse_text(text: &str) -> Result<TriangleSet> {
    TriangleSet::from_raw(&parse_text_raw(text)?)
}

/// JSON document for tooling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DtsDocument {
    pub n: usize,
    pub k: usize,
    pub scope: u32,
    pub blocks: Vec<Vec<u32>>,
    pub algorithm: Option<String>,
    pub seed: Option<u64>,
}

impl DtsDocument {
    pub fn new(set: &TriangleSet, algorithm: Option<&str>, seed: Option<u64>) -> Self {
        DtsDocument {
            n: set.n(),
            k: set.k(),
            scope: set.scope(),
            blocks: set.rows(),
            algorithm: algorithm.map(str::to_owned),
            seed,
        }
    }

    /// Verify and check the declared shape against the blocks.
    pub fn to_set(&self) -> Result<TriangleSet> {
        let set = TriangleSet::new(self.blocks.clone())?;
        if (set.n(), set.k(), set.scope()) != (self.n, self.k, self.scope) {
            return Err(DtsError::parse(
                1,
                format!(
                    "declared (n, k, scope) = ({}, {}, {}) but blocks give ({}, {}, {})",
                    self.n,
                    self.k,
                    self.scope,
                    set.n(),
                    set.k(),
                    set.scope()
                ),
            ));
        }
        Ok(set)
    }
}

pub fn emit_json(set: &TriangleSet, algorithm: Option<&str>, seed: Option<u64>) -> String {
    let mut s = serde_json::to_string_pretty(&DtsDocument::new(set, algorithm, seed))
        .expect("document serializes");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<DtsDocument> {
    serde_json::from_str(text).map_err(|e| DtsError::parse(e.line(), e.to_string()))
}

pub fn emit_packing_text(packing: &Packing) -> String {
    let mut out = format!("{} {} {}\n", packing.modulus(), packing.n(), packing.k());
    for block in packing.blocks() {
        push_row(&mut out, block.iter());
    }
    out
}

pub fn parse_packing_text(text: &str) -> Result<Packing> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (hline, [v, n, k]) = header(lines.next())?;
    let mut blocks = Vec::new();
    for (idx, line) in lines {
        let row = parse_ints(line, idx + 1)?;
        if row.len() as u64 != k || row.iter().any(|&r| r < 0) {
            return Err(DtsError::parse(
                idx + 1,
                format!("expected {k} non-negative residues"),
            ));
        }
        blocks.push(row.into_iter().map(|r| r as u64).collect());
    }
    if blocks.len() as u64 != n {
        return Err(DtsError::parse(
            hline,
            format!("header declares {n} blocks, file has {}", blocks.len()),
        ));
    }
    Packing::new(v, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness() -> TriangleSet {
        TriangleSet::new(vec![
            vec![0, 1, 4, 24, 40, 54, 67, 69],
            vec![0, 6, 11, 18, 28, 37, 62, 70],
        ])
        .unwrap()
    }

    #[test]
    fn text_layout_is_exact() {
        let t = TriangleSet::new(vec![vec![0, 1, 4], vec![0, 2, 7]]).unwrap();
        assert_eq!(emit_text(&t), "2 2 7\n0 1 4\n0 2 7\n");
    }

    #[test]
    fn text_round_trip() {
        let t = witness();
        assert_eq!(parse_text(&emit_text(&t)).unwrap(), t);
    }

    #[test]
    fn json_round_trip_keeps_provenance() {
        let t = witness();
        let doc = parse_json(&emit_json(&t, Some("search"), Some(7))).unwrap();
        assert_eq!(doc.algorithm.as_deref(), Some("search"));
        assert_eq!(doc.seed, Some(7));
        assert_eq!(doc.to_set().unwrap(), t);
    }

    #[test]
    fn header_mismatches_are_parse_errors() {
        assert!(matches!(
            parse_text("2 2 7\n0 1 4\n"),
            Err(DtsError::Parse { .. })
        ));
        assert!(matches!(
            parse_text("1 2 9\n0 1 4\n"),
            Err(DtsError::Parse { .. })
        ));
        assert!(matches!(
            parse_text("1 2 4\n0 1 x\n"),
            Err(DtsError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn collisions_surface_as_invalid_sets() {
        assert!(matches!(
            parse_text("2 2 5\n0 1 3\n0 2 5\n"),
            Err(DtsError::InvalidSet(_))
        ));
    }

    #[test]
    fn packing_text_round_trip() {
        let p = Packing::new(21, vec![vec![0, 1, 3], vec![0, 8, 17], vec![0, 10, 15]]).unwrap();
        let text = emit_packing_text(&p);
        assert_eq!(text, "21 3 3\n0 1 3\n0 8 17\n0 10 15\n");
        assert_eq!(parse_packing_text(&text).unwrap(), p);
    }
}
