//! Blocks, difference triangle sets and the universal verifier.
//!
//! An `(n, k)` difference triangle set is a list of `n` blocks, each a
//! strictly increasing run of `k + 1` integers starting at zero, such that
//! every positive in-block difference occurs exactly once across the whole
//! set. Its *scope* is the largest entry.
//!
//! [`verify_triangle_set`] accepts arbitrary candidate data and is the one
//! oracle every constructor in the crate is checked against.

use std::collections::HashMap;
use std::fmt;

use crate::error::{DtsError, Result};

/// One normalized block: `0 = a_0 < a_1 < ... < a_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(Vec<u32>);

impl Block {
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if elements.first() != Some(&0) {
            return Err(DtsError::precondition("a block must start at 0"));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DtsError::precondition(
                "a block must be strictly increasing",
            ));
        }
        Ok(Block(elements))
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    /// Number of elements, `k + 1`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> u32 {
        *self.0.last().expect("blocks are non-empty")
    }

    pub fn positive_differences(&self) -> Vec<u32> {
        positive_differences(&self.0)
    }

    /// The block read backwards: `a_j -> a_k - a_{k-j}`. Same differences.
    pub fn reflected(&self) -> Block {
        let top = self.max();
        Block(self.0.iter().rev().map(|&a| top - a).collect())
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// All `a_j - a_j'` with `j > j'`, duplicates preserved, in pair-lex order
/// `(j', j)`.
pub fn positive_differences(block: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(block.len() * block.len().saturating_sub(1) / 2);
    for (lo, &a) in block.iter().enumerate() {
        for &b in &block[lo + 1..] {
            out.push(b.abs_diff(a));
        }
    }
    out
}

/// Cells `(block, low, high)` whose entries produce one difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CellPair {
    pub block: usize,
    pub low: usize,
    pub high: usize,
}

impl fmt::Display for CellPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "block {} cells ({}, {})",
            self.block, self.low, self.high
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Malformation {
    NoBlocks,
    EmptyBlock {
        block: usize,
    },
    NonZeroStart {
        block: usize,
        value: i64,
    },
    Negative {
        block: usize,
        index: usize,
        value: i64,
    },
    TooLarge {
        block: usize,
        index: usize,
        value: i64,
    },
    NotIncreasing {
        block: usize,
        index: usize,
    },
    LengthMismatch {
        block: usize,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Malformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Malformation::NoBlocks => write!(f, "no blocks"),
            Malformation::EmptyBlock { block } => write!(f, "block {block} is empty"),
            Malformation::NonZeroStart { block, value } => {
                write!(f, "block {block} starts at {value}, not 0")
            }
            Malformation::Negative {
                block,
                index,
                value,
            } => {
                write!(f, "block {block} entry {index} is negative ({value})")
            }
            Malformation::TooLarge {
                block,
                index,
                value,
            } => {
                write!(f, "block {block} entry {index} is too large ({value})")
            }
            Malformation::NotIncreasing { block, index } => {
                write!(
                    f,
                    "block {block} is not strictly increasing at entry {index}"
                )
            }
            Malformation::LengthMismatch {
                block,
                expected,
                found,
            } => write!(f, "block {block} has {found} entries, expected {expected}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid {
        scope: u32,
    },
    /// The first repeated difference met in block-major, pair-lex order.
    Collision {
        difference: u32,
        first: CellPair,
        second: CellPair,
    },
    Malformed(Malformation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid { scope } => write!(f, "valid, scope {scope}"),
            Verdict::Collision {
                difference,
                first,
                second,
            } => write!(
                f,
                "collision: difference {difference} from {first} repeats at {second}"
            ),
            Verdict::Malformed(m) => write!(f, "malformed: {m}"),
        }
    }
}

/// Check arbitrary candidate data for the difference triangle set property.
pub fn verify_triangle_set(blocks: &[Vec<i64>]) -> Verdict {
    if blocks.is_empty() {
        return Verdict::Malformed(Malformation::NoBlocks);
    }
    let width = blocks[0].len();
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(blocks.len());
    for (b, row) in blocks.iter().enumerate() {
        if row.is_empty() {
            return Verdict::Malformed(Malformation::EmptyBlock { block: b });
        }
        if row.len() != width {
            return Verdict::Malformed(Malformation::LengthMismatch {
                block: b,
                expected: width,
                found: row.len(),
            });
        }
        for (index, &value) in row.iter().enumerate() {
            if value < 0 {
                return Verdict::Malformed(Malformation::Negative {
                    block: b,
                    index,
                    value,
                });
            }
            if value > u32::MAX as i64 {
                return Verdict::Malformed(Malformation::TooLarge {
                    block: b,
                    index,
                    value,
                });
            }
        }
        if row[0] != 0 {
            return Verdict::Malformed(Malformation::NonZeroStart {
                block: b,
                value: row[0],
            });
        }
        if let Some(index) = row.windows(2).position(|w| w[0] >= w[1]) {
            return Verdict::Malformed(Malformation::NotIncreasing {
                block: b,
                index: index + 1,
            });
        }
        rows.push(row.iter().map(|&v| v as u32).collect());
    }
    verify_normalized(&rows)
}

/// Verifier for rows already known to be normalized `u32` data.
pub(crate) fn verify_normalized(rows: &[Vec<u32>]) -> Verdict {
    let total: usize = rows.iter().map(|r| r.len() * (r.len() - 1) / 2).sum();
    let mut seen: HashMap<u32, CellPair> = HashMap::with_capacity(total);
    let mut scope = 0;
    for (b, row) in rows.iter().enumerate() {
        scope = scope.max(*row.last().expect("non-empty row"));
        for low in 0..row.len() {
            for high in low + 1..row.len() {
                let here = CellPair {
                    block: b,
                    low,
                    high,
                };
                let d = row[high] - row[low];
                if let Some(&first) = seen.get(&d) {
                    return Verdict::Collision {
                        difference: d,
                        first,
                        second: here,
                    };
                }
                seen.insert(d, here);
            }
        }
    }
    Verdict::Valid { scope }
}

/// A verified, normalized `(n, k)` difference triangle set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriangleSet {
    blocks: Vec<Block>,
    scope: u32,
}

impl TriangleSet {
    /// Build from rows, running the full verifier.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let raw: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| v as i64).collect())
            .collect();
        match verify_triangle_set(&raw) {
            Verdict::Valid { scope } => Ok(TriangleSet {
                blocks: rows.into_iter().map(Block).collect(),
                scope,
            }),
            other => Err(DtsError::InvalidSet(other)),
        }
    }

    pub fn from_raw(rows: &[Vec<i64>]) -> Result<Self> {
        match verify_triangle_set(rows) {
            Verdict::Valid { scope } => Ok(TriangleSet {
                blocks: rows
                    .iter()
                    .map(|r| Block(r.iter().map(|&v| v as u32).collect()))
                    .collect(),
                scope,
            }),
            other => Err(DtsError::InvalidSet(other)),
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.blocks.iter().map(|b| b.0.clone()).collect()
    }

    pub fn to_raw(&self) -> Vec<Vec<i64>> {
        self.blocks
            .iter()
            .map(|b| b.0.iter().map(|&v| v as i64).collect())
            .collect()
    }

    /// Number of blocks.
    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    /// Order: every block has `k + 1` elements.
    pub fn k(&self) -> usize {
        self.blocks[0].len() - 1
    }

    pub fn scope(&self) -> u32 {
        self.scope
    }

    /// Re-run the verifier. Always valid for values built through this API.
    pub fn verify(&self) -> Verdict {
        verify_normalized(&self.rows())
    }

    /// Drop the block holding the global maximum (lowest index on ties).
    pub fn reduce(&self) -> Result<TriangleSet> {
        if self.n() < 2 {
            return Err(DtsError::precondition(
                "reduction needs at least two blocks",
            ));
        }
        let drop = self
            .blocks
            .iter()
            .position(|b| b.max() == self.scope)
            .expect("scope is attained");
        let rows = self
            .blocks
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, b)| b.0.clone())
            .collect();
        TriangleSet::new(rows)
    }

    /// Drop the largest element of every block.
    pub fn shorten(&self) -> Result<TriangleSet> {
        if self.k() < 1 {
            return Err(DtsError::precondition("shortening needs k >= 1"));
        }
        let rows = self
            .blocks
            .iter()
            .map(|b| b.0[..b.0.len() - 1].to_vec())
            .collect();
        TriangleSet::new(rows)
    }
}

impl fmt::Display for TriangleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}
