//! Cyclic difference packings and their conversion to triangle sets.
//!
//! An `n`-DP`(v, k)` is `n` blocks of `k` residues modulo `v` whose ordered
//! in-block differences `a - b (mod v)`, `a != b`, are pairwise distinct and
//! nonzero. Cutting each block at its widest cyclic gap turns it into an
//! `(n, k - 1)` triangle set of scope at most `v - 1`.

use std::fmt;

use crate::dts::TriangleSet;
use crate::error::{DtsError, Result};

/// Residue position `(block, index)` inside a packing.
pub type Slot = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PackingVerdict {
    Valid,
    /// Two ordered pairs `(a, b)` giving the same `a - b (mod v)`.
    Collision {
        difference: u64,
        first: (Slot, Slot),
        second: (Slot, Slot),
    },
    Malformed(String),
}

impl PackingVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, PackingVerdict::Valid)
    }
}

impl fmt::Display for PackingVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PackingVerdict::Valid => write!(f, "valid"),
            PackingVerdict::Collision {
                difference,
                first,
                second,
            } => write!(
                f,
                "collision: difference {difference} from {:?}-{:?} repeats at {:?}-{:?}",
                first.0, first.1, second.0, second.1
            ),
            PackingVerdict::Malformed(m) => write!(f, "malformed: {m}"),
        }
    }
}

/// Check candidate residues against modulus `v`.
pub fn verify_packing(modulus: u64, blocks: &[Vec<u64>]) -> PackingVerdict {
    if modulus == 0 {
        return PackingVerdict::Malformed("modulus must be positive".into());
    }
    if blocks.is_empty() {
        return PackingVerdict::Malformed("no blocks".into());
    }
    let width = blocks[0].len();
    for (b, block) in blocks.iter().enumerate() {
        if block.len() != width {
            return PackingVerdict::Malformed(format!(
                "block {b} has {} residues, expected {width}",
                block.len()
            ));
        }
        if let Some(idx) = block.iter().position(|&r| r >= modulus) {
            return PackingVerdict::Malformed(format!(
                "block {b} residue {} is outside [0, {modulus})",
                block[idx]
            ));
        }
        let mut sorted = block.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return PackingVerdict::Malformed(format!("block {b} repeats residue {}", w[0]));
        }
    }
    // Dense table for realistic moduli, hash map beyond that.
    let mut seen: Vec<Option<(Slot, Slot)>> = if modulus <= 1 << 26 {
        vec![None; modulus as usize]
    } else {
        Vec::new()
    };
    let mut sparse = std::collections::HashMap::new();
    for (b, block) in blocks.iter().enumerate() {
        for (i, &a) in block.iter().enumerate() {
            for (j, &c) in block.iter().enumerate() {
                if i == j {
                    continue;
                }
                let d = (a + modulus - c) % modulus;
                let here = ((b, i), (b, j));
                let prev = if seen.is_empty() {
                    sparse.insert(d, here)
                } else {
                    seen[d as usize].replace(here)
                };
                if let Some(first) = prev {
                    return PackingVerdict::Collision {
                        difference: d,
                        first,
                        second: here,
                    };
                }
            }
        }
    }
    PackingVerdict::Valid
}

/// A verified difference packing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    modulus: u64,
    blocks: Vec<Vec<u64>>,
}

impl Packing {
    pub fn new(modulus: u64, blocks: Vec<Vec<u64>>) -> Result<Self> {
        match verify_packing(modulus, &blocks) {
            PackingVerdict::Valid => Ok(Packing { modulus, blocks }),
            other => Err(DtsError::InvalidPacking(other)),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    /// Residues per block.
    pub fn k(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn verify(&self) -> PackingVerdict {
        verify_packing(self.modulus, &self.blocks)
    }

    /// Convert to an `(n, k - 1)` triangle set of scope at most `v - 1`.
    pub fn to_triangle_set(&self) -> Result<TriangleSet> {
        packing_to_triangle_set(self)
    }
}

/// Rotate a residue block so its span is minimal, then translate to 0.
///
/// The span after cutting the cycle at gap `g` is `v - g`, so the cut goes at
/// the widest gap (first one in sorted order on ties).
pub fn unroll_block(modulus: u64, residues: &[u64]) -> Vec<u64> {
    let mut sorted = residues.to_vec();
    sorted.sort_unstable();
    let len = sorted.len();
    if len <= 1 {
        return vec![0; len];
    }
    let mut best_start = 0;
    let mut best_gap = 0;
    for i in 0..len {
        let next = if i + 1 < len {
            sorted[i + 1]
        } else {
            sorted[0] + modulus
        };
        let gap = next - sorted[i];
        if gap > best_gap {
            best_gap = gap;
            best_start = (i + 1) % len;
        }
    }
    let origin = sorted[best_start];
    let mut out: Vec<u64> = sorted
        .iter()
        .map(|&r| (r + modulus - origin) % modulus)
        .collect();
    out.sort_unstable();
    out
}

pub fn packing_to_triangle_set(packing: &Packing) -> Result<TriangleSet> {
    let verdict = packing.verify();
    if !verdict.is_valid() {
        return Err(DtsError::InvalidPacking(verdict));
    }
    let v = packing.modulus;
    let rows = packing
        .blocks
        .iter()
        .map(|b| {
            unroll_block(v, b)
                .into_iter()
                .map(|x| {
                    u32::try_from(x).map_err(|_| DtsError::Arithmetic(format!("{x} exceeds u32")))
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let set = TriangleSet::new(rows)?;
    if u64::from(set.scope()) > v - 1 {
        return Err(DtsError::Arithmetic(format!(
            "converted scope {} exceeds v - 1 = {}",
            set.scope(),
            v - 1
        )));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every ordered difference, straight from the definition.
    fn brute_force_valid(v: u64, blocks: &[Vec<u64>]) -> bool {
        let mut diffs = Vec::new();
        for b in blocks {
            for (i, &x) in b.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    if i != j {
                        diffs.push((x + v - y) % v);
                    }
                }
            }
        }
        let mut sorted = diffs.clone();
        sorted.sort();
        sorted.dedup();
        sorted.len() == diffs.len() && !diffs.contains(&0)
    }

    #[test]
    fn fano_line_is_a_packing() {
        let blocks = vec![vec![0, 1, 3]];
        assert!(brute_force_valid(7, &blocks));
        assert_eq!(verify_packing(7, &blocks), PackingVerdict::Valid);
    }

    #[test]
    fn three_block_packing_mod_21() {
        let blocks = vec![vec![0, 1, 3], vec![0, 8, 17], vec![0, 10, 15]];
        assert!(brute_force_valid(21, &blocks));
        assert!(verify_packing(21, &blocks).is_valid());
    }

    #[test]
    fn colliding_packing_is_rejected() {
        let blocks = vec![vec![0, 1, 3], vec![0, 2, 6]];
        assert!(!brute_force_valid(7, &blocks));
        assert!(matches!(
            verify_packing(7, &blocks),
            PackingVerdict::Collision { .. }
        ));
    }

    #[test]
    fn out_of_range_residue_is_malformed() {
        assert!(matches!(
            verify_packing(7, &[vec![0, 1, 7]]),
            PackingVerdict::Malformed(_)
        ));
        assert!(matches!(
            verify_packing(7, &[vec![0, 1, 1]]),
            PackingVerdict::Malformed(_)
        ));
    }

    #[test]
    fn unroll_cuts_at_widest_gap() {
        assert_eq!(unroll_block(21, &[0, 8, 17]), vec![0, 4, 12]);
        assert_eq!(unroll_block(21, &[0, 10, 15]), vec![0, 5, 11]);
        assert_eq!(unroll_block(7, &[0, 1, 3]), vec![0, 1, 3]);
        assert_eq!(unroll_block(3, &[0, 1]), vec![0, 1]);
    }

    #[test]
    fn conversions_respect_lemma_bound() {
        let p = Packing::new(21, vec![vec![0, 1, 3], vec![0, 8, 17], vec![0, 10, 15]]).unwrap();
        let t = p.to_triangle_set().unwrap();
        assert_eq!((t.n(), t.k()), (3, 2));
        assert!(t.scope() <= 20);
        assert_eq!(
            t.rows(),
            vec![vec![0, 1, 3], vec![0, 4, 12], vec![0, 5, 11]]
        );

        let t = Packing::new(7, vec![vec![0, 1, 3]])
            .unwrap()
            .to_triangle_set()
            .unwrap();
        assert_eq!(t.rows(), vec![vec![0, 1, 3]]);
        let t = Packing::new(3, vec![vec![0, 1]])
            .unwrap()
            .to_triangle_set()
            .unwrap();
        assert_eq!(t.rows(), vec![vec![0, 1]]);
        assert_eq!(t.scope(), 1);
    }
}
