//! Wythoff's game and the column-2 structure of transversal-greedy.
//!
//! Positions are pairs `(u, v)`, `u <= v`, of pile sizes left after a move.
//! The positions safe to leave are `(0, 0)` and the pairs `(u_i, u_i + i)`
//! where `u_i` is the least positive integer not yet used by an earlier
//! pair; Connell's closed form is `u_i = floor(i (1 + sqrt 5) / 2)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::greedy::transversal_greedy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WythoffPair {
    pub index: u64,
    pub u: u64,
    pub v: u64,
}

/// First `count` pairs via the mex recursion.
pub fn wythoff_pairs(count: usize) -> Vec<WythoffPair> {
    let mut used = vec![false; 3 * count + 3];
    let mut out = Vec::with_capacity(count);
    let mut u = 1usize;
    for i in 1..=count {
        while used[u] {
            u += 1;
        }
        let v = u + i;
        used[u] = true;
        used[v] = true;
        out.push(WythoffPair {
            index: i as u64,
            u: u as u64,
            v: v as u64,
        });
    }
    out
}

/// `(floor(i phi), floor(i phi) + i)` in integer arithmetic.
///
/// With `s = isqrt(5 i^2)` we have `s < i sqrt 5 < s + 1` for `i > 0`, so
/// `floor((i + i sqrt 5) / 2) = (i + s) / 2` rounded down.
pub fn wythoff_connell(i: u64) -> WythoffPair {
    let s = (5 * i as u128 * i as u128).isqrt() as u64;
    let u = (i + s) / 2;
    WythoffPair {
        index: i,
        u,
        v: u + i,
    }
}

/// All positions `(u, v)` with `u <= v <= r_max` from which the player to
/// move loses, found by a sweep over the game graph.
///
/// A position is a loss for the mover iff no move reaches another such
/// position. Moves shrink one pile or both equally, so sweeping piles in
/// increasing order visits every successor first; a position has a losing
/// successor iff one was already recorded in its row, column or diagonal.
pub fn wythoff_winning_positions_bruteforce(r_max: usize) -> BTreeSet<(u64, u64)> {
    let size = r_max + 1;
    let mut row_has = vec![false; size];
    let mut col_has = vec![false; size];
    let mut diag_has = vec![false; 2 * size];
    let mut safe = BTreeSet::new();
    for x in 0..size {
        for y in 0..size {
            let diag = y + size - x;
            if row_has[x] || col_has[y] || diag_has[diag] {
                continue;
            }
            row_has[x] = true;
            col_has[y] = true;
            diag_has[diag] = true;
            if x <= y {
                safe.insert((x as u64, y as u64));
            }
        }
    }
    safe
}

/// Outcome of checking `r_{i2} - n - i = u_i` on a transversal-greedy grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnTwoCheck {
    Pass,
    /// First row (1-based) where the identity fails.
    Mismatch {
        row: u64,
        entry: u64,
        expected_u: u64,
    },
}

impl ColumnTwoCheck {
    pub fn passed(&self) -> bool {
        matches!(self, ColumnTwoCheck::Pass)
    }
}

/// Run transversal-greedy for `(n, 2)` and compare its second column with
/// the Wythoff recursion.
pub fn theorem6_check(n: usize) -> ColumnTwoCheck {
    let set = transversal_greedy(n, 2);
    let pairs = wythoff_pairs(n);
    for (block, pair) in set.blocks().iter().zip(&pairs) {
        let i = pair.index;
        let entry = u64::from(block.elements()[2]);
        if entry < n as u64 + i || entry - n as u64 - i != pair.u {
            return ColumnTwoCheck::Mismatch {
                row: i,
                entry,
                expected_u: pair.u,
            };
        }
    }
    ColumnTwoCheck::Pass
}

/// `2n + floor(n phi)`, the scope transversal-greedy reaches for `k = 2`.
pub fn transversal_greedy_k2_scope(n: u64) -> u64 {
    2 * n + wythoff_connell(n).u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(index: u64, u: u64, v: u64) -> WythoffPair {
        WythoffPair { index, u, v }
    }

    #[test]
    fn recursion_prefix() {
        assert_eq!(wythoff_pairs(1), vec![pair(1, 1, 2)]);
        assert_eq!(
            wythoff_pairs(3),
            vec![pair(1, 1, 2), pair(2, 3, 5), pair(3, 4, 7)]
        );
        assert_eq!(wythoff_pairs(5)[4], pair(5, 8, 13));
    }

    #[test]
    fn closed_form_prefix() {
        assert_eq!(wythoff_connell(1), pair(1, 1, 2));
        assert_eq!(wythoff_connell(2), pair(2, 3, 5));
        assert_eq!(wythoff_connell(3), pair(3, 4, 7));
    }

    #[test]
    fn closed_form_survives_large_indices() {
        // floor(10^9 phi) = 1618033988
        assert_eq!(wythoff_connell(1_000_000_000).u, 1_618_033_988);
    }

    #[test]
    fn game_sweep_small() {
        assert_eq!(
            wythoff_winning_positions_bruteforce(2),
            BTreeSet::from([(0, 0), (1, 2)])
        );
        assert_eq!(
            wythoff_winning_positions_bruteforce(7),
            BTreeSet::from([(0, 0), (1, 2), (3, 5), (4, 7)])
        );
        assert_eq!(
            wythoff_winning_positions_bruteforce(0),
            BTreeSet::from([(0, 0)])
        );
    }

    /// Direct minimax over every move, for cross-checking the sweep.
    fn naive_losing(r: usize) -> BTreeSet<(u64, u64)> {
        let mut lose = vec![vec![false; r + 1]; r + 1];
        for x in 0..=r {
            for y in 0..=r {
                let mut any = false;
                for t in 1..=x {
                    any |= lose[x - t][y];
                }
                for t in 1..=y {
                    any |= lose[x][y - t];
                }
                for t in 1..=x.min(y) {
                    any |= lose[x - t][y - t];
                }
                lose[x][y] = !any;
            }
        }
        let mut out = BTreeSet::new();
        for x in 0..=r {
            for y in x..=r {
                if lose[x][y] {
                    out.insert((x as u64, y as u64));
                }
            }
        }
        out
    }

    #[test]
    fn sweep_matches_minimax() {
        for r in [0, 1, 5, 20, 60] {
            assert_eq!(wythoff_winning_positions_bruteforce(r), naive_losing(r));
        }
    }

    #[test]
    fn column_two_identity_small() {
        assert!(theorem6_check(2).passed());
        assert!(theorem6_check(50).passed());
    }
}
