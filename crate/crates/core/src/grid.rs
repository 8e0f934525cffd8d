//! The `n x (k + 1)` array representation of a partial triangle set.
//!
//! Column 0 holds the fixed zeros. Any other cell may be empty; filled
//! cells increase strictly along a row (across gaps), and all in-row
//! differences between filled cells are globally distinct. Prefix-filled
//! grids are the classical partial sets; arbitrary gaps arise when the
//! heuristics empty interior cells.

use std::fmt;

use thiserror::Error;

use crate::dts::TriangleSet;
use crate::ledger::{DiffLedger, LedgerError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("cell ({row}, {col}) is outside a {rows} x {cols} grid")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("column 0 holds the fixed zeros and cannot change")]
    FixedColumn,
    #[error("cell ({row}, {col}) is already filled")]
    Occupied { row: usize, col: usize },
    #[error("cell ({row}, {col}) is empty")]
    Vacant { row: usize, col: usize },
    #[error("value {value} breaks row order at ({row}, {col})")]
    Order { row: usize, col: usize, value: u32 },
    #[error(transparent)]
    Difference(#[from] LedgerError),
}

#[derive(Debug, Clone)]
pub struct CellGrid {
    rows: usize,
    cols: usize,
    cells: Vec<Option<u32>>,
    ledger: DiffLedger,
}

impl PartialEq for CellGrid {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.cells == other.cells
    }
}

impl Eq for CellGrid {}

impl CellGrid {
    /// `R(n, k)`: zeros in column 0, everything else empty.
    pub fn new(n: usize, k: usize) -> Self {
        let cols = k + 1;
        let mut cells = vec![None; n * cols];
        for r in 0..n {
            cells[r * cols] = Some(0);
        }
        CellGrid {
            rows: n,
            cols,
            cells,
            ledger: DiffLedger::with_capacity(64),
        }
    }

    pub fn from_set(set: &TriangleSet) -> Self {
        let mut grid = CellGrid::new(set.n(), set.k());
        grid.ledger.grow(set.scope());
        for (r, block) in set.blocks().iter().enumerate() {
            for (c, &v) in block.elements().iter().enumerate().skip(1) {
                grid.place(r, c, v).expect("a verified set fills its grid");
            }
        }
        grid
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Order of the represented set, `cols - 1`.
    pub fn k(&self) -> usize {
        self.cols - 1
    }

    pub fn get(&self, row: usize, col: usize) -> Option<u32> {
        self.cells[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Option<u32>] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn ledger(&self) -> &DiffLedger {
        &self.ledger
    }

    pub fn check_cell(&self, row: usize, col: usize) -> Result<(), GridError> {
        if row >= self.rows || col >= self.cols {
            return Err(GridError::OutOfBounds {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        if col == 0 {
            return Err(GridError::FixedColumn);
        }
        Ok(())
    }

    /// Open interval `(lo, hi)` a value in an empty cell must fall in, from
    /// the nearest filled cells on either side. `hi` is `None` when nothing
    /// to the right is filled.
    pub fn neighbours(&self, row: usize, col: usize) -> (u32, Option<u32>) {
        let r = self.row(row);
        let lo = r[..col].iter().rev().find_map(|c| *c).unwrap_or(0);
        let hi = r[col + 1..].iter().find_map(|c| *c);
        (lo, hi)
    }

    fn row_diffs(&self, row: usize, col: usize, value: u32) -> Vec<u32> {
        self.row(row)
            .iter()
            .enumerate()
            .filter(|&(c, _)| c != col)
            .filter_map(|(_, cell)| cell.map(|x| x.abs_diff(value)))
            .collect()
    }

    /// Whether `value` may go into the empty cell `(row, col)`.
    pub fn can_place(&self, row: usize, col: usize, value: u32) -> bool {
        if self.get(row, col).is_some() {
            return false;
        }
        let (lo, hi) = self.neighbours(row, col);
        if value <= lo || hi.is_some_and(|h| value >= h) {
            return false;
        }
        let fresh = self.row(row).iter().enumerate().all(|(c, cell)| {
            c == col || cell.is_none_or(|x| !self.ledger.contains(x.abs_diff(value)))
        });
        if !fresh {
            return false;
        }
        // v - a == b - v when v sits midway between two filled cells
        let row_cells = self.row(row);
        let left = row_cells[..col].iter().flatten();
        !left.clone().any(|&a| {
            let mirror = 2 * value as u64 - a as u64;
            row_cells[col + 1..]
                .iter()
                .flatten()
                .any(|&b| b as u64 == mirror)
        })
    }

    pub fn place(&mut self, row: usize, col: usize, value: u32) -> Result<(), GridError> {
        self.check_cell(row, col)?;
        if self.get(row, col).is_some() {
            return Err(GridError::Occupied { row, col });
        }
        let (lo, hi) = self.neighbours(row, col);
        if value <= lo || hi.is_some_and(|h| value >= h) {
            return Err(GridError::Order { row, col, value });
        }
        self.ledger.grow(value);
        let diffs = self.row_diffs(row, col, value);
        self.ledger.insert_all(&diffs)?;
        self.cells[row * self.cols + col] = Some(value);
        Ok(())
    }

    /// Empty a cell, releasing its differences. Returns the old value.
    pub fn clear(&mut self, row: usize, col: usize) -> Result<u32, GridError> {
        self.check_cell(row, col)?;
        let value = self.get(row, col).ok_or(GridError::Vacant { row, col })?;
        let diffs = self.row_diffs(row, col, value);
        self.ledger.remove_all(&diffs)?;
        self.cells[row * self.cols + col] = None;
        Ok(value)
    }

    pub fn empty_cells(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|r| (1..self.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| self.get(r, c).is_none())
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// Largest filled entry.
    pub fn scope(&self) -> u32 {
        self.cells.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Verified triangle set; `None` while cells are empty.
    pub fn to_triangle_set(&self) -> Option<TriangleSet> {
        if !self.is_complete() {
            return None;
        }
        let rows = (0..self.rows)
            .map(|r| self.row(r).iter().map(|c| c.expect("complete")).collect())
            .collect();
        Some(TriangleSet::new(rows).expect("grid invariants imply validity"))
    }

    /// Recheck every invariant from scratch, ignoring the ledger.
    pub fn is_consistent(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for r in 0..self.rows {
            let filled: Vec<u32> = self.row(r).iter().flatten().copied().collect();
            if self.get(r, 0) != Some(0) || filled.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for (i, &a) in filled.iter().enumerate() {
                for &b in &filled[i + 1..] {
                    if !seen.insert(b - a) {
                        return false;
                    }
                }
            }
        }
        seen.len() == self.ledger.len() && seen.iter().all(|&d| self.ledger.contains(d))
    }
}

impl fmt::Display for CellGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self
                .row(r)
                .iter()
                .map(|c| c.map_or_else(|| "_".to_string(), |v| v.to_string()))
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CellGrid {
        CellGrid::from_set(&TriangleSet::new(vec![vec![0, 1, 4], vec![0, 2, 7]]).unwrap())
    }

    #[test]
    fn empty_representation() {
        let g = CellGrid::new(3, 2);
        assert_eq!(g.empty_cells().len(), 6);
        assert!(g.is_consistent());
        assert_eq!(g.scope(), 0);
    }

    #[test]
    fn clear_releases_differences() {
        let mut g = sample();
        assert_eq!(g.clear(0, 2).unwrap(), 4);
        assert!(!g.ledger().contains(4));
        assert!(!g.ledger().contains(3));
        assert!(g.ledger().contains(1));
        assert!(g.is_consistent());
        assert!(g.can_place(0, 2, 4));
        assert!(!g.can_place(0, 2, 3)); // difference 2 is taken by row 1
    }

    #[test]
    fn rejects_bad_placements() {
        let mut g = sample();
        assert_eq!(g.clear(1, 1).unwrap(), 2);
        assert!(matches!(g.place(1, 1, 7), Err(GridError::Order { .. })));
        assert!(matches!(g.place(1, 1, 3), Err(GridError::Difference(_))));
        assert!(matches!(g.place(1, 0, 1), Err(GridError::FixedColumn)));
        assert!(matches!(
            g.place(2, 1, 1),
            Err(GridError::OutOfBounds { .. })
        ));
        assert!(matches!(g.place(0, 1, 2), Err(GridError::Occupied { .. })));
        assert!(matches!(g.clear(1, 1), Err(GridError::Vacant { .. })));
        assert!(g.is_consistent());
    }

    #[test]
    fn midpoint_value_repeats_a_difference() {
        let mut g = CellGrid::from_set(&TriangleSet::new(vec![vec![0, 3, 8]]).unwrap());
        g.clear(0, 1).unwrap();
        // 4 would give differences 4 and 4
        assert!(!g.can_place(0, 1, 4));
        assert!(g.place(0, 1, 4).is_err());
        assert!(g.can_place(0, 1, 3));
        assert!(g.is_consistent());
    }

    #[test]
    fn interior_gap_ordering() {
        let mut g = sample();
        g.clear(1, 1).unwrap();
        assert_eq!(g.neighbours(1, 1), (0, Some(7)));
        g.clear(1, 2).unwrap();
        assert_eq!(g.neighbours(1, 1), (0, None));
    }
}
