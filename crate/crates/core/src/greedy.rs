//! Set-greedy and transversal-greedy constructions.
//!
//! Both start from `R(n, k)` and repeatedly put the smallest admissible
//! positive integer into one empty cell. They differ only in which cell:
//! set-greedy finishes a row before moving on, transversal-greedy finishes
//! a column.

use crate::dts::TriangleSet;
use crate::grid::CellGrid;

/// Smallest value admissible in the empty cell `(row, col)`.
///
/// `v - lo` must be a free difference, so candidates jump from one free
/// difference to the next. A value larger than every difference in use
/// always fits, so the scan terminates.
fn smallest_fit(grid: &CellGrid, row: usize, col: usize) -> u32 {
    let (lo, _) = grid.neighbours(row, col);
    let mut d = grid.ledger().next_free(1);
    loop {
        if grid.can_place(row, col, lo + d) {
            return lo + d;
        }
        d = grid.ledger().next_free(d + 1);
    }
}

fn fill(n: usize, k: usize, order: impl Iterator<Item = (usize, usize)>) -> TriangleSet {
    let mut grid = CellGrid::new(n, k);
    for (row, col) in order {
        let v = smallest_fit(&grid, row, col);
        grid.place(row, col, v)
            .expect("smallest_fit returns an admissible value");
    }
    grid.to_triangle_set().expect("every cell was visited")
}

/// Row-by-row greedy fill. Panics if `n` or `k` is zero.
pub fn set_greedy(n: usize, k: usize) -> TriangleSet {
    assert!(n >= 1 && k >= 1, "set_greedy needs n, k >= 1");
    fill(n, k, (0..n).flat_map(|r| (1..=k).map(move |c| (r, c))))
}

/// Column-by-column greedy fill. Panics if `n` or `k` is zero.
pub fn transversal_greedy(n: usize, k: usize) -> TriangleSet {
    assert!(n >= 1 && k >= 1, "transversal_greedy needs n, k >= 1");
    fill(n, k, (1..=k).flat_map(|c| (0..n).map(move |r| (r, c))))
}
