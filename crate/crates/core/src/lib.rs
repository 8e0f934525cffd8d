//! Difference triangle sets: construction, improvement, verification and
//! exhaustive search.
//!
//! An `(n, k)` difference triangle set is a list of `n` blocks
//! `0 = a_0 < a_1 < ... < a_k` whose positive in-block differences are all
//! distinct. The *scope* is the largest entry, and `m(n, k)` the smallest
//! scope possible. The crate provides
//!
//! * the [verifier](dts::verify_triangle_set) every other module is tested
//!   against, plus reduction, shortening and [lower bounds](bounds);
//! * [algebraic] constructions from Singer difference sets;
//! * the [greedy] fills and the [Wythoff](wythoff) analysis of their
//!   second column;
//! * randomized delete-and-refill [heuristics];
//! * exhaustive [search] with canonical-form symmetry breaking and sharding.
//!
//! ```
//! use dts::greedy::transversal_greedy;
//!
//! let set = transversal_greedy(2, 2);
//! assert_eq!(set.rows(), vec![vec![0, 1, 4], vec![0, 2, 7]]);
//! assert!(set.verify().is_valid());
//! ```
//!
//! A guide with longer walkthroughs lives in the repository's `book/`
//! directory; its code samples run as doctests of this crate.

pub mod algebraic;
pub mod bounds;
pub mod dts;
pub mod error;
pub mod format;
pub mod greedy;
pub mod grid;
pub mod heuristics;
pub mod ledger;
pub mod packing;
pub mod search;
pub mod wythoff;

pub use crate::bounds::{best_lower_bound, BoundsReport};
pub use crate::dts::{positive_differences, verify_triangle_set, Block, TriangleSet, Verdict};
pub use crate::error::{DtsError, Result};
pub use crate::grid::CellGrid;
pub use crate::ledger::DiffLedger;
pub use crate::packing::{verify_packing, Packing, PackingVerdict};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/triangle-sets.md")]
    mod triangle_sets {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/greedy.md")]
    mod greedy {}
    #[doc = include_str!("../../../book/src/algebraic.md")]
    mod algebraic {}
    #[doc = include_str!("../../../book/src/heuristics.md")]
    mod heuristics {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
