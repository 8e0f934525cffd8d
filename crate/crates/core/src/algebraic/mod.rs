//! Finite-field constructions: Singer difference sets, their lift to
//! multi-block packings, and the prime-selection construction that turns
//! those packings into triangle sets of scope `(1 + o(1)) n k^2`.

mod compose;
mod field;
mod prime;
mod singer;

pub use compose::{asymptotic_construct, asymptotic_ratio, cfj_composition, ConstructionRecipe};
pub use field::{CubicExtElement, CubicField, PrimeFieldElement};
pub use prime::{is_prime, next_prime_at_least};
pub use singer::{
    least_translate, singer_difference_set, singer_difference_set_with_limit, DEFAULT_MAX_Q,
};
