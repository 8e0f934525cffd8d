use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::prime::{is_prime, next_prime_at_least};
use super::singer::singer_difference_set_with_limit;
use crate::dts::TriangleSet;
use crate::error::{DtsError, Result};
use crate::packing::Packing;

/// Lift a single-block 1-DP`(v, k)` to an `n`-DP`(n v, k)` for prime
/// `n > k - 1`.
///
/// With base `d_0 < ... < d_{k-1}`, block `j` is
/// `{ d_i + v ((j i) mod n) : 0 <= i < k }` reduced mod `n v`. A difference
/// from block `j` reduces mod `v` to `d_i - d_i'`, which pins `(i, i')`; its
/// level `j (i - i') mod n` then pins `j` because `n` is prime and
/// `0 < |i - i'| < n`. The result is still run through the verifier.
pub fn cfj_composition(base: &Packing, n: u64) -> Result<Packing> {
    if base.n() != 1 {
        return Err(DtsError::precondition(
            "composition needs a single-block base",
        ));
    }
    if !base.verify().is_valid() {
        return Err(DtsError::InvalidPacking(base.verify()));
    }
    if !is_prime(n) {
        return Err(DtsError::precondition(format!("n = {n} is not prime")));
    }
    let k = base.k() as u64;
    if n < k {
        return Err(DtsError::precondition(format!(
            "n = {n} must exceed k - 1 = {}",
            k.saturating_sub(1)
        )));
    }
    let v = base.modulus();
    let big = n * v;
    let mut d = base.blocks()[0].clone();
    d.sort_unstable();
    let blocks = (0..n)
        .map(|j| {
            d.iter()
                .enumerate()
                .map(|(i, &di)| (di + v * ((j * i as u64) % n)) % big)
                .collect()
        })
        .collect();
    Packing::new(big, blocks)
}

/// Provenance of an [`asymptotic_construct`] result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRecipe {
    pub n: u64,
    pub k: u64,
    /// Number of blocks before reduction; `None` on the single-block path.
    pub p: Option<u64>,
    pub q: u64,
    pub singer_modulus: u64,
    pub packing_modulus: u64,
    pub packing_blocks: u64,
    pub packing_block_size: u64,
    pub reductions: u64,
    pub shortenings: u64,
    /// `p (q^2 + q + 1)`, or `q^2 + q + 1` when `n = 1`.
    pub scope_bound: u64,
    pub scope: u32,
}

/// Build an `(n, k)` triangle set of scope at most `p (q^2 + q + 1)`, for
/// `n > k` or `n = 1`.
pub fn asymptotic_construct(n: u64, k: u64) -> Result<(TriangleSet, ConstructionRecipe)> {
    if n == 0 || k == 0 {
        return Err(DtsError::precondition("n and k must be positive"));
    }
    if n != 1 && n <= k {
        return Err(DtsError::precondition(format!(
            "needs n > k or n = 1, got n = {n}, k = {k}"
        )));
    }
    let q = next_prime_at_least(k);
    let singer = singer_difference_set_with_limit(q, u64::MAX)?;
    let (packing, p) = if n == 1 {
        (singer.clone(), None)
    } else {
        let mut p = next_prime_at_least(n);
        while p <= q {
            p = next_prime_at_least(p + 1);
        }
        (cfj_composition(&singer, p)?, Some(p))
    };
    let mut set = packing.to_triangle_set()?;

    let mut reductions = 0;
    while set.n() as u64 > n {
        set = set.reduce()?;
        reductions += 1;
    }
    let mut shortenings = 0;
    while set.k() as u64 > k {
        set = set.shorten()?;
        shortenings += 1;
    }
    let verdict = set.verify();
    if !verdict.is_valid() {
        return Err(DtsError::InvalidSet(verdict));
    }
    let scope_bound = packing.modulus();
    if u64::from(set.scope()) > scope_bound {
        return Err(DtsError::Arithmetic(format!(
            "scope {} exceeds bound {scope_bound}",
            set.scope()
        )));
    }
    let recipe = ConstructionRecipe {
        n,
        k,
        p,
        q,
        singer_modulus: singer.modulus(),
        packing_modulus: packing.modulus(),
        packing_blocks: packing.n() as u64,
        packing_block_size: packing.k() as u64,
        reductions,
        shortenings,
        scope_bound,
        scope: set.scope(),
    };
    Ok((set, recipe))
}

/// `scope / (n k^2)` of the constructed set, exactly.
pub fn asymptotic_ratio(n: u64, k: u64) -> Result<Ratio<u64>> {
    let (set, _) = asymptotic_construct(n, k)?;
    Ok(Ratio::new(u64::from(set.scope()), n * k * k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::singer::singer_difference_set;

    #[test]
    fn lifts_fano_plane_to_three_blocks() {
        let base = Packing::new(7, vec![vec![0, 1, 3]]).unwrap();
        let p = cfj_composition(&base, 3).unwrap();
        assert_eq!(p.modulus(), 21);
        assert_eq!(
            p.blocks(),
            &[vec![0, 1, 3], vec![0, 8, 17], vec![0, 15, 10]]
        );
    }

    #[test]
    fn lifts_trivial_base() {
        let base = Packing::new(3, vec![vec![0, 1]]).unwrap();
        let p = cfj_composition(&base, 2).unwrap();
        assert_eq!(p.modulus(), 6);
        assert_eq!(p.blocks(), &[vec![0, 1], vec![0, 4]]);
    }

    #[test]
    fn composition_preconditions() {
        let base = Packing::new(7, vec![vec![0, 1, 3]]).unwrap();
        assert!(cfj_composition(&base, 2).is_err());
        assert!(cfj_composition(&base, 9).is_err());
        let two = Packing::new(21, vec![vec![0, 1, 3], vec![0, 8, 17]]).unwrap();
        assert!(cfj_composition(&two, 5).is_err());
    }

    #[test]
    fn level_offsets_are_permutations() {
        for n in [2u64, 3, 5, 7, 11, 13] {
            for delta in 1..n {
                let mut levels: Vec<u64> = (0..n).map(|j| j * delta % n).collect();
                levels.sort();
                assert_eq!(levels, (0..n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn construct_three_two() {
        let (set, recipe) = asymptotic_construct(3, 2).unwrap();
        assert_eq!((recipe.p, recipe.q), (Some(3), 2));
        assert_eq!(recipe.scope_bound, 21);
        assert!(set.scope() <= 20);
        assert_eq!((set.n(), set.k()), (3, 2));
    }

    #[test]
    fn construct_single_block() {
        let (set, recipe) = asymptotic_construct(1, 2).unwrap();
        assert_eq!(recipe.p, None);
        assert_eq!(set.rows(), vec![vec![0, 1, 3]]);
        assert_eq!(asymptotic_ratio(1, 2).unwrap(), Ratio::new(3, 4));
    }

    #[test]
    fn construct_bumps_p_above_q() {
        // next primes of 9 and 8 coincide at 11
        let (set, recipe) = asymptotic_construct(9, 8).unwrap();
        assert_eq!((recipe.p, recipe.q), (Some(13), 11));
        assert_eq!((recipe.reductions, recipe.shortenings), (4, 3));
        assert_eq!((set.n(), set.k()), (9, 8));
    }

    #[test]
    fn construct_rejects_hypothesis_violation() {
        assert!(asymptotic_construct(2, 3).is_err());
        assert!(asymptotic_construct(3, 3).is_err());
    }

    #[test]
    fn singer_bases_compose() {
        let base = singer_difference_set(5).unwrap();
        let p = cfj_composition(&base, 7).unwrap();
        assert_eq!(p.n(), 7);
        assert_eq!(p.modulus(), 7 * 31);
    }
}
