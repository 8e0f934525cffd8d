//! Lower bounds on `m(n, k)`, the least achievable scope.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Counting bound: `n` blocks each contribute `C(k + 1, 2)` distinct
/// positive differences.
pub fn trivial_lower_bound(n: u64, k: u64) -> u64 {
    n * k * (k + 1) / 2
}

/// `ceil(n (k^2 - 2k sqrt(k) + (k + sqrt(k)) / 4))`, clamped at zero.
///
/// Evaluated without floating point. Writing the bound as
/// `(A - B sqrt(k)) / 4` with `A = n(4k^2 + k)` and `B = n(8k - 1)`, an integer
/// `c` dominates it iff `B sqrt(k) >= A - 4c`, which is decided by squaring.
pub fn klove_lower_bound(n: u64, k: u64) -> u64 {
    let nb = BigInt::from(n);
    let kb = BigInt::from(k);
    let a = &nb * (BigInt::from(4u8) * &kb * &kb + &kb);
    let b = &nb * (BigInt::from(8u8) * &kb - 1);
    let b2k = &b * &b * &kb;
    let dominates = |c: i128| -> bool {
        let rhs = &a - BigInt::from(4) * BigInt::from(c);
        rhs.sign() != num_bigint::Sign::Plus || b2k >= &rhs * &rhs
    };
    let (nf, kf) = (n as f64, k as f64);
    let approx = nf * (kf * kf - 2.0 * kf * kf.sqrt() + (kf + kf.sqrt()) / 4.0);
    let mut c = approx.ceil() as i128;
    while !dominates(c) {
        c += 1;
    }
    while dominates(c - 1) {
        c -= 1;
    }
    c.max(0) as u64
}

/// Exact value of `m(n, k)` where it is known in closed form (k = 1, 2).
pub fn exact_value(n: u64, k: u64) -> Option<u64> {
    match k {
        1 => Some(n),
        2 => Some(if matches!(n % 4, 0 | 1) {
            3 * n
        } else {
            3 * n + 1
        }),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: u64,
    pub k: u64,
    pub trivial: u64,
    pub klove: u64,
    pub exact: Option<u64>,
    pub best: u64,
}

pub fn best_lower_bound(n: u64, k: u64) -> BoundsReport {
    let trivial = trivial_lower_bound(n, k);
    let klove = klove_lower_bound(n, k);
    let exact = exact_value(n, k);
    let best = trivial.max(klove).max(exact.unwrap_or(0));
    BoundsReport {
        n,
        k,
        trivial,
        klove,
        exact,
        best,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_bound_values() {
        assert_eq!(trivial_lower_bound(2, 7), 56);
        assert_eq!(trivial_lower_bound(1, 2), 3);
        assert_eq!(trivial_lower_bound(5, 5), 75);
    }

    #[test]
    fn klove_bound_values() {
        // 625 - 250 + 30/4 = 382.5
        assert_eq!(klove_lower_bound(1, 25), 383);
        assert_eq!(klove_lower_bound(2, 7), 29);
        assert_eq!(klove_lower_bound(1, 1), 0);
    }

    #[test]
    fn klove_matches_exact_boundary_at_perfect_squares() {
        // For k = s^2 the bound is rational: n (s^4 - 2 s^3 + (s^2 + s) / 4).
        for s in 1u64..200 {
            for n in 1u64..6 {
                let four_e = n as i128
                    * (4 * (s * s * s * s) as i128 - 8 * (s * s * s) as i128 + (s * s + s) as i128);
                let ceil = (four_e + 3).div_euclid(4).max(0) as u64;
                assert_eq!(klove_lower_bound(n, s * s), ceil, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn exact_values_for_small_orders() {
        let r = best_lower_bound(2, 2);
        assert_eq!((r.exact, r.best), (Some(7), 7));
        let r = best_lower_bound(4, 2);
        assert_eq!((r.exact, r.best), (Some(12), 12));
        let r = best_lower_bound(2, 7);
        assert_eq!((r.exact, r.best), (None, 56));
        assert_eq!(best_lower_bound(9, 1).best, 9);
    }
}
