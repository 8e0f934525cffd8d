use super::field::{CubicExtElement, CubicField};
use super::prime::is_prime;
use crate::error::{DtsError, Result};
use crate::packing::Packing;

/// Largest `q` accepted by [`singer_difference_set`] unless a caller asks
/// for more through [`singer_difference_set_with_limit`].
pub const DEFAULT_MAX_Q: u64 = 101;

/// Singer's planar difference set for prime `q`: a 1-DP`(q^2 + q + 1, q + 1)`.
pub fn singer_difference_set(q: u64) -> Result<Packing> {
    singer_difference_set_with_limit(q, DEFAULT_MAX_Q)
}

pub fn singer_difference_set_with_limit(q: u64, max_q: u64) -> Result<Packing> {
    if !is_prime(q) {
        return Err(DtsError::precondition(format!("q = {q} is not prime")));
    }
    if q > max_q {
        return Err(DtsError::precondition(format!(
            "q = {q} exceeds the configured maximum {max_q}"
        )));
    }
    let field = CubicField::new(q)?;
    let alpha = field
        .smallest_primitive()
        .ok_or_else(|| DtsError::Arithmetic(format!("no primitive element in GF({q}^3)")))?;
    let v = q * q + q + 1;

    // alpha^v generates GF(q)*, so membership of alpha^i in the plane
    // spanned by {1, x} depends only on i mod v.
    let mut residues = Vec::with_capacity(q as usize + 1);
    let mut power = CubicExtElement::ONE;
    for i in 0..v {
        if power.coeffs[2] == 0 {
            residues.push(i);
        }
        power = field.mul(&power, &alpha);
    }
    if residues.len() as u64 != q + 1 {
        return Err(DtsError::Arithmetic(format!(
            "found {} residues, expected {}",
            residues.len(),
            q + 1
        )));
    }
    Packing::new(v, vec![least_translate(v, &residues)])
}

/// Lexicographically least sorted translate `{d - t mod v}` with `t` drawn
/// from the set itself, so the result contains 0.
pub fn least_translate(v: u64, residues: &[u64]) -> Vec<u64> {
    residues
        .iter()
        .map(|&t| {
            let mut shifted: Vec<u64> = residues.iter().map(|&d| (d + v - t) % v).collect();
            shifted.sort_unstable();
            shifted
        })
        .min()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane() {
        let p = singer_difference_set(2).unwrap();
        assert_eq!(p.modulus(), 7);
        let block = &p.blocks()[0];
        assert!(
            block == &vec![0, 1, 3] || block == &vec![0, 1, 5],
            "{block:?}"
        );
    }

    #[test]
    fn small_primes_give_planar_sets() {
        for (q, v) in [(3u64, 13u64), (5, 31), (7, 57)] {
            let p = singer_difference_set(q).unwrap();
            assert_eq!(p.modulus(), v);
            assert_eq!(p.k() as u64, q + 1);
            assert!(p.verify().is_valid());
            // planar: every nonzero residue occurs exactly once
            let mut diffs = Vec::new();
            for &a in &p.blocks()[0] {
                for &b in &p.blocks()[0] {
                    if a != b {
                        diffs.push((a + v - b) % v);
                    }
                }
            }
            diffs.sort();
            assert_eq!(diffs, (1..v).collect::<Vec<_>>());
        }
    }

    #[test]
    fn rejects_composites_and_large_q() {
        assert!(singer_difference_set(4).is_err());
        assert!(singer_difference_set(103).is_err());
        assert!(singer_difference_set_with_limit(103, 103).is_ok());
    }

    #[test]
    fn translate_choice() {
        assert_eq!(least_translate(7, &[0, 2, 6]), vec![0, 1, 3]);
        assert_eq!(least_translate(7, &[2, 3, 5]), vec![0, 1, 3]);
    }
}
