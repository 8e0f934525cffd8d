//! GF(q) for prime `q` and its cubic extension GF(q^3).

use super::prime::{is_prime, prime_factors};
use crate::error::{DtsError, Result};

/// An element of the prime field GF(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u64,
    q: u64,
}

impl PrimeFieldElement {
    pub fn new(value: u64, q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(DtsError::precondition(format!("{q} is not prime")));
        }
        Ok(PrimeFieldElement {
            value: value % q,
            q,
        })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.q
    }

    pub fn add(self, other: Self) -> Self {
        debug_assert_eq!(self.q, other.q);
        PrimeFieldElement {
            value: (self.value + other.value) % self.q,
            q: self.q,
        }
    }

    pub fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.q, other.q);
        PrimeFieldElement {
            value: (self.value as u128 * other.value as u128 % self.q as u128) as u64,
            q: self.q,
        }
    }

    pub fn neg(self) -> Self {
        PrimeFieldElement {
            value: (self.q - self.value) % self.q,
            q: self.q,
        }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

/// `c0 + c1 x + c2 x^2` in GF(q)[x] / (f).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubicExtElement {
    pub coeffs: [u64; 3],
}

impl CubicExtElement {
    pub const ONE: CubicExtElement = CubicExtElement { coeffs: [1, 0, 0] };

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0, 0, 0]
    }
}

/// GF(q^3) built as GF(q)[x] modulo a monic irreducible cubic
/// `x^3 + a x^2 + b x + c`, stored as `[c, b, a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicField {
    q: u64,
    modulus: [u64; 3],
}

impl CubicField {
    /// Uses the lexicographically smallest irreducible cubic, comparing
    /// `(a, b, c)` from the leading coefficient down.
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(DtsError::precondition(format!("{q} is not prime")));
        }
        let modulus = smallest_irreducible_cubic(q)
            .ok_or_else(|| DtsError::Arithmetic(format!("no irreducible cubic over GF({q})")))?;
        Ok(CubicField { q, modulus })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Coefficients `[c, b, a]` of the reducing polynomial.
    pub fn modulus(&self) -> [u64; 3] {
        self.modulus
    }

    /// Multiplicative group order `q^3 - 1`.
    pub fn group_order(&self) -> u64 {
        self.q * self.q * self.q - 1
    }

    pub fn mul(&self, x: &CubicExtElement, y: &CubicExtElement) -> CubicExtElement {
        let q = self.q as u128;
        let mut prod = [0u128; 5];
        for i in 0..3 {
            for j in 0..3 {
                prod[i + j] += x.coeffs[i] as u128 * y.coeffs[j] as u128;
            }
        }
        for p in &mut prod {
            *p %= q;
        }
        // x^3 = -(a x^2 + b x + c)
        for deg in (3..5).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            prod[deg] = 0;
            for (t, &m) in self.modulus.iter().enumerate() {
                let idx = deg - 3 + t;
                prod[idx] = (prod[idx] + (q - lead) * m as u128) % q;
            }
        }
        CubicExtElement {
            coeffs: [prod[0] as u64, prod[1] as u64, prod[2] as u64],
        }
    }

    pub fn pow(&self, base: &CubicExtElement, mut exp: u64) -> CubicExtElement {
        let mut acc = CubicExtElement::ONE;
        let mut b = *base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            exp >>= 1;
        }
        acc
    }

    /// Element with index `c0 + c1 q + c2 q^2`.
    pub fn element(&self, index: u64) -> CubicExtElement {
        let q = self.q;
        CubicExtElement {
            coeffs: [index % q, index / q % q, index / (q * q) % q],
        }
    }

    pub fn is_primitive(&self, x: &CubicExtElement) -> bool {
        if x.is_zero() {
            return false;
        }
        let order = self.group_order();
        prime_factors(order)
            .into_iter()
            .all(|r| self.pow(x, order / r) != CubicExtElement::ONE)
    }

    /// Primitive element with the smallest index, as ordered by
    /// [`CubicField::element`].
    pub fn smallest_primitive(&self) -> Option<CubicExtElement> {
        (1..=self.group_order())
            .map(|i| self.element(i))
            .find(|x| self.is_primitive(x))
    }
}

fn has_root(q: u64, [c, b, a]: [u64; 3]) -> bool {
    let q128 = q as u128;
    (0..q).any(|t| {
        let t = t as u128;
        let v =
            ((t * t % q128 * t) + a as u128 * (t * t % q128) + b as u128 * t + c as u128) % q128;
        v == 0
    })
}

/// A cubic is irreducible over a field iff it has no root there.
fn smallest_irreducible_cubic(q: u64) -> Option<[u64; 3]> {
    for a in 0..q {
        for b in 0..q {
            for c in 1..q {
                if !has_root(q, [c, b, a]) {
                    return Some([c, b, a]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let a = PrimeFieldElement::new(5, 7).unwrap();
        let b = PrimeFieldElement::new(4, 7).unwrap();
        assert_eq!(a.add(b).value(), 2);
        assert_eq!(a.mul(b).value(), 6);
        assert_eq!(a.neg().value(), 2);
        assert!(PrimeFieldElement::new(1, 8).is_err());
    }

    #[test]
    fn smallest_cubic_over_gf2() {
        // x^3 + x + 1
        assert_eq!(CubicField::new(2).unwrap().modulus(), [1, 1, 0]);
    }

    #[test]
    fn primitive_element_generates_whole_group() {
        for q in [2u64, 3, 5, 7] {
            let f = CubicField::new(q).unwrap();
            let g = f.smallest_primitive().unwrap();
            let mut seen = std::collections::HashSet::new();
            let mut x = CubicExtElement::ONE;
            for _ in 0..f.group_order() {
                assert!(seen.insert(x));
                x = f.mul(&x, &g);
            }
            assert_eq!(x, CubicExtElement::ONE);
        }
    }

    #[test]
    fn multiplication_is_associative_and_commutative() {
        let f = CubicField::new(5).unwrap();
        for i in (1..125).step_by(7) {
            for j in (1..125).step_by(11) {
                let (x, y, z) = (f.element(i), f.element(j), f.element((i * j) % 124 + 1));
                assert_eq!(f.mul(&x, &y), f.mul(&y, &x));
                assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
            }
        }
    }
}
