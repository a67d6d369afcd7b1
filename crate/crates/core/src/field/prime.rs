use rand::RngCore;

use super::Field;
use crate::error::{Error, Result};
use crate::opcount;

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse by the extended Euclidean algorithm; `a` must be nonzero mod p.
pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    assert!(r1 != 0, "inverse of zero");
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The prime field F_p, elements are canonical residues in [0, p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Enforces the characteristic bound p > 2n for a curve of y-degree n.
    pub fn check_curve_degree(&self, n: usize) -> Result<()> {
        if (self.p as u128) <= 2 * n as u128 {
            return Err(Error::TooSmall { p: self.p, n });
        }
        Ok(())
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        opcount::add_muls(1);
        mulmod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> u64 {
        opcount::add_invs(1);
        invmod(*a, self.p)
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.next_u64() % self.p
    }
    fn to_coords(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }
    fn from_coords(&self, c: &[u64]) -> u64 {
        c.first().copied().unwrap_or(0) % self.p
    }
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(PrimeField::new(10007).is_ok());
        assert_eq!(PrimeField::new(10), Err(Error::NotPrime(10)));
        assert!(is_prime(2) && is_prime(3) && !is_prime(1) && !is_prime(561));
        assert!(is_prime(18446744073709551557));
    }

    #[test]
    fn too_small_for_curve() {
        let f = PrimeField::new(2).unwrap();
        assert_eq!(f.check_curve_degree(3), Err(Error::TooSmall { p: 2, n: 3 }));
        assert!(PrimeField::new(7).unwrap().check_curve_degree(3).is_ok());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::new(10007).unwrap();
        for a in 1..200 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }
}
