use std::sync::Arc;

use rand::RngCore;

use super::prime::{invmod, mulmod};
use super::{Field, PrimeField};
use crate::error::{Error, Result};
use crate::opcount;
use crate::poly::{factor, UniPoly};

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    p: u64,
    /// Monic modulus, lowest degree first, length k + 1.
    modulus: Vec<u64>,
}

/// F_p[z]/(m(z)) for an irreducible monic m of degree k, flattened over F_p.
///
/// Elements are coefficient vectors of length exactly k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtField(Arc<Inner>);

impl ExtField {
    /// Builds the extension defined by `modulus`, which must be monic and
    /// irreducible over `base`.
    pub fn new(base: PrimeField, modulus: &UniPoly<u64>) -> Result<Self> {
        if modulus.degree().is_none_or(|d| d == 0) || !base.is_one(modulus.lead()) {
            return Err(Error::InternalInvariantBroken(
                "extension modulus must be monic of positive degree".into(),
            ));
        }
        if !factor::is_irreducible(&base, modulus) {
            return Err(Error::InternalInvariantBroken(
                "extension modulus is reducible".into(),
            ));
        }
        Ok(Self::new_unchecked(base, modulus))
    }

    pub(crate) fn new_unchecked(base: PrimeField, modulus: &UniPoly<u64>) -> Self {
        ExtField(Arc::new(Inner {
            p: base.p(),
            modulus: modulus.coeffs().to_vec(),
        }))
    }

    /// Some field of degree `k` over `base`, picked deterministically from `rng`.
    pub fn of_degree(base: PrimeField, k: usize, rng: &mut dyn RngCore) -> Self {
        assert!(k >= 1);
        if k == 1 {
            return Self::new_unchecked(base, &UniPoly::from_coeffs(&base, vec![0, 1]));
        }
        loop {
            let mut c: Vec<u64> = (0..k).map(|_| base.random(rng)).collect();
            c.push(1);
            let m = UniPoly::from_coeffs(&base, c);
            if factor::is_irreducible(&base, &m) {
                return Self::new_unchecked(base, &m);
            }
        }
    }

    pub fn base(&self) -> PrimeField {
        PrimeField::new(self.0.p).expect("prime checked at construction")
    }

    pub fn modulus(&self) -> UniPoly<u64> {
        UniPoly::from_raw(self.0.modulus.clone())
    }

    pub fn k(&self) -> usize {
        self.0.modulus.len() - 1
    }

    /// The class of z.
    pub fn gen(&self) -> Vec<u64> {
        let k = self.k();
        let mut v = vec![0; k];
        if k == 1 {
            // z reduces to minus the constant coefficient.
            v[0] = (self.0.p - self.0.modulus[0]) % self.0.p;
        } else {
            v[1] = 1;
        }
        v
    }

    pub fn from_base(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0; self.k()];
        v[0] = a % self.0.p;
        v
    }

    /// Lifts a polynomial over F_p coefficientwise.
    pub fn lift_poly(&self, a: &UniPoly<u64>) -> UniPoly<Vec<u64>> {
        UniPoly::from_raw(a.coeffs().iter().map(|&c| self.from_base(c)).collect())
    }

    /// Evaluates an F_p polynomial at a field element.
    pub fn eval_base_poly(&self, a: &UniPoly<u64>, at: &Vec<u64>) -> Vec<u64> {
        let mut acc = self.zero();
        for c in a.coeffs().iter().rev() {
            acc = self.mul(&acc, at);
            acc = self.add(&acc, &self.from_base(*c));
        }
        acc
    }

    /// a^(p^j).
    pub fn frobenius_pow(&self, a: &Vec<u64>, j: usize) -> Vec<u64> {
        let mut r = a.clone();
        for _ in 0..(j % self.k().max(1)) {
            r = self.frobenius(&r);
        }
        r
    }

    fn reduce(&self, mut prod: Vec<u64>) -> Vec<u64> {
        let p = self.0.p;
        let m = &self.0.modulus;
        let k = self.k();
        let mut count = 0u64;
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for i in 0..k {
                if m[i] != 0 {
                    let t = mulmod(c, m[i], p);
                    count += 1;
                    let idx = top - k + i;
                    prod[idx] = (prod[idx] + p - t) % p;
                }
            }
        }
        opcount::add_muls(count);
        prod.truncate(k);
        prod.resize(k, 0);
        prod
    }
}

impl Field for ExtField {
    type Elem = Vec<u64>;

    fn characteristic(&self) -> u64 {
        self.0.p
    }
    fn degree(&self) -> usize {
        self.k()
    }
    fn zero(&self) -> Vec<u64> {
        vec![0; self.k()]
    }
    fn one(&self) -> Vec<u64> {
        self.from_base(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn from_i64(&self, v: i64) -> Vec<u64> {
        self.from_base(v.rem_euclid(self.0.p as i64) as u64)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let p = self.0.p;
        a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let p = self.0.p;
        a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        let p = self.0.p;
        a.iter().map(|x| (p - x) % p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let p = self.0.p;
        let k = self.k();
        if k == 1 {
            opcount::add_muls(1);
            return vec![mulmod(a[0], b[0], p)];
        }
        let mut prod = vec![0u64; 2 * k - 1];
        let mut count = 0u64;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = (prod[i + j] + mulmod(x, y, p)) % p;
                    count += 1;
                }
            }
        }
        opcount::add_muls(count);
        self.reduce(prod)
    }
    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        opcount::add_invs(1);
        let p = self.0.p;
        let k = self.k();
        if k == 1 {
            return vec![invmod(a[0], p)];
        }
        // Extended Euclid on raw coefficient vectors.
        let trim = |v: &mut Vec<u64>| {
            while v.last() == Some(&0) {
                v.pop();
            }
        };
        let mut r0 = self.0.modulus.clone();
        let mut r1 = a.clone();
        trim(&mut r1);
        assert!(!r1.is_empty(), "inverse of zero");
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // (q, r) = divrem(r0, r1)
            let mut r = r0.clone();
            let d1 = r1.len() - 1;
            let li = invmod(r1[d1], p);
            let mut q = vec![0u64; r.len().saturating_sub(d1).max(1)];
            while r.len() > d1 {
                let top = r.len() - 1;
                let c = mulmod(r[top], li, p);
                q[top - d1] = c;
                for i in 0..=d1 {
                    let t = mulmod(c, r1[i], p);
                    r[top - d1 + i] = (r[top - d1 + i] + p - t) % p;
                }
                trim(&mut r);
                if r.len() > top {
                    r.truncate(top);
                }
            }
            trim(&mut q);
            // s2 = s0 - q*s1
            let mut qs = vec![0u64; q.len() + s1.len()];
            for (i, &x) in q.iter().enumerate() {
                for (j, &y) in s1.iter().enumerate() {
                    qs[i + j] = (qs[i + j] + mulmod(x, y, p)) % p;
                }
            }
            let mut s2 = vec![0u64; qs.len().max(s0.len())];
            for (i, v) in s2.iter_mut().enumerate() {
                let a = s0.get(i).copied().unwrap_or(0);
                let b = qs.get(i).copied().unwrap_or(0);
                *v = (a + p - b) % p;
            }
            trim(&mut s2);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant.
        assert_eq!(r0.len(), 1, "modulus not irreducible");
        let c = invmod(r0[0], p);
        let mut out: Vec<u64> = s0.iter().map(|&x| mulmod(x, c, p)).collect();
        out.resize(k, 0);
        out
    }
    fn random(&self, rng: &mut dyn RngCore) -> Vec<u64> {
        (0..self.k()).map(|_| rng.next_u64() % self.0.p).collect()
    }
    fn to_coords(&self, a: &Vec<u64>) -> Vec<u64> {
        a.clone()
    }
    fn from_coords(&self, c: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = c.iter().map(|x| x % self.0.p).collect();
        v.resize(self.k(), 0);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn quadratic_extension_arithmetic() {
        // F_7[z]/(z^2+1): z^2 = -1.
        let b = PrimeField::new(7).unwrap();
        let f = ExtField::new(b, &UniPoly::from_coeffs(&b, vec![1, 0, 1])).unwrap();
        let z = f.gen();
        assert_eq!(f.mul(&z, &z), f.from_i64(-1));
        let a = vec![3, 5];
        assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        // Frobenius is z -> -z in this field.
        assert_eq!(f.frobenius(&z), f.neg(&z));
    }

    #[test]
    fn reducible_modulus_rejected() {
        let b = PrimeField::new(7).unwrap();
        assert!(ExtField::new(b, &UniPoly::from_coeffs(&b, vec![6, 0, 1])).is_err());
    }

    #[test]
    fn random_degree_field_inverses() {
        let b = PrimeField::new(10007).unwrap();
        let mut r = rng::stream("t");
        let f = ExtField::of_degree(b, 5, &mut r);
        for _ in 0..20 {
            let a = f.random(&mut r);
            if !f.is_zero(&a) {
                assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
            }
        }
    }
}
