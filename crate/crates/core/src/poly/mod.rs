//! Dense univariate polynomials over a [`Field`].

pub mod crt;
pub mod factor;

use crate::error::{Error, Result};
use crate::field::Field;

const KARATSUBA_THRESHOLD: usize = 32;

/// Dense polynomial, lowest degree first, without trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<E> {
    c: Vec<E>,
}

impl<E: Clone + PartialEq> UniPoly<E> {
    /// Wraps coefficients that are already normalized.
    pub fn from_raw(c: Vec<E>) -> Self {
        UniPoly { c }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(f: &F, mut c: Vec<E>) -> Self {
        while c.last().is_some_and(|x| f.is_zero(x)) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, a: E) -> Self {
        Self::from_coeffs(f, vec![a])
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        UniPoly { c: vec![f.one()] }
    }

    /// c * x^k.
    pub fn monomial<F: Field<Elem = E>>(f: &F, a: E, k: usize) -> Self {
        if f.is_zero(&a) {
            return Self::zero();
        }
        let mut c = vec![f.zero(); k];
        c.push(a);
        UniPoly { c }
    }

    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        Self::monomial(f, f.one(), 1)
    }

    /// x - a.
    pub fn linear<F: Field<Elem = E>>(f: &F, a: &E) -> Self {
        UniPoly {
            c: vec![f.neg(a), f.one()],
        }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the convention deg 0 = -1 folded into `None`; handy for
    /// comparisons where zero must sort first.
    pub fn deg_key(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn lead(&self) -> &E {
        self.c
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: usize) -> E {
        self.c.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_one<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.c.len() == 1 && f.is_one(&self.c[0])
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, f: &F) -> bool {
        !self.c.is_empty() && f.is_one(self.lead())
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = f.zero();
        let c = (0..n)
            .map(|i| f.add(self.c.get(i).unwrap_or(&z), o.c.get(i).unwrap_or(&z)))
            .collect();
        Self::from_coeffs(f, c)
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = f.zero();
        let c = (0..n)
            .map(|i| f.sub(self.c.get(i).unwrap_or(&z), o.c.get(i).unwrap_or(&z)))
            .collect();
        Self::from_coeffs(f, c)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        UniPoly {
            c: self.c.iter().map(|a| f.neg(a)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, a: &E) -> Self {
        if f.is_zero(a) {
            return Self::zero();
        }
        UniPoly {
            c: self.c.iter().map(|x| f.mul(x, a)).collect(),
        }
    }

    /// self * x^k.
    pub fn shift<F: Field<Elem = E>>(&self, f: &F, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![f.zero(); k];
        c.extend(self.c.iter().cloned());
        UniPoly { c }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(f, mul_slices(f, &self.c, &o.c))
    }

    pub fn square<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.mul(f, self)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, mut e: u64) -> Self {
        let mut acc = Self::one(f);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &b);
            }
            e >>= 1;
            if e > 0 {
                b = b.square(f);
            }
        }
        acc
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn divrem<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        if self.c.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let li = f.inv(d.lead());
        let mut r = self.c.clone();
        let mut q = vec![f.zero(); self.c.len() - dd];
        for top in (dd..r.len()).rev() {
            if f.is_zero(&r[top]) {
                continue;
            }
            let c = f.mul(&r[top], &li);
            for i in 0..dd {
                let t = f.mul(&c, &d.c[i]);
                r[top - dd + i] = f.sub(&r[top - dd + i], &t);
            }
            r[top] = f.zero();
            q[top - dd] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(f, q), Self::from_coeffs(f, r))
    }

    pub fn rem<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> Self {
        self.divrem(f, d).1
    }

    /// Quotient when `d` divides `self`, `None` otherwise.
    pub fn div_exact<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(f, d);
        r.is_zero().then_some(q)
    }

    pub fn divides<F: Field<Elem = E>>(&self, f: &F, a: &Self) -> bool {
        a.rem(f, self).is_zero()
    }

    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        if self.is_zero() || f.is_one(self.lead()) {
            return self.clone();
        }
        let li = f.inv(self.lead());
        self.scale(f, &li)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// (g, s, t) with s*self + t*o = g, g monic (or zero).
    pub fn xgcd<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(f, &r1);
            let s2 = s0.sub(f, &q.mul(f, &s1));
            let t2 = t0.sub(f, &q.mul(f, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = f.inv(r0.lead());
        (r0.scale(f, &li), s0.scale(f, &li), t0.scale(f, &li))
    }

    /// Inverse of `self` modulo `m`.
    pub fn inv_mod<F: Field<Elem = E>>(&self, f: &F, m: &Self) -> Result<Self> {
        let (g, s, _) = self.rem(f, m).xgcd(f, m);
        if !g.is_one(f) {
            return Err(Error::NotCoprime);
        }
        Ok(s.rem(f, m))
    }

    pub fn mul_mod<F: Field<Elem = E>>(&self, f: &F, o: &Self, m: &Self) -> Self {
        self.mul(f, o).rem(f, m)
    }

    pub fn pow_mod<F: Field<Elem = E>>(&self, f: &F, mut e: u64, m: &Self) -> Self {
        let mut acc = Self::one(f).rem(f, m);
        let mut b = self.rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(f, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_mod(f, &b, m);
            }
        }
        acc
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_u64(i as u64)))
            .collect();
        Self::from_coeffs(f, c)
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: &E) -> E {
        let mut acc = f.zero();
        for a in self.c.iter().rev() {
            acc = f.add(&f.mul(&acc, x), a);
        }
        acc
    }

    /// self(g) by Horner's rule.
    pub fn compose<F: Field<Elem = E>>(&self, f: &F, g: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(f, g).add(f, &Self::constant(f, a.clone()));
        }
        acc
    }

    /// self(x + a).
    pub fn taylor_shift<F: Field<Elem = E>>(&self, f: &F, a: &E) -> Self {
        self.compose(f, &Self::from_coeffs(f, vec![a.clone(), f.one()]))
    }

    /// self mod x^k.
    pub fn truncate(&self, k: usize) -> Self {
        let mut c = self.c.clone();
        c.truncate(k);
        // Truncation may expose zeros; callers always pass field-normalized
        // input so a cheap trim on the raw vector is enough.
        UniPoly { c }
    }

    /// x-adic valuation; `None` for zero.
    pub fn valuation<F: Field<Elem = E>>(&self, f: &F) -> Option<usize> {
        self.c.iter().position(|a| !f.is_zero(a))
    }

    /// Multiplicity of the irreducible `phi` in `self` (self nonzero).
    pub fn multiplicity<F: Field<Elem = E>>(&self, f: &F, phi: &Self) -> usize {
        let mut a = self.clone();
        let mut m = 0;
        while let Some(q) = a.div_exact(f, phi) {
            a = q;
            m += 1;
        }
        m
    }

    /// Inverse as a power series mod x^k; constant term must be nonzero.
    pub fn series_inverse<F: Field<Elem = E>>(&self, f: &F, k: usize) -> Self {
        assert!(
            !self.is_zero() && !f.is_zero(&self.c[0]),
            "series inverse needs a unit"
        );
        let mut g = Self::constant(f, f.inv(&self.c[0]));
        let mut prec = 1;
        while prec < k {
            prec = (2 * prec).min(k);
            // g <- g (2 - self g)
            let e = self.truncate(prec).mul(f, &g).truncate(prec);
            let two = Self::constant(f, f.from_i64(2));
            g = g.mul(f, &two.sub(f, &e)).truncate(prec);
            g = Self::from_coeffs(f, g.c);
        }
        Self::from_coeffs(f, g.truncate(k).c)
    }

    /// Re-normalizes after a raw operation such as [`truncate`](Self::truncate).
    pub fn normalized<F: Field<Elem = E>>(self, f: &F) -> Self {
        Self::from_coeffs(f, self.c)
    }

    pub fn map<G: Field>(&self, g: &G, m: impl Fn(&E) -> G::Elem) -> UniPoly<G::Elem> {
        UniPoly::from_coeffs(g, self.c.iter().map(m).collect())
    }
}

/// Product of raw coefficient slices (schoolbook, Karatsuba for large inputs).
pub(crate) fn mul_slices<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() < KARATSUBA_THRESHOLD || b.len() < KARATSUBA_THRESHOLD {
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !f.is_zero(y) {
                    out[i + j] = f.add(&out[i + j], &f.mul(x, y));
                }
            }
        }
        return out;
    }
    let h = a.len().max(b.len()) / 2;
    let split = |s: &[F::Elem]| -> (Vec<F::Elem>, Vec<F::Elem>) {
        if s.len() <= h {
            (s.to_vec(), Vec::new())
        } else {
            (s[..h].to_vec(), s[h..].to_vec())
        }
    };
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    let z0 = mul_slices(f, &a0, &b0);
    let z2 = mul_slices(f, &a1, &b1);
    let add = |x: &[F::Elem], y: &[F::Elem]| -> Vec<F::Elem> {
        let n = x.len().max(y.len());
        let z = f.zero();
        (0..n)
            .map(|i| f.add(x.get(i).unwrap_or(&z), y.get(i).unwrap_or(&z)))
            .collect()
    };
    let mut z1 = mul_slices(f, &add(&a0, &a1), &add(&b0, &b1));
    for (i, v) in z0.iter().enumerate() {
        z1[i] = f.sub(&z1[i], v);
    }
    for (i, v) in z2.iter().enumerate() {
        z1[i] = f.sub(&z1[i], v);
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, v) in z0.into_iter().enumerate() {
        out[i] = f.add(&out[i], &v);
    }
    for (i, v) in z1.into_iter().enumerate() {
        if i + h < out.len() {
            out[i + h] = f.add(&out[i + h], &v);
        }
    }
    for (i, v) in z2.into_iter().enumerate() {
        out[i + 2 * h] = f.add(&out[i + 2 * h], &v);
    }
    out
}

/// Monic gcd of two polynomials (free-function form of [`UniPoly::gcd`]).
pub fn uni_gcd<F: Field>(f: &F, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
    a.gcd(f, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }
    fn p(c: &[i64]) -> UniPoly<u64> {
        let f = fp();
        UniPoly::from_coeffs(&f, c.iter().map(|&v| f.from_i64(v)).collect())
    }

    #[test]
    fn gcd_examples() {
        let f = fp();
        assert_eq!(p(&[-1, 0, 1]).gcd(&f, &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[4, 2]).gcd(&f, &UniPoly::zero()), p(&[2, 1]));
        // gcd(x^3 - x, x^2 + x) = x^2 + x
        assert_eq!(p(&[0, -1, 0, 1]).gcd(&f, &p(&[0, 1, 1])), p(&[0, 1, 1]));
        assert!(UniPoly::<u64>::zero().gcd(&f, &UniPoly::zero()).is_zero());
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let f = fp();
        let a: Vec<u64> = (0..80).map(|i| (i * i + 3) % 10007).collect();
        let b: Vec<u64> = (0..71).map(|i| (7 * i + 1) % 10007).collect();
        let k = mul_slices(&f, &a, &b);
        let mut s = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                s[i + j] = (s[i + j] + x * y) % 10007;
            }
        }
        assert_eq!(k, s);
    }

    #[test]
    fn series_inverse_works() {
        let f = fp();
        let a = p(&[3, 1, 4, 1, 5]);
        let inv = a.series_inverse(&f, 10);
        assert_eq!(
            a.mul(&f, &inv).truncate(10).normalized(&f),
            UniPoly::one(&f)
        );
    }

    fn arb_poly() -> impl Strategy<Value = UniPoly<u64>> {
        prop::collection::vec(0u64..10007, 0..8).prop_map(|c| UniPoly::from_coeffs(&fp(), c))
    }

    proptest! {
        #[test]
        fn gcd_divides_and_is_greatest(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let f = fp();
            let (a, b) = (a.mul(&f, &c), b.mul(&f, &c));
            let g = a.gcd(&f, &b);
            if !g.is_zero() {
                prop_assert!(g.divides(&f, &a));
                prop_assert!(g.divides(&f, &b));
                if !c.is_zero() {
                    prop_assert!(c.monic(&f).divides(&f, &g));
                }
            } else {
                prop_assert!(a.is_zero() && b.is_zero());
            }
        }

        #[test]
        fn xgcd_bezout(a in arb_poly(), b in arb_poly()) {
            let f = fp();
            let (g, s, t) = a.xgcd(&f, &b);
            prop_assert_eq!(s.mul(&f, &a).add(&f, &t.mul(&f, &b)), g);
        }
    }
}
