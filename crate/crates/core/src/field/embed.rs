use super::prime::{invmod, mulmod};
use super::{ExtField, Field};
use crate::error::{Error, Result};
use crate::poly::{factor, UniPoly};

/// A field homomorphism `src -> dst`, determined by the image of the
/// generator of `src`.
#[derive(Debug, Clone)]
pub struct Embedding {
    src: ExtField,
    dst: ExtField,
    /// Images of z^0 .. z^(a-1), a = [src : F_p].
    powers: Vec<Vec<u64>>,
    /// Row-reduced system used to pull elements back; see `preimage`.
    pivots: Vec<(usize, Vec<u64>)>,
    reduced: Vec<Vec<u64>>,
}

impl Embedding {
    pub fn new(src: &ExtField, dst: &ExtField, gen_image: Vec<u64>) -> Self {
        let a = src.k();
        let mut powers = Vec::with_capacity(a);
        let mut cur = dst.one();
        for _ in 0..a {
            powers.push(cur.clone());
            cur = dst.mul(&cur, &gen_image);
        }
        let (pivots, reduced) = Self::eliminate(dst, &powers);
        Embedding {
            src: src.clone(),
            dst: dst.clone(),
            powers,
            pivots,
            reduced,
        }
    }

    pub fn identity(f: &ExtField) -> Self {
        Self::new(f, f, f.gen())
    }

    /// All embeddings `src -> dst`, one per root of the modulus of `src`.
    pub fn all(src: &ExtField, dst: &ExtField) -> Result<Vec<Self>> {
        if src.characteristic() != dst.characteristic() {
            return Err(Error::ContextMismatch);
        }
        if !dst.k().is_multiple_of(src.k()) {
            return Err(Error::ContextMismatch);
        }
        let m = dst.lift_poly(&src.modulus());
        let roots = factor::roots(dst, &m);
        Ok(roots.into_iter().map(|r| Self::new(src, dst, r)).collect())
    }

    /// The embedding sending `src_elem` to `dst_elem`, if one exists.
    pub fn matching(
        src: &ExtField,
        dst: &ExtField,
        src_elem: &Vec<u64>,
        dst_elem: &Vec<u64>,
    ) -> Result<Self> {
        Self::all(src, dst)?
            .into_iter()
            .find(|e| e.apply(src_elem) == *dst_elem)
            .ok_or_else(|| Error::InternalInvariantBroken("no compatible field embedding".into()))
    }

    pub fn src(&self) -> &ExtField {
        &self.src
    }
    pub fn dst(&self) -> &ExtField {
        &self.dst
    }

    pub fn apply(&self, a: &Vec<u64>) -> Vec<u64> {
        let mut acc = self.dst.zero();
        for (c, pw) in a.iter().zip(&self.powers) {
            if *c != 0 {
                let t = self.dst.mul(&self.dst.from_base(*c), pw);
                acc = self.dst.add(&acc, &t);
            }
        }
        acc
    }

    pub fn apply_poly(&self, a: &UniPoly<Vec<u64>>) -> UniPoly<Vec<u64>> {
        UniPoly::from_coeffs(
            &self.dst,
            a.coeffs().iter().map(|c| self.apply(c)).collect(),
        )
    }

    /// Composition `self` after `first`.
    pub fn compose(&self, first: &Embedding) -> Embedding {
        Embedding::new(&first.src, &self.dst, self.apply(&first.src.gen()))
    }

    fn eliminate(dst: &ExtField, powers: &[Vec<u64>]) -> (Vec<(usize, Vec<u64>)>, Vec<Vec<u64>>) {
        // Columns are the coordinate vectors of the powers; we keep an
        // augmented row-echelon form [coords | identity] to recover
        // combinations.
        let p = dst.characteristic();
        let a = powers.len();
        let b = dst.k();
        let mut rows: Vec<Vec<u64>> = (0..b)
            .map(|i| {
                let mut r: Vec<u64> = powers.iter().map(|pw| pw[i]).collect();
                r.extend((0..b).map(|j| u64::from(i == j)));
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..a {
            let Some(piv) = (rank..b).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = invmod(rows[rank][col], p);
            for v in rows[rank].iter_mut() {
                *v = mulmod(*v, inv, p);
            }
            for r in 0..b {
                if r != rank && rows[r][col] != 0 {
                    let c = rows[r][col];
                    let src = rows[rank].clone();
                    for (v, s) in rows[r].iter_mut().zip(&src) {
                        *v = (*v + p - mulmod(c, *s, p)) % p;
                    }
                }
            }
            pivots.push((col, rank));
            rank += 1;
        }
        let pivots = pivots
            .into_iter()
            .map(|(c, r)| (c, rows[r][a..].to_vec()))
            .collect();
        let reduced = rows[rank..].iter().map(|r| r[a..].to_vec()).collect();
        (pivots, reduced)
    }

    /// The unique `s` with `apply(s) == d`, or `None` when `d` is not in
    /// the image.
    pub fn preimage(&self, d: &Vec<u64>) -> Option<Vec<u64>> {
        let p = self.dst.characteristic();
        let dot = |w: &Vec<u64>| {
            w.iter()
                .zip(d)
                .fold(0u64, |acc, (x, y)| (acc + mulmod(*x, *y, p)) % p)
        };
        if self.reduced.iter().any(|w| dot(w) != 0) {
            return None;
        }
        let mut out = vec![0u64; self.src.k()];
        for (col, w) in &self.pivots {
            out[*col] = dot(w);
        }
        Some(out)
    }

    pub fn preimage_poly(&self, a: &UniPoly<Vec<u64>>) -> Option<UniPoly<Vec<u64>>> {
        let c: Option<Vec<_>> = a.coeffs().iter().map(|x| self.preimage(x)).collect();
        Some(UniPoly::from_coeffs(&self.src, c?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::rng;

    #[test]
    fn embed_quadratic_into_quartic() {
        let b = PrimeField::new(10007).unwrap();
        let mut r = rng::stream("embed");
        let f2 = ExtField::of_degree(b, 2, &mut r);
        let f4 = ExtField::of_degree(b, 4, &mut r);
        let embs = Embedding::all(&f2, &f4).unwrap();
        assert_eq!(embs.len(), 2);
        for e in &embs {
            let x = f2.random(&mut r);
            let y = f2.random(&mut r);
            assert_eq!(e.apply(&f2.mul(&x, &y)), f4.mul(&e.apply(&x), &e.apply(&y)));
            assert_eq!(e.preimage(&e.apply(&x)), Some(x.clone()));
        }
        // Something outside the image of F_{p^2}.
        let z4 = f4.gen();
        assert!(embs[0].preimage(&z4).is_none());
    }
}
