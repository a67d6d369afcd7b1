//! Dense matrices over K[x] and K(x): Hermite normal form, kernels modulo a
//! polynomial, determinants, inverses.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::opcount::{self, Phase};
use crate::poly::UniPoly;
use crate::ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix<E> {
    rows: usize,
    cols: usize,
    a: Vec<UniPoly<E>>,
}

impl<E: Clone + PartialEq> PolyMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            a: vec![UniPoly::zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = UniPoly::one(f);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<UniPoly<E>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        PolyMatrix {
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[UniPoly<E>] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<UniPoly<E>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a.mul(f, &o[(k, j)]);
                    m[(i, j)] = m[(i, j)].add(f, &t);
                }
            }
        }
        m
    }

    pub fn map_entries(&self, g: impl Fn(&UniPoly<E>) -> UniPoly<E>) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(g).collect(),
        }
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|x| x.is_zero())
    }

    /// Stacks `o` below `self`.
    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut a = self.a.clone();
        a.extend(o.a.iter().cloned());
        PolyMatrix {
            rows: self.rows + o.rows,
            cols: self.cols,
            a,
        }
    }

    /// Places `o` to the right of `self`.
    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(o.row(i).iter().cloned());
                r
            })
            .collect();
        Self::from_rows(rows)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.a.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    /// row_i <- row_i - q * row_j
    fn axpy_row<F: Field<Elem = E>>(
        &mut self,
        f: &F,
        i: usize,
        q: &UniPoly<E>,
        j: usize,
        m: Option<&UniPoly<E>>,
    ) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self[(j, c)];
            if s.is_zero() {
                continue;
            }
            let mut v = self[(i, c)].sub(f, &q.mul(f, s));
            if let Some(m) = m {
                v = v.rem(f, m);
            }
            self[(i, c)] = v;
        }
    }

    fn scale_row<F: Field<Elem = E>>(&mut self, f: &F, i: usize, a: &E) {
        for c in 0..self.cols {
            self[(i, c)] = self[(i, c)].scale(f, a);
        }
    }
}

impl<E> std::ops::Index<(usize, usize)> for PolyMatrix<E> {
    type Output = UniPoly<E>;
    fn index(&self, (i, j): (usize, usize)) -> &UniPoly<E> {
        &self.a[i * self.cols + j]
    }
}

impl<E> std::ops::IndexMut<(usize, usize)> for PolyMatrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut UniPoly<E> {
        &mut self.a[i * self.cols + j]
    }
}

/// Row Hermite form: echelon with monic pivots and entries above each pivot
/// reduced modulo it. Zero rows are moved to the bottom. When `modulus` is
/// given all entries are reduced modulo it (the caller guarantees that
/// modulus * identity lies in the row module).
fn hermite_core<F: Field>(
    f: &F,
    m: &mut PolyMatrix<F::Elem>,
    mut u: Option<&mut PolyMatrix<F::Elem>>,
    modulus: Option<&UniPoly<F::Elem>>,
) -> Vec<usize> {
    let _g = opcount::enter(Phase::LinearAlgebra);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains.
        loop {
            let best = (r..m.rows)
                .filter(|&i| !m[(i, c)].is_zero())
                .min_by_key(|&i| m[(i, c)].len());
            let Some(b) = best else { break };
            m.swap_rows(r, b);
            if let Some(u) = u.as_deref_mut() {
                u.swap_rows(r, b);
            }
            let mut done = true;
            for i in r + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let q = m[(i, c)].divrem(f, &m[(r, c)]).0;
                m.axpy_row(f, i, &q, r, modulus);
                if let Some(u) = u.as_deref_mut() {
                    u.axpy_row(f, i, &q, r, None);
                }
                if !m[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[(r, c)].is_zero() {
            continue;
        }
        let li = f.inv(m[(r, c)].lead());
        m.scale_row(f, r, &li);
        if let Some(u) = u.as_deref_mut() {
            u.scale_row(f, r, &li);
        }
        for i in 0..r {
            let q = m[(i, c)].divrem(f, &m[(r, c)]).0;
            m.axpy_row(f, i, &q, r, modulus);
            if let Some(u) = u.as_deref_mut() {
                u.axpy_row(f, i, &q, r, None);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// (H, U) with H = U M in Hermite normal form and U unimodular.
pub fn hermite_normal_form<F: Field>(
    f: &F,
    m: &PolyMatrix<F::Elem>,
) -> (PolyMatrix<F::Elem>, PolyMatrix<F::Elem>) {
    let mut h = m.clone();
    let mut u = PolyMatrix::identity(f, m.rows);
    hermite_core(f, &mut h, Some(&mut u), None);
    (h, u)
}

/// Hermite normal form with zero rows dropped.
pub fn hnf<F: Field>(f: &F, m: &PolyMatrix<F::Elem>) -> PolyMatrix<F::Elem> {
    let mut h = m.clone();
    let piv = hermite_core(f, &mut h, None, None);
    truncate_rows(h, piv.len())
}

/// Hermite normal form of the module generated by the rows of `m` together
/// with `modulus` times the identity.
pub fn hnf_mod<F: Field>(
    f: &F,
    m: &PolyMatrix<F::Elem>,
    modulus: &UniPoly<F::Elem>,
) -> PolyMatrix<F::Elem> {
    let n = m.cols;
    let mut big = m.map_entries(|e| e.rem(f, modulus));
    let mut qi = PolyMatrix::zeros(n, n);
    for i in 0..n {
        qi[(i, i)] = modulus.monic(f);
    }
    big = big.vstack(&qi);
    let piv = hermite_core(f, &mut big, None, Some(modulus));
    // Reducing entries modulo the modulus can zero out a pivot equal to the
    // modulus, so modulus * identity is appended again before a final exact
    // pass that also restores canonical form.
    let mut h = truncate_rows(big, piv.len()).vstack(&qi);
    let piv = hermite_core(f, &mut h, None, None);

    truncate_rows(h, piv.len())
}

fn truncate_rows<E: Clone + PartialEq>(m: PolyMatrix<E>, r: usize) -> PolyMatrix<E> {
    let cols = m.cols;
    let mut a = m.a;
    a.truncate(r * cols);
    PolyMatrix { rows: r, cols, a }
}

/// Basis of {v in K[x]^n : v M = 0 mod Q}, in Hermite form.
pub fn kernel_mod_q<F: Field>(
    f: &F,
    m: &PolyMatrix<F::Elem>,
    q: &UniPoly<F::Elem>,
) -> PolyMatrix<F::Elem> {
    let n = m.rows;
    let k = m.cols;
    let q = q.monic(f);
    // Lattice rows (v M + Q w | v); kernel = rows with vanishing first block.
    let top = m
        .map_entries(|e| e.rem(f, &q))
        .hstack(&PolyMatrix::identity(f, n));
    let mut bottom = PolyMatrix::zeros(k, k + n);
    for i in 0..k {
        bottom[(i, i)] = q.clone();
    }
    let mut big = top.vstack(&bottom);
    let piv = hermite_core(f, &mut big, None, None);
    let rows: Vec<Vec<UniPoly<F::Elem>>> = piv
        .iter()
        .enumerate()
        .filter(|(_, &c)| c >= k)
        .map(|(i, _)| big.row(i)[k..].to_vec())
        .collect();
    PolyMatrix::from_rows(rows)
}

/// Whether `v` lies in the row module of the Hermite form `h`.
pub fn in_row_module<F: Field>(f: &F, h: &PolyMatrix<F::Elem>, v: &[UniPoly<F::Elem>]) -> bool {
    let mut v = v.to_vec();
    for i in 0..h.rows {
        let Some(c) = (0..h.cols).find(|&c| !h[(i, c)].is_zero()) else {
            continue;
        };
        let (q, _) = v[c].divrem(f, &h[(i, c)]);
        for j in 0..h.cols {
            v[j] = v[j].sub(f, &q.mul(f, &h[(i, j)]));
        }
        if !v[c].is_zero() {
            return false;
        }
    }
    v.iter().all(|x| x.is_zero())
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant<F: Field>(f: &F, m: &PolyMatrix<F::Elem>) -> UniPoly<F::Elem> {
    assert_eq!(m.rows, m.cols);
    let _g = opcount::enter(Phase::LinearAlgebra);
    let n = m.rows;
    let mut a = m.clone();
    let mut prev = UniPoly::one(f);
    let mut neg = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
            return UniPoly::zero();
        };
        if p != k {
            a.swap_rows(p, k);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[(i, j)]
                    .mul(f, &a[(k, k)])
                    .sub(f, &a[(i, k)].mul(f, &a[(k, j)]));
                a[(i, j)] = t.div_exact(f, &prev).expect("Bareiss division is exact");
            }
            a[(i, k)] = UniPoly::zero();
        }
        prev = a[(k, k)].clone();
    }
    if neg {
        prev.neg(f)
    } else {
        prev
    }
}

/// Dense matrix over K(x).
pub type RatMatrix<E> = Vec<Vec<RatFunc<E>>>;

/// Exact inverse over K(x) by Gauss-Jordan elimination.
pub fn inverse<F: Field>(f: &F, m: &RatMatrix<F::Elem>) -> Result<RatMatrix<F::Elem>> {
    let _g = opcount::enter(Phase::LinearAlgebra);
    let n = m.len();
    let zero = RatFunc::from_poly(f, UniPoly::zero());
    let one = RatFunc::from_poly(f, UniPoly::one(f));
    let mut a: Vec<Vec<RatFunc<F::Elem>>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n);
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !a[i][c].is_zero())
            .ok_or(Error::Singular)?;
        a.swap(c, p);
        let pinv = RatFunc::new(f, a[c][c].den.clone(), a[c][c].num.clone());
        for j in 0..2 * n {
            a[c][j] = a[c][j].mul(f, &pinv);
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let t = a[i][c].clone();
                for j in 0..2 * n {
                    let s = a[c][j].mul(f, &t);
                    a[i][j] = a[i][j].add(f, &s.neg(f));
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Lifts a polynomial matrix to K(x).
pub fn to_rat<F: Field>(f: &F, m: &PolyMatrix<F::Elem>) -> RatMatrix<F::Elem> {
    (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|e| RatFunc::from_poly(f, e.clone()))
                .collect()
        })
        .collect()
}

/// Row-reduces a matrix over K(x) and returns the top square block of a
/// K[x]-basis of its row module (scaled back by the common denominator).
///
/// Denominators are cleared first and the reduction is a Hermite form, which
/// yields a canonical echelon block.
pub fn row_reduce_fractions<F: Field>(f: &F, m: &RatMatrix<F::Elem>) -> Result<RatMatrix<F::Elem>> {
    let n = m.first().map_or(0, |r| r.len());
    let mut common = UniPoly::one(f);
    for r in m {
        for e in r {
            let g = common.gcd(f, &e.den);
            common = common.mul(f, &e.den.div_exact(f, &g).expect("gcd divides"));
        }
    }
    let rows: Vec<Vec<UniPoly<F::Elem>>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| e.num.mul(f, &common.div_exact(f, &e.den).expect("lcm")))
                .collect()
        })
        .collect();
    let h = hnf(f, &PolyMatrix::from_rows(rows));
    if h.rows < n {
        return Err(Error::RankDeficient);
    }
    Ok((0..n)
        .map(|i| {
            h.row(i)
                .iter()
                .map(|e| RatFunc::new(f, e.clone(), common.clone()))
                .collect()
        })
        .collect())
}

/// Characteristic polynomial coefficients [1, c_1, ..., c_n] of a square
/// matrix over a commutative ring, by Berkowitz's division-free algorithm.
/// `reduce` is applied after every product (e.g. truncation mod x^k).
pub fn berkowitz<F: Field>(
    f: &F,
    m: &PolyMatrix<F::Elem>,
    reduce: &dyn Fn(UniPoly<F::Elem>) -> UniPoly<F::Elem>,
) -> Vec<UniPoly<F::Elem>> {
    let _g = opcount::enter(Phase::LinearAlgebra);
    let n = m.rows;
    let mut v: Vec<UniPoly<F::Elem>> = vec![UniPoly::one(f)];
    for r in 0..n {
        // Leading principal submatrix of size r+1: A = [[M_r, C],[R, a]].
        let a = m[(r, r)].clone();
        let col: Vec<_> = (0..r).map(|i| m[(i, r)].clone()).collect();
        let row: Vec<_> = (0..r).map(|j| m[(r, j)].clone()).collect();
        // Toeplitz entries: 1, -a, -R C, -R M C, -R M^2 C, ...
        let mut t = vec![UniPoly::one(f), a.neg(f)];
        let mut cur = col.clone();
        for _ in 0..r {
            let s = row.iter().zip(&cur).fold(UniPoly::zero(), |acc, (x, y)| {
                acc.add(f, &reduce(x.mul(f, y)))
            });
            t.push(s.neg(f));
            cur = (0..r)
                .map(|i| {
                    (0..r).fold(UniPoly::zero(), |acc, j| {
                        acc.add(f, &reduce(m[(i, j)].mul(f, &cur[j])))
                    })
                })
                .collect();
        }
        // New vector = Toeplitz(t) * v, length r+2.
        let nv: Vec<_> = (0..r + 2)
            .map(|i| {
                (0..=i.min(v.len() - 1)).fold(UniPoly::zero(), |acc, j| {
                    if i - j < t.len() {
                        acc.add(f, &reduce(t[i - j].mul(f, &v[j])))
                    } else {
                        acc
                    }
                })
            })
            .collect();
        v = nv;
    }
    v
}

/// adj(M) * e_k computed from the Berkowitz coefficients, with every
/// product passed through `reduce`.
pub fn adjugate_column<F: Field>(
    f: &F,
    m: &PolyMatrix<F::Elem>,
    k: usize,
    reduce: &dyn Fn(UniPoly<F::Elem>) -> UniPoly<F::Elem>,
) -> Vec<UniPoly<F::Elem>> {
    let n = m.rows;
    let c = berkowitz(f, m, reduce);
    // adj(M) = (-1)^(n-1) (M^(n-1) + c_1 M^(n-2) + ... + c_(n-1) I)
    let e: Vec<UniPoly<F::Elem>> = (0..n)
        .map(|i| {
            if i == k {
                UniPoly::one(f)
            } else {
                UniPoly::zero()
            }
        })
        .collect();
    let mut v = e.clone();
    for ci in c.iter().take(n).skip(1) {
        let mv: Vec<_> = (0..n)
            .map(|i| {
                (0..n).fold(UniPoly::zero(), |acc, j| {
                    acc.add(f, &reduce(m[(i, j)].mul(f, &v[j])))
                })
            })
            .collect();
        v = mv
            .into_iter()
            .zip(&e)
            .map(|(x, ei)| x.add(f, &reduce(ci.mul(f, ei))))
            .collect();
    }
    if n % 2 == 0 {
        v.into_iter().map(|x| x.neg(f)).collect()
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }
    fn up(c: &[i64]) -> UniPoly<u64> {
        let f = fp();
        UniPoly::from_coeffs(&f, c.iter().map(|&v| f.from_i64(v)).collect())
    }
    fn mat(r: Vec<Vec<&[i64]>>) -> PolyMatrix<u64> {
        PolyMatrix::from_rows(
            r.into_iter()
                .map(|row| row.into_iter().map(up).collect())
                .collect(),
        )
    }

    #[test]
    fn hnf_examples() {
        let f = fp();
        let id = PolyMatrix::identity(&f, 2);
        assert_eq!(hermite_normal_form(&f, &id), (id.clone(), id.clone()));
        let m = mat(vec![vec![&[0, 1], &[1]], vec![&[], &[1]]]);
        let (h, u) = hermite_normal_form(&f, &m);
        assert_eq!(h, mat(vec![vec![&[0, 1], &[]], vec![&[], &[1]]]));
        assert_eq!(u.mul(&f, &m), h);
        let node = mat(vec![vec![&[0, 1], &[1]], vec![&[0, 1], &[-1]]]);
        // The entry above a unit pivot reduces to zero.
        assert_eq!(
            hnf(&f, &node),
            mat(vec![vec![&[0, 1], &[]], vec![&[], &[1]]])
        );
    }

    #[test]
    fn kernel_examples() {
        let f = fp();
        let id = PolyMatrix::identity(&f, 2);
        let x = up(&[0, 1]);
        assert_eq!(
            kernel_mod_q(&f, &id, &x),
            mat(vec![vec![&[0, 1], &[]], vec![&[], &[0, 1]]])
        );
        let d = mat(vec![vec![&[2], &[]], vec![&[], &[0, 0, 0, 2]]]);
        assert_eq!(
            kernel_mod_q(&f, &d, &x),
            mat(vec![vec![&[0, 1], &[]], vec![&[], &[1]]])
        );
        assert_eq!(kernel_mod_q(&f, &d, &up(&[1])), id);
    }

    #[test]
    fn determinant_examples() {
        let f = fp();
        assert_eq!(determinant(&f, &PolyMatrix::identity(&f, 3)), up(&[1]));
        assert_eq!(
            determinant(&f, &mat(vec![vec![&[0, 1], &[]], vec![&[], &[0, 0, 1]]])),
            up(&[0, 0, 0, 1])
        );
        assert_eq!(
            determinant(&f, &mat(vec![vec![&[0, 1], &[1]], vec![&[1], &[0, 1]]])),
            up(&[-1, 0, 1])
        );
    }

    #[test]
    fn inverse_examples() {
        let f = fp();
        let m = mat(vec![vec![&[], &[1]], vec![&[0, 1], &[]]]);
        let inv = inverse(&f, &to_rat(&f, &m)).unwrap();
        assert!(inv[0][0].is_zero());
        assert_eq!(inv[0][1], RatFunc::new(&f, up(&[1]), up(&[0, 1])));
        assert_eq!(inv[1][0], RatFunc::from_poly(&f, up(&[1])));
        let sing = mat(vec![vec![&[1], &[1]], vec![&[1], &[1]]]);
        assert_eq!(inverse(&f, &to_rat(&f, &sing)), Err(Error::Singular));
    }

    #[test]
    fn row_reduce_examples() {
        let f = fp();
        let m = to_rat(&f, &mat(vec![vec![&[1]], vec![&[0, 1]]]));
        let r = row_reduce_fractions(&f, &m).unwrap();
        assert_eq!(r, vec![vec![RatFunc::from_poly(&f, up(&[1]))]]);
        let z = to_rat(&f, &mat(vec![vec![&[], &[]]]));
        assert_eq!(row_reduce_fractions(&f, &z), Err(Error::RankDeficient));
    }

    #[test]
    fn berkowitz_adjugate() {
        let f = fp();
        let m = mat(vec![
            vec![&[1, 1], &[2], &[0, 3]],
            vec![&[5], &[0, 1], &[1]],
            vec![&[2, 2], &[7], &[1, 0, 1]],
        ]);
        let id = |p: UniPoly<u64>| p;
        let c = berkowitz(&f, &m, &id);
        assert_eq!(c[3].neg(&f), determinant(&f, &m));
        for k in 0..3 {
            let col = adjugate_column(&f, &m, k, &id);
            // M adj(M) e_k = det e_k
            let det = determinant(&f, &m);
            for i in 0..3 {
                let s = (0..3).fold(UniPoly::zero(), |a, j| {
                    a.add(&f, &m[(i, j)].mul(&f, &col[j]))
                });
                assert_eq!(s, if i == k { det.clone() } else { UniPoly::zero() });
            }
        }
    }

    fn arb_mat(n: usize) -> impl Strategy<Value = PolyMatrix<u64>> {
        prop::collection::vec(prop::collection::vec(0u64..10007, 0..3), n * n).prop_map(move |v| {
            let f = fp();
            PolyMatrix::from_rows(
                v.chunks(n)
                    .map(|r| {
                        r.iter()
                            .map(|c| UniPoly::from_coeffs(&f, c.clone()))
                            .collect()
                    })
                    .collect(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn hnf_invariants(m in arb_mat(3), u in arb_mat(3)) {
            let f = fp();
            let (h, t) = hermite_normal_form(&f, &m);
            prop_assert_eq!(t.mul(&f, &m), h.clone());
            prop_assert_eq!(determinant(&f, &t).degree(), Some(0));
            // Same module from a different generating set.
            let du = determinant(&f, &u);
            if du.degree() == Some(0) {
                prop_assert_eq!(hnf(&f, &u.mul(&f, &m)), hnf(&f, &m));
            }
            let d = determinant(&f, &m);
            if !d.is_zero() {
                let inv = inverse(&f, &to_rat(&f, &m)).unwrap();
                for i in 0..3 {
                    for j in 0..3 {
                        let mut s = RatFunc::from_poly(&f, UniPoly::zero());
                        for k in 0..3 {
                            s = s.add(&f, &inv[i][k].mul(&f, &RatFunc::from_poly(&f, m[(k, j)].clone())));
                        }
                        let want = if i == j { UniPoly::one(&f) } else { UniPoly::zero() };
                        prop_assert_eq!(s.num, want);
                    }
                }
            }
        }

        #[test]
        fn kernel_invariants(m in arb_mat(3), q in prop::collection::vec(0u64..10007, 1..4)) {
            let f = fp();
            let q = UniPoly::from_coeffs(&f, q).shift(&f, 1).add(&f, &UniPoly::one(&f));
            let k = kernel_mod_q(&f, &m, &q);
            prop_assert_eq!(k.rows(), 3);
            let prod = k.mul(&f, &m);
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert!(prod[(i, j)].rem(&f, &q).is_zero());
                }
                let mut e = vec![UniPoly::zero(); 3];
                e[i] = q.monic(&f);
                prop_assert!(in_row_module(&f, &k, &e));
            }
        }
    }
}
