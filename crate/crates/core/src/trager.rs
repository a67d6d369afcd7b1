//! Integral closure by repeated idealizers of trace radicals.

use crate::basis::{from_module_rows, square_factors, IntegralBasis};
use crate::bivariate::{reduce_mod_f, BiPoly};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::opcount::{self, Phase};
use crate::poly::factor::square_multiplicity_factors;
use crate::poly::UniPoly;
use crate::polymat::{determinant, hnf, inverse, kernel_mod_q, to_rat, PolyMatrix, RatMatrix};

type P = UniPoly<u64>;

/// A K[x]-order given by rows of y-coordinates: w_i = Σ_j a[i][j] y^j / den.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderBasis {
    pub a: PolyMatrix<u64>,
    pub den: P,
    /// Disc(f) divided by the squares of all determinants so far.
    pub disc: P,
}

impl OrderBasis {
    pub fn power(fld: &PrimeField, n: usize, disc: P) -> Self {
        OrderBasis {
            a: PolyMatrix::identity(fld, n),
            den: UniPoly::one(fld),
            disc,
        }
    }
}

/// One pass of the main loop.
#[derive(Debug, Clone)]
pub struct Iteration {
    pub q: P,
    pub det: P,
    pub before: OrderBasis,
    pub after: OrderBasis,
}

/// tr(y^k) for k < 2n - 1, extending Newton's identities past n.
fn power_sums_long(fld: &PrimeField, f: &BiPoly<u64>) -> Vec<P> {
    let n = f.deg_y().unwrap();
    let mut s = crate::bivariate::power_sums(fld, f);
    for k in n..(2 * n).saturating_sub(1) {
        let mut acc = UniPoly::zero();
        for i in 1..=n {
            acc = acc.add(fld, &f.coeff(n - i).mul(fld, &s[k - i]));
        }
        s.push(acc.neg(fld));
    }
    s
}

/// The matrix (tr(w_i w_j)); fails with NonIntegralTrace if an entry is
/// not a polynomial.
pub fn trace_matrix(fld: &PrimeField, f: &BiPoly<u64>, v: &OrderBasis) -> Result<PolyMatrix<u64>> {
    let n = v.a.rows();
    let s = power_sums_long(fld, f);
    let mut hankel = PolyMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            hankel[(i, j)] = s[i + j].clone();
        }
    }
    let m = v.a.mul(fld, &hankel).mul(fld, &v.a.transpose());
    let d2 = v.den.square(fld);
    let mut out = PolyMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = m[(i, j)]
                .div_exact(fld, &d2)
                .ok_or(Error::NonIntegralTrace)?;
        }
    }
    Ok(out)
}

/// Rows (coordinates in V) of a basis of the Q-trace radical
/// {u ∈ V : Q | tr(u w) for all w ∈ V}.
pub fn q_trace_radical(
    fld: &PrimeField,
    f: &BiPoly<u64>,
    v: &OrderBasis,
    q: &P,
) -> Result<PolyMatrix<u64>> {
    let m = trace_matrix(fld, f, v)?;
    Ok(kernel_mod_q(fld, &m, q))
}

/// Clears denominators: returns (N, c) with m = N / c, c monic.
fn clear(fld: &PrimeField, m: &RatMatrix<u64>) -> (PolyMatrix<u64>, P) {
    let mut c = UniPoly::one(fld);
    for r in m {
        for e in r {
            let g = c.gcd(fld, &e.den);
            c = c.mul(fld, &e.den.div_exact(fld, &g).unwrap());
        }
    }
    let rows = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| e.num.mul(fld, &c.div_exact(fld, &e.den).unwrap()))
                .collect()
        })
        .collect();
    (PolyMatrix::from_rows(rows), c)
}

fn mul_elems(fld: &PrimeField, f: &BiPoly<u64>, a: &[P], b: &[P]) -> Vec<P> {
    let n = a.len();
    let p = BiPoly::from_coeffs(a.to_vec()).mul(fld, &BiPoly::from_coeffs(b.to_vec()));
    let r = reduce_mod_f(fld, &p, f);
    (0..n).map(|j| r.coeff(j)).collect()
}

/// The idealizer {u : u J ⊆ J} of the ideal J (rows = coordinates in V).
/// Returns the new order and the determinant of the top block M̂, so that
/// Disc(V̂) = Disc(V) / det².
pub fn idealizer(
    fld: &PrimeField,
    f: &BiPoly<u64>,
    j: &PolyMatrix<u64>,
    v: &OrderBasis,
) -> Result<(OrderBasis, P)> {
    let _g = opcount::enter(Phase::LinearAlgebra);
    let n = v.a.rows();
    if j.rows() != n {
        return Err(Error::RankDeficient);
    }
    // Generators of J in y-coordinates over den.
    let b = j.mul(fld, &v.a);
    let (binv, c) = clear(
        fld,
        &inverse(fld, &to_rat(fld, &b)).map_err(|_| Error::RankDeficient)?,
    );
    let dc = v.den.mul(fld, &c);
    // S stacks, for each generator m_i, the transpose of the matrix whose
    // row k is w_k m_i in J-coordinates.
    let mut s = PolyMatrix::zeros(n * n, n);
    for i in 0..n {
        for k in 0..n {
            let prod = mul_elems(fld, f, v.a.row(k), b.row(i));
            for l in 0..n {
                let mut acc = UniPoly::zero();
                for m in 0..n {
                    acc = acc.add(fld, &prod[m].mul(fld, &binv[(m, l)]));
                }
                s[(i * n + l, k)] = acc.div_exact(fld, &dc).ok_or_else(|| {
                    Error::InternalInvariantBroken("radical is not an ideal of the order".into())
                })?;
            }
        }
    }
    let h = hnf(fld, &s);
    if h.rows() != n {
        return Err(Error::RankDeficient);
    }
    let det = (0..n).fold(UniPoly::one(fld), |acc, i| acc.mul(fld, &h[(i, i)]));
    // New basis: (H^{-1})^T A / den.
    let (hinv, hc) = clear(fld, &inverse(fld, &to_rat(fld, &h))?);
    let a_new = hinv.transpose().mul(fld, &v.a);
    let den_new = v.den.mul(fld, &hc);
    let disc = v.disc.div_exact(fld, &det.square(fld)).ok_or_else(|| {
        Error::InternalInvariantBroken(
            "determinant squared does not divide the discriminant".into(),
        )
    })?;
    Ok((simplify(fld, a_new, den_new, disc), det))
}

/// Hermite form of the rows and removal of the common content.
fn simplify(fld: &PrimeField, a: PolyMatrix<u64>, den: P, disc: P) -> OrderBasis {
    let n = a.rows();
    let mut a = hnf(fld, &a);
    let mut g = den.clone();
    for i in 0..n {
        for e in a.row(i) {
            g = g.gcd(fld, e);
        }
    }
    let g = g.monic(fld);
    let den = den.div_exact(fld, &g).unwrap();
    a = a.map_entries(|e| e.div_exact(fld, &g).unwrap());
    let lc = fld.inv(den.lead());
    OrderBasis {
        a: a.map_entries(|e| e.scale(fld, &lc)),
        den: den.scale(fld, &lc),
        disc,
    }
}

/// Trager's algorithm. Returns the integral basis and the iteration log.
pub fn trager_integral_basis(
    fld: &PrimeField,
    f: &BiPoly<u64>,
) -> Result<(IntegralBasis, Vec<Iteration>)> {
    let n = f.deg_y().ok_or(Error::NotMonic)?;
    fld.check_curve_degree(n)?;
    let (disc, sq) = square_factors(fld, f)?;
    let guard = disc.degree().unwrap_or(0) / 2 + 1;
    let mut v = OrderBasis::power(fld, n, disc);
    let mut log = Vec::new();
    loop {
        let q = {
            let _g = opcount::enter(Phase::Factorization);
            square_multiplicity_factors(fld, &v.disc)
                .iter()
                .fold(UniPoly::one(fld), |acc, (phi, _)| acc.mul(fld, phi))
        };
        if q.degree() == Some(0) {
            break;
        }
        if log.len() >= guard {
            return Err(Error::InternalInvariantBroken(
                "Trager iteration did not terminate".into(),
            ));
        }
        opcount::count_iteration();
        let j = q_trace_radical(fld, f, &v, &q)?;
        let (w, det) = idealizer(fld, f, &j, &v)?;
        let unit = det.degree() == Some(0);
        log.push(Iteration {
            q,
            det,
            before: v,
            after: w.clone(),
        });
        v = w;
        if unit {
            break;
        }
    }
    let factors: Vec<P> = sq.into_iter().map(|(phi, _)| phi).collect();
    let rows = PolyMatrix::from_rows(
        (0..n)
            .map(|i| (0..n).rev().map(|c| v.a[(i, c)].clone()).collect())
            .collect(),
    );
    Ok((from_module_rows(fld, n, &factors, &v.den, &rows)?, log))
}

/// det of the trace matrix, i.e. the discriminant of the order.
pub fn order_discriminant(fld: &PrimeField, f: &BiPoly<u64>, v: &OrderBasis) -> Result<P> {
    Ok(determinant(fld, &trace_matrix(fld, f, v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivariate::discriminant_y;

    fn fp() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }
    fn bp(t: &[(usize, usize, i64)]) -> BiPoly<u64> {
        let f = fp();
        BiPoly::from_terms(
            &f,
            &t.iter()
                .map(|&(i, j, c)| (i, j, f.from_i64(c)))
                .collect::<Vec<_>>(),
        )
    }
    fn up(c: &[i64]) -> P {
        let f = fp();
        UniPoly::from_coeffs(&f, c.iter().map(|&v| f.from_i64(v)).collect())
    }
    fn power(f: &BiPoly<u64>) -> OrderBasis {
        let fld = fp();
        OrderBasis::power(&fld, f.deg_y().unwrap(), discriminant_y(&fld, f).unwrap())
    }

    #[test]
    fn trace_matrices() {
        let fld = fp();
        let f = bp(&[(0, 2, 1), (3, 0, -1)]);
        let m = trace_matrix(&fld, &f, &power(&f)).unwrap();
        assert_eq!(
            m.to_rows(),
            vec![vec![up(&[2]), up(&[])], vec![up(&[]), up(&[0, 0, 0, 2])]]
        );
        let f = bp(&[(0, 2, 1), (1, 0, -1)]);
        let m = trace_matrix(&fld, &f, &power(&f)).unwrap();
        assert_eq!(m[(1, 1)], up(&[0, 2]));
        let f = bp(&[(0, 1, 1), (2, 0, 1)]);
        assert_eq!(
            trace_matrix(&fld, &f, &power(&f)).unwrap().to_rows(),
            vec![vec![up(&[1])]]
        );
        // A non-integral "basis" is detected.
        let mut v = power(&bp(&[(0, 2, 1), (1, 0, -1)]));
        v.den = up(&[0, 1]);
        assert_eq!(
            trace_matrix(&fld, &bp(&[(0, 2, 1), (1, 0, -1)]), &v),
            Err(Error::NonIntegralTrace)
        );
    }

    #[test]
    fn radical_and_idealizer_of_cusp() {
        let fld = fp();
        let f = bp(&[(0, 2, 1), (3, 0, -1)]);
        let v = power(&f);
        let j = q_trace_radical(&fld, &f, &v, &up(&[0, 1])).unwrap();
        assert_eq!(
            j.to_rows(),
            vec![vec![up(&[0, 1]), up(&[])], vec![up(&[]), up(&[1])]]
        );
        let (w, det) = idealizer(&fld, &f, &j, &v).unwrap();
        assert_eq!(det, up(&[0, 1]));
        assert_eq!(w.den, up(&[0, 1]));
        assert_eq!(
            w.a.to_rows(),
            vec![vec![up(&[0, 1]), up(&[])], vec![up(&[]), up(&[1])]]
        );
        // J = V gives V back.
        let (w, det) = idealizer(&fld, &f, &PolyMatrix::identity(&fld, 2), &v).unwrap();
        assert_eq!((w.a, w.den, det), (v.a.clone(), v.den.clone(), up(&[1])));
        // The node: <x, y> has idealizer <1, y/x>.
        let f = bp(&[(0, 2, 1), (2, 0, -1)]);
        let v = power(&f);
        let j = q_trace_radical(&fld, &f, &v, &up(&[0, 1])).unwrap();
        let (w, _) = idealizer(&fld, &f, &j, &v).unwrap();
        assert_eq!(w.den, up(&[0, 1]));
    }

    #[test]
    fn iteration_counts() {
        let fld = fp();
        let (b, log) = trager_integral_basis(&fld, &bp(&[(0, 2, 1), (3, 0, -1)])).unwrap();
        assert_eq!(log.len(), 1);
        assert_eq!(b.exponents_at(&up(&[0, 1])), vec![0, 1]);
        let (b, log) = trager_integral_basis(&fld, &bp(&[(0, 2, 1), (1, 0, -1)])).unwrap();
        assert!(log.is_empty());
        assert_eq!(b, IntegralBasis::power(&fld, 2));
        let f = bp(&[(0, 2, 1), (5, 0, -1)]);
        let (b, log) = trager_integral_basis(&fld, &f).unwrap();
        assert_eq!(log.len(), 2);
        assert_eq!(log[0].after.den, up(&[0, 1]));
        assert_eq!(b.exponents_at(&up(&[0, 1])), vec![0, 2]);
        for it in &log {
            let lhs = order_discriminant(&fld, &f, &it.after)
                .unwrap()
                .mul(&fld, &it.det.square(&fld));
            assert_eq!(lhs, order_discriminant(&fld, &f, &it.before).unwrap());
            assert_eq!(
                order_discriminant(&fld, &f, &it.after).unwrap(),
                it.after.disc
            );
        }
    }

    #[test]
    fn closed_forms() {
        let fld = fp();
        for (n, m) in [(3usize, 2usize), (3, 4), (4, 5), (5, 3), (3, 7)] {
            let f = bp(&[(0, n, 1), (m, 0, -1)]);
            let (b, _) = trager_integral_basis(&fld, &f).unwrap();
            let want: Vec<usize> = (0..n).map(|i| i * m / n).collect();
            assert_eq!(b.exponents_at(&up(&[0, 1])), want, "y^{n} - x^{m}");
        }
    }
}
