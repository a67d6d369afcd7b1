//! Polynomials in K[x][y]: arithmetic, resultants, reduction modulo a monic
//! curve equation, traces and characteristic polynomials.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::UniPoly;
use crate::ratfunc::RatFunc;

/// Dense polynomial in y whose coefficients are polynomials in x.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiPoly<E> {
    c: Vec<UniPoly<E>>,
}

/// An element of K(C) written p(x, y) / d(x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement<E> {
    pub num: BiPoly<E>,
    pub den: UniPoly<E>,
}

impl<E: Clone + PartialEq> BiPoly<E> {
    pub fn from_coeffs(mut c: Vec<UniPoly<E>>) -> Self {
        while c.last().is_some_and(|u| u.is_zero()) {
            c.pop();
        }
        BiPoly { c }
    }

    /// Builds a polynomial from sparse terms (x-exponent, y-exponent, coefficient).
    pub fn from_terms<F: Field<Elem = E>>(f: &F, terms: &[(usize, usize, E)]) -> Self {
        let ny = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let mut rows: Vec<Vec<E>> = vec![Vec::new(); ny];
        for (i, j, c) in terms {
            let r = &mut rows[*j];
            if r.len() <= *i {
                r.resize(i + 1, f.zero());
            }
            r[*i] = f.add(&r[*i], c);
        }
        Self::from_coeffs(
            rows.into_iter()
                .map(|r| UniPoly::from_coeffs(f, r))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        BiPoly { c: Vec::new() }
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        BiPoly {
            c: vec![UniPoly::one(f)],
        }
    }

    /// y^k.
    pub fn y_pow<F: Field<Elem = E>>(f: &F, k: usize) -> Self {
        let mut c = vec![UniPoly::zero(); k];
        c.push(UniPoly::one(f));
        BiPoly { c }
    }

    /// A polynomial in x only.
    pub fn from_x(a: UniPoly<E>) -> Self {
        Self::from_coeffs(vec![a])
    }

    /// A polynomial in y with constant coefficients.
    pub fn from_y_poly<F: Field<Elem = E>>(f: &F, a: &UniPoly<E>) -> Self {
        Self::from_coeffs(
            a.coeffs()
                .iter()
                .map(|c| UniPoly::constant(f, c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[UniPoly<E>] {
        &self.c
    }

    pub fn coeff(&self, j: usize) -> UniPoly<E> {
        self.c.get(j).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.c.iter().filter_map(|u| u.degree()).max().unwrap_or(0)
    }

    pub fn is_monic_y<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.c.last().is_some_and(|u| u.is_one(f))
    }

    /// Sparse terms (i, j, c) sorted by (j, i).
    pub fn terms<F: Field<Elem = E>>(&self, f: &F) -> Vec<(usize, usize, E)> {
        let mut out = Vec::new();
        for (j, u) in self.c.iter().enumerate() {
            for (i, a) in u.coeffs().iter().enumerate() {
                if !f.is_zero(a) {
                    out.push((i, j, a.clone()));
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|j| self.coeff(j).add(f, &o.coeff(j))).collect())
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|j| self.coeff(j).sub(f, &o.coeff(j))).collect())
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        BiPoly {
            c: self.c.iter().map(|u| u.neg(f)).collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![UniPoly::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(f, &a.mul(f, b));
            }
        }
        Self::from_coeffs(c)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, k: usize) -> Self {
        let mut acc = Self::one(f);
        for _ in 0..k {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Multiplies every coefficient by a polynomial in x.
    pub fn mul_x_poly<F: Field<Elem = E>>(&self, f: &F, a: &UniPoly<E>) -> Self {
        Self::from_coeffs(self.c.iter().map(|u| u.mul(f, a)).collect())
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, a: &E) -> Self {
        Self::from_coeffs(self.c.iter().map(|u| u.scale(f, a)).collect())
    }

    /// Exact division of every coefficient by a polynomial in x.
    pub fn div_x_poly_exact<F: Field<Elem = E>>(&self, f: &F, a: &UniPoly<E>) -> Option<Self> {
        let c: Option<Vec<_>> = self.c.iter().map(|u| u.div_exact(f, a)).collect();
        Some(Self::from_coeffs(c?))
    }

    /// Reduces every coefficient modulo a polynomial in x.
    pub fn rem_x_poly<F: Field<Elem = E>>(&self, f: &F, a: &UniPoly<E>) -> Self {
        Self::from_coeffs(self.c.iter().map(|u| u.rem(f, a)).collect())
    }

    /// Truncates every coefficient modulo x^k.
    pub fn truncate_x<F: Field<Elem = E>>(&self, f: &F, k: usize) -> Self {
        Self::from_coeffs(self.c.iter().map(|u| u.truncate(k).normalized(f)).collect())
    }

    /// Minimum x-adic valuation over all coefficients.
    pub fn valuation_x<F: Field<Elem = E>>(&self, f: &F) -> Option<usize> {
        self.c.iter().filter_map(|u| u.valuation(f)).min()
    }

    /// Divides by x^k, assuming every coefficient is divisible.
    pub fn shift_down_x(&self, k: usize) -> Self {
        Self::from_coeffs(
            self.c
                .iter()
                .map(|u| {
                    if u.is_zero() {
                        UniPoly::zero()
                    } else {
                        UniPoly::from_raw(u.coeffs()[k..].to_vec())
                    }
                })
                .collect(),
        )
    }

    pub fn derivative_y<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Self::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, u)| u.scale(f, &f.from_u64(j as u64)))
                .collect(),
        )
    }

    /// Evaluation at x = a.
    pub fn eval_x<F: Field<Elem = E>>(&self, f: &F, a: &E) -> UniPoly<E> {
        UniPoly::from_coeffs(f, self.c.iter().map(|u| u.eval(f, a)).collect())
    }

    /// Substitutes y = a(x).
    pub fn eval_y_poly<F: Field<Elem = E>>(&self, f: &F, a: &UniPoly<E>) -> UniPoly<E> {
        let mut acc = UniPoly::zero();
        for u in self.c.iter().rev() {
            acc = acc.mul(f, a).add(f, u);
        }
        acc
    }

    /// f(x + a, y).
    pub fn shift_x<F: Field<Elem = E>>(&self, f: &F, a: &E) -> Self {
        Self::from_coeffs(self.c.iter().map(|u| u.taylor_shift(f, a)).collect())
    }

    /// Applies a coefficient map into another field.
    pub fn map<G: Field>(&self, g: &G, m: impl Fn(&E) -> G::Elem) -> BiPoly<G::Elem> {
        BiPoly::from_coeffs(self.c.iter().map(|u| u.map(g, &m)).collect())
    }

    /// Coefficients as polynomials in y (index = x-degree).
    pub fn transpose<F: Field<Elem = E>>(&self, f: &F) -> Vec<UniPoly<E>> {
        let dx = self.deg_x();
        if self.is_zero() {
            return Vec::new();
        }
        (0..=dx)
            .map(|i| UniPoly::from_coeffs(f, self.c.iter().map(|u| u.coeff(f, i)).collect()))
            .collect()
    }
}

/// g mod f for f monic in y.
pub fn reduce_mod_f<F: Field>(
    fld: &F,
    g: &BiPoly<F::Elem>,
    f: &BiPoly<F::Elem>,
) -> BiPoly<F::Elem> {
    assert!(f.is_monic_y(fld), "reduction needs a monic modulus");
    let n = f.deg_y().unwrap();
    let mut c = g.c.clone();
    while c.len() > n {
        let top = c.len() - 1;
        let lead = c.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        for j in 0..n {
            let t = lead.mul(fld, &f.c[j]);
            let idx = top - n + j;
            c[idx] = c[idx].sub(fld, &t);
        }
    }
    BiPoly::from_coeffs(c)
}

/// Pseudo-remainder of a by b over K[x]: lc(b)^(da-db+1) a mod b.
fn prem<F: Field>(f: &F, a: &BiPoly<F::Elem>, b: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
    let db = b.deg_y().unwrap();
    let lb = b.c[db].clone();
    let mut r = a.c.clone();
    let mut k = a.c.len() as isize - db as isize;
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let lr = r[top].clone();
        for u in r.iter_mut() {
            *u = u.mul(f, &lb);
        }
        for j in 0..db {
            let idx = top - db + j;
            r[idx] = r[idx].sub(f, &lr.mul(f, &b.c[j]));
        }
        r.pop();
        while r.last().is_some_and(|u| u.is_zero()) {
            r.pop();
        }
        k -= 1;
    }
    let mut out = BiPoly::from_coeffs(r);
    // Steps skipped by zero leading terms still count in the exponent.
    if k > 0 {
        let extra = lb.pow(f, k as u64);
        out = out.mul_x_poly(f, &extra);
    }
    out
}

/// Res_y(a, b) by the subresultant algorithm over K[x].
pub fn resultant_y<F: Field>(f: &F, a: &BiPoly<F::Elem>, b: &BiPoly<F::Elem>) -> UniPoly<F::Elem> {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = false;
    let (da, db) = (a.deg_y().unwrap(), b.deg_y().unwrap());
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            s = !s;
        }
    }
    if b.deg_y() == Some(0) {
        let r = b.c[0].pow(f, a.deg_y().unwrap() as u64);
        return if s { r.neg(f) } else { r };
    }
    let mut g = UniPoly::one(f);
    let mut h = UniPoly::one(f);
    loop {
        let (da, db) = (a.deg_y().unwrap(), b.deg_y().unwrap());
        let delta = (da - db) as u64;
        if da % 2 == 1 && db % 2 == 1 {
            s = !s;
        }
        let r = prem(f, &a, &b);
        a = b;
        if r.is_zero() {
            return UniPoly::zero();
        }
        let div = g.mul(f, &h.pow(f, delta));
        b = r
            .div_x_poly_exact(f, &div)
            .expect("subresultant division is exact");
        g = a.c.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(f, delta)
                .div_exact(f, &h.pow(f, delta - 1))
                .expect("exact"),
        };
        if b.deg_y() == Some(0) {
            break;
        }
    }
    let da = a.deg_y().unwrap() as u64;
    let lb = b.c[0].clone();
    let r = lb
        .pow(f, da)
        .div_exact(f, &h.pow(f, da - 1))
        .expect("exact");
    if s {
        r.neg(f)
    } else {
        r
    }
}

/// Disc_y(f) = (-1)^(n(n-1)/2) Res_y(f, f_y) for f monic in y.
pub fn discriminant_y<F: Field>(f: &F, a: &BiPoly<F::Elem>) -> Result<UniPoly<F::Elem>> {
    if !a.is_monic_y(f) {
        return Err(Error::NotMonic);
    }
    let n = a.deg_y().unwrap();
    if n == 0 {
        return Ok(UniPoly::one(f));
    }
    let r = resultant_y(f, a, &a.derivative_y(f));
    if r.is_zero() {
        return Err(Error::SquarefreeViolation);
    }
    Ok(if (n * (n - 1) / 2) % 2 == 1 {
        r.neg(f)
    } else {
        r
    })
}

/// Power sums s_0 .. s_(n-1) of the roots of a monic f (Newton identities).
pub fn power_sums<F: Field>(fld: &F, f: &BiPoly<F::Elem>) -> Vec<UniPoly<F::Elem>> {
    let n = f.deg_y().unwrap();
    let a = |i: usize| f.coeff(i);
    let mut s = vec![UniPoly::constant(fld, fld.from_u64(n as u64))];
    for k in 1..n {
        let mut acc = a(n - k).scale(fld, &fld.from_u64(k as u64));
        for i in 1..k {
            acc = acc.add(fld, &a(n - i).mul(fld, &s[k - i]));
        }
        s.push(acc.neg(fld));
    }
    s
}

/// Trace of a polynomial element p(x, y) of K[x][y]/(f), using precomputed power sums.
pub fn trace_poly<F: Field>(
    fld: &F,
    p: &BiPoly<F::Elem>,
    f: &BiPoly<F::Elem>,
    sums: &[UniPoly<F::Elem>],
) -> UniPoly<F::Elem> {
    let r = reduce_mod_f(fld, p, f);
    let mut acc = UniPoly::zero();
    for (j, c) in r.coeffs().iter().enumerate() {
        acc = acc.add(fld, &c.mul(fld, &sums[j]));
    }
    acc
}

/// tr(b) as an element of K(x).
pub fn trace_of<F: Field>(
    fld: &F,
    b: &FieldElement<F::Elem>,
    f: &BiPoly<F::Elem>,
) -> RatFunc<F::Elem> {
    let sums = power_sums(fld, f);
    RatFunc::new(fld, trace_poly(fld, &b.num, f, &sums), b.den.clone())
}

/// Characteristic polynomial of b over K(x), lowest degree first; the
/// leading coefficient is 1.
///
/// Computed as Res_y(f, d T - p) / d^n, evaluated at n + 1 values of T and
/// interpolated.
pub fn charpoly_of_element<F: Field>(
    fld: &F,
    b: &FieldElement<F::Elem>,
    f: &BiPoly<F::Elem>,
) -> Vec<RatFunc<F::Elem>> {
    let n = f.deg_y().unwrap();
    let p = reduce_mod_f(fld, &b.num, f);
    let d = &b.den;
    let pts: Vec<F::Elem> = (0..=n).map(|t| fld.from_u64(t as u64)).collect();
    let vals: Vec<UniPoly<F::Elem>> = pts
        .iter()
        .map(|t| {
            let g = BiPoly::from_x(d.scale(fld, t)).sub(fld, &p);
            resultant_y(fld, f, &g)
        })
        .collect();
    // Lagrange interpolation in T with K[x] coefficients.
    let mut coeffs = vec![UniPoly::zero(); n + 1];
    for (i, ti) in pts.iter().enumerate() {
        let mut basis = UniPoly::one(fld);
        let mut denom = fld.one();
        for (j, tj) in pts.iter().enumerate() {
            if i != j {
                basis = basis.mul(fld, &UniPoly::linear(fld, tj));
                denom = fld.mul(&denom, &fld.sub(ti, tj));
            }
        }
        let w = fld.inv(&denom);
        for (k, c) in basis.coeffs().iter().enumerate() {
            let t = vals[i].scale(fld, &fld.mul(c, &w));
            coeffs[k] = coeffs[k].add(fld, &t);
        }
    }
    let dn = d.pow(fld, n as u64);
    coeffs
        .into_iter()
        .map(|c| RatFunc::new(fld, c, dn.clone()))
        .collect()
}

/// Whether b is integral over K[x]: its characteristic polynomial has
/// coefficients in K[x].
pub fn is_integral<F: Field>(fld: &F, b: &FieldElement<F::Elem>, f: &BiPoly<F::Elem>) -> bool {
    charpoly_of_element(fld, b, f)
        .iter()
        .all(|c| c.is_polynomial(fld))
}

/// f(x + a, y) over a field containing a, given the embedding of the
/// coefficients.
pub fn shift_origin<F: Field, G: Field>(
    g: &G,
    f: &BiPoly<F::Elem>,
    lift: impl Fn(&F::Elem) -> G::Elem,
    a: &G::Elem,
) -> BiPoly<G::Elem> {
    f.map(g, lift).shift_x(g, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

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
    fn up(c: &[i64]) -> UniPoly<u64> {
        let f = fp();
        UniPoly::from_coeffs(&f, c.iter().map(|&v| f.from_i64(v)).collect())
    }
    fn cusp() -> BiPoly<u64> {
        bp(&[(0, 2, 1), (3, 0, -1)])
    }

    #[test]
    fn resultant_examples() {
        let f = fp();
        // Sylvester determinant of y^2 - x^3 and 2y is 4 * (-x^3).
        assert_eq!(
            resultant_y(&f, &cusp(), &bp(&[(0, 1, 2)])),
            up(&[0, 0, 0, -4])
        );
        // Res(y - a(x), g) = g(x, a(x)).
        let g = bp(&[(0, 3, 1), (1, 1, 2), (0, 0, 5)]);
        let a = up(&[1, 2, 3]);
        let lin = BiPoly::from_coeffs(vec![a.neg(&f), UniPoly::one(&f)]);
        assert_eq!(resultant_y(&f, &lin, &g), g.eval_y_poly(&f, &a));
        let d = bp(&[(0, 1, 1), (1, 0, -1)]);
        assert!(resultant_y(&f, &d, &d).is_zero());
    }

    #[test]
    fn discriminant_examples() {
        let f = fp();
        assert_eq!(discriminant_y(&f, &cusp()).unwrap(), up(&[0, 0, 0, 4]));
        assert_eq!(
            discriminant_y(&f, &bp(&[(0, 2, 1), (1, 0, -1)])).unwrap(),
            up(&[0, 4])
        );
        let sq = bp(&[(0, 1, 1), (1, 0, -1)]).pow(&f, 2);
        assert_eq!(discriminant_y(&f, &sq), Err(Error::SquarefreeViolation));
    }

    #[test]
    fn reduction_examples() {
        let f = fp();
        assert!(reduce_mod_f(&f, &cusp(), &cusp()).is_zero());
        assert_eq!(
            reduce_mod_f(&f, &bp(&[(0, 2, 1)]), &cusp()),
            bp(&[(3, 0, 1)])
        );
        assert_eq!(
            reduce_mod_f(&f, &bp(&[(0, 3, 1)]), &cusp()),
            bp(&[(3, 1, 1)])
        );
    }

    #[test]
    fn charpoly_examples() {
        let f = fp();
        let y = FieldElement {
            num: bp(&[(0, 1, 1)]),
            den: UniPoly::one(&f),
        };
        let cp = charpoly_of_element(&f, &y, &cusp());
        assert_eq!(cp[0], RatFunc::from_poly(&f, up(&[0, 0, 0, -1])));
        assert!(cp[1].is_zero());
        assert_eq!(cp[2], RatFunc::from_poly(&f, UniPoly::one(&f)));
        let yx = FieldElement {
            num: bp(&[(0, 1, 1)]),
            den: up(&[0, 1]),
        };
        let cp = charpoly_of_element(&f, &yx, &cusp());
        assert_eq!(cp[0], RatFunc::from_poly(&f, up(&[0, -1])));
        assert!(is_integral(&f, &yx, &cusp()));
        // y/x is not integral on y^2 = x.
        assert!(!is_integral(&f, &yx, &bp(&[(0, 2, 1), (1, 0, -1)])));
        let c = FieldElement {
            num: bp(&[(0, 0, 3)]),
            den: UniPoly::one(&f),
        };
        let cp = charpoly_of_element(&f, &c, &cusp());
        // (T - 3)^2 = T^2 - 6T + 9
        assert_eq!(cp[0].num, up(&[9]));
        assert_eq!(cp[1].num, up(&[-6]));
    }

    #[test]
    fn trace_examples() {
        let f = fp();
        let el = |b: BiPoly<u64>| FieldElement {
            num: b,
            den: UniPoly::one(&f),
        };
        assert_eq!(trace_of(&f, &el(BiPoly::one(&f)), &cusp()).num, up(&[2]));
        assert!(trace_of(&f, &el(bp(&[(0, 1, 1)])), &cusp()).is_zero());
        assert_eq!(
            trace_of(&f, &el(bp(&[(0, 2, 1)])), &cusp()).num,
            up(&[0, 0, 0, 2])
        );
    }

    #[test]
    fn shift_examples() {
        let f = fp();
        let g = bp(&[(0, 2, 1), (3, 0, -1), (2, 0, 3), (1, 0, -3), (0, 0, 1)]); // y^2 - (x-1)^3
        assert_eq!(shift_origin::<PrimeField, _>(&f, &g, |c| *c, &1), cusp());
        assert_eq!(g.shift_x(&f, &0), g);
        assert_eq!(g.shift_x(&f, &5).shift_x(&f, &f.from_i64(-5)), g);
    }

    fn arb_curve() -> impl Strategy<Value = BiPoly<u64>> {
        (2usize..4, prop::collection::vec(0u64..10007, 12)).prop_map(|(n, c)| {
            let f = fp();
            let mut rows: Vec<UniPoly<u64>> = (0..n)
                .map(|j| UniPoly::from_coeffs(&f, c[j * 3..j * 3 + 3].to_vec()))
                .collect();
            rows.push(UniPoly::one(&f));
            BiPoly::from_coeffs(rows)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn cayley_hamilton(fc in arb_curve(), b in prop::collection::vec(0u64..10007, 4)) {
            let f = fp();
            let n = fc.deg_y().unwrap();
            prop_assume!(discriminant_y(&f, &fc).is_ok());
            let num = BiPoly::from_coeffs(vec![
                UniPoly::from_coeffs(&f, vec![b[0], b[1]]),
                UniPoly::from_coeffs(&f, vec![b[2], b[3]]),
            ]);
            let den = UniPoly::from_coeffs(&f, vec![b[0], 1]);
            let el = FieldElement { num: num.clone(), den: den.clone() };
            let cp = charpoly_of_element(&f, &el, &fc);
            // sum_k c_k (num/den)^k = 0, cleared by a common denominator.
            let common = cp.iter().fold(UniPoly::one(&f), |a, c| a.mul(&f, &c.den));
            let mut acc = BiPoly::zero();
            for (k, c) in cp.iter().enumerate() {
                let scale = common.div_exact(&f, &c.den).unwrap().mul(&f, &c.num)
                    .mul(&f, &den.pow(&f, (n - k) as u64));
                acc = acc.add(&f, &num.pow(&f, k).mul_x_poly(&f, &scale));
            }
            prop_assert!(reduce_mod_f(&f, &acc, &fc).is_zero());
        }

        #[test]
        fn trace_linear(fc in arb_curve(), a in prop::collection::vec(0u64..10007, 3), l in 0u64..10007) {
            let f = fp();
            let s = power_sums(&f, &fc);
            let u = BiPoly::from_coeffs(vec![UniPoly::from_coeffs(&f, vec![a[0]]), UniPoly::from_coeffs(&f, vec![a[1], a[2]])]);
            let v = BiPoly::y_pow(&f, 2);
            let lam = UniPoly::from_coeffs(&f, vec![l, 1]);
            let lhs = trace_poly(&f, &u.mul_x_poly(&f, &lam).add(&f, &v), &fc, &s);
            let rhs = trace_poly(&f, &u, &fc, &s).mul(&f, &lam).add(&f, &trace_poly(&f, &v, &fc, &s));
            prop_assert_eq!(lhs, rhs);
            // Trace from power sums matches the charpoly.
            let el = FieldElement { num: u.clone(), den: UniPoly::one(&f) };
            let cp = charpoly_of_element(&f, &el, &fc);
            let n = fc.deg_y().unwrap();
            prop_assert!(cp[n - 1].neg(&f).equals(&f, &RatFunc::from_poly(&f, trace_poly(&f, &u, &fc, &s))));
        }

        #[test]
        fn shift_commutes_with_discriminant(fc in arb_curve(), a in 0u64..10007) {
            let f = fp();
            prop_assume!(discriminant_y(&f, &fc).is_ok());
            let d = discriminant_y(&f, &fc).unwrap();
            prop_assert_eq!(discriminant_y(&f, &fc.shift_x(&f, &a)).unwrap(), d.taylor_shift(&f, &a));
        }
    }
}
