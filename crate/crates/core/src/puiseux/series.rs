//! Truncated power series in one variable, stored as polynomials.

use crate::bivariate::BiPoly;
use crate::field::Field;
use crate::poly::UniPoly;

pub fn trunc<F: Field>(f: &F, a: &UniPoly<F::Elem>, k: usize) -> UniPoly<F::Elem> {
    if a.len() <= k {
        return a.clone();
    }
    a.truncate(k).normalized(f)
}

pub fn mul_trunc<F: Field>(
    f: &F,
    a: &UniPoly<F::Elem>,
    b: &UniPoly<F::Elem>,
    k: usize,
) -> UniPoly<F::Elem> {
    trunc(f, &trunc(f, a, k).mul(f, &trunc(f, b, k)), k)
}

/// u(s(T)) mod T^k.
pub fn compose_trunc<F: Field>(
    f: &F,
    u: &UniPoly<F::Elem>,
    s: &UniPoly<F::Elem>,
    k: usize,
) -> UniPoly<F::Elem> {
    let mut acc = UniPoly::zero();
    for c in u.coeffs().iter().rev() {
        acc = mul_trunc(f, &acc, s, k).add(f, &UniPoly::constant(f, c.clone()));
    }
    trunc(f, &acc, k)
}

/// b(x(T), y(T)) mod T^k.
pub fn eval_bipoly<F: Field>(
    f: &F,
    b: &BiPoly<F::Elem>,
    x: &UniPoly<F::Elem>,
    y: &UniPoly<F::Elem>,
    k: usize,
) -> UniPoly<F::Elem> {
    let mut acc = UniPoly::zero();
    for c in b.coeffs().iter().rev() {
        acc = mul_trunc(f, &acc, y, k).add(f, &compose_trunc(f, c, x, k));
    }
    acc
}

/// b(T, y(T)) mod T^k, the common case where the first variable is T itself.
pub fn eval_at_t<F: Field>(
    f: &F,
    b: &BiPoly<F::Elem>,
    y: &UniPoly<F::Elem>,
    k: usize,
) -> UniPoly<F::Elem> {
    let mut acc = UniPoly::zero();
    for c in b.coeffs().iter().rev() {
        acc = mul_trunc(f, &acc, y, k).add(f, &trunc(f, c, k));
    }
    acc
}

/// h(T, c + Y).
pub fn shift_y<F: Field>(f: &F, h: &BiPoly<F::Elem>, c: &F::Elem) -> BiPoly<F::Elem> {
    let lin = BiPoly::from_coeffs(vec![UniPoly::constant(f, c.clone()), UniPoly::one(f)]);
    let mut acc = BiPoly::zero();
    for u in h.coeffs().iter().rev() {
        acc = acc.mul(f, &lin).add(f, &BiPoly::from_x(u.clone()));
    }
    acc
}

/// Index of the first coefficient where `a` and `b` differ below `k`.
pub fn first_difference<F: Field>(
    f: &F,
    a: &UniPoly<F::Elem>,
    b: &UniPoly<F::Elem>,
    k: usize,
) -> Option<usize> {
    (0..k).find(|&i| a.coeff(f, i) != b.coeff(f, i))
}
