//! Factorization of univariate polynomials over finite fields: squarefree
//! decomposition, distinct-degree factorization and Cantor-Zassenhaus
//! equal-degree splitting.

use rand::RngCore;

use super::UniPoly;
use crate::field::{Field, PrimeField};
use crate::opcount::{self, Phase};
use crate::rng;

type P<F> = UniPoly<<F as Field>::Elem>;

/// a^p computed coefficientwise after raising to the p-th power; the inverse
/// Frobenius on a finite field of degree k is the (k-1)-fold Frobenius.
fn pth_root<F: Field>(f: &F, a: &P<F>) -> P<F> {
    let p = f.characteristic() as usize;
    let k = f.degree();
    let c = a
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| {
            let mut r = c.clone();
            for _ in 1..k {
                r = f.frobenius(&r);
            }
            r
        })
        .collect();
    UniPoly::from_coeffs(f, c)
}

/// Squarefree decomposition of a nonzero polynomial: pairs (s_i, i) with
/// monic squarefree pairwise coprime s_i and a = lc * prod s_i^i.
pub fn squarefree_decomposition<F: Field>(f: &F, a: &P<F>) -> Vec<(P<F>, usize)> {
    assert!(!a.is_zero(), "squarefree decomposition of zero");
    let _g = opcount::enter(Phase::Factorization);
    let mut out = Vec::new();
    sqf_rec(f, &a.monic(f), 1, &mut out);
    out.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| canonical_cmp(f, &x.0, &y.0)));
    // Merge equal multiplicities arising from the p-th root recursion.
    let mut merged: Vec<(P<F>, usize)> = Vec::new();
    for (s, m) in out {
        match merged.last_mut() {
            Some((t, mm)) if *mm == m => *t = t.mul(f, &s),
            _ => merged.push((s, m)),
        }
    }
    merged
}

fn sqf_rec<F: Field>(f: &F, a: &P<F>, scale: usize, out: &mut Vec<(P<F>, usize)>) {
    if a.degree().unwrap_or(0) == 0 {
        return;
    }
    let d = a.derivative(f);
    let mut c = a.gcd(f, &d);
    let mut w = a.div_exact(f, &c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one(f) {
        let y = w.gcd(f, &c);
        let z = w.div_exact(f, &y).expect("gcd divides");
        if !z.is_one(f) {
            out.push((z, i * scale));
        }
        i += 1;
        c = c.div_exact(f, &y).expect("gcd divides");
        w = y;
    }
    if !c.is_one(f) {
        let r = pth_root(f, &c);
        sqf_rec(f, &r, scale * f.characteristic() as usize, out);
    }
}

/// a^q mod m where q is the field size.
fn frob_mod<F: Field>(f: &F, a: &P<F>, m: &P<F>) -> P<F> {
    let mut r = a.rem(f, m);
    for _ in 0..f.degree() {
        r = r.pow_mod(f, f.characteristic(), m);
    }
    r
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// (g_d, d) with g_d the product of all irreducible factors of degree d.
pub fn distinct_degree<F: Field>(f: &F, a: &P<F>) -> Vec<(P<F>, usize)> {
    let _g = opcount::enter(Phase::Factorization);
    let mut out = Vec::new();
    let mut rest = a.monic(f);
    let x = UniPoly::x(f);
    let mut h = x.rem(f, &rest);
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = frob_mod(f, &h, &rest);
        let g = h.sub(f, &x).gcd(f, &rest);
        if !g.is_one(f) {
            rest = rest.div_exact(f, &g).expect("gcd divides");
            h = h.rem(f, &rest);
            out.push((g, d));
        }
    }
    if let Some(dr) = rest.degree() {
        if dr > 0 {
            out.push((rest, dr));
        }
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree d.
pub fn equal_degree<F: Field>(f: &F, a: &P<F>, d: usize, rng: &mut dyn RngCore) -> Vec<P<F>> {
    let _g = opcount::enter(Phase::Factorization);
    let n = a.degree().expect("nonzero");
    if n == d {
        return vec![a.monic(f)];
    }
    let p = f.characteristic();
    assert!(
        p % 2 == 1,
        "equal-degree splitting needs odd characteristic"
    );
    let steps = f.degree() * d;
    loop {
        let r: Vec<F::Elem> = (0..n).map(|_| f.random(rng)).collect();
        let r = UniPoly::from_coeffs(f, r);
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        // r^((q^d - 1)/2) = (r^(1 + p + ... + p^(kd-1)))^((p-1)/2)
        let mut t = r.clone();
        let mut s = r.clone();
        for _ in 1..steps {
            t = t.pow_mod(f, p, a);
            s = s.mul_mod(f, &t, a);
        }
        let b = s.pow_mod(f, (p - 1) / 2, a);
        let g = b.sub(f, &UniPoly::one(f)).gcd(f, a);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = a.div_exact(f, &g).expect("gcd divides");
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &h, d, rng));
            return out;
        }
    }
}

/// Total order used to make factor lists deterministic.
pub fn canonical_cmp<F: Field>(f: &F, a: &P<F>, b: &P<F>) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.coeffs().iter().rev().zip(b.coeffs().iter().rev()) {
            let o = f.to_coords(x).cmp(&f.to_coords(y));
            if o.is_ne() {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Complete factorization into monic irreducible factors with multiplicities,
/// in canonical order. The leading coefficient is dropped.
pub fn factor_univariate<F: Field>(f: &F, a: &P<F>) -> Vec<(P<F>, usize)> {
    let _g = opcount::enter(Phase::Factorization);
    let mut rng = rng::stream(&("factor", f.characteristic(), f.degree(), a.len()));
    let mut out = Vec::new();
    for (s, m) in squarefree_decomposition(f, a) {
        for (g, d) in distinct_degree(f, &s) {
            for h in equal_degree(f, &g, d, &mut rng) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|x, y| canonical_cmp(f, &x.0, &y.0));
    out
}

/// Distinct roots in the field, in canonical order.
pub fn roots<F: Field>(f: &F, a: &P<F>) -> Vec<F::Elem> {
    if a.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let _g = opcount::enter(Phase::Factorization);
    let a = a.monic(f);
    let x = UniPoly::x(f);
    let g = frob_mod(f, &x, &a).sub(f, &x).gcd(f, &a);
    if g.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut rng = rng::stream(&("roots", f.characteristic(), f.degree(), a.len()));
    let mut r: Vec<F::Elem> = equal_degree(f, &g, 1, &mut rng)
        .into_iter()
        .map(|l| f.neg(&l.coeffs()[0]))
        .collect();
    r.sort_by_key(|e| f.to_coords(e));
    r
}

/// Rabin-style test: squarefree and no factor of degree <= deg/2.
pub fn is_irreducible<F: Field>(f: &F, a: &P<F>) -> bool {
    let Some(n) = a.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let _g = opcount::enter(Phase::Factorization);
    let a = a.monic(f);
    let x = UniPoly::x(f);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = frob_mod(f, &h, &a);
        if !h.sub(f, &x).gcd(f, &a).is_one(f) {
            return false;
        }
    }
    // Any proper factor, repeated or not, has an irreducible factor of
    // degree <= n/2, which the loop would have found.
    true
}

/// The irreducible phi with phi^2 | d, with their multiplicities.
pub fn square_multiplicity_factors(f: &PrimeField, d: &UniPoly<u64>) -> Vec<(UniPoly<u64>, usize)> {
    let _g = opcount::enter(Phase::Factorization);
    let mut rng = rng::stream(&("sqfactors", d.len()));
    let mut out = Vec::new();
    for (s, m) in squarefree_decomposition(f, d) {
        if m < 2 {
            continue;
        }
        for (g, deg) in distinct_degree(f, &s) {
            for h in equal_degree(f, &g, deg, &mut rng) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|x, y| canonical_cmp(f, &x.0, &y.0));
    out
}
