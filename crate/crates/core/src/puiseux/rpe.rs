//! Rational Puiseux expansions above x = 0 by the Newton–Puiseux recursion
//! with Duval's substitution, so that conjugate branches share one
//! expansion over the smallest field that holds them.

use num_rational::Ratio;

use super::newton::newton_polygon;
use super::series::{eval_at_t, mul_trunc, shift_y, trunc};
use super::Series;
use crate::bivariate::BiPoly;
use crate::error::{Error, Result};
use crate::field::{Embedding, ExtField, Field};
use crate::opcount::{self, Phase};
use crate::poly::factor::{factor_univariate, roots};
use crate::poly::UniPoly;
use crate::rng;

type E = Vec<u64>;

/// Precision marker for expansions that terminate.
pub const EXACT: usize = usize::MAX;

/// One rational Puiseux expansion x = γT^e, y = Y(T), with Y known modulo
/// T^prec. The coefficients live in `field`, which contains the ground
/// field through `emb`.
#[derive(Debug, Clone)]
pub struct Rpe {
    pub e: usize,
    pub gamma: E,
    pub field: ExtField,
    pub emb: Embedding,
    pub y: Series,
    pub prec: usize,
    /// Multiplicity of the center Y(0) as a root of f(0, y).
    pub center_multiplicity: usize,
    regular: Option<Regular>,
}

/// Data needed to lift the expansion further: y = a + b T^s z(T) where
/// h(T, z(T)) = 0 and h_Y(0, 0) != 0.
#[derive(Debug, Clone)]
struct Regular {
    h: BiPoly<E>,
    a: Series,
    b: E,
    s: usize,
    z: Series,
    zprec: usize,
}

impl Rpe {
    /// Degree of `field` over the ground field.
    pub fn residue_degree(&self) -> usize {
        self.field.k() / self.emb.src().k()
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    /// The center Y(0).
    pub fn center(&self) -> E {
        self.y.coeff(&self.field, 0)
    }

    /// X(T) = γT^e as a series.
    pub fn x_series(&self) -> Series {
        UniPoly::monomial(&self.field, self.gamma.clone(), self.e)
    }

    /// Known precision measured in powers of x.
    pub fn x_precision(&self) -> Ratio<i64> {
        if self.is_exact() {
            Ratio::from_integer(i64::MAX / 2)
        } else {
            Ratio::new(self.prec as i64, self.e as i64)
        }
    }

    /// Lifts Y until it is known modulo T^t.
    pub fn extend_to(&mut self, t: usize) {
        if self.prec >= t {
            return;
        }
        let _g = opcount::enter(Phase::Puiseux);
        let fld = self.field.clone();
        let r = self
            .regular
            .as_mut()
            .expect("inexact expansions keep their lifting data");
        let target = t.saturating_sub(r.s).max(1);
        r.z = newton_lift(&fld, &r.h, r.z.clone(), r.zprec, target);
        r.zprec = target;
        let y = r.a.add(&fld, &r.z.scale(&fld, &r.b).shift(&fld, r.s));
        self.prec = r.s + r.zprec;
        self.y = trunc(&fld, &y, self.prec);
    }

    /// Lifts Y until it is known modulo x^k, i.e. T^(e k).
    pub fn extend_to_x(&mut self, k: usize) {
        self.extend_to(self.e * k);
    }

    /// The expansion with every term of T-exponent > `t` removed.
    pub fn truncated(&self, t: usize) -> Series {
        trunc(&self.field, &self.y, t + 1)
    }
}

#[derive(Clone)]
struct State {
    field: ExtField,
    emb: Embedding,
    e: usize,
    gamma: E,
    /// y = a(T) + b T^s Y in terms of the current local coordinate Y.
    a: Series,
    b: E,
    s: usize,
    mu: usize,
}

impl State {
    fn map(&self, iota: &Embedding) -> State {
        State {
            field: iota.dst().clone(),
            emb: iota.compose(&self.emb),
            e: self.e,
            gamma: iota.apply(&self.gamma),
            a: iota.apply_poly(&self.a),
            b: iota.apply(&self.b),
            s: self.s,
            mu: self.mu,
        }
    }

    /// Substitutes x_old = ξ^v T^q, Y_old = T^m (ξ^u + Y).
    fn advance(&self, xi: &E, u: usize, v: usize, q: usize, m: usize) -> State {
        let f = &self.field;
        let xv = f.pow(xi, v as u64);
        let mut ac = vec![f.zero(); (self.a.len().max(1) - 1) * q + 1];
        let mut pw = f.one();
        for (i, c) in self.a.coeffs().iter().enumerate() {
            ac[i * q] = f.mul(c, &pw);
            pw = f.mul(&pw, &xv);
        }
        let bnew = f.mul(&self.b, &f.pow(&xv, self.s as u64));
        let snew = q * self.s + m;
        let a = UniPoly::from_coeffs(f, ac).add(
            f,
            &UniPoly::monomial(f, f.mul(&bnew, &f.pow(xi, u as u64)), snew),
        );
        State {
            field: f.clone(),
            emb: self.emb.clone(),
            e: q * self.e,
            gamma: f.mul(&self.gamma, &f.pow(&xv, self.e as u64)),
            a,
            b: bnew,
            s: snew,
            mu: self.mu,
        }
    }

    fn exact(&self) -> Rpe {
        Rpe {
            e: self.e,
            gamma: self.gamma.clone(),
            field: self.field.clone(),
            emb: self.emb.clone(),
            y: self.a.clone(),
            prec: EXACT,
            center_multiplicity: self.mu,
            regular: None,
        }
    }

    fn regular(&self, h: BiPoly<E>, target: usize) -> Rpe {
        let mut r = Rpe {
            e: self.e,
            gamma: self.gamma.clone(),
            field: self.field.clone(),
            emb: self.emb.clone(),
            y: self.a.clone(),
            prec: self.s + 1,
            center_multiplicity: self.mu,
            regular: Some(Regular {
                h,
                a: self.a.clone(),
                b: self.b.clone(),
                s: self.s,
                z: UniPoly::zero(),
                zprec: 1,
            }),
        };
        r.y = trunc(&self.field, &self.a, r.prec);
        r.extend_to(target);
        r
    }
}

/// Newton iteration for the simple root z of h(T, z) = 0 with z(0) = 0,
/// from precision `from` to `to`.
fn newton_lift(f: &ExtField, h: &BiPoly<E>, mut z: Series, from: usize, to: usize) -> Series {
    let hy = h.derivative_y(f);
    let mut cur = from.max(1);
    while cur < to {
        cur = (2 * cur).min(to);
        let num = eval_at_t(f, h, &z, cur);
        let den = eval_at_t(f, &hy, &z, cur);
        let step = mul_trunc(f, &num, &den.series_inverse(f, cur), cur);
        z = z.sub(f, &step);
    }
    z
}

/// A field containing a root of `psi`, with the state carried over.
fn adjoin_root(st: &State, psi: &Series, h: &BiPoly<E>) -> Result<(State, E, BiPoly<E>)> {
    let f = &st.field;
    let d = psi.degree().expect("nonzero factor");
    if d == 1 {
        let r = f.neg(&f.div(&psi.coeffs()[0], &psi.coeffs()[1]));
        return Ok((st.clone(), r, h.clone()));
    }
    let k = f.k() * d;
    let big = ExtField::of_degree(f.base(), k, &mut rng::stream(&("puiseux-field", k)));
    let iota = Embedding::all(f, &big)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::InternalInvariantBroken("no embedding into extension".into()))?;
    let r = roots(&big, &iota.apply_poly(psi))
        .into_iter()
        .next()
        .ok_or_else(|| {
            Error::InternalInvariantBroken("factor has no root in its splitting degree".into())
        })?;
    let h2 = h.map(&big, |c| iota.apply(c));
    Ok((st.map(&iota), r, h2))
}

/// u q - v m = 1 with 0 <= v < q.
fn duval_exponents(q: usize, m: usize) -> (usize, usize) {
    if q == 1 {
        return (1, 0);
    }
    let v = (0..q)
        .find(|&v| (1 + v * m).is_multiple_of(q))
        .expect("m and q are coprime");
    ((1 + v * m) / q, v)
}

/// h(ξ^v T^q, T^m (ξ^u + Y)) / T^l.
fn substitute(
    f: &ExtField,
    h: &BiPoly<E>,
    xi: &E,
    u: usize,
    v: usize,
    q: usize,
    m: usize,
    l: usize,
) -> BiPoly<E> {
    let xv = f.pow(xi, v as u64);
    let tmw = BiPoly::from_coeffs(vec![
        UniPoly::monomial(f, f.pow(xi, u as u64), m),
        UniPoly::monomial(f, f.one(), m),
    ]);
    let mut acc = BiPoly::zero();
    for c in h.coeffs().iter().rev() {
        let mut cc = vec![f.zero(); (c.len().max(1) - 1) * q + 1];
        let mut pw = f.one();
        for (i, a) in c.coeffs().iter().enumerate() {
            cc[i * q] = f.mul(a, &pw);
            pw = f.mul(&pw, &xv);
        }
        acc = acc
            .mul(f, &tmw)
            .add(f, &BiPoly::from_x(UniPoly::from_coeffs(f, cc)));
    }
    debug_assert_eq!(acc.valuation_x(f), Some(l));
    acc.shift_down_x(l)
}

fn descend(
    st: State,
    mut h: BiPoly<E>,
    mut jj: usize,
    target_x: usize,
    out: &mut Vec<Rpe>,
) -> Result<()> {
    let p = st.field.characteristic() as usize;
    loop {
        if jj == 0 {
            return Ok(());
        }
        if h.coeff(0).is_zero() {
            out.push(st.exact());
            h = BiPoly::from_coeffs(h.coeffs()[1..].to_vec());
            jj -= 1;
            continue;
        }
        if jj == 1 {
            out.push(st.regular(h, st.e * target_x));
            return Ok(());
        }
        break;
    }
    let f = st.field.clone();
    for edge in newton_polygon(&f, &h) {
        let (m, q) = edge.m_q();
        if q % p == 0 {
            return Err(Error::WildRamification(q));
        }
        let phi = UniPoly::from_coeffs(
            &f,
            (0..=edge.length() / q)
                .map(|k| h.coeff(edge.j1 + k * q).coeff(&f, edge.v1 - k * m))
                .collect(),
        );
        let l = q * edge.v1 + m * edge.j1;
        for (psi, mult) in factor_univariate(&f, &phi) {
            let (st2, xi, h2) = adjoin_root(&st, &psi, &h)?;
            let (u, v) = duval_exponents(q, m);
            let h3 = substitute(&st2.field, &h2, &xi, u, v, q, m, l);
            let st3 = st2.advance(&xi, u, v, q, m);
            if h3.coeff(mult).valuation(&st3.field) != Some(0)
                || (0..mult).any(|j| h3.coeff(j).valuation(&st3.field) == Some(0))
            {
                return Err(Error::InternalInvariantBroken(
                    "Newton polygon step lost a root".into(),
                ));
            }
            descend(st3, h3, mult, target_x, out)?;
        }
    }
    Ok(())
}

/// All rational Puiseux expansions of the monic squarefree `f` above x = 0,
/// one per irreducible factor of f over kf[[x]], each known modulo
/// T^(e·rho) at least.
pub fn rational_puiseux_expansions(kf: &ExtField, f: &BiPoly<E>, rho: usize) -> Result<Vec<Rpe>> {
    let _g = opcount::enter(Phase::Puiseux);
    if !f.is_monic_y(kf) {
        return Err(Error::NotMonic);
    }
    let n = f.deg_y().unwrap_or(0);
    let p = kf.characteristic() as usize;
    if n >= p {
        return Err(Error::WildRamification(n));
    }
    let mut out = Vec::new();
    let c0 = f.eval_x(kf, &kf.zero());
    let base = State {
        field: kf.clone(),
        emb: Embedding::identity(kf),
        e: 1,
        gamma: kf.one(),
        a: UniPoly::zero(),
        b: kf.one(),
        s: 0,
        mu: 0,
    };
    for (psi, mu) in factor_univariate(kf, &c0) {
        let (mut st, c, h) = adjoin_root(&base, &psi, f)?;
        let h = shift_y(&st.field, &h, &c);
        st.a = UniPoly::constant(&st.field, c);
        st.mu = mu;
        descend(st, h, mu, rho.max(1), &mut out)?;
    }
    let total: usize = out.iter().map(|r| r.e * r.residue_degree()).sum();
    if total != n {
        return Err(Error::InternalInvariantBroken(format!(
            "expansions account for {total} of {n} roots"
        )));
    }
    Ok(out)
}
