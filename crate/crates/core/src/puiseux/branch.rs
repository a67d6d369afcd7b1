//! Factors of f over K[[x]][y] from its expansions, and the cofactors that
//! split the local ring along them.

use super::classical::{classical_expansions, expansions_with_bound, ClassicalSet};
use super::rpe::Rpe;
use super::series::trunc;
use crate::bivariate::BiPoly;
use crate::error::{Error, Result};
use crate::field::{ExtField, Field};
use crate::opcount::{self, Phase};
use crate::poly::UniPoly;
use crate::polymat::{adjugate_column, berkowitz, PolyMatrix};

type E = Vec<u64>;

/// The monic polynomial in y whose roots are the distinct conjugates of
/// `r` truncated after T-exponent `t` (the whole known expansion if `None`).
pub fn norm_of_expansion(kf: &ExtField, r: &Rpe, t: Option<usize>) -> Result<BiPoly<E>> {
    let mut cut = r.clone();
    if let Some(t) = t {
        cut.y = r.truncated(t);
        cut.prec = super::EXACT;
    }
    let set = classical_expansions(kf, std::slice::from_ref(&cut))?;
    let mut distinct: Vec<&super::Series> = Vec::new();
    for c in &set.items {
        if !distinct.contains(&&c.series) {
            distinct.push(&c.series);
        }
    }
    let prod = set.product(&distinct, None);
    set.pull_back(kf, &prod)
}

/// f = f0 · Π f_i modulo x^precision, each f_i the norm of one rational
/// expansion and irreducible over K[[x]].
#[derive(Debug, Clone)]
pub struct BranchFactorization {
    pub f0: BiPoly<E>,
    pub factors: Vec<BiPoly<E>>,
    pub precision: usize,
    /// The expansion behind each factor.
    pub rpes: Vec<Rpe>,
    /// Expansions that went into f0.
    pub unit_rpes: Vec<Rpe>,
}

/// Splits off the branches centered at y = 0; the rest forms f0, whose
/// value at the origin is nonzero.
pub fn branch_factorization(
    kf: &ExtField,
    f: &BiPoly<E>,
    rho: usize,
) -> Result<BranchFactorization> {
    let (rpes, _) = expansions_with_bound(kf, f)?;
    branch_factorization_by(kf, f, rpes, rho, |r| r.field.is_zero(&r.center()))
}

/// Same, with the factors chosen by `select`.
pub fn branch_factorization_by(
    kf: &ExtField,
    f: &BiPoly<E>,
    rpes: Vec<Rpe>,
    rho: usize,
    select: impl Fn(&Rpe) -> bool,
) -> Result<BranchFactorization> {
    let _g = opcount::enter(Phase::Puiseux);
    let (mut chosen, rest): (Vec<Rpe>, Vec<Rpe>) = rpes.into_iter().partition(|r| select(r));
    for r in chosen.iter_mut() {
        r.extend_to_x(rho + 1);
    }
    let mut factors = Vec::with_capacity(chosen.len());
    for r in &chosen {
        let set = classical_expansions(kf, std::slice::from_ref(r))?;
        factors.push(norm_mod(kf, &set, rho)?);
    }
    let mut g = BiPoly::one(kf);
    for fi in &factors {
        g = g.mul(kf, fi).truncate_x(kf, rho);
    }
    let (f0, rem) = divrem_monic_trunc(kf, f, &g, rho);
    if !rem.is_zero() {
        return Err(Error::InternalInvariantBroken(
            "branch factors do not divide f".into(),
        ));
    }
    Ok(BranchFactorization {
        f0,
        factors,
        precision: rho,
        rpes: chosen,
        unit_rpes: rest,
    })
}

/// Π (y − η) over every expansion in `set`, modulo x^rho.
pub(crate) fn norm_mod(kf: &ExtField, set: &ClassicalSet, rho: usize) -> Result<BiPoly<E>> {
    let cut = set.den * rho;
    let s: Vec<super::Series> = set
        .items
        .iter()
        .map(|c| trunc(&set.field, &c.series, cut))
        .collect();
    let refs: Vec<&super::Series> = s.iter().collect();
    set.pull_back(kf, &set.product(&refs, Some(cut)))
}

/// Division by a polynomial monic in y, coefficients kept modulo x^rho.
pub fn divrem_monic_trunc(
    kf: &ExtField,
    a: &BiPoly<E>,
    b: &BiPoly<E>,
    rho: usize,
) -> (BiPoly<E>, BiPoly<E>) {
    let db = b.deg_y().expect("nonzero divisor");
    let mut r: Vec<UniPoly<E>> = a.coeffs().iter().map(|c| trunc(kf, c, rho)).collect();
    if r.len() <= db {
        return (BiPoly::zero(), BiPoly::from_coeffs(r));
    }
    let mut q = vec![UniPoly::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs().iter().enumerate() {
            r[i + j] = r[i + j].sub(kf, &trunc(kf, &c.mul(kf, bj), rho));
        }
        q[i] = c;
    }
    r.truncate(db);
    (BiPoly::from_coeffs(q), BiPoly::from_coeffs(r))
}

/// Cofactors with a f_i + b h_i ≡ x^c, h_i = Π_{j≠i} f_j.
#[derive(Debug, Clone)]
pub struct Cofactor {
    pub a: BiPoly<E>,
    pub b: BiPoly<E>,
    pub c: usize,
    pub h: BiPoly<E>,
}

/// Bézout cofactors for pairwise coprime factors known modulo x^rho. The
/// identity a_i f_i + b_i h_i = x^(c_i) holds modulo x^(rho − c_i), and c_i
/// is the valuation of Res_y(f_i, h_i).
pub fn bezout_cofactors(kf: &ExtField, factors: &[BiPoly<E>], rho: usize) -> Result<Vec<Cofactor>> {
    let _g = opcount::enter(Phase::LinearAlgebra);
    if factors.len() == 1 {
        return Ok(vec![Cofactor {
            a: BiPoly::zero(),
            b: BiPoly::one(kf),
            c: 0,
            h: BiPoly::one(kf),
        }]);
    }
    let reduce = |u: UniPoly<E>| trunc(kf, &u, rho);
    let mut out = Vec::with_capacity(factors.len());
    for i in 0..factors.len() {
        let fi = &factors[i];
        let mut h = BiPoly::one(kf);
        for (j, fj) in factors.iter().enumerate() {
            if j != i {
                h = h.mul(kf, fj).truncate_x(kf, rho);
            }
        }
        let (m, dh) = (fi.deg_y().unwrap(), h.deg_y().unwrap());
        let n = m + dh;
        let mut a = PolyMatrix::zeros(n, n);
        for k in 0..dh {
            for (r, c) in fi.coeffs().iter().enumerate() {
                a[(r + k, k)] = c.clone();
            }
        }
        for k in 0..m {
            for (r, c) in h.coeffs().iter().enumerate() {
                a[(r + k, dh + k)] = c.clone();
            }
        }
        let cp = berkowitz(kf, &a, &reduce);
        let det = if n % 2 == 0 {
            cp[n].clone()
        } else {
            cp[n].neg(kf)
        };
        let c = det.valuation(kf).ok_or_else(|| {
            Error::InsufficientPrecision(format!("resultant of branch {i} vanishes modulo x^{rho}"))
        })?;
        let keep = rho - c;
        let unit = UniPoly::from_coeffs(kf, det.coeffs()[c..].to_vec());
        let uinv = unit.series_inverse(kf, keep);
        let z: Vec<UniPoly<E>> = adjugate_column(kf, &a, 0, &reduce)
            .into_iter()
            .map(|v| trunc(kf, &v.mul(kf, &uinv), keep))
            .collect();
        let ai = BiPoly::from_coeffs(z[..dh].to_vec());
        let bi = BiPoly::from_coeffs(z[dh..].to_vec());
        let lhs = ai.mul(kf, fi).add(kf, &bi.mul(kf, &h)).truncate_x(kf, keep);
        if lhs != BiPoly::from_x(UniPoly::monomial(kf, kf.one(), c)).truncate_x(kf, keep) {
            return Err(Error::InternalInvariantBroken(
                "Bézout identity fails".into(),
            ));
        }
        out.push(Cofactor { a: ai, b: bi, c, h });
    }
    Ok(out)
}
