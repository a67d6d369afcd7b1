//! Integral bases branch by branch: bases of each K[[x]]-irreducible factor
//! from truncations of its expansions, glued with Bézout cofactors, then the
//! unit part, then CRT across discriminant factors.

use num_rational::Ratio;

use crate::basis::{square_factors, IntegralBasis, LocalBasis};
use crate::bivariate::{shift_origin, BiPoly};
use crate::error::{Error, Result};
use crate::field::{ExtField, Field, PrimeField};
use crate::poly::crt::crt_combine;
use crate::poly::UniPoly;
use crate::polymat::{hnf, PolyMatrix};
use crate::puiseux::series::{first_difference, trunc};
use crate::puiseux::{
    bezout_cofactors, branch_factorization_by, classical_expansions, divrem_monic_trunc,
    expansions_with_bound, Cofactor, Rpe, Series, EXACT,
};

type E = Vec<u64>;
type P = UniPoly<u64>;

/// One step of the truncation chain of a branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLink {
    /// Π (y − η) over the distinct truncations at this level.
    pub g: BiPoly<E>,
    /// Number of expansions sharing each truncation.
    pub u: usize,
    /// Σ v(γ − η) over the roots η of g, for any expansion γ of the branch.
    pub sigma: Ratio<i64>,
}

/// Per-factor record of the local computation.
#[derive(Debug, Clone)]
pub struct BohmLocal {
    pub local: LocalBasis,
    /// The bound E(f) at this factor.
    pub bound: Ratio<i64>,
    /// Bézout exponents c_i of the branches.
    pub cs: Vec<usize>,
    pub chain_lengths: Vec<usize>,
}

/// v(a − b) in s-units, reading both series to the precision available.
fn diff_val(fl: &ExtField, a: &Series, pa: usize, b: &Series, pb: usize) -> Result<usize> {
    let k = match (pa, pb) {
        (EXACT, EXACT) => a.len().max(b.len()),
        _ => pa.min(pb),
    };
    first_difference(fl, a, b, k)
        .ok_or_else(|| Error::InsufficientPrecision(format!("series agree to s^{k}")))
}

/// The chain (g_j, u_j, σ_j) of one K[[x]]-irreducible branch.
pub fn truncation_chain(kf: &ExtField, r: &Rpe) -> Result<Vec<ChainLink>> {
    let set = classical_expansions(kf, std::slice::from_ref(r))?;
    let fl = &set.field;
    let m = set.items.len();
    let gammas: Vec<(&Series, usize)> = set.items.iter().map(|c| (&c.series, c.prec)).collect();
    let mut current: Vec<(Series, usize)> =
        gammas.iter().map(|(s, p)| ((*s).clone(), *p)).collect();
    let mut chain = Vec::new();
    while current.len() > 1 {
        let mut t = 0;
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let (a, pa) = &current[i];
                let (b, pb) = &current[j];
                t = t.max(diff_val(fl, a, *pa, b, *pb)?);
            }
        }
        let mut distinct: Vec<Series> = Vec::new();
        for (s, _) in &current {
            let c = trunc(fl, s, t);
            if !distinct.contains(&c) {
                distinct.push(c);
            }
        }
        if !current.len().is_multiple_of(distinct.len()) {
            return Err(Error::InternalInvariantBroken(
                "truncations of a branch are unbalanced".into(),
            ));
        }
        let u = current.len() / distinct.len();
        // σ from two different expansions must agree.
        let sigma_of = |g: &(&Series, usize)| -> Result<usize> {
            let mut acc = 0;
            for eta in &distinct {
                acc += diff_val(fl, g.0, g.1, eta, EXACT)?;
            }
            Ok(acc)
        };
        let s0 = sigma_of(&gammas[0])?;
        if sigma_of(&gammas[m - 1])? != s0 {
            return Err(Error::InternalInvariantBroken(
                "σ depends on the chosen expansion".into(),
            ));
        }
        let refs: Vec<&Series> = distinct.iter().collect();
        let g = set.pull_back(kf, &set.product(&refs, None))?;
        chain.push(ChainLink {
            g,
            u,
            sigma: Ratio::new(s0 as i64, set.den as i64),
        });
        current = distinct.into_iter().map(|s| (s, EXACT)).collect();
    }
    Ok(chain)
}

/// p_d = Π g_k^(ν_k) with the greedy exponent vector, and e_d = ⌊Σ ν_k σ_k⌋,
/// for d < m.
pub fn branch_numerators(kf: &ExtField, chain: &[ChainLink], m: usize) -> Vec<(BiPoly<E>, usize)> {
    let mut out = vec![(BiPoly::one(kf), 0)];
    for d in 1..m {
        let mut p = BiPoly::one(kf);
        let mut deg = 0;
        let mut s = Ratio::from_integer(0);
        for link in chain {
            let gd = link.g.deg_y().unwrap();
            let nu = ((d - deg) / gd).min(link.u);
            p = p.mul(kf, &link.g.pow(kf, nu));
            deg += nu * gd;
            s += link.sigma * Ratio::from_integer(nu as i64);
        }
        debug_assert_eq!(deg, d);
        out.push((p, s.floor().to_integer() as usize));
    }
    out
}

/// The elements b_i h_i p_j / x^(c_i + e_j) of every branch, as numerators
/// reduced modulo g = Π f_i and truncated below their denominator.
pub fn glue_branches(
    kf: &ExtField,
    factors: &[BiPoly<E>],
    cofs: &[Cofactor],
    bases: &[Vec<(BiPoly<E>, usize)>],
    rho: usize,
) -> Result<Vec<(BiPoly<E>, usize)>> {
    let mut g = BiPoly::one(kf);
    for fi in factors {
        g = g.mul(kf, fi).truncate_x(kf, rho);
    }
    let mut out = Vec::new();
    for (cof, basis) in cofs.iter().zip(bases) {
        let bh = cof.b.mul(kf, &cof.h).truncate_x(kf, rho);
        for (p, e) in basis {
            let k = cof.c + e;
            if k + cof.c > rho {
                return Err(Error::InsufficientPrecision(format!(
                    "gluing needs x^{} beyond x^{rho}",
                    k + cof.c
                )));
            }
            let num = bh.mul(kf, p).truncate_x(kf, k);
            let (_, r) = divrem_monic_trunc(kf, &num, &g, k);
            out.push((r, k));
        }
    }
    Ok(out)
}

/// Triangular basis (monic numerators of y-degree d over x^(e_d)) of the
/// K[x]-module spanned by the given elements and 1, y, ..., y^(m-1).
pub fn triangularize(
    kf: &ExtField,
    m: usize,
    elems: &[(BiPoly<E>, usize)],
) -> Result<Vec<(BiPoly<E>, usize)>> {
    let top = elems.iter().map(|(_, k)| *k).max().unwrap_or(0);
    let xpow = |k: usize| UniPoly::monomial(kf, kf.one(), k);
    let mut rows = Vec::with_capacity(elems.len() + m);
    for (num, k) in elems {
        let s = xpow(top - k);
        rows.push(
            (0..m)
                .rev()
                .map(|j| num.coeff(j).mul(kf, &s))
                .collect::<Vec<_>>(),
        );
    }
    for j in 0..m {
        rows.push(
            (0..m)
                .rev()
                .map(|c| if c == j { xpow(top) } else { UniPoly::zero() })
                .collect(),
        );
    }
    let h = hnf(kf, &PolyMatrix::from_rows(rows));
    if h.rows() != m || (0..m).any(|i| h[(i, i)].is_zero()) {
        return Err(Error::RankDeficient);
    }
    let mut out = vec![(BiPoly::zero(), 0); m];
    for i in 0..m {
        let d = m - 1 - i;
        let piv = &h[(i, i)];
        let dp = piv.degree().unwrap();
        if *piv != xpow(dp) {
            return Err(Error::InternalInvariantBroken(
                "pivot is not a power of x".into(),
            ));
        }
        let mut coeffs = vec![UniPoly::zero(); d + 1];
        for c in i..m {
            coeffs[m - 1 - c] = h[(i, c)].div_exact(kf, piv).ok_or_else(|| {
                Error::InternalInvariantBroken("triangular row not divisible by its pivot".into())
            })?;
        }
        out[d] = (BiPoly::from_coeffs(coeffs), top - dp);
    }
    Ok(out)
}

/// (1, y, ..., y^(d0-1), f̄0 p_0, f̄0 p_1 / x^(e_1), ...) with f̄0 the monic
/// truncation of f0 modulo x^(e_(m-1)).
pub fn include_unit_factor(
    kf: &ExtField,
    g_basis: &[(BiPoly<E>, usize)],
    f0: &BiPoly<E>,
) -> Vec<(BiPoly<E>, usize)> {
    let d0 = f0.deg_y().unwrap_or(0);
    let emax = g_basis.last().map_or(0, |b| b.1);
    let mut c: Vec<UniPoly<E>> = (0..d0).map(|j| trunc(kf, &f0.coeff(j), emax)).collect();
    c.push(UniPoly::one(kf));
    let fbar = BiPoly::from_coeffs(c);
    let mut out: Vec<(BiPoly<E>, usize)> = (0..d0).map(|j| (BiPoly::y_pow(kf, j), 0)).collect();
    out.extend(g_basis.iter().map(|(p, e)| (fbar.mul(kf, p), *e)));
    out
}

fn trace_to_fp(kf: &ExtField, a: &E) -> u64 {
    let mut acc = kf.zero();
    for j in 0..kf.k() {
        acc = kf.add(&acc, &kf.frobenius_pow(a, j));
    }
    acc[0]
}

/// The minimal local contribution at φ, with numerators over F_p.
pub fn local_contribution(
    fld: &PrimeField,
    f: &BiPoly<u64>,
    phi: &P,
    m_phi: usize,
) -> Result<BohmLocal> {
    let n = f.deg_y().ok_or(Error::NotMonic)?;
    let kf = ExtField::new(*fld, phi)?;
    let alpha = kf.gen();
    let g = shift_origin::<PrimeField, ExtField>(&kf, f, |c| kf.from_base(*c), &alpha);
    let (rpes, bound) = expansions_with_bound(&kf, &g)?;
    let mut rho = bound.ceil().to_integer() as usize + 2 * m_phi + 2;
    let (basis, cs, chain_lengths) = loop {
        match local_at_origin(&kf, &g, rpes.clone(), rho) {
            Ok(v) => break v,
            Err(Error::InsufficientPrecision(_)) if rho < 64 * (m_phi + 2) => rho *= 2,
            Err(e) => return Err(e),
        }
    };
    debug_assert_eq!(basis.len(), n);
    // Back to x − α, then down to F_p.
    let neg_alpha = kf.neg(&alpha);
    let shifted: Vec<(BiPoly<E>, usize)> = basis
        .into_iter()
        .map(|(p, e)| (p.shift_x(&kf, &neg_alpha), e))
        .collect();
    let emax = shifted.iter().map(|b| b.1).max().unwrap_or(0);
    if emax == 0 {
        return Ok(BohmLocal {
            local: LocalBasis::power(fld, phi.clone(), n),
            bound,
            cs,
            chain_lengths,
        });
    }
    let lin = UniPoly::from_coeffs(&kf, vec![neg_alpha.clone(), kf.one()]);
    let unit = kf
        .lift_poly(phi)
        .div_exact(&kf, &lin)
        .expect("x − α divides φ");
    let eps = if unit.degree() == Some(0) {
        UniPoly::one(&kf)
    } else {
        crt_combine(
            &kf,
            &[UniPoly::one(&kf), UniPoly::zero()],
            &[lin.pow(&kf, emax as u64), unit.pow(&kf, emax as u64)],
        )?
    };
    let mut nums = Vec::with_capacity(n);
    let mut exps = Vec::with_capacity(n);
    for (d, (p, e)) in shifted.into_iter().enumerate() {
        let modulus = phi.pow(fld, e as u64);
        let mut coeffs: Vec<P> = (0..d)
            .map(|j| {
                let c = eps.mul(&kf, &p.coeff(j));
                let t = UniPoly::from_coeffs(
                    fld,
                    c.coeffs().iter().map(|a| trace_to_fp(&kf, a)).collect(),
                );
                t.rem(fld, &modulus)
            })
            .collect();
        coeffs.push(UniPoly::one(fld));
        nums.push(BiPoly::from_coeffs(coeffs));
        exps.push(e);
    }
    Ok(BohmLocal {
        local: LocalBasis {
            phi: phi.clone(),
            nums,
            exps,
        },
        bound,
        cs,
        chain_lengths,
    })
}

type LocalResult = (Vec<(BiPoly<E>, usize)>, Vec<usize>, Vec<usize>);

/// The pipeline for a singular fiber at x = 0 over kf.
fn local_at_origin(
    kf: &ExtField,
    g: &BiPoly<E>,
    rpes: Vec<Rpe>,
    rho: usize,
) -> Result<LocalResult> {
    let bf = branch_factorization_by(kf, g, rpes, rho, |r| r.center_multiplicity > 1)?;
    let m: usize = bf.factors.iter().map(|f| f.deg_y().unwrap()).sum();
    let mut bases = Vec::with_capacity(bf.factors.len());
    let mut lengths = Vec::with_capacity(bf.factors.len());
    for (r, fi) in bf.rpes.iter().zip(&bf.factors) {
        let chain = truncation_chain(kf, r)?;
        lengths.push(chain.len());
        bases.push(branch_numerators(kf, &chain, fi.deg_y().unwrap()));
    }
    let cofs = bezout_cofactors(kf, &bf.factors, rho)?;
    let glued = glue_branches(kf, &bf.factors, &cofs, &bases, rho)?;
    let gb = triangularize(kf, m, &glued)?;
    let emax = gb.last().map_or(0, |b| b.1);
    if emax > rho {
        return Err(Error::InsufficientPrecision(format!(
            "unit factor needed modulo x^{emax}"
        )));
    }
    let full = include_unit_factor(kf, &gb, &bf.f0);
    Ok((full, cofs.iter().map(|c| c.c).collect(), lengths))
}

/// Integral basis by local contributions at every square factor of the
/// discriminant.
pub fn bohm_integral_basis(
    fld: &PrimeField,
    f: &BiPoly<u64>,
) -> Result<(IntegralBasis, Vec<BohmLocal>)> {
    let n = f.deg_y().ok_or(Error::NotMonic)?;
    fld.check_curve_degree(n)?;
    let (_, sq) = square_factors(fld, f)?;
    let mut locals = Vec::with_capacity(sq.len());
    for (phi, m) in &sq {
        locals.push(local_contribution(fld, f, phi, *m)?);
    }
    let pieces: Vec<LocalBasis> = locals.iter().map(|l| l.local.clone()).collect();
    Ok((IntegralBasis::from_local(fld, n, &pieces)?, locals))
}
