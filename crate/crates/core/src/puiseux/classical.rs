//! Classical Puiseux series: every conjugate of every rational expansion,
//! written as a series in s = x^(1/D) over one field that contains them all.

use num_integer::Integer;
use num_rational::Ratio;

use super::rpe::{rational_puiseux_expansions, Rpe, EXACT};
use super::series::{eval_bipoly, first_difference, trunc};
use super::Series;
use crate::bivariate::BiPoly;
use crate::error::{Error, Result};
use crate::field::{Embedding, ExtField, Field};
use crate::opcount::{self, Phase};
use crate::poly::factor::{factor_univariate, roots};
use crate::poly::UniPoly;
use crate::rng;

type E = Vec<u64>;

#[derive(Debug, Clone)]
pub struct ClassicalExpansion {
    /// Index of the parent rational expansion.
    pub rpe: usize,
    /// Which conjugate of the parent this is.
    pub conj: usize,
    /// Coefficients in s = x^(1/D).
    pub series: Series,
    /// Known modulo s^prec, or `EXACT`.
    pub prec: usize,
}

#[derive(Debug, Clone)]
pub struct ClassicalSet {
    pub field: ExtField,
    /// The ground field inside `field`.
    pub ground: Embedding,
    /// Common exponent denominator D.
    pub den: usize,
    pub items: Vec<ClassicalExpansion>,
}

impl ClassicalSet {
    /// v(η_i − η_j) in units of 1/D.
    pub fn difference_valuation(&self, i: usize, j: usize) -> Result<usize> {
        let (a, b) = (&self.items[i], &self.items[j]);
        let k = match (a.prec, b.prec) {
            (EXACT, EXACT) => a.series.len().max(b.series.len()),
            (pa, pb) => pa.min(pb),
        };
        first_difference(&self.field, &a.series, &b.series, k).ok_or_else(|| {
            Error::InsufficientPrecision(format!("expansions {i} and {j} agree to s^{k}"))
        })
    }

    /// Matrix of pairwise difference valuations (units of 1/D; diagonal 0).
    pub fn pairwise_valuations(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.items.len();
        let mut v = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = self.difference_valuation(i, j)?;
                v[i][j] = d;
                v[j][i] = d;
            }
        }
        Ok(v)
    }

    /// Pulls a polynomial in y whose coefficients are series in s back to
    /// the ground field, checking that only integral powers of x occur.
    pub fn pull_back(&self, kf: &ExtField, coeffs: &[Series]) -> Result<BiPoly<E>> {
        let d = self.den;
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let mut xs = Vec::new();
            for (k, a) in c.coeffs().iter().enumerate() {
                if self.field.is_zero(a) {
                    continue;
                }
                if k % d != 0 {
                    return Err(Error::InternalInvariantBroken(
                        "norm has a fractional exponent".into(),
                    ));
                }
                let b = self.ground.preimage(a).ok_or_else(|| {
                    Error::InternalInvariantBroken(
                        "norm coefficient outside the ground field".into(),
                    )
                })?;
                if xs.len() <= k / d {
                    xs.resize(k / d + 1, kf.zero());
                }
                xs[k / d] = b;
            }
            out.push(UniPoly::from_coeffs(kf, xs));
        }
        Ok(BiPoly::from_coeffs(out))
    }

    /// Π (y − η) over the given series, coefficients kept modulo s^cut when
    /// `cut` is set.
    pub fn product(&self, series: &[&Series], cut: Option<usize>) -> Vec<Series> {
        let f = &self.field;
        let mut acc: Vec<Series> = vec![UniPoly::one(f)];
        for eta in series {
            let mut next = vec![UniPoly::zero(); acc.len() + 1];
            for (j, c) in acc.iter().enumerate() {
                next[j + 1] = next[j + 1].add(f, c);
                let mut t = c.mul(f, eta);
                if let Some(k) = cut {
                    t = trunc(f, &t, k);
                }
                next[j] = next[j].sub(f, &t);
            }
            acc = next;
        }
        acc
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

/// All classical expansions of the given rational expansions.
pub fn classical_expansions(kf: &ExtField, rpes: &[Rpe]) -> Result<ClassicalSet> {
    let _g = opcount::enter(Phase::Puiseux);
    let base = kf.base();
    let den = rpes.iter().fold(1, |d, r| lcm(d, r.e));
    let mut deg = kf.k();
    for r in rpes {
        let f = &r.field;
        let mut zc = vec![f.zero(); r.e + 1];
        zc[0] = f.neg(&f.inv(&r.gamma));
        zc[r.e] = f.one();
        let t = factor_univariate(f, &UniPoly::from_coeffs(f, zc))
            .iter()
            .fold(1, |acc, (g, _)| lcm(acc, g.degree().unwrap()));
        deg = lcm(deg, f.k() * t);
    }
    let big = ExtField::of_degree(base, deg, &mut rng::stream(&("puiseux-field", deg)));
    let ground = if *kf == big {
        Embedding::identity(kf)
    } else {
        Embedding::all(kf, &big)?
            .into_iter()
            .next()
            .ok_or_else(|| {
                Error::InternalInvariantBroken("no embedding into the common field".into())
            })?
    };
    let kgen = ground.apply(&kf.gen());
    let mut items = Vec::new();
    for (ri, r) in rpes.iter().enumerate() {
        let iota = Embedding::matching(&r.field, &big, &r.emb.apply(&kf.gen()), &kgen)?;
        let step = den / r.e;
        let mut conj = 0;
        for j in 0..r.residue_degree() {
            let sigma = |a: &E| big.frobenius_pow(&iota.apply(a), kf.k() * j);
            let g = sigma(&r.gamma);
            let mut zc = vec![big.zero(); r.e + 1];
            zc[0] = big.neg(&big.inv(&g));
            zc[r.e] = big.one();
            let cs = roots(&big, &UniPoly::from_coeffs(&big, zc));
            if cs.len() != r.e {
                return Err(Error::InternalInvariantBroken(
                    "missing roots of unity in the common field".into(),
                ));
            }
            let beta: Vec<E> = r.y.coeffs().iter().map(&sigma).collect();
            for c in cs {
                let mut sc = vec![big.zero(); beta.len().max(1) * step];
                let mut pw = big.one();
                for (t, b) in beta.iter().enumerate() {
                    sc[t * step] = big.mul(b, &pw);
                    pw = big.mul(&pw, &c);
                }
                items.push(ClassicalExpansion {
                    rpe: ri,
                    conj,
                    series: UniPoly::from_coeffs(&big, sc),
                    prec: if r.is_exact() { EXACT } else { r.prec * step },
                });
                conj += 1;
            }
        }
    }
    Ok(ClassicalSet {
        field: big,
        ground,
        den,
        items,
    })
}

/// max_i Σ_{j≠i} v(η_i − η_j) over a set of classical expansions.
pub fn precision_bound(set: &ClassicalSet) -> Result<Ratio<i64>> {
    let v = set.pairwise_valuations()?;
    let best = v
        .iter()
        .map(|row| row.iter().sum::<usize>())
        .max()
        .unwrap_or(0);
    let n = set.items.len() as i64;
    let b = Ratio::new(best as i64, set.den as i64);
    debug_assert!(b <= Ratio::from_integer(n * n));
    Ok(b)
}

/// v_x(f_y(η)) = Σ_{j≠i} v(η − η_j) for the conjugates η of `r`, computed
/// in the field of `r`; `None` when the known precision is too low.
pub fn fy_valuation(kf: &ExtField, f: &BiPoly<E>, r: &Rpe) -> Option<Ratio<i64>> {
    let fl = &r.field;
    let fy = f.derivative_y(kf).map(fl, |c| r.emb.apply(c));
    let k = if r.is_exact() {
        f.deg_x() * r.e + f.deg_y().unwrap_or(0) * r.y.len() + 1
    } else {
        r.prec
    };
    let v = eval_bipoly(fl, &fy, &r.x_series(), &r.y, k).valuation(fl)?;
    Some(Ratio::new(v as i64, r.e as i64))
}

/// Rational expansions of `f` together with the bound
/// N = max_i Σ_{j≠i} v(η_i − η_j), lifted until every expansion is known
/// beyond x^N.
pub fn expansions_with_bound(kf: &ExtField, f: &BiPoly<E>) -> Result<(Vec<Rpe>, Ratio<i64>)> {
    let mut rpes = rational_puiseux_expansions(kf, f, 2)?;
    let mut n = Ratio::from_integer(0);
    for r in rpes.iter_mut() {
        loop {
            if let Some(v) = fy_valuation(kf, f, r) {
                n = n.max(v);
                break;
            }
            let t = 2 * r.prec;
            r.extend_to(t);
        }
    }
    for r in rpes.iter_mut() {
        r.extend_to_x(n.to_integer() as usize + 2);
    }
    Ok((rpes, n))
}

/// A rational expansion cut at its regularity index.
#[derive(Debug, Clone)]
pub struct SingularPart {
    pub rpe: Rpe,
    /// Regularity index as an exponent of x.
    pub reg_index: Ratio<i64>,
    /// The same index as an exponent of T.
    pub t_index: usize,
}

/// Singular parts of all rational expansions of `f` above x = 0.
pub fn singular_parts(kf: &ExtField, f: &BiPoly<E>) -> Result<Vec<SingularPart>> {
    let (rpes, _) = expansions_with_bound(kf, f)?;
    let set = classical_expansions(kf, &rpes)?;
    let v = set.pairwise_valuations()?;
    let mut out = Vec::new();
    for (ri, r) in rpes.iter().enumerate() {
        let i = set.items.iter().position(|c| c.rpe == ri).unwrap();
        let reg_s = (0..set.items.len())
            .filter(|&j| j != i)
            .map(|j| v[i][j])
            .max()
            .unwrap_or(0);
        let reg_index = Ratio::new(reg_s as i64, set.den as i64);
        let t_index = reg_s * r.e / set.den;
        let mut cut = r.clone();
        cut.y = r.truncated(t_index);
        out.push(SingularPart {
            rpe: cut,
            reg_index,
            t_index,
        });
    }
    Ok(out)
}

/// Terms of b(x, η(x)) with exponent below `cutoff`, as (exponent, coefficient)
/// pairs in the common field.
pub fn series_eval_bipoly(
    set: &ClassicalSet,
    b: &BiPoly<E>,
    which: usize,
    cutoff: Ratio<i64>,
) -> Result<Vec<(Ratio<i64>, E)>> {
    let big = &set.field;
    let d = set.den as i64;
    let eta = &set.items[which];
    let k = (cutoff * d).ceil().to_integer().max(0) as usize;
    if eta.prec != EXACT && eta.prec < k {
        return Err(Error::InsufficientPrecision(format!(
            "need s^{k}, have s^{}",
            eta.prec
        )));
    }
    let bb = b.map(big, |c| set.ground.apply(c));
    let x = UniPoly::monomial(big, big.one(), set.den);
    let val = eval_bipoly(big, &bb, &x, &eta.series, k);
    Ok(val
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !big.is_zero(c))
        .map(|(i, c)| (Ratio::new(i as i64, d), c.clone()))
        .collect())
}
