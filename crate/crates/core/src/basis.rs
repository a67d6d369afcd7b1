//! Integral bases in triangular form p_d(x, y) / Π φ^(e_d(φ)), their
//! assembly from local pieces and their canonical (Hermite) form.

use crate::bivariate::{discriminant_y, BiPoly, FieldElement};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::crt::crt_combine;
use crate::poly::factor::square_multiplicity_factors;
use crate::poly::UniPoly;
use crate::polymat::{hnf, PolyMatrix};

type P = UniPoly<u64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    /// Monic in y of y-degree equal to the element's index.
    pub num: BiPoly<u64>,
    /// Exponent of each denominator factor.
    pub den_exp: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralBasis {
    pub n: usize,
    /// Monic irreducible polynomials, in canonical order.
    pub denominator_factors: Vec<P>,
    pub elements: Vec<BasisElement>,
}

/// A basis of the minimal local contribution at one irreducible φ:
/// element d is nums[d] / φ^(exps[d]).
#[derive(Debug, Clone)]
pub struct LocalBasis {
    pub phi: P,
    pub nums: Vec<BiPoly<u64>>,
    pub exps: Vec<usize>,
}

impl LocalBasis {
    pub fn power(fld: &PrimeField, phi: P, n: usize) -> Self {
        LocalBasis {
            phi,
            nums: (0..n).map(|d| BiPoly::y_pow(fld, d)).collect(),
            exps: vec![0; n],
        }
    }
}

/// Disc_y(f) and its irreducible factors of multiplicity at least 2.
pub fn square_factors(fld: &PrimeField, f: &BiPoly<u64>) -> Result<(P, Vec<(P, usize)>)> {
    let d = discriminant_y(fld, f)?;
    let sq = square_multiplicity_factors(fld, &d);
    Ok((d, sq))
}

impl IntegralBasis {
    pub fn power(fld: &PrimeField, n: usize) -> Self {
        IntegralBasis {
            n,
            denominator_factors: Vec::new(),
            elements: (0..n)
                .map(|d| BasisElement {
                    num: BiPoly::y_pow(fld, d),
                    den_exp: Vec::new(),
                })
                .collect(),
        }
    }

    pub fn denominator(&self, fld: &PrimeField, d: usize) -> P {
        let mut den = UniPoly::one(fld);
        for (phi, &e) in self
            .denominator_factors
            .iter()
            .zip(&self.elements[d].den_exp)
        {
            den = den.mul(fld, &phi.pow(fld, e as u64));
        }
        den
    }

    pub fn element(&self, fld: &PrimeField, d: usize) -> FieldElement<u64> {
        FieldElement {
            num: self.elements[d].num.clone(),
            den: self.denominator(fld, d),
        }
    }

    /// Exponents of φ across the basis, in order of y-degree.
    pub fn exponents_at(&self, phi: &P) -> Vec<usize> {
        match self.denominator_factors.iter().position(|q| q == phi) {
            Some(i) => self.elements.iter().map(|e| e.den_exp[i]).collect(),
            None => vec![0; self.n],
        }
    }

    /// Glues local bases by CRT on each coefficient of each numerator.
    pub fn from_local(fld: &PrimeField, n: usize, locals: &[LocalBasis]) -> Result<Self> {
        let mut locals: Vec<&LocalBasis> = locals
            .iter()
            .filter(|l| l.exps.iter().any(|&e| e > 0))
            .collect();
        locals.sort_by(|a, b| crate::poly::factor::canonical_cmp(fld, &a.phi, &b.phi));
        let factors: Vec<P> = locals.iter().map(|l| l.phi.clone()).collect();
        let mut elements = Vec::with_capacity(n);
        for d in 0..n {
            let exps: Vec<usize> = locals.iter().map(|l| l.exps[d]).collect();
            let mods: Vec<P> = locals
                .iter()
                .zip(&exps)
                .map(|(l, &e)| l.phi.pow(fld, e as u64))
                .collect();
            let mut coeffs = Vec::with_capacity(d + 1);
            for j in 0..d {
                let mut res = Vec::new();
                let mut mds = Vec::new();
                for (l, m) in locals.iter().zip(&mods) {
                    if m.degree() == Some(0) {
                        continue;
                    }
                    res.push(l.nums[d].coeff(j).rem(fld, m));
                    mds.push(m.clone());
                }
                coeffs.push(crt_combine(fld, &res, &mds)?);
            }
            coeffs.push(UniPoly::one(fld));
            elements.push(BasisElement {
                num: BiPoly::from_coeffs(coeffs),
                den_exp: exps,
            });
        }
        Ok(IntegralBasis {
            n,
            denominator_factors: factors,
            elements,
        })
    }

    /// Rows of the module over K[x] after multiplying by `common`, with
    /// columns ordered y^(n-1), ..., y^0.
    fn module_rows(&self, fld: &PrimeField, common: &P) -> Result<PolyMatrix<u64>> {
        let mut rows = Vec::with_capacity(self.n);
        for d in 0..self.n {
            let den = self.denominator(fld, d);
            let scale = common
                .div_exact(fld, &den)
                .ok_or(Error::InternalInvariantBroken(
                    "common denominator is not a multiple".into(),
                ))?;
            let num = &self.elements[d].num;
            rows.push(
                (0..self.n)
                    .rev()
                    .map(|j| num.coeff(j).mul(fld, &scale))
                    .collect(),
            );
        }
        Ok(PolyMatrix::from_rows(rows))
    }

    fn max_exponents(&self, factors: &[P]) -> Vec<usize> {
        factors
            .iter()
            .map(|phi| self.exponents_at(phi).into_iter().max().unwrap_or(0))
            .collect()
    }

    /// The Hermite normal form of the module spanned by the basis, read back
    /// as a triangular basis. Equal modules give identical results.
    pub fn canonical(&self, fld: &PrimeField) -> Result<Self> {
        let factors = self.denominator_factors.clone();
        let maxe = self.max_exponents(&factors);
        let common = power_product(fld, &factors, &maxe);
        let rows = self.module_rows(fld, &common)?;
        from_module_rows(fld, self.n, &factors, &common, &rows)
    }
}

fn power_product(fld: &PrimeField, factors: &[P], exps: &[usize]) -> P {
    factors
        .iter()
        .zip(exps)
        .fold(UniPoly::one(fld), |a, (phi, &e)| {
            a.mul(fld, &phi.pow(fld, e as u64))
        })
}

/// Reads a triangular basis off the module with rows `rows` / `common`
/// (columns y^(n-1) .. y^0), expressing denominators over `factors`.
pub fn from_module_rows(
    fld: &PrimeField,
    n: usize,
    factors: &[P],
    common: &P,
    rows: &PolyMatrix<u64>,
) -> Result<IntegralBasis> {
    let h = hnf(fld, rows);
    if h.rows() != n || (0..n).any(|i| h[(i, i)].is_zero()) {
        return Err(Error::RankDeficient);
    }
    let mut elements = vec![None; n];
    for i in 0..n {
        let d = n - 1 - i;
        let pivot = h[(i, i)].clone();
        let den = common
            .div_exact(fld, &pivot)
            .ok_or(Error::InternalInvariantBroken(
                "pivot does not divide the common denominator".into(),
            ))?;
        let mut coeffs = vec![UniPoly::zero(); d + 1];
        for c in i..n {
            let j = n - 1 - c;
            coeffs[j] = h[(i, c)]
                .div_exact(fld, &pivot)
                .ok_or(Error::InternalInvariantBroken(
                    "triangular row not divisible by its pivot".into(),
                ))?;
        }
        let mut rest = den.clone();
        let mut exps = Vec::with_capacity(factors.len());
        for phi in factors {
            let m = rest.multiplicity(fld, phi);
            rest = rest.div_exact(fld, &phi.pow(fld, m as u64)).unwrap();
            exps.push(m);
        }
        if rest.degree() != Some(0) {
            return Err(Error::InternalInvariantBroken(
                "denominator has an unexpected factor".into(),
            ));
        }
        elements[d] = Some(BasisElement {
            num: BiPoly::from_coeffs(coeffs),
            den_exp: exps,
        });
    }
    // Drop factors that no longer occur.
    let keep: Vec<usize> = (0..factors.len())
        .filter(|&k| elements.iter().any(|e| e.as_ref().unwrap().den_exp[k] > 0))
        .collect();
    let elements = elements
        .into_iter()
        .map(|e| {
            let e = e.unwrap();
            BasisElement {
                num: e.num,
                den_exp: keep.iter().map(|&k| e.den_exp[k]).collect(),
            }
        })
        .collect();
    Ok(IntegralBasis {
        n,
        denominator_factors: keep.iter().map(|&k| factors[k].clone()).collect(),
        elements,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// First HNF row (indexed by y-degree) where the modules differ.
    Differ(usize),
}

/// Module equality through Hermite forms over a common denominator.
pub fn compare_bases(fld: &PrimeField, a: &IntegralBasis, b: &IntegralBasis) -> Result<Comparison> {
    if a.n != b.n {
        return Ok(Comparison::Differ(0));
    }
    let mut factors = a.denominator_factors.clone();
    for phi in &b.denominator_factors {
        if !factors.contains(phi) {
            factors.push(phi.clone());
        }
    }
    let ea = a.max_exponents(&factors);
    let eb = b.max_exponents(&factors);
    let e: Vec<usize> = ea.iter().zip(&eb).map(|(x, y)| *x.max(y)).collect();
    let common = power_product(fld, &factors, &e);
    let ha = hnf(fld, &a.module_rows(fld, &common)?);
    let hb = hnf(fld, &b.module_rows(fld, &common)?);
    for i in 0..a.n {
        if i >= ha.rows() || i >= hb.rows() || ha.row(i) != hb.row(i) {
            return Ok(Comparison::Differ(a.n - 1 - i));
        }
    }
    Ok(Comparison::Equal)
}
