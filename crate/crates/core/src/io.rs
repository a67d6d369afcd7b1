//! JSON input and output.
//!
//! Input: `{"p": 10007, "f": [[i, j, c], ...]}` where each term is c·x^i·y^j
//! and c may be any integer (it is reduced mod p).

use serde::{Deserialize, Serialize};

use crate::basis::{BasisElement, IntegralBasis};
use crate::bivariate::{discriminant_y, BiPoly};
use crate::field::{Field, PrimeField};
use crate::poly::UniPoly;
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveJson {
    pub p: u64,
    pub f: Vec<(usize, usize, i64)>,
}

/// A validated curve: monic in y, squarefree, and p > 2 deg_y f.
#[derive(Debug, Clone)]
pub struct CurveInput {
    pub fld: PrimeField,
    pub f: BiPoly<u64>,
}

impl CurveInput {
    pub fn new(p: u64, terms: &[(usize, usize, i64)]) -> Result<Self> {
        let fld = PrimeField::new(p)?;
        let t: Vec<_> = terms
            .iter()
            .map(|&(i, j, c)| (i, j, fld.from_i64(c)))
            .collect();
        let f = BiPoly::from_terms(&fld, &t);
        if f.deg_y().is_none() || !f.is_monic_y(&fld) {
            return Err(Error::NotMonic);
        }
        fld.check_curve_degree(f.deg_y().unwrap())?;
        discriminant_y(&fld, &f)?;
        Ok(CurveInput { fld, f })
    }

    pub fn n(&self) -> usize {
        self.f.deg_y().unwrap()
    }

    pub fn to_json(&self) -> CurveJson {
        let f = self
            .f
            .terms(&self.fld)
            .into_iter()
            .map(|(i, j, c)| (i, j, c as i64))
            .collect();
        CurveJson { p: self.fld.p(), f }
    }
}

pub fn parse_curve(text: &str) -> Result<CurveInput> {
    let c: CurveJson = serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
    CurveInput::new(c.p, &c.f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub num: Vec<(usize, usize, u64)>,
    pub den_exp: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub n: usize,
    pub denominator_factors: Vec<Vec<u64>>,
    pub basis: Vec<ElementJson>,
}

impl BasisJson {
    pub fn from_basis(fld: &PrimeField, b: &IntegralBasis) -> Self {
        BasisJson {
            n: b.n,
            denominator_factors: b
                .denominator_factors
                .iter()
                .map(|p| p.coeffs().to_vec())
                .collect(),
            basis: b
                .elements
                .iter()
                .map(|e| ElementJson {
                    num: e.num.terms(fld),
                    den_exp: e.den_exp.clone(),
                })
                .collect(),
        }
    }

    pub fn to_basis(&self, fld: &PrimeField) -> IntegralBasis {
        IntegralBasis {
            n: self.n,
            denominator_factors: self
                .denominator_factors
                .iter()
                .map(|c| UniPoly::from_coeffs(fld, c.iter().map(|&v| v % fld.p()).collect()))
                .collect(),
            elements: self
                .basis
                .iter()
                .map(|e| BasisElement {
                    num: BiPoly::from_terms(fld, &e.num),
                    den_exp: e.den_exp.clone(),
                })
                .collect(),
        }
    }
}
