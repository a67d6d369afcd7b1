//! Independent checks on a computed basis: integrality, a maximality
//! certificate from ramification data, and discriminant accounting.

use serde::Serialize;

use crate::basis::{square_factors, IntegralBasis};
use crate::bivariate::{discriminant_y, is_integral, shift_origin, BiPoly};
use crate::field::{ExtField, PrimeField};
use crate::poly::UniPoly;
use crate::polymat::PolyMatrix;
use crate::puiseux::rational_puiseux_expansions;
use crate::trager::{order_discriminant, OrderBasis};
use crate::{Error, Result};

type P = UniPoly<u64>;

/// One pass/fail per basis element.
pub fn verify_integrality(fld: &PrimeField, b: &IntegralBasis, f: &BiPoly<u64>) -> Vec<bool> {
    (0..b.n)
        .map(|d| is_integral(fld, &b.element(fld, d), f))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalityCheck {
    /// Coefficients of φ, constant term first.
    pub phi: Vec<u64>,
    /// v_φ(Disc f) - 2 Σ_d e_d(φ).
    pub lhs: i64,
    /// Σ (e_i - 1) f_i over the places above φ.
    pub rhs: i64,
    pub pass: bool,
}

/// The discriminant of the maximal order at φ equals the tame different
/// Σ (e_i - 1) f_i, so the basis is maximal at φ iff the index accounts for
/// the rest of v_φ(Disc f).
pub fn verify_maximality(
    fld: &PrimeField,
    b: &IntegralBasis,
    f: &BiPoly<u64>,
) -> Result<Vec<MaximalityCheck>> {
    let (_, sq) = square_factors(fld, f)?;
    let mut out = Vec::with_capacity(sq.len());
    for (phi, m) in sq {
        let kf = ExtField::new(*fld, &phi)?;
        let alpha = kf.gen();
        let g = shift_origin::<PrimeField, ExtField>(&kf, f, |c| kf.from_base(*c), &alpha);
        let rpes = rational_puiseux_expansions(&kf, &g, m + 2)?;
        let rhs: usize = rpes.iter().map(|r| (r.e - 1) * r.residue_degree()).sum();
        let lhs = m as i64 - 2 * b.exponents_at(&phi).iter().sum::<usize>() as i64;
        out.push(MaximalityCheck {
            phi: phi.coeffs().to_vec(),
            lhs,
            rhs: rhs as i64,
            pass: lhs == rhs as i64,
        });
    }
    Ok(out)
}

/// The basis as rows over a single common denominator.
pub fn to_order_basis(fld: &PrimeField, b: &IntegralBasis, f: &BiPoly<u64>) -> Result<OrderBasis> {
    let dens: Vec<P> = (0..b.n).map(|d| b.denominator(fld, d)).collect();
    let common = dens.iter().fold(UniPoly::one(fld), |a: P, d| {
        let g = a.gcd(fld, d);
        a.mul(fld, &d.div_exact(fld, &g).expect("gcd divides"))
    });
    let mut rows = Vec::with_capacity(b.n);
    for (d, den) in dens.iter().enumerate() {
        let s = common
            .div_exact(fld, den)
            .ok_or(Error::InternalInvariantBroken("lcm".into()))?;
        let num = &b.elements[d].num;
        rows.push((0..b.n).map(|j| num.coeff(j).mul(fld, &s)).collect());
    }
    let disc = discriminant_y(fld, f)?;
    Ok(OrderBasis {
        a: PolyMatrix::from_rows(rows),
        den: common,
        disc,
    })
}

/// det(tr(b_i b_j)) · (Π den_d)² and Disc(f) agree up to a unit.
pub fn verify_discriminant(fld: &PrimeField, b: &IntegralBasis, f: &BiPoly<u64>) -> Result<bool> {
    let v = to_order_basis(fld, b, f)?;
    let det = order_discriminant(fld, f, &v)?;
    let dens = (0..b.n).fold(UniPoly::one(fld), |a, d| a.mul(fld, &b.denominator(fld, d)));
    let lhs = det.mul(fld, &dens.square(fld));
    Ok(!lhs.is_zero() && lhs.monic(fld) == v.disc.monic(fld))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisElement;
    use crate::field::Field;

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
    fn cusp_basis() -> IntegralBasis {
        let f = fp();
        IntegralBasis {
            n: 2,
            denominator_factors: vec![UniPoly::from_coeffs(&f, vec![0, 1])],
            elements: vec![
                BasisElement {
                    num: bp(&[(0, 0, 1)]),
                    den_exp: vec![0],
                },
                BasisElement {
                    num: bp(&[(0, 1, 1)]),
                    den_exp: vec![1],
                },
            ],
        }
    }

    #[test]
    fn integrality_examples() {
        let f = fp();
        let b = cusp_basis();
        assert_eq!(
            verify_integrality(&f, &b, &bp(&[(0, 2, 1), (3, 0, -1)])),
            vec![true, true]
        );
        assert_eq!(
            verify_integrality(&f, &b, &bp(&[(0, 2, 1), (1, 0, -1)])),
            vec![true, false]
        );
        let pw = IntegralBasis::power(&f, 2);
        assert_eq!(
            verify_integrality(&f, &pw, &bp(&[(0, 2, 1), (1, 0, -1)])),
            vec![true, true]
        );
    }

    #[test]
    fn maximality_examples() {
        let f = fp();
        let cusp = bp(&[(0, 2, 1), (3, 0, -1)]);
        let ok = verify_maximality(&f, &cusp_basis(), &cusp).unwrap();
        assert_eq!((ok[0].lhs, ok[0].rhs, ok[0].pass), (1, 1, true));
        let bad = verify_maximality(&f, &IntegralBasis::power(&f, 2), &cusp).unwrap();
        assert_eq!((bad[0].lhs, bad[0].rhs, bad[0].pass), (3, 1, false));
        let smooth = bp(&[(0, 2, 1), (1, 0, -1)]);
        assert!(verify_maximality(&f, &IntegralBasis::power(&f, 2), &smooth)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn discriminant_identity() {
        let f = fp();
        let cusp = bp(&[(0, 2, 1), (3, 0, -1)]);
        assert!(verify_discriminant(&f, &cusp_basis(), &cusp).unwrap());
        assert!(verify_discriminant(&f, &IntegralBasis::power(&f, 2), &cusp).unwrap());
    }
}
