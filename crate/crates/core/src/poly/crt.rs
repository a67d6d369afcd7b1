use super::UniPoly;
use crate::error::Result;
use crate::field::Field;

/// The unique polynomial of degree < sum deg m_i congruent to r_i mod m_i.
pub fn crt_combine<F: Field>(
    f: &F,
    residues: &[UniPoly<F::Elem>],
    moduli: &[UniPoly<F::Elem>],
) -> Result<UniPoly<F::Elem>> {
    assert_eq!(residues.len(), moduli.len());
    let mut acc = UniPoly::zero();
    let mut m = UniPoly::one(f);
    for (r, mi) in residues.iter().zip(moduli) {
        // acc + m * t with t = (r - acc) / m mod mi
        let inv = m.inv_mod(f, mi)?;
        let t = r.sub(f, &acc).mul(f, &inv).rem(f, mi);
        acc = acc.add(f, &m.mul(f, &t));
        m = m.mul(f, mi);
    }
    if moduli.is_empty() {
        return Ok(UniPoly::zero());
    }
    Ok(acc.rem(f, &m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    #[test]
    fn crt_examples() {
        let f = PrimeField::new(10007).unwrap();
        let x = UniPoly::x(&f);
        let xm1 = UniPoly::linear(&f, &1);
        let r = crt_combine(
            &f,
            &[UniPoly::one(&f), UniPoly::zero()],
            &[x.clone(), xm1.clone()],
        )
        .unwrap();
        assert_eq!(r, UniPoly::from_coeffs(&f, vec![1, f.from_i64(-1)]));
        let s = UniPoly::from_coeffs(&f, vec![5]);
        assert_eq!(
            crt_combine(&f, std::slice::from_ref(&s), std::slice::from_ref(&x)).unwrap(),
            s
        );
        assert!(
            crt_combine(&f, &[UniPoly::zero(), UniPoly::zero()], &[x.clone(), xm1])
                .unwrap()
                .is_zero()
        );
        assert_eq!(
            crt_combine(
                &f,
                &[UniPoly::zero(), UniPoly::one(&f)],
                &[x.clone(), x.square(&f)]
            ),
            Err(Error::NotCoprime)
        );
    }

    proptest! {
        #[test]
        fn crt_reduces_to_residues(a in 0u64..97, b in 0u64..97, r1 in 0u64..97, r2 in 0u64..97, k in 1u64..4) {
            prop_assume!(a != b);
            let f = PrimeField::new(97).unwrap();
            let m1 = UniPoly::linear(&f, &a).pow(&f, k);
            let m2 = UniPoly::linear(&f, &b);
            let res = [UniPoly::constant(&f, r1), UniPoly::constant(&f, r2)];
            let c = crt_combine(&f, &res, &[m1.clone(), m2.clone()]).unwrap();
            prop_assert_eq!(c.rem(&f, &m1), res[0].clone());
            prop_assert_eq!(c.rem(&f, &m2), res[1].clone());
        }
    }
}
