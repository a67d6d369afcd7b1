//! Local integral bases from linear conditions on Puiseux expansions, one
//! factor φ of the discriminant at a time, glued by CRT.
//!
//! All unknowns are taken over F_p: a constant a ∈ K(α) is written in the
//! basis 1, α, ..., α^(k-1), which becomes 1, x, ..., x^(k-1) after the
//! substitution α → x. The conditions are read on one representative
//! expansion per branch over K(α); Galois conjugation covers the rest.

use crate::basis::{square_factors, IntegralBasis, LocalBasis};
use crate::bivariate::{shift_origin, BiPoly};
use crate::error::{Error, Result};
use crate::field::{ExtField, Field, PrimeField};
use crate::opcount::{self, Phase};
use crate::poly::UniPoly;
use crate::puiseux::{rational_puiseux_expansions, Series};

type P = UniPoly<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Incremental,
    Binary,
}

#[derive(Debug, Clone)]
pub struct VhOptions {
    /// Use the binary-search variant when M(φ) is at most this.
    pub binary_threshold: usize,
}

impl Default for VhOptions {
    fn default() -> Self {
        VhOptions {
            binary_threshold: 3,
        }
    }
}

/// The local basis at φ together with how it was obtained.
#[derive(Debug, Clone)]
pub struct LocalBasisVH {
    pub local: LocalBasis,
    /// Multiplicity of φ in the discriminant.
    pub m_phi: usize,
    pub variant: Variant,
    /// Linear systems solved for this factor.
    pub systems: usize,
}

/// One branch over K(α), with x = α + γT^e written in the branch field.
struct Branch {
    field: ExtField,
    e: usize,
    x: Series,
    phix: Series,
    y: Series,
    prec: usize,
}

struct Local {
    k: usize,
    phi: P,
    branches: Vec<Branch>,
}

fn eval_fp_poly(fl: &ExtField, c: &P, x: &Series, k: usize) -> Series {
    let mut acc = UniPoly::zero();
    for a in c.coeffs().iter().rev() {
        acc = mul_t(fl, &acc, x, k).add(fl, &UniPoly::constant(fl, fl.from_base(*a)));
    }
    trunc_t(fl, &acc, k)
}

fn trunc_t(fl: &ExtField, a: &Series, k: usize) -> Series {
    crate::puiseux::series::trunc(fl, a, k)
}

fn mul_t(fl: &ExtField, a: &Series, b: &Series, k: usize) -> Series {
    crate::puiseux::series::mul_trunc(fl, a, b, k)
}

impl Local {
    /// Expansions of f(x + α, y) over K(α) known modulo x^(m_phi + 2).
    fn new(fld: &PrimeField, f: &BiPoly<u64>, phi: &P, m_phi: usize) -> Result<Self> {
        let kf = ExtField::new(*fld, phi)?;
        let alpha = kf.gen();
        let g = shift_origin::<PrimeField, ExtField>(&kf, f, |c| kf.from_base(*c), &alpha);
        let rho = m_phi + 2;
        let rpes = rational_puiseux_expansions(&kf, &g, rho)?;
        let mut branches = Vec::with_capacity(rpes.len());
        for mut r in rpes {
            let prec = r.e * rho;
            r.extend_to(prec);
            let fl = r.field.clone();
            let x = UniPoly::constant(&fl, r.emb.apply(&alpha)).add(&fl, &r.x_series());
            let phix = eval_fp_poly(&fl, phi, &x, prec);
            let y = trunc_t(&fl, &r.y, prec);
            branches.push(Branch {
                field: fl,
                e: r.e,
                x,
                phix,
                y,
                prec,
            });
        }
        Ok(Local {
            k: phi.degree().unwrap(),
            phi: phi.clone(),
            branches,
        })
    }

    /// F_p coordinates of the T-coefficients below `lim(b)` of one series per
    /// branch, concatenated.
    fn coords(&self, s: &[Series], lim: impl Fn(&Branch) -> usize) -> Vec<u64> {
        let mut out = Vec::new();
        for (b, s) in self.branches.iter().zip(s) {
            for t in 0..lim(b) {
                out.extend(b.field.to_coords(&s.coeff(&b.field, t)));
            }
        }
        out
    }
}

/// Solves A z = rhs over F_p, A given by columns. Returns a solution, if
/// any, and the rank of A.
fn solve_fp(fld: &PrimeField, cols: &[Vec<u64>], rhs: &[u64]) -> (Option<Vec<u64>>, usize) {
    let _g = opcount::enter(Phase::LinearAlgebra);
    opcount::count_system();
    let nr = rhs.len();
    let nc = cols.len();
    let mut a: Vec<Vec<u64>> = (0..nr)
        .map(|r| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        let Some(pr) = (r..nr).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = fld.inv(&a[r][c]);
        for v in a[r].iter_mut().skip(c) {
            *v = fld.mul(v, &inv);
        }
        for i in 0..nr {
            if i != r && a[i][c] != 0 {
                let m = a[i][c];
                for j in c..=nc {
                    let t = fld.mul(&m, &a[r][j]);
                    a[i][j] = fld.sub(&a[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nr {
            break;
        }
    }
    let rank = pivots.len();
    if a[rank..].iter().any(|row| row[nc] != 0) {
        return (None, rank);
    }
    let mut z = vec![0; nc];
    for (i, &c) in pivots.iter().enumerate() {
        z[c] = a[i][nc];
    }
    (Some(z), rank)
}

fn x_poly(fld: &PrimeField, c: &[u64]) -> P {
    UniPoly::from_coeffs(fld, c.to_vec())
}

/// Algorithm with one division by φ per solved system: b_d starts at
/// y b_(d-1) and is divided while (b_d + Σ a_i b_i)/φ stays integral.
pub fn local_basis_vh(
    fld: &PrimeField,
    f: &BiPoly<u64>,
    phi: &P,
    m_phi: usize,
) -> Result<LocalBasisVH> {
    let n = f.deg_y().ok_or(Error::NotMonic)?;
    let loc = Local::new(fld, f, phi, m_phi)?;
    let k = loc.k;
    let mut nums: Vec<BiPoly<u64>> = vec![BiPoly::one(fld)];
    let mut exps = vec![0usize];
    // Series of the finished b_i on each branch.
    let mut ser: Vec<Vec<Series>> = vec![loc
        .branches
        .iter()
        .map(|b| UniPoly::one(&b.field))
        .collect()];
    let mut systems = 0;
    for d in 1..n {
        let mut num = nums[d - 1].mul(fld, &BiPoly::y_pow(fld, 1));
        let mut j = exps[d - 1];
        let mut s: Vec<Series> = loc
            .branches
            .iter()
            .zip(&ser[d - 1])
            .map(|(b, s)| mul_t(&b.field, s, &b.y, b.prec - b.e * j))
            .collect();
        loop {
            if j >= m_phi {
                break;
            }
            // Columns x^m b_i for i < d, m < k.
            let mut cols = Vec::with_capacity(d * k);
            for si in &ser {
                let mut pw: Vec<Series> = loc
                    .branches
                    .iter()
                    .map(|b| UniPoly::one(&b.field))
                    .collect();
                for _ in 0..k {
                    let c: Vec<Series> = loc
                        .branches
                        .iter()
                        .zip(&pw)
                        .zip(si)
                        .map(|((b, p), s)| mul_t(&b.field, p, s, b.e))
                        .collect();
                    cols.push(loc.coords(&c, |b| b.e));
                    for (b, p) in loc.branches.iter().zip(pw.iter_mut()) {
                        *p = mul_t(&b.field, p, &b.x, b.prec);
                    }
                }
            }
            let rhs: Vec<u64> = loc.coords(&s, |b| b.e).iter().map(|v| fld.neg(v)).collect();
            systems += 1;
            let (sol, rank) = solve_fp(fld, &cols, &rhs);
            let Some(z) = sol else { break };
            if rank != cols.len() {
                return Err(Error::InternalInvariantBroken(format!(
                    "solvable system with {} unknowns has rank {}",
                    cols.len(),
                    rank
                )));
            }
            let a: Vec<P> = z.chunks(k).map(|c| x_poly(fld, c)).collect();
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                let scale = ai.mul(fld, &phi.pow(fld, (j - exps[i]) as u64));
                num = num.add(fld, &nums[i].mul_x_poly(fld, &scale));
            }
            let newprec = |b: &Branch| b.prec - b.e * (j + 1);
            for (bi, b) in loc.branches.iter().enumerate() {
                let fl = &b.field;
                let cur = b.prec - b.e * j;
                let mut t = s[bi].clone();
                for (i, ai) in a.iter().enumerate() {
                    if !ai.is_zero() {
                        let av = eval_fp_poly(fl, ai, &b.x, cur);
                        t = t.add(fl, &mul_t(fl, &av, &ser[i][bi], cur));
                    }
                }
                s[bi] = divide_by_phi(fl, &t, b, newprec(b))?;
            }
            j += 1;
        }
        nums.push(num);
        exps.push(j);
        ser.push(s);
    }
    check_exponents(&exps, m_phi)?;
    if 2 * systems > 2 * n + m_phi {
        return Err(Error::InternalInvariantBroken(format!(
            "{systems} systems exceed n + M/2"
        )));
    }
    Ok(LocalBasisVH {
        local: LocalBasis {
            phi: loc.phi,
            nums,
            exps,
        },
        m_phi,
        variant: Variant::Incremental,
        systems,
    })
}

/// s / φ(X) mod T^k, where s must vanish below T^e.
fn divide_by_phi(fl: &ExtField, s: &Series, b: &Branch, k: usize) -> Result<Series> {
    let c = s.coeffs();
    if c.iter().take(b.e).any(|v| !fl.is_zero(v)) {
        return Err(Error::InternalInvariantBroken(
            "division by φ leaves a pole".into(),
        ));
    }
    let q = UniPoly::from_coeffs(fl, c.iter().skip(b.e).cloned().collect());
    let u = UniPoly::from_coeffs(fl, b.phix.coeffs().iter().skip(b.e).cloned().collect());
    Ok(mul_t(fl, &q, &u.series_inverse(fl, k), k))
}

fn check_exponents(exps: &[usize], m_phi: usize) -> Result<()> {
    if exps[0] != 0 || exps.windows(2).any(|w| w[0] > w[1]) || exps.iter().any(|&e| e > m_phi) {
        return Err(Error::InternalInvariantBroken(format!(
            "exponents {exps:?} not monotone within M = {m_phi}"
        )));
    }
    Ok(())
}

/// The largest j such that some monic p = y^k + Σ c_i(x) y^i has p/φ^j
/// integral at φ, searched upward from `from` (which must be attainable,
/// or 0). Returns (j, p) and the number of systems solved.
fn probe(
    fld: &PrimeField,
    loc: &Local,
    ypows: &[Vec<Series>],
    kdeg: usize,
    from: usize,
    upto: usize,
) -> (usize, BiPoly<u64>, usize) {
    let mut best = (0, BiPoly::y_pow(fld, kdeg));
    let mut systems = 0;
    let k = loc.k;
    let mut j = from.max(1);
    while j <= upto {
        let lim = |b: &Branch| b.e * j;
        let mut cols = Vec::new();
        for yi in ypows.iter().take(kdeg) {
            for t in 0..j {
                for m in 0..k {
                    let c: Vec<Series> = loc
                        .branches
                        .iter()
                        .zip(yi)
                        .map(|(b, y)| {
                            let fl = &b.field;
                            let w = lim(b);
                            let mut v = mul_t(fl, y, &pow_t(fl, &b.phix, t, w), w);
                            v = mul_t(fl, &v, &pow_t(fl, &b.x, m, w), w);
                            v
                        })
                        .collect();
                    cols.push(loc.coords(&c, lim));
                }
            }
        }
        let rhs: Vec<u64> = loc
            .coords(&ypows[kdeg], lim)
            .iter()
            .map(|v| fld.neg(v))
            .collect();
        systems += 1;
        let (sol, _) = solve_fp(fld, &cols, &rhs);
        let Some(z) = sol else { break };
        let mut coeffs = Vec::with_capacity(kdeg + 1);
        for ci in z.chunks(j * k) {
            let mut c = UniPoly::zero();
            for (t, cm) in ci.chunks(k).enumerate() {
                c = c.add(fld, &x_poly(fld, cm).mul(fld, &loc.phi.pow(fld, t as u64)));
            }
            coeffs.push(c);
        }
        coeffs.push(UniPoly::one(fld));
        best = (j, BiPoly::from_coeffs(coeffs));
        j += 1;
    }
    (best.0, best.1, systems)
}

fn pow_t(fl: &ExtField, a: &Series, e: usize, k: usize) -> Series {
    let mut r = UniPoly::one(fl);
    for _ in 0..e {
        r = mul_t(fl, &r, a, k);
    }
    r
}

/// Binary-search variant: exponents are located by probing single indices
/// k with b_0..b_(k-1) left at y^i, then filled in along plateaus.
pub fn local_basis_vh_binary(
    fld: &PrimeField,
    f: &BiPoly<u64>,
    phi: &P,
    m_phi: usize,
) -> Result<LocalBasisVH> {
    let n = f.deg_y().ok_or(Error::NotMonic)?;
    let loc = Local::new(fld, f, phi, m_phi)?;
    let ypows: Vec<Vec<Series>> = (0..n)
        .map(|i| {
            loc.branches
                .iter()
                .map(|b| pow_t(&b.field, &b.y, i, b.prec))
                .collect()
        })
        .collect();
    let upto = m_phi / 2;
    let mut systems = 0;
    // (k, e_k, numerator) at each index where the exponent jumps.
    let mut jumps: Vec<(usize, usize, BiPoly<u64>)> = Vec::new();
    let exceeds = |k: usize, l: usize, systems: &mut usize| -> bool {
        let (j, _, s) = probe(fld, &loc, &ypows, k, l + 1, l + 1);
        *systems += s;
        j > l
    };
    let (top, top_num, s) = probe(fld, &loc, &ypows, n - 1, 1, upto);
    systems += s;
    let mut lo = 1;
    let mut level = 0;
    while level < top {
        // Smallest k in [lo, n-1] with e_k > level; e_(n-1) > level holds.
        let (mut a, mut b) = (lo, n - 1);
        while a < b {
            let mid = (a + b) / 2;
            if exceeds(mid, level, &mut systems) {
                b = mid;
            } else {
                a = mid + 1;
            }
        }
        let (e, num) = if a == n - 1 {
            (top, top_num.clone())
        } else {
            let (e, num, s) = probe(fld, &loc, &ypows, a, level + 1, upto);
            systems += s;
            (e, num)
        };
        jumps.push((a, e, num));
        level = e;
        lo = a + 1;
    }
    let mut nums = Vec::with_capacity(n);
    let mut exps = Vec::with_capacity(n);
    for i in 0..n {
        match jumps.iter().rev().find(|(k, _, _)| *k <= i) {
            Some((k, e, num)) => {
                nums.push(num.mul(fld, &BiPoly::y_pow(fld, i - k)));
                exps.push(*e);
            }
            None => {
                nums.push(BiPoly::y_pow(fld, i));
                exps.push(0);
            }
        }
    }
    check_exponents(&exps, m_phi)?;
    Ok(LocalBasisVH {
        local: LocalBasis {
            phi: loc.phi,
            nums,
            exps,
        },
        m_phi,
        variant: Variant::Binary,
        systems,
    })
}

/// Integral basis of K[x, y]/(f) by local computations at every square
/// factor of the discriminant.
pub fn global_basis_vh(
    fld: &PrimeField,
    f: &BiPoly<u64>,
    opts: &VhOptions,
) -> Result<(IntegralBasis, Vec<LocalBasisVH>)> {
    let n = f.deg_y().ok_or(Error::NotMonic)?;
    fld.check_curve_degree(n)?;
    let (_, sq) = square_factors(fld, f)?;
    let mut locals = Vec::with_capacity(sq.len());
    for (phi, m) in &sq {
        let lb = if *m <= opts.binary_threshold {
            local_basis_vh_binary(fld, f, phi, *m)?
        } else {
            local_basis_vh(fld, f, phi, *m)?
        };
        locals.push(lb);
    }
    let pieces: Vec<LocalBasis> = locals.iter().map(|l| l.local.clone()).collect();
    Ok((IntegralBasis::from_local(fld, n, &pieces)?, locals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{compare_bases, Comparison};
    use crate::bivariate::is_integral;

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
    fn up(c: &[i64]) -> P {
        let f = fp();
        UniPoly::from_coeffs(&f, c.iter().map(|&v| f.from_i64(v)).collect())
    }

    fn both(f: &BiPoly<u64>, phi: &P, m: usize) -> (LocalBasisVH, LocalBasisVH) {
        let fld = fp();
        (
            local_basis_vh(&fld, f, phi, m).unwrap(),
            local_basis_vh_binary(&fld, f, phi, m).unwrap(),
        )
    }

    fn same_module(a: &LocalBasisVH, b: &LocalBasisVH, n: usize) -> bool {
        let fld = fp();
        let ga = IntegralBasis::from_local(&fld, n, std::slice::from_ref(&a.local)).unwrap();
        let gb = IntegralBasis::from_local(&fld, n, std::slice::from_ref(&b.local)).unwrap();
        compare_bases(&fld, &ga, &gb).unwrap() == Comparison::Equal
    }

    #[test]
    fn cusp() {
        let f = bp(&[(0, 2, 1), (3, 0, -1)]);
        let (a, b) = both(&f, &up(&[0, 1]), 3);
        assert_eq!(a.local.exps, vec![0, 1]);
        assert_eq!(a.local.nums[1], bp(&[(0, 1, 1)]));
        assert_eq!(a.systems, 2);
        assert_eq!(b.local.exps, vec![0, 1]);
        assert!(same_module(&a, &b, 2));
    }

    #[test]
    fn closed_forms() {
        let fld = fp();
        for (n, m) in [(3usize, 2usize), (3, 4), (4, 3), (5, 3), (4, 7)] {
            let f = bp(&[(0, n, 1), (m, 0, -1)]);
            let (b, _) = global_basis_vh(&fld, &f, &VhOptions::default()).unwrap();
            let want: Vec<usize> = (0..n).map(|i| i * m / n).collect();
            assert_eq!(b.exponents_at(&up(&[0, 1])), want, "y^{n} - x^{m}");
            for d in 0..n {
                assert!(is_integral(&fld, &b.element(&fld, d), &f));
            }
        }
    }

    #[test]
    fn variants_agree() {
        let curves = [
            bp(&[(0, 2, 1), (4, 0, -1), (5, 0, -1)]),
            bp(&[(0, 3, 1), (7, 0, -1)]),
            bp(&[(0, 4, 1), (3, 2, -2), (6, 0, 1), (5, 1, -4), (7, 0, -1)]),
            bp(&[(0, 3, 1), (2, 1, -1), (2, 0, 1), (3, 0, 1)]),
        ];
        let fld = fp();
        for f in &curves {
            let (_, sq) = square_factors(&fld, f).unwrap();
            for (phi, m) in sq {
                let (a, b) = both(f, &phi, m);
                assert!(same_module(&a, &b, f.deg_y().unwrap()), "{f:?}");
            }
        }
    }

    #[test]
    fn two_conjugate_cusps_and_crt() {
        let fld = fp();
        // y^2 - x^3 (x-1)^3
        let g = up(&[0, 0, 0, 1]).mul(&fld, &up(&[-1, 1]).pow(&fld, 3));
        let f = BiPoly::from_coeffs(vec![g.neg(&fld), UniPoly::zero(), UniPoly::one(&fld)]);
        let (b, _) = global_basis_vh(&fld, &f, &VhOptions::default()).unwrap();
        assert_eq!(b.elements[1].num, bp(&[(0, 1, 1)]));
        assert_eq!(b.denominator(&fld, 1), up(&[0, -1, 1]));
        // y^2 - (x^2+1)^3: a cusp over a quadratic point.
        let g = up(&[1, 0, 1]).pow(&fld, 3);
        let f = BiPoly::from_coeffs(vec![g.neg(&fld), UniPoly::zero(), UniPoly::one(&fld)]);
        let (b, loc) = global_basis_vh(
            &fld,
            &f,
            &VhOptions {
                binary_threshold: 0,
            },
        )
        .unwrap();
        assert_eq!(loc[0].variant, Variant::Incremental);
        assert_eq!(b.denominator(&fld, 1), up(&[1, 0, 1]));
        assert!(is_integral(&fld, &b.element(&fld, 1), &f));
    }

    #[test]
    fn binary_solves_fewer_systems_on_nodes() {
        let fld = fp();
        // A node at the origin times six lines y = x + c missing it.
        let mut f = bp(&[(0, 2, 1), (2, 0, -1)]);
        for i in 1..=6 {
            f = f.mul(&fld, &bp(&[(0, 1, 1), (0, 0, -(i as i64) - 1), (1, 0, -1)]));
        }
        let (_, sq) = square_factors(&fld, &f).unwrap();
        let (phi, m) = sq.iter().find(|(p, _)| *p == up(&[0, 1])).unwrap().clone();
        assert_eq!(m, 2);
        let (a, b) = both(&f, &phi, m);
        assert!(same_module(&a, &b, 8));
        assert_eq!(a.systems, 8);
        assert!(b.systems < a.systems, "{} vs {}", b.systems, a.systems);
    }
}
