mod common;

use proptest::prelude::*;

use intbasis::basis::{compare_bases, Comparison};
use intbasis::io::CurveInput;
use intbasis::run::{compute, run, Algorithm, RunOptions};
use intbasis::Error;

/// y^n + Σ c_j x^(a_j) y^j with a_j ≥ n − j, so the origin is a singular
/// point whenever at least two terms survive; `s` moves it to x = s.
fn random_curve() -> impl Strategy<Value = (u64, Vec<(usize, usize, i64)>)> {
    (2usize..=5, 0i64..3).prop_flat_map(|(n, s)| {
        let terms = proptest::collection::vec((0usize..4, -20i64..20), n);
        (Just(n), Just(s), terms).prop_map(|(n, s, t)| {
            let mut f = vec![vec![(0usize, n, 1i64)]];
            for (j, (extra, c)) in t.into_iter().enumerate() {
                if c != 0 {
                    let a = n - j + extra;
                    // c (x - s)^a y^j
                    let xs = vec![(1usize, 0usize, 1i64), (0, 0, -s)];
                    let mut term = vec![(0usize, j, c)];
                    for _ in 0..a {
                        term = common::mul_terms(&term, &xs);
                    }
                    f.push(term);
                }
            }
            let mut acc = std::collections::BTreeMap::new();
            for term in f.into_iter().flatten() {
                *acc.entry((term.0, term.1)).or_insert(0i64) += term.2;
            }
            (
                common::P,
                acc.into_iter().map(|((i, j), c)| (i, j, c)).collect(),
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn algorithms_agree_and_verify((p, terms) in random_curve()) {
        let c = match CurveInput::new(p, &terms) {
            Ok(c) => c,
            Err(Error::SquarefreeViolation) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let out = run(&c, &RunOptions::default()).unwrap();
        prop_assert!(out.agree, "{terms:?}");
        let v = out.verification.unwrap();
        prop_assert!(v.pass, "{terms:?}: {v:?}");
    }

    #[test]
    fn seed_does_not_change_the_module((p, terms) in random_curve(), seed in 1u64..1000) {
        let Ok(c) = CurveInput::new(p, &terms) else { return Ok(()) };
        for a in Algorithm::SINGLE {
            let x = compute(&c, a, &RunOptions::default()).unwrap();
            let y = compute(&c, a, &RunOptions { seed, ..Default::default() }).unwrap();
            prop_assert_eq!(compare_bases(&c.fld, &x.basis, &y.basis).unwrap(), Comparison::Equal);
        }
    }
}
