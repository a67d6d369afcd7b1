//! Test corpus shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use intbasis::io::CurveInput;

pub const P: u64 = 10007;

pub type Terms = Vec<(usize, usize, i64)>;

pub fn mul_terms(a: &[(usize, usize, i64)], b: &[(usize, usize, i64)]) -> Terms {
    let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for &(i, j, c) in a {
        for &(k, l, d) in b {
            let e = acc.entry((i + k, j + l)).or_insert(0);
            *e = (*e + c * d).rem_euclid(P as i64);
        }
    }
    acc.into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|((i, j), c)| (i, j, c))
        .collect()
}

pub fn product(fs: &[Terms]) -> Terms {
    fs.iter().fold(vec![(0, 0, 1)], |a, b| mul_terms(&a, b))
}

/// y^n - x^m.
pub fn binomial(n: usize, m: usize) -> Terms {
    vec![(0, n, 1), (m, 0, -1)]
}

/// n lines y = i x + i^3 (i = 1..n); for n <= 8 every pair meets at its own
/// x-coordinate -(i^2 + ij + j^2), so the discriminant is a product of
/// distinct squared linear factors.
pub fn lines(n: usize) -> Terms {
    let fs: Vec<Terms> = (1..=n as i64)
        .map(|i| vec![(0, 1, 1), (1, 0, -i), (0, 0, -i * i * i)])
        .collect();
    product(&fs)
}

/// (y^2 - h^2) (y - 3) ... (y - 8) with h = (x - 1) ... (x - k): n = 8 for
/// every k, and the number of nodes grows with k.
pub fn node_family(k: usize) -> Terms {
    let h = product(
        &(1..=k as i64)
            .map(|j| vec![(1, 0, 1), (0, 0, -j)])
            .collect::<Vec<_>>(),
    );
    let h2: Terms = mul_terms(&h, &h)
        .into_iter()
        .map(|(i, j, c)| (i, j, -c))
        .collect();
    let mut fs = vec![std::iter::once((0, 2, 1)).chain(h2).collect::<Terms>()];
    fs.extend((3..=8).map(|i| vec![(0, 1, 1), (0, 0, -i)]));
    product(&fs)
}

pub fn curve(t: &[(usize, usize, i64)]) -> CurveInput {
    CurveInput::new(P, t).unwrap()
}

/// Named curves with n <= 8 and deg_x <= 10.
pub fn corpus() -> Vec<(&'static str, Terms)> {
    vec![
        ("cusp y^2-x^3", binomial(2, 3)),
        ("node y^2-x^2(x+1)", vec![(0, 2, 1), (3, 0, -1), (2, 0, -1)]),
        (
            "tacnode y^2-x^4(x+1)",
            vec![(0, 2, 1), (5, 0, -1), (4, 0, -1)],
        ),
        (
            "two cusps y^2-x^3(x-1)^3",
            vec![(0, 2, 1), (6, 0, -1), (5, 0, 3), (4, 0, -3), (3, 0, 1)],
        ),
        ("y^3-x^7", binomial(3, 7)),
        ("y^4-x^3", binomial(4, 3)),
        ("y^5-x^7", binomial(5, 7)),
        ("y^8-x^9", binomial(8, 9)),
        (
            "two-link chain",
            vec![(0, 4, 1), (3, 2, -2), (6, 0, 1), (5, 1, -4), (7, 0, -1)],
        ),
        (
            "(y-1)(y^2-x^3)",
            vec![(0, 3, 1), (0, 2, -1), (3, 1, -1), (3, 0, 1)],
        ),
        (
            "cusp over x^2+1",
            vec![(0, 2, 1)]
                .into_iter()
                .chain(neg(&product(&[x2p1(), x2p1(), x2p1()])))
                .collect(),
        ),
        (
            "cusp over x^2+x+1",
            vec![(0, 2, 1)]
                .into_iter()
                .chain(neg(&product(&[x2x1(), x2x1(), x2x1()])))
                .collect(),
        ),
        (
            "y^3-x(x^2+1)^2",
            vec![(0, 3, 1)]
                .into_iter()
                .chain(neg(&product(&[vec![(1, 0, 1)], x2p1(), x2p1()])))
                .collect(),
        ),
        (
            "conjugate node y^2+x^2+x^3",
            vec![(0, 2, 1), (2, 0, 1), (3, 0, 1)],
        ),
        (
            "triple point",
            product(&[
                vec![(0, 1, 1), (1, 0, -1)],
                vec![(0, 1, 1), (1, 0, 1)],
                vec![(0, 1, 1), (1, 0, -2)],
            ]),
        ),
        ("eight lines", lines(8)),
        (
            "y^4-x^3(x-1)^5",
            vec![(0, 4, 1)]
                .into_iter()
                .chain(neg(&product(&[binomial_x(3, 0), binomial_x(5, 1)])))
                .collect(),
        ),
        ("y^3-x^4-x^5", vec![(0, 3, 1), (4, 0, -1), (5, 0, -1)]),
        ("y^2-x^5-x^6", vec![(0, 2, 1), (5, 0, -1), (6, 0, -1)]),
        (
            "y^3-(x^2+1)(x-2)^4",
            vec![(0, 3, 1)]
                .into_iter()
                .chain(neg(&product(&[x2p1(), binomial_x(4, 2)])))
                .collect(),
        ),
        (
            "y^6-x^4(x-1)^2",
            vec![(0, 6, 1)]
                .into_iter()
                .chain(neg(&product(&[binomial_x(4, 0), binomial_x(2, 1)])))
                .collect(),
        ),
        ("y^4+x^2 y+x^10", vec![(0, 4, 1), (2, 1, 1), (10, 0, 1)]),
        (
            "(y-1)^3+x^3(y-1)+x^7",
            vec![
                (0, 3, 1),
                (0, 2, -3),
                (3, 1, 1),
                (0, 1, 3),
                (7, 0, 1),
                (3, 0, -1),
                (0, 0, -1),
            ],
        ),
        (
            "y^5-x^2(x^2+x+1)^3",
            vec![(0, 5, 1)]
                .into_iter()
                .chain(neg(&product(&[vec![(2, 0, 1)], x2x1(), x2x1(), x2x1()])))
                .collect(),
        ),
    ]
}

fn neg(t: &[(usize, usize, i64)]) -> Terms {
    t.iter().map(|&(i, j, c)| (i, j, -c)).collect()
}

fn x2p1() -> Terms {
    vec![(2, 0, 1), (0, 0, 1)]
}

fn x2x1() -> Terms {
    vec![(2, 0, 1), (1, 0, 1), (0, 0, 1)]
}

/// (x - a)^k.
fn binomial_x(k: usize, a: i64) -> Terms {
    product(&vec![vec![(1, 0, 1), (0, 0, -a)]; k])
}
