use num_rational::Ratio;

use crate::bivariate::BiPoly;
use crate::field::Field;

/// A segment of the lower Newton polygon between the support points
/// (j1, v1) and (j2, v2), j = y-degree and v = x-valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub j1: usize,
    pub v1: usize,
    pub j2: usize,
    pub v2: usize,
}

impl Edge {
    pub fn length(&self) -> usize {
        self.j2 - self.j1
    }

    /// Minus the slope, as a reduced fraction m/q.
    pub fn slope(&self) -> Ratio<i64> {
        Ratio::new((self.v1 - self.v2) as i64, self.length() as i64)
    }

    pub fn m_q(&self) -> (usize, usize) {
        let s = self.slope();
        (*s.numer() as usize, *s.denom() as usize)
    }
}

/// Edges of the lower convex hull of {(j, v_x(coeff of y^j))}, from the
/// leftmost support point to the first point of minimal valuation.
pub fn newton_polygon<F: Field>(f: &F, h: &BiPoly<F::Elem>) -> Vec<Edge> {
    let pts: Vec<(usize, usize)> = h
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(j, c)| c.valuation(f).map(|v| (j, v)))
        .collect();
    let Some(vmin) = pts.iter().map(|p| p.1).min() else {
        return Vec::new();
    };
    let jend = pts.iter().find(|p| p.1 == vmin).unwrap().0;
    let mut hull: Vec<(usize, usize)> = Vec::new();
    for &c in pts.iter().filter(|p| p.0 <= jend) {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 as i64 - a.0 as i64) * (c.1 as i64 - a.1 as i64)
                - (b.1 as i64 - a.1 as i64) * (c.0 as i64 - a.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(c);
    }
    hull.windows(2)
        .map(|w| Edge {
            j1: w[0].0,
            v1: w[0].1,
            j2: w[1].0,
            v2: w[1].1,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn bp(t: &[(usize, usize, i64)]) -> BiPoly<u64> {
        let f = PrimeField::new(10007).unwrap();
        BiPoly::from_terms(
            &f,
            &t.iter()
                .map(|&(i, j, c)| (i, j, f.from_i64(c)))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn polygon_examples() {
        let f = PrimeField::new(10007).unwrap();
        let e = newton_polygon(&f, &bp(&[(0, 2, 1), (3, 0, -1)]));
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].slope(), Ratio::new(3, 2));
        assert_eq!(e[0].length(), 2);
        let e = newton_polygon(&f, &bp(&[(0, 1, 1), (1, 0, -1)]));
        assert_eq!((e[0].slope(), e[0].length()), (Ratio::from_integer(1), 1));
        let e = newton_polygon(&f, &bp(&[(0, 2, 1), (2, 0, -1)]));
        assert_eq!((e[0].slope(), e[0].length()), (Ratio::from_integer(1), 2));
    }

    #[test]
    fn polygon_two_slopes() {
        // y^3 - x y - x^5: points (0,5), (1,1), (3,0).
        let f = PrimeField::new(10007).unwrap();
        let e = newton_polygon(&f, &bp(&[(0, 3, 1), (1, 1, -1), (5, 0, -1)]));
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].slope(), Ratio::from_integer(4));
        assert_eq!(e[1].slope(), Ratio::new(1, 2));
        // A collinear middle point does not split an edge.
        let e = newton_polygon(&f, &bp(&[(0, 2, 1), (1, 1, 3), (2, 0, -1)]));
        assert_eq!(e.len(), 1);
    }
}
