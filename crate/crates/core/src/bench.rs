//! Operation-count scaling on parameterized curve families.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::io::CurveInput;
use crate::run::{compute, Algorithm, RunOptions};
use crate::{Error, Result};

pub const P: u64 = 10007;

/// Member `k` of a named family, and the degree D used on the x-axis of the
/// fit. Families: `y3-x3k+1`, `y2-x2k+1`, `yd-xd-1` (D = k + 1).
pub fn family(name: &str, k: usize) -> Result<(CurveInput, usize)> {
    if k == 0 {
        return Err(Error::ParseError("family sizes start at 1".into()));
    }
    let (n, m) = match name {
        "y3-x3k+1" => (3, 3 * k + 1),
        "y2-x2k+1" => (2, 2 * k + 1),
        "yd-xd-1" => (k + 1, k),
        _ => return Err(Error::ParseError(format!("unknown family {name:?}"))),
    };
    Ok((CurveInput::new(P, &[(0, n, 1), (m, 0, -1)])?, n.max(m)))
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchPoint {
    pub k: usize,
    pub d: usize,
    pub ops: BTreeMap<&'static str, u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub family: String,
    pub points: Vec<BenchPoint>,
    /// Least-squares slope of log(ops) against log(D); absent with fewer
    /// than two distinct sizes.
    pub slopes: BTreeMap<&'static str, Option<f64>>,
}

pub fn loglog_slope(pts: &[(f64, f64)]) -> Option<f64> {
    let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if xs.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

pub fn benchmark(
    name: &str,
    sizes: &[usize],
    algs: &[Algorithm],
    opts: &RunOptions,
) -> Result<BenchReport> {
    let mut points = Vec::with_capacity(sizes.len());
    for &k in sizes {
        let (c, d) = family(name, k)?;
        let mut ops = BTreeMap::new();
        for &a in algs {
            ops.insert(a.name(), compute(&c, a, opts)?.report.total_ops());
        }
        points.push(BenchPoint { k, d, ops });
    }
    let slopes = algs
        .iter()
        .map(|a| {
            let pts: Vec<(f64, f64)> = points
                .iter()
                .map(|p| (p.d as f64, p.ops[a.name()].max(1) as f64))
                .collect();
            (a.name(), loglog_slope(&pts))
        })
        .collect();
    Ok(BenchReport {
        family: name.to_string(),
        points,
        slopes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = (1..6)
            .map(|d| (d as f64, 3.0 * (d as f64).powi(4)))
            .collect();
        assert!((loglog_slope(&pts).unwrap() - 4.0).abs() < 1e-9);
        assert_eq!(loglog_slope(&[(2.0, 5.0)]), None);
    }

    #[test]
    fn single_size_has_no_slope() {
        let r = benchmark(
            "y2-x2k+1",
            &[2],
            &[Algorithm::Trager],
            &RunOptions::default(),
        )
        .unwrap();
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.slopes["trager"], None);
        assert!(family("nope", 1).is_err());
    }
}
