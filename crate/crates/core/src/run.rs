//! Algorithm dispatch, verification and the JSON report used by the CLI and
//! the C interface.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::basis::{compare_bases, Comparison, IntegralBasis};
use crate::bohm::bohm_integral_basis;
use crate::io::{BasisJson, CurveInput};
use crate::opcount::{self, OpCountReport};
use crate::trager::trager_integral_basis;
use crate::vanhoeij::{global_basis_vh, VhOptions};
use crate::verify::{verify_discriminant, verify_integrality, verify_maximality, MaximalityCheck};
use crate::{rng, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Algorithm {
    VanHoeij,
    Trager,
    Boehm,
    All,
}

impl Algorithm {
    pub const SINGLE: [Algorithm; 3] = [Algorithm::VanHoeij, Algorithm::Trager, Algorithm::Boehm];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::VanHoeij => "vanhoeij",
            Algorithm::Trager => "trager",
            Algorithm::Boehm => "boehm",
            Algorithm::All => "all",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "vanhoeij" => Ok(Algorithm::VanHoeij),
            "trager" => Ok(Algorithm::Trager),
            "boehm" => Ok(Algorithm::Boehm),
            "all" => Ok(Algorithm::All),
            _ => Err(format!("unknown algorithm {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    None,
    Integrality,
    Full,
}

impl FromStr for VerifyLevel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(VerifyLevel::None),
            "integrality" => Ok(VerifyLevel::Integrality),
            "full" => Ok(VerifyLevel::Full),
            _ => Err(format!("unknown verification level {s:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub algorithm: Algorithm,
    pub verify: VerifyLevel,
    pub vh: VhOptions,
    pub seed: u64,
    pub diagnostics: bool,
    /// Include wall-clock times in the report (makes output nondeterministic).
    pub wall_time: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            algorithm: Algorithm::All,
            verify: VerifyLevel::Full,
            vh: VhOptions::default(),
            seed: 0,
            diagnostics: false,
            wall_time: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AlgorithmRun {
    pub algorithm: Algorithm,
    /// Canonical form of the computed basis.
    pub basis: IntegralBasis,
    pub report: OpCountReport,
    pub diagnostics: Value,
}

/// Runs one algorithm with fresh counters.
pub fn compute(
    input: &CurveInput,
    algorithm: Algorithm,
    opts: &RunOptions,
) -> Result<AlgorithmRun> {
    let fld = &input.fld;
    let f = &input.f;
    rng::set_seed(opts.seed);
    opcount::reset();
    let coeffs = |p: &crate::poly::UniPoly<u64>| p.coeffs().to_vec();
    let (basis, diagnostics) = match algorithm {
        Algorithm::VanHoeij => {
            let (b, locals) = global_basis_vh(fld, f, &opts.vh)?;
            let d: Vec<Value> = locals
                .iter()
                .map(|l| {
                    json!({"phi": coeffs(&l.local.phi), "m": l.m_phi, "variant": format!("{:?}", l.variant),
                           "systems": l.systems, "exponents": l.local.exps})
                })
                .collect();
            (b, Value::Array(d))
        }
        Algorithm::Trager => {
            let (b, log) = trager_integral_basis(fld, f)?;
            let d: Vec<Value> = log
                .iter()
                .map(|it| json!({"q": coeffs(&it.q), "det": coeffs(&it.det)}))
                .collect();
            (b, Value::Array(d))
        }
        Algorithm::Boehm => {
            let (b, locals) = bohm_integral_basis(fld, f)?;
            let d: Vec<Value> = locals
                .iter()
                .map(|l| {
                    json!({"phi": coeffs(&l.local.phi), "bound": l.bound.to_string(), "c": l.cs,
                           "chain_lengths": l.chain_lengths, "exponents": l.local.exps})
                })
                .collect();
            (b, Value::Array(d))
        }
        Algorithm::All => {
            return Err(Error::InternalInvariantBroken(
                "compute takes a single algorithm".into(),
            ))
        }
    };
    let report = opcount::report();
    Ok(AlgorithmRun {
        algorithm,
        basis: basis.canonical(fld)?,
        report,
        diagnostics,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub integrality: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maximality: Option<Vec<MaximalityCheck>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<bool>,
    pub pass: bool,
}

pub fn verify(
    input: &CurveInput,
    b: &IntegralBasis,
    level: VerifyLevel,
) -> Result<Option<Verification>> {
    if level == VerifyLevel::None {
        return Ok(None);
    }
    let integrality = verify_integrality(&input.fld, b, &input.f);
    let mut pass = integrality.iter().all(|&x| x);
    let (mut maximality, mut discriminant) = (None, None);
    if level == VerifyLevel::Full {
        let m = verify_maximality(&input.fld, b, &input.f)?;
        let d = verify_discriminant(&input.fld, b, &input.f)?;
        pass &= m.iter().all(|c| c.pass) && d;
        maximality = Some(m);
        discriminant = Some(d);
    }
    Ok(Some(Verification {
        integrality,
        maximality,
        discriminant,
        pass,
    }))
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub algorithm: Algorithm,
    pub basis: IntegralBasis,
    pub runs: Vec<AlgorithmRun>,
    /// Pairwise agreement of all runs (always true for a single run).
    pub agree: bool,
    pub verification: Option<Verification>,
}

impl RunOutput {
    pub fn passed(&self) -> bool {
        self.agree && self.verification.as_ref().is_none_or(|v| v.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self, input: &CurveInput, opts: &RunOptions) -> Value {
        let b = BasisJson::from_basis(&input.fld, &self.basis);
        let mut out = serde_json::to_value(&b).expect("serializable");
        let obj = out.as_object_mut().unwrap();
        obj.insert("algorithm".into(), json!(self.algorithm.name()));
        let mut reports = BTreeMap::new();
        let mut diags = BTreeMap::new();
        for r in &self.runs {
            let mut v = serde_json::to_value(&r.report).expect("serializable");
            if !opts.wall_time {
                strip_key(&mut v, "wall_ms");
            }
            reports.insert(r.algorithm.name(), v);
            diags.insert(r.algorithm.name(), r.diagnostics.clone());
        }
        obj.insert("report".into(), json!(reports));
        if self.runs.len() > 1 {
            obj.insert("agree".into(), json!(self.agree));
        }
        if let Some(v) = &self.verification {
            obj.insert(
                "verification".into(),
                serde_json::to_value(v).expect("serializable"),
            );
        }
        if opts.diagnostics {
            obj.insert("diagnostics".into(), json!(diags));
        }
        out
    }
}

fn strip_key(v: &mut Value, key: &str) {
    match v {
        Value::Object(m) => {
            m.remove(key);
            m.values_mut().for_each(|x| strip_key(x, key));
        }
        Value::Array(a) => a.iter_mut().for_each(|x| strip_key(x, key)),
        _ => {}
    }
}

/// Runs the requested algorithm(s), checks agreement and verifies the result.
pub fn run(input: &CurveInput, opts: &RunOptions) -> Result<RunOutput> {
    let algs: Vec<Algorithm> = match opts.algorithm {
        Algorithm::All => Algorithm::SINGLE.to_vec(),
        a => vec![a],
    };
    let mut runs = Vec::with_capacity(algs.len());
    for a in algs {
        runs.push(compute(input, a, opts)?);
    }
    let mut agree = true;
    for r in &runs[1..] {
        agree &= compare_bases(&input.fld, &runs[0].basis, &r.basis)? == Comparison::Equal;
    }
    let basis = runs[0].basis.clone();
    let verification = verify(input, &basis, opts.verify)?;
    Ok(RunOutput {
        algorithm: opts.algorithm,
        basis,
        runs,
        agree,
        verification,
    })
}

/// Structured error object for the JSON diagnostics channel.
pub fn error_json(e: &Error) -> Value {
    json!({"error": {"kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code()}})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_curve;

    #[test]
    fn all_on_cusp() {
        let c = parse_curve(r#"{"p":10007,"f":[[0,2,1],[3,0,-1]]}"#).unwrap();
        let opts = RunOptions::default();
        let out = run(&c, &opts).unwrap();
        assert!(out.agree);
        assert_eq!(out.exit_code(), 0);
        let j = out.to_json(&c, &opts);
        assert_eq!(j["basis"][1]["num"], json!([[0, 1, 1]]));
        assert_eq!(j["basis"][1]["den_exp"], json!([1]));
        assert_eq!(j["denominator_factors"], json!([[0, 1]]));
        assert!(j["report"]["trager"].get("wall_ms").is_none());
        assert_eq!(j["report"]["trager"]["iterations"], json!(1));
    }

    #[test]
    fn smooth_curve_has_power_basis() {
        let c = parse_curve(r#"{"p":10007,"f":[[0,2,1],[1,0,-1]]}"#).unwrap();
        let out = run(&c, &RunOptions::default()).unwrap();
        assert_eq!(out.basis, IntegralBasis::power(&c.fld, 2));
        for r in &out.runs {
            assert_eq!((r.report.iterations, r.report.linear_systems), (0, 0));
        }
    }
}
