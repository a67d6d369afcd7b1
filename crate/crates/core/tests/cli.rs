use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn intbasis(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_intbasis"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

const CUSP: &str = r#"{"p":10007,"f":[[0,2,1],[3,0,-1]]}"#;

#[test]
fn cusp_all_algorithms() {
    let o = intbasis(&[], CUSP);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["n"], json!(2));
    assert_eq!(v["denominator_factors"], json!([[0, 1]]));
    assert_eq!(
        v["basis"],
        json!([{"num": [[0, 0, 1]], "den_exp": [0]}, {"num": [[0, 1, 1]], "den_exp": [1]}])
    );
    assert_eq!(v["agree"], json!(true));
    assert_eq!(v["verification"]["pass"], json!(true));
    for a in ["vanhoeij", "trager", "boehm"] {
        assert!(v["report"][a]["field_mults"].as_u64().unwrap() > 0, "{a}");
    }
}

#[test]
fn closed_form_quartic() {
    let o = intbasis(
        &["--algorithm", "all"],
        r#"{"p":10007,"f":[[0,4,1],[3,0,-1]]}"#,
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    let exps: Vec<Value> = v["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["den_exp"].clone())
        .collect();
    assert_eq!(exps, vec![json!([0]), json!([0]), json!([1]), json!([2])]);
}

#[test]
fn single_algorithm_and_files() {
    let dir = std::env::temp_dir().join(format!("intbasis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    let output = dir.join("out.json");
    std::fs::write(&input, r#"{"p":10007,"f":[[0,2,1],[1,0,-1]]}"#).unwrap();
    let o = intbasis(
        &[
            "--algorithm",
            "trager",
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v["denominator_factors"], json!([]));
    assert_eq!(v["report"]["trager"]["iterations"], json!(0));
    assert!(v["report"].get("boehm").is_none());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn input_errors_exit_3() {
    for (text, kind) in [
        (r#"{"p":10007,"f":[[0,2,2],[3,0,-1]]}"#, "NotMonic"),
        (
            r#"{"p":10007,"f":[[0,2,1],[1,1,-2],[2,0,1]]}"#,
            "SquarefreeViolation",
        ),
        (r#"{"p":7,"f":[[0,4,1],[1,0,1]]}"#, "TooSmall"),
        ("not json", "ParseError"),
    ] {
        let o = intbasis(&[], text);
        assert_eq!(o.status.code(), Some(3), "{kind}");
        assert_eq!(json_out(&o)["error"]["kind"], json!(kind));
    }
}

#[test]
fn output_is_reproducible() {
    let text = r#"{"p":10007,"f":[[0,4,1],[3,2,-2],[6,0,1],[5,1,-4],[7,0,-1]]}"#;
    let a = intbasis(&["--seed", "7", "--diagnostics"], text);
    let b = intbasis(&["--seed", "7", "--diagnostics"], text);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(json_out(&a)["diagnostics"]["boehm"].is_array());
}

#[test]
fn batch_input() {
    let text = format!(r#"[{CUSP}, {{"p":10007,"f":[[0,2,1]]}}]"#);
    let o = intbasis(&["--verify", "integrality"], &text);
    assert_eq!(o.status.code(), Some(3));
    let v = json_out(&o);
    assert_eq!(v[0]["verification"]["integrality"], json!([true, true]));
    assert_eq!(v[1]["error"]["kind"], json!("SquarefreeViolation"));
}

#[test]
fn benchmark_mode() {
    let o = intbasis(
        &[
            "--bench-family",
            "y2-x2k+1",
            "--bench-sizes",
            "1,2,3",
            "--algorithm",
            "trager",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
    assert!(v["slopes"]["trager"].is_number());
    let one = intbasis(&["--bench-family", "y2-x2k+1", "--bench-sizes", "2"], "");
    assert!(json_out(&one)["slopes"]["boehm"].is_null());
}
