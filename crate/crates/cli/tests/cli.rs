use std::io::Write;
use std::process::{Command, Output, Stdio};

use qplane::autgroup::Auto;
use qplane::scalars::{sc, un};
use serde_json::Value;

fn qplane(args: &[&str], stdin: Option<&str>) -> Output {
    qplane_env(args, stdin, &[])
}

fn qplane_env(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qplane"));
    cmd.args(args)
        .env_remove("QPLANE_CONFIG")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn generic() -> String {
    let o = qplane(
        &["family", "generic", "--u", "1", "--v", "0", "--alpha", "q^2", "--beta", "t", "--a", "a"],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    stdout(&o)
}

#[test]
fn family_pipes_into_verify() {
    let o = qplane(&["verify", "--N", "4"], Some(&generic()));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["pass"], Value::Bool(true));
}

#[test]
fn mutated_action_exits_one() {
    let mut act: Value = serde_json::from_str(&generic()).unwrap();
    act["f_x"][0]["coef"] = Value::String("q^3".into());
    let o = qplane(&["verify", "--N", "2", "--failures-only"], Some(&act.to_string()));
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["axiom"] == "d"));
}

#[test]
fn order_of_rotation() {
    let o = qplane(&["order", "--sigma", "0,-1,1,0", "--alpha", "1", "--beta", "1"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o), serde_json::json!({"order": 4}));
    let o = qplane(&["order", "--sigma", "0,-1,1,0", "--obstruction"], None);
    assert_eq!(json(&o)["obstruction"]["verdict"], "NoSymmetryPossible");
}

#[test]
fn jordan_search_is_empty_and_deterministic() {
    let args = ["search", "--sigma", "1,1,0,1", "--numeric", "--seed", "7", "--B", "3", "--expect", "empty"];
    let a = qplane(&args, None);
    let b = qplane(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json(&a)["solutions"], serde_json::json!([]));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn search_results_verify() {
    let o = qplane(&["search", "--sigma", "1,0,0,1", "--alpha", "q^2", "--beta", "t", "--B", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    let sols = json(&o)["solutions"].as_array().unwrap().clone();
    assert_eq!(sols.len(), 1);
    let v = qplane(&["verify", "--N", "3"], Some(&sols[0].to_string()));
    assert_eq!(v.status.code(), Some(0));
    let o = qplane(&["search", "--sigma", "1,0,0,1", "--alpha", "q^2", "--beta", "t", "--expect", "empty"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn conjugate_round_trips() {
    let c = qplane(&["conjugate", "--sigma", "2,1,1,1", "--alpha", "t", "--beta", "-q"], Some(&generic()));
    assert_eq!(c.status.code(), Some(0));
    let v = qplane(&["verify", "--N", "2"], Some(&stdout(&c)));
    assert_eq!(v.status.code(), Some(0));
    let inv = Auto::new("2,1,1,1".parse().unwrap(), un("t"), un("-q")).inverse();
    let [[a, b], [c0, d]] = inv.sigma.rows();
    let sigma = format!("{a},{b},{c0},{d}");
    let (al, be) = (inv.alpha.to_string(), inv.beta.to_string());
    let back = qplane(&["conjugate", "--sigma", &sigma, "--alpha", &al, "--beta", &be], Some(&stdout(&c)));
    assert_eq!(back.status.code(), Some(0), "{}", String::from_utf8_lossy(&back.stderr));
    let orig: Value = serde_json::from_str(&generic()).unwrap();
    let back = json(&back);
    for key in ["k", "e_x", "e_y", "f_x", "f_y"] {
        assert_eq!(back[key], orig[key], "{key}");
    }
}

#[test]
fn line_family_round_trip() {
    for args in [
        vec!["line-family", "--kind", "1", "--gamma", "q^2", "--r", "2"],
        vec!["line-family", "--kind", "sign", "--gamma", "-1"],
        vec!["line-family", "--kind", "2", "--gamma", "t"],
    ] {
        let f = qplane(&args, None);
        assert_eq!(f.status.code(), Some(0));
        let v = qplane(&["line-verify", "--N", "6"], Some(&stdout(&f)));
        assert_eq!(v.status.code(), Some(0), "{args:?}");
    }
    let bad = qplane(&["line-family", "--kind", "1", "--gamma", "q^2", "--r", "3"], None);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn pbw_and_sigma_power() {
    let o = qplane(&["pbw-normalize", "--word", "e k"], None);
    let v = json(&o);
    let terms = v.as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!((&terms[0]["i"], &terms[0]["j"], &terms[0]["l"]), (&Value::from(0), &Value::from(1), &Value::from(1)));
    assert_eq!(sc(terms[0]["coef"].as_str().unwrap()), sc("q^-2"));
    let o = qplane(&["sigma-power", "--sigma", "2,1,1,1", "--N", "2"], None);
    assert_eq!(json(&o)["power"], serde_json::json!([[5, 3], [3, 2]]));
}

#[test]
fn usage_and_config_errors_exit_two() {
    assert_eq!(qplane(&["order", "--sigma", "1,2,3,4"], None).status.code(), Some(2));
    assert_eq!(qplane(&["verify"], Some("not json")).status.code(), Some(2));
    assert_eq!(qplane(&["bogus"], None).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("qplane-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"mode": "numeric", "q": 1.0}"#).unwrap();
    let o = qplane_env(&["order", "--sigma", "1,0,0,1"], None, &[("QPLANE_CONFIG", bad.to_str().unwrap())]);
    assert_eq!(o.status.code(), Some(2));
    let good = dir.join("good.json");
    std::fs::write(&good, r#"{"N": 1, "indeterminates": ["mu"]}"#).unwrap();
    let o = qplane_env(&["verify", "--failures-only"], Some(&generic()), &[("QPLANE_CONFIG", good.to_str().unwrap())]);
    assert_eq!(o.status.code(), Some(0));
    let full = qplane(&["verify", "--failures-only"], Some(&generic()));
    assert!(json(&o)["total"].as_u64().unwrap() < json(&full)["total"].as_u64().unwrap());
}

#[test]
fn batch_jobs_keep_order() {
    let dir = std::env::temp_dir().join(format!("qplane-jobs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("jobs.json");
    std::fs::write(
        &p,
        r#"[{"sigma": [[1,1],[0,1]], "B": 2, "mode": "numeric", "seed": 1},
            {"sigma": [[1,0],[0,1]], "alpha": "q^2", "beta": "t", "B": 3}]"#,
    )
    .unwrap();
    let o = qplane(&["search", "--job", p.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v[0]["solutions"].as_array().unwrap().len(), 0);
    assert_eq!(v[1]["solutions"].as_array().unwrap().len(), 1);
}
