use std::fs;
use std::process::{Command, Output};

use hkron_cli::config::{parse_config, Format, Overrides, RunConfig};
use serde_json::Value;

fn hkron(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkron"))
        .args(args)
        .output()
        .expect("run hkron")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = hkron(args);
    let v =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn zeta_table() {
    let (v, code) = json(&["zeta", "--disc", "5", "--kmax", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["field"]["disc"], 5);
    assert_eq!(
        v["truncation"],
        serde_json::json!({"trace_bound": 4, "kmax": 4, "xy_degree": 4})
    );
    let rows: Vec<(i64, String)> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["k"].as_i64().unwrap(), r["value"].as_str().unwrap().into()))
        .collect();
    assert_eq!(rows, vec![(2, "1/30".into()), (4, "1/60".into())]);
    let (v, _) = json(&["zeta", "--disc", "1", "--kmax", "2"]);
    assert_eq!(v["results"][0]["value"], "-1/12");
}

#[test]
fn unsupported_discriminant_is_a_config_error() {
    let out = hkron(&["zeta", "--disc", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported discriminant"));
}

#[test]
fn bad_truncation_is_a_config_error() {
    assert_eq!(hkron(&["verify", "--trace-bound", "0"]).status.code(), Some(2));
    assert_eq!(hkron(&["zeta", "--kmax", "5"]).status.code(), Some(2));
    assert_eq!(hkron(&["extract", "--k", "7"]).status.code(), Some(2));
    assert_eq!(hkron(&["rc-check", "--k", "8", "--p", "1"]).status.code(), Some(2));
    assert_eq!(hkron(&["bogus"]).status.code(), Some(2));
}

#[test]
fn eisenstein_weight_two() {
    let (v, code) = json(&["eisenstein", "--disc", "5", "--k", "2", "--trace-bound", "2"]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    assert_eq!(strs(&r["constant"]), ["1/120", "0/1"]);
    let coeffs: Vec<(Vec<i64>, String)> = r["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let nu = c["nu"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_i64().unwrap())
                .collect();
            (nu, strs(&c["value"])[0].clone())
        })
        .collect();
    let trace_two: Vec<&str> = coeffs
        .iter()
        .filter(|(nu, _)| nu[1] == 2)
        .map(|(_, c)| c.as_str())
        .collect();
    assert_eq!(trace_two, ["1/1", "5/1", "6/1", "5/1", "1/1"]);
    assert_eq!(coeffs[0], (vec![-1, 1], "1/1".to_string()));
}

#[test]
fn extract_recovers_delta() {
    let (v, code) = json(&["extract", "--disc", "1", "--k", "12"]);
    assert_eq!(code, 0);
    assert_eq!(v["truncation"]["kmax"], 12);
    let r = &v["results"][0];
    assert_eq!(r["rank"], 1);
    let a: Vec<String> = r["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| strs(&c["value"])[0].clone())
        .collect();
    assert_eq!(a, ["1/1", "-24/1", "252/1", "-1472/1"]);
    assert_eq!(r["factorizes"], true);
}

#[test]
fn extract_rank_two_is_unsupported() {
    let (v, code) = json(&["extract", "--disc", "8", "--k", "6", "--trace-bound", "3"]);
    assert_eq!(code, 3);
    assert_eq!(v["results"][0]["rank"], 2);
}

#[test]
fn extract_without_cusp_forms() {
    let (v, code) = json(&["extract", "--disc", "5", "--k", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["rank"], 0);
}

#[test]
fn verify_reports() {
    let (v, code) = json(&["verify", "--disc", "5", "--kmax", "6"]);
    assert_eq!(code, 0);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for row in &rows[..2] {
        assert_eq!(row["diffs"].as_array().unwrap().len(), 0);
        assert_eq!(row["cusp"]["rank"], 0);
    }
    assert_eq!(rows[2]["cusp"]["rank"], 1);
    assert_eq!(rows[2]["cusp"]["hecke_multiplicative"], true);
    let (v, code) = json(&["verify", "--disc", "1", "--kmax", "4"]);
    assert_eq!(code, 0);
    assert!(v["results"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["ok"] == true && r["cusp"]["rank"] == 0));
}

#[test]
fn rc_check_exit_codes() {
    let (v, code) = json(&["rc-check", "--disc", "5", "--k", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 4);
    let (v, code) = json(&["rc-check", "--disc", "1", "--k", "12", "--p", "0", "--q", "3"]);
    assert_eq!((code, v["results"][0]["zero"].as_bool()), (0, Some(true)));
    let (v, code) = json(&["rc-check", "--disc", "1", "--k", "12", "--p", "0", "--q", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"][0]["explained_by_singular_cross"], true);
    assert_eq!(
        hkron(&["rc-check", "--k", "8", "--p", "1", "--q", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn theta_oracle_is_equal() {
    let out = hkron(&["theta-oracle", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).lines().any(|l| l == "EQUAL"));
    let (v, _) = json(&["theta-oracle", "--order", "4"]);
    assert_eq!(v["field"]["disc"], 1);
    assert_eq!(v["results"][0]["result"], "EQUAL");
}

#[test]
fn kronecker_expand_weight_two() {
    let (v, code) = json(&["kronecker-expand", "--disc", "5", "--k", "2", "--trace-bound", "1"]);
    assert_eq!(code, 0);
    let monos = v["results"][0]["monomials"].as_array().unwrap();
    assert_eq!(monos.len(), 4);
    for m in monos {
        assert_eq!(strs(&m["series"]["constant"]), ["1/15", "0/1"]);
    }
    let (v, _) = json(&["kronecker-expand", "--disc", "1", "--kmax", "4", "--trace-bound", "1"]);
    let ks: Vec<i64> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["k"].as_i64().unwrap())
        .collect();
    assert_eq!(ks, [2, 4]);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    fs::write(&path, "# sample\ndisc = 1\nkmax = 6\ntrace-bound = 2\nformat = json\n").unwrap();
    let p = path.to_str().unwrap();
    let (v, _) = json(&["zeta", "--config", p]);
    assert_eq!(v["field"]["disc"], 1);
    assert_eq!(
        v["truncation"],
        serde_json::json!({"trace_bound": 2, "kmax": 6, "xy_degree": 6})
    );
    let (v, _) = json(&["zeta", "--config", p, "--disc", "8", "--xy-degree", "3"]);
    assert_eq!(v["field"]["disc"], 8);
    assert_eq!(
        v["truncation"],
        serde_json::json!({"trace_bound": 2, "kmax": 6, "xy_degree": 3})
    );
    let (v, _) = json(&["zeta"]);
    assert_eq!(
        v["truncation"],
        serde_json::json!({"trace_bound": 4, "kmax": 8, "xy_degree": 8})
    );
    assert_eq!(v["field"]["disc"], 5);
}

#[test]
fn config_file_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    fs::write(&path, "colour = blue\n").unwrap();
    assert_eq!(
        hkron(&["zeta", "--config", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let missing = dir.path().join("missing.conf");
    assert_eq!(
        hkron(&["zeta", "--config", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeta.json");
    let out = hkron(&["zeta", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"][3]["value"], "361/120");
}

#[test]
fn output_is_deterministic() {
    let a = hkron(&["kronecker-expand", "--disc", "5", "--kmax", "4", "--trace-bound", "2"]).stdout;
    let b = hkron(&["kronecker-expand", "--disc", "5", "--kmax", "4", "--trace-bound", "2"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn no_floats_in_output() {
    let (v, _) = json(&["extract", "--disc", "5", "--k", "8", "--trace-bound", "2"]);
    fn walk(v: &Value) {
        match v {
            Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "{n}"),
            Value::Array(a) => a.iter().for_each(walk),
            Value::Object(o) => o.values().for_each(walk),
            _ => {}
        }
    }
    walk(&v);
}

#[test]
fn parse_config_syntax() {
    let o = parse_config("disc=13\n\n  xy_degree = 5 # trailing\nformat=text\n").unwrap();
    assert_eq!(o.disc, Some(13));
    assert_eq!(o.xy_degree, Some(5));
    assert_eq!(o.format, Some(Format::Text));
    assert!(parse_config("disc 5").is_err());
    assert!(parse_config("kmax = eight").is_err());
    assert!(parse_config("format = yaml").is_err());
}

#[test]
fn resolution_and_validation() {
    let cfg = RunConfig::resolve(Overrides::default()).unwrap();
    assert_eq!((cfg.disc, cfg.kmax, cfg.trace_bound, cfg.xy_degree), (5, 8, 4, 8));
    assert_eq!(cfg.format, Format::Json);
    let flags = Overrides {
        kmax: Some(10),
        ..Default::default()
    };
    let file = Overrides {
        kmax: Some(4),
        disc: Some(1),
        ..Default::default()
    };
    let cfg = RunConfig::resolve(flags.over(file)).unwrap();
    assert_eq!((cfg.disc, cfg.kmax, cfg.xy_degree), (1, 10, 10));
    assert!(RunConfig::resolve(Overrides {
        kmax: Some(0),
        ..Default::default()
    })
    .is_err());
    let wide = cfg.covering(12, false);
    assert_eq!((wide.kmax, wide.xy_degree), (12, 12));
    assert_eq!(cfg.covering(12, true).xy_degree, 10);
}

#[test]
fn text_format() {
    let out = hkron(&["verify", "--disc", "1", "--kmax", "4", "--format", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("disc 1  kmax 4  trace_bound 4  xy_degree 4\n"));
    assert_eq!(s.lines().count(), 3);
}
