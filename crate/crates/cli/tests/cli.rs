use std::process::{Command, Output};

use permv::ops::ideal_equal;
use permv::parse::parse_polynomial;
use permv::{permanental_ideal, Ideal, Rationals, ShapeSpec};
use serde_json::Value;

fn permv(args: &[&str]) -> Output {
    permv_env(args, &[])
}

fn permv_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_permv"));
    cmd.args(args);
    for var in ["PERMV_CHAR", "PERMV_MAX_DEGREE", "PERMV_SEED"] {
        cmd.env_remove(var);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn vnumber_hankel_3x6_is_one() {
    let out = permv(&["vnumber", "--shape", "hankel:3x6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = json(&out);
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["results"]["v"], 1);
    assert_eq!(doc["results"]["status"], "exact");
    assert_eq!(doc["results"]["witness"]["f"], "x_5");
}

#[test]
fn verify_single_colon_check() {
    let out = permv(&["verify", "--check", "colon:hankel:3x6:x5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = json(&out);
    assert_eq!(doc["results"]["checks"].as_array().unwrap().len(), 1);
    assert!(!doc["provenance"][0]["text"].as_str().unwrap().is_empty());
}

#[test]
fn oversized_basis_hits_the_cap() {
    let out = permv(&["gb", "--shape", "generic:9x9"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cap"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["ideal", "--shape", "hankel:2x3", "--bogus"],
        vec!["ideal"],
        vec!["ideal", "--shape", "triangular:3x3"],
        vec!["nf", "--shape", "hankel:2x3", "--poly", "x_9"],
        vec!["colon", "--shape", "hankel:2x3"],
        vec!["verify", "--check", "no-such-check"],
        vec!["ideal", "--shape", "hankel:2x3", "--order", "lex:x_1,x_2"],
        vec!["vnumber", "--shape", "hankel:3x6:t=3"],
        vec!["verify", "--char", "2"],
    ] {
        let out = permv(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let out = permv(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("vnumber"));
}

#[test]
fn composite_characteristic_from_env_rejected() {
    let out = permv_env(&["ideal", "--shape", "hankel:2x3"], &[("PERMV_CHAR", "4")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains('4'));
}

#[test]
fn env_characteristic_applies_and_flag_wins() {
    let out = permv_env(&["ideal", "--shape", "hankel:2x3", "--format", "json"], &[("PERMV_CHAR", "3")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["inputs"]["field"], "GF(3)");
    let out = permv_env(
        &["ideal", "--shape", "hankel:2x3", "--format", "json", "--char", "5"],
        &[("PERMV_CHAR", "3")],
    );
    assert_eq!(json(&out)["inputs"]["field"], "GF(5)");
}

#[test]
fn malformed_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("permv.toml");
    std::fs::write(&path, "char = [1, 2]\n").unwrap();
    let out = permv(&["ideal", "--shape", "hankel:2x3", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_sets_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("permv.toml");
    std::fs::write(&path, "char = 7\nformat = \"json\"\n").unwrap();
    let out = permv(&["ideal", "--shape", "hankel:2x3", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["inputs"]["field"], "GF(7)");
}

#[test]
fn false_identity_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wrong.toml");
    std::fs::write(
        &path,
        r#"
[[check]]
id = "membership:hankel:3x6:x5"
kind = "membership"
shape = "hankel:3x6"
poly = "x_5"
member = true
provenance = "deliberately false"
"#,
    )
    .unwrap();
    let out = permv(&["verify", "--corpus", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("FAIL\n"));
}

#[test]
fn degree_cap_leaves_bounds_and_exits_three() {
    let out = permv(&["vnumber", "--shape", "generic:3x3", "--max-degree", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    let doc = json(&out);
    assert_eq!(doc["results"]["status"], "bounds-only");
    assert_eq!(doc["results"]["v"], Value::Null);
    assert_eq!(doc["results"]["upper"], 3);
    assert_eq!(doc["results"]["lower"], 2);
}

#[test]
fn ideal_output_round_trips() {
    for shape in ["generic:2x4", "symmetric:3", "hankel:3x5"] {
        let out = permv(&["ideal", "--shape", shape, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        let doc = json(&out);
        let spec: ShapeSpec = shape.parse().unwrap();
        let original = permanental_ideal(&spec, Rationals).unwrap();
        let gens = doc["results"]["generators"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| parse_polynomial(g.as_str().unwrap(), original.ring()).unwrap())
            .collect();
        let reparsed = Ideal::new(original.ring(), gens).unwrap();
        assert!(ideal_equal(&original, &reparsed).unwrap(), "{shape}");
    }
}

#[test]
fn table_is_byte_identical_across_runs() {
    for format in ["json", "csv", "text"] {
        let a = permv(&["table", "--format", format, "--seed", "7"]);
        let b = permv(&["table", "--format", format, "--seed", "7"]);
        assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn table_csv_has_one_row_per_shape() {
    let out = permv(&["table", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,m,n,v,expected,match,status,witness"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 19);
    assert!(rows.iter().all(|r| r.contains(",true,")), "{text}");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gb.json");
    let out = permv(&["gb", "--shape", "hankel:2x3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["results"]["basis"].as_array().unwrap().len(), 7);
    assert_eq!(doc["results"]["certificate"]["is_groebner_basis"], true);
    assert_eq!(doc["results"]["order"][0], "x_1");
}

#[test]
fn custom_order_changes_basis_not_ideal() {
    let out = permv(&["gb", "--shape", "hankel:2x3", "--order", "lex:x_4,x_3,x_2,x_1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = json(&out);
    assert_eq!(doc["results"]["order"][0], "x_4");
    assert_eq!(doc["results"]["certificate"]["is_groebner_basis"], true);
    assert_eq!(doc["inputs"]["order"], "lex:x_4,x_3,x_2,x_1");
}

#[test]
fn timings_only_on_request() {
    let plain = permv(&["vnumber", "--shape", "hankel:2x4", "--format", "json"]);
    assert!(json(&plain).get("timings").is_none());
    let timed = permv(&["vnumber", "--shape", "hankel:2x4", "--format", "json", "--timings"]);
    assert!(json(&timed)["timings"]["elapsed_ms"].is_u64());
}

#[test]
fn char_two_vnumber_is_a_lookup_with_warning() {
    let out = permv(&["vnumber", "--shape", "generic:3x4", "--char", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["results"]["v"], 0);
    assert_eq!(doc["results"]["status"], "prime-lookup");
    assert_eq!(doc["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn colon_and_alpha_subcommands() {
    let out = permv(&["colon", "--shape", "hankel:2x4", "--poly", "x_2*x_4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["results"]["recognized_prime"], true);
    assert_eq!(doc["results"]["colon_basis"].as_array().unwrap().len(), 5);

    let out = permv(&["colon", "--shape", "generic:2x3", "--ideal", "x_1_1, x_2_1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["containment"], true);

    let out = permv(&["alpha", "--shape", "generic:3x3", "--ideal", "x_1_1, x_2_1, x_3_1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["results"]["alpha"], 3);
    assert_eq!(doc["results"]["verified"], true);
    assert!(doc["provenance"][0]["text"].as_str().unwrap().contains("engine-derived"));
}

#[test]
fn nf_reports_remainder() {
    let out = permv(&["nf", "--shape", "hankel:3x6", "--poly", "x_5*x_8^2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["results"]["normal_form"], "x_7^3");
    assert_eq!(doc["results"]["member"], false);
}
