use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(format!("{name}.json"))
}

fn iccdec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iccdec"))
        .args(args)
        .output()
        .expect("iccdec runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = iccdec(args);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

/// A descriptor written to a scratch file.
fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("iccdec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(args: &[&str]) -> serde_json::Value {
    let (code, out, err) = run(args);
    assert!(code == 0 || code == 2, "exit {code}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn decide_trefoil_knot() {
    let v = json(&["decide", corpus("knot_trefoil").to_str().unwrap(), "--json"]);
    assert_eq!(v["status"], "NotICC");
    assert_eq!(v["witness"]["description"], "x^2");
    let labels: Vec<&str> = v["reasons"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["label"].as_str().unwrap())
        .collect();
    assert!(labels.contains(&"Cor 20"), "{labels:?}");
    let (code, text, _) = run(&["decide", corpus("knot_trefoil").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.contains("NotICC") && text.contains("witness: x^2"), "{text}");
}

#[test]
fn decide_dihedral_and_anosov() {
    let v = json(&["decide", corpus("group_infinite_dihedral").to_str().unwrap(), "--json"]);
    assert_eq!(v["status"], "NotICC");
    assert!(v["reasons"].to_string().contains("infinite dihedral"));
    let v = json(&[
        "decide",
        corpus("manifold_torus_bundle_anosov").to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(v["status"], "ICC");
    let chain = v["reasons"].to_string();
    assert!(chain.contains("Lemma 10") && chain.contains("hyperbolic"), "{chain}");
}

#[test]
fn unknown_exits_two() {
    let (code, out, _) = run(&["decide", corpus("nonorientable_unflagged").to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("Unknown"));
    let (code, _, _) = run(&["explain", corpus("link_unflagged").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn enumerate_examples() {
    let v = json(&[
        "enumerate",
        corpus("group_infinite_dihedral").to_str().unwrap(),
        "--element",
        "a b",
        "--radius",
        "6",
        "--json",
    ]);
    assert_eq!(v["counts_by_radius"], serde_json::json!([1, 2, 2, 2, 2, 2, 2]));
    assert_eq!(v["stabilized"], true);

    let (code, out, _) = run(&[
        "enumerate",
        corpus("knot_trefoil").to_str().unwrap(),
        "--element",
        "x x",
        "--radius",
        "6",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("counts_by_radius: [1, 1, 1, 1, 1, 1, 1]"), "{out}");
    assert!(out.contains("stabilized: yes"));
    assert!(out.contains("central (symbolically verified)"));

    let v = json(&[
        "enumerate",
        corpus("group_free2").to_str().unwrap(),
        "--element",
        "x",
        "--radius",
        "5",
        "--json",
    ]);
    let counts: Vec<u64> = v["counts_by_radius"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_u64().unwrap())
        .collect();
    assert!(counts.windows(2).all(|w| w[0] < w[1]), "{counts:?}");
    assert_eq!(v["stabilized"], false);
}

#[test]
fn witness_examples() {
    let v = json(&[
        "witness",
        corpus("group_free2").to_str().unwrap(),
        "--set",
        "x",
        "--length",
        "3",
        "--json",
    ]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["sequence"], serde_json::json!(["1", "y", "y'"]));

    let v = json(&[
        "witness",
        corpus("group_infinite_dihedral").to_str().unwrap(),
        "--set",
        "a b",
        "--length",
        "3",
        "--json",
    ]);
    assert_eq!(v["verified"], false);
    assert_eq!(v["radius"], 10);

    let (code, out, _) = run(&[
        "witness",
        corpus("group_figure_eight").to_str().unwrap(),
        "--set",
        "A",
        "--length",
        "5",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("verified: 5 elements"), "{out}");

    let v = json(&[
        "witness",
        corpus("group_free2").to_str().unwrap(),
        "--set",
        "x,y",
        "--length",
        "4",
        "--json",
    ]);
    assert_eq!(v["set"], serde_json::json!(["x", "y"]));
    assert_eq!(v["verified"], true);
}

#[test]
fn json_is_deterministic() {
    for name in [
        "manifold_p3_sum_p3",
        "knot_trefoil",
        "manifold_poincare_sphere",
        "group_amalgam_s3_z4",
    ] {
        let path = corpus(name);
        for cmd in ["decide", "explain"] {
            let a = iccdec(&[cmd, path.to_str().unwrap(), "--json"]).stdout;
            let b = iccdec(&[cmd, path.to_str().unwrap(), "--json"]).stdout;
            assert_eq!(a, b, "{cmd} {name}");
        }
    }
}

#[test]
fn errors_exit_one() {
    let bad = scratch(
        "bad.json",
        "{\"type\":\"knot\",\n\"schema_version\":1,\n\"torus\":[2,3],\n\"colour\":1}",
    );
    let (code, _, err) = run(&["decide", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 4"), "{err}");

    let syntax = scratch("syntax.json", "{\"type\":\"knot\",\n  \"schema_version\":1,,}");
    let (code, _, err) = run(&["decide", syntax.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");

    let (code, _, _) = run(&["decide", "/nonexistent/file.json"]);
    assert_eq!(code, 1);

    let (code, _, err) = run(&["enumerate", corpus("knot_trefoil").to_str().unwrap(), "--element", "z"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown generator"), "{err}");

    let (code, _, err) = run(&["witness", corpus("link_hopf").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("no group data"), "{err}");

    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn explain_shows_normalized_data() {
    let v = json(&[
        "explain",
        corpus("manifold_parabolic_with_homotopy_sphere").to_str().unwrap(),
        "--json",
    ]);
    let pieces = v["explanation"]["poincare_variety"].as_array().unwrap();
    assert_eq!(pieces.len(), 1);
    assert_eq!(pieces[0]["kind"], "torus_bundle");
    let v = json(&[
        "explain",
        corpus("manifold_trefoil_complement").to_str().unwrap(),
        "--json",
    ]);
    let rel = &v["explanation"]["seifert_pieces"][0]["relations"];
    assert!(rel.as_array().unwrap().iter().any(|r| r == "x^2 = h"), "{rel}");
}

#[test]
fn every_corpus_file_decides() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus");
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        let (code, _, err) = run(&["decide", p.to_str().unwrap()]);
        assert!(code == 0 || code == 2, "{}: exit {code}: {err}", p.display());
    }
}
