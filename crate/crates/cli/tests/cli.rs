use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn torsig(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_torsig"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = torsig(args, None);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_hexagon_with_chow() {
    let r = json(&["analyze", "delzant-hexagon", "--chow"]);
    assert_eq!(r["sigma"], "-2");
    assert_eq!(r["chow_sigma"], "-2");
    assert_eq!(r["agreement"], true);
    assert_eq!(r["convexity"], "LocallyStronglyConvex");
    assert_eq!(r["m"], "1");
    assert_eq!(r["angle_class"], "Obtuse");
}

#[test]
fn analyze_triangle_and_permutohedron() {
    let r = json(&["analyze", "triangle"]);
    assert_eq!(r["convexity"], "NotLocallyConvex");
    assert_eq!(r["flag"], false);
    let r = json(&["analyze", "permutohedron-4"]);
    assert_eq!(r["sigma"], "0");
    assert_eq!(r["dehn_sommerville"], true);
    assert_eq!(r["f"], serde_json::json!([24, 36, 14, 1]));
}

#[test]
fn odd_dimension_chow_warns() {
    let out = torsig(&["analyze", "cube-3", "--chow"], None);
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r.get("chow_sigma").is_none());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn bounds() {
    let r = json(&["bounds", "delzant-hexagon"]);
    assert_eq!((r["theorem_case"].as_str(), r["lhs"].as_str(), r["rhs"].as_str()), (Some("iii"), Some("2"), Some("2")));
    assert_eq!(r["satisfied"], true);
    let r = json(&["bounds", "square"]);
    assert_eq!((r["theorem_case"].as_str(), r["lhs"].as_str(), r["rhs"].as_str()), (Some("i"), Some("0"), Some("0")));
    let r = json(&["bounds", "hexagon-x-hexagon"]);
    assert_eq!((r["theorem_case"].as_str(), r["lhs"].as_str(), r["rhs"].as_str()), (Some("i"), Some("4"), Some("0")));
    let r = json(&["bounds", "square", "--case", "iii"]);
    assert_eq!(r["theorem_case"], "none-applicable");
    let r = json(&["bounds", "delzant-hexagon", "--case", "ii"]);
    assert_eq!(r["rhs"], "2");
}

#[test]
fn odd_dimension_bounds_exit_4() {
    let out = torsig(&["bounds", "cube-3"], None);
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());
}

#[test]
fn mirror() {
    for (name, chi) in [("square", "0"), ("pentagon", "-8"), ("delzant-hexagon", "-32")] {
        assert_eq!(json(&["mirror", name])["chi"], chi, "{name}");
    }
}

#[test]
fn chow_signature_from_polytope_and_fan() {
    let r = json(&["chow-signature", "triangle", "--terms"]);
    assert_eq!(r["sigma"], "1");
    let terms = r["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert!(terms.iter().all(|t| t["sign_ok"] == false && t["value"] == "1"));
    let fan = r#"{"dim": 2, "rays": [["1","0"],["1","1"],["0","1"],["-1","0"],["-1","-1"],["0","-1"]],
                 "max_cones": [[0,1],[1,2],[2,3],[3,4],[4,5],[5,0]]}"#;
    let out = torsig(&["chow-signature", "-"], Some(fan));
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["sigma"], "-2");
    assert!(r.get("terms").is_none());
}

#[test]
fn exit_codes_and_clean_stdout() {
    let pyramid = r#"{"dim":3,"vertices":[["0","0","0"],["1","0","0"],["0","1","0"],["1","1","0"],["0","0","1"]]}"#;
    let out = torsig(&["analyze", "-"], Some(pyramid));
    assert_eq!(out.status.code(), Some(3));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["simple"], false);
    assert!(r.get("convexity").is_none());
    let out = torsig(&["bounds", "-"], Some(pyramid));
    assert_eq!(out.status.code(), Some(4));
    let out = torsig(&["mirror", "-"], Some(pyramid));
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());

    for (args, input) in [(vec!["analyze", "-"], Some("{\"dim\": 2}")), (vec!["analyze", "heptagon"], None)] {
        let out = torsig(&args, input);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn analyze_of_gen_is_deterministic() {
    for name in ["obtuse-pentagon", "associahedron-6", "triangle-x-triangle", "rectangle-2x1"] {
        let gen = torsig(&["gen", name], None);
        assert!(gen.status.success());
        let text = String::from_utf8(gen.stdout).unwrap();
        let a = torsig(&["analyze", "-", "--chow"], Some(&text));
        let b = torsig(&["analyze", "-", "--chow"], Some(&text));
        assert_eq!(a.stdout, b.stdout, "{name}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn gen_shapes() {
    let r = json(&["gen", "cube", "--d", "4"]);
    assert_eq!(r["vertices"].as_array().unwrap().len(), 16);
    let r = json(&["gen", "permutohedron", "--n", "4", "--lifted"]);
    assert_eq!(r["dim"], 4);
    let r = json(&["gen", "permutohedron-4"]);
    assert_eq!(r["dim"], 3);
    let r = json(&["gen", "delzant-hexagon", "--lifted"]);
    assert_eq!(r["vertices"][0], serde_json::json!(["0", "1", "2"]));
}

#[test]
fn corpus_verify_prints_nine_passes() {
    let out = torsig(&["corpus-verify"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 9);
}
