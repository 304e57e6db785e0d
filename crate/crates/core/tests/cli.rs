//! The command-line front end, in process and through the built binary.

use std::process::Command;

use planar_rigidity::catalog::{build, IDS};
use planar_rigidity::cli::groupfile::write_group_file;
use planar_rigidity::cli::{run, Outcome};
use serde_json::Value;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("planar-rigidity").chain(args.iter().copied()))
}

fn json_of(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = cli(&full);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid JSON")
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("planar-rigidity-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn verdict_for_icosahedral_group() {
    let out = cli(&["verdict", "A5_I"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().next(), Some("RIGID"));
    let out = cli(&["verdict", "S4_MONO"]);
    assert_eq!(out.stdout.lines().next(), Some("NOT RIGID"));
    assert!(out.stdout.contains("witness:"));
}

#[test]
fn hessian_orbits_listed() {
    let out = cli(&["orbits", "E108", "--bound", "8"]);
    assert_eq!(out.code, 0);
    let sizes: Vec<&str> = out.stdout.lines().filter(|l| l.trim_start().starts_with("size ")).collect();
    assert_eq!(sizes.len(), 2);
    assert!(sizes.iter().all(|l| l.trim_start().starts_with("size 6:")));
    assert!(sizes[0].contains("(1 : 1 : 1)"));
    assert!(sizes[1].contains("(1 : 1 : z)"));
}

#[test]
fn genpos_reports_the_quadrilateral() {
    // The S4 orbit of (0:1:1) has three points on x + y + z = 0.
    let out = cli(&["genpos", "S4_MONO", "--point", "0,1,1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().any(|l| l.starts_with("fail: points") && l.ends_with("are collinear")));
    let out = cli(&["genpos", "E108", "--point", "1,z,z"]);
    assert!(out.stdout.contains("ok: in general position"), "{}", out.stdout);
}

#[test]
fn bad_input_exits_two() {
    let out = cli(&["info", "NO_SUCH_GROUP"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error: "));
    let singular = temp_file("singular.grp", "conductor: 1\ngenerator:\nrow: 1,0,0\nrow: 0,1,0\nrow: 1,1,0\n");
    assert_eq!(cli(&["info", singular.to_str().unwrap()]).code, 2);
    let broken = temp_file("broken.grp", "conductor: 3\ngenerator:\nrow: 1,0,0\nrow: 0,z^,0\nrow: 0,0,1\n");
    let out = cli(&["info", broken.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
    assert_eq!(cli(&["genpos", "A4_MONO", "--point", "1,2"]).code, 2);
    assert_eq!(cli(&["verify-paper", "--check", "no_such_check"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
}

#[test]
fn failing_check_exits_one() {
    let out = cli(&["verify-paper", "--check", "s4_orbit_inventory"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL s4_orbit_inventory"));
    let out = cli(&["verify-paper", "--check", "rigidity_verdicts"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
}

#[test]
fn files_match_catalog_groups() {
    for id in IDS {
        let e = build(id).unwrap();
        let path = temp_file(&format!("{id}.grp"), &write_group_file(e.conductor, &e.generators).unwrap());
        let from_file = json_of(&["info", path.to_str().unwrap()]);
        let from_id = json_of(&["info", id]);
        for key in ["sl_order", "proj_order", "element_orders", "conductor"] {
            assert_eq!(from_file[key], from_id[key], "{id}: {key}");
        }
    }
}

#[test]
fn report_json_shape() {
    let v = json_of(&["verify-paper", "--check", "rigidity_verdicts"]);
    assert!(v["caveat"].is_string());
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    let c = checks[0].as_object().unwrap();
    let mut keys: Vec<&str> = c.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["check", "citation", "evidence", "pass"]);
    assert!(c["check"].is_string() && c["citation"].is_string() && c["pass"].is_boolean() && c["evidence"].is_object());
}

#[test]
fn command_json_shapes() {
    let cat = json_of(&["catalog"]);
    assert_eq!(cat["groups"].as_array().unwrap().len(), IDS.len());
    let info = json_of(&["info", "PSL27"]);
    assert_eq!(info["proj_order"], 168);
    assert_eq!(info["action"]["class"], "primitive");
    let orbits = json_of(&["orbits", "A4_MONO"]);
    assert_eq!(orbits["families"].as_array().unwrap().len(), 1);
    assert!(orbits["complete"].as_bool().unwrap());
    let links = json_of(&["links", "T_2_7"]);
    assert!(links["candidates"].as_array().unwrap().iter().all(|c| c["links"].is_array()));
    let verdict = json_of(&["verdict", "INTRANSITIVE_SAMPLE"]);
    assert_eq!(verdict["rigid"], false);
    assert!(verdict["witness"].is_object());
}

#[test]
fn output_is_deterministic() {
    for args in [&["links", "C3xC3_MONO"][..], &["--format", "json", "orbits", "S4_MONO"], &["info", "A6_3FOLD"]] {
        assert_eq!(cli(args), cli(args));
    }
}

#[test]
fn binary_matches_library() {
    let out = Command::new(env!("CARGO_BIN_EXE_planar-rigidity")).args(["verdict", "A4_MONO"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), cli(&["verdict", "A4_MONO"]).stdout);
    let out = Command::new(env!("CARGO_BIN_EXE_planar-rigidity")).args(["info", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
