use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf8")
}

fn json_of(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = run(&full);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().expect("exit code"))
}

#[test]
fn census_c2_all() {
    let o = run(&["census", "--group", &data("c2.json"), "--family", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("3 diagrams vs 2 G-objects\n"), "{}", stdout(&o));
}

#[test]
fn census_s3_and_whole() {
    let (v, code) = json_of(&["census", "--group", &data("s3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["diagrams"], 6);
    assert_eq!(v["g_objects"], 2);
    let (v, _) = json_of(&["census", "--group", "builtin:c2", "--family", "whole"]);
    assert_eq!(v["diagrams"], 2);
}

#[test]
fn homology_of_boundary() {
    let o = run(&["homology", "--sset", &data("boundary2.json"), "--ring", "Z"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("    H_0 = Z\n    H_1 = Z\n"), "{out}");
    let (v, _) = json_of(&["homology", "--sset", &data("boundary2.json")]);
    let inv = orbitkit::io::parse_homology(&v["subgroups"][0]["invariants"]).unwrap();
    let ranks: Vec<usize> = inv.iter().map(|h| h.rank).collect();
    assert_eq!(ranks, vec![1, 1]);
    assert_eq!(v["subgroups"][0]["invariants"], v["subgroups"][0]["fixed_points"]);
}

#[test]
fn homology_per_subgroup_columns() {
    let (v, _) = json_of(&["homology", "--group", "builtin:c2", "--sset", "builtin:swap-square"]);
    let rows = v["subgroups"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let fixed = orbitkit::io::parse_homology(&rows[1]["fixed_points"]).unwrap();
    assert_eq!(fixed[0].rank, 2);
    let inv = orbitkit::io::parse_homology(&rows[1]["invariants"]).unwrap();
    assert_eq!(inv[0].rank, 1);
}

#[test]
fn homology_of_chain_file() {
    let (v, code) = json_of(&["homology", "--group", "builtin:c2", "--chain", &data("sign.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["subgroups"][0]["invariants"][0]["rank"], 1);
    assert_eq!(v["subgroups"][1]["invariants"][0]["rank"], 0);
    assert!(v["subgroups"][0].get("fixed_points").is_none());
}

#[test]
fn cofib_check_swap_points() {
    let o = run(&["cofib-check", "--group", &data("c2.json"), "--map", &data("incl.json"), "--family", "e"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("cofibration: yes\n"));
    let o = run(&["cofib-check", "--group", &data("c2.json"), "--map", &data("incl.json"), "--family", "whole"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("cofibration: no\n"));
    assert!(stdout(&o).contains("stabilizer {0}"));
}

#[test]
fn cofib_check_json_reports_failing_stabilizer() {
    let (v, code) = json_of(&["cofib-check", "--group", "builtin:c2", "--sset", "builtin:swap-square", "--family", "e"]);
    assert_eq!(code, 1);
    assert_eq!(v["cofibration"], false);
    assert_eq!(v["failure"]["kind"], "isotropy");
    assert_eq!(v["failure"]["stabilizer"], serde_json::json!([0, 1]));
}

#[test]
fn cells_replay() {
    let (v, code) = json_of(&["cells", "--group", "builtin:s3", "--sset", "builtin:s3-hexagon"]);
    assert_eq!(code, 0);
    assert_eq!(v["replay_verified"], true);
    assert_eq!(v["cells"].as_array().unwrap().len(), 3);
    assert_eq!(v["stage_counts"], serde_json::json!([6, 12]));
}

#[test]
fn orbit_cat_round_trips() {
    let (v, code) = json_of(&["orbit-cat", "--group", "builtin:s3"]);
    assert_eq!(code, 0);
    let back: orbitkit::orbitcat::OrbitCategoryJson = serde_json::from_value(v.clone()).unwrap();
    let g = orbitkit::group::Group::symmetric(3);
    let cat = orbitkit::orbitcat::OrbitCategory::new(&g, &g.all_subgroups().unwrap()).unwrap();
    assert_eq!(back, cat.to_json());
    assert_eq!(back.objects.len(), 6);
}

#[test]
fn fixed_points_of_gset() {
    let f = std::env::temp_dir().join(format!("orbitkit-gset-{}.json", std::process::id()));
    std::fs::write(&f, r#"{"size": 3, "action": {"1": [1, 0, 2]}}"#).unwrap();
    let (v, code) = json_of(&["fixed-points", "--group", "builtin:c2", "--gset", f.to_str().unwrap()]);
    std::fs::remove_file(&f).ok();
    assert_eq!(code, 0);
    assert_eq!(v["subgroups"][0]["fixed"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["subgroups"][1]["fixed"], serde_json::json!([2]));
}

#[test]
fn fixed_points_of_sset() {
    let (v, _) = json_of(&["fixed-points", "--group", "builtin:c2", "--sset", "builtin:swap-square"]);
    assert_eq!(v["subgroups"][1]["counts"], serde_json::json!([2]));
}

#[test]
fn elmendorf_reports() {
    let (v, code) = json_of(&["elmendorf", "--group", "builtin:c2", "--sset", "builtin:swap-points", "--cell", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["adjunction"]["counit_iso"], true);
    assert_eq!(v["adjunction"]["triangle_identities"], true);
    assert_eq!(v["cellularity"].as_array().unwrap().len(), 4);

    let f = std::env::temp_dir().join(format!("orbitkit-z0-{}.json", std::process::id()));
    std::fs::write(&f, r#"{"ring": "Z", "ranks": [1]}"#).unwrap();
    let (v, code) = json_of(&["elmendorf", "--group", "builtin:c2", "--chain", f.to_str().unwrap(), "--cell", "0"]);
    std::fs::remove_file(&f).ok();
    assert_eq!(code, 0);
    assert_eq!(v["adjunction"]["unit_iso"], false);
    assert_eq!(v["adjunction"]["per_object"]["G/{0,1}"]["weak_equivalence"], false);
    let free_fixed = v["cellularity"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["h"] == serde_json::json!([0, 1]) && r["k"] == serde_json::json!([0]))
        .unwrap();
    assert_eq!(free_fixed["iso"], false);
    assert_eq!(free_fixed["orbit_basis"], serde_json::json!([[0, 1]]));
}

#[test]
fn elmendorf_needs_trivial_subgroup() {
    let o = run(&["elmendorf", "--group", "builtin:c2", "--sset", "builtin:swap-points", "--family", "whole"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("trivial subgroup"));
}

#[test]
fn whitehead_positive_and_negative() {
    let (v, code) = json_of(&["whitehead", "--map", &data("apex.json"), "--family", "all"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["verified"], true);
    assert_eq!(v["escalate"], false);

    let (v, code) = json_of(&["whitehead", "--map", &data("fixed_incl.json"), "--family", "whole"]);
    assert_eq!(code, 1);
    assert!(v["certificate"].is_null());
    assert_eq!(v["isotropy"]["ok"], false);
    assert_eq!(v["isotropy"]["target"]["witness"]["stabilizer"], serde_json::json!([0]));
    assert_eq!(v["hyp_a"]["{0,1}"], false);
}

#[test]
fn whitehead_over_fields() {
    for ring in ["Q", "Fp:2", "Fp:3"] {
        let (v, code) = json_of(&["whitehead", "--map", &data("apex.json"), "--ring", ring]);
        assert_eq!(code, 0, "{ring}");
        assert_eq!(v["ring"], ring, "{ring}");
    }
}

#[test]
fn input_errors_exit_two_and_name_the_field() {
    let o = run(&["homology", "--sset", &data("bad_faces.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("field \"faces\""), "{}", stderr(&o));

    let o = run(&["census", "--group", &data("missing.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot read"));

    let o = run(&["cofib-check", "--map", &data("incl.json"), "--family", "e"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("field \"action\".\"1\""), "{}", stderr(&o));

    let o = run(&["homology", "--sset", &data("boundary2.json"), "--ring", "F4"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["census", "--group", "builtin:c2", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn explicit_family_file() {
    let (v, _) = json_of(&["census", "--group", "builtin:c2", "--family", &data("family_e_c2.json")]);
    assert_eq!(v["diagrams"], 3);
    let o = run(&["census", "--group", "builtin:c2", "--family", &data("c2.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_out_flag_writes() {
    let args = ["whitehead", "--map", &data("apex.json"), "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let path = std::env::temp_dir().join(format!("orbitkit-out-{}.json", std::process::id()));
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    with_out.extend(["--out", &p]);
    let c = run(&with_out);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_file(&path).ok();
}
