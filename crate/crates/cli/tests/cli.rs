use std::path::{Path, PathBuf};
use std::process::Command;

use desirable::document::ModelDocument;
use desirable::model::selections;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_desirable"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run_on(cmd: &[&str], name: &str) -> Run {
    let path = fixture(name);
    let mut args = cmd.to_vec();
    args.push(path.to_str().unwrap());
    run(&args)
}

fn fixtures() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    out
}

#[test]
fn pizza_set_of_things_is_coherent() {
    let r = run_on(&["check", "--sdt"], "pizza_things.json");
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.starts_with("check: Verified"));
}

#[test]
fn pizza_family_misses_supersets() {
    let r = run_on(&["check", "--sds"], "pizza_sets.json");
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("certificate: K2:"), "{}", r.stdout);
}

#[test]
fn closure_of_mandated_things_is_coherent() {
    assert_eq!(run_on(&["check", "--sdt"], "thick_crust_assessment.json").code, 0);
    assert_eq!(run_on(&["check", "--sdt"], "pizza_assessment.json").code, 0);
}

#[test]
fn thick_crust_extension() {
    let r = run_on(&["extend", "--sdt"], "thick_crust.json");
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("sdt: {margherita thick, peperoni, peperoni thick}"), "{}", r.stdout);
}

#[test]
fn transitivity_is_inferred() {
    let r = run_on(&["extend", "--sdt"], "preferences.json");
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("sdt: {(o1,o2), (o1,o3), (o2,o3)}"), "{}", r.stdout);
}

#[test]
fn two_of_three_propositions() {
    let r = run_on(&["extend", "--sds"], "propositions.json");
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("members: 4"), "{}", r.stdout);
    assert!(r.stdout.contains("minimal: {{p1, p2}, {p1, p3}, {p2, p3}}"), "{}", r.stdout);
}

#[test]
fn selections_of_two_menus() {
    let text = std::fs::read_to_string(fixture("selections.json")).unwrap();
    let doc = ModelDocument::parse(&text).unwrap();
    let u = &doc.universe;
    let expected = u
        .family([
            vec!["peperoni"],
            vec!["peperoni", "cheese"],
            vec!["meatballs", "peperoni"],
            vec!["meatballs", "cheese"],
        ])
        .unwrap();
    assert_eq!(selections(doc.base.as_ref().unwrap()), expected);
}

#[test]
fn gamble_presets_and_hulls() {
    let text = std::fs::read_to_string(fixture("gambles_posi.json")).unwrap();
    let doc = ModelDocument::parse(&text).unwrap();
    let a = doc.assessment().unwrap();
    assert_eq!(doc.universe.render(a.a_not), "{f3}");
    assert_eq!(doc.universe.render(a.a_des), "{f1, f2, f6}");
    for name in ["gambles_posi.json", "gambles_chull.json", "lotteries.json"] {
        assert_eq!(run_on(&["check", "--sdt"], name).code, 0, "{name}");
    }
    let r = run_on(&["laws"], "horse_lotteries.json");
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("horse_lotteries: Verified"));
    assert!(r.stdout.contains("incremental: yes"));
}

#[test]
fn total_orders_from_pairwise_comparisons() {
    let r = run_on(&["represent", "--orders"], "total_orders.json");
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("orders: 6"), "{}", r.stdout);
}

#[test]
fn represent_needs_a_coherent_family() {
    let r = run_on(&["represent"], "pizza_sets.json");
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("not coherent"), "{}", r.stdout);
}

#[test]
fn represent_reports_both_representers() {
    let path = std::env::temp_dir().join(format!("desirable-represent-{}.json", std::process::id()));
    let text = std::fs::read_to_string(fixture("horn_rule.json")).unwrap();
    let mut doc = ModelDocument::parse(&text).unwrap();
    let u = doc.universe.clone();
    doc.sds = Some(u.family([vec!["x", "z"], vec!["y", "z"], vec!["x", "y", "z"], vec!["z"]]).unwrap());
    std::fs::write(&path, doc.to_json()).unwrap();
    let r = run(&["--format", "structured", "represent", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["report"]["verified"], Value::Bool(true));
    let supersets = serde_json::json!([["z"], ["x", "z"], ["y", "z"], ["x", "y", "z"]]);
    assert_eq!(v["report"]["d_k"], supersets);
    assert_eq!(v["report"]["largest"], supersets);
}

#[test]
fn broken_table_names_the_law() {
    let r = run_on(&["laws"], "broken_table.json");
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("law:monotone"), "{}", r.stdout);
    // Commands that need a lawful operator stop at the law check.
    let r = run_on(&["check", "--sdt"], "broken_table.json");
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("law:monotone"), "{}", r.stdout);
}

#[test]
fn verify_theorem1_on_two_things() {
    let r = run(&["verify", "theorem1", "--size", "2"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("theorem1 Verified"));
}

#[test]
fn verify_without_hypotheses_finds_counterexamples() {
    let r = run(&["verify", "prop6", "--size", "3", "--operators", "corner", "--ignore-hypotheses"]);
    assert_eq!(r.code, 1, "{}", r.stdout);
}

#[test]
fn bad_documents_exit_65() {
    for (name, needle) in [
        ("invalid/malformed.json", "malformed document"),
        ("invalid/dangling_thing.json", "unknown thing `calzone`"),
        ("invalid/ragged_gambles.json", "payload mismatch"),
        ("invalid/does_not_exist.json", "cannot read"),
    ] {
        let r = run_on(&["check", "--sdt"], name);
        assert_eq!(r.code, 65, "{name}");
        assert!(r.stderr.contains(needle), "{name}: {}", r.stderr);
    }
    // The requested model is absent from the document.
    assert_eq!(run_on(&["check", "--sds"], "pizza_things.json").code, 65);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run_on(&["check"], "pizza_things.json").code, 64);
    assert_eq!(run_on(&["check", "--sdt", "--sds"], "pizza_things.json").code, 64);
    assert_eq!(run(&["frobnicate"]).code, 64);
    assert_eq!(run(&["verify", "no_such_claim"]).code, 64);
    assert_eq!(run(&["verify", "prop1", "--operators", "nope"]).code, 64);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn structured_reports_are_versioned() {
    let r = run_on(&["--format", "structured", "check", "--sds"], "pizza_sets.json");
    assert_eq!(r.code, 1);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["status"], "Violated");
    assert_eq!(v["exit_code"], 1);
    assert_eq!(v["report"]["certificate"]["label"], "K2");
}

#[test]
fn every_fixture_is_described_and_canonical() {
    let all = fixtures();
    assert!(all.len() >= 14);
    for path in all {
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = ModelDocument::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(doc.note.as_ref().is_some_and(|n| !n.is_empty()), "{}", path.display());
        let once = doc.to_json();
        assert_eq!(ModelDocument::parse(&once).unwrap().to_json(), once, "{}", path.display());
        assert_eq!(ModelDocument::parse(&once).unwrap(), doc);
    }
}

#[test]
fn reports_do_not_depend_on_threads_or_runs() {
    let commands: [&[&str]; 6] = [
        &["laws"],
        &["check", "--sds"],
        &["extend", "--sds"],
        &["extend", "--sdt"],
        &["enumerate", "--sdt"],
        &["represent"],
    ];
    for path in fixtures() {
        let p = path.to_str().unwrap();
        for cmd in commands {
            let outputs: Vec<(i32, String)> = ["1", "4", "4"]
                .iter()
                .map(|t| {
                    let mut args = vec!["--format", "structured", "--threads", t];
                    args.extend_from_slice(cmd);
                    args.push(p);
                    let r = run(&args);
                    (r.code, r.stdout)
                })
                .collect();
            assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{cmd:?} {p}");
        }
    }
    let verify = |t: &str| run(&["--threads", t, "verify", "all", "--size", "2"]).stdout;
    assert_eq!(verify("1"), verify("3"));
}

#[test]
fn enumeration_counts_on_two_things() {
    let path = std::env::temp_dir().join(format!("desirable-enumerate-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{"note": "two opaque things", "universe": {"things": ["a", "b"], "payload_kind": "opaque"}, "closure": {"kind": "identity"}}"#,
    )
    .unwrap();
    let r = run(&["enumerate", "--sds", path.to_str().unwrap()]);
    let s = run(&["enumerate", "--sdt", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert!(r.stdout.contains("count: 5"), "{}", r.stdout);
    assert!(s.stdout.contains("count: 4"), "{}", s.stdout);
}
