use std::process::Command;

use dlirred_cli::{run, VerdictRecord, EXIT_GUARD, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use dlirred_core::parabolic::max_double_coset_element;
use dlirred_core::{decide_irreducible, CoxeterSystem, GenSet, Twist};
use serde_json::Value;

fn dlirred(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_dlirred"))
        .args(args)
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn json(line: &str) -> Value {
    serde_json::from_str(line).unwrap()
}

#[test]
fn decide_examples_and_exit_codes() {
    let (out, _, code) = dlirred(&[
        "decide", "--type", "A2", "--twist", "id", "--I", "", "--w", "1 2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["irreducible"], true);
    let (out, _, code) = dlirred(&[
        "decide", "--type", "A2", "--twist", "id", "--I", "", "--w", "",
    ]);
    assert_eq!(code, EXIT_NEGATIVE);
    let v = json(&out);
    assert_eq!(v["irreducible"], false);
    assert_eq!(v["closure"], serde_json::json!([]));
}

#[test]
fn other_commands() {
    let (out, _, code) = dlirred(&[
        "components",
        "--type",
        "A2",
        "--twist",
        "id",
        "--I",
        "",
        "--w",
        "1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["component_poly"], serde_json::json!([1, 1, 1]));
    assert_eq!(json(&out)["derived"], true);
    let (out, _, _) = dlirred(&[
        "closure", "--type", "D4", "--twist", "3D4", "--I", "", "--w", "2",
    ]);
    assert_eq!(json(&out)["closure"], serde_json::json!([2]));
    let (out, _, code) = dlirred(&[
        "double-coset",
        "--type",
        "A2",
        "--I",
        "1",
        "--w",
        "2",
        "--J",
        "1",
        "--max",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["max"], "1 2 1");
    assert!(json(&out).get("min").is_none());
}

#[test]
fn verify_examples() {
    let (out, _, code) = dlirred(&[
        "verify", "--model", "gl", "--n", "2", "--q", "2", "--m", "2",
    ]);
    assert_eq!(code, EXIT_OK);
    let counts = out
        .lines()
        .map(json)
        .find(|v| v["property"] == "counts")
        .unwrap();
    assert!(counts["detail"]
        .as_str()
        .unwrap()
        .contains("Drinfeld count 2"));
    let (out, _, code) = dlirred(&[
        "verify", "--model", "gl", "--n", "3", "--q", "2", "--m", "1",
    ]);
    assert_eq!(code, EXIT_OK);
    let partition = out
        .lines()
        .map(json)
        .find(|v| v["property"] == "partition")
        .unwrap();
    assert!(partition["detail"]
        .as_str()
        .unwrap()
        .starts_with("partition totals 21"));
    let (out, _, code) = dlirred(&[
        "verify",
        "--n",
        "3",
        "--q",
        "2",
        "--m",
        "2",
        "--property",
        "eq2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 1);
    assert_eq!(json(&out)["status"], "pass");
    let (out, _, code) = dlirred(&[
        "verify", "--n", "2", "--q", "3", "--twist", "unitary", "--m", "2", "--list",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().map(json).any(|v| v["command"] == "points"));
}

#[test]
fn input_errors_are_position_annotated() {
    let (_, err, code) = dlirred(&["decide", "--type", "A2", "--w", "1 7"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("position 2"), "{err}");
    assert!(err.contains('^'));
    let (_, err, code) = dlirred(&["decide", "--type", "Q5"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("position 0"), "{err}");
    let (_, _, code) = dlirred(&["decide", "--type", "A2", "--twist", "3D4"]);
    assert_eq!(code, EXIT_INPUT);
    let (_, _, code) = dlirred(&["decide"]);
    assert_eq!(code, EXIT_INPUT);
    let (_, _, code) = dlirred(&["verify", "--n", "3", "--q", "2", "--property", "bogus"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn guard_exceeded() {
    let (_, err, code) = dlirred(&[
        "verify",
        "--n",
        "3",
        "--q",
        "2",
        "--m",
        "3",
        "--property",
        "orbits",
    ]);
    assert_eq!(code, EXIT_GUARD, "{err}");
    let e7 = "1,2,3,4,5,6,7";
    let (_, _, code) = dlirred(&[
        "double-coset",
        "--type",
        "E8",
        "--I",
        e7,
        "--w",
        "8",
        "--J",
        e7,
        "--list",
    ]);
    assert_eq!(code, EXIT_GUARD);
}

#[test]
fn pretty_output() {
    let (out, _, code) = dlirred(&["--pretty", "decide", "--type", "B2", "--I", "1", "--w", "1"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(out.contains("reducible"));
    assert!(out.contains("1 + q + q^2 + q^3"), "{out}");
}

/// Every CLI record matches the library call on the same inputs.
#[test]
fn golden_against_library() {
    let grid = [
        ("A2", "id"),
        ("B3", "id"),
        ("A3", "2A3"),
        ("G2", "2G2"),
        ("A1xA1", "swap(1,2)"),
        ("D4", "3D4"),
    ];
    for (ty, tw) in grid {
        let sys = CoxeterSystem::parse(ty).unwrap();
        let twist = Twist::parse(tw, &sys).unwrap();
        for w in sys.elements().unwrap().iter().step_by(3) {
            for i in GenSet::all_subsets(sys.rank()).step_by(2) {
                let word = sys.reduced_word(w).to_string();
                let labels: Vec<String> = i.labels().iter().map(|l| l.to_string()).collect();
                let left = labels.join(",");
                let out = run([
                    "dlirred", "decide", "--type", ty, "--twist", tw, "--I", &left, "--w", &word,
                ]);
                let rec: VerdictRecord = serde_json::from_str(&out.stdout).unwrap();
                let lib = decide_irreducible(&sys, i, w, &twist).unwrap();
                assert_eq!(rec.irreducible, lib.irreducible);
                assert_eq!(rec.closure, lib.closure);
                assert_eq!(rec.component_poly, lib.component_poly.coeffs());
                assert_eq!(
                    out.code,
                    if lib.irreducible {
                        EXIT_OK
                    } else {
                        EXIT_NEGATIVE
                    }
                );
                for j in GenSet::all_subsets(sys.rank()).step_by(3) {
                    let labels: Vec<String> = j.labels().iter().map(|l| l.to_string()).collect();
                    let right = labels.join(" ");
                    let out = run([
                        "dlirred",
                        "double-coset",
                        "--type",
                        ty,
                        "--I",
                        &left,
                        "--w",
                        &word,
                        "--J",
                        &right,
                        "--max",
                    ]);
                    let v: Value = serde_json::from_str(&out.stdout).unwrap();
                    let max = max_double_coset_element(&sys, i, w, j).unwrap();
                    assert_eq!(v["max"], sys.reduced_word(&max).to_string());
                }
            }
        }
    }
}

#[test]
fn verdict_record_round_trips() {
    let out = run([
        "dlirred",
        "components",
        "--type",
        "D4",
        "--twist",
        "3D4",
        "--I",
        "2",
        "--w",
        "1 3",
    ]);
    let rec: VerdictRecord = serde_json::from_str(&out.stdout).unwrap();
    let again = serde_json::to_string(&rec).unwrap();
    assert_eq!(serde_json::from_str::<VerdictRecord>(&again).unwrap(), rec);
    assert_eq!(again.trim(), out.stdout.trim());
}

#[test]
fn help_exits_cleanly() {
    let out = run(["dlirred", "--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("decide"));
}
