use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn discourses() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("discourses")
}

fn contsem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contsem"))
        .current_dir(discourses())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const GOLDENS: &[(&str, &[&str])] = &[
    ("doesnt_own_car.expected", &["run", "doesnt_own_car.dsc"]),
    (
        "doesnt_own_car.rejected.expected",
        &["run", "doesnt_own_car.dsc", "--rejected-negation", "--no-raw"],
    ),
    ("owns_car.expected", &["run", "owns_car.dsc", "--resolve", "recency"]),
    ("loves_woman.expected", &["run", "loves_woman.dsc"]),
    ("rfc_sub_coord.expected", &["run", "rfc_sub_coord.dsc", "--symbolic"]),
    ("rfc_coord_coord.expected", &["run", "rfc_coord_coord.dsc"]),
    ("rfc_sub_concrete.expected", &["run", "rfc_sub_concrete.dsc"]),
    ("beta.expected", &["run", "beta.lam", "--mode", "term", "--trace"]),
];

#[test]
fn shipped_examples_match_goldens() {
    for (golden, args) in GOLDENS {
        let out = contsem(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let expected = std::fs::read_to_string(discourses().join(golden)).unwrap();
        assert_eq!(stdout(&out), expected, "{golden}");
    }
}

#[test]
fn every_shipped_discourse_has_a_golden() {
    for entry in std::fs::read_dir(discourses()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        if name.ends_with(".dsc") || name.ends_with(".lam") {
            assert!(
                GOLDENS.iter().any(|(_, args)| args[1] == name),
                "{name} has no golden"
            );
        }
    }
}

#[test]
fn negated_discourse_lines() {
    let text = stdout(&contsem(&["run", "doesnt_own_car.dsc"]));
    assert!(text.contains("\nsimplified: (~ Ex y. (car y & own j y)) & red(sel(j::nil))\n"));
    assert!(text.contains("\nreport: sel#0 env=j::nil candidates=[j]\n"));
}

#[test]
fn symbolic_file_defaults_to_expansion() {
    let a = contsem(&["run", "rfc_sub_coord.dsc"]);
    let b = contsem(&["run", "rfc_sub_coord.dsc", "--symbolic"]);
    assert_eq!(stdout(&a), stdout(&b));
    let c = contsem(&["run", "rfc_sub_coord.dsc", "--mode", "interpret"]);
    assert_eq!(c.status.code(), Some(1));
}

#[test]
fn json_output_fields() {
    let out = contsem(&["run", "owns_car.dsc", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in [
        "composed_term",
        "normal_form",
        "raw_formula",
        "simplified_formula",
        "access_reports",
        "resolved_formula",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["simplified_formula"]["text"], "Ex y. ((car y & own j y) & red(sel(j::y::nil)))");
    assert_eq!(v["access_reports"][0]["candidates"], serde_json::json!(["y", "j"]));
    assert!(v["resolved_formula"].is_null());
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = contsem(&["run", "no_such_file.dsc"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("usage"));
}

#[test]
fn bad_flag_is_a_usage_error() {
    assert_eq!(contsem(&["run", "owns_car.dsc", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(contsem(&[]).status.code(), Some(2));
}

#[test]
fn pipeline_errors_exit_one_with_position() {
    let dir = std::env::temp_dir().join(format!("contsem-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.dsc");
    std::fs::write(&bad, "profile B\nsentence s1 = john sings\n").unwrap();
    let out = contsem(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let budget = contsem(&["run", "doesnt_own_car.dsc", "--max-steps", "3"]);
    assert_eq!(budget.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn profile_override_and_lexicon_extension() {
    let dir = std::env::temp_dir().join(format!("contsem-lex-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let lex = dir.join("extra.lex");
    std::fs::write(&lex, "noun bike\n").unwrap();
    let dsc = dir.join("bike.dsc");
    std::fs::write(&dsc, "sentence s1 = john owns (a bike)\n").unwrap();
    let out = contsem(&["run", dsc.to_str().unwrap(), "--profile", "B", "--lexicon", lex.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("simplified: Ex y. (bike y & own j y)\n"));
    let out = contsem(&["run", dsc.to_str().unwrap(), "--lexicon", lex.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn custom_initial_arguments() {
    let out = contsem(&[
        "run",
        "owns_car.dsc",
        "--init",
        "(|)",
        "--init",
        "nil",
        "--init",
        "nil",
        "--init",
        r"\c:kB. \e1:g. \e2:g. bot",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("simplified: Ex y. ((car y & own j y) | red(sel(j::y::nil)))\n"), "{}", stdout(&out));
}

#[test]
fn raw_and_simplified_outputs_agree() {
    use contsem_core::logic::{logically_equiv, parse_formula};
    let mut checked = 0;
    for (_, args) in GOLDENS {
        let mut json_args = args.to_vec();
        json_args.retain(|a| *a != "--no-raw" && *a != "--trace");
        json_args.extend(["--format", "json"]);
        let v: Value = serde_json::from_slice(&contsem(&json_args).stdout).unwrap();
        let (Some(raw), Some(simple)) = (v["raw_formula"]["text"].as_str(), v["simplified_formula"]["text"].as_str())
        else {
            continue;
        };
        let (raw, simple) = (parse_formula(raw).unwrap(), parse_formula(simple).unwrap());
        assert!(logically_equiv(&raw, &simple, 3).unwrap(), "{args:?}");
        checked += 1;
    }
    assert!(checked >= 6, "only {checked} outputs had formulas");
}
