use serde_json::Value;
use std::process::{Command, Output};

fn cmconj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmconj"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const P_52_5: [&str; 25] = [
    "1", "-82", "-996", "-968", "1051", "-1422", "-96", "24912", "7896", "-16722", "28844",
    "-13658", "-114024", "13658", "28844", "16722", "7896", "-24912", "-96", "1422", "1051", "968",
    "-996", "82", "1",
];

#[test]
fn compute_json_reproduces_the_worked_example() {
    let out = cmconj(&[
        "compute",
        "--disc",
        "-52",
        "--level",
        "5",
        "--format",
        "json",
        "--no-cache",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let p: Vec<&str> = v["polynomial"]["p"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(p, P_52_5);
    assert_eq!(v["polynomial"]["irr"], v["polynomial"]["p"]);
    assert_eq!(v["polynomial"]["ell"], 1);
    assert_eq!(v["class_data"]["h"], 2);
    assert_eq!(v["class_data"]["m"], 12);
    assert_eq!(v["class_data"]["class_count"], 24);
    assert_eq!(v["verification"]["reality_shortcut"], true);
}

#[test]
fn json_is_stable_across_runs_and_caches() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let base = [
        "compute",
        "--disc",
        "-68",
        "--level",
        "5",
        "--format",
        "json",
        "--conjugates",
    ];
    let cold = cmconj(&[&base[..], &["--cache-dir", cache]].concat());
    let warm = cmconj(&[&base[..], &["--cache-dir", cache]].concat());
    let none = cmconj(&[&base[..], &["--no-cache"]].concat());
    assert_eq!(cold.status.code(), Some(0));
    assert!(
        std::fs::read_dir(dir.path()).unwrap().next().is_some(),
        "cache populated"
    );
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, none.stdout);
    let v = json(&cold);
    assert_eq!(
        serde_json::to_string_pretty(&v).unwrap().trim(),
        stdout(&cold).trim()
    );
    assert_eq!(v["conjugates"].as_array().unwrap().len(), 48);
}

#[test]
fn text_and_json_agree() {
    let args = [
        "compute",
        "--disc",
        "-52",
        "--level",
        "5",
        "--function",
        "j",
        "--no-cache",
    ];
    let text = stdout(&cmconj(&args));
    let v = json(&cmconj(&[&args[..], &["--format", "json"]].concat()));
    let coeffs: Vec<&str> = v["polynomial"]["irr"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["-567663552000000", "-6896880000", "1"]);
    for c in coeffs {
        assert!(
            text.contains(c.trim_start_matches('-')),
            "{c} missing from text output"
        );
    }
    assert_eq!(v["polynomial"]["ell"], 12);
    assert!(text.contains("ell = 12"));
}

#[test]
fn excluded_discriminants_exit_2() {
    for d in ["-3", "-4", "-5", "7", "abc"] {
        let out = cmconj(&["compute", "--disc", d, "--level", "5", "--no-cache"]);
        assert_eq!(out.status.code(), Some(2), "disc {d}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn incompatible_function_and_level_exit_2() {
    let out = cmconj(&["compute", "--disc", "-52", "--level", "4", "--no-cache"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cmconj(&[
        "compute",
        "--disc",
        "-52",
        "--level",
        "5",
        "--function",
        "klein-quotient:1/5,0/5|2/5,0/5",
        "--no-cache",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_arguments_exit_2() {
    assert_eq!(cmconj(&["compute", "--level", "5"]).status.code(), Some(2));
    assert_eq!(cmconj(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn validate_accepts_points_in_the_upper_half_plane() {
    for p in ["i", "0.3+1.7i", "-0.4+0.95i", "0.01+0.05i"] {
        let out = cmconj(&["validate", "--point", p, "--format", "json"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{p}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(json(&out)["pass"], true);
    }
}

#[test]
fn validate_rejects_lower_half_plane() {
    for p in ["-i", "0.5", "1-2i", "nonsense"] {
        assert_eq!(
            cmconj(&["validate", "--point", p]).status.code(),
            Some(2),
            "{p}"
        );
    }
}

#[test]
fn table_reports_grid_and_cartan_data() {
    let out = cmconj(&[
        "table",
        "--disc",
        "-52",
        "--level",
        "5",
        "--format",
        "json",
        "--no-cache",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["forms"].as_array().unwrap().len(), 2);
    assert_eq!(v["cosets"].as_array().unwrap().len(), 12);
    assert_eq!(v["grid"].as_array().unwrap().len(), 24);
    assert_eq!(v["class_count"], 24);
    assert_eq!(v["cartan"]["quotient"], 12);

    let v = json(&cmconj(&[
        "table",
        "--disc",
        "-52",
        "--level",
        "1",
        "--format",
        "json",
        "--no-cache",
    ]));
    assert_eq!(v["class_count"], 2);
    let v = json(&cmconj(&[
        "table",
        "--disc",
        "-23",
        "--level",
        "1",
        "--format",
        "json",
        "--no-cache",
    ]));
    assert_eq!(v["class_count"], 3);
    let forms: Vec<Vec<&str>> = v["forms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| {
            f.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_str().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(forms, [["1", "1", "6"], ["2", "-1", "3"], ["2", "1", "3"]]);
}

#[test]
fn catalog_lists_all_functions() {
    let out = cmconj(&["catalog"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["rogers-ramanujan", "j", "klein-quotient"] {
        assert!(text.contains(name), "{name}");
    }
    let v = json(&cmconj(&["catalog", "--format", "json"]));
    assert!(v.as_array().unwrap().len() >= 3);
}

#[test]
fn hilbert_class_polynomial_at_level_one() {
    let v = json(&cmconj(&[
        "compute",
        "--disc",
        "-23",
        "--level",
        "1",
        "--function",
        "j",
        "--format",
        "json",
        "--no-cache",
    ]));
    let coeffs: Vec<&str> = v["polynomial"]["irr"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["12771880859375", "-5151296875", "3491750", "1"]);
}
