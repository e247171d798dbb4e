use std::path::PathBuf;

use hflens::report::*;
use hflens::{run, table_report, EXIT_INVALID, EXIT_OBSTRUCTED, EXIT_OK};
use serde::de::DeserializeOwned;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn hflens(args: &[&str]) -> hflens::Outcome {
    run(std::iter::once("hflens").chain(args.iter().copied()))
}

#[test]
fn exit_status_matrix() {
    let e8 = data("e8.gram");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["dlens", "3", "1"], EXIT_OK),
        (vec!["dlens", "1", "0"], EXIT_OK),
        (vec!["dlens", "4", "2"], EXIT_INVALID),
        (vec!["dlens", "0", "1"], EXIT_INVALID),
        (vec!["dlens", "5", "-2"], EXIT_OK),
        (vec!["dlens", "3", "1", "--orientation", "sideways"], EXIT_INVALID),
        (vec!["family", "5", "4"], EXIT_OK),
        (vec!["family", "22", "3"], EXIT_OK),
        (vec!["family", "5", "4", "--sign", "-"], EXIT_OK),
        (vec!["family", "6", "3"], EXIT_INVALID),
        (vec!["family", "5", "4", "--sign", "x"], EXIT_INVALID),
        (vec!["table", "--pmax", "9"], EXIT_OK),
        (vec!["table", "--pmax", "1"], EXIT_INVALID),
        (vec!["table", "--pmax", "ten"], EXIT_INVALID),
        (vec!["obstruct", "22", "3"], EXIT_OBSTRUCTED),
        (vec!["obstruct", "5", "4"], EXIT_OK),
        (vec!["obstruct", "5", "1"], EXIT_OK),
        (vec!["obstruct", "4", "2"], EXIT_INVALID),
        (vec!["knot", "torus", "2", "3"], EXIT_OK),
        (vec!["knot", "torus", "2", "4"], EXIT_INVALID),
        (vec!["knot", "torus", "0", "3"], EXIT_INVALID),
        (vec!["surgery", "--poly", "-1,1", "--coef", "+1/2"], EXIT_OK),
        (vec!["surgery", "--poly", "-1,1", "--coef", "-1/1"], EXIT_OK),
        (vec!["surgery", "--poly", "-1,1", "--coef", "2/3"], EXIT_INVALID),
        (vec!["surgery", "--poly", "0,1", "--coef", "+1/2"], EXIT_INVALID),
        (vec!["surgery", "--poly", "1,x", "--coef", "+1/2"], EXIT_INVALID),
        (vec!["lattice", &e8, "--bound", "8"], EXIT_OK),
        (vec!["lattice", &e8, "--bound", "-8"], EXIT_OBSTRUCTED),
        (vec!["lattice", &e8, "--bound", "1/0"], EXIT_INVALID),
        (vec!["elkies", &e8], EXIT_OK),
        (vec!["elkies", "/nonexistent/file.gram"], EXIT_INVALID),
        (vec!["thom", "4"], EXIT_OK),
        (vec!["thom", "0"], EXIT_INVALID),
        (vec!["notknot", "-3/2", "-1/2"], EXIT_OBSTRUCTED),
        (vec!["notknot", "-1/2", "1/2"], EXIT_OK),
        (vec!["notknot", "-1/2", "5/2"], EXIT_INVALID),
        (vec!["no-such-command"], EXIT_INVALID),
        (vec![], EXIT_INVALID),
        (vec!["--help"], EXIT_OK),
    ];
    for (args, code) in cases {
        let out = hflens(&args);
        assert_eq!(out.code, code, "{args:?}: {out:?}");
        if code == EXIT_INVALID {
            assert!(!out.stderr.is_empty(), "{args:?} needs a diagnostic");
        } else {
            assert!(!out.stdout.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn bad_gram_files_are_diagnosed() {
    for f in ["asymmetric.gram", "indefinite.gram"] {
        let out = hflens(&["elkies", &data(f)]);
        assert_eq!(out.code, EXIT_INVALID, "{f}: {out:?}");
    }
}

#[test]
fn spec_examples() {
    let e8 = data("e8.gram");
    let first_line = |args: &[&str]| hflens(args).stdout.lines().next().unwrap_or("").to_string();
    assert_eq!(first_line(&["dlens", "3", "1", "--orientation", "plus"]), "1/2 -1/6 -1/6");
    assert_eq!(first_line(&["dlens", "1", "0"]), "0");
    assert_eq!(first_line(&["dlens", "22", "3", "1"]), "-7/4");
    assert_eq!(hflens(&["family", "5", "4"]).stdout, "-1 + T^-1 + T\n");
    assert_eq!(hflens(&["family", "7", "1"]).stdout, "1\n");
    assert_eq!(hflens(&["family", "22", "3"]).stdout, "(empty)\n");
    assert_eq!(
        hflens(&["table", "--pmax", "9"]).stdout,
        "F(5,4) = { -1 + T^-1 + T }\nF(7,4) = { -1 + T^-1 + T }\nF(9,7) = { 1 + T^-2 - T^-1 - T + T^2 }\n"
    );
    assert_eq!(hflens(&["table", "--pmax", "4"]).stdout, "(empty)\n");
    assert_eq!(first_line(&["elkies", &e8]), "max=0 gap=8 diagonalizable=false");
    assert_eq!(first_line(&["thom", "4"]), "genus >= 3");
    let ob = hflens(&["obstruct", "22", "3"]);
    assert!(ob.stdout.contains("integrality failures") && ob.stdout.contains("positivity failures"));
}

fn round_trip<T: DeserializeOwned>(args: &[&str], render: impl Fn(&T) -> String) {
    let text = hflens(args);
    let mut with_json = args.to_vec();
    with_json.push("--json");
    let json = hflens(&with_json);
    assert_eq!(text.code, json.code, "{args:?}");
    let parsed: T = serde_json::from_str(&json.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", json.stdout));
    assert_eq!(render(&parsed), text.stdout, "{args:?}");
}

#[test]
fn json_and_text_carry_the_same_data() {
    let e8 = data("e8.gram");
    let d4 = data("d4.gram");
    round_trip::<DLensReport>(&["dlens", "7", "3"], DLensReport::render);
    round_trip::<DLensReport>(&["dlens", "22", "3", "1"], DLensReport::render);
    round_trip::<DLensReport>(&["dlens", "4", "1", "--orientation", "plus"], DLensReport::render);
    round_trip::<FamilyReport>(&["family", "21", "16", "--show-correspondences"], FamilyReport::render);
    round_trip::<FamilyReport>(&["family", "22", "3"], FamilyReport::render);
    round_trip::<FamilyReport>(&["family", "9", "7", "--sign", "-"], FamilyReport::render);
    round_trip::<TableReport>(&["table", "--pmax", "26"], TableReport::render);
    round_trip::<TableReport>(&["table", "--pmax", "3"], TableReport::render);
    round_trip::<ObstructReport>(&["obstruct", "22", "3"], ObstructReport::render);
    round_trip::<ObstructReport>(&["obstruct", "18", "5"], ObstructReport::render);
    round_trip::<KnotReport>(&["knot", "torus", "3", "7"], KnotReport::render);
    round_trip::<SurgeryReport>(&["surgery", "--poly", "-1,1", "--coef", "-1/4"], SurgeryReport::render);
    round_trip::<LatticeReport>(&["elkies", &d4], LatticeReport::render);
    round_trip::<LatticeReport>(&["lattice", &e8, "--bound", "-8"], LatticeReport::render);
    round_trip::<ThomReport>(&["thom", "5"], ThomReport::render);
    round_trip::<ThomReport>(&["thom", "2"], ThomReport::render);
    round_trip::<NotKnotReport>(&["notknot", "-3/2", "-1/2"], NotKnotReport::render);
}

#[test]
fn json_field_names_are_stable() {
    let v: serde_json::Value = serde_json::from_str(&hflens(&["obstruct", "22", "3", "--json"]).stdout).unwrap();
    for key in ["p", "q", "obstructed", "fintushel_stern", "reasons"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let v: serde_json::Value = serde_json::from_str(&hflens(&["family", "5", "4", "--json"]).stdout).unwrap();
    assert_eq!(v["family"], serde_json::json!([[-1, 1]]));
    let v: serde_json::Value =
        serde_json::from_str(&hflens(&["lattice", &data("e8.gram"), "--bound", "8", "--json"]).stdout).unwrap();
    for key in ["max_char_square", "gap", "witness", "verdict"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn table_is_independent_of_thread_count() {
    let reference = table_report(26, Some(1)).unwrap();
    for threads in [2, 3, 8] {
        assert_eq!(table_report(26, Some(threads)).unwrap(), reference, "{threads} threads");
    }
    assert_eq!(table_report(26, None).unwrap(), reference);
    assert_eq!(hflens(&["table"]).stdout, hflens(&["table"]).stdout);
}
