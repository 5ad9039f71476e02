use std::path::PathBuf;
use std::process::{Command, Output};

use serde::Deserialize;
use serde_json::Value;

fn twonormal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twonormal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn sample(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../triangulations")
        .join(format!("{name}.tri"))
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn validate_double2() {
    let o = twonormal(&["validate", "double2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("V=4 E=6 F=4 T=2\nclosed: yes\n"), "{text}");

    let o = twonormal(&["validate", "double2", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        (
            v["V"].as_u64(),
            v["E"].as_u64(),
            v["F"].as_u64(),
            v["T"].as_u64()
        ),
        (Some(4), Some(6), Some(4), Some(2))
    );
    assert_eq!(v["edge_degrees"], serde_json::json!([2, 2, 2, 2, 2, 2]));
}

#[test]
fn validate_exit_codes() {
    let bad = scratch("malformed.tri", "tet 0: 0:0123 oops\n");
    let o = twonormal(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    assert_eq!(twonormal(&["validate", "single"]).status.code(), Some(0));
    assert_eq!(
        twonormal(&["validate", "single", "--require-closed"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        twonormal(&["validate", "no-such-input"]).status.code(),
        Some(2)
    );
}

#[test]
fn enumerate_guards() {
    assert_eq!(
        twonormal(&["enumerate", &sample("four_tet"), "--max-tets", "3"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(twonormal(&["enumerate", "single"]).status.code(), Some(1));
    assert_eq!(
        twonormal(&["enumerate", "double2", "--mode", "bogus"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn normal_census_of_double2() {
    let o = twonormal(&[
        "enumerate",
        "double2",
        "--mode",
        "normal",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["layout"].as_array().unwrap().len(), 32);
    let surfaces = v["surfaces"].as_array().unwrap();
    assert_eq!(surfaces.len(), 7);
    for s in surfaces {
        assert_eq!(s["class"], "Normal");
        assert_eq!(s["chi"], 2);
        assert_eq!(s["components"].as_array().unwrap().len(), 1);
        assert_eq!(s["components"][0]["sphere"], true);
    }
}

#[test]
fn modes_emit_their_classes() {
    let two = ["TwoOctagons", "TwoTubes", "OctagonAndTube", "Dodecagon"];
    let almost = ["AlmostNormalOct", "AlmostNormalTube"];
    for name in ["one_tet", "three_tet"] {
        let path = sample(name);
        for (mode, allowed) in [("2normal", &two[..]), ("almost", &almost[..])] {
            let o = twonormal(&["enumerate", &path, "--mode", mode]);
            assert!(o.status.success());
            let v: Value = serde_json::from_slice(&o.stdout).unwrap();
            for s in v["surfaces"].as_array().unwrap() {
                let class = s["class"].as_str().unwrap();
                assert!(allowed.contains(&class), "{name} {mode}: {class}");
            }
        }
    }
}

#[derive(Debug, Deserialize)]
struct Row {
    index: usize,
    class: String,
    chi: i64,
    vector: String,
    tubes: String,
    components: String,
    edge_weights: String,
}

fn joined(v: &Value, sep: &str) -> String {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn bit(v: &Value) -> u8 {
    u8::from(v.as_bool().unwrap())
}

#[test]
fn csv_and_json_records_agree() {
    let path = sample("two_tet");
    let json = twonormal(&["enumerate", &path, "--mode", "2normal", "--format", "json"]);
    let csv = twonormal(&["enumerate", &path, "--mode", "2normal", "--format", "csv"]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    let surfaces = v["surfaces"].as_array().unwrap();
    let rows: Vec<Row> = csv::Reader::from_reader(&csv.stdout[..])
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(rows.len(), surfaces.len());
    assert!(!rows.is_empty());
    for (i, (row, s)) in rows.iter().zip(surfaces).enumerate() {
        assert_eq!(row.index, i);
        assert_eq!(row.class, s["class"].as_str().unwrap());
        assert_eq!(row.chi, s["chi"].as_i64().unwrap());
        assert_eq!(row.vector, joined(&s["vector"], " "));
        assert_eq!(row.edge_weights, joined(&s["edge_weights"], " "));
        let tubes: Vec<String> = s["tubes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| {
                format!(
                    "{}:{}-{}:{}-{}:{}:{}",
                    t["tet"],
                    t["edge"][0],
                    t["edge"][1],
                    t["slots"][0],
                    t["slots"][1],
                    bit(&t["self"]),
                    bit(&t["inside_out"])
                )
            })
            .collect();
        assert_eq!(row.tubes, tubes.join(";"));
        let comps: Vec<String> = s["components"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| {
                format!(
                    "{}:{}:{}",
                    c["chi"],
                    bit(&c["orientable"]),
                    bit(&c["sphere"])
                )
            })
            .collect();
        assert_eq!(row.components, comps.join(";"));
    }
}

#[test]
fn output_file_matches_stdout() {
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("census.json");
    let o = twonormal(&[
        "enumerate",
        "double2",
        "--mode",
        "2normal",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let direct = twonormal(&["enumerate", "double2", "--mode", "2normal"]);
    assert_eq!(std::fs::read(&out).unwrap(), direct.stdout);
}

#[test]
fn classify_accepts_and_rejects() {
    let tri = sample("one_tet");
    let o = twonormal(&["enumerate", &tri, "--mode", "almost"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let tubed = v["surfaces"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["class"] == "AlmostNormalTube")
        .unwrap();
    let vector = joined(&tubed["vector"], ",");
    let t = &tubed["tubes"][0];
    let tube = format!(
        "{}:{}-{}:{}-{}",
        t["tet"], t["edge"][0], t["edge"][1], t["slots"][0], t["slots"][1]
    );

    let o = twonormal(&[
        "classify", &tri, "--vector", &vector, "--tube", &tube, "--mode", "almost", "--format",
        "json",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["class"], "AlmostNormalTube");
    assert_eq!(r["chi"], tubed["chi"]);

    // the same surface is not 2-normal
    let o = twonormal(&[
        "classify", &tri, "--vector", &vector, "--tube", &tube, "--mode", "2normal", "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["violation"]["code"], "wrong_mode");

    let o = twonormal(&["classify", &tri, "--vector", "1,2,x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes_and_detects_faults() {
    let o = twonormal(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("⊆ {3} ∪ 4ℤ⁺"), "{text}");
    assert!(text.contains("dodecagon families: 6"), "{text}");

    let o = twonormal(&["selftest", "--inject-fault", "--max-curve-length", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("curve_lengths"));

    assert_eq!(
        twonormal(&["selftest", "--max-curve-length", "64"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn ghs_compare() {
    let word = |a: &str, b: &str| {
        let o = twonormal(&["ghs-compare", a, b]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        stdout(&o).split_whitespace().next().unwrap().to_string()
    };
    assert_eq!(word("0", "2"), "greater");
    assert_eq!(word("-2", "0/0"), "greater");
    assert_eq!(word("0,-2/2", "0,-2/2"), "equal");
    assert_eq!(word("2", "0"), "less");
    assert_eq!(twonormal(&["ghs-compare", "4", "0"]).status.code(), Some(2));
}
