//! End-to-end checks of the command-line interface: verdicts, documents,
//! and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_framedq"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("framedq-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad stdout ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn stable_verdicts_and_exit_codes() {
    let out = bin().arg("stable").arg(fixtures().join("companion-example.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["stable"], true);

    let unstable = write_temp(
        "unstable.json",
        r#"{"field":{"type":"rational"},
            "quiver":{"vertices":1,"arrows":[{"name":"a","tail":1,"head":1}]},
            "alpha":[2],"zeta":[1],
            "arrows":{"a":[["0","0"],["0","1"]]},
            "framing":{"1":[["1","0"]]}}"#,
    );
    let out = bin().arg("stable").arg(&unstable).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["stable"], false);
}

#[test]
fn schema_errors_exit_2_with_json_stderr() {
    let bad = write_temp("bad.json", "{\"field\": 3}");
    let out = bin().arg("stable").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].is_string());

    let out = bin().arg("stable").arg("no-such-file.json").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn skeleton_and_skeleta() {
    let file = fixtures().join("companion-example.json");
    let out = bin().arg("skeleton").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out)["paths"],
        serde_json::json!(["f1.1", "f1.1*a"])
    );

    let out = bin().arg("skeleta").arg(&file).output().unwrap();
    assert_eq!(stdout_json(&out)["count"], 1);
}

#[test]
fn charts_reports_atlas_data() {
    let out = bin().arg("charts").arg(fixtures().join("two-loops-shape.json")).output().unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["skeleta"].as_array().unwrap().len(), 2);
    assert_eq!(v["universe_extended"].as_array().unwrap().len(), 7);
    assert_eq!(v["dimension"], 6);
}

#[test]
fn normal_form_is_the_companion_matrix() {
    let out = bin()
        .arg("normal-form")
        .arg(fixtures().join("companion-example.json"))
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["arrows"]["a"], serde_json::json!([["0", "1"], ["2", "5"]]));
    assert_eq!(v["framing"]["1"], serde_json::json!([["1", "0"]]));
}

#[test]
fn iso_verdicts() {
    // act by g = [[1,3],[2,7]] on the companion example by hand:
    // a' = g a g^-1, f' = f g^-1, with g^-1 = [[7,-3],[-2,1]]
    let moved = write_temp(
        "moved.json",
        r#"{"field":{"type":"rational"},
            "quiver":{"vertices":1,"arrows":[{"name":"a","tail":1,"head":1}]},
            "alpha":[2],"zeta":[1],
            "arrows":{"a":[["42","-16"],["97","-37"]]},
            "framing":{"1":[["7","-3"]]}}"#,
    );
    let file = fixtures().join("companion-example.json");
    let out = bin().arg("iso").arg(&file).arg(&moved).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["isomorphic"], true);
    assert!(v["witness"]["1"].is_array());

    let other = write_temp(
        "other.json",
        r#"{"field":{"type":"rational"},
            "quiver":{"vertices":1,"arrows":[{"name":"a","tail":1,"head":1}]},
            "alpha":[2],"zeta":[1],
            "arrows":{"a":[["0","1"],["2","6"]]},
            "framing":{"1":[["1","0"]]}}"#,
    );
    let out = bin().arg("iso").arg(&file).arg(&other).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["isomorphic"], false);
}

#[test]
fn project_section_round_trip_and_transition() {
    let file = fixtures().join("companion-example.json");
    let out = bin()
        .arg("project")
        .arg(&file)
        .arg("--skeleton")
        .arg("f1.1,f1.1*a")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let point = stdout_json(&out);
    assert_eq!(point["coords"]["1"]["f1.1*a*a"], serde_json::json!(["2", "5"]));

    let coords = write_temp("point.json", &point.to_string());
    let out = bin()
        .arg("section")
        .arg(&file)
        .arg("--skeleton")
        .arg("f1.1,f1.1*a")
        .arg("--coords")
        .arg(&coords)
        .output()
        .unwrap();
    let rep = stdout_json(&out);
    assert_eq!(rep["arrows"]["a"], serde_json::json!([["0", "1"], ["2", "5"]]));

    // transition of [[1,1],[0,1]] from the framing chart to the orbit chart
    let shape = fixtures().join("one-loop-two-framings-shape.json");
    let point = write_temp(
        "z2point.json",
        r#"{"skeleton":["f1.1","f1.2"],
            "coords":{"1":{"f1.1*a":["1","1"],"f1.2*a":["0","1"]}}}"#,
    );
    let out = bin()
        .arg("transition")
        .arg(&shape)
        .arg("--from")
        .arg("f1.1,f1.2")
        .arg("--to")
        .arg("f1.1,f1.1*a")
        .arg("--coords")
        .arg(&point)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["coords"]["1"]["f1.2"], serde_json::json!(["-1", "1"]));
    assert_eq!(v["coords"]["1"]["f1.1*a*a"], serde_json::json!(["-1", "2"]));
}

#[test]
fn pluecker_and_coords() {
    let out = bin().arg("pluecker").arg(fixtures().join("companion-example.json")).output().unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["p[f1.1,f1.1*a]"], "2");
    assert_eq!(v.as_object().unwrap().len(), 3);

    let out = bin()
        .arg("coords")
        .arg(fixtures().join("one-loop-two-framings-shape.json"))
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["total"], 15);
    assert_eq!(v["essential"].as_array().unwrap().len(), 9);
    assert_eq!(v["exceed"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_relations_on_a_random_sample() {
    // draw a stable sample for the two-framings shape, then verify the
    // shipped relation files on it
    let shape = fixtures().join("one-loop-two-framings-shape.json");
    let out = bin().arg("random").arg(&shape).arg("--seed").arg("5").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let sample = write_temp("sample.json", &String::from_utf8_lossy(&out.stdout));

    for rel in ["relations-one-loop-two-framings.json", "relations-one-loop-two-framings-exceed.json"] {
        let out = bin()
            .arg("verify")
            .arg(&sample)
            .arg("--relations")
            .arg(fixtures().join(rel))
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{rel}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(stdout_json(&out)["all_zero"], true);
    }

    // a relation that does not vanish on the image: p[f1.1,f1.2] = 0
    let bad = write_temp(
        "nonvanishing.json",
        r#"[{"terms":[{"coef":"1","monomial":{"p[f1.1,f1.2]":1}}]}]"#,
    );
    let out = bin().arg("verify").arg(&sample).arg("--relations").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["all_zero"], false);
}

#[test]
fn random_is_deterministic_and_gives_up_without_framing() {
    let shape = fixtures().join("two-loops-shape.json");
    let a = bin().arg("random").arg(&shape).arg("--seed").arg("3").output().unwrap();
    let b = bin().arg("random").arg(&shape).arg("--seed").arg("3").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let c = bin().arg("random").arg(&shape).arg("--seed").arg("4").output().unwrap();
    assert_ne!(a.stdout, c.stdout);

    let hopeless = write_temp(
        "no-framing.json",
        r#"{"field":{"type":"rational"},
            "quiver":{"vertices":1,"arrows":[{"name":"a","tail":1,"head":1}]},
            "alpha":[2],"zeta":[0]}"#,
    );
    let out = bin().arg("random").arg(&hopeless).arg("--seed").arg("1").output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // prime-field override
    let out = bin()
        .arg("random")
        .arg(&shape)
        .arg("--seed")
        .arg("3")
        .arg("--field")
        .arg("prime:5")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["field"], serde_json::json!({"type":"prime","p":5}));
}

#[test]
fn oracle_subcommands() {
    let gf2 = write_temp(
        "gf2.json",
        r#"{"field":{"type":"prime","p":2},
            "quiver":{"vertices":1,"arrows":[{"name":"a","tail":1,"head":1}]},
            "alpha":[2],"zeta":[1],
            "arrows":{"a":[["0","1"],["0","0"]]},
            "framing":{"1":[["1","0"]]}}"#,
    );
    let out = bin().arg("oracle").arg("stable").arg(&gf2).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["stable"], true);

    let out = bin().arg("oracle").arg("iso").arg(&gf2).arg(&gf2).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["isomorphic"], true);

    // rational input is refused
    let out = bin()
        .arg("oracle")
        .arg("stable")
        .arg(fixtures().join("companion-example.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
