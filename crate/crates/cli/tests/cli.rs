use std::process::Command;

use nervekit_cli::manifest::{fixture, load, Manifest};
use nervekit_cli::run;
use serde_json::Value;

fn binary(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_nervekit"))
        .args(args)
        .output()
        .unwrap();
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code().unwrap(), report)
}

fn without_timing(mut v: Value) -> String {
    v.as_object_mut().unwrap().remove("timing");
    serde_json::to_string(&v).unwrap()
}

#[test]
fn exit_codes() {
    let (code, r) = binary(&[
        "verify",
        "nerve-theorem",
        "--cover",
        "fig1",
        "--n",
        "1",
        "--coeffs",
        "q",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "pass");

    let (code, r) = binary(&[
        "verify",
        "nerve-theorem",
        "--cover",
        "fig1",
        "--n",
        "2",
        "--coeffs",
        "q",
    ]);
    assert_eq!(code, 1);
    let failed: Vec<&str> = r["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["status"] == "fail")
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["hypothesis/{D+,D-}@e1"]);

    let (code, r) = binary(&["verify", "nerve-theorem", "--cover", "missing.json"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
    let (code, _) = binary(&["verify", "nerve-theorem", "--cover", "fig1", "--coeffs", "fp:4"]);
    assert_eq!(code, 2);
    let (code, _) = binary(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn fig1_ambient_homology() {
    let (code, r) = binary(&[
        "homology",
        "--complex",
        "fig1-ambient",
        "--coeffs",
        "z",
        "--maxdim",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["betti"], serde_json::json!([1, 0, 2, 0]));
    assert_eq!(r["result"]["torsion"], serde_json::json!([[], [], [], []]));
}

#[test]
fn rp2_torsion() {
    let r = run(&["homology", "--complex", "rp2", "--coeffs", "z", "--maxdim", "2"]);
    let v: Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["result"]["torsion"], serde_json::json!([[], [2], []]));
}

#[test]
fn reports_are_stable() {
    let commands: &[&[&str]] = &[
        &["verify", "nerve-theorem", "--cover", "fig1", "--n", "2"],
        &["verify", "eta", "--cover", "square-circle", "--n", "0"],
        &[
            "verify",
            "fiber",
            "--map",
            "quillen-counterexample",
            "--mode",
            "quillen",
            "--n",
            "0",
        ],
        &["verify", "cutset", "--poset", "b3-minus-bounds", "--set", "a,b,c"],
        &["cech-delta", "--cover", "fig1", "--maxdim", "2"],
    ];
    for args in commands {
        let a = without_timing(serde_json::from_str(&run(args).to_json()).unwrap());
        let b = without_timing(serde_json::from_str(&run(args).to_json()).unwrap());
        let mut seq = args.to_vec();
        seq.push("--sequential");
        let c = without_timing(serde_json::from_str(&run(&seq).to_json()).unwrap());
        assert_eq!(a, b, "{args:?}");
        // The echo differs by the flag; everything else must not.
        assert_eq!(
            a.split("\"status\"").nth(1),
            c.split("\"status\"").nth(1),
            "{args:?}"
        );
    }
}

#[test]
fn entries_are_sorted_and_conclusions_listed() {
    let r = run(&["verify", "nerve-theorem", "--cover", "fig1", "--n", "2"]);
    let names: Vec<&str> = r.entries.iter().map(|c| c.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for n in [
        "conclusion/h0-iso",
        "conclusion/h2-iso",
        "conclusion/h3-surjectability",
        "conclusion/cech-agreement",
    ] {
        assert!(names.contains(&n), "{n}");
    }
    assert!(r.failures().all(|c| c.witness.is_some()));
}

#[test]
fn out_writes_loadable_manifests() {
    let dir = std::env::temp_dir().join(format!("nervekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (args, kind) in [
        (vec!["nerve", "--cover", "fig1"], "complex"),
        (vec!["completed-nerve", "--cover", "square-circle"], "poset"),
        (vec!["completion", "--cover", "fig1"], "cover"),
        (vec!["eta", "--cover", "square-circle"], "posetmap"),
        (vec!["gen", "fixture", "fig1"], "cover"),
        (
            vec!["gen", "covex", "--poset", "quillen-counterexample-base"],
            "cover",
        ),
    ] {
        let path = dir.join(format!("{}.json", args[0]));
        let mut full = args.clone();
        full.extend(["--out", path.to_str().unwrap()]);
        let r = run(&full);
        assert_eq!(r.exit_code(), 0, "{args:?}: {:?}", r.error);
        let m = load(&path).unwrap();
        assert_eq!(m.kind(), kind);
        // Written manifests feed back into the commands.
        if kind == "cover" {
            let r = run(&[
                "verify",
                "completion",
                "--cover",
                path.to_str().unwrap(),
                "--n",
                "0",
            ]);
            assert_ne!(r.exit_code(), 2, "{:?}", r.error);
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fig1_manifest_round_trip() {
    let m = fixture("fig1").unwrap();
    let again = Manifest::from_json(&m.to_json(), "fig1").unwrap();
    assert_eq!(m.to_json(), again.to_json());
}

#[test]
fn invalid_manifests_are_input_errors() {
    let dir = std::env::temp_dir().join(format!("nervekit-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cycle.json");
    std::fs::write(
        &path,
        r#"{"format":"nervekit-poset-v1","elements":["a","b"],"relations":[["a","b"],["b","a"]]}"#,
    )
    .unwrap();
    let r = run(&["essential-chains", "--poset", path.to_str().unwrap()]);
    assert_eq!(r.exit_code(), 2);
    assert!(r.error.as_deref().unwrap().contains("relation cycle"));
    std::fs::remove_dir_all(&dir).unwrap();
}
