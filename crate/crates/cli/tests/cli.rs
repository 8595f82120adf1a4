use std::path::Path;
use std::process::Command;

use sphere_forge_cli::{map_path_for, run, CommandResult, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use tempfile::TempDir;

fn sf(args: &[&str]) -> CommandResult {
    run(std::iter::once("sphere-forge").chain(args.iter().copied()))
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

/// Every construction in the sweep ranges, as build arguments.
fn sweep_args() -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    for n in 2..=5 {
        for d in 1..=8 {
            out.push(s(&["--construction", "join-cone", "--n", &n.to_string(), "--d", &d.to_string()]));
        }
    }
    for n in 3..=5 {
        for d in 1..=4 {
            for v in ["even", "odd"] {
                out.push(s(&["--construction", "double-cone", "--n", &n.to_string(), "--d", &d.to_string(), "--variant", v]));
            }
        }
    }
    for n in 2..=6 {
        for k in 2..=n {
            out.push(s(&["--construction", "facet-cone", "--n", &n.to_string(), "--k", &k.to_string()]));
        }
        out.push(s(&["--construction", "stacked", "--n", &n.to_string()]));
    }
    out
}

#[test]
fn build_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    for (i, args) in sweep_args().iter().enumerate() {
        let out = p(&dir, &format!("b{i}.json"));
        let mut full: Vec<&str> = vec!["build"];
        full.extend(args.iter().map(String::as_str));
        full.extend(["--format", "json", "--out", &out]);
        let r = sf(&full);
        assert_eq!(r.exit_code, EXIT_OK, "{args:?}: {}", r.report);
        let v = sf(&["verify", "bundle", "--in", &out]);
        assert_eq!(v.exit_code, EXIT_OK, "{args:?}: {}", v.report);
        assert!(v.report.contains("[ok] canonical json"));
    }
}

#[test]
fn build_summary_and_bad_parameters() {
    let dir = TempDir::new().unwrap();
    let r = sf(&["build", "--construction", "join-cone", "--n", "3", "--d", "4", "--out", &p(&dir, "k.json"), "--format", "json"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert!(r.report.contains("32 facets"));
    assert!(r.report.contains("degree 4, 14 vertices"));

    let r = sf(&["build", "--construction", "stacked", "--n", "2", "--out", &p(&dir, "s.txt")]);
    assert!(r.report.contains("12 facets"), "{}", r.report);

    for bad in [
        vec!["build", "--construction", "join-cone", "--n", "1", "--d", "2"],
        vec!["build", "--construction", "join-cone", "--n", "3"],
        vec!["build", "--construction", "double-cone", "--n", "2", "--d", "1", "--variant", "even"],
        vec!["build", "--construction", "facet-cone", "--n", "3", "--k", "5"],
        vec!["build", "--construction", "cube"],
        vec!["frobnicate"],
    ] {
        assert_eq!(sf(&bad).exit_code, EXIT_USAGE, "{bad:?}");
    }
    let r = sf(&["build", "--construction", "join-cone", "--n", "1", "--d", "2"]);
    assert!(r.report.contains("n >= 2"));
}

#[test]
fn delta_build_prints_disc() {
    let r = sf(&["build", "--construction", "delta", "--d", "3", "--format", "json"]);
    assert_eq!(r.exit_code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.report).unwrap();
    assert_eq!(v["facets"].as_array().unwrap().len(), 7);
    assert_eq!(v["orientation"]["u1_3 u2_2 u3_3"], -1);
}

#[test]
fn degree_from_text_complex_and_map() {
    let dir = TempDir::new().unwrap();
    let k = p(&dir, "s.txt");
    assert_eq!(sf(&["build", "--construction", "stacked", "--n", "2", "--out", &k]).exit_code, EXIT_OK);
    let map = map_path_for(Path::new(&k));
    let r = sf(&["degree", "--in", &k, "--map", map.to_str().unwrap()]);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.report);
    assert!(r.report.contains("degree = 3"));

    let fc = p(&dir, "fc.txt");
    sf(&["build", "--construction", "facet-cone", "--n", "2", "--k", "2", "--out", &fc]);
    let fc_map = map_path_for(Path::new(&fc));
    let r = sf(&["degree", "--in", &fc, "--map", fc_map.to_str().unwrap()]);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.report);
    assert!(r.report.contains("degree = 2"), "{}", r.report);
    let text = std::fs::read_to_string(&fc).unwrap();
    std::fs::write(&fc, text.replace("# expected degree 2", "# expected degree 3")).unwrap();
    assert_eq!(sf(&["degree", "--in", &fc, "--map", fc_map.to_str().unwrap()]).exit_code, EXIT_CHECK_FAILED);

    std::fs::write(&map, "u1 v1\nu2 v2 v3\n").unwrap();
    assert_eq!(sf(&["degree", "--in", &k, "--map", map.to_str().unwrap()]).exit_code, EXIT_USAGE);
    std::fs::write(&map, "u1 v1\n").unwrap();
    assert_eq!(sf(&["degree", "--in", &k, "--map", map.to_str().unwrap()]).exit_code, EXIT_USAGE);
    assert_eq!(sf(&["degree", "--in", &p(&dir, "missing.txt"), "--map", map.to_str().unwrap()]).exit_code, EXIT_USAGE);
}

#[test]
fn swap_bundle_degree() {
    let dir = TempDir::new().unwrap();
    let path = p(&dir, "swap.json");
    let b = sphere_forge::bundle::swap_map(4);
    std::fs::write(&path, sphere_forge_cli::canonical_bundle_json(&b)).unwrap();
    let r = sf(&["degree", "--bundle", &path]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert!(r.report.contains("degree = -1"));
    for method in ["counting", "cycle"] {
        assert_eq!(sf(&["degree", "--bundle", &path, "--method", method]).exit_code, EXIT_OK);
    }
}

#[test]
fn wrong_expected_degree_fails_check() {
    let dir = TempDir::new().unwrap();
    let path = p(&dir, "b.json");
    sf(&["build", "--construction", "facet-cone", "--n", "3", "--k", "2", "--format", "json", "--out", &path]);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace("\"expected_degree\": 2", "\"expected_degree\": 5")).unwrap();
    assert_eq!(sf(&["degree", "--bundle", &path]).exit_code, EXIT_CHECK_FAILED);
    assert_eq!(sf(&["verify", "bundle", "--in", &path]).exit_code, EXIT_CHECK_FAILED);
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(sf(&["degree", "--bundle", &path]).exit_code, EXIT_USAGE);
}

#[test]
fn verify_commands() {
    let dir = TempDir::new().unwrap();
    let k = p(&dir, "k.json");
    sf(&["build", "--construction", "join-cone", "--n", "3", "--d", "4", "--format", "json", "--out", &k]);
    let b = sphere_forge::io::bundle_from_json(&std::fs::read_to_string(&k).unwrap()).unwrap();
    let src = p(&dir, "src.json");
    std::fs::write(&src, sphere_forge::io::complex_to_json(&b.source, None)).unwrap();
    let r = sf(&["verify", "sphere", "--in", &src, "--n", "3", "--level", "certify"]);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.report);

    let rp2 = p(&dir, "rp2.txt");
    std::fs::write(&rp2, sphere_forge::io::complex_to_text(&sphere_forge::fixtures::rp2())).unwrap();
    assert_eq!(sf(&["verify", "sphere", "--in", &rp2]).exit_code, EXIT_CHECK_FAILED);

    let r = sf(&["verify", "lemma31", "--d", "12", "--format", "json"]);
    assert_eq!(r.exit_code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.report).unwrap();
    assert_eq!((v["details"]["positives"].as_u64(), v["details"]["negatives"].as_u64()), (Some(23), Some(11)));
    assert_eq!(sf(&["verify", "lemma31", "--d", "0"]).exit_code, EXIT_USAGE);

    let r = sf(&["verify", "minimality"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert!(r.report.contains("census: [1, 1, 2, 5]"));
    assert_eq!(sf(&["verify", "lemmas42", "--max-vertices", "6"]).exit_code, EXIT_OK);
    assert_eq!(sf(&["verify", "minimality", "--max-vertices", "9"]).exit_code, EXIT_USAGE);
}

#[test]
fn binary_exit_codes_and_thread_cap() {
    let bin = env!("CARGO_BIN_EXE_sphere-forge");
    let out = Command::new(bin).args(["verify", "lemma31", "--d", "5"]).env("SPHERE_FORGE_THREADS", "2").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    let out = Command::new(bin).args(["verify", "lemma31", "--d", "5"]).env("SPHERE_FORGE_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["build", "--construction", "stacked", "--n", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= 2"));
}
