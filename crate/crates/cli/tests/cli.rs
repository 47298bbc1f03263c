use std::path::PathBuf;
use std::process::Command;

use annkh::homology::BigradedHomology;
use annkh_cli::run;

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", &format!("{name}.json")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn annkh(args: &[&str]) -> annkh_cli::Outcome {
    run(std::iter::once("annkh").chain(args.iter().copied()))
}

#[test]
fn essential_unknot_table() {
    let out = annkh(&["homology", &corpus("essential_unknot"), "--ring", "int"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "i\tq\ta\trank\ttorsion\n0\t-1\t-1\t1\t-\n0\t1\t1\t1\t-\n");
}

#[test]
fn json_output_round_trips() {
    let tsv = annkh(&["homology", &corpus("trefoil"), "--ring", "gf2"]);
    let json = annkh(&["homology", &corpus("trefoil"), "--ring", "gf2", "--format", "json"]);
    assert_eq!((tsv.code, json.code), (0, 0));
    let h = BigradedHomology::from_json(&json.stdout).unwrap();
    assert_eq!(h.to_tsv(), tsv.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["homology", &corpus("r2_straddle_b"), "--ring", "qh"];
    let first = annkh(&args);
    for _ in 0..3 {
        assert_eq!(annkh(&args), first);
    }
}

#[test]
fn dump_writes_the_complex() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("clasp.txt");
    let out = annkh(&["homology", &corpus("clasp"), "--dump", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("deg "), "{text}");
}

#[test]
fn lee_rank_of_hopf_link() {
    let out = annkh(&["lee-rank", &corpus("hopf_null")]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "4\tPASS\n"));
}

#[test]
fn verify_passes_on_the_corpus() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus"].iter().collect();
    let mut names: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    names.sort();
    assert!(names.len() >= 20);
    for path in &names {
        let p = path.to_str().unwrap();
        for (ring, variant) in [("generic", "annular"), ("int", "annular"), ("qh", "annular"), ("alpha:0,1", "annular"), ("generic", "beta"), ("int", "planar")] {
            let out = annkh(&["verify", p, "--ring", ring, "--variant", variant]);
            assert_eq!(out.code, 0, "{p} {ring} {variant}:\n{}{}", out.stdout, out.stderr);
            assert!(out.stdout.lines().all(|l| l.split('\t').nth(1) == Some("PASS")));
        }
    }
    let out = annkh(&["verify", &names[0].to_string_lossy(), "--variant", "beta"]);
    assert!(out.stdout.contains("beta\tPASS"));
}

#[test]
fn reidemeister_pairs_agree() {
    for (a, b) in [("r1_essential_a", "r1_essential_b"), ("r2_straddle_a", "r2_straddle_b"), ("r3_a", "r3_b")] {
        let out = annkh(&["invariance", &corpus(a), &corpus(b)]);
        assert_eq!(out.code, 0, "{a} {b}: {}", out.stdout);
        assert_eq!(out.stdout.lines().last(), Some("PASS"));
    }
    let out = annkh(&["invariance", &corpus("essential_unknot"), &corpus("trivial_unknot"), "--ring", "int"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("DIFFERENT"));
}

#[test]
fn canonical_report() {
    let out = annkh(&["canonical", &corpus("hopf_essential")]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[5], "span\t4\t4\tPASS");
    assert!(lines[1..5].iter().all(|l| l.ends_with("\tyes\tPASS")));
}

#[test]
fn tl_verbs() {
    let out = annkh(&["tl-eval", "[(1,2)] dots=[2]", "--n", "1", "--m", "1", "--ring", "alpha:2,5"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("w0\tw0\t4\n"));
    assert!(out.stdout.contains("w1\tw1\t25\n"));
    let out = annkh(&["tl-rank", "--n", "1", "--m", "1"]);
    assert_eq!(out.stdout, "rank\t2\nkernel\t0\n");
    let out = annkh(&["tl-eval", "[(1,3),(2,4)]", "--n", "2", "--m", "2"]);
    assert_eq!(out.code, 2);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"crossings\": [[\"1\"]").unwrap();
    let out = annkh(&["homology", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 1"), "{}", out.stderr);

    let out = annkh(&["homology", &corpus("trefoil"), "--ring", "generic"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("unsupported ring"));
    assert_eq!(annkh(&["homology", &corpus("trefoil"), "--ring", "zz"]).code, 2);
    assert_eq!(annkh(&["homology", "/nonexistent.json"]).code, 2);
    assert_eq!(annkh(&["frobnicate"]).code, 2);
    // D needs distinct alphas.
    assert_eq!(annkh(&["verify", &corpus("clasp"), "--ring", "alpha:1,1", "--variant", "annular-d"]).code, 2);
}

#[test]
fn nudge_rescues_ray_tangency() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("diamond.json");
    let json = r#"{"name":"diamond","crossings":[],"edges":{"1":[["3","0"],["0","3"],["-3","0"],["0","-3"]]},"components":[["1"]],"orientations":[true]}"#;
    std::fs::write(&path, json).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(annkh(&["homology", p]).code, 2);
    let out = annkh(&["homology", p, "--nudge"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.lines().count(), 3);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_annkh");
    let ok = Command::new(bin).args(["lee-rank", &corpus("trefoil")]).output().unwrap();
    assert!(ok.status.success());
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "2\tPASS\n");
    let bad = Command::new(bin).args(["lee-rank", "/nonexistent.json"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
