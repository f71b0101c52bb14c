use sedf_cli::report::{Payload, RunReport};
use sedf_cli::{run_from_args, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
use sedf_core::{verify_sedf, BlockFamily};

fn run(args: &[&str]) -> sedf_cli::Outcome {
    let mut full = vec!["sedf"];
    full.extend_from_slice(args);
    run_from_args(full)
}

#[test]
fn verify_examples() {
    let out = run(&[
        "verify",
        "--family",
        "Z17: {0,1,4,5},{6,8,14,16}",
        "--kind",
        "sedf",
        "--lambda",
        "1",
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("true"));

    let out = run(&[
        "verify",
        "--family",
        "D10: {e,s,r},{sr,r^3,sr^4}",
        "--kind",
        "cosedf",
        "--lambda",
        "1",
    ]);
    assert_eq!(out.code, EXIT_OK);

    let out = run(&[
        "--format",
        "json",
        "verify",
        "--family",
        "Z5: {0,1},{2,3}",
        "--kind",
        "sedf",
        "--lambda",
        "1",
    ]);
    assert_eq!(out.code, EXIT_INVALID);
    let report: RunReport = serde_json::from_str(&out.stdout).unwrap();
    let Payload::Verification(v) = report.payload else {
        panic!()
    };
    assert!(!v.verdict);
    assert!(v
        .histogram
        .iter()
        .any(|row| row.counts.contains(&("2".to_string(), 2))));
}

#[test]
fn verify_other_kinds() {
    let out = run(&[
        "verify",
        "--group",
        "Z7",
        "--family",
        "{0,3},{4,5,6}",
        "--kind",
        "gsedf",
        "--lambdas",
        "1,1",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let out = run(&[
        "verify",
        "--family",
        "Z5: {0,1},{2,4}",
        "--kind",
        "edf",
        "--lambda",
        "2",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let out = run(&[
        "verify",
        "--family",
        "Z13: {1,3,4,9,10,12}",
        "--kind",
        "pds",
        "--lambda",
        "2",
        "--mu",
        "3",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let out = run(&["verify", "--family", "Z5: {0,1},{2,4}", "--kind", "sedf"]);
    assert_eq!(out.code, EXIT_INVALID);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["tables", "--which", "2"]).code, EXIT_USAGE);
    assert_eq!(run(&["search", "--group", "Z5"]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["--help"]).code, EXIT_OK);
    assert_eq!(run(&["--version"]).code, EXIT_OK);
}

#[test]
fn bad_inputs_exit_2() {
    assert_eq!(
        run(&["search", "--group", "Q8", "--m", "2", "--k", "2", "--lambda", "1"]).code,
        EXIT_INVALID
    );
    assert_eq!(
        run(&["search", "--group", "Z5", "--m", "2", "--k", "2", "--lambda", "2"]).code,
        EXIT_INVALID
    );
    assert_eq!(run(&["construct", "paley", "--q", "7"]).code, EXIT_INVALID);
    assert_eq!(
        run(&[
            "construct",
            "recursive",
            "--base",
            "Z5: {1,4},{2,3}",
            "--a",
            "2"
        ])
        .code,
        EXIT_INVALID
    );
}

#[test]
fn search_then_classify_round_trip() {
    let out = run(&[
        "--format", "json", "search", "--group", "Z17", "--m", "2", "--k", "4", "--lambda", "1",
    ]);
    assert_eq!(out.code, EXIT_OK);
    let report: RunReport = serde_json::from_str(&out.stdout).unwrap();
    let fams = report.families().unwrap();
    assert!(!fams.is_empty());
    assert!(fams.iter().all(|f| verify_sedf(f, 1).unwrap()));

    let dir = std::env::temp_dir().join(format!("sedf-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z17.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let out = run(&[
        "--format",
        "json",
        "classify",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let report: RunReport = serde_json::from_str(&out.stdout).unwrap();
    let Payload::Classes { classes } = &report.payload else {
        panic!()
    };
    assert_eq!(classes.len(), 2);
    assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), fams.len());

    let records: Vec<_> = [
        "Z9: {0,1,2,3},{4,5,6,7}",
        "Z3xZ3: {(0,0),(0,1)},{(1,0),(2,0)}",
        "Z3xZ3: {(0,0),(1,0)},{(0,1),(0,2)}",
    ]
    .iter()
    .map(|t| BlockFamily::parse_text(t).unwrap().to_record())
    .collect();
    let path = dir.join("mixed.json");
    std::fs::write(&path, serde_json::to_string(&records).unwrap()).unwrap();
    let out = run(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.starts_with("3 families, 2 classes"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn construct_commands() {
    let out = run(&["construct", "composite-pair", "--r", "2", "--a", "2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("equivalent: false"));
    let out = run(&[
        "construct",
        "gsedf-recursive",
        "--base",
        "Z7: {0,3},{4,5,6}",
        "--a",
        "6",
        "--b",
        "4",
    ]);
    assert_eq!(
        out.stdout.trim(),
        "Z145: {0,1,2,3,4,5,18,19,20,21,22,23},{24,30,36,60,66,72,96,102,108,132,138,144}"
    );
    let out = run(&[
        "construct",
        "recursive",
        "--base",
        "Z5: {1,4},{2,3}",
        "--a",
        "2",
        "--normalize",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    for args in [
        &["construct", "pa-st", "--k", "3"][..],
        &["construct", "paley", "--q", "9"],
        &["construct", "cyclotomic", "--q", "17"],
        &["construct", "even-k", "--a", "2"],
        &["construct", "dihedral", "--k", "5"],
        &["construct", "trivial", "--group", "D10"],
    ] {
        let out = run(&[&["--format", "json"][..], args].concat());
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
        let report: RunReport = serde_json::from_str(&out.stdout).unwrap();
        assert!(!report.families().unwrap().is_empty());
    }
}

#[test]
fn params_and_groups() {
    let out = run(&["params", "enumerate", "--max-order", "24"]);
    assert!(out.stdout.contains("18 parameter sets"));
    let out = run(&[
        "params",
        "enumerate",
        "--max-order",
        "21",
        "--filters",
        "abelian",
    ]);
    assert_eq!(out.code, EXIT_OK);
    let out = run(&["groups", "list", "--max-order", "10"]);
    assert!(out.stdout.contains("D10"));
    assert!(out.stdout.contains("Z2xZ4"));
}
