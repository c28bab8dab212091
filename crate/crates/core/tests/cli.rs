use std::path::{Path, PathBuf};

use dmres::cli::{execute, parse, print};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn corpus() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("data"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "dm"))
        .collect();
    v.sort();
    v
}

/// `(golden file, arguments after the program name)`.
fn golden_cases() -> Vec<(&'static str, Vec<String>)> {
    let c = |name: &'static str, args: &[&str]| -> (&'static str, Vec<String>) {
        let args = args
            .iter()
            .map(|a| if a.ends_with(".dm") { data(a) } else { a.to_string() })
            .collect();
        (name, args)
    };
    vec![
        c("validate_rank_two", &["validate", "rank_two.dm"]),
        c("validate_not_square_zero", &["validate", "not_square_zero.dm"]),
        c("homology_rank_two", &["homology", "rank_two.dm", "--range", "-2..6"]),
        c("resolve_deform_rank_two", &["resolve", "rank_two.dm", "--method", "deform"]),
        c("resolve_cone_koszul", &["resolve", "koszul.dm", "--method", "cone"]),
        c("minimize_nonminimal_rank_four", &["minimize", "nonminimal_rank_four.dm", "--object", "F", "--mode", "finite"]),
        c("betti_residue_field_a0", &["betti", "residue_field_a0.dm", "--range", "0..20"]),
        c("betti_residue_field_a1", &["betti", "residue_field_a1.dm", "--range", "-3..3"]),
        c("betti_residue_field_a2", &["betti", "residue_field_a2.dm", "--range", "-20..0", "--method", "tor"]),
        c("semicontinuity_koszul", &["semicontinuity", "koszul.dm", "--range", "0..6"]),
        c("degenerate_sym_rank_two", &["degenerate", "rank_two.dm", "--t", "sym"]),
        c("degenerate_zero_rank_two", &["degenerate", "rank_two.dm", "--t", "0", "--range", "0..6"]),
        c("check_hilbert_burch", &["check", "hilbert-burch", "hilbert_burch.dm"]),
        c("check_pfaffian", &["check", "pfaffian", "pfaffian.dm"]),
        c("oracle_homology_acyclic", &["oracle-homology", "acyclic_not_contractible.dm", "--range", "-10..10"]),
        c("minimize_own_resolution", &["minimize", "own_resolution.dm"]),
    ]
}

fn run(args: &[String], json: bool) -> dmres::cli::Execution {
    let mut full = vec!["dmres".to_string()];
    if json {
        full.extend(["--format".into(), "json".into()]);
    }
    full.extend(args.iter().cloned());
    execute(full)
}

#[test]
fn golden_reports() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in golden_cases() {
        let ex = run(&args, false);
        assert!(ex.stderr.is_empty(), "{name}: {}", ex.stderr);
        let got = format!("exit {}\n{}", ex.code, ex.stdout);
        let path = dir.join(format!("{name}.txt"));
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(got, want, "{name} differs from its golden file");
    }
}

/// Every number in the text report appears in the JSON at the same place.
#[test]
fn json_mirrors_text() {
    for (name, args) in golden_cases() {
        let text = run(&args, false);
        let json = run(&args, true);
        assert_eq!(text.code, json.code, "{name}");
        let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
        let mut lines = text.stdout.lines();
        assert_eq!(lines.next().unwrap(), format!("command: {}", v["command"].as_str().unwrap()));
        for c in v["checks"].as_array().unwrap() {
            let tag = if c["passed"].as_bool().unwrap() { "PASS" } else { "FAIL" };
            let line = lines.next().unwrap();
            assert!(line.starts_with(&format!("[{tag}] {}", c["name"].as_str().unwrap())), "{name}: {line}");
        }
        for t in v["tables"].as_array().unwrap() {
            lines.next().unwrap();
            for row in t["rows"].as_array().unwrap() {
                let val = if row[1].is_null() { "none".to_string() } else { row[1].to_string() };
                assert_eq!(lines.next().unwrap(), format!("  {}: {val}", row[0]), "{name}");
            }
        }
        for c in v["certificates"].as_array().unwrap() {
            let line = lines.next().unwrap();
            assert_eq!(line, format!("certificate {} = {}", c["name"].as_str().unwrap(), c["value"].as_str().unwrap()));
        }
        for n in v["notices"].as_array().unwrap() {
            assert_eq!(lines.next().unwrap(), format!("notice: {}", n.as_str().unwrap()));
        }
        assert_eq!(lines.next(), None, "{name}");
    }
}

#[test]
fn round_trip_on_the_corpus() {
    for path in corpus() {
        let src = std::fs::read_to_string(&path).unwrap();
        let a = parse(&src).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let printed = print(&a);
        let b = parse(&printed).unwrap();
        assert_eq!(a, b, "{}", path.display());
        assert_eq!(print(&b), printed, "{}", path.display());
    }
}

#[test]
fn exit_code_matrix() {
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["validate".into(), data("nonminimal_rank_four.dm")], 0),
        (vec!["validate".into(), data("not_square_zero.dm")], 1),
        (vec!["betti".into(), data("residue_field_a1.dm"), "--range".into(), "-2..2".into()], 1),
        (vec!["check".into(), "pfaffian".into(), data("rank_two.dm")], 1),
        (vec!["validate".into(), data("missing.dm")], 2),
        (vec!["betti".into(), data("rank_two.dm")], 2),
        (vec!["resolve".into(), data("rank_two.dm"), "--method".into(), "magic".into()], 2),
        (vec!["minimize".into(), data("rank_two.dm"), "--mode".into(), "degreewise".into()], 2),
        (vec!["homology".into(), data("rank_two.dm"), "--object".into(), "nope".into()], 2),
        (vec!["degenerate".into(), data("rank_two.dm"), "--t".into(), "half".into()], 2),
    ];
    for (args, code) in cases {
        let ex = run(&args, false);
        assert_eq!(ex.code, code, "{args:?}: {}{}", ex.stdout, ex.stderr);
    }
    let dir = std::env::temp_dir().join(format!("dmres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.dm");
    std::fs::write(&bad, "ring Q[x]\ndm D\n degree 0\n gens [0]\n matrix [[x + 1]]\nend\n").unwrap();
    let ex = run(&["validate".into(), bad.to_string_lossy().into_owned()], false);
    assert_eq!(ex.code, 2);
    assert!(ex.stderr.contains("5:11"), "{}", ex.stderr);
}

#[test]
fn out_writes_a_parseable_artifact() {
    let dir = std::env::temp_dir().join(format!("dmres-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("res.dm");
    let ex = execute([
        "dmres",
        "--out",
        out.to_str().unwrap(),
        "resolve",
        &data("rank_two.dm"),
        "--method",
        "cone",
    ]);
    assert_eq!(ex.code, 0, "{}", ex.stderr);
    let a = parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let res = a.flag_resolution("D_cone").unwrap();
    assert!(res.verify(&a.ring, -5, 12).unwrap().passed());
    let ex = execute(["dmres", "validate", out.to_str().unwrap()]);
    assert_eq!(ex.code, 0, "{}", ex.stdout);
}
