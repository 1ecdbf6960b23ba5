use std::path::PathBuf;

use lpalg::cli::run;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn lpalg(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("lpalg").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn mutate_prints_the_new_seed() {
    let (code, out, _) = lpalg(&["mutate", &data("worked.seed"), "c"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("{(a, b+1), (b, a^2+d^2), (d, a^3+a^2+b^2+b)}"));
    assert!(out.contains("d = (a^3+a^2+b^2+b)/(a*c)"), "{out}");
}

#[test]
fn mutate_accepts_slot_numbers() {
    let by_name = lpalg(&["mutate", &data("worked.seed"), "c"]);
    let by_slot = lpalg(&["mutate", &data("worked.seed"), "3"]);
    assert_eq!(by_name, by_slot);
}

#[test]
fn explore_reports_the_non_flag_example() {
    let (code, out, _) = lpalg(&["explore", &data("flag.seed")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("9 seeds, 6 variables, complete"));
}

#[test]
fn explore_output_does_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut runs = Vec::new();
    for threads in ["1", "8"] {
        let dot = dir.path().join(format!("g{threads}.dot"));
        let json = dir.path().join(format!("g{threads}.json"));
        let (code, out, _) = lpalg(&[
            "--threads",
            threads,
            "explore",
            &data("abc.seed"),
            "--list",
            "--dot",
            dot.to_str().unwrap(),
            "--json",
            json.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        runs.push((out, std::fs::read(dot).unwrap(), std::fs::read(json).unwrap()));
    }
    assert_eq!(runs[0], runs[1]);
    assert!(runs[0].0.starts_with("10 seeds, 7 variables, complete"));
}

#[test]
fn validate_reports_self_dependence() {
    let (code, out, _) = lpalg(&["validate", &data("self-dependent.seed")]);
    assert_eq!(code, 1);
    assert!(out.contains("LP2 at index 2 (y)"), "{out}");
    let (code, out, _) = lpalg(&["validate", &data("worked.seed")]);
    assert_eq!((code, out.as_str()), (0, "ok\n"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.seed");
    std::fs::write(&bad, "ring { cluster x y ; }\nseed { x : y + ; y : x + 1 ; }\n").unwrap();
    let (code, _, err) = lpalg(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let (code, _, _) = lpalg(&["hat", dir.path().join("missing.seed").to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _, _) = lpalg(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn exhausted_budget_exits_with_three() {
    let (code, _, err) = lpalg(&["--max-terms", "3", "mutate", &data("worked.seed"), "c", "b", "a"]);
    assert_eq!(code, 3, "{err}");
    let (code, out, _) = lpalg(&["--max-terms", "4", "explore", &data("worked.seed"), "--max-seeds", "50"]);
    assert_eq!(code, 3);
    assert!(out.contains("truncated"), "{out}");
}

#[test]
fn laurent_prints_denominator_vectors() {
    let (code, out, _) = lpalg(&["laurent", &data("pentagon.seed"), "--path", "x,y"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.contains("  laurent  d = (")), "{out}");
}

#[test]
fn classify2_names_the_shape() {
    let (code, out, _) = lpalg(&["classify2", &data("pentagon.seed")]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(b, c) = (1, 1): pentagon, 5 seeds, found 5 (closed)");
    let (code, out, _) = lpalg(&["classify2", &data("hexagon.seed")]);
    assert_eq!(code, 0);
    assert!(out.contains("hexagon, 6 seeds, found 6 (closed)"), "{out}");
}

#[test]
fn import_matrix_cross_checks() {
    let (code, out, _) = lpalg(&["import-matrix", &data("principal-a2.matrix"), "--cross-check", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ring { coeff_inv x3 x4 ; cluster x1 x2 ; }"), "{out}");
    assert!(out.contains("# cross-check: 6 paths agree"), "{out}");
}

#[test]
fn examples_round_trip_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    let families: [&[&str]; 4] = [
        &["example", "gale-robinson"],
        &["example", "brick-wall"],
        &["example", "linear", &data("linear.graph")],
        &["example", "wiring", &data("wiring.regions")],
    ];
    for (k, args) in families.iter().enumerate() {
        let (code, out, err) = lpalg(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        let path = dir.path().join(format!("{k}.seed"));
        std::fs::write(&path, out).unwrap();
        let (code, out, _) = lpalg(&["validate", path.to_str().unwrap()]);
        assert_eq!((code, out.as_str()), (0, "ok\n"), "{args:?}");
    }
}

#[test]
fn gale_robinson_terms_are_laurent() {
    let (code, out, _) = lpalg(&["example", "gale-robinson", "--terms", "12"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l.ends_with(", laurent")), "{out}");
    assert!(lines[0].starts_with("y7: 3 terms over y1"), "{out}");
}
