//! End-to-end runs of the `leelp` binary and of `cli::run`.

use std::path::{Path, PathBuf};
use std::process::Command;

use leelp::cli::run;
use leelp::dump::LeeNumberDump;
use leelp::report::BoundReport;
use leelp::search::SearchReport;
use leelp::table::TableDocument;
use leelp::verify::VerifyReport;

fn codes_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("codes")
}

fn leelp(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["leelp", "--no-cache"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok_json<T: serde::de::DeserializeOwned + serde::Serialize + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let (code, out, err) = leelp(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    let parsed: T = serde_json::from_str(&out).unwrap();
    let again: T = serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
    assert_eq!(again, parsed);
    parsed
}

#[test]
fn headline_bounds_all_methods() {
    for (q, n, d, expected) in [("5", "8", "8", ["134", "75", "75", "75"]), ("7", "7", "11", ["55", "40", "40", "40"])] {
        let reports: Vec<BoundReport> = ok_json(&["bound", "--q", q, "--n", n, "--d", d, "--method", "all", "--json"]);
        let names: Vec<&str> = reports.iter().map(|r| r.method.as_str()).collect();
        assert_eq!(names, ["theorem1", "refined", "dual-refined", "compact"]);
        let sizes: Vec<&str> = reports.iter().map(|r| r.size_bound.as_str()).collect();
        assert_eq!(sizes, expected);
        assert_eq!(reports[0].arithmetic, "float, tolerance 1e-6");
        assert_eq!(reports[3].arithmetic, "exact rational");
    }
}

#[test]
fn default_method_is_compact() {
    let r: BoundReport = ok_json(&["bound", "--q", "5", "--n", "8", "--d", "8", "--json"]);
    assert_eq!((r.method.as_str(), r.size_bound.as_str(), r.k_bound), ("compact", "75", 2));
    assert!(r.exact);
}

#[test]
fn exact_dual_refined_reports_field_optimum() {
    let r: BoundReport = ok_json(&["bound", "--q", "7", "--n", "4", "--d", "6", "--method", "dual-refined", "--arithmetic", "exact", "--json"]);
    assert_eq!(r.arithmetic, "exact Q(zeta)");
    assert!(r.lp_optimum.is_some());
}

#[test]
fn trivial_distance_cell() {
    let r: BoundReport = ok_json(&["bound", "--q", "5", "--n", "2", "--d", "5", "--json"]);
    assert_eq!((r.size_bound.as_str(), r.k_bound, r.lp_optimum), ("1", 0, None));
}

#[test]
fn refined_theorem1_ordering() {
    for d in ["3", "4", "5", "6", "7"] {
        let r: Vec<BoundReport> = ok_json(&["bound", "--q", "7", "--n", "4", "--d", d, "--method", "all", "--json"]);
        let size = |i: usize| r[i].size_bound.parse::<u64>().unwrap();
        assert!(size(1) <= size(0), "d = {d}");
        assert_eq!(size(1), size(3));
    }
}

#[test]
fn table_formats() {
    let doc: TableDocument = ok_json(&["table", "--q", "7", "--n", "2..4", "--d", "3..9", "--format", "json"]);
    assert_eq!(doc.k_bound(3, 3), Some(2));
    assert_eq!(doc.k_bound(2, 7), None);
    let (code, csv, _) = leelp(&["table", "--q", "5", "--n", "2", "--d", "3-5", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(csv, "n,3,4,5\n2,1,0,\n");
    let (code, md, _) = leelp(&["table", "--q", "5", "--n", "6", "--d", "7", "--format", "md"]);
    assert_eq!(code, 0);
    assert!(md.contains("| 6 | 1 |"), "{md}");
}

#[test]
fn compact_and_refined_tables_agree() {
    let grid = |method: &str| -> TableDocument {
        ok_json(&["table", "--q", "5", "--n", "2..6", "--d", "1..12", "--method", method, "--format", "json"])
    };
    let (a, b) = (grid("compact"), grid("refined"));
    let ks = |t: &TableDocument| t.cells.iter().map(|c| c.k_bound).collect::<Vec<_>>();
    assert_eq!(ks(&a), ks(&b));
}

#[test]
fn table_rejects_all_method() {
    let (code, _, err) = leelp(&["table", "--q", "5", "--n", "2", "--d", "3", "--method", "all"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn verify_shipped_codes() {
    for (file, d, k) in [("g1.txt", 8, 2), ("g2.txt", 5, 5)] {
        let path = codes_dir().join(file);
        let r: VerifyReport = ok_json(&["verify", path.to_str().unwrap(), "--d", &d.to_string(), "--json"]);
        assert!(r.passed(), "{file}: {r:?}");
        assert_eq!((r.min_distance, r.rank), (Some(d), k));
        assert_eq!(r.meets_bound, Some(true), "{file}");
        assert_eq!(r.lp_feasible, Some(true));
    }
}

#[test]
fn shipped_g3_has_distance_four() {
    // the matrix as printed: 2 * row 1 + row 2 has Lee weight 4
    let path = codes_dir().join("g3.txt");
    let r: VerifyReport = ok_json(&["verify", path.to_str().unwrap(), "--d", "5", "--json"]);
    assert_eq!(r.min_distance, Some(4));
    assert_eq!(r.claim_holds, Some(false));
    assert!(r.distribution_ok && r.orbit_equalities_ok && r.dual_nonnegative);
    assert_eq!(r.lp_feasible, Some(true));
}

#[test]
fn verify_text_output() {
    let path = codes_dir().join("g1.txt");
    let (code, out, _) = leelp(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("min Lee distance    8"), "{out}");
    assert!(out.contains("refined LP feasible pass"), "{out}");
}

#[test]
fn verify_parse_error_names_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "5 3 2\n1 0 2\n0 1 9\n").unwrap();
    let (code, _, err) = leelp(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("bad.txt:3:"), "{err}");
}

#[test]
fn leenumbers_dumps() {
    let d: LeeNumberDump = ok_json(&["leenumbers", "--q", "5", "--n", "2", "--format", "json"]);
    assert_eq!(d.lee_numbers.len(), 6);
    let d: LeeNumberDump = ok_json(&["leenumbers", "--q", "7", "--n", "2", "--format", "json"]);
    assert!(d.compact.iter().flatten().all(|x| x.parse::<i64>().is_ok()));
    let (code, out, _) = leelp(&["leenumbers", "--q", "5", "--n", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("-1 - z"), "{out}");
}

#[test]
fn search_reports() {
    let args = ["search", "--q", "5", "--n", "8", "--k", "2", "--d", "8", "--trials", "20000", "--seed", "3", "--json"];
    let a: SearchReport = ok_json(&args);
    let b: SearchReport = ok_json(&args);
    assert!(a.hit);
    assert_eq!((a.hit_trial, a.best_generator.clone()), (b.hit_trial, b.best_generator.clone()));
    let miss: SearchReport = ok_json(&["search", "--q", "7", "--n", "7", "--k", "2", "--d", "11", "--trials", "3000", "--json"]);
    assert!(!miss.hit);
    assert_eq!(miss.trials_used, 3000);
    assert!(miss.best_distance.unwrap() < 11);
}

#[test]
fn tight_codes_are_found() {
    for (q, n, k, d) in [("5", "9", "5", "5"), ("7", "7", "4", "5")] {
        let r: SearchReport = ok_json(&["search", "--q", q, "--n", n, "--k", k, "--d", d, "--trials", "50000", "--json"]);
        assert!(r.hit, "{q} {n} {k} {d}");
        let path = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(path.path(), r.best_generator.unwrap()).unwrap();
        let v: VerifyReport = ok_json(&["verify", path.path().to_str().unwrap(), "--d", d, "--json"]);
        assert!(v.passed() && v.meets_bound == Some(true), "{v:?}");
    }
}

fn binary(args: &[&str], cache: Option<&Path>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_leelp"));
    cmd.args(args);
    match cache {
        Some(dir) => cmd.env("LEELP_CACHE_DIR", dir),
        None => cmd.env_remove("LEELP_CACHE_DIR"),
    };
    let out = cmd.output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn binary_exit_codes() {
    assert_eq!(binary(&["bound", "--q", "5", "--n", "3", "--d", "4"], None).0, 0);
    assert_eq!(binary(&["bound", "--q", "5", "--n", "3"], None).0, 1);
    assert_eq!(binary(&["bound", "--q", "5", "--n", "3", "--d", "8"], None).0, 1);
    assert_eq!(binary(&["table", "--q", "5", "--n", "5..2", "--d", "3"], None).0, 1);
    assert_eq!(binary(&["verify", "/nonexistent/g.txt"], None).0, 1);
    assert_eq!(binary(&["leenumbers", "--q", "13", "--n", "12"], None).0, 2);
    assert_eq!(binary(&["--version"], None).0, 0);
}

fn without_timing(mut r: BoundReport) -> BoundReport {
    r.elapsed_ms = 0.0;
    r
}

#[test]
fn cache_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    {
        let args = ["bound", "--q", "7", "--n", "5", "--d", "6", "--method", "all", "--json"];
        let parse = |s: &str| serde_json::from_str::<Vec<BoundReport>>(s).unwrap().into_iter().map(without_timing).collect::<Vec<_>>();
        let (c0, plain, _) = binary(&args, None);
        let (c1, cold, _) = binary(&args, Some(dir.path()));
        let (c2, warm, _) = binary(&args, Some(dir.path()));
        assert_eq!((c0, c1, c2), (0, 0, 0));
        assert_eq!(parse(&plain), parse(&cold));
        assert_eq!(parse(&plain), parse(&warm));
    }
    assert!(dir.path().join("lee-q7-n5-v1.json").exists());
    let (_, a, _) = binary(&["leenumbers", "--q", "7", "--n", "5", "--format", "json"], Some(dir.path()));
    let (_, b, _) = binary(&["leenumbers", "--q", "7", "--n", "5", "--format", "json"], None);
    assert_eq!(a, b);
}
