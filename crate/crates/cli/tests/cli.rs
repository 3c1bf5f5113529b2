use std::process::{Command, Output};

use num_complex::Complex64;
use oscsum_core::forms::build_eigenforms;
use oscsum_core::twist::eval_twist_sum;
use oscsum_core::{make_window, PhaseSpec, TwistSpec};

fn oscsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oscsum")).args(args).env_remove("OSCSUM_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Data rows of a CSV document, `#` lines skipped.
fn records(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(str::to_string).collect()).collect();
    (header, rows)
}

/// Everything after the `# config:` line.
fn data(text: &str) -> &str {
    assert!(text.starts_with("# config: "), "{text}");
    &text[text.find('\n').unwrap() + 1..]
}

#[test]
fn exppair_table() {
    let o = oscsum(&["exppair", "--depth", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# config: subcommand=exppair objective=38+33p-28q/58+48p-43q depth=4 threads="));
    let (header, rows) = records(&text);
    assert_eq!(header, ["p", "q", "derivation", "value"]);
    let best = rows.iter().find(|r| r[0] == "13/194").unwrap();
    assert_eq!((best[1].as_str(), best[2].as_str(), best[3].as_str()), ("76/97", "A(bourgain)", "709/1068"));
    assert!(text.contains("# minimum 709/1068 at (13/194, 76/97)"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["exppair", "--depth", "4", "--frobnicate"],
        &["exppair", "--depth", "13"],
        &["exppair", "--objective", "38+x"],
        &["twist", "--weights", "12,16", "--phase", "pow:0.5", "--t", "64", "--X", "4096"],
        &["twist", "--weights", "12,14", "--t", "64", "--X", "4096"],
        &["verify-all", "--level", "medium"],
        &["verify-all", "--criteria", "14"],
    ] {
        let o = oscsum(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty() || stdout(&o).starts_with("# config:"));
    }
    let help = oscsum(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    for sub in ["coeffs", "twist", "harness-thm1", "gl5", "lvalue", "voronoi-check", "resonance", "delta-check", "phase-check", "exppair", "verify-all"] {
        assert!(stdout(&help).contains(sub), "{sub}");
    }
}

#[test]
fn twist_row_equals_library_call() {
    let o = oscsum(&["--threads", "1", "twist", "--weights", "12,16", "--phase", "log", "--alpha", "1", "--t", "64", "--X", "4096"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (header, rows) = records(&stdout(&o));
    assert_eq!(&header[..4], ["t", "X", "sum_re", "sum_im"]);
    let cli = Complex64::new(rows[0][2].parse().unwrap(), rows[0][3].parse().unwrap());

    let mut v = build_eigenforms(&[12, 16], 8192).unwrap();
    let g = v.pop().unwrap();
    let f = v.pop().unwrap();
    let spec = TwistSpec::new(PhaseSpec::log(1.0).unwrap(), 64.0, 4096.0, make_window(1.0, 2.0, 4.0).unwrap()).unwrap();
    let lib = eval_twist_sum(&f, &g, &spec).unwrap();
    assert_eq!((cli.re.to_bits(), cli.im.to_bits()), (lib.re.to_bits(), lib.im.to_bits()));
    assert_eq!(rows[0][6], "true");
}

#[test]
fn csv_values_round_trip() {
    let o = oscsum(&["delta-check", "--Q", "30", "--nmax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = records(&stdout(&o));
    assert_eq!(header, ["n", "value", "defect"]);
    assert_eq!(rows.len(), 11);
    for r in rows {
        for cell in &r[1..] {
            let v: f64 = cell.parse().unwrap();
            assert_eq!(&oscsum_core::csv::fmt_f64(v), cell);
        }
    }
}

#[test]
fn output_flag_and_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let cache = dir.path().join("cache");
    let cold = Command::new(env!("CARGO_BIN_EXE_oscsum"))
        .args(["coeffs", "--weight", "18", "--N", "500", "--output", out.to_str().unwrap()])
        .env("OSCSUM_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert_eq!(cold.status.code(), Some(0));
    assert!(cold.stdout.is_empty());
    let first = std::fs::read_to_string(&out).unwrap();
    assert!(first.contains(&format!("cache_dir={}", cache.display())));
    assert!(cache.join("coeffs-w18-N500.csv").exists());
    let hit = Command::new(env!("CARGO_BIN_EXE_oscsum"))
        .args(["--cache-dir", cache.to_str().unwrap(), "coeffs", "--weight", "18", "--N", "500"])
        .output()
        .unwrap();
    let memory = oscsum(&["coeffs", "--weight", "18", "--N", "500"]);
    assert_eq!(data(&first), data(&stdout(&hit)));
    assert_eq!(data(&first), data(&stdout(&memory)));
    let table = oscsum_core::forms::read_table(first.as_bytes()).unwrap();
    assert_eq!(table.len(), 500);
}

#[test]
fn failed_tolerance_exits_one() {
    let o = oscsum(&["voronoi-check", "--weight", "12", "--q", "5", "--a", "2", "--X", "50", "--tol", "1e-15"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("voronoi.voronoi_check: expected defect <= 1e-15"), "{}", stderr(&o));
    let ok = oscsum(&["voronoi-check", "--weight", "12", "--q", "5", "--a", "-3", "--X", "50"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
}

#[test]
fn harness_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.csv");
    std::fs::write(&grid, "# t,X\n64,4096\n64,500\n\n128,65536 # inside\n").unwrap();
    let o = oscsum(&["harness-thm1", "--grid", grid.to_str().unwrap(), "--phase", "pow:0.4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let (_, rows) = records(&text);
    assert_eq!(rows.len(), 2);
    assert!(text.contains("# skipped t=6.4000000000000000e1 X=5.0000000000000000e2"));
    std::fs::write(&grid, "64;4096\n").unwrap();
    assert_eq!(oscsum(&["harness-thm1", "--grid", grid.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn phase_checks_pass_on_default_grids() {
    for lemma in ["nonstationary", "stationary", "second-derivative", "transform", "h-bound"] {
        let o = oscsum(&["phase-check", "--lemma", lemma]);
        assert_eq!(o.status.code(), Some(0), "{lemma}: {}", stderr(&o));
        let (_, rows) = records(&stdout(&o));
        assert!(!rows.is_empty() && rows.iter().all(|r| r[0] == lemma && r[8] == "true"));
    }
    let o = oscsum(&["phase-check", "--lemma", "stationary", "--grid", "1e3,1e4"]);
    assert_eq!(records(&stdout(&o)).1.len(), 2);
}

#[test]
fn resonance_row() {
    let o = oscsum(&["resonance", "--weight", "16", "--q", "2", "--X", "10000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (header, rows) = records(&stdout(&o));
    assert_eq!(header, ["X", "sum_re", "sum_im", "main_re", "main_im", "residual"]);
    let r: Vec<f64> = rows[0].iter().map(|c| c.parse().unwrap()).collect();
    let resid = Complex64::new(r[1] - r[3], r[2] - r[4]).norm();
    assert!((resid - r[5]).abs() <= 1e-12 * r[5]);
}

#[test]
fn verify_all_fast_passes_and_is_thread_independent() {
    let one = oscsum(&["--threads", "1", "verify-all", "--level", "fast"]);
    assert_eq!(one.status.code(), Some(0), "{}", stderr(&one));
    let lines: Vec<String> = stderr(&one).lines().filter(|l| l.starts_with("criterion")).map(str::to_string).collect();
    assert_eq!(lines.len(), 13);
    assert!(lines.iter().all(|l| l.contains(" pass ")), "{lines:?}");
    let eight = oscsum(&["--threads", "8", "verify-all", "--level", "fast"]);
    assert_eq!(eight.status.code(), Some(0));
    assert!(stdout(&eight).starts_with("# config: subcommand=verify-all level=fast"));
    assert!(stdout(&eight).lines().next().unwrap().contains("threads=8"));
    assert_eq!(data(&stdout(&one)), data(&stdout(&eight)));
}

#[test]
fn injected_fault_names_hecke_check() {
    let o = oscsum(&["verify-all", "--level", "fast", "--criteria", "1,11", "--inject-fault", "6"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    let last = err.lines().last().unwrap();
    assert!(last.starts_with("FAIL criterion 1 forms.verify_hecke:"), "{err}");
    assert!(last.contains("expected <="), "{last}");
    assert!(err.contains("criterion 11 pass"));
    assert!(!stdout(&oscsum(&["verify-all", "--help"])).contains("inject"));
}
