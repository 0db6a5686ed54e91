use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn xychain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xychain")).args(args).env_remove("XYCHAIN_OUT_DIR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value_after(text: &str, label: &str) -> f64 {
    let line = text.lines().find(|l| l.starts_with(label)).unwrap_or_else(|| panic!("no '{label}' in\n{text}"));
    line[label.len()..].split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn energy_reports_three_methods_on_the_circle() {
    let o = xychain(&["energy", "--alpha", "0.6", "--gamma", "0.8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for label in ["closed form", "quadrature", "cyclic N = 10000"] {
        assert!((value_after(&text, label) + 0.5).abs() < 1e-12, "{label}\n{text}");
    }
    assert!(value_after(&text, "|closed - quadrature|") < 1e-12);
}

#[test]
fn derivative_table_starts_at_minus_one_over_four_gamma() {
    let o = xychain(&["derivatives", "--gamma", "0.6", "--max-order", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| l.chars().next().is_some_and(|c| c.is_ascii_digit())).collect();
    assert_eq!(rows.len(), 5);
    let second: f64 = rows[0].strip_prefix("2,").unwrap().parse().unwrap();
    assert!((second + 1.0 / 2.4).abs() < 1e-14);
}

#[test]
fn validation_errors_exit_with_two() {
    for args in [
        &["energy", "--alpha", "0.5", "--gamma", "1.5"][..],
        &["energy", "--alpha", "0.5"],
        &["scan", "--quantity", "entropy", "--alpha", "0:1:3", "--gamma", "0.5"],
        &["scan", "--quantity", "energy", "--alpha", "0:1:1", "--gamma", "0.5"],
        &["derivatives", "--gamma", "0.6", "--max-order", "61"],
        &["gap", "--point", "1.5,0.6", "--n-max", "5000"],
        &["verify", "--only", "11"],
        &["figure", "--id", "6"],
        &["--threads", "0", "derivatives", "--gamma", "0.5"],
        &[],
    ] {
        let o = xychain(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn scan_output_is_reproducible_across_modes() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["scan", "--quantity", "susceptibility", "--alpha", "0:2:41", "--gamma", "0:1:11", "--output"];
    let run = |extra: &[&str], name: &str| {
        let mut args: Vec<&str> = extra.to_vec();
        args.extend(base);
        args.push(name);
        let o = Command::new(env!("CARGO_BIN_EXE_xychain")).args(&args).env("XYCHAIN_OUT_DIR", dir.path()).output().unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(dir.path().join(name)).unwrap()
    };
    let a = run(&[], "a.csv");
    let b = run(&[], "b.csv");
    let c = run(&["--sequential"], "c.csv");
    let d = run(&["--threads", "2"], "d.csv");
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(a, d);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 1 + 41 * 11);
    assert!(text.contains(",divergent_line"));
}

#[test]
fn config_file_supplies_command_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# derivatives on the circle\ncommand = derivatives\ngamma = 0.6\nmax_order = 3\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();

    let o = xychain(&["--config", cfg_s]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with(|c: char| c.is_ascii_digit())).count(), 2);

    let o = xychain(&["--config", cfg_s, "derivatives", "--max-order", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.starts_with("5,")));

    fs::write(&cfg, "command = derivatives\ngamma = 0.6\nalpha = 0.3\n").unwrap();
    let o = xychain(&["--config", cfg_s]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown config key 'alpha'"));
}

#[test]
fn gap_writes_series_and_fits() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gap.csv");
    let o = xychain(&[
        "gap",
        "--point",
        "1.5,0.6",
        "--point",
        "1.3,0.5",
        "--n-min",
        "20",
        "--n-max",
        "160",
        "--n-count",
        "6",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("alpha = ")).count(), 2);
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 6);
    assert!(csv.starts_with("n,boundary,alpha,gamma,gap,n_times_gap"));
}

#[test]
fn figure_writes_data_and_script() {
    let dir = tempfile::tempdir().unwrap();
    let o = xychain(&["--out-dir", dir.path().to_str().unwrap(), "figure", "--id", "3b"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("fig3b.csv")).unwrap();
    assert_eq!(csv.lines().count(), 802);
    let script = fs::read_to_string(dir.path().join("fig3b.py")).unwrap();
    assert!(script.contains(&*Path::new(dir.path()).join("fig3b.csv").to_string_lossy()));

    let o = xychain(&["figure", "--list"]);
    let ids: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert_eq!(ids, ["2", "3a", "3b", "4a", "4b", "5a", "5b", "5c", "5d"]);
}

#[test]
fn expand_table_shrinks_toward_the_critical_line() {
    let o = xychain(&["expand", "--gamma", "1", "--alpha", "0", "--min-exponent", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let errs = |prefix: &str| -> Vec<f64> {
        text.lines().filter(|l| l.starts_with(prefix)).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect()
    };
    let chi = errs("chi,1.0");
    assert_eq!(chi.len(), 3);
    assert!(chi.windows(2).all(|w| w[1] < w[0]));
    let d2e = errs("d2e_dgamma2");
    assert!(d2e.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn quick_verify_reports_each_check() {
    // the open-chain intercept check fails at every level; see the README
    let o = xychain(&["verify", "--quick", "--skip", "7"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 9);

    let o = xychain(&["verify", "--quick", "--only", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL [ 7]"));
}
