use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cdeph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdeph")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("scenario.cfg");
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn preset_writes_csv_and_meta() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = cdeph(&["preset", "fig1_inset", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("fig1_inset.csv")).unwrap();
    assert!(csv.starts_with("theta,gamma_inf_N100,gamma_inf_N1000\n"));
    assert_eq!(csv.lines().count(), 17);
    assert!(!csv.contains('\r'));
    let meta = fs::read_to_string(out.join("fig1_inset.meta")).unwrap();
    assert!(meta.contains("computation = stationary_scan\n"));
}

#[test]
fn flags_override_config_and_land_in_meta() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "name = tiny\ncomputation = gamma_curve\ns = 2\ncoupling_combo = 0.05\nn_list = 50\nt_min = 0.5\nt_max = 5\nt_points_per_decade = 3\nseed = 1\n",
    );
    let out = dir.path().join("o");
    let o = cdeph(&[
        "run", &cfg, "--out", out.to_str().unwrap(), "--rel-tol", "1e-9", "--abs-tol", "0", "--threads", "1", "--seed", "42",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let meta = fs::read_to_string(out.join("tiny.meta")).unwrap();
    for line in ["rel_tol = 1e-9", "abs_tol = 0.0", "threads = 1", "seed = 42"] {
        assert!(meta.lines().any(|l| l == line), "missing `{line}` in\n{meta}");
    }
    let csv = fs::read_to_string(out.join("tiny.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("w_t,gamma_T0"));
    assert_eq!(csv.lines().count(), 1 + 4);
}

#[test]
fn meta_replays_to_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert_eq!(code(&cdeph(&["preset", "fig1_inset", "--out", a.to_str().unwrap(), "--threads", "2"])), 0);
    let meta = a.join("fig1_inset.meta");
    let o = cdeph(&["run", meta.to_str().unwrap(), "--out", b.to_str().unwrap(), "--threads", "1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(fs::read(a.join("fig1_inset.csv")).unwrap(), fs::read(b.join("fig1_inset.csv")).unwrap());
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = cdeph(&["preset", "fig9", "--out", out]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("fig1"));
    assert_eq!(code(&cdeph(&["preset", "fig1"])), 2);
    assert_eq!(code(&cdeph(&["launch"])), 2);
    assert_eq!(code(&cdeph(&["preset", "fig1", "--out", out, "--threads", "many"])), 2);

    let cfg = write_config(dir.path(), "computation = gamma_curve\n\ns = four\n");
    let o = cdeph(&["run", &cfg, "--out", out]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let missing = dir.path().join("nope.cfg");
    assert_eq!(code(&cdeph(&["run", missing.to_str().unwrap(), "--out", out])), 2);

    let cfg = write_config(dir.path(), "computation = gamma_curve\nflux = 3\n");
    assert_eq!(code(&cdeph(&["run", &cfg, "--out", out])), 2);
}

#[test]
fn domain_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let cfg = write_config(dir.path(), "computation = gamma_curve\ns = -3\n");
    let o = cdeph(&["run", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("s > -1"));
    assert!(!out.exists());
    let o = cdeph(&["preset", "fig1", "--out", out.to_str().unwrap(), "--rel-tol=-1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn io_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = cdeph(&["preset", "fig1_inset", "--out", blocker.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}
