use std::path::PathBuf;
use std::process::{Command, Output};

fn bethe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bethe")).args(args).output().expect("binary runs")
}

fn config_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bethe-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn minimal_jt_campaign_passes() {
    let cfg = config_file(
        "jt.toml",
        "preset = \"distinguished-covariant\"\nr = 1\ns = 0\nchecks = [\"jt\"]\n[shapes]\nlist = [\"2,1\", \"2,2/1\"]\nrandom = 0\n",
    );
    let o = bethe(&["run", "--config", cfg.to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("check=jt") && l.contains("verdict=PASS")).count(), 4);
}

#[test]
fn unenforced_roots_fail_the_pole_audit() {
    let cfg = config_file("neg.toml", "r = 1\ns = 1\nn_sites = 2\ngrid_max = 2\ncorrupt_root = true\nchecks = [\"pole-audit\"]\n");
    let o = bethe(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict=FAIL"));
}

#[test]
fn empty_check_list_gives_an_empty_report() {
    let cfg = config_file("empty.toml", "checks = []\n");
    let o = bethe(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "summary entries=0 passed=0 failed=0\n");
}

#[test]
fn reports_are_deterministic() {
    let cfg = config_file("det.toml", "r = 0\ns = 1\nseed = 5\nchecks = [\"top-term\", \"vanishing\", \"jt\"]\n");
    let a = bethe(&["run", "--config", cfg.to_str().unwrap()]);
    let b = bethe(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_errors_point_at_the_field() {
    let cfg = config_file("bad.toml", "r = 1\ns = 0\nq = 3/2\n");
    let o = bethe(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");

    let o = bethe(&["verify-jt", "--q", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`q`"));
}

#[test]
fn flags_override_and_out_writes_a_file() {
    let out = std::env::temp_dir().join(format!("bethe-out-{}.txt", std::process::id()));
    let o = bethe(&["verify-mixed", "--r", "1", "--s", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("rejected: r = s"), "{text}");
}

#[test]
fn solve_bae_reports_roots() {
    let o = bethe(&["solve-bae", "--r", "0", "--s", "1", "--n-sites", "2", "--sector", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("y1="));
}
