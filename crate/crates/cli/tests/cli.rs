use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qsann(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsann"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn generate_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = qsann(
        dir.path(),
        &[
            "generate",
            "--prefix",
            "test",
            "--nb",
            "3",
            "--probe-bits",
            "2",
            "--pe-steps",
            "4",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let log = fs::read_to_string(dir.path().join("test_qsann_log.txt")).unwrap();
    assert!(log.contains("Number of Qubits: 14\n"));
    let eng = fs::read_to_string(dir.path().join("test_qsann_eng.txt")).unwrap();
    let pic = fs::read_to_string(dir.path().join("test_qsann_pic.txt")).unwrap();
    assert_eq!(eng.lines().count(), pic.lines().count());
    assert!(stdout(&o).contains("Number of Qubits: 14"));
}

#[test]
fn log_is_golden_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["generate", "--prefix", "g", "--conjugate-q", "--prep"];
    assert!(qsann(dir.path(), &args).status.success());
    let first = fs::read(dir.path().join("g_qsann_log.txt")).unwrap();
    let eng1 = fs::read(dir.path().join("g_qsann_eng.txt")).unwrap();
    assert!(qsann(dir.path(), &args).status.success());
    assert_eq!(first, fs::read(dir.path().join("g_qsann_log.txt")).unwrap());
    assert_eq!(eng1, fs::read(dir.path().join("g_qsann_eng.txt")).unwrap());
    let text = String::from_utf8(first).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .map(|l| l.split(": ").next().unwrap())
        .collect();
    assert_eq!(
        keys,
        vec![
            "File Prefix",
            "Number of State Bits",
            "Number of Probe Bits (for each PE step)",
            "Number of Phase Estimation (PE) Steps",
            "Grover Depth",
            "Upper Bound on Number of Neighbors",
            "Number of Betas",
            "Delta Beta Per Unit Time",
            "State Preparation",
            "Conjugate Q",
            "Number of Qubits",
            "Number of Elementary Operations",
        ]
    );
    assert!(text.contains("State Preparation: yes\n"));
    assert!(text.contains("Conjugate Q: yes\n"));
}

#[test]
fn invalid_inputs_fail_with_message() {
    let dir = tempfile::tempdir().unwrap();
    let o = qsann(dir.path(), &["generate", "--num-betas", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Number of Betas must be ≥ 2"));

    let o = qsann(dir.path(), &["generate", "--delta-beta", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Delta Beta"));

    let o = qsann(dir.path(), &["generate", "--nb", "2", "--up-bd-neig", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Upper Bound on Number of Neighbors"));

    let o = qsann(dir.path(), &["generate", "--grover-depth", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!dir.path().join("test_qsann_log.txt").exists());
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        qsann(dir.path(), &["generate", "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(qsann(dir.path(), &["transmogrify"]).status.code(), Some(2));
    assert_eq!(
        qsann(dir.path(), &["generate", "--nb", "x"]).status.code(),
        Some(2)
    );
}

#[test]
fn expand_table_row() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("row_eng.txt"),
        "MP_Y  AT  3 IF 2(1 1(0 0T BY 30.0 10.5 11.0 83.1\n",
    )
    .unwrap();
    fs::write(dir.path().join("row_pic.txt"), "|   Ry--(1--(0--@\n").unwrap();
    let o = qsann(
        dir.path(),
        &["expand", "--in-prefix", "row", "--out-prefix", "out"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let eng = fs::read_to_string(dir.path().join("out_eng.txt")).unwrap();
    assert_eq!(eng.lines().count(), 8);
    let pic = fs::read_to_string(dir.path().join("out_pic.txt")).unwrap();
    assert_eq!(pic.lines().count(), 8);
    assert!(pic.lines().all(|l| l.len() == 17), "{pic}");
    let log = fs::read_to_string(dir.path().join("out_log.txt")).unwrap();
    assert!(log.contains("Number of Elementary Operations: 8\n"));
}

#[test]
fn expand_generated_output() {
    let dir = tempfile::tempdir().unwrap();
    assert!(qsann(dir.path(), &["generate", "--prefix", "t"])
        .status
        .success());
    let o = qsann(
        dir.path(),
        &[
            "expand",
            "--in-prefix",
            "t_qsann",
            "--out-prefix",
            "t_exp",
            "--bit-precision",
            "4",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("warning"));
    let eng = fs::read_to_string(dir.path().join("t_exp_eng.txt")).unwrap();
    assert!(!eng.contains("MP_Y"));

    // Expanding a multiplexor-free file changes nothing.
    let o = qsann(
        dir.path(),
        &["expand", "--in-prefix", "t_exp", "--out-prefix", "t_again"],
    );
    assert!(o.status.success());
    assert_eq!(
        eng,
        fs::read_to_string(dir.path().join("t_again_eng.txt")).unwrap()
    );
}

#[test]
fn expand_errors() {
    let dir = tempfile::tempdir().unwrap();
    let o = qsann(
        dir.path(),
        &["expand", "--in-prefix", "missing", "--out-prefix", "x"],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("missing_eng.txt"));

    fs::write(dir.path().join("b_eng.txt"), "HAD2  AT  0\nSIGQ  AT  1\n").unwrap();
    fs::write(dir.path().join("b_pic.txt"), "H\nH\n").unwrap();
    let o = qsann(
        dir.path(),
        &["expand", "--in-prefix", "b", "--out-prefix", "x"],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = qsann(
        dir.path(),
        &[
            "expand",
            "--in-prefix",
            "b",
            "--out-prefix",
            "x",
            "--mode",
            "oracular",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unsupported mode"));
}

#[test]
fn verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = qsann(dir.path(), &["verify"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = qsann(dir.path(), &["verify", "--corrupt-angle", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o)
        .lines()
        .any(|l| l.starts_with("walk spectrum") && l.contains("FAIL")));

    let o = qsann(
        dir.path(),
        &[
            "verify",
            "--nb",
            "3",
            "--probe-bits",
            "2",
            "--pe-steps",
            "4",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("exceeds simulation cap"));
}

#[test]
fn simulate_prepared_circuit() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("h_eng.txt"),
        "HAD2  AT  0\nSIGX  AT  1  IF  0T\n",
    )
    .unwrap();
    let o = qsann(dir.path(), &["simulate", "--in-prefix", "h"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("Norm: 1.000000000000"));
    assert!(out.contains("00  0.5000000000"));
    assert!(out.contains("11  0.5000000000"));
}
