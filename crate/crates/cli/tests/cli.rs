//! End-to-end runs of the command-line binary: exit statuses, report
//! determinism, and the guard paths.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nangulate"))
}

fn write_fixture(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("nangulate-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const SPLIT_ONE: &str = "\
field p=2 n=4
gen s0
hom s0 s0 dim=1 basis=id_s0
angles split
";

#[test]
fn check_axioms_passes_on_the_split_export() {
    let input = write_fixture("split1.cat", SPLIT_ONE);
    let out = bin()
        .args(["--input", input.to_str().unwrap(), "--task", "check-axioms"])
        .args(["--cap-instances", "40", "--cap-solutions", "512"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["overall"], "pass");
    assert_eq!(report["task"], "check-axioms");
}

#[test]
fn subset_guard_is_an_input_error() {
    let input = write_fixture("split1b.cat", SPLIT_ONE);
    let out = bin()
        .args(["--input", input.to_str().unwrap(), "--task", "verify-theorem"])
        .args(["--z", ""])
        .args(["--d", "s0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("subset"), "{}", err);
}

#[test]
fn reports_are_byte_identical_for_a_fixed_seed() {
    let input = write_fixture("split1c.cat", SPLIT_ONE);
    let dir = std::env::temp_dir().join("nangulate-cli-tests");
    let out1 = dir.join("r1.json");
    let out2 = dir.join("r2.json");
    for out in [&out1, &out2] {
        let status = bin()
            .args(["--input", input.to_str().unwrap(), "--task", "check-axioms"])
            .args(["--seed", "42", "--cap-instances", "40", "--cap-solutions", "512"])
            .args(["--output", out.to_str().unwrap()])
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b);
    assert!(!a.is_empty());
}

#[test]
fn bad_input_file_is_exit_three() {
    let input = write_fixture("broken.cat", "field p=2 n=4\nnot a directive\n");
    let out = bin()
        .args(["--input", input.to_str().unwrap(), "--task", "check-axioms"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_theorem_runs_on_a_degenerate_pair() {
    let input = write_fixture("split1d.cat", SPLIT_ONE);
    let out = bin()
        .args(["--input", input.to_str().unwrap(), "--task", "verify-theorem"])
        .args(["--d", "s0", "--cap-instances", "40", "--cap-solutions", "512"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["overall"], "pass");
    // the zero quotient records its collapsed dimensions
    let choices = report["choices"].as_array().unwrap();
    assert!(choices.iter().any(|c| c.as_str().unwrap().contains("quotient Hom")));
}
