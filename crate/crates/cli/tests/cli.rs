use std::io::Write;
use std::process::{Command, Output};

fn coinage(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coinage")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_examples() {
    let o = coinage(&["check", "1,7,10,11"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o).trim(),
        "non-canonical; smallest counterexample 14: greedy (3,0,0,1) size 4, optimal (0,2,0,0) size 2"
    );
    let o = coinage(&["check", " 1, 5, 10, 25 "]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "canonical"));
}

#[test]
fn every_method_agrees_on_a_tight_system() {
    for method in ["oracle", "auto", "pearson", "tight-verbatim", "tight-extended"] {
        let o = coinage(&["check", "1,2,4,6,8,9", "--method", method]);
        assert_eq!(o.status.code(), Some(1), "{method}");
        assert!(stdout(&o).contains(" 12: "), "{method}: {}", stdout(&o));
    }
}

#[test]
fn json_schema_fields() {
    let o = coinage(&["--json", "check", "1,3,4", "--method", "auto"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["system"], serde_json::json!([1, 3, 4]));
    assert_eq!(v["verdict"], "non-canonical");
    assert_eq!(v["method"], "auto");
    assert_eq!(v["witness"]["x"], 6);
    assert_eq!(v["witness"]["greedy_counts"], serde_json::json!([2, 0, 1]));
    assert_eq!(v["witness"]["optimal_counts"], serde_json::json!([0, 2, 0]));
    assert!(v["elapsed_ns"].is_u64());

    let o = coinage(&["--json", "tight", "1,7,10,50"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["verdict"].as_str(), v["witness"]["x"].as_u64()), (Some("not-tight"), Some(14)));
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        &["check", "1,2,2"][..],
        &["check", "0,1"],
        &["check", "1,-3"],
        &["check", "1,x"],
        &["check", ""],
        &["check", "1,2,3,4,5", "--method", "tight-extended"],
    ] {
        let o = coinage(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn gen_then_verify() {
    let o = coinage(&["gen", "--tight", "-m", "6", "--cmax", "80", "--count", "40", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# generated").unwrap();
    file.write_all(&o.stdout).unwrap();
    writeln!(file, "1,2,4,5,7,8,11").unwrap();
    let path = file.path().to_str().unwrap();

    let o = coinage(&["verify", "--corpus", path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    for p in ["thm1", "thm3", "thm8", "thm11", "lem12", "lem13"] {
        assert!(text.lines().any(|l| l.starts_with(&format!("{p}: holds="))), "{text}");
    }
    let lem12 = text.lines().find(|l| l.starts_with("lem12")).unwrap();
    assert!(!lem12.contains("holds=0"), "{lem12}");

    let o = coinage(&["verify", "--corpus", path, "--predicate", "thm3"]);
    assert_eq!(stdout(&o).lines().count(), 1);
    assert_eq!(coinage(&["verify", "--corpus", path, "--predicate", "thm99"]).status.code(), Some(2));
    assert_eq!(coinage(&["verify", "--corpus", "/nonexistent/corpus"]).status.code(), Some(2));
}

#[test]
fn gen_is_deterministic() {
    let a = coinage(&["gen", "--random", "-m", "5", "--cmax", "1000", "--count", "20", "--seed", "9"]);
    let b = coinage(&["gen", "--random", "-m", "5", "--cmax", "1000", "--count", "20", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 20);
}
