use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_blockzeta"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child =
        bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decompose_and_word() {
    let o = run(&["decompose", "010100111010101"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(0; 5,2,1,7)");
    let o = run(&["decompose", "0101001110101010"]);
    assert_eq!(stdout(&o).trim(), "(0; 5,2,1,8)");
    let o = run(&["word", "--lengths", "5,2,1,8"]);
    assert_eq!(stdout(&o).trim(), "0101001110101010");
    let o = run(&["word", "(0; 5,2,1,8)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["weight"], 14);
    assert_eq!(v["trivial"], true);
}

#[test]
fn mzv_value() {
    let o = run(&["mzv", "z(2)", "--digits", "20", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["value"].as_str().unwrap().starts_with("1.6449340668482264364"));
    assert_eq!(v["word"], "0101");
}

#[test]
fn regularise_worked_example() {
    let o = run(&["regularise", "0010111"]);
    assert_eq!(stdout(&o).trim(), "6*z(1,4) + 2*z(2,3) + z(3,2)");
}

#[test]
fn generate_verify_pipe() {
    let g = run(&["generate", "cyclic-full", "--lengths", "1,1,2,3"]);
    assert!(g.status.success());
    let v = run_with_stdin(&["verify", "--digits", "30", "--format", "json"], &g.stdout);
    assert_eq!(v.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(r["status"], "verified");
}

#[test]
fn refutation_exits_one() {
    let g = run(&["generate", "hoffman", "--m", "0"]);
    let mut id: serde_json::Value = serde_json::from_slice(&g.stdout).unwrap();
    // flip the sign of the right side
    let c = id["rhs"]["coeff"].as_str().unwrap().trim_start_matches('-').to_string();
    id["rhs"]["coeff"] = c.into();
    let v = run_with_stdin(&["verify", "--digits", "20"], id.to_string().as_bytes());
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("refuted"));
}

#[test]
fn verify_keeps_input_order() {
    let mut input = Vec::new();
    for m in [2, 0, 1] {
        input.extend(run(&["generate", "hoffman", "--m", &m.to_string()]).stdout);
    }
    let v = run_with_stdin(&["verify", "--digits", "20", "--jobs", "3"], &input);
    assert!(v.status.success());
    let lines: Vec<String> = stdout(&v).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    for (l, m) in lines.iter().zip([2, 0, 1]) {
        assert!(l.contains(&format!("\"b\":[0,0,{m}]")), "{l}");
    }
}

#[test]
fn dkernel_symmetric_vanishes() {
    let g = run(&["generate", "symmetric", "--lengths", "2,3,3"]);
    let v = run_with_stdin(&["dkernel", "--format", "json"], &g.stdout);
    let r: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(r["vanishes"], true);
}

#[test]
fn table_weight_four() {
    let o = run(&["table", "--weight", "4", "--format", "json"]);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["overall"], 3);
    assert_eq!(r["expected"], 3);
    assert_eq!(r["cyclic"]["rank"], 3);
    assert_eq!(r["duality"]["init"], 2);
}

#[test]
fn rank_export() {
    let dir = std::env::temp_dir().join(format!("blockzeta-rank-{}", std::process::id()));
    let o = run(&["rank", "--weight", "4", "--families", "duality", "--export", dir.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("duality 2 1"));
    let t = std::fs::read_to_string(&dir).unwrap();
    assert_eq!(t.lines().count(), 4);
    std::fs::remove_file(dir).ok();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "01", "--nope"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "0121"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "hoffman"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "nonsense", "--m", "1"]).status.code(), Some(2));
    let o = run(&["generate", "altodd-odd", "--lengths", "1,2,1,2", "--x", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("constraint"));
}

#[test]
fn cache_file_is_written() {
    let path = std::env::temp_dir().join(format!("blockzeta-cache-{}", std::process::id()));
    let o = bin().args(["mzv", "z(3)", "--digits", "20"]).env("MZV_CACHE_PATH", &path).output().unwrap();
    assert!(o.status.success());
    let t = std::fs::read_to_string(&path).unwrap();
    assert!(t.lines().any(|l| l.starts_with("z(3) ") && l.contains(" 1.20205690315959428539")), "{t}");
    std::fs::remove_file(path).ok();
}
