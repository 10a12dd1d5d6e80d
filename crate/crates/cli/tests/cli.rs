use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_variety-forge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("VARIETY_FORGE_MAX_ARITY").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("variety-forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn dimensions() {
    let dir = scratch("catalog");
    assert_eq!(code(&run(&["export-catalog", "-o", dir.to_str().unwrap()])), 0);
    let dp = dir.join("varieties/delta-poisson.var");
    let o = run(&["dim", dp.to_str().unwrap(), "--arity", "5", "--delta", "-1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("dim=31\ntime="));
    let o = run(&["dim", "mixed-poisson", "--arity", "4", "--no-timing"]);
    assert_eq!(stdout(&o), "dim=7\n");
    let empty = scratch("empty.var");
    std::fs::write(&empty, "op dot symmetric\nop bracket antisymmetric\n").unwrap();
    let o = run(&["dim", empty.to_str().unwrap(), "--arity", "3", "--no-timing"]);
    assert_eq!(stdout(&o), "dim=12\n");
}

#[test]
fn sampled_dimension_is_flagged() {
    let o = run(&["dim", "delta-poisson", "--arity", "4", "--mode", "sampled", "--no-timing"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("dim=12\nprobabilistic=true\nsamples="), "{out}");
}

#[test]
fn consequences() {
    let t = "bracket(dot(x1,x2),dot(x3,x4))";
    let o = run(&["consequence", "delta-poisson", "--target", t, "--arity", "4", "--expect", "yes"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("consequence=yes\ncertificate="));
    let o = run(&["consequence", "delta-poisson", "--target", t, "--delta", "1", "--expect", "yes"]);
    assert_eq!((code(&o), stdout(&o)), (1, "consequence=no\n".to_string()));
    let o = run(&["consequence", "delta-poisson", "--target", "jacobi"]);
    assert!(stdout(&o).starts_with("consequence=yes"));
    let o = run(&["consequence", "delta-poisson", "--target", t, "--arity", "3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn equivalences() {
    let o = run(&["equiv", "f-delta", "depol:delta-poisson", "--delta", "2", "--expect", "yes"]);
    assert_eq!((code(&o), stdout(&o)), (0, "equivalent=yes\n".to_string()));
    let o = run(&["equiv", "tsc1", "depol:transposed-scalar-poisson", "--expect", "no"]);
    assert_eq!(code(&o), 0);
    let o = run(&["equiv", "sc1-identity", "depol:scalar-poisson"]);
    assert_eq!(stdout(&o), "equivalent=no\n");
}

#[test]
fn checks_and_tensors() {
    let o = run(&["check", "A1", "transposed-delta-poisson", "--delta", "-1", "--expect", "yes"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("satisfied=yes\n"));
    let o = run(&["check", "sc-B1", "sc2-identity"]);
    let out = stdout(&o);
    assert!(out.contains("witness (e1,e1,e3) -> -e3"), "{out}");
    assert!(out.ends_with("satisfied=no\n"));
    let o = run(&["check", "zero-algebra", "mixed-poisson", "--expect", "yes"]);
    assert_eq!(code(&o), 0);

    let t = scratch("t.alg");
    assert_eq!(code(&run(&["tensor", "A1", "A1", "-o", t.to_str().unwrap()])), 0);
    let o = run(&["check", t.to_str().unwrap(), "transposed-delta-poisson", "--delta", "-1", "--expect", "yes"]);
    assert_eq!(code(&o), 0);

    let one = scratch("one.alg");
    std::fs::write(&one, "dim 1\nmul e1 e1 = e1\n").unwrap();
    let o = run(&["tensor", one.to_str().unwrap(), one.to_str().unwrap()]);
    assert!(stdout(&o).contains("dim 1\n"));

    let com = scratch("com.alg");
    std::fs::write(&com, "dim 2\nmul e1 e1 = e1\nmul e1 e2 = e2\nmul e2 e1 = e2\n").unwrap();
    let out = stdout(&run(&["depolarize", com.to_str().unwrap()]));
    assert!(out.contains("dot e1 e2 = e2"));
    assert!(!out.contains("bracket e"), "{out}");
}

#[test]
fn duals_and_series() {
    let out = stdout(&run(&["dual", "mixed-poisson"]));
    assert!(out.contains("# relations: 3 total, 0 mixed"), "{out}");
    for line in out.lines().filter(|l| l.starts_with("identity:")) {
        assert!(!(line.contains("dot") && line.contains("bracket")), "{line}");
    }
    let out = stdout(&run(&["koszul", "anti-poisson", "--order", "5"]));
    assert!(out.contains("deviation=91/60 at t^5\n"), "{out}");
    let out = stdout(&run(&["koszul", "anti-poisson", "--order", "5", "--kv"]));
    assert!(out.contains("order=5\n") && out.contains("deviation_order=5\ndeviation=91/60\n"));
    let out = stdout(&run(&["koszul", "mixed-poisson", "--order", "5"]));
    assert!(out.contains("deviation=none through t^5"), "{out}");
    let out = stdout(&run(&["free-basis", "--arity", "5"]));
    assert!(out.ends_with("24 + 6 + 1 = 31\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["dim", "no-such-variety", "--arity", "3"])), 2);
    assert_eq!(code(&run(&["dim", "anti-poisson", "--arity", "0"])), 2);
    assert_eq!(code(&run(&["dim", "anti-poisson", "--arity", "3", "--delta", "x"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let bad = scratch("bad.var");
    std::fs::write(&bad, "op dot symmetric\nidentity: dot(x1,\n").unwrap();
    let o = run(&["dim", bad.to_str().unwrap(), "--arity", "3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&run(&["dim", "anti-poisson", "--arity", "9", "--mode", "exact"])), 3);
    let o = bin()
        .args(["dim", "anti-poisson", "--arity", "5", "--mode", "exact"])
        .env("VARIETY_FORGE_MAX_ARITY", "4")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["koszul", "mixed-poisson", "--order", "4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["dim", "delta-poisson", "--arity", "5", "--no-timing"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
