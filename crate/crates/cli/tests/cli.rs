use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clifford-synth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn synth_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (input, out, stats) = (
        path(dir.path(), "in.txt"),
        path(dir.path(), "out.txt"),
        path(dir.path(), "stats.json"),
    );
    let r = run(&["random", "--qubits", "7", "--gates", "120", "--seed", "5"]);
    assert!(r.status.success());
    fs::write(&input, r.stdout).unwrap();

    let s = run(&[
        "synth", "--arch", "nairobi", "--in", &input, "--out", &out, "--stats", &stats,
    ]);
    assert!(s.status.success(), "{}", String::from_utf8_lossy(&s.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&stats).unwrap()).unwrap();
    for key in ["h", "s", "cx"] {
        assert!(json["counts"][key].is_u64(), "missing count {key}");
    }
    assert_eq!(json["mapping"].as_array().unwrap().len(), 7);
    assert!(json["wall_time_ms"].is_f64());

    let v = run(&[
        "verify",
        "--arch",
        "nairobi",
        "--tableau",
        &input,
        "--circuit",
        &out,
        "--mapping",
        &stats,
    ]);
    assert!(v.status.success());
    assert_eq!(stdout(&v).trim(), "ok");
}

#[test]
fn synth_accepts_tableau_text() {
    let dir = tempfile::tempdir().unwrap();
    let (input, out) = (path(dir.path(), "t.txt"), path(dir.path(), "out.txt"));
    let r = run(&[
        "random",
        "--qubits",
        "5",
        "--gates",
        "60",
        "--seed",
        "1",
        "--tableau",
    ]);
    assert!(stdout(&r).starts_with("n=5\n"));
    fs::write(&input, r.stdout).unwrap();
    let s = run(&[
        "synth",
        "--arch",
        "quito",
        "--tableau-in",
        &input,
        "--placement",
        "identity",
        "--out",
        &out,
    ]);
    assert!(s.status.success());
    let v = run(&[
        "verify",
        "--arch",
        "quito",
        "--tableau",
        &input,
        "--circuit",
        &out,
    ]);
    assert!(v.status.success(), "{}", stdout(&v));
}

#[test]
fn synth_writes_qasm_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "in.txt");
    fs::write(&input, "qubits 3\ncx 0 2\n").unwrap();
    let s = run(&[
        "synth",
        "--arch",
        "line-3",
        "--in",
        &input,
        "--placement",
        "identity",
        "--format",
        "qasm",
    ]);
    let text = stdout(&s);
    assert!(text.starts_with("OPENQASM 2.0;"));
    assert!(!text.contains("q[0],q[2]") && !text.contains("q[2],q[0]"));
}

#[test]
fn verify_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let (t, c) = (path(dir.path(), "t.txt"), path(dir.path(), "c.txt"));
    fs::write(&t, "qubits 3\ncx 0 2\n").unwrap();
    fs::write(&c, "qubits 3\ncx 0 2\n").unwrap();
    let v = run(&[
        "verify",
        "--arch",
        "line-3",
        "--tableau",
        &t,
        "--circuit",
        &c,
    ]);
    assert!(!v.status.success());
    assert!(stdout(&v).contains("violation: gate 0 cx 0 2"));

    fs::write(&c, "qubits 3\nh 0\n").unwrap();
    let v = run(&[
        "verify",
        "--arch",
        "line-3",
        "--tableau",
        &t,
        "--circuit",
        &c,
    ]);
    assert!(!v.status.success());
    assert!(stdout(&v).contains("mismatch"));
}

#[test]
fn arch_commands() {
    let list = stdout(&run(&["arch", "list"]));
    for name in [
        "quito",
        "nairobi",
        "guadalupe",
        "mumbai",
        "ithaca",
        "brisbane",
    ] {
        assert!(list.lines().any(|l| l == name), "{name} missing");
    }
    let show = stdout(&run(&["arch", "show", "quito"]));
    assert!(show.contains("vertices: 5"));
    assert!(show.contains("edges: 4"));
    assert!(show.contains("diameter: 3"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["arch", "show", "line-4", "--json"]))).unwrap();
    assert_eq!(json["num_qubits"], 4);
    let bad = run(&["arch", "show", "nowhere"]);
    assert!(!bad.status.success());
}

#[test]
fn bench_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let (out, summary) = (path(dir.path(), "r.csv"), path(dir.path(), "s.csv"));
    let args = [
        "bench",
        "--arch",
        "quito",
        "--gates",
        "10:30:10",
        "--trials",
        "3",
        "--seed",
        "42",
        "--out",
        &out,
        "--summary",
        &summary,
    ];
    assert!(run(&args).status.success());
    let rows = fs::read_to_string(&out).unwrap();
    let mut lines = rows.lines();
    assert_eq!(
        lines.next().unwrap(),
        "arch,input_gates,trial,h,s,cx,cx_fc,wall_time_ms"
    );
    assert_eq!(lines.count(), 9);
    assert_eq!(fs::read_to_string(&summary).unwrap().lines().count(), 4);

    // same seed, same counts
    let strip = |text: &str| {
        text.lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect::<Vec<_>>()
    };
    assert!(run(&args).status.success());
    assert_eq!(strip(&rows), strip(&fs::read_to_string(&out).unwrap()));
}

#[test]
fn bench_rejects_bad_ranges() {
    let r = run(&["bench", "--arch", "quito", "--gates", "30:10"]);
    assert!(!r.status.success());
    let r = run(&["bench", "--gates", "10"]);
    assert!(!r.status.success());
}
