use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn netmate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netmate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn compiled(dir: &TempDir, values: &str, theorem: &str) -> PathBuf {
    let input = dir
        .path()
        .join(format!("{}-{theorem}.txt", values.replace(' ', "_")));
    fs::write(&input, values).unwrap();
    let out = dir
        .path()
        .join(format!("{}-{theorem}.json", values.replace(' ', "_")));
    let o = netmate(&[
        "compile",
        path(&input),
        "--theorem",
        theorem,
        "--out",
        path(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    out
}

#[test]
fn compile_reports_the_manifest() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("a.txt");
    fs::write(&input, "2 2\n").unwrap();
    let out = dir.path().join("s.json");
    let o = netmate(&[
        "compile",
        path(&input),
        "--theorem",
        "1",
        "--out",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2t=4"), "{text}");
    assert!(text.contains("c=0"), "{text}");
    assert!(text.contains("target=4"), "{text}");

    fs::write(&input, "1 2 3 2").unwrap();
    let o = netmate(&[
        "compile",
        path(&input),
        "--theorem",
        "2",
        "--out",
        path(&out),
    ]);
    assert!(stdout(&o).contains("target=12"));
}

#[test]
fn compile_is_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("a.txt");
    fs::write(&input, "1 2 3 2").unwrap();
    let a = netmate(&["compile", path(&input), "--theorem", "1"]);
    let b = netmate(&["compile", path(&input), "--theorem", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn compile_rejections() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("a.txt");
    fs::write(&input, "1 2 3").unwrap();
    let o = netmate(&["compile", path(&input), "--theorem", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("odd cardinality"));

    fs::write(&input, "1 x").unwrap();
    let o = netmate(&["compile", path(&input), "--theorem", "1"]);
    assert_eq!(o.status.code(), Some(1));

    let o = netmate(&["compile", path(&input), "--theorem", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn solve_and_replay() {
    let dir = TempDir::new().unwrap();
    let state = compiled(&dir, "2 2", "1");
    let witness = dir.path().join("w.json");
    let o = netmate(&[
        "solve",
        path(&state),
        "--mate",
        "1",
        "--out",
        path(&witness),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("WINNABLE"), "{text}");
    assert!(text.contains("PlayCard(Escher)"));
    assert!(text.contains("nodes explored:"));

    let o = netmate(&["replay", path(&state), path(&witness)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("final status: RunnerWin"));

    let state = compiled(&dir, "1 3", "1");
    let o = netmate(&["solve", path(&state), "--mate", "1", "--no-memo"]);
    assert!(stdout(&o).starts_with("NOT WINNABLE"));

    let state = compiled(&dir, "2 2", "2");
    let o = netmate(&["solve", path(&state), "--mate", "2"]);
    assert!(stdout(&o).starts_with("WINNABLE (mate in 2)"));
}

#[test]
fn solve_rejects_the_wrong_side() {
    let dir = TempDir::new().unwrap();
    let state = compiled(&dir, "2 2", "2");
    let o = netmate(&["solve", path(&state), "--mate", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn replay_reports_the_illegal_step() {
    let dir = TempDir::new().unwrap();
    let state = compiled(&dir, "2 2", "1");
    let witness = dir.path().join("w.json");
    fs::write(
        &witness,
        r#"{"schema_version": 1, "mode": "1", "actions": ["gain_credit", "draw_card"]}"#,
    )
    .unwrap();
    let o = netmate(&["replay", path(&state), path(&witness)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("step 1"), "{}", stderr(&o));

    fs::write(
        &witness,
        r#"{"schema_version": 1, "mode": "1", "actions": []}"#,
    )
    .unwrap();
    let o = netmate(&["replay", path(&state), path(&witness)]);
    assert!(stdout(&o).contains("final status: in progress"));

    fs::write(&witness, "not json").unwrap();
    let o = netmate(&["replay", path(&state), path(&witness)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_small_campaigns() {
    let o = netmate(&[
        "verify",
        "--max-n",
        "2",
        "--max-value",
        "3",
        "--mate",
        "2",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("6/6 agree"), "{text}");
    assert!(text.contains("invariants hold"));

    let o = netmate(&[
        "verify",
        "--max-n",
        "20",
        "--max-value",
        "50",
        "--mate",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds the limit"));
}

#[test]
fn render_shows_the_board() {
    let dir = TempDir::new().unwrap();
    let state = compiled(&dir, "2 2", "1");
    let o = netmate(&["render", path(&state)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Ice Wall [str 4"));
    assert_eq!(text.matches("Enigma").count(), 10);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(netmate(&[]).status.code(), Some(1));
    assert_eq!(netmate(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(netmate(&["--help"]).status.code(), Some(0));
    assert_eq!(netmate(&["--version"]).status.code(), Some(0));
    assert_eq!(
        netmate(&["render", "/nonexistent/state.json"])
            .status
            .code(),
        Some(1)
    );
}
