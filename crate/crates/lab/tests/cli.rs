use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sudoku_phase_lab::table::parse_csv;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sudoku-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    lab(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    let out = lab(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn body(path: &Path) -> String {
    let text = fs::read_to_string(path).unwrap();
    let (first, rest) = text.split_once('\n').unwrap();
    assert!(first.starts_with("# generated "));
    rest.to_string()
}

#[test]
fn generate_is_reproducible() {
    let args = ["generate", "--clues", "30", "--ensemble", "5", "--seed", "11"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    assert_eq!(a.lines().count(), 5);
    for line in a.lines() {
        assert_eq!(line.len(), 81);
        assert_eq!(line.chars().filter(|c| c.is_ascii_digit()).count(), 30);
    }
    assert_ne!(
        a,
        stdout(&["generate", "--clues", "30", "--ensemble", "5", "--seed", "12"])
    );
}

#[test]
fn one_shot_analyses_read_files() {
    let dir = tempfile::tempdir().unwrap();
    let puzzles = dir.path().join("p.txt");
    let unique = "53..7....6..195....98....6.8...6...34..8.3..17...2...6.6....28....419..5....8..79";
    fs::write(&puzzles, format!("{unique}\n# comment\nnot a puzzle\n")).unwrap();
    let p = puzzles.to_str().unwrap();

    let solved = stdout(&["solve", "--in", p, "--cap", "5"]);
    assert!(solved.starts_with("534678912672195348198342567"));
    assert!(solved.trim_end().ends_with("solutions=1"));

    let backbone = stdout(&["backbone", "--in", p]);
    assert_eq!(backbone.lines().nth(1), Some("0,30,51,51,1"));

    let lp_file = dir.path().join("m.lp");
    let lp = stdout(&["lp", "--in", p, "--export", lp_file.to_str().unwrap()]);
    assert!(lp.lines().nth(1).unwrap().starts_with("0,30,feasible,true,"));
    let model = fs::read_to_string(&lp_file).unwrap();
    assert!(model.contains("Subject To") && model.contains("Bounds") && model.trim_end().ends_with("End"));

    let hist = dir.path().join("h.csv");
    stdout(&["strategies", "--in", p, "--histogram", hist.to_str().unwrap()]);
    assert!(body(&hist).contains("sudoku-3,9,sudoku,30,clue_histogram,count,1,1,0"));

    assert!(stdout(&["entropy", "--in", p]).starts_with("entropy="));
}

#[test]
fn sweep_output_ignores_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        let status = code(&[
            "sweep",
            "--order",
            "2",
            "--clues",
            "0-16:4",
            "--ensemble",
            "40",
            "--seed",
            "5",
            "--metrics",
            "hardness,backbone,lp,entropy,strategies",
            "--cap",
            "1000",
            "--threads",
            threads,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(status, 0);
        body(&out)
    };
    let one = run("a.csv", "1");
    assert_eq!(one, run("b.csv", "4"));
    assert_eq!(one, run("c.csv", "1"));

    let rows = parse_csv(one.as_bytes()).unwrap();
    assert!(rows.iter().all(|r| r.spec_id == "sudoku-2" && r.master_seed == 5));
    let out = stdout(&[
        "critical",
        "--in",
        dir.path().join("a.csv").to_str().unwrap(),
        "--metric",
        "backtracks",
    ]);
    assert!(out.starts_with("backtracks,mean,argmax,"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["generate"]), 1);
    assert_eq!(code(&["generate", "--clues", "82"]), 1);
    assert_eq!(code(&["sweep", "--clues", "9-3", "--out", "/tmp/never.csv"]), 1);
    assert_eq!(
        code(&["sweep", "--clues", "10", "--metrics", "mood", "--out", "/tmp/never.csv"]),
        1
    );
    assert_eq!(code(&["solve"]), 1);

    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.txt");
    assert_eq!(code(&["solve", "--in", missing.to_str().unwrap()]), 2);

    let garbage = dir.path().join("garbage.txt");
    fs::write(&garbage, "hello\n").unwrap();
    assert_eq!(code(&["backbone", "--in", garbage.to_str().unwrap()]), 2);

    // two 1s in the first row
    let clash = dir.path().join("clash.txt");
    fs::write(&clash, format!("11{}\n", ".".repeat(79))).unwrap();
    assert_eq!(code(&["solve", "--in", clash.to_str().unwrap()]), 2);

    // rows are fine but column 9 cannot take any symbol
    let dead = dir.path().join("dead.txt");
    let mut cells = vec!['.'; 81];
    for (i, v) in "12345678".chars().enumerate() {
        cells[i] = v;
    }
    cells[9 * 4 + 8] = '9';
    fs::write(&dead, cells.iter().collect::<String>() + "\n").unwrap();
    assert_eq!(code(&["solve", "--in", dead.to_str().unwrap()]), 2);

    let table = dir.path().join("t.csv");
    fs::write(&table, "a,b\n1,2\n").unwrap();
    assert_eq!(
        code(&["critical", "--in", table.to_str().unwrap(), "--metric", "backtracks"]),
        2
    );

    let unwritable = dir.path().join("no/such/dir/out.txt");
    assert_eq!(
        code(&["generate", "--clues", "30", "--out", unwritable.to_str().unwrap()]),
        3
    );
}
