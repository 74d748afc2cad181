use std::io::Write;
use std::process::{Command as Process, Stdio};

use matchfix::fixtures::{CHESS_THREE, FIVE_TEAM_COALITION, LINEAR_FOUR};
use matchfix_cli::{run_text, Command, Flags, OracleFormat, EXIT_ERROR, EXIT_NO, EXIT_YES};

fn flags() -> Flags {
    Flags::default()
}

fn target(t: usize) -> Flags {
    Flags { target: Some(t), ..flags() }
}

fn json(f: Flags) -> Flags {
    Flags { json: true, ..f }
}

fn doc(command: Command, text: &str, f: Flags) -> (i32, serde_json::Value) {
    let (code, out) = run_text(command, text, &json(f)).expect("runs");
    (code, serde_json::from_str(&out).expect("valid json"))
}

#[test]
fn rr_min_on_five_team_fixture() {
    let (code, v) = doc(Command::RrMin, FIVE_TEAM_COALITION, target(0));
    assert_eq!(code, EXIT_YES);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["min_count"], 1);
    assert_eq!(v["plan"].as_array().unwrap().len(), 1);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "rr-min");
}

#[test]
fn cup_fair_winner_with_empty_coalition() {
    let text = LINEAR_FOUR.replace("coalition 0", "coalition");
    let (code, v) = doc(Command::Cup, &text, target(0));
    assert_eq!(code, EXIT_YES);
    assert_eq!(v["min_count"], 0);
    assert!(v["plan"].as_array().unwrap().is_empty());
    let (code, v) = doc(Command::Cup, &text, target(3));
    assert_eq!(code, EXIT_NO);
    assert_eq!(v["verdict"], false);
    assert!(v["min_count"].is_null());
}

#[test]
fn non_form_model_is_rejected() {
    let text = "teams 2\ncoalition 0\nmodel 3 3:0 1:1 0:3\ngame 0 1 3 0\n";
    let (code, msg) = run_text(Command::RrConstructive, text, &target(1)).unwrap_err();
    assert_eq!(code, EXIT_ERROR);
    assert_eq!(msg, "scoring model not of form S={(i,n-i)}");
}

#[test]
fn every_command_answers_on_the_linear_fixture() {
    let cases = [
        (Command::Cup, target(2), EXIT_YES),
        (Command::CupMin, target(3), EXIT_NO),
        (Command::CupDestructive, Flags { lose: Some(0), ..flags() }, EXIT_YES),
        (Command::RrConstructive, target(1), EXIT_YES),
        (Command::RrDestructive, Flags { lose: Some(0), ..flags() }, EXIT_YES),
        (Command::RrMin, target(3), EXIT_NO),
        (Command::Reseed, target(1), EXIT_YES),
        (Command::Delim, target(2), EXIT_YES),
        (Command::Delim, target(3), EXIT_NO),
        (Command::Oracle, target(2), EXIT_YES),
        (Command::Oracle, Flags { format: OracleFormat::Rr, ..target(1) }, EXIT_YES),
        (Command::Oracle, Flags { format: OracleFormat::Reseed, ..target(1) }, EXIT_YES),
        (Command::Oracle, Flags { format: OracleFormat::Delim, ..target(2) }, EXIT_YES),
        (Command::Oracle, Flags { format: OracleFormat::Delim, ..target(3) }, EXIT_NO),
    ];
    for (command, f, expected) in cases {
        let (code, v) = doc(command, LINEAR_FOUR, f.clone());
        assert_eq!(code, expected, "{command:?} {f:?}");
        assert_eq!(v["verdict"], expected == EXIT_YES);
    }
}

#[test]
fn chess_model_round_robin() {
    let (code, _) = run_text(Command::RrConstructive, CHESS_THREE, &target(2)).unwrap();
    assert_eq!(code, EXIT_YES);
    let (code, msg) = run_text(Command::RrMin, CHESS_THREE, &target(2)).unwrap_err();
    assert_eq!(code, EXIT_ERROR);
    assert!(msg.contains("win-loss"), "{msg}");
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(run_text(Command::Cup, LINEAR_FOUR, &flags()).unwrap_err().0, EXIT_ERROR);
    assert_eq!(run_text(Command::Cup, LINEAR_FOUR, &target(9)).unwrap_err().0, EXIT_ERROR);
    assert_eq!(run_text(Command::Cup, "teams 2\ngame 0 0 1 0\n", &target(0)).unwrap_err().0, EXIT_ERROR);
    let (code, msg) = run_text(Command::Cup, FIVE_TEAM_COALITION, &target(0)).unwrap_err();
    assert_eq!(code, EXIT_ERROR);
    assert!(msg.contains("power of two"), "{msg}");
    let bound = Flags { max_coalition: 0, ..target(1) };
    assert_eq!(run_text(Command::Reseed, LINEAR_FOUR, &bound).unwrap_err().0, EXIT_ERROR);
}

#[test]
fn structured_output_is_deterministic() {
    for command in [Command::RrMin, Command::RrConstructive, Command::Oracle] {
        let f = json(Flags { format: OracleFormat::Rr, ..target(0) });
        let a = run_text(command, FIVE_TEAM_COALITION, &f).unwrap();
        let b = run_text(command, FIVE_TEAM_COALITION, &f).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn binary_reads_stdin_and_sets_exit_status() {
    let mut child = Process::new(env!("CARGO_BIN_EXE_matchfix"))
        .args(["rr-min", "-", "--target", "0", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(FIVE_TEAM_COALITION.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["min_count"], 1);

    let missing = Process::new(env!("CARGO_BIN_EXE_matchfix"))
        .args(["cup", "/nonexistent/instance.txt", "--target", "0"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));

    let bad_flag = Process::new(env!("CARGO_BIN_EXE_matchfix")).args(["cup"]).output().unwrap();
    assert_eq!(bad_flag.status.code(), Some(2));
}
