use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn harmonizer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmonizer"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn harmonize(input: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "--input",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    harmonizer(&args)
}

#[test]
fn chart_c_major() {
    let o = harmonizer(&["chart", "--key", "C"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 24);
    let center = text.lines().nth(12).unwrap();
    assert!(center.contains("A\ta\t[C]\tc\tD#\td#"), "{center}");
}

#[test]
fn chart_centers() {
    let f = stdout(&harmonizer(&["chart", "--key", "F"]));
    assert_eq!(f.matches("[F]").count(), 1);
    let a = stdout(&harmonizer(&["chart", "--key", "A", "--mode", "minor"]));
    assert!(a.lines().nth(12).unwrap().contains("\tA\t[a]\t"));
}

#[test]
fn simple2_text_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = harmonize(
        &fixture("happy_birthday.musicxml"),
        dir.path(),
        &["--methods", "simple2", "--formats", "text"],
    );
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("simple2.txt")).unwrap();
    let tokens: Vec<&str> = text.split_whitespace().skip(1).take(6).collect();
    assert_eq!(tokens, ["Am", "Am", "Bb", "Am", "Dm", "C"]);
    assert_eq!(stdout(&o), text);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn prefer_sharps() {
    let dir = tempfile::tempdir().unwrap();
    let o = harmonize(
        &fixture("happy_birthday.musicxml"),
        dir.path(),
        &["--methods", "simple2", "--prefer-sharps"],
    );
    assert!(stdout(&o).starts_with("simple2: Am Am A# Am"));
}

#[test]
fn json_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = harmonize(
        &fixture("fur_elise.musicxml"),
        dir.path(),
        &["--methods", "locrian", "--formats", "json"],
    );
    assert!(o.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("locrian.json")).unwrap())
            .unwrap();
    assert_eq!(v["key"], "A");
    assert_eq!(v["mode"], "minor");
    assert_eq!(v["harmonizations"][0]["method"], "locrian");
    assert_eq!(v["harmonizations"][0]["chords"][0]["chord"], "A#");
}

#[test]
fn mode_override_moves_to_relative_minor() {
    let dir = tempfile::tempdir().unwrap();
    let o = harmonize(
        &fixture("happy_birthday.musicxml"),
        dir.path(),
        &["--methods", "lydian", "--mode", "minor"],
    );
    assert!(stdout(&o).starts_with("lydian: D D E7 E7"));
}

#[test]
fn seed_only_moves_stochastic_methods() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str| {
        let o = harmonize(
            &fixture("happy_birthday.musicxml"),
            dir.path(),
            &["--seed", seed],
        );
        assert!(o.status.success());
        stdout(&o).lines().map(String::from).collect::<Vec<_>>()
    };
    let (a, b) = (run("1"), run("2"));
    assert_eq!(a.len(), 10);
    let stochastic = ["schoenberg-min", "schoenberg-max", "giant-steps"];
    let mut changed = 0;
    for (x, y) in a.iter().zip(&b) {
        if stochastic.iter().any(|m| x.starts_with(&format!("{m}:"))) {
            changed += usize::from(x != y);
        } else {
            assert_eq!(x, y);
        }
    }
    assert!(changed > 0);
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("happy_birthday.musicxml");
    assert_eq!(
        harmonize(&input, dir.path(), &["--methods", ""])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        harmonize(&input, dir.path(), &["--methods", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        harmonize(&input, dir.path(), &["--formats", "pdf"])
            .status
            .code(),
        Some(2)
    );
    assert!(!harmonizer(&["--out", dir.path().to_str().unwrap()])
        .status
        .success());
}

#[test]
fn parse_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.musicxml");
    std::fs::write(&bad, "<score-partwise><part><measure>").unwrap();
    let o = harmonize(&bad, &dir.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.musicxml"));

    let odd = dir.path().join("melody.mid");
    std::fs::write(&odd, "").unwrap();
    let o = harmonize(&odd, dir.path(), &[]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--kind"));
}

#[test]
fn pitch_stream_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("take.txt");
    let mut body = vec!["440"; 100];
    body.extend(vec!["523.25"; 100]);
    std::fs::write(&input, format!("4 A minor 60 200 {}", body.join(" "))).unwrap();
    let o = harmonize(
        &input,
        &dir.path().join("out"),
        &["--methods", "simple2", "--median-window", "3"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "simple2: F Am\n");
}
