use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bicusp::boxes::Boxcode;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bicusp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const WHITEHEAD: [f64; 6] = [2.0, 1.0, 1.0, 0.0, 1.0, 0.0];

#[test]
fn verify_exit_codes() {
    let small = fixture("small_s.tree");
    let small = small.to_str().unwrap();
    let out = run(&["verify", "--tree", small, "--boxcode", "000000010010010010010010010010"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("status: pass\n"));
    // the default root is far too big for B0
    let out = run(&["verify", "--tree", small]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL 0 B0"), "{}", stdout(&out));

    let dir = tempfile::tempdir().unwrap();
    let truncated = write(&dir, "t.tree", "X\nB0\n");
    assert_eq!(code(&run(&["verify", "--tree", &truncated])), 2);
    let no_newline = write(&dir, "n.tree", "B0");
    assert_eq!(code(&run(&["verify", "--tree", &no_newline])), 2);
    assert_eq!(code(&run(&["verify", "--tree", "/nonexistent/tree"])), 2);
    assert_eq!(code(&run(&["verify", "--tree", small, "--boxcode", "01x"])), 2);
    assert_eq!(code(&run(&["verify", "--tree", small, "--jobs", "0"])), 2);
    assert_eq!(code(&run(&["verify"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn boxcode_flag_overrides_header() {
    let wh = fixture("whitehead.tree");
    let wh = wh.to_str().unwrap();
    assert_eq!(code(&run(&["verify", "--tree", wh])), 0);
    assert_eq!(code(&run(&["verify", "--tree", wh, "--boxcode", "000000010010010010010010010010"])), 1);
}

#[test]
fn holes_flag() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(&dir, "h.tree", "boxcode 000000010010010010010010010010\nX\nB0\nH\n");
    assert_eq!(code(&run(&["verify", "--tree", &t])), 1);
    let out = run(&["verify", "--tree", &t, "--allow-holes"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("status: pass-with-holes"));
}

#[test]
fn identify_checks_whitelist() {
    let m004 = fixture("m004_variety.tree");
    assert_eq!(code(&run(&["identify", "--tree", m004.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["verify", "--tree", m004.to_str().unwrap()])), 1);

    let dir = tempfile::tempdir().unwrap();
    let root = Boxcode::containing(WHITEHEAD, 100).unwrap();
    let t = write(&dir, "w.tree", &format!("boxcode {root}\nVgMGGMgN,gMGGMgN\n"));
    let out = run(&["identify", "--tree", &t]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not in relator whitelist"), "{}", stdout(&out));
    // main-mode certificate with a g-length 4 necklace
    let wh = fixture("whitehead.tree");
    assert_eq!(code(&run(&["identify", "--tree", wh.to_str().unwrap()])), 1);
}

#[test]
fn search_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let root = Boxcode::containing(WHITEHEAD, 42).unwrap().to_string();
    let mut texts = Vec::new();
    for jobs in ["1", "4"] {
        let out_path = dir.path().join(format!("s{jobs}.tree"));
        let out_path = out_path.to_str().unwrap();
        let out = run(&["search", "--boxcode", &root, "--jobs", jobs, "--out", out_path]);
        assert_eq!(code(&out), 0);
        assert!(stdout(&out).contains("holes: 0\n"));
        assert_eq!(code(&run(&["verify", "--tree", out_path])), 0);
        texts.push(std::fs::read_to_string(out_path).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    assert_eq!(texts[0], std::fs::read_to_string(fixture("whitehead.tree")).unwrap());
}

#[test]
fn search_reports_holes_and_rejects_bad_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("h.tree");
    let out_path = out_path.to_str().unwrap();
    let out = run(&["search", "--boxcode", "", "--max-depth", "2", "--out", out_path]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("holes: 4\n"), "{}", stdout(&out));
    assert_eq!(code(&run(&["verify", "--tree", out_path])), 1);
    assert_eq!(code(&run(&["verify", "--tree", out_path, "--allow-holes"])), 0);

    for bad in [
        vec!["--boxcode", "2"],
        vec!["--boxcode", "", "--g-max", "8"],
        vec!["--boxcode", "", "--max-depth", "121"],
        vec!["--boxcode", "0101", "--max-depth", "3"],
        vec!["--boxcode", "", "--mode", "fast"],
    ] {
        let mut args = vec!["search", "--out", out_path];
        args.extend(bad.iter().copied());
        assert_eq!(code(&run(&args)), 2, "{bad:?}");
    }
}

#[test]
fn eval_examples() {
    let out = run(&["eval", "--point", "i,1+i,2i", "--word", "gMGGMgN"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("g-length: 4\n"));
    let entry = |name: &str| -> (f64, f64) {
        let line = text.lines().find(|l| l.starts_with(&format!("{name}: "))).unwrap();
        let z = line[3..].strip_suffix('i').unwrap();
        let k = z.rfind(['+', '-']).unwrap();
        (z[..k].parse().unwrap(), z[k..].parse().unwrap())
    };
    for (name, want) in [("a", -1.0), ("b", 0.0), ("c", 0.0), ("d", -1.0)] {
        let (re, im) = entry(name);
        assert!((re - want).abs() <= 1e-12 && im.abs() <= 1e-12, "{name}: {re} {im}");
    }
    let out = run(&["eval", "--point", "i,1+i,2i", "--area"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "4\n"));
    let out = run(&["eval", "--point", "0.25,-1.5,2i", "--area"]);
    assert_eq!(stdout(&out), "4.5\n");

    assert_eq!(code(&run(&["eval", "--point", "i,1+i", "--area"])), 2);
    assert_eq!(code(&run(&["eval", "--point", "i,1+j,2i", "--area"])), 2);
    assert_eq!(code(&run(&["eval", "--point", "i,1+i,2i", "--word", "gMx"])), 2);
    assert_eq!(code(&run(&["eval", "--point", "i,0,2i", "--word", "g"])), 2);
    assert_eq!(code(&run(&["eval", "--point", "i,1+i,2i"])), 2);
}

#[test]
fn matchings_output() {
    let out = run(&["matchings", "--n", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 105);
    assert_eq!(stdout(&run(&["matchings", "--n", "2"])), "0-1,2-3\n0-2,1-3\n0-3,1-2\n");
    assert_eq!(code(&run(&["matchings", "--n", "0"])), 2);
    assert_eq!(code(&run(&["matchings", "--n", "13"])), 2);
}
