use rigid_solvable::cli::run;
use rigid_solvable::equations::SolutionSet;
use rigid_solvable::free_solvable::{FreeSolvable, SolvableElement};
use rigid_solvable::verify::CheckReport;
use serde_json::Value;

fn rigid(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("rigid").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("rigid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn normalize_commutator() {
    let (code, out, _) = rigid(&["--json", "normalize", "-m", "2", "-n", "2", "x1 x2 X1 X2"]);
    assert_eq!(code, 0);
    let e = SolvableElement::from_json(&serde_json::from_str(&out).unwrap()).unwrap();
    assert!(!e.is_trivial());
    // x1 x2 X1 X2 is [X1, X2] under [x,y] = x^-1 y^-1 x y
    let g = FreeSolvable::new(2, 2);
    assert_eq!(e, g.normalize(&"[X1,X2]".parse().unwrap()).unwrap());
    let (_, text, _) = rigid(&["normalize", "-m", "2", "-n", "2", "x1 x2 X1 X2"]);
    assert_eq!(text.trim(), "[1 | -1*b1^-1*b2^-1 + 1*b1^-1, 1*b1^-1*b2^-1 + -1*b2^-1]");
    let (_, text, _) = rigid(&["normalize", "-m", "2", "-n", "2", "X1 X2 x1 x2"]);
    assert_eq!(text.trim(), "[1 | -1*1 + 1*b2, 1*1 + -1*b1]");
}

#[test]
fn fox_of_the_commutator() {
    let (code, out, _) = rigid(&["fox", "-m", "2", "-n", "2", "[x1,x2]"]);
    assert_eq!(code, 0);
    assert_eq!(out, "-1*1 + 1*b2\n1*1 + -1*b1\n");
}

#[test]
fn membership() {
    assert_eq!(rigid(&["member", "-m", "2", "-n", "2", "-i", "2", "x1 x2 X1 X2"]).1, "true\n");
    assert_eq!(rigid(&["member", "-m", "2", "-n", "2", "-i", "2", "x1 x2"]).1, "false\n");
    assert_eq!(rigid(&["member", "-n", "3", "-i", "3", "--method", "commutator", "[[x1,x2],[x1,x2]^x1]"]).1, "true\n");
}

#[test]
fn empty_word_is_identity() {
    assert_eq!(rigid(&["normalize", "-m", "2", "-n", "2", ""]), (0, "1\n".into(), String::new()));
}

#[test]
fn arithmetic_subcommands() {
    assert_eq!(rigid(&["mul", "-n", "1", "x1 x2", "X1"]).1, "b2\n");
    assert_eq!(rigid(&["comm", "-n", "2", "x1", "x2"]).1, rigid(&["normalize", "-n", "2", "[x1,x2]"]).1);
    assert_eq!(rigid(&["project", "-n", "3", "-k", "1", "x1 x1 x2"]).1, "b1^2*b2\n");
    assert_eq!(rigid(&["sigma", "-n", "3", "x2 x1"]).1.lines().last(), Some("= w-bar - 1"));
    assert_eq!(rigid(&["pdim", "-m", "2", "x1", "x2"]).1, "(2,1)\n");
    assert_eq!(rigid(&["pdim", "--family", "wreath", "-m", "1", "-n", "1"]).1, "(1,1)\n");
    assert_eq!(rigid(&["--json", "pdim", "--family", "free-solvable", "-m", "3", "-n", "3"]).1, "[3,2,2]\n");
    let (code, out, _) = rigid(&["--json", "wreath-embed", "-n", "2", "[x1,x2]"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["level"], 1);
}

#[test]
fn rank_files() {
    let ints = temp("ints.json", "[[2, 4], [4, 8], [0, 6]]");
    assert_eq!(rigid(&["rank", &ints]).1, "rank 2\ninvariant factors (2,6)\n");
    let laurent = temp(
        "laurent.json",
        r#"[[[{"exps":[1],"num":1,"den":1}], [{"exps":[0],"num":-1,"den":1}]],
            [[{"exps":[2],"num":1,"den":1}], [{"exps":[1],"num":-1,"den":1}]]]"#,
    );
    assert_eq!(rigid(&["--json", "rank", &laurent]).1, "{\"rank\":1}\n");
}

#[test]
fn solve_round_trips() {
    let file = temp("system.txt", "# centralizer of the commutator\n[$1, [x1,x2]]\n");
    let (code, out, _) = rigid(&["--json", "solve", "-m", "2", "-n", "2", "-r", "4", &file]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 9);
    let sols = SolutionSet::from_json(&v).unwrap();
    assert_eq!(sols.to_json(), v);
}

#[test]
fn verify_reports() {
    let (code, out, _) = rigid(&["--json", "verify", "--samples", "5", "--no-timing"]);
    assert_eq!(code, 0);
    let reports: Vec<CheckReport> = serde_json::from_str(&out).unwrap();
    assert_eq!(reports.len(), 9);
    assert!(reports.iter().all(|r| r.passed() && r.elapsed_ms == 0));
    let (_, only, _) = rigid(&["--json", "verify", "--only", "lex_drop", "--no-timing"]);
    assert_eq!(serde_json::from_str::<Vec<CheckReport>>(&only).unwrap()[0].name, "lex_drop");
}

#[test]
fn deterministic_output() {
    for args in [
        &["--json", "normalize", "-n", "3", "[[x1,x2],[x1,x2]^x2] x1"][..],
        &["--json", "verify", "--seed", "9", "--samples", "4", "--no-timing"][..],
        &["solve", "-r", "3", "/dev/null"][..],
    ] {
        assert_eq!(rigid(args), rigid(args));
    }
}

#[test]
fn exit_codes() {
    let (code, _, err) = rigid(&["bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("bogus"));
    let (code, _, err) = rigid(&["normalize", "x1 [x2"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column"), "{err}");
    let file = temp("bad.txt", "[$1, x1]\n$1 x3 (\n");
    let (code, _, err) = rigid(&["solve", &file]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let file = temp("cap.txt", "$1 $2 $3\n");
    assert_eq!(rigid(&["solve", "-r", "3", "--max-assignments", "1000", &file]).0, 3);
    assert_eq!(rigid(&["solve", "-r", "6", "--ball-cap", "100", &file]).0, 3);
    assert_eq!(rigid(&["normalize", "-m", "2", "x3"]).0, 1);
    assert_eq!(rigid(&["--help"]).0, 0);
}
