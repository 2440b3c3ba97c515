use std::path::PathBuf;
use std::process::{Command, Output};

const EX43: &str = "-(x+y+4)/((x^2+2*x+2*x*y-1+2*y+y^2)*(x^2+2*x*y+y^2-2))";
const EX44: &str = "(-x^4+y)/((x^2+y^2)*x^3*(x-2))";

fn bisum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bisum"))
        .args(args)
        .output()
        .expect("run bisum")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn decide_summable_text() {
    let o = bisum(&["decide", EX43]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("summable\n"));
    assert!(s.contains("g = "));
    assert!(s.contains("h = "));
}

#[test]
fn decide_not_summable_text() {
    let o = bisum(&["decide", EX44]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "not summable\nwitness: d = y^2 + x^2, j = 1, reason = criterion-1-failed\n"
    );
}

#[test]
fn json_goldens() {
    assert_eq!(
        stdout(&bisum(&["--json", "decide", EX43])),
        golden("decide_summable.json")
    );
    assert_eq!(
        stdout(&bisum(&["--json", "--transcript", "decide", EX44])),
        golden("decide_nonsummable_transcript.json")
    );
    let f = "2*x^2+2*x*y+y^2+y+1";
    let g = "2*x^2+2*x*y+y^2+2*x+y+1";
    assert_eq!(
        stdout(&bisum(&["--json", "disp", f, g])),
        golden("disp_quadratic_pair.json")
    );
}

#[test]
fn json_certificate_checks_out() {
    let o = bisum(&["--json", "certify", EX43]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let g = bisum_core::expr::parse_ratfunc(v["g"].as_str().unwrap()).unwrap();
    let h = bisum_core::expr::parse_ratfunc(v["h"].as_str().unwrap()).unwrap();
    let f = bisum_core::expr::parse_ratfunc(EX43).unwrap();
    assert!(bisum_core::decide::verify(&f, &g, &h));
}

#[test]
fn batch_mode() {
    let dir = std::env::temp_dir().join(format!("bisum-batch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("in.txt");
    std::fs::write(&path, format!("{EX43}\n{EX44}\n1/x\n\nx^(-1)\n")).unwrap();
    let o = bisum(&["decide", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), golden("batch.jsonl"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_commands() {
    let f = "2*x^2+2*x*y+y^2+y+1";
    let g = "2*x^2+2*x*y+y^2+2*x+y+1";
    assert_eq!(stdout(&bisum(&["disp", f, g])), "{(-1,1)}\n");
    assert_eq!(stdout(&bisum(&["stab", "x^2+2*x*y+y^2-2"])), "(1,1)\n");
    assert_eq!(stdout(&bisum(&["stab", "x^2+y^2"])), "trivial\n");
    assert_eq!(
        stdout(&bisum(&["factor", "x^2-y^2"])),
        "-1 * (y - x) * (y + x)\n"
    );
    assert_eq!(
        stdout(&bisum(&["gosper", "x^2+x", "1"])),
        "A = x\nB = x + 2\nC = 1\n"
    );
    assert_eq!(
        stdout(&bisum(&[
            "residues",
            "1/(x^2-2)+1/(x^2-4*x+2)",
            "--var",
            "x"
        ])),
        "(x^2 - 2)^1: 2\nnot summable\n"
    );
    let o = bisum(&["kernel", "1", "1", "1", "1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("p = "));
    let r = stdout(&bisum(&["reduce", EX43]));
    assert_eq!(
        r,
        "g = (y + x + 1)/(y^2 + 2*x*y + x^2 - 2)\nh = 0\nr += (1) / (y^2 + 2*x*y + x^2 - 2)\n"
    );
}

#[test]
fn usage_and_parse_errors() {
    let o = bisum(&["decide", "x^(-1)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 2"));
    assert_eq!(bisum(&["decide"]).status.code(), Some(2));
    assert_eq!(bisum(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bisum(&["decide", "1/(x-x)"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = bisum(&["--json", "--transcript", "decide", EX43]);
    let b = bisum(&["--json", "--transcript", "decide", EX43]);
    assert_eq!(a.stdout, b.stdout);
}
