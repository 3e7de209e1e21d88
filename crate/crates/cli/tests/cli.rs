use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn meadow(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_meadow"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout)
            .unwrap()
            .trim_end()
            .to_string(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let run = meadow(&all);
    (
        run.code,
        serde_json::from_str(&run.stdout).expect("json output"),
    )
}

#[test]
fn parse_echoes_canonical_form() {
    let r = meadow(&["parse", "((x) * (x^-1))", "--sig", "iamd"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "x * x^-1"));
    let r = meadow(&["parse", "x + 1 + 1", "--numerals", "structural"]);
    assert_eq!(r.stdout, "x + 1 + 1");
    let r = meadow(&["parse", "(1 + 1) * inv(x)", "--numerals", "decimal"]);
    assert_eq!(r.stdout, "2 * x^-1");
}

#[test]
fn parse_reports_signature_and_syntax_errors() {
    let r = meadow(&["parse", "x - 1"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("1:3"), "{}", r.stderr);
    let r = meadow(&["parse", "0 * x", "--sig", "iamd"]);
    assert_eq!(r.code, 2);
    let (code, v) = structured(&["parse", "3 / 0"]);
    assert_eq!(code, 0);
    assert_eq!(v["signatures"], serde_json::json!(["dmd", "damdz"]));
}

#[test]
fn normalize_forms() {
    let cases = [
        (
            &["normalize", "x + y^-1", "--sig", "iamd"][..],
            "(x*y + 1) / y",
        ),
        (
            &["normalize", "(1 + 1)^-1 * (1 + 1 + 1 + 1)", "--sig", "iamd"],
            "2",
        ),
        (
            &["normalize", "(1 + 1 + 1) * (1 + 1)^-1", "--sig", "iamd"],
            "3/2",
        ),
        (&["normalize", "0^-1 * x", "--sig", "iamdz"], "0"),
        (&["normalize", "2 / 4", "--sig", "damdz"], "1/2"),
        (&["normalize", "-(1 + 1)^-1", "--sig", "imd"], "-1/2"),
    ];
    for (args, expected) in cases {
        let r = meadow(args);
        assert_eq!((r.code, r.stdout.as_str()), (0, expected), "{args:?}");
    }
}

#[test]
fn eval_exact_and_undefined() {
    let r = meadow(&["eval", "x^-1 + y", "--assign", "x=1/2,y=3"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "5"));
    let r = meadow(&["eval", "x^-1", "--assign", "x=0"]);
    assert_eq!(r.stdout, "0");
    let r = meadow(&["eval", "x^-1", "--assign", "x=0", "--punch", "inv0"]);
    assert_eq!((r.code, r.stdout.as_str()), (3, "undefined"));
    let r = meadow(&["eval", "0 / 0", "--punch", "divnz0"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "0"));
    let r = meadow(&["eval", "1 / 0", "--punch", "divall0"]);
    assert_eq!(r.code, 3);
    let r = meadow(&["eval", "x", "--assign", "x=-1", "--carrier", "pos"]);
    assert_eq!(r.code, 2);
}

#[test]
fn decide_verdicts_and_exit_codes() {
    let (code, v) = structured(&["decide", "(x * y)^-1", "x^-1 * y^-1", "--theory", "iamd"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["evidence"]["kind"], "normals");

    let (code, v) = structured(&["decide", "x * x^-1", "1", "--theory", "ratiaz-gil"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["evidence"]["assignment"]["x"], "0");

    let r = meadow(&[
        "decide",
        "(1 + x^2 + y^2) * (1 + x^2 + y^2)^-1",
        "1",
        "--theory",
        "ratiaz-gil",
    ]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("true"));

    let r = meadow(&["decide", "x / y", "x * (1 / y)", "--theory", "ratdaz-gil"]);
    assert_eq!(r.code, 0);
    let r = meadow(&["decide", "x / x", "1", "--theory", "damd"]);
    assert_eq!(r.code, 0);
    let r = meadow(&["decide", "2 / 4", "1 / 3", "--theory", "closed:damdz"]);
    assert_eq!(r.code, 1);
    let r = meadow(&["decide", "x", "y", "--theory", "cr"]);
    assert_eq!(r.code, 2);
}

#[test]
fn decide_is_deterministic_under_a_seed() {
    let args = [
        "decide",
        "x * y + 1",
        "x + y",
        "--theory",
        "iamd",
        "--seed",
        "42",
    ];
    assert_eq!(meadow(&args).stdout, meadow(&args).stdout);
}

#[test]
fn size_guardrail() {
    let r = meadow(&[
        "decide",
        "(x + y + z + w)^12",
        "(w + x + y + z)^12",
        "--theory",
        "iamd",
        "--max-monomials",
        "10",
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("10"), "{}", r.stderr);
}

#[test]
fn defined_classes() {
    for (expr, class) in [
        ("(1 + 1)^-1", "nz"),
        ("0 * 1^-1", "def"),
        ("0^-1", "outside"),
        ("x", "def"),
        ("x^-1", "outside"),
    ] {
        let r = meadow(&["defined", expr]);
        assert_eq!((r.code, r.stdout.as_str()), (0, class), "{expr}");
    }
}

#[test]
fn translate_both_ways() {
    let r = meadow(&["translate", "x / (y + 1)", "--to", "inv"]);
    assert_eq!(r.stdout, "x * (y + 1)^-1");
    let r = meadow(&["translate", "x^-1", "--to", "div"]);
    assert_eq!(r.stdout, "1 / x");
    let r = meadow(&["translate", "x / y^-1", "--to", "inv"]);
    assert_eq!(r.code, 2);
}

#[test]
fn help_documents_the_grammar() {
    let r = meadow(&["--help"]);
    assert!(r.stdout.contains("left-associative"));
}
