use std::path::PathBuf;
use std::process::{Command, Output};

fn katores(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_katores")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn field<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.trim_start().strip_prefix(key).map(str::trim))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
}

#[test]
fn contou_carrere_example() {
    let o = katores(&["symbol", "--p", "5", "--N", "2", "--cc", "1-5*T^-1", "1-3*T"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "unit"), "16");
    assert_eq!(field(&out, "p_val"), "0");
}

#[test]
fn kato_example_is_minus_one() {
    let o = katores(&["symbol", "--p", "5", "--N", "3", "--kato", "T", "T-5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "unit"), "124");
    assert_eq!(field(&out, "p_val"), "0");
}

#[test]
fn tame_example() {
    let o = katores(&["symbol", "--p", "5", "--N", "1", "--tame", "t", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "value"), "2");
}

#[test]
fn symbol_json_is_canonical() {
    let o = katores(&["--format", "json", "symbol", "--p", "5", "--N", "2", "--cc", "1-5*T^-1", "1-3*T"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("\"coords\": [\n      \"16\"\n    ]"), "{out}");
}

#[test]
fn point_fixture_passes() {
    let o = katores(&["audit", &fixture("point_t_t_minus_5.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
}

#[test]
fn vertical_fixture_passes() {
    let o = katores(&["audit", &fixture("vertical_t_t_minus_1.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(field(&out, "T = 0"), "24 (mod p^2)");
    assert_eq!(field(&out, "T = 1"), "1 (mod p^2)");
    assert_eq!(field(&out, "T = ∞"), "24 (mod p^2)");
}

#[test]
fn global_fixtures_pass() {
    for name in ["global_q_t_t_minus_1.json", "global_f7.json"] {
        let o = katores(&["audit", &fixture(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn content_at_p_goes_through_the_point_audit() {
    let o = katores(&["audit", &fixture("point_content_at_p.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn corrupted_fixture_exits_one() {
    let o = katores(&["audit", &fixture("point_corrupted.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).trim_end().ends_with("FAIL"));
    let o = katores(&["audit", "--omit", "T = 1", &fixture("vertical_t_t_minus_1.json")]);
    // T = 1 contributes exactly 1, so dropping it is harmless
    assert_eq!(o.status.code(), Some(0));
    let o = katores(&["audit", "--omit", "T = 0", &fixture("vertical_t_t_minus_1.json")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for name in ["point_t_t_minus_5.json", "point_content_at_p.json", "global_f7.json"] {
        let a = katores(&["--format", "json", "audit", &fixture(name)]);
        let b = katores(&["--format", "json", "audit", &fixture(name)]);
        assert_eq!(a.stdout, b.stdout);
        let c = Command::new(env!("CARGO_BIN_EXE_katores"))
            .env("KATORES_THREADS", "1")
            .args(["--format", "json", "audit", &fixture(name)])
            .output()
            .unwrap();
        assert_eq!(a.stdout, c.stdout);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(katores(&["audit", &fixture("malformed.json")]).status.code(), Some(2));
    assert_eq!(katores(&["symbol", "--p", "5", "--N", "3", "--kato", "T", "(1+T)^-1"]).status.code(), Some(2));
    assert_eq!(katores(&["symbol", "--p", "5", "--N", "3", "--kato", "T"]).status.code(), Some(2));
    assert_eq!(katores(&["symbol", "--p", "4", "--N", "3", "--kato", "T", "T"]).status.code(), Some(3));
    assert_eq!(katores(&["symbol", "--p", "5", "--N", "3", "--kato", "T", "0"]).status.code(), Some(3));
    // the contou_carrere formula is only defined without a p-power prefactor
    assert_eq!(katores(&["symbol", "--p", "5", "--N", "3", "--cc", "5*T", "T"]).status.code(), Some(3));
}

#[test]
fn witt_and_prepare() {
    let o = katores(&["witt", "--p", "5", "--N", "2", "1-5*T^-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "f_-1"), "5");
    let o = katores(&["prepare", "--p", "5", "--N", "3", "5*T"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "f0"), "p^1 · 1");
    assert_eq!(field(&out, "a "), "T");
    assert_eq!(field(&out, "u "), "1");
    let o = katores(&["--format", "json", "prepare", "--p", "5", "--N", "3", "T^2 - T - 5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn windowed_input() {
    let o = katores(&["symbol", "--p", "5", "--N", "2", "--window", "-1:40", "--cc", "1-5*T^-1", "1-3*T"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "unit"), "16");
    let o = katores(&["symbol", "--p", "5", "--N", "2", "--window", "0:4", "--cc", "1-5*T^-1", "1-3*T"]);
    assert_eq!(o.status.code(), Some(3));
}
