mod common;

use std::process::{Command as Process, Output};

use tenstwist::cli::{parse_scenario, run, Command, Report, RunError, RunOptions};

use common::{read_scenario, scenario_path, SHIPPED};

fn bin(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_tenstwist"))
        .args(args)
        .output()
        .expect("run binary")
}

fn with_scenario(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = scenario_path(file);
    let mut args = vec![cmd, "--scenario", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    bin(&args)
}

fn machine(cmd: &str, file: &str) -> (Report, i32) {
    let out = with_scenario(cmd, file, &["--format", "machine"]);
    let report = Report::from_machine(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    (report, out.status.code().unwrap())
}

#[test]
fn twist_degree8_satisfied_with_sigma() {
    let (r, code) = machine("twist", "degree8.scn");
    assert_eq!(code, 0);
    assert_eq!(r.conclusion, "potential good reduction criterion satisfied");
    let sigma = r.twist.unwrap().sigma.unwrap();
    assert_eq!(sigma.cycles, "(1 2 3 4 5 6 7 8)");
    let c = r.criteria.unwrap();
    assert_eq!(c.index_bound, "5");
    assert_eq!(c.cyclic, Some(true));
    assert_eq!(c.mumford, Some(false));
}

#[test]
fn twist_text_output_prints_sigma() {
    let out = with_scenario("twist", "degree8.scn", &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("sigma: (1 2 3 4 5 6 7 8)"));
    assert!(text.contains("conclusion: potential good reduction criterion satisfied"));
}

#[test]
fn shipped_exit_codes() {
    let expected = [
        ("mumford-2n1.scn", 0),
        ("mumford-deg5.scn", 0),
        ("mumford-deg7.scn", 0),
        ("degree8.scn", 0),
        ("pel-singletons.scn", 1),
        ("outer-a3.scn", 1),
        ("twin-b2.scn", 0),
    ];
    for (file, code) in expected {
        let (r, got) = machine("twist", file);
        assert_eq!(got, code, "{file}");
        assert_eq!(r.exit_code, code, "{file}");
        // Exit code agrees with the verdict in the report.
        assert_eq!(r.criteria.unwrap().criterion_satisfied, code == 0, "{file}");
    }
}

#[test]
fn every_shipped_scenario_validates() {
    for file in SHIPPED {
        let (r, code) = machine("validate", file);
        assert_eq!(code, 0, "{file}");
        assert!(r.validation.unwrap().deligne.unwrap().valid, "{file}");
    }
}

#[test]
fn keylemma_500_trials_seed_42() {
    let out = bin(&["keylemma", "--trials", "500", "--seed", "42", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    let r = Report::from_machine(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let k = r.key_lemma.unwrap();
    assert_eq!((k.passed, k.trials), (500, 500));
    assert!(k.failures.is_empty());
}

#[test]
fn dims_of_corestrictions() {
    for (file, total) in [("mumford-2n1.scn", 8), ("mumford-deg5.scn", 32), ("mumford-deg7.scn", 128)] {
        let (r, code) = machine("dims", file);
        assert_eq!(code, 0);
        assert_eq!(r.dimensions.unwrap().total, total);
    }
}

#[test]
fn enumerate_respects_limits() {
    let out = with_scenario("enumerate", "degree8.scn", &["--format", "machine", "--max-output", "5"]);
    let r = Report::from_machine(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let e = r.enumeration.unwrap();
    assert_eq!(e.polymers.len(), 5);
    assert!(e.truncated);
    assert_eq!(e.max_output, 5);
}

#[test]
fn machine_report_round_trips() {
    for file in SHIPPED {
        let out = with_scenario("report", file, &["--format", "machine", "--trials", "10"]);
        let text = std::str::from_utf8(&out.stdout).unwrap();
        let r = Report::from_machine(text).unwrap();
        assert_eq!(r.schema_version, 1);
        assert_eq!(r.to_machine(), text, "{file}");
        let s = parse_scenario(&read_scenario(file)).unwrap();
        let direct = run(Command::Twist, Some(&s), &RunOptions::default()).unwrap();
        assert_eq!(r.criteria, direct.criteria, "{file}");
    }
}

#[test]
fn text_and_machine_agree() {
    let s = parse_scenario(&read_scenario("twin-b2.scn")).unwrap();
    let r = run(Command::Twist, Some(&s), &RunOptions::default()).unwrap();
    let text = r.to_text();
    let c = r.criteria.as_ref().unwrap();
    assert!(text.contains(&format!("index-bound              {}", c.index_bound)));
    for o in &r.twist.as_ref().unwrap().orbits {
        assert!(text.contains(&o.status));
    }
}

#[test]
fn invalid_input_exits_2() {
    let dir = std::env::temp_dir().join(format!("tenstwist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("family-e.scn", r#"{"components": [{"id": "1", "family": "E", "rank": 6}]}"#, "components[0].family"),
        ("syntax.scn", "{\"components\": [", "line 1"),
        ("dangling.scn", r#"{"components": [{"id": "1", "family": "A", "rank": 1}], "polymer": [["2:1"]]}"#, "polymer[0][0]"),
        ("rank.scn", r#"{"components": [{"id": "1", "family": "B", "rank": 1}]}"#, "components[0].rank"),
    ];
    for (name, body, location) in cases {
        let path = dir.join(name);
        std::fs::write(&path, body).unwrap();
        let out = bin(&["validate", "--scenario", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(location), "{name}: {err}");
    }
    let out = bin(&["validate", "--scenario", dir.join("missing.scn").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&["twist"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn missing_polymer_is_invalid_input() {
    let s = parse_scenario(r#"{"components": [{"id": "1", "family": "A", "rank": 1}]}"#).unwrap();
    let e = run(Command::Twist, Some(&s), &RunOptions::default()).unwrap_err();
    assert_eq!(e, RunError::MissingPolymer("twist"));
    // Enumeration needs no polymer.
    let r = run(Command::Enumerate, Some(&s), &RunOptions::default()).unwrap();
    assert_eq!(r.enumeration.unwrap().polymers.len(), 1);
}

#[test]
fn invalid_polymer_exits_1() {
    let text = r#"{
        "components": [{"id": "1", "family": "A", "rank": 1}, {"id": "2", "family": "A", "rank": 1}],
        "galois": [{"permutation": {"1": "2", "2": "1"}}],
        "polymer": [["1:1"]]
    }"#;
    let s = parse_scenario(text).unwrap();
    let r = run(Command::Validate, Some(&s), &RunOptions::default()).unwrap();
    assert_eq!(r.exit_code, 1);
    let v = r.validation.unwrap().polymer;
    let conditions: Vec<&str> = v.failures.iter().map(|f| f.condition.as_str()).collect();
    assert!(conditions.contains(&"galois-stable"));
    assert!(conditions.contains(&"covering"));
    let r = run(Command::Twist, Some(&s), &RunOptions::default()).unwrap();
    assert_eq!(r.exit_code, 1);
    assert_eq!(r.criteria.unwrap().perfectly_tens_twisted, None);
}

#[test]
fn anisotropy_flag_flips_pel_verdict() {
    let mut file = parse_scenario(&read_scenario("pel-singletons.scn")).unwrap().file;
    file.anisotropy.insert("1".into(), true);
    let s = tenstwist::cli::scenario::build_scenario(file).unwrap();
    let r = run(Command::Twist, Some(&s), &RunOptions::default()).unwrap();
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.twist.unwrap().orbits[0].status, "anisotropic");
}
