use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn workbench(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Runs with `--json -` and parses the report from standard output.
fn report(args: &[&str], cache: &Path) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--json", "-"]);
    let o = workbench(&all, cache);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", stdout(&o), stderr(&o)));
    (code(&o), v)
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn names(v: &Value) -> Vec<String> {
    v["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap().to_string()).collect()
}

#[test]
fn catalog_of_the_example() {
    let dir = tempfile::tempdir().unwrap();
    let (c, r) = report(&["--config", "example-a", "catalog"], dir.path());
    assert_eq!(c, 0);
    let cats = &r["catalogs"];
    assert_eq!(names(&cats["a"]).len(), 3);
    assert_eq!(names(&cats["b"]), vec!["K"]);
    let mut t = names(&cats["lambda"]);
    t.sort();
    assert_eq!(t, vec!["(0,K)", "(P1,0)", "(P1,K)", "(P2,0)", "(P2,K)", "(S1,0)"]);
    assert_eq!(cats["lambda"]["complete"], true);
}

#[test]
fn catalog_with_zero_bimodule() {
    let dir = tempfile::tempdir().unwrap();
    let text = workbench::EXAMPLE_A
        .replace("dims = [[1, 1]]", "dims = [[0, 0]]")
        .replace("right_action = [[[1]]]", "right_action = [[[]]]");
    let path = write_config(dir.path(), "split.toml", &text);
    let (c, r) = report(&["--config", &path, "catalog"], dir.path());
    assert_eq!(c, 0);
    assert_eq!(names(&r["catalogs"]["lambda"]).len(), 4);
}

#[test]
fn zero_dimension_cap_gives_empty_incomplete_catalogs() {
    let dir = tempfile::tempdir().unwrap();
    let (c, r) = report(&["--config", "example-a", "--dim-cap", "0", "catalog"], dir.path());
    assert_eq!(c, 0);
    for side in ["a", "b", "lambda"] {
        assert!(names(&r["catalogs"][side]).is_empty());
        assert_eq!(r["catalogs"][side]["complete"], false);
    }
    // Nothing can be decided on a truncated catalog.
    let (c, r) = report(&["--config", "example-a", "--dim-cap", "0", "verify", "transfer"], dir.path());
    assert_eq!(c, 2);
    assert!(!r["undecided"].as_array().unwrap().is_empty());
}

#[test]
fn check_pair_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = workbench(&["--config", "example-a", "check-pair", "--first", "inj", "--second", "inj"], dir.path());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let (c, r) = report(&["--config", "example-a", "check-pair", "--first", "P2", "--second", "P2"], dir.path());
    assert_eq!(c, 1);
    assert_eq!(r["verdict"], "fail");
    let witnesses = r["pairs"][0]["axiom_c"]["witnesses"].as_array().unwrap();
    assert!(witnesses.iter().any(|w| w.as_str().unwrap().contains("S1")), "{witnesses:?}");
    let o = workbench(&["--config", "example-a", "--budget-ext", "0", "check-pair", "--first", "inj", "--second", "inj"], dir.path());
    assert_eq!(code(&o), 2, "{}", stdout(&o));
}

#[test]
fn check_pair_over_the_triangular_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--config", "example-a", "check-pair", "--over", "lambda", "--first", "P(c,e)", "--second", "A(d,f)"];
    let (c, r) = report(&args, dir.path());
    assert_eq!(c, 0);
    assert_eq!(r["pairs"][0]["verdict"], "pass");
    let args = ["--config", "example-b", "check-pair", "--over", "lambda", "--first", "A(c,e)", "--second", "I(d,f)"];
    assert_eq!(report(&args, dir.path()).0, 0);
}

#[test]
fn unresolved_class_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = workbench(&["--config", "example-a", "check-pair", "--first", "Q9", "--second", "inj"], dir.path());
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("Q9"), "{}", stderr(&o));
    let o = workbench(&["--config", "example-a", "check-pair", "--first", "e", "--second", "inj"], dir.path());
    assert_eq!(code(&o), 4);
}

#[test]
fn verify_on_the_examples() {
    let dir = tempfile::tempdir().unwrap();
    let (c, r) = report(&["--config", "example-a", "--side", "right", "verify", "transfer"], dir.path());
    assert_eq!(c, 0);
    assert_eq!(r["theorems"][0]["verdict"], "pass");
    let (c, r) = report(&["--config", "example-b", "--side", "left", "verify", "transfer"], dir.path());
    assert_eq!(c, 0);
    assert_eq!(r["theorems"][0]["side"], "left");
    for theorem in ["converse", "perp", "vee-wedge"] {
        for config in ["example-a", "example-b"] {
            let o = workbench(&["--config", config, "verify", theorem], dir.path());
            assert_eq!(code(&o), 0, "{config} {theorem}: {}", stdout(&o));
        }
    }
    let (c, r) = report(&["--config", "example-a", "verify", "ext-formulas"], dir.path());
    assert_eq!(c, 0);
    let formulas = r["formulas"].as_array().unwrap();
    assert_eq!(formulas.len(), 4);
    assert!(formulas.iter().all(|f| f["verdict"] == "pass"));
}

#[test]
fn failed_hypotheses_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = workbench::EXAMPLE_A.replace("c = \"inj\"", "c = [\"P2\"]");
    let path = write_config(dir.path(), "bad.toml", &text);
    let (c, r) = report(&["--config", &path, "verify", "transfer"], dir.path());
    assert_eq!(c, 1);
    assert_eq!(r["theorems"][0]["verdict"], "hypothesis_failed");
}

#[test]
fn perp_and_construct() {
    let dir = tempfile::tempdir().unwrap();
    let (c, r) = report(&["--config", "example-a", "perp", "--class", "{P2}"], dir.path());
    assert_eq!(c, 0);
    assert_eq!(r["classes"][1]["members"].as_array().unwrap().len(), 3);
    let (c, r) = report(&["--config", "example-a", "--side", "left", "perp", "--class", "inj"], dir.path());
    assert_eq!(c, 0);
    let mut left: Vec<&str> = r["classes"][1]["members"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    left.sort();
    assert_eq!(left, vec!["P1", "P2", "S1"]);
    let (c, r) = report(&["--config", "example-b", "construct"], dir.path());
    assert_eq!(c, 0);
    assert_eq!(r["classes"].as_array().unwrap().len(), 6);
}

#[test]
fn reproduce_example_at_two_characteristics() {
    let dir = tempfile::tempdir().unwrap();
    let o = workbench(&["reproduce-example", "--p", "2", "--p", "3"], dir.path());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("6/6 class listings match, 2/2 verdicts match (p = 2)"), "{out}");
    assert!(out.contains("6/6 class listings match, 2/2 verdicts match (p = 3)"), "{out}");
}

#[test]
fn corrupted_cache_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let first = report(&["reproduce-example"], dir.path());
    let mut corrupted = 0;
    for e in std::fs::read_dir(dir.path()).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "json") {
            let text = std::fs::read_to_string(&p).unwrap();
            std::fs::write(&p, &text[..text.len() / 2]).unwrap();
            corrupted += 1;
        }
    }
    assert!(corrupted > 0);
    let o = workbench(&["reproduce-example", "--timings", "--json", "-"], dir.path());
    assert_eq!(code(&o), 0);
    let second: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(second["runtime"]["cache"], "disabled");
    let mut stripped = second.clone();
    stripped.as_object_mut().unwrap().remove("runtime");
    let mut first_echo = first.1.clone();
    // The echo differs only by the timings flag, which is not an option.
    first_echo["command"] = stripped["command"].clone();
    assert_eq!(first_echo, stripped);
    assert!(stderr(&o).contains("6/6 class listings match"));
}

#[test]
fn cache_status_is_reported_with_timings() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--config", "example-a", "--timings", "catalog"];
    let (_, r) = report(&args, dir.path());
    assert_eq!(r["runtime"]["cache"], "miss");
    let (_, r) = report(&args, dir.path());
    assert_eq!(r["runtime"]["cache"], "hit");
    let (_, r) = report(&["--config", "example-a", "catalog"], dir.path());
    assert!(r.get("runtime").is_none());
    let o = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(["--config", "example-a", "--no-cache", "--timings", "--json", "-", "catalog"])
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["runtime"]["cache"], "disabled");
}

#[test]
fn reports_are_deterministic() {
    let cold = tempfile::tempdir().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = ["--config", "example-a", "--seed", "7", "verify", "transfer", "--json"];
    let o = workbench(&[&args[..], &[a.to_str().unwrap()]].concat(), cold.path());
    assert_eq!(code(&o), 0);
    let o = workbench(&[&args[..], &[b.to_str().unwrap()]].concat(), cold.path());
    assert_eq!(code(&o), 0);
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let v: Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"]["name"], "verify");
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn invalid_configs_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (workbench::EXAMPLE_A.replace("p = 2", "p = 4"), "not a prime"),
        (workbench::EXAMPLE_A.replace("d = \"inj\"", "d = [\"P1\", \"Nope\"]"), "Nope"),
        (
            workbench::EXAMPLE_A.replace(
                "arrows = [{ label = \"a\", source = \"1\", target = \"2\" }]",
                "arrows = [{ label = \"a\", source = \"1\", target = \"1\" }]",
            ),
            "cycle",
        ),
        (workbench::EXAMPLE_A.replace("schema_version = 1", "schema_version = 9"), "schema_version"),
        (workbench::EXAMPLE_A.replace("[budgets]", "[budgets]\nhom_points = 0"), "hom_points"),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let path = write_config(dir.path(), &format!("bad{i}.toml"), text);
        let o = workbench(&["--config", &path, "catalog"], dir.path());
        assert_eq!(code(&o), 4, "{needle}");
        assert!(stderr(&o).contains(needle), "{needle}: {}", stderr(&o));
    }
    let o = workbench(&["--config", "/nonexistent/x.toml", "catalog"], dir.path());
    assert_eq!(code(&o), 4);
    let o = workbench(&["catalog"], dir.path());
    assert_eq!(code(&o), 4);
    let o = workbench(&["--config", "example-a", "verify", "nonsense"], dir.path());
    assert_eq!(code(&o), 4);
}

#[test]
fn configured_classes_resolve() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!(
        "{}\n[classes.tops]\nover = \"a\"\nmembers = [\"S1\", \"P1\"]\n\n[classes.pee]\nover = \"lambda\"\nmembers = \"P(c,e)\"\n",
        workbench::EXAMPLE_A
    );
    let path = write_config(dir.path(), "classes.toml", &text);
    let (c, r) = report(&["--config", &path, "check-pair", "--first", "tops", "--second", "inj"], dir.path());
    assert_eq!(c, 0, "{r}");
    let (c, _) = report(&["--config", &path, "check-pair", "--over", "lambda", "--first", "pee", "--second", "A(d,f)"], dir.path());
    assert_eq!(c, 0);
    let bad = format!("{}\n[classes.oops]\nover = \"lambda\"\nmembers = [\"(P9,K)\"]\n", workbench::EXAMPLE_A);
    let path = write_config(dir.path(), "oops.toml", &bad);
    let o = workbench(&["--config", &path, "catalog"], dir.path());
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("(P9,K)"), "{}", stderr(&o));
}
