use std::cell::RefCell;
use std::collections::BTreeMap;

use serde_json::Value;
use tropmap::{run, Env, Outcome, EXIT_FALSE, EXIT_INPUT, EXIT_OK};

#[derive(Default)]
struct Memory {
    files: RefCell<BTreeMap<String, String>>,
    vars: BTreeMap<String, String>,
}

impl Env for Memory {
    fn read_file(&self, path: &str) -> Result<String, String> {
        self.files.borrow().get(path).cloned().ok_or_else(|| format!("{path}: not found"))
    }
    fn write_file(&self, path: &str, contents: &str) -> Result<(), String> {
        self.files.borrow_mut().insert(path.into(), contents.into());
        Ok(())
    }
    fn var(&self, name: &str) -> Option<String> {
        self.vars.get(name).cloned()
    }
}

fn go(env: &Memory, args: &[&str], stdin: &str) -> Outcome {
    let args: Vec<String> = std::iter::once("tropmap").chain(args.iter().copied()).map(String::from).collect();
    run(&args, stdin, env)
}

fn report(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

fn example(env: &Memory, args: &[&str]) -> String {
    let mut a = vec!["example"];
    a.extend_from_slice(args);
    let o = go(env, &a, "");
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    o.stdout
}

#[test]
fn report_shape() {
    let env = Memory::default();
    let doc = example(&env, &["square-loop"]);
    let o = go(&env, &["cone"], &doc);
    assert_eq!(o.code, EXIT_OK);
    let r = report(&o);
    for key in ["command", "inputs", "results", "diagnostics", "exit_code"] {
        assert!(r.get(key).is_some(), "{key}");
    }
    assert_eq!(r["command"], "cone");
    assert_eq!(r["inputs"][0]["source"], "stdin");
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(r["results"]["dim"], 5);
    assert_eq!(r["results"]["expected_dim"], 4);
    assert_eq!(r["results"]["superabundant"], true);
    assert_eq!(go(&env, &["superabundant"], &doc).code, EXIT_OK);
    let three = example(&env, &["three-rays"]);
    assert_eq!(go(&env, &["superabundant"], &three).code, EXIT_FALSE);
}

#[test]
fn seed_override_is_deterministic() {
    let mut env = Memory::default();
    let doc = example(&env, &["speyer-fail"]);
    let a = report(&go(&env, &["cone", "--seed", "7"], &doc));
    let b = report(&go(&env, &["cone", "--seed", "7"], &doc));
    assert_eq!(a["results"]["sample"], b["results"]["sample"]);
    env.vars.insert("TROPMAP_SEED".into(), "7".into());
    let c = report(&go(&env, &["cone"], &doc));
    assert_eq!(a["results"]["sample"], c["results"]["sample"]);
}

#[test]
fn flip_through_the_pipeline() {
    let env = Memory::default();
    let member = example(&env, &["figure1", "--t", "3/4"]);
    assert_eq!(go(&env, &["wellspaced"], &member).code, EXIT_OK);
    let fam = example(&env, &["figure1", "--family"]);
    let lim = go(&env, &["limit", "--t", "1"], &fam);
    assert_eq!(lim.code, EXIT_OK, "{}", lim.stdout);
    let ws = go(&env, &["wellspaced"], &lim.stdout);
    assert_eq!(ws.code, EXIT_FALSE);
    let r = report(&ws);
    assert_eq!(r["results"]["well_spaced"], false);
    assert!(r["results"]["witness"].is_number());

    env.files.borrow_mut().insert("fam.json".into(), fam);
    let v = go(&env, &["verdict", "--family", "fam.json"], &lim.stdout);
    assert_eq!(v.code, EXIT_OK, "{}", v.stdout);
    assert_eq!(report(&v)["results"]["reason"], "Theorem A");
    let v = go(&env, &["verdict"], &lim.stdout);
    assert_eq!(v.code, EXIT_FALSE);
    assert_eq!(report(&v)["results"]["verdict"], "Unknown");
}

#[test]
fn hat_then_verdict() {
    let env = Memory::default();
    let demo = example(&env, &["hat-demo"]);
    let v = go(&env, &["verdict", "--assume-star-realizable"], &demo);
    assert_eq!(v.code, EXIT_OK);
    assert_eq!(report(&v)["results"]["rule"], "R3");
    let hat = go(&env, &["hat", "--t", "1"], &demo);
    assert_eq!(hat.code, EXIT_OK);
    assert_eq!(go(&env, &["wellspaced"], &hat.stdout).code, EXIT_OK);
    let fail = example(&env, &["speyer-fail"]);
    let v = go(&env, &["verdict"], &fail);
    assert_eq!(v.code, EXIT_FALSE);
    assert_eq!(report(&v)["results"]["verdict"], "NotRealizable");
}

#[test]
fn input_errors_carry_pointers() {
    let env = Memory::default();
    let o = go(&env, &["validate"], r#"{"kind":"map","format_version":"1","curve":{"vertices":[]}}"#);
    assert_eq!(o.code, EXIT_INPUT);
    let r = report(&o);
    assert_eq!(r["diagnostics"][0]["code"], "input");
    assert!(r["diagnostics"][0]["pointer"].as_str().unwrap().starts_with('/'));
    assert!(o.stderr.starts_with("error: stdin: /"));
    assert_eq!(go(&env, &["validate", "missing.json"], "").code, EXIT_INPUT);
    assert_eq!(go(&env, &["frobnicate"], "").code, EXIT_INPUT);
    assert_eq!(go(&env, &["--help"], "").code, EXIT_OK);
    assert_eq!(go(&env, &["example", "nope"], "").code, EXIT_INPUT);
    assert_eq!(go(&env, &["limit", "--t", "x"], "").code, EXIT_INPUT);
}

#[test]
fn plot_writes_svg() {
    let env = Memory::default();
    let doc = example(&env, &["speyer-fail"]);
    let o = go(&env, &["plot"], &doc);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.starts_with("<svg"));
    let o = go(&env, &["plot", "--output", "out.svg", "--axes", "0,2"], &doc);
    assert_eq!(o.code, EXIT_OK);
    assert!(env.files.borrow()["out.svg"].starts_with("<svg"));
    assert_eq!(go(&env, &["plot", "--axes", "0,9"], &doc).code, EXIT_INPUT);
}

#[test]
fn pretty_and_json_agree() {
    let env = Memory::default();
    let a: Value = serde_json::from_str(&example(&env, &["speyer-tree"])).unwrap();
    let pretty = example(&env, &["speyer-tree", "--format", "pretty"]);
    assert!(pretty.contains("\n  "));
    let b: Value = serde_json::from_str(&pretty).unwrap();
    assert_eq!(a, b);
}

#[test]
fn figure1_members_validate() {
    let env = Memory::default();
    for den in 1..=7 {
        for num in 0..=den {
            let t = format!("{num}/{den}");
            let doc = example(&env, &["figure1", "--t", &t]);
            assert_eq!(go(&env, &["validate"], &doc).code, EXIT_OK, "t = {t}");
        }
    }
}
