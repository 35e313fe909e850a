//! End-to-end runs of the `rmckit` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rmckit::format::{parse_aut, serialize_aut};
use rmckit::load::{AnySystem, LoadedSystem, Property};
use rmckit::examples::EXAMPLES as EXAMPLE_NAMES;
use rmckit::{cop_of, local_projection, Alphabet, UpWord, Witness, Word};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rmckit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn system(name: &str) -> String {
    golden(name).join("system.sys").display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn words(alphabet: &Alphabet, witness: &Value) -> Witness<Word> {
    Witness {
        words: witness["words"]
            .as_array()
            .unwrap()
            .iter()
            .map(|w| alphabet.parse_word(w.as_str().unwrap()).unwrap())
            .collect(),
        loop_start: witness["loop_start"].as_u64().map(|s| s as usize),
    }
}

fn finite(sys: &LoadedSystem) -> &rmckit::FiniteSystem {
    match &sys.system {
        AnySystem::Finite(m) => m,
        AnySystem::Omega(_) => panic!("finite system expected"),
    }
}

#[test]
fn generated_bundles_match_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in EXAMPLE_NAMES {
        let out = run(&["gen-example", name, "--out", dir.path().join(name).to_str().unwrap()]);
        assert!(out.status.success());
        let mut files: Vec<_> = std::fs::read_dir(golden(name)).unwrap().map(|e| e.unwrap().file_name()).collect();
        files.sort();
        assert_eq!(files.len(), 9);
        for f in files {
            let want = std::fs::read(golden(name).join(&f)).unwrap();
            let got = std::fs::read(dir.path().join(name).join(&f)).unwrap();
            assert_eq!(got, want, "{name}/{f:?}");
        }
    }
}

#[test]
fn shipped_automata_round_trip_and_are_minimal() {
    for f in ["init.aut", "relation.aut", "one_token.aut", "two_tokens.aut", "neg_gsp.aut", "neg_losp.aut"] {
        let path = golden("token-ring").join(f);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(serialize_aut(&parse_aut(&text, f).unwrap()), text, "{f}");
        let out = run(&["minimize", path.to_str().unwrap()]);
        assert!(out.status.success());
        assert_eq!(String::from_utf8(out.stdout).unwrap(), text, "{f}");
    }
}

#[test]
fn mutual_exclusion_holds_on_default_slices() {
    let out = run(&["check-reach", "--system", &system("token-ring"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"], "holds");
    let slices: Vec<u64> = v["slices"].as_array().unwrap().iter().map(|s| s["slice"].as_u64().unwrap()).collect();
    assert_eq!(slices, (2..=8).collect::<Vec<_>>());
    for s in v["slices"].as_array().unwrap() {
        assert_eq!(s["converged"], true);
        assert!(s["millis"].as_f64().unwrap() >= 0.0);
    }
}

#[test]
fn reachability_violation_replays() {
    let path = system("token-dup-mutant");
    let out = run(&["check-reach", "--system", &path, "--slice", "3..4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let sys = LoadedSystem::load(Path::new(&path)).unwrap();
    let m = finite(&sys);
    for s in json(&out)["slices"].as_array().unwrap() {
        let n = s["slice"].as_u64().unwrap() as usize;
        let w = words(m.alphabet(), &s["witness"]);
        assert!(w.loop_start.is_none());
        assert!(m.slice(n).unwrap().replay(&w).unwrap());
        let last = w.words.last().unwrap();
        assert!(last.letters().iter().filter(|&&l| l == 1).count() >= 2);
    }
}

#[test]
fn gsp_violations_replay_for_both_engines() {
    let path = system("token-dup-mutant");
    let sys = LoadedSystem::load(Path::new(&path)).unwrap();
    let m = finite(&sys);
    let Property::NegGsp(neg) = sys.property(Some("always_one_token"), &[rmckit::format::PropertyKind::GspNegated]).unwrap().1 else {
        panic!()
    };
    for engine in ["loop", "sim"] {
        let out = run(&["check-gsp", "--system", &path, "--slice", "2..5", "--engine", engine, "--format", "json"]);
        assert_eq!(out.status.code(), Some(1), "{engine}");
        for s in json(&out)["slices"].as_array().unwrap() {
            assert_eq!(s["status"], "violated");
            let w = words(m.alphabet(), &s["witness"]);
            let start = w.loop_start.unwrap();
            assert!(m.replay(&w).unwrap());
            let trace: Vec<u64> =
                w.words.iter().map(|x| u64::from(cop_of::<rmckit::Nfa>(x, &sys.cops_finite).unwrap().0)).collect();
            let lasso = UpWord::new(Word::new(trace[..start].to_vec()), Word::new(trace[start..].to_vec())).unwrap();
            assert!(neg.automaton().accepts_up_word(&lasso).unwrap());
        }
    }
}

#[test]
fn liveness_holds_and_idle_mutant_violates() {
    let out = run(&["check-losp", "--system", &system("token-ring"), "--slice", "2..5"]);
    assert_eq!(out.status.code(), Some(0));

    let path = system("token-ring-idle-mutant");
    let out = run(&["check-losp", "--system", &path, "--slice", "2..4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let sys = LoadedSystem::load(Path::new(&path)).unwrap();
    let m = finite(&sys);
    let fair = sys.leps[0].automaton();
    for s in json(&out)["slices"].as_array().unwrap() {
        let n = s["slice"].as_u64().unwrap() as usize;
        let w = words(m.alphabet(), &s["witness"]);
        assert!(w.loop_start.is_some());
        assert!(m.replay(&w).unwrap());
        // some position never gets the token again
        let unfair = (0..n).any(|j| {
            let p: UpWord = local_projection(&w, j).unwrap().word;
            !fair.accepts_up_word(&p).unwrap()
        });
        assert!(unfair);
    }
}

#[test]
fn text_report_prints_slice_words_and_loop_start() {
    let out = run(&["check-losp", "--system", &system("token-ring-idle-mutant"), "--slice", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("slice 3: violated"));
    assert!(text.contains("loop back to"));
    assert!(text.lines().any(|l| l.trim_start().starts_with("0 ")));
    assert!(text.ends_with("result: violated\n"));
}

#[test]
fn unsliced_closure_is_unknown() {
    let out = run(&["closure", "--system", &system("token-ring"), "--unsliced", "--budget", "8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["result"], "unknown");
    assert_eq!(v["slices"][0]["converged"], false);
    assert_eq!(v["slices"][0]["closure"]["converged"], false);

    let out = run(&["check-gsp", "--system", &system("token-ring"), "--unsliced", "--budget", "8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sliced_closure_converges() {
    let out = run(&["closure", "--system", &system("token-ring"), "--slice", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["slices"][0]["converged"], true);
}

#[test]
fn sim_command_reports_fixpoint() {
    let out = run(&["sim", "--system", &system("token-ring"), "--slice", "2..3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    for s in json(&out)["slices"].as_array().unwrap() {
        assert_eq!(s["simulation"]["exact"], true);
    }
    let out = run(&["sim", "--system", &system("token-dup-mutant"), "--slice", "4", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn property_may_be_a_file() {
    let file = golden("token-ring").join("two_tokens.aut");
    let out = run(&["check-reach", "--system", &system("token-ring-idle-mutant"), "--property", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["check-reach".into(), "--system".into(), dir.path().join("missing.sys").display().to_string()],
        vec!["check-reach".into(), "--system".into(), system("token-ring"), "--property".into(), "nope".into()],
        vec!["check-gsp".into(), "--system".into(), system("token-ring"), "--property".into(), "mutex".into()],
        vec!["check-reach".into(), "--system".into(), system("token-ring"), "--slice".into(), "4..2".into()],
        vec!["check-losp".into(), "--system".into(), system("token-ring"), "--engine".into(), "sim".into()],
        vec!["frobnicate".into()],
    ];
    for args in cases {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        assert!(!out.stderr.is_empty());
    }

    let bad = dir.path().join("bad.aut");
    std::fs::write(&bad, "kind: dfa\nalphabet: a\nstates: 0\ninitial: 0\naccepting: 0\ntrans:\n0 a 7\n").unwrap();
    let out = run(&["minimize", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.aut:7:"), "{err}");
}

#[test]
fn thread_cap_keeps_output_order() {
    let args = ["check-reach", "--system", &system("token-ring"), "--format", "json"];
    let one = bin().args(args).env("RMCKIT_THREADS", "1").output().unwrap();
    let many = bin().args(args).env("RMCKIT_THREADS", "4").output().unwrap();
    let strip = |o: &Output| {
        let mut v = json(o);
        for s in v["slices"].as_array_mut().unwrap() {
            s["millis"] = Value::Null;
        }
        v
    };
    assert_eq!(strip(&one), strip(&many));
    let bad = bin().args(args).env("RMCKIT_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn help_documents_defaults() {
    let out = run(&["check-gsp", "--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2..8"));
    assert!(text.contains("64"));
}
