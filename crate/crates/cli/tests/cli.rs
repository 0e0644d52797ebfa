use std::process::{Command, Output};

use cubelab::{parse_instance, run, InstanceFile, Options, COMMANDS};
use serde_json::Value;

fn cubelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubelab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().map(|o| o.remove("timing_ms"));
    v
}

#[test]
fn every_command_runs_on_a_generated_instance() {
    for c in COMMANDS {
        let out = cubelab(&[c, "--cases", "10"]);
        assert_eq!(out.status.code(), Some(0), "{c}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["verdict"], "ok", "{c}");
    }
}

#[test]
fn threshold_square_has_one_fully_labelled_sequence() {
    let out = cubelab(&["kuhn-strong-count", "--n", "2", "--k", "1", "--mode", "threshold"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["counts"]["count"], 1);
}

#[test]
fn short_table_exits_2_with_the_missing_key() {
    let inst = r#"{"version":1,"ambient":{"kind":"K","n":2,"size":1},
        "payload":{"type":"labeling","table":{"0,0":[0,0],"1,0":[1,0],"0,1":[0,1]}}}"#;
    let out = cubelab(&["kuhn-strong-count", "--inline", inst]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["verdict"], "malformed");
    assert_eq!(v["key"], "payload.table[\"1,1\"]");
}

#[test]
fn malformed_inputs_name_their_key() {
    let cases = [
        ("{", "$"),
        (r#"{"ambient":{"kind":"K","n":1,"size":1},"payload":{"type":"sets","sets":[]}}"#, "version"),
        (r#"{"version":1,"ambient":{"kind":"X","n":1,"size":1},"payload":{"type":"sets","sets":[]}}"#, "ambient.kind"),
        (r#"{"version":1,"ambient":{"kind":"K","n":1,"size":1},"payload":{"type":"sets","sets":[[[5]]]}}"#, "payload.sets[0][0]"),
        (r#"{"version":1,"ambient":{"kind":"K","n":1,"size":1},"payload":{"type":"nope"}}"#, "payload"),
        (r#"{"version":2,"ambient":{"kind":"K","n":1,"size":1},"payload":{"type":"sets","sets":[]}}"#, "version"),
    ];
    for (inst, key) in cases {
        let out = cubelab(&["kuhn-check", "--inline", inst]);
        assert_eq!(out.status.code(), Some(2), "{inst}");
        assert_eq!(json(&out)["key"], key, "{inst}");
    }
}

#[test]
fn precondition_violation_exits_1() {
    let inst = r#"{"version":1,"ambient":{"kind":"K","n":1,"size":1},"payload":{"type":"sets","sets":[[[1]]]}}"#;
    let out = cubelab(&["kuhn-check", "--inline", inst]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "violation");
    assert_eq!(v["clause"], "A_i in c_i");
}

#[test]
fn fixed_seed_output_is_deterministic() {
    for c in ["kuhn-check", "lebesgue-witness", "hurewicz-path", "sphere-power", "selftest"] {
        let a = cubelab(&[c, "--seed", "42", "--cases", "20"]);
        let b = cubelab(&[c, "--seed", "42", "--cases", "20"]);
        assert_eq!(without_timing(json(&a)), without_timing(json(&b)), "{c}");
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let run_with = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_cubelab"))
            .args(["selftest", "--cases", "30", "--seed", "5"])
            .env("CUBELAB_THREADS", threads)
            .output()
            .unwrap();
        without_timing(json(&out))
    };
    assert_eq!(run_with("1"), run_with("4"));
    let bad = Command::new(env!("CARGO_BIN_EXE_cubelab")).arg("freudenthal").env("CUBELAB_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn emitted_instances_replay_to_the_same_record() {
    let opts = Options { seed: 9, cases: 10, ..Options::default() };
    for c in COMMANDS {
        let rec = run(c, None, &opts).unwrap();
        let Some(inst) = rec.instance.clone() else { continue };
        let text = serde_json::to_string(&inst).unwrap();
        let again = run(c, Some(parse_instance(&text).unwrap()), &opts).unwrap();
        assert_eq!(again.counts, rec.counts, "{c}");
        assert_eq!(again.witnesses, rec.witnesses, "{c}");
    }
}

#[test]
fn instance_files_round_trip() {
    let opts = Options { seed: 3, ..Options::default() };
    let mut kinds = std::collections::BTreeSet::new();
    let mut instances: Vec<InstanceFile> = Vec::new();
    for c in COMMANDS {
        for mode in [None, Some("descent")] {
            let o = Options { mode: mode.map(String::from), ..opts.clone() };
            if let Ok(rec) = run(c, None, &o) {
                instances.extend(rec.instance);
            }
        }
    }
    instances.push(
        parse_instance(
            r#"{"version":1,"ambient":{"kind":"K","n":2,"size":2},
            "payload":{"type":"params","eps":["-1/3"],"lo":[0,0],"hi":[2,2]},"seed":4}"#,
        )
        .unwrap(),
    );
    for inst in &instances {
        kinds.insert(inst.payload.name());
        let text = serde_json::to_string(inst).unwrap();
        let back = parse_instance(&text).unwrap();
        assert_eq!(&back, inst);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
    assert_eq!(kinds.len(), 5, "{kinds:?}");
}

#[test]
fn nerve_text_format() {
    let out = cubelab(&["tiling-nerve", "--n", "1", "--k", "2", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0\n0;1\n1\n1;2\n2\n");
    let out = cubelab(&["tiling-nerve", "--n", "2", "--k", "1", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4 + 5 + 2);
    assert!(text.lines().any(|l| l == "0,0;0,1;1,1"));
}

#[test]
fn custom_parameters_give_the_same_nerve() {
    let inst = r#"{"version":1,"ambient":{"kind":"K","n":2,"size":2},
        "payload":{"type":"params","eps":["-1/3"],"lo":[0,0],"hi":[2,2]}}"#;
    let custom = cubelab(&["tiling-nerve", "--inline", inst, "--format", "text"]);
    let default = cubelab(&["tiling-nerve", "--n", "2", "--k", "2", "--format", "text"]);
    assert_eq!(custom.stdout, default.stdout);
    let check = cubelab(&["tiling-check", "--inline", inst]);
    assert_eq!(json(&check)["counts"]["nerve_independent"], true);
    let bad = inst.replace("-1/3", "-3/2");
    assert_eq!(cubelab(&["tiling-nerve", "--inline", &bad]).status.code(), Some(2));
}

#[test]
fn lebesgue_modes() {
    for mode in ["coverings", "partitions", "early", "collecting"] {
        let out = cubelab(&["lebesgue-witness", "--n", "2", "--k", "3", "--mode", mode, "--seed", "11"]);
        assert_eq!(out.status.code(), Some(0), "{mode}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn duality_transport_modes() {
    let rec = run("kuhn-check", None, &Options::default()).unwrap();
    let inst = serde_json::to_string(&rec.instance.unwrap()).unwrap();
    for mode in ["separation-weak", "separation-lebesgue"] {
        let out = cubelab(&["duality-check", "--inline", &inst, "--mode", mode]);
        assert_eq!(out.status.code(), Some(0), "{mode}");
        assert_eq!(json(&out)["witnesses"].as_array().unwrap().len(), 1);
    }
}

#[test]
fn requested_selftest_passes() {
    let out = cubelab(&["selftest", "--n", "2", "--k", "2", "--cases", "100", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["counts"]["failures"], 0);
}

#[test]
fn canonical_circle_has_one_pair() {
    let out = cubelab(&["sphere-power", "--n", "1", "--k", "2", "--mode", "canonical"]);
    assert_eq!(json(&out)["counts"]["pairs"], 1);
}

#[test]
fn unknown_command_exits_2() {
    assert_eq!(cubelab(&["frobnicate"]).status.code(), Some(2));
}
