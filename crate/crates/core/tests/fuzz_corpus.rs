//! Replays the checked-in fuzz seeds through the same checks the fuzz
//! targets make, so the seeds stay meaningful without a nightly toolchain.

use std::fs;
use std::path::PathBuf;

use matchfix::flow::{feasible_flow, min_cost_feasible_flow, FlowNetwork};
use matchfix::parse_instance;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn instance_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_instance") {
        if let Ok(inst) = parse_instance(&text) {
            let canonical = inst.to_string();
            let again = parse_instance(&canonical).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(again, inst, "{name}");
            assert_eq!(again.to_string(), canonical, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 3);
}

#[test]
fn network_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_network") {
        let Ok(net) = FlowNetwork::parse(&text) else {
            continue;
        };
        assert_eq!(FlowNetwork::parse(&net.to_string()).as_ref(), Ok(&net), "{name}");
        let quick = feasible_flow(&net).unwrap();
        let cheap = min_cost_feasible_flow(&net);
        assert_eq!(quick.feasible, cheap.is_ok(), "{name}");
        if let Ok(r) = cheap {
            assert!(net.is_feasible_assignment(&r.flows), "{name}");
        }
        parsed += 1;
    }
    assert!(parsed >= 3);
}
