#![no_main]

use libfuzzer_sys::fuzz_target;
use matchfix::flow::{feasible_flow, min_cost_feasible_flow, FlowNetwork};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(net) = FlowNetwork::parse(text) else {
        return;
    };
    assert_eq!(FlowNetwork::parse(&net.to_string()).as_ref(), Ok(&net));
    if net.nodes() <= 64 && net.arcs().len() <= 256 {
        let quick = feasible_flow(&net).expect("valid network");
        let cheap = min_cost_feasible_flow(&net);
        assert_eq!(quick.feasible, cheap.is_ok());
        if let Ok(r) = cheap {
            assert!(net.is_feasible_assignment(&r.flows));
            assert_eq!(net.assignment_cost(&r.flows), r.cost);
        }
    }
});
