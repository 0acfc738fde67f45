#![no_main]

use libfuzzer_sys::fuzz_target;

// The graph file parser must reject malformed input with an error and
// never panic.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = coxeter::graph::CoxeterGraph::parse(text);
    }
});
