#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // first byte steers the rank so both parsers see all ranges
        let n = (data.first().copied().unwrap_or(7) as usize) % 65;
        let _ = coxeter::graph::parse_indices(text, n);
        let _ = coxeter::graph::parse_subset(text, n);
    }
});
