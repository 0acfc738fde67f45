#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(g) = coxeter::graph::parse_type_name(text) {
            // any accepted name must classify back to a finite type
            let c = coxeter::graph::classify(&g, g.all()).unwrap();
            assert!(c.is_some(), "accepted type name is not finite: {text}");
        }
    }
});
