#![no_main]

use libfuzzer_sys::fuzz_target;

use coxeter::graph::{self, GenSet};

// Parse a graph, then drive the cheap analyses on subsets derived from
// the input. Everything downstream of a successful parse must be
// panic-free; invariant checks inside the library turn logic errors
// into caught failures here.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = graph::CoxeterGraph::parse(text) else {
        return;
    };
    let n = g.rank();
    if n == 0 || n > 9 {
        return;
    }
    let bits = data.iter().fold(0u64, |acc, &b| acc.rotate_left(7) ^ b as u64);
    let j: GenSet = (0..n).filter(|i| bits >> i & 1 == 1).collect();
    let k: GenSet = (0..n).filter(|i| bits >> (i + n) & 1 == 1).collect();

    let comps = graph::components(&g, j);
    for comp in &comps {
        let _ = graph::classify(&g, *comp);
    }
    let _ = graph::is_finite_type(&g, j);
    let _ = graph::is_a_gt1_free(&g, j);
    let _ = graph::is_apart(&g, j, k);
    let closure = graph::tilde_closure(&g, j, k);
    assert!(k.is_subset_of(closure));
    assert!(closure.is_subset_of(j.union(k)));

    if graph::is_finite_type(&g, j).unwrap_or(false) && j.len() <= 4 {
        let roots = coxeter::geom::positive_roots(&g, j).unwrap();
        for r in &roots {
            assert!(r.is_positive());
        }
    }
});
