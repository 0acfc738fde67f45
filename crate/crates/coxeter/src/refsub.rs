//! Reflection subgroups W(Ψ): root-basis testing, induced Coxeter
//! matrices read off pairwise inner products, finite subsystem closure,
//! canonical simple systems, and perpendicular subsystems inside a
//! finite-type parabolic.

use std::collections::BTreeSet;

use crate::field::{cos_pi_over, FieldElem, Sign};
use crate::geom::{bilinear, gram, positive_roots, reflection_along, Root};
use crate::graph::{CoxeterGraph, GenSet, Label};
use crate::{Error, Result};

/// The order of the product of two reflections, read off the inner
/// product of their (unit) roots: −cos(π/m) for finite order m, any
/// value ≤ −1 for infinite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairOrder {
    Finite(u8),
    Infinite,
    /// positive inner product: the pair violates the root-basis condition
    NotBasis,
}

pub fn pair_order(g: &CoxeterGraph, beta: &Root, gamma: &Root) -> Result<PairOrder> {
    let b = gram(g);
    let v = bilinear(&b, &beta.coords, &gamma.coords);
    match v.sign() {
        Sign::Positive => Ok(PairOrder::NotBasis),
        Sign::Zero => Ok(PairOrder::Finite(2)),
        Sign::Negative => {
            for m in 3..=6u8 {
                if v == -&cos_pi_over(m as u64).unwrap() {
                    return Ok(PairOrder::Finite(m));
                }
            }
            // ⟨β,γ⟩ ≤ −1 means infinite order
            if (&v + &FieldElem::one()).sign() != Sign::Positive {
                return Ok(PairOrder::Infinite);
            }
            Err(Error::UnsupportedOrder {
                value: v.to_string(),
            })
        }
    }
}

/// Whether every pair in `roots` satisfies the root-basis condition:
/// ⟨β,γ⟩ = −cos(π/m) for some m ≥ 2, or ⟨β,γ⟩ ≤ −1. Values in (−1, 0)
/// matching no supported label are reported as [`Error::UnsupportedOrder`].
pub fn is_root_basis(g: &CoxeterGraph, roots: &[Root]) -> Result<bool> {
    for (i, beta) in roots.iter().enumerate() {
        for gamma in roots.iter().skip(i + 1) {
            if pair_order(g, beta, gamma)? == PairOrder::NotBasis {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Symmetric bond-label matrix of a root basis: entry (i, j) is the
/// order label of the pair of reflections along `roots[i]`, `roots[j]`
/// (the diagonal is filled with the no-edge label 2 and never read).
/// Unlike [`induced_graph`] this has no size cap.
pub fn pair_label_matrix(g: &CoxeterGraph, roots: &[Root]) -> Result<Vec<Vec<Label>>> {
    let k = roots.len();
    let mut out = vec![vec![Label::Finite(2); k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let l = match pair_order(g, &roots[i], &roots[j])? {
                PairOrder::Finite(m) => Label::Finite(m),
                PairOrder::Infinite => Label::Infinite,
                PairOrder::NotBasis => {
                    return Err(Error::Precondition(format!(
                        "roots {} and {} do not form a root basis",
                        roots[i], roots[j]
                    )))
                }
            };
            out[i][j] = l;
            out[j][i] = l;
        }
    }
    Ok(out)
}

/// The Coxeter graph induced on a root basis: node k stands for the
/// reflection along `roots[k]`. Limited to the supported rank; use
/// [`pair_label_matrix`] for larger collections.
pub fn induced_graph(g: &CoxeterGraph, roots: &[Root]) -> Result<CoxeterGraph> {
    let labels = pair_label_matrix(g, roots)?;
    let mut out = CoxeterGraph::new(roots.len())?;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if labels[i][j].is_edge() {
                out.set_label(i, j, labels[i][j])?;
            }
        }
    }
    Ok(out)
}

/// Closure of a finite-type root basis under its own reflections,
/// positives only. Guarded by classifying the induced Coxeter graph.
pub fn subsystem_positive_roots(g: &CoxeterGraph, basis: &[Root]) -> Result<Vec<Root>> {
    let induced = induced_graph(g, basis)?;
    if !crate::graph::is_finite_type(&induced, induced.all())? {
        return Err(Error::NotFiniteType {
            subset: induced.all(),
        });
    }
    Ok(reflection_closure(g, basis)?.into_iter().collect())
}

/// Orbit of `seed` under the reflections along the members of `seed`,
/// positive representatives only. The caller guarantees finiteness.
fn reflection_closure(g: &CoxeterGraph, seed: &[Root]) -> Result<BTreeSet<Root>> {
    let refl: Vec<_> = seed
        .iter()
        .map(|r| reflection_along(g, r))
        .collect::<Result<_>>()?;
    let mut all: BTreeSet<Root> = BTreeSet::new();
    for r in seed {
        if !r.is_positive() {
            return Err(Error::InvalidRoot(format!("{r} is not a positive root")));
        }
        all.insert(r.clone());
    }
    let mut frontier: Vec<Root> = all.iter().cloned().collect();
    while let Some(r) = frontier.pop() {
        for m in &refl {
            let img = m.act_root(&r);
            let pos = if img.is_positive() { img } else { img.neg() };
            if all.insert(pos.clone()) {
                frontier.push(pos);
            }
        }
    }
    Ok(all)
}

/// The canonical simple system of the reflection subgroup generated by
/// `seed`, all inside the finite-type parabolic on `ambient`: close the
/// seed to the full subsystem, then keep the roots whose reflection maps
/// every other subsystem positive to a positive.
pub fn canonical_simple_system(
    g: &CoxeterGraph,
    ambient: GenSet,
    seed: &[Root],
) -> Result<Vec<Root>> {
    if !crate::graph::is_finite_type(g, ambient)? {
        return Err(Error::NotFiniteType { subset: ambient });
    }
    let ambient_roots: BTreeSet<Root> = positive_roots(g, ambient)?.into_iter().collect();
    for r in seed {
        if !ambient_roots.contains(r) {
            return Err(Error::Precondition(format!(
                "{r} is not a positive root of the parabolic on {ambient}"
            )));
        }
    }
    let closure = reflection_closure(g, seed)?;
    let mut simple = Vec::new();
    for r in &closure {
        let m = reflection_along(g, r)?;
        let keeps_positives = closure
            .iter()
            .filter(|other| *other != r)
            .all(|other| m.act_root(other).is_positive());
        if keeps_positives {
            simple.push(r.clone());
        }
    }
    Ok(simple)
}

/// Positive roots of the parabolic on `sub` (finite type) orthogonal to
/// every simple root of `perp_to`.
pub fn perp_positive_roots(g: &CoxeterGraph, sub: GenSet, perp_to: GenSet) -> Result<Vec<Root>> {
    let b = gram(g);
    let roots = positive_roots(g, sub)?;
    Ok(roots
        .into_iter()
        .filter(|r| {
            perp_to
                .iter()
                .all(|s| bilinear(&b, &r.coords, &Root::simple(g.rank(), s).coords).is_zero())
        })
        .collect())
}
