//! Factoring elements of the perp-positive classes into elementary
//! transformations: the greedy standard decomposition, the semi-standard
//! verifier, simplification by dropping no-op factors, and the shift
//! check that replaces a spectator generator of the tuple by one from
//! the tracked subset.

use std::fmt;

use crate::centralizer::{carries_perp_positively, maps_simple_roots, Tuple};
use crate::geom::{from_word, length_and_word, Element, Root, Word};
use crate::graph::{is_adjacent, is_finite_type, tilde_closure, CoxeterGraph, GenSet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// the support meets the tracked subset outside the tuple
    Wide,
    /// the factor is an elementary move of the tuple alone and fixes the
    /// tracked simple roots pointwise
    Narrow,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Wide => write!(f, "wide"),
            Kind::Narrow => write!(f, "narrow"),
        }
    }
}

/// One factor with its bookkeeping.
pub struct Step {
    pub factor: Element,
    pub word: Word,
    pub pivot: usize,
    pub support: GenSet,
    pub kind: Kind,
}

/// A factorization u = ω_{n−1} ⋯ ω_1 ω_0 together with the tuple and
/// tracked-subset trail: `tuples` and `jsets` have one more entry than
/// `steps`.
pub struct Decomposition {
    pub steps: Vec<Step>,
    pub tuples: Vec<Tuple>,
    pub jsets: Vec<GenSet>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn source(&self) -> &Tuple {
        self.tuples.first().expect("nonempty trail")
    }

    pub fn target(&self) -> &Tuple {
        self.tuples.last().expect("nonempty trail")
    }

    /// The element the factors multiply to (later factors on the left).
    pub fn product(&self, n: usize) -> Element {
        let mut acc = Element::identity(n);
        for step in &self.steps {
            acc = step.factor.mul(&acc);
        }
        acc
    }
}

fn simple_image(w: &Element, s: usize) -> Option<usize> {
    let n = w.dim();
    let img = w.act_root(&Root::simple(n, s));
    (0..n).find(|&t| img == Root::simple(n, t))
}

fn map_subset(w: &Element, set: GenSet) -> Result<GenSet> {
    set.iter()
        .map(|s| {
            simple_image(w, s).ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "factor does not permute the tracked simple roots (generator {})",
                    s + 1
                ))
            })
        })
        .collect()
}

fn map_tuple(w: &Element, t: &Tuple) -> Result<Tuple> {
    let imgs = t
        .indices()
        .iter()
        .map(|&s| {
            simple_image(w, s).ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "factor does not carry the tuple simple root of generator {}",
                    s + 1
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Tuple::new(imgs)
}

/// Greedy standard decomposition of u with respect to the tracked subset
/// `j`: repeatedly strip the elementary factor of the least generator
/// sent negative. Preconditions: u carries `y` to `z` perp-positively
/// and sends the tracked simple roots into the simple system. The
/// resulting factor lengths add up to ℓ(u).
pub fn standard_decomposition(
    g: &CoxeterGraph,
    u: &Element,
    y: &Tuple,
    z: &Tuple,
    j: GenSet,
) -> Result<Decomposition> {
    g.check_subset(y.set())?;
    g.check_subset(z.set())?;
    g.check_subset(j)?;
    if !maps_simple_roots(u, y, z) {
        return Err(Error::Precondition(format!(
            "element does not carry {y} to {z} on simple roots"
        )));
    }
    if !carries_perp_positively(g, u, y, z)? {
        return Err(Error::Precondition(format!(
            "element inverts a positive root orthogonal to {y}"
        )));
    }
    for s in j.iter() {
        if simple_image(u, s).is_none() {
            return Err(Error::Precondition(format!(
                "element does not send the simple root of generator {} into the simple system",
                s + 1
            )));
        }
    }

    let n = g.rank();
    let mut v = u.clone();
    let mut cur_y = y.clone();
    let mut cur_j = j;
    let mut steps: Vec<Step> = Vec::new();
    let mut tuples = vec![y.clone()];
    let mut jsets = vec![j];
    let (mut remaining, _) = length_and_word(g, &v)?;
    while !v.is_identity() {
        let t = (0..n)
            .find(|&t| {
                Root {
                    coords: v.column(t).to_vec(),
                }
                .sign()
                    == Some(crate::field::Sign::Negative)
            })
            .ok_or_else(|| Error::InvariantViolation("no descent for a non-identity".into()))?;
        if cur_y.set().contains(t) || cur_j.contains(t) {
            return Err(Error::InvariantViolation(format!(
                "descent generator {} lies in the tuple or the tracked subset",
                t + 1
            )));
        }
        if !is_adjacent(g, GenSet::singleton(t), cur_y.set()) {
            return Err(Error::InvariantViolation(format!(
                "descent generator {} is not adjacent to the tuple {cur_y}",
                t + 1
            )));
        }
        let support = tilde_closure(g, cur_y.set().union(cur_j), GenSet::singleton(t));
        if !is_finite_type(g, support)? {
            return Err(Error::InvariantViolation(format!(
                "factor support {support} is not of finite type"
            )));
        }
        let mut sup_minus = support;
        sup_minus.remove(t);
        let w0k = crate::geom::longest_element(g, support)?;
        let w0k_minus = crate::geom::longest_element(g, sup_minus)?;
        let factor = w0k.mul(&w0k_minus);
        let factor_inv = w0k_minus.mul(&w0k);
        let (flen, word) = length_and_word(g, &factor)?;
        v = v.mul(&factor_inv);
        let (vlen, _) = length_and_word(g, &v)?;
        if vlen + flen != remaining {
            return Err(Error::InvariantViolation(
                "factor is not a right divisor: lengths do not add".into(),
            ));
        }
        remaining = vlen;
        let next_y = map_tuple(&factor, &cur_y)?;
        let next_j = map_subset(&factor, cur_j)?;
        let kind = if !support.inter(cur_j.minus(cur_y.set())).is_empty() {
            Kind::Wide
        } else {
            Kind::Narrow
        };
        steps.push(Step {
            factor,
            word,
            pivot: t,
            support,
            kind,
        });
        tuples.push(next_y.clone());
        jsets.push(next_j);
        cur_y = next_y;
        cur_j = next_j;
    }
    if &cur_y != z {
        return Err(Error::InvariantViolation(format!(
            "decomposition ended at {cur_y}, expected {z}"
        )));
    }
    Ok(Decomposition {
        steps,
        tuples,
        jsets,
    })
}

/// Check every defining condition of a semi-standard decomposition,
/// reporting violations instead of failing fast. An empty list means
/// the decomposition is semi-standard.
pub fn verify_semi_standard(g: &CoxeterGraph, d: &Decomposition) -> Result<Vec<String>> {
    let mut out = Vec::new();
    if d.tuples.len() != d.steps.len() + 1 || d.jsets.len() != d.steps.len() + 1 {
        out.push("trail lengths do not match the factor count".into());
        return Ok(out);
    }
    for (i, step) in d.steps.iter().enumerate() {
        let y = &d.tuples[i];
        let jset = d.jsets[i];
        let t = step.pivot;
        if y.set().contains(t) || jset.contains(t) {
            out.push(format!(
                "factor {i}: pivot {} lies in the tuple or tracked subset",
                t + 1
            ));
        }
        if !is_adjacent(g, GenSet::singleton(t), y.set()) {
            out.push(format!("factor {i}: pivot {} is not adjacent to {y}", t + 1));
        }
        let support = tilde_closure(g, y.set().union(jset), GenSet::singleton(t));
        if support != step.support {
            out.push(format!(
                "factor {i}: stored support {} differs from {}",
                step.support, support
            ));
        }
        if !is_finite_type(g, support)? {
            out.push(format!("factor {i}: support {support} is not of finite type"));
            continue;
        }
        let mut sup_minus = support;
        sup_minus.remove(t);
        let expect = crate::geom::longest_element(g, support)?
            .mul(&crate::geom::longest_element(g, sup_minus)?);
        if expect != step.factor {
            out.push(format!(
                "factor {i}: element is not the double-longest product for its support"
            ));
        }
        if !carries_perp_positively(g, &step.factor, y, &d.tuples[i + 1])? {
            out.push(format!(
                "factor {i}: not a perp-positive carrier {} -> {}",
                y,
                d.tuples[i + 1]
            ));
        }
        match map_subset(&step.factor, jset) {
            Ok(next) if next == d.jsets[i + 1] => {}
            Ok(next) => out.push(format!(
                "factor {i}: tracked subset becomes {} but trail says {}",
                next,
                d.jsets[i + 1]
            )),
            Err(_) => out.push(format!(
                "factor {i}: tracked simple roots are not permuted into simples"
            )),
        }
        let wide = !support.inter(jset.minus(y.set())).is_empty();
        let stored_wide = step.kind == Kind::Wide;
        if wide != stored_wide {
            out.push(format!("factor {i}: wide/narrow flag mismatch"));
        }
        // every factor moves something in the rest of its support
        let moves_something = sup_minus.iter().any(|s| {
            step.factor.act_root(&Root::simple(g.rank(), s)) != Root::simple(g.rank(), s)
        });
        if !moves_something {
            out.push(format!(
                "factor {i}: fixes the whole support apart from the pivot"
            ));
        }
        // narrow factors fix the tracked simple roots pointwise (when
        // the tracked subset is disjoint from the tuple, it is then
        // apart from the whole support)
        if !wide && jset.inter(y.set()).is_empty() {
            let fixes = jset.iter().all(|s| {
                step.factor.act_root(&Root::simple(g.rank(), s)) == Root::simple(g.rank(), s)
            });
            if !fixes {
                out.push(format!(
                    "factor {i}: narrow but does not fix the tracked simple roots"
                ));
            }
        }
    }
    Ok(out)
}

/// Semi-standard plus the length condition ℓ(u) = Σ ℓ(ω_i).
pub fn is_standard(g: &CoxeterGraph, d: &Decomposition) -> Result<bool> {
    if !verify_semi_standard(g, d)?.is_empty() {
        return Ok(false);
    }
    let total: usize = d.steps.iter().map(|s| s.word.len()).sum();
    let (len, _) = length_and_word(g, &d.product(g.rank()))?;
    Ok(len == total)
}

/// Remove exactly the factors that change neither the underlying set of
/// the tuple nor the tracked subset, and rebuild the trail. The result
/// is again semi-standard.
pub fn simplify(g: &CoxeterGraph, d: &Decomposition) -> Result<Decomposition> {
    let keep: Vec<bool> = (0..d.steps.len())
        .map(|i| {
            !(d.tuples[i + 1].set() == d.tuples[i].set() && d.jsets[i + 1] == d.jsets[i])
        })
        .collect();
    let mut steps = Vec::new();
    let mut tuples = vec![d.tuples[0].clone()];
    let mut jsets = vec![d.jsets[0]];
    for (i, step) in d.steps.iter().enumerate() {
        if !keep[i] {
            continue;
        }
        let cur_y = tuples.last().unwrap().clone();
        let cur_j = *jsets.last().unwrap();
        let support = tilde_closure(g, cur_y.set().union(cur_j), GenSet::singleton(step.pivot));
        let kind = if !support.inter(cur_j.minus(cur_y.set())).is_empty() {
            Kind::Wide
        } else {
            Kind::Narrow
        };
        let next_y = map_tuple(&step.factor, &cur_y)?;
        let next_j = map_subset(&step.factor, cur_j)?;
        steps.push(Step {
            factor: step.factor.clone(),
            word: step.word.clone(),
            pivot: step.pivot,
            support,
            kind,
        });
        tuples.push(next_y);
        jsets.push(next_j);
    }
    Ok(Decomposition {
        steps,
        tuples,
        jsets,
    })
}

/// Report of the shift check: replace a spectator generator r of the
/// source tuple by s from the tracked subset (and by s' = u∗s at the
/// target) and test that the element still carries the substituted
/// tuples perp-positively.
pub struct ShiftReport {
    pub precondition_violations: Vec<String>,
    pub conclusion_violations: Vec<String>,
}

impl ShiftReport {
    pub fn preconditions_hold(&self) -> bool {
        self.precondition_violations.is_empty()
    }

    pub fn conclusions_hold(&self) -> bool {
        self.preconditions_hold() && self.conclusion_violations.is_empty()
    }
}

pub fn check_shift(
    g: &CoxeterGraph,
    d: &Decomposition,
    r: usize,
    s: usize,
    s_prime: usize,
) -> Result<ShiftReport> {
    let mut pre = Vec::new();
    let first = d.source();
    let last = d.target();
    if !first.set().contains(r) {
        pre.push(format!("{} is not in the source tuple {first}", r + 1));
    }
    if !d.jsets[0].contains(s) {
        pre.push(format!(
            "{} is not in the source tracked subset {}",
            s + 1,
            d.jsets[0]
        ));
    }
    if !d.jsets[d.len()].contains(s_prime) {
        pre.push(format!(
            "{} is not in the target tracked subset {}",
            s_prime + 1,
            d.jsets[d.len()]
        ));
    }
    for (i, step) in d.steps.iter().enumerate() {
        if !crate::graph::is_apart(g, step.support, GenSet::singleton(r)) {
            pre.push(format!(
                "support {} of factor {i} is not apart from generator {}",
                step.support,
                r + 1
            ));
        }
    }
    let u = d.product(g.rank());
    if simple_image(&u, s) != Some(s_prime) {
        pre.push(format!(
            "product does not send generator {} to generator {}",
            s + 1,
            s_prime + 1
        ));
    }
    if !pre.is_empty() {
        return Ok(ShiftReport {
            precondition_violations: pre,
            conclusion_violations: Vec::new(),
        });
    }

    let mut post = Vec::new();
    if !last.set().contains(r) {
        post.push(format!("{} is not in the target tuple {last}", r + 1));
    }
    if simple_image(&u, r) != Some(r) {
        post.push(format!("product moves the spectator generator {}", r + 1));
    }
    let substitute = |t: &Tuple, with: usize| -> Result<Tuple> {
        Tuple::new(
            t.indices()
                .iter()
                .map(|&i| if i == r { with } else { i })
                .collect(),
        )
    };
    let z = substitute(first, s)?;
    let z_prime = substitute(last, s_prime)?;
    if !carries_perp_positively(g, &u, &z, &z_prime)? {
        post.push(format!(
            "product does not carry the substituted tuple {z} to {z_prime} perp-positively"
        ));
    }
    Ok(ShiftReport {
        precondition_violations: pre,
        conclusion_violations: post,
    })
}

impl Decomposition {
    /// One line per factor: index, kind, pivot, support, length, word.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("index\tkind\tpivot\tsupport\tlen\tword\n");
        for (i, step) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                i,
                step.kind,
                step.pivot + 1,
                step.support,
                step.word.len(),
                step.word
                    .iter()
                    .map(|s| (s + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "factor {}: {:<6} pivot={} support={} len={} word={}\n",
                i,
                step.kind.to_string(),
                step.pivot + 1,
                step.support,
                step.word.len(),
                step.word
                    .iter()
                    .map(|s| (s + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            out.push_str(&format!(
                "          {} -> {}  tracked {} -> {}\n",
                self.tuples[i],
                self.tuples[i + 1],
                self.jsets[i],
                self.jsets[i + 1]
            ));
        }
        if self.steps.is_empty() {
            out.push_str("empty decomposition (identity element)\n");
        }
        out
    }
}

/// The rank-7 example used throughout the decomposition tests: the
/// branched graph D7 with its four-factor standard decomposition.
pub fn d7_example(g: &CoxeterGraph) -> (Element, Tuple, Tuple, GenSet) {
    debug_assert_eq!(g.rank(), 7);
    let word: Vec<usize> = [
        6, 5, 4, 3, // ω3
        7, 5, 4, 6, 5, 7, // ω2
        3, 4, 5, 6, // ω1
        2, 3, 4, 5, 1, 2, 3, 4, // ω0
    ]
    .iter()
    .map(|&i| i - 1)
    .collect();
    let u = from_word(g, &word);
    let y = Tuple::new(vec![0, 1, 2]).unwrap();
    let z = Tuple::new(vec![4, 3, 2]).unwrap();
    (u, y, z, GenSet::singleton(4))
}
