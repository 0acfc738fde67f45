//! The geometric representation: exact roots, group elements as matrices
//! on the root space, lengths and reduced words by greedy descent,
//! inversion sets, longest elements, and positive-root enumeration.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::field::{cos_pi_over, FieldElem, Sign};
use crate::graph::{CoxeterGraph, GenSet, Label};
use crate::{Error, Result};

/// A vector over the simple-root basis; for actual roots the unit-norm,
/// sign-trichotomy and connected-support invariants hold.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub coords: Vec<FieldElem>,
}

impl Root {
    pub fn simple(n: usize, s: usize) -> Self {
        let mut coords = vec![FieldElem::zero(); n];
        coords[s] = FieldElem::one();
        Root { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn support(&self) -> GenSet {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Positive / negative sign classification; `None` for the zero
    /// vector or mixed signs (which genuine roots never have).
    pub fn sign(&self) -> Option<Sign> {
        let mut nonneg = true;
        let mut nonpos = true;
        let mut all_zero = true;
        for c in &self.coords {
            match c.sign() {
                Sign::Positive => {
                    nonpos = false;
                    all_zero = false;
                }
                Sign::Negative => {
                    nonneg = false;
                    all_zero = false;
                }
                Sign::Zero => {}
            }
            if !nonneg && !nonpos {
                return None;
            }
        }
        if all_zero {
            None
        } else if nonneg {
            Some(Sign::Positive)
        } else if nonpos {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Some(Sign::Positive)
    }

    /// Value-wise lexicographic comparison of coordinates.
    pub fn cmp_coords_value(&self, other: &Root) -> Ordering {
        for (a, b) in self.coords.iter().zip(other.coords.iter()) {
            match a.cmp_value(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The Gram matrix of the bilinear form: 1 on the diagonal,
/// −cos(π/m(s,t)) off it, and −1 for ∞-bonds.
pub fn gram(g: &CoxeterGraph) -> Vec<Vec<FieldElem>> {
    let n = g.rank();
    let mut b = vec![vec![FieldElem::zero(); n]; n];
    for i in 0..n {
        b[i][i] = FieldElem::one();
        for j in i + 1..n {
            let v = match g.label(i, j) {
                Label::Infinite => -&FieldElem::one(),
                Label::Finite(m) => -&cos_pi_over(m as u64).expect("validated label"),
            };
            b[i][j] = v.clone();
            b[j][i] = v;
        }
    }
    b
}

pub fn bilinear(b: &[Vec<FieldElem>], u: &[FieldElem], v: &[FieldElem]) -> FieldElem {
    let mut acc = FieldElem::zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            acc = &acc + &(&(ui * vj) * &b[i][j]);
        }
    }
    acc
}

/// A group element as its exact matrix action on the root space;
/// column s holds the image of α_s.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    cols: Vec<Vec<FieldElem>>,
}

pub type Word = Vec<usize>;

impl Element {
    pub fn identity(n: usize) -> Self {
        Element {
            cols: (0..n).map(|s| Root::simple(n, s).coords).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|s| {
            self.cols[s]
                .iter()
                .enumerate()
                .all(|(i, c)| if i == s { c.is_one() } else { c.is_zero() })
        })
    }

    pub fn column(&self, s: usize) -> &[FieldElem] {
        &self.cols[s]
    }

    /// Image of a coordinate vector.
    pub fn act(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let n = self.dim();
        let mut out = vec![FieldElem::zero(); n];
        for (s, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                if self.cols[s][i].is_zero() {
                    continue;
                }
                out[i] = &out[i] + &(c * &self.cols[s][i]);
            }
        }
        out
    }

    pub fn act_root(&self, r: &Root) -> Root {
        Root {
            coords: self.act(&r.coords),
        }
    }

    /// Matrix product: `self * rhs` acts by `rhs` first.
    pub fn mul(&self, rhs: &Element) -> Element {
        Element {
            cols: rhs.cols.iter().map(|c| self.act(c)).collect(),
        }
    }

    /// In-place right multiplication by a simple reflection: column t
    /// becomes col_t − 2⟨α_s, α_t⟩ col_s, so the whole update is a rank-1
    /// correction instead of a full matrix product.
    pub fn mul_simple_right(&mut self, b: &[Vec<FieldElem>], s: usize) {
        let n = self.dim();
        let base = self.cols[s].clone();
        for t in 0..n {
            let coef = b[s][t].double();
            if coef.is_zero() {
                continue;
            }
            for i in 0..n {
                if base[i].is_zero() {
                    continue;
                }
                self.cols[t][i] = &self.cols[t][i] - &(&coef * &base[i]);
            }
        }
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Element> {
        let n = self.dim();
        // rows of the augmented system [M | I]
        let mut m: Vec<Vec<FieldElem>> = (0..n)
            .map(|i| (0..n).map(|j| self.cols[j][i].clone()).collect())
            .collect();
        let mut inv: Vec<Vec<FieldElem>> = (0..n)
            .map(|i| Root::simple(n, i).coords)
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| Error::InvariantViolation("singular element matrix".into()))?;
            m.swap(col, pivot);
            inv.swap(col, pivot);
            let scale = m[col][col].inv()?;
            for j in 0..n {
                m[col][j] = &m[col][j] * &scale;
                inv[col][j] = &inv[col][j] * &scale;
            }
            for r in 0..n {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].clone();
                for j in 0..n {
                    m[r][j] = &m[r][j] - &(&factor * &m[col][j]);
                    inv[r][j] = &inv[r][j] - &(&factor * &inv[col][j]);
                }
            }
        }
        // inv now holds rows of the inverse; transpose into columns
        Ok(Element {
            cols: (0..n)
                .map(|j| (0..n).map(|i| inv[i][j].clone()).collect())
                .collect(),
        })
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[")?;
        for (s, c) in self.cols.iter().enumerate() {
            if s > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", Root { coords: c.clone() })?;
        }
        write!(f, "]")
    }
}

/// The simple reflection s acting by v ↦ v − 2⟨α_s, v⟩α_s.
pub fn simple_reflection(g: &CoxeterGraph, s: usize) -> Element {
    let b = gram(g);
    simple_reflection_with_gram(g, &b, s)
}

fn is_simple_of(r: &Root, s: usize) -> bool {
    r.coords
        .iter()
        .enumerate()
        .all(|(i, c)| if i == s { c.is_one() } else { c.is_zero() })
}

/// Apply the simple reflection s to a root directly: a rank-1 update
/// using one row of the Gram matrix, much cheaper than a matrix product.
pub fn reflect_simple(b: &[Vec<FieldElem>], s: usize, r: &Root) -> Root {
    let mut scale = FieldElem::zero();
    for (j, c) in r.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        scale = &scale + &(c * &b[s][j]);
    }
    let mut coords = r.coords.clone();
    coords[s] = &coords[s] - &scale.double();
    Root { coords }
}

fn simple_reflection_with_gram(g: &CoxeterGraph, b: &[Vec<FieldElem>], s: usize) -> Element {
    let n = g.rank();
    let cols = (0..n)
        .map(|t| {
            let mut col = Root::simple(n, t).coords;
            // α_t − 2⟨α_s, α_t⟩ α_s
            col[s] = &col[s] - &b[s][t].double();
            col
        })
        .collect();
    Element { cols }
}

/// Product of simple reflections in written order: the rightmost letter
/// acts first.
pub fn from_word(g: &CoxeterGraph, word: &[usize]) -> Element {
    let b = gram(g);
    let mut acc = Element::identity(g.rank());
    for &s in word {
        acc.mul_simple_right(&b, s);
    }
    acc
}

/// The reflection along a unit root γ: v ↦ v − 2⟨γ, v⟩γ.
pub fn reflection_along(g: &CoxeterGraph, root: &Root) -> Result<Element> {
    let b = gram(g);
    let norm = bilinear(&b, &root.coords, &root.coords);
    if !norm.is_one() {
        return Err(Error::InvalidRoot(format!(
            "reflection requires a unit vector, got norm {norm}"
        )));
    }
    let n = g.rank();
    let cols = (0..n)
        .map(|t| {
            let mut col = Root::simple(n, t).coords;
            let scale = bilinear(&b, &root.coords, &col).double();
            for i in 0..n {
                col[i] = &col[i] - &(&scale * &root.coords[i]);
            }
            col
        })
        .collect();
    Ok(Element { cols })
}

const DESCENT_CAP: usize = 1_000_000;

/// Greedy descent: repeatedly strip the least generator sent to a
/// negative root. Returns ℓ(w) and a reduced word whose product is w.
pub fn length_and_word(g: &CoxeterGraph, w: &Element) -> Result<(usize, Word)> {
    let b = gram(g);
    let n = g.rank();
    let mut cur = w.clone();
    let mut rev = Vec::new();
    while !cur.is_identity() {
        let s = (0..n)
            .find(|&s| {
                Root {
                    coords: cur.column(s).to_vec(),
                }
                .sign()
                    == Some(Sign::Negative)
            })
            .ok_or_else(|| {
                Error::InvariantViolation("non-identity element with no descent".into())
            })?;
        cur.mul_simple_right(&b, s);
        rev.push(s);
        if rev.len() > DESCENT_CAP {
            return Err(Error::InvariantViolation("descent did not terminate".into()));
        }
    }
    rev.reverse();
    Ok((rev.len(), rev))
}

pub fn length(g: &CoxeterGraph, w: &Element) -> Result<usize> {
    Ok(length_and_word(g, w)?.0)
}

/// The inversion set: positive roots sent negative by w, computed from a
/// reduced word. Its size is ℓ(w).
pub fn inversion_set(g: &CoxeterGraph, w: &Element) -> Result<Vec<Root>> {
    let (_, word) = length_and_word(g, w)?;
    let b = gram(g);
    let n = g.rank();
    // word = s_{i1} … s_{ik}; inversions are s_{ik}···s_{i(j+1)}·α_{ij}
    let mut out = Vec::with_capacity(word.len());
    let mut suffix = Element::identity(n);
    for &s in word.iter().rev() {
        out.push(suffix.act_root(&Root::simple(n, s)));
        suffix.mul_simple_right(&b, s);
    }
    debug_assert!(out.iter().all(|r| r.is_positive()));
    Ok(out)
}

/// Longest element of the (finite-type) standard parabolic subgroup on
/// `subset`, computed by repeated ascent.
pub fn longest_element(g: &CoxeterGraph, subset: GenSet) -> Result<Element> {
    if !crate::graph::is_finite_type(g, subset)? {
        return Err(Error::NotFiniteType { subset });
    }
    let b = gram(g);
    let mut w = Element::identity(g.rank());
    loop {
        let up = subset.iter().find(|&s| {
            Root {
                coords: w.column(s).to_vec(),
            }
            .sign()
                == Some(Sign::Positive)
        });
        match up {
            Some(s) => w.mul_simple_right(&b, s),
            None => return Ok(w),
        }
    }
}

/// All positive roots of the standard parabolic on `subset` (which must
/// be of finite type), in ambient coordinates, sorted by depth and then
/// by descending value-lexicographic coordinates.
pub fn positive_roots(g: &CoxeterGraph, subset: GenSet) -> Result<Vec<Root>> {
    Ok(root_table(g, subset)?.into_roots())
}

/// One enumerated positive root with its depth (simple roots have
/// depth 1) and the generator action cross-references.
pub struct TableEntry {
    pub root: Root,
    pub depth: usize,
    /// for each generator of the subset (in ascending index order):
    /// where the reflection sends this root
    pub actions: Vec<RootAction>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootAction {
    /// the root is the generator's own simple root (sent negative)
    SelfRoot,
    /// fixed: the root is orthogonal to the generator's simple root
    Fixed,
    /// moved to the positive root with this 0-based table index
    Moved(usize),
}

pub struct RootTable {
    pub generators: Vec<usize>,
    pub entries: Vec<TableEntry>,
}

impl RootTable {
    pub fn into_roots(self) -> Vec<Root> {
        self.entries.into_iter().map(|e| e.root).collect()
    }

    fn action_cell(a: RootAction) -> String {
        match a {
            RootAction::SelfRoot => "-".into(),
            RootAction::Fixed => ".".into(),
            RootAction::Moved(k) => (k + 1).to_string(),
        }
    }

    /// Machine format: `index  height  coeffs  actions`, one row per
    /// positive root, actions comma-joined per generator (`-` self,
    /// `.` fixed, index otherwise).
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("index\theight\tcoeffs\tactions\n");
        for (i, e) in self.entries.iter().enumerate() {
            let actions: Vec<String> = e
                .actions
                .iter()
                .map(|&a| Self::action_cell(a))
                .collect();
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                i + 1,
                e.depth,
                e.root,
                actions.join(",")
            ));
        }
        out
    }

    /// Aligned text table with one column per generator, blank cells for
    /// fixed roots and `---` for the generator's own simple root.
    pub fn to_text(&self) -> String {
        let root_width = self
            .entries
            .iter()
            .map(|e| e.root.to_string().len())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut out = format!("{:>5} {:>6}  {:<root_width$}", "index", "height", "root");
        for &s in &self.generators {
            out.push_str(&format!(" {:>5}", format!("r{}", s + 1)));
        }
        out.push('\n');
        for (i, e) in self.entries.iter().enumerate() {
            out.push_str(&format!(
                "{:>5} {:>6}  {:<root_width$}",
                i + 1,
                e.depth,
                e.root.to_string()
            ));
            for &a in &e.actions {
                let cell = match a {
                    RootAction::SelfRoot => "---".into(),
                    RootAction::Fixed => String::new(),
                    RootAction::Moved(k) => (k + 1).to_string(),
                };
                out.push_str(&format!(" {cell:>5}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Enumerate the positive system of a finite-type subset together with
/// depths and generator actions, in the canonical order (depth ascending,
/// then coordinates descending value-lexicographically).
pub fn root_table(g: &CoxeterGraph, subset: GenSet) -> Result<RootTable> {
    if !crate::graph::is_finite_type(g, subset)? {
        return Err(Error::NotFiniteType { subset });
    }
    let b = gram(g);
    let n = g.rank();
    let generators: Vec<usize> = subset.iter().collect();

    let mut depth: HashMap<Root, usize> = HashMap::new();
    let mut frontier: Vec<Root> = generators.iter().map(|&s| Root::simple(n, s)).collect();
    for r in &frontier {
        depth.insert(r.clone(), 1);
    }
    let mut d = 1;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for r in &frontier {
            for &s in &generators {
                // s permutes the positive roots other than α_s
                if is_simple_of(r, s) {
                    continue;
                }
                let img = reflect_simple(&b, s, r);
                if !depth.contains_key(&img) {
                    depth.insert(img.clone(), d);
                    next.push(img);
                }
            }
        }
        frontier = next;
    }

    let mut roots: Vec<(Root, usize)> = depth.into_iter().collect();
    roots.sort_by(|(ra, da), (rb, db)| {
        da.cmp(db).then_with(|| rb.cmp_coords_value(ra))
    });
    let index: BTreeMap<&Root, usize> = roots.iter().enumerate().map(|(i, (r, _))| (r, i)).collect();

    let entries = roots
        .iter()
        .map(|(r, dep)| {
            let actions = generators
                .iter()
                .map(|&s| {
                    if *r == Root::simple(n, s) {
                        RootAction::SelfRoot
                    } else {
                        let img = reflect_simple(&b, s, r);
                        if img == *r {
                            RootAction::Fixed
                        } else {
                            RootAction::Moved(index[&img])
                        }
                    }
                })
                .collect();
            TableEntry {
                root: r.clone(),
                depth: *dep,
                actions,
            }
        })
        .collect();
    Ok(RootTable {
        generators,
        entries,
    })
}

/// A depth-bounded window into the (possibly infinite) positive system.
pub struct DepthWindow {
    pub roots: Vec<Root>,
    /// true when the enumeration hit the root cap before exhausting the
    /// requested depth
    pub truncated: bool,
}

pub const DEFAULT_ROOT_CAP: usize = 20_000;

/// All positive roots reachable from the simple roots by at most `bound`
/// simple reflections, capped at `cap` roots (truncation is reported,
/// never silent).
pub fn roots_up_to_depth(g: &CoxeterGraph, bound: usize, cap: usize) -> DepthWindow {
    let b = gram(g);
    let n = g.rank();
    let mut seen: HashMap<Root, usize> = HashMap::new();
    let mut frontier: Vec<Root> = (0..n).map(|s| Root::simple(n, s)).collect();
    for r in &frontier {
        seen.insert(r.clone(), 0);
    }
    let mut truncated = seen.len() > cap;
    let mut d = 0;
    while d < bound && !frontier.is_empty() && !truncated {
        d += 1;
        let mut next = Vec::new();
        'outer: for r in &frontier {
            for s in 0..n {
                if is_simple_of(r, s) {
                    continue;
                }
                let img = reflect_simple(&b, s, r);
                if !seen.contains_key(&img) {
                    if seen.len() >= cap {
                        truncated = true;
                        break 'outer;
                    }
                    seen.insert(img.clone(), d);
                    next.push(img);
                }
            }
        }
        frontier = next;
    }
    // deterministic order; structural comparison avoids the exact-sign
    // machinery, which matters at window sizes
    let mut roots: Vec<(Root, usize)> = seen.into_iter().collect();
    roots.sort_by(|(ra, da), (rb, db)| da.cmp(db).then_with(|| ra.cmp(rb)));
    DepthWindow {
        roots: roots.into_iter().map(|(r, _)| r).collect(),
        truncated,
    }
}
