//! Finite posets stored as a strict order plus its Hasse diagram.
//!
//! Vertices are kept sorted by [`VertexId`]'s ordering, so the position of a
//! vertex in [`Poset::vertices`] is also its canonical rank. Every derived
//! listing (covers, chains, antichains, edge sets) follows that rank.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits::BitMatrix;

/// Prefix reserved for serialized dummy vertices.
pub const DUMMY_PREFIX: &str = "_d";

/// Name of a poset element.
///
/// Originals come from user input. Dummies are introduced by subdivision and
/// are named after the cover they were placed on, plus a round counter that
/// separates repeated subdivisions of the same pair.
///
/// The derived ordering puts every original before every dummy, originals
/// lexicographically by label, dummies by `(lower, upper, round)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VertexId {
    Original(String),
    Dummy {
        lower: Box<VertexId>,
        upper: Box<VertexId>,
        round: u32,
    },
}

impl VertexId {
    /// Builds an original vertex, rejecting labels the text format cannot carry.
    pub fn original(label: impl Into<String>) -> Result<VertexId, PosetError> {
        let label = label.into();
        validate_label(&label)?;
        Ok(VertexId::Original(label))
    }

    pub fn dummy(lower: VertexId, upper: VertexId, round: u32) -> VertexId {
        assert!(round >= 1, "dummy rounds start at 1");
        VertexId::Dummy {
            lower: Box::new(lower),
            upper: Box::new(upper),
            round,
        }
    }

    pub fn is_dummy(&self) -> bool {
        matches!(self, VertexId::Dummy { .. })
    }

    /// Exchanges `lower` and `upper` in every dummy, recursively.
    ///
    /// This is the renaming under which subdivision commutes with duality.
    pub fn swap_ends(&self) -> VertexId {
        match self {
            VertexId::Original(_) => self.clone(),
            VertexId::Dummy {
                lower,
                upper,
                round,
            } => VertexId::dummy(upper.swap_ends(), lower.swap_ends(), *round),
        }
    }

    fn write_encoded(&self, out: &mut String) {
        match self {
            VertexId::Original(label) => out.push_str(label),
            VertexId::Dummy {
                lower,
                upper,
                round,
            } => {
                out.push_str(DUMMY_PREFIX);
                out.push('.');
                lower.write_encoded(out);
                out.push('.');
                upper.write_encoded(out);
                out.push('.');
                out.push_str(&round.to_string());
            }
        }
    }
}

/// Checks that `label` can name an original vertex.
///
/// Labels are nonempty and contain no whitespace and none of `<`, `#`, `.`,
/// `;`, `"`. The bare token `_d` is reserved for the dummy encoding.
pub fn validate_label(label: &str) -> Result<(), PosetError> {
    let bad = label.is_empty()
        || label == DUMMY_PREFIX
        || label
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '<' | '#' | '.' | ';' | '"'));
    if bad {
        Err(PosetError::InvalidLabel(label.to_string()))
    } else {
        Ok(())
    }
}

impl fmt::Display for VertexId {
    /// Text encoding: originals print their label, dummies print
    /// `_d.<lower>.<upper>.<round>` with the ends encoded recursively.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_encoded(&mut s);
        f.write_str(&s)
    }
}

impl FromStr for VertexId {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<VertexId, PosetError> {
        let mut tokens = s.split('.');
        let id = decode_tokens(&mut tokens).ok_or_else(|| PosetError::InvalidLabel(s.into()))?;
        if tokens.next().is_some() {
            return Err(PosetError::InvalidLabel(s.into()));
        }
        Ok(id)
    }
}

// Prefix-form decoding: `_d` introduces a dummy whose two ends and round follow.
fn decode_tokens<'a>(tokens: &mut impl Iterator<Item = &'a str>) -> Option<VertexId> {
    let head = tokens.next()?;
    if head == DUMMY_PREFIX {
        let lower = decode_tokens(tokens)?;
        let upper = decode_tokens(tokens)?;
        let round: u32 = tokens.next()?.parse().ok()?;
        if round == 0 {
            return None;
        }
        Some(VertexId::dummy(lower, upper, round))
    } else {
        VertexId::original(head).ok()
    }
}

/// A covering pair `lower ≺ upper`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    pub lower: VertexId,
    pub upper: VertexId,
}

impl Edge {
    pub fn new(lower: VertexId, upper: VertexId) -> Edge {
        Edge { lower, upper }
    }

    /// Parses the `x<y` token form.
    pub fn parse(token: &str) -> Result<Edge, PosetError> {
        let (lo, hi) = token
            .split_once('<')
            .ok_or_else(|| PosetError::InvalidLabel(token.into()))?;
        Ok(Edge::new(lo.parse()?, hi.parse()?))
    }

    pub fn reversed(&self) -> Edge {
        Edge::new(self.upper.clone(), self.lower.clone())
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<{}", self.lower, self.upper)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("order relation has a cycle through `{0}`")]
    Cycle(VertexId),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("invalid element label `{0}`")]
    InvalidLabel(String),
}

/// A finite strict partial order.
///
/// Equality compares vertex sets and closures exactly, without any
/// isomorphism search.
#[derive(Clone)]
pub struct Poset {
    vertices: Vec<VertexId>,
    less: BitMatrix,
    greater: BitMatrix,
    covers: BitMatrix,
    covered_by: BitMatrix,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Poset) -> bool {
        self.vertices == other.vertices && self.less == other.less
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self.cover_edges().iter().map(Edge::to_string).collect();
        f.debug_struct("Poset")
            .field("vertices", &self.vertices.iter().map(ToString::to_string).collect::<Vec<_>>())
            .field("covers", &covers)
            .finish()
    }
}

impl Poset {
    /// The poset with no elements.
    pub fn empty() -> Poset {
        Poset::from_closure(Vec::new(), BitMatrix::new(0))
    }

    /// Builds a poset from labels and any set of order pairs whose transitive
    /// closure is a strict order. Pairs need be neither reduced nor closed.
    pub fn from_relation<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Poset, PosetError> {
        let ids = elements
            .iter()
            .map(|e| VertexId::original(e.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let pairs = pairs
            .iter()
            .map(|(x, y)| {
                let known = |s: &str| {
                    elements
                        .iter()
                        .any(|e| e.as_ref() == s)
                        .then(|| VertexId::Original(s.to_string()))
                        .ok_or_else(|| PosetError::UnknownElement(s.to_string()))
                };
                Ok((known(x.as_ref())?, known(y.as_ref())?))
            })
            .collect::<Result<Vec<_>, PosetError>>()?;
        Poset::new(ids, pairs)
    }

    /// Same as [`Poset::from_relation`] over arbitrary vertex ids.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Poset, PosetError> {
        let mut vertices: Vec<VertexId> = vertices.into_iter().collect();
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(PosetError::DuplicateElement(w[0].to_string()));
        }
        let mut less = BitMatrix::new(vertices.len());
        for (x, y) in pairs {
            let i = index_in(&vertices, &x)?;
            let j = index_in(&vertices, &y)?;
            if i == j {
                return Err(PosetError::Cycle(x));
            }
            less.set(i, j);
        }
        less.close_transitively();
        if let Some(i) = (0..vertices.len()).find(|&i| less.get(i, i)) {
            return Err(PosetError::Cycle(vertices[i].clone()));
        }
        Ok(Poset::from_closure(vertices, less))
    }

    /// `vertices` must be sorted and `less` a transitively closed strict order.
    pub(crate) fn from_closure(vertices: Vec<VertexId>, less: BitMatrix) -> Poset {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(vertices.len(), less.len());
        let covers = less.reduction();
        Poset {
            greater: less.transpose(),
            covered_by: covers.transpose(),
            vertices,
            less,
            covers,
        }
    }

    /// Chain `labels[0] < labels[1] < ...`.
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> Result<Poset, PosetError> {
        let pairs: Vec<(&str, &str)> = labels
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        let labels: Vec<&str> = labels.iter().map(AsRef::as_ref).collect();
        Poset::from_relation(&labels, &pairs)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices in canonical order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index_of(v).is_some()
    }

    fn pair(&self, x: &VertexId, y: &VertexId) -> Result<(usize, usize), PosetError> {
        Ok((index_in(&self.vertices, x)?, index_in(&self.vertices, y)?))
    }

    /// Reflexive order test `x ≤ y`.
    pub fn leq(&self, x: &VertexId, y: &VertexId) -> Result<bool, PosetError> {
        let (i, j) = self.pair(x, y)?;
        Ok(i == j || self.less.get(i, j))
    }

    /// Strict order test `x < y`.
    pub fn lt(&self, x: &VertexId, y: &VertexId) -> Result<bool, PosetError> {
        let (i, j) = self.pair(x, y)?;
        Ok(self.less.get(i, j))
    }

    /// Cover test `x ≺ y`.
    pub fn covers(&self, x: &VertexId, y: &VertexId) -> Result<bool, PosetError> {
        let (i, j) = self.pair(x, y)?;
        Ok(self.covers.get(i, j))
    }

    pub fn incomparable(&self, x: &VertexId, y: &VertexId) -> Result<bool, PosetError> {
        let (i, j) = self.pair(x, y)?;
        Ok(self.inc_idx(i, j))
    }

    /// The covering pairs (the Hasse diagram), in canonical edge order.
    pub fn cover_edges(&self) -> Vec<Edge> {
        self.cover_pairs_idx()
            .into_iter()
            .map(|(i, j)| self.edge(i, j))
            .collect()
    }

    pub fn cover_count(&self) -> usize {
        self.covers.count()
    }

    /// Number of strict comparabilities `x < y`.
    pub fn comparability_count(&self) -> usize {
        self.less.count()
    }

    pub fn dummy_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_dummy()).count()
    }

    /// The same elements with the order reversed. Vertex names are kept.
    pub fn dual(&self) -> Poset {
        Poset {
            vertices: self.vertices.clone(),
            less: self.greater.clone(),
            greater: self.less.clone(),
            covers: self.covered_by.clone(),
            covered_by: self.covers.clone(),
        }
    }

    /// Renames every vertex through `f`, which must be injective on the vertex set.
    pub fn map_ids(&self, f: impl Fn(&VertexId) -> VertexId) -> Result<Poset, PosetError> {
        let renamed: Vec<VertexId> = self.vertices.iter().map(&f).collect();
        let pairs = self
            .less_pairs_idx()
            .map(|(i, j)| (renamed[i].clone(), renamed[j].clone()))
            .collect::<Vec<_>>();
        Poset::new(renamed, pairs)
    }

    /// Restriction of the order to `keep`, which must be a subset of the vertices.
    pub fn induced(&self, keep: &[VertexId]) -> Result<Poset, PosetError> {
        let mut idx = keep
            .iter()
            .map(|v| index_in(&self.vertices, v))
            .collect::<Result<Vec<_>, _>>()?;
        idx.sort_unstable();
        idx.dedup();
        let mut less = BitMatrix::new(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                if self.less.get(i, j) {
                    less.set(a, b);
                }
            }
        }
        let vertices = idx.iter().map(|&i| self.vertices[i].clone()).collect();
        Ok(Poset::from_closure(vertices, less))
    }

    /// All maximal chains, each listed bottom-up.
    ///
    /// In a finite poset these are exactly the paths of the Hasse diagram
    /// from a minimal to a maximal element.
    pub fn maximal_chains(&self) -> Vec<Vec<VertexId>> {
        self.maximal_chains_idx()
            .into_iter()
            .map(|c| self.ids(&c))
            .collect()
    }

    /// All maximal antichains, each in canonical vertex order.
    pub fn maximal_antichains(&self) -> Vec<Vec<VertexId>> {
        self.maximal_antichains_idx()
            .into_iter()
            .map(|c| self.ids(&c))
            .collect()
    }

    pub(crate) fn maximal_chains_idx(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        for v in 0..self.len() {
            if self.covered_by.ones(v).next().is_none() {
                self.extend_chain(v, &mut path, &mut out);
            }
        }
        out.sort();
        out
    }

    fn extend_chain(&self, v: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        path.push(v);
        let mut top = true;
        for u in self.covers.ones(v) {
            top = false;
            self.extend_chain(u, path, out);
        }
        if top {
            out.push(path.clone());
        }
        path.pop();
    }

    pub(crate) fn maximal_antichains_idx(&self) -> Vec<Vec<usize>> {
        // Maximal cliques of the incomparability graph (Bron–Kerbosch with pivoting).
        let mut out = Vec::new();
        let all: Vec<usize> = (0..self.len()).collect();
        self.bron_kerbosch(&mut Vec::new(), all, Vec::new(), &mut out);
        for a in &mut out {
            a.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        clique: &mut Vec<usize>,
        candidates: Vec<usize>,
        excluded: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if candidates.is_empty() {
            if excluded.is_empty() && !clique.is_empty() {
                out.push(clique.clone());
            }
            return;
        }
        let pivot = candidates
            .iter()
            .chain(&excluded)
            .copied()
            .max_by_key(|&u| candidates.iter().filter(|&&v| self.inc_idx(u, v)).count())
            .expect("nonempty");
        let branch: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&v| !self.inc_idx(pivot, v))
            .collect();
        let mut candidates = candidates;
        let mut excluded = excluded;
        for v in branch {
            clique.push(v);
            let next_c = candidates.iter().copied().filter(|&u| self.inc_idx(u, v)).collect();
            let next_x = excluded.iter().copied().filter(|&u| self.inc_idx(u, v)).collect();
            self.bron_kerbosch(clique, next_c, next_x, out);
            clique.pop();
            candidates.retain(|&u| u != v);
            excluded.push(v);
        }
    }

    // Index-level accessors used by the detection and subdivision code.

    #[inline]
    pub(crate) fn lt_idx(&self, i: usize, j: usize) -> bool {
        self.less.get(i, j)
    }

    #[inline]
    pub(crate) fn cover_idx(&self, i: usize, j: usize) -> bool {
        self.covers.get(i, j)
    }

    #[inline]
    pub(crate) fn inc_idx(&self, i: usize, j: usize) -> bool {
        i != j && !self.less.get(i, j) && !self.less.get(j, i)
    }

    pub(crate) fn upper_covers_idx(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.ones(i)
    }

    pub(crate) fn lower_covers_idx(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.covered_by.ones(i)
    }

    pub(crate) fn above_idx(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.less.ones(i)
    }

    pub(crate) fn below_idx(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.greater.ones(i)
    }

    pub(crate) fn cover_pairs_idx(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.covers.ones(i).map(move |j| (i, j)))
            .collect()
    }

    pub(crate) fn less_pairs_idx(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| self.less.ones(i).map(move |j| (i, j)))
    }

    pub(crate) fn edge(&self, i: usize, j: usize) -> Edge {
        Edge::new(self.vertices[i].clone(), self.vertices[j].clone())
    }

    fn ids(&self, idx: &[usize]) -> Vec<VertexId> {
        idx.iter().map(|&i| self.vertices[i].clone()).collect()
    }
}

/// Structural equality of two posets: same vertex ids, same order.
pub fn equals(p: &Poset, q: &Poset) -> bool {
    p == q
}

fn index_in(vertices: &[VertexId], v: &VertexId) -> Result<usize, PosetError> {
    vertices
        .binary_search(v)
        .map_err(|_| PosetError::UnknownElement(v.to_string()))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub(crate) fn v(s: &str) -> VertexId {
        s.parse().unwrap()
    }

    pub(crate) fn c3() -> Poset {
        Poset::chain(&["x", "y", "z"]).unwrap()
    }

    /// a≺c, b≺c, b≺d.
    pub(crate) fn p4() -> Poset {
        Poset::from_relation(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")]).unwrap()
    }

    /// a≺c, b≺c, b≺d, a≺d, a≺p.
    pub(crate) fn p5() -> Poset {
        Poset::from_relation(
            &["a", "b", "c", "d", "p"],
            &[("a", "c"), ("b", "c"), ("b", "d"), ("a", "d"), ("a", "p")],
        )
        .unwrap()
    }

    pub(crate) fn edges(p: &[(&str, &str)]) -> Vec<Edge> {
        p.iter().map(|(x, y)| Edge::new(v(x), v(y))).collect()
    }
}
