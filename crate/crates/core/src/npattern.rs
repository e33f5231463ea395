//! Detection of N patterns and the edge sets derived from them.
//!
//! An N is four distinct vertices `a, b, c, d` with `b ≺ c`, `a ≺ c`,
//! `b ≺ d` and `a`, `d` incomparable; `(b, c)` is its diagonal edge. The
//! two relaxed forms are recognised as well (see [`NForm`]).

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::BitMatrix;
use crate::poset::{Edge, Poset, VertexId};

/// Which reading of the N pattern to search for.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NForm {
    /// `b ≺ c`, `a ≺ c`, `b ≺ d`, `a ∥ d`.
    N,
    /// `b ≺ c`, `a < c`, `b < d`, `a ∥ d`.
    NPrime,
    /// `b ≺ c`, `a ≺ c`, `b ≺ d`, and `(a, d)` is not a cover; `a < d` through
    /// a longer path is allowed.
    NDiag,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NWitness {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
    pub d: VertexId,
    pub form: NForm,
}

impl NWitness {
    pub fn diagonal(&self) -> Edge {
        Edge::new(self.b.clone(), self.c.clone())
    }
}

impl fmt::Display for NWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={} c={} d={}", self.a, self.b, self.c, self.d)
    }
}

/// Canonically ordered set of cover edges.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> EdgeSet {
        EdgeSet::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> {
        self.0.iter()
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        self.0.union(&other.0).cloned().collect()
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        self.0.intersection(&other.0).cloned().collect()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Every edge with its ends swapped.
    pub fn reversed(&self) -> EdgeSet {
        self.0.iter().map(Edge::reversed).collect()
    }

    pub(crate) fn from_idx(p: &Poset, pairs: &[(usize, usize)]) -> EdgeSet {
        pairs.iter().map(|&(i, j)| p.edge(i, j)).collect()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> EdgeSet {
        EdgeSet(iter.into_iter().collect())
    }
}

impl IntoIterator for EdgeSet {
    type Item = Edge;
    type IntoIter = std::collections::btree_set::IntoIter<Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for EdgeSet {
    /// One `x<y` per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// All witnesses of the requested form, ordered by `(a, b, c, d)`.
pub fn find_ns(p: &Poset, form: NForm) -> Vec<NWitness> {
    let mut quads = Vec::new();
    for_each_n(p, form, |q| {
        quads.push(q);
        false
    });
    quads.sort_unstable();
    quads
        .into_iter()
        .map(|[a, b, c, d]| NWitness {
            a: p.vertices()[a].clone(),
            b: p.vertices()[b].clone(),
            c: p.vertices()[c].clone(),
            d: p.vertices()[d].clone(),
            form,
        })
        .collect()
}

/// Calls `visit` with every `[a, b, c, d]` witness until it returns `true`.
/// Returns whether the scan was stopped early.
pub(crate) fn for_each_n(p: &Poset, form: NForm, mut visit: impl FnMut([usize; 4]) -> bool) -> bool {
    for (b, c) in p.cover_pairs_idx() {
        match form {
            NForm::N => {
                for a in p.lower_covers_idx(c).filter(|&a| a != b) {
                    for d in p.upper_covers_idx(b).filter(|&d| d != c) {
                        if p.inc_idx(a, d) && visit([a, b, c, d]) {
                            return true;
                        }
                    }
                }
            }
            NForm::NPrime => {
                for a in p.below_idx(c).filter(|&a| a != b) {
                    for d in p.above_idx(b).filter(|&d| d != c) {
                        if p.inc_idx(a, d) && visit([a, b, c, d]) {
                            return true;
                        }
                    }
                }
            }
            NForm::NDiag => {
                for a in p.lower_covers_idx(c).filter(|&a| a != b) {
                    for d in p.upper_covers_idx(b).filter(|&d| d != c) {
                        if a != d && !p.cover_idx(a, d) && visit([a, b, c, d]) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

pub(crate) fn diagonals_idx(p: &Poset, form: NForm) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for_each_n(p, form, |[_, b, c, _]| {
        out.push((b, c));
        false
    });
    out.sort_unstable();
    out.dedup();
    out
}

pub(crate) fn a_set_idx(p: &Poset, n_diag: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut diag = BitMatrix::new(p.len());
    for &(i, j) in n_diag {
        diag.set(i, j);
    }
    p.cover_pairs_idx()
        .into_iter()
        .filter(|&(b, c)| !diag.get(b, c))
        .filter(|&(b, c)| {
            p.below_idx(c).filter(|&a| p.inc_idx(a, b)).any(|a| {
                p.above_idx(b)
                    .filter(|&d| p.inc_idx(c, d))
                    .any(|d| diag.get(a, c) || diag.get(b, d))
            })
        })
        .collect()
}

/// Diagonal edges of all form-N witnesses.
pub fn n_diag(p: &Poset) -> EdgeSet {
    EdgeSet::from_idx(p, &diagonals_idx(p, NForm::N))
}

/// Diagonal edges of all N's of the diagram (form [`NForm::NDiag`]).
pub fn nd_diag(p: &Poset) -> EdgeSet {
    EdgeSet::from_idx(p, &diagonals_idx(p, NForm::NDiag))
}

/// Cover edges outside `n_diag(p)` that become diagonal edges once the
/// current diagonals are subdivided.
///
/// `(b, c)` belongs to the set when some `a < c` and `b < d` (full order, not
/// covers) have `a ∥ b`, `c ∥ d`, and `(a, c)` or `(b, d)` is a diagonal edge.
pub fn a_set(p: &Poset) -> EdgeSet {
    let diag = diagonals_idx(p, NForm::N);
    EdgeSet::from_idx(p, &a_set_idx(p, &diag))
}

pub fn is_n_free(p: &Poset) -> bool {
    !for_each_n(p, NForm::N, |_| true)
}

/// Chain-antichain completeness: every maximal chain meets every maximal antichain.
pub fn is_cac(p: &Poset) -> bool {
    let antichains = p.maximal_antichains_idx();
    let mut on_chain = vec![false; p.len()];
    p.maximal_chains_idx().iter().all(|chain| {
        on_chain.iter_mut().for_each(|x| *x = false);
        for &v in chain {
            on_chain[v] = true;
        }
        antichains.iter().all(|a| a.iter().any(|&v| on_chain[v]))
    })
}

/// No four vertices induce exactly the comparabilities `a < c`, `b < c`, `b < d`.
pub fn is_series_parallel(p: &Poset) -> bool {
    for b in 0..p.len() {
        for c in p.above_idx(b) {
            for a in p.below_idx(c).filter(|&a| p.inc_idx(a, b)) {
                if p.above_idx(b).any(|d| p.inc_idx(a, d) && p.inc_idx(c, d)) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::*;

    fn set(p: &[(&str, &str)]) -> EdgeSet {
        edges(p).into_iter().collect()
    }

    fn quads(ws: &[NWitness]) -> Vec<[String; 4]> {
        ws.iter()
            .map(|w| [w.a.to_string(), w.b.to_string(), w.c.to_string(), w.d.to_string()])
            .collect()
    }

    #[test]
    fn single_n_has_one_witness() {
        let ws = find_ns(&p4(), NForm::N);
        assert_eq!(quads(&ws), vec![["a", "b", "c", "d"]]);
        assert_eq!(ws[0].diagonal(), Edge::new(v("b"), v("c")));
        assert!(find_ns(&c3(), NForm::N).is_empty());
    }

    #[test]
    fn p5_witnesses() {
        // Roles (a, b, c, d): diagonal (a,c) is witnessed by b≺c, a≺p; diagonal
        // (a,d) by b≺d, a≺p.
        let ws = find_ns(&p5(), NForm::N);
        assert_eq!(quads(&ws), vec![["b", "a", "c", "p"], ["b", "a", "d", "p"]]);
    }

    #[test]
    fn edge_sets_on_fixtures() {
        assert_eq!(n_diag(&p4()), set(&[("b", "c")]));
        assert!(n_diag(&c3()).is_empty());
        assert_eq!(n_diag(&p5()), set(&[("a", "c"), ("a", "d")]));

        assert_eq!(nd_diag(&p4()), set(&[("b", "c")]));
        assert!(nd_diag(&c3()).is_empty());
        assert_eq!(nd_diag(&p5()), set(&[("a", "c"), ("a", "d")]));
        assert!(nd_diag(&p5()).is_subset(&n_diag(&p5()).union(&a_set(&p5()))));

        assert!(a_set(&p4()).is_empty());
        assert!(a_set(&c3()).is_empty());
        assert_eq!(a_set(&p5()), set(&[("b", "c"), ("b", "d")]));
    }

    #[test]
    fn nd_diag_sees_long_comparabilities() {
        // a≺c, b≺c, b≺d and a<d only through e. Not an N of the poset, but an
        // N of the diagram.
        let p = Poset::from_relation(
            &["a", "b", "c", "d", "e"],
            &[("a", "c"), ("b", "c"), ("b", "d"), ("a", "e"), ("e", "d")],
        )
        .unwrap();
        assert!(nd_diag(&p).contains(&Edge::new(v("b"), v("c"))));
        assert!(!find_ns(&p, NForm::N)
            .iter()
            .any(|w| w.diagonal() == Edge::new(v("b"), v("c"))));
    }

    #[test]
    fn predicates_on_fixtures() {
        assert!(!is_n_free(&p4()));
        assert!(is_n_free(&c3()));
        assert!(is_cac(&c3()));
        assert!(!is_cac(&p4()));
        assert!(is_series_parallel(&c3()));
        assert!(!is_series_parallel(&p4()));
        assert!(!is_series_parallel(&p5()));
        for p in [Poset::empty(), Poset::from_relation(&["s"], &[]).unwrap()] {
            assert!(is_n_free(&p) && is_cac(&p) && is_series_parallel(&p));
            assert!(n_diag(&p).is_empty() && a_set(&p).is_empty() && nd_diag(&p).is_empty());
        }
    }

    #[test]
    fn n_free_but_not_series_parallel() {
        // Full subdivision of N: N-free, yet the induced N on the originals remains.
        let p = Poset::from_relation(
            &["a", "b", "c", "d", "u", "v", "w"],
            &[("a", "u"), ("u", "c"), ("b", "v"), ("v", "c"), ("b", "w"), ("w", "d")],
        )
        .unwrap();
        assert!(is_n_free(&p));
        assert!(is_cac(&p));
        assert!(!is_series_parallel(&p));
    }

    #[test]
    fn edge_set_display() {
        assert_eq!(set(&[("b", "d"), ("a", "c")]).to_string(), "a<c\nb<d\n");
    }
}
