//! Barycentric subdivision operators.
//!
//! A dummy placed on the cover `(x, y)` is named `Dummy(x, y, r)` where `r`
//! is one more than the largest round already used for that pair. Because
//! the name depends only on the edge, the simultaneous two-pass closure and
//! every sequential run agree vertex for vertex.

use thiserror::Error;

use crate::bits::BitMatrix;
use crate::npattern::{self, EdgeSet, NForm};
use crate::poset::{Edge, Poset, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubdivisionError {
    #[error("`{0}` is not a covering pair")]
    NotACoverEdge(Edge),
    #[error("invalid script at step {step}: {reason}")]
    InvalidScript { step: usize, reason: String },
    #[error("internal error: sequential run exceeded {limit} steps")]
    StepLimitExceeded { limit: usize },
}

/// Places one dummy on each edge of `edges`.
pub fn subdivide(p: &Poset, edges: &EdgeSet) -> Result<Poset, SubdivisionError> {
    let pairs = edges
        .iter()
        .map(|e| match (p.index_of(&e.lower), p.index_of(&e.upper)) {
            (Some(i), Some(j)) if p.cover_idx(i, j) => Ok((i, j)),
            _ => Err(SubdivisionError::NotACoverEdge(e.clone())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(subdivide_idx(p, &pairs).0)
}

/// Index-level subdivision. `pairs` must be distinct covers of `p`.
/// Also returns the ids of the new dummies, in the order of `pairs`.
pub(crate) fn subdivide_idx(p: &Poset, pairs: &[(usize, usize)]) -> (Poset, Vec<VertexId>) {
    let old = p.vertices();
    let dummies: Vec<VertexId> = pairs
        .iter()
        .map(|&(x, y)| {
            let (lo, hi) = (&old[x], &old[y]);
            let last = old
                .iter()
                .filter_map(|v| match v {
                    VertexId::Dummy {
                        lower,
                        upper,
                        round,
                    } if **lower == *lo && **upper == *hi => Some(*round),
                    _ => None,
                })
                .max()
                .unwrap_or(0);
            VertexId::dummy(lo.clone(), hi.clone(), last + 1)
        })
        .collect();

    let mut vertices: Vec<VertexId> = old.iter().chain(&dummies).cloned().collect();
    vertices.sort();
    let pos = |v: &VertexId| vertices.binary_search(v).expect("vertex present");
    let old_pos: Vec<usize> = old.iter().map(pos).collect();
    let new_pos: Vec<usize> = dummies.iter().map(pos).collect();

    let mut less = BitMatrix::new(vertices.len());
    for (i, j) in p.less_pairs_idx() {
        less.set(old_pos[i], old_pos[j]);
    }
    for (k, &(x, y)) in pairs.iter().enumerate() {
        let u = new_pos[k];
        for (z, &zp) in old_pos.iter().enumerate() {
            if z == x || p.lt_idx(z, x) {
                less.set(zp, u);
            }
            if z == y || p.lt_idx(y, z) {
                less.set(u, zp);
            }
        }
        for (l, &(x2, _)) in pairs.iter().enumerate() {
            if y == x2 || p.lt_idx(y, x2) {
                less.set(u, new_pos[l]);
            }
        }
    }
    (Poset::from_closure(vertices, less), dummies)
}

/// One dummy on every cover.
pub fn full_subdivision(p: &Poset) -> Poset {
    subdivide_idx(p, &p.cover_pairs_idx()).0
}

/// One dummy on every diagonal edge of an N.
pub fn s_n(p: &Poset) -> Poset {
    subdivide_idx(p, &npattern::diagonals_idx(p, NForm::N)).0
}

/// The smallest N-free barycentric subdivision, computed as `s_n(s_n(p))`.
pub fn grillet_closure(p: &Poset) -> Poset {
    s_n(&s_n(p))
}

/// Two passes of subdivision on the diagonal edges of the diagram's N's.
pub fn nd_closure(p: &Poset) -> Poset {
    let nd_pass = |q: &Poset| subdivide_idx(q, &npattern::diagonals_idx(q, NForm::NDiag)).0;
    nd_pass(&nd_pass(p))
}

/// How the sequential algorithm picks the next diagonal edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Least diagonal edge in canonical order.
    Lexicographic,
    /// Uniform-ish pick driven by SplitMix64: the edge at index
    /// `next_u64() % count` of the canonically ordered diagonal edges.
    SeededRandom(u64),
    /// Exactly these edges, in order. Each must be a diagonal edge when consumed.
    Scripted(Vec<Edge>),
}

/// SplitMix64 (Steele, Lea, Flood). Fixed so traces are reproducible anywhere.
#[derive(Clone, Debug)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceStep {
    /// 1-based.
    pub index: usize,
    pub edge: Edge,
    pub dummy: VertexId,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RunTrace {
    pub steps: Vec<TraceStep>,
    pub result: Poset,
}

/// Subdivides one diagonal edge at a time until no N remains.
pub fn sequential_closure(p: &Poset, strategy: &Strategy) -> Result<RunTrace, SubdivisionError> {
    sequential_closure_with(p, strategy, |_| {})
}

/// [`sequential_closure`], calling `inspect` on every intermediate poset
/// (the input first, the result last).
pub fn sequential_closure_with(
    p: &Poset,
    strategy: &Strategy,
    mut inspect: impl FnMut(&Poset),
) -> Result<RunTrace, SubdivisionError> {
    let limit = p.cover_count();
    let mut rng = match strategy {
        Strategy::SeededRandom(seed) => Some(SplitMix64::new(*seed)),
        _ => None,
    };
    let mut steps = Vec::new();
    let mut current = p.clone();
    loop {
        inspect(&current);
        let diagonals = npattern::diagonals_idx(&current, NForm::N);
        let step = steps.len() + 1;
        if diagonals.is_empty() {
            if let Strategy::Scripted(script) = strategy {
                if script.len() > steps.len() {
                    return Err(SubdivisionError::InvalidScript {
                        step,
                        reason: format!("poset is N-free but `{}` remains", script[steps.len()]),
                    });
                }
            }
            return Ok(RunTrace {
                steps,
                result: current,
            });
        }
        if steps.len() == limit {
            return Err(SubdivisionError::StepLimitExceeded { limit });
        }
        let chosen = match (strategy, rng.as_mut()) {
            (Strategy::SeededRandom(_), Some(rng)) => {
                diagonals[(rng.next_u64() % diagonals.len() as u64) as usize]
            }
            (Strategy::Scripted(script), _) => {
                let e = script.get(steps.len()).ok_or_else(|| SubdivisionError::InvalidScript {
                    step,
                    reason: "script exhausted while an N remains".into(),
                })?;
                let idx = current.index_of(&e.lower).zip(current.index_of(&e.upper));
                match idx.filter(|ij| diagonals.contains(ij)) {
                    Some(ij) => ij,
                    None => {
                        return Err(SubdivisionError::InvalidScript {
                            step,
                            reason: format!("`{e}` is not a diagonal edge"),
                        })
                    }
                }
            }
            _ => diagonals[0],
        };
        let edge = current.edge(chosen.0, chosen.1);
        let (next, mut dummies) = subdivide_idx(&current, &[chosen]);
        steps.push(TraceStep {
            index: step,
            edge,
            dummy: dummies.pop().expect("one dummy"),
        });
        current = next;
    }
}
