//! Exhaustive enumeration of labeled posets on `v1..vn`.
//!
//! The production enumerator grows posets one vertex at a time: a labeled
//! poset on `k + 1` vertices is uniquely a poset on the first `k` plus a
//! down-closed set `D` and an up-closed set `U` for the new vertex, with
//! every element of `D` below every element of `U`. Two slower, unrelated
//! strategies are kept for cross-checking counts and contents.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits::BitMatrix;
use crate::npattern::{self, NForm};
use crate::poset::{Poset, VertexId};

/// Largest `n` enumerated without opting in.
pub const DEFAULT_MAX_N: usize = 6;
/// Largest `n` enumerated at all.
pub const LONG_RUNNING_MAX_N: usize = 7;

/// Strict order on at most 8 vertices: bit `8 * i + j` set iff `i < j`.
pub type Relation = u64;

#[inline]
fn bit(i: usize, j: usize) -> Relation {
    1 << (8 * i + j)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("element count must be at least 1")]
    Empty,
    #[error("n = {0} needs the long-running opt-in")]
    NeedsLongRunning(usize),
    #[error("n = {0} exceeds the enumeration bound of {LONG_RUNNING_MAX_N}")]
    TooLarge(usize),
    #[error("unknown filter `{0}`")]
    UnknownFilter(String),
}

/// Optional predicate restricting an enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Filter {
    NFree,
    HasN,
    SeriesParallel,
    NotSeriesParallel,
    /// Exactly one form-N witness.
    SingleN,
}

impl Filter {
    pub fn accepts(self, p: &Poset) -> bool {
        match self {
            Filter::NFree => npattern::is_n_free(p),
            Filter::HasN => !npattern::is_n_free(p),
            Filter::SeriesParallel => npattern::is_series_parallel(p),
            Filter::NotSeriesParallel => !npattern::is_series_parallel(p),
            Filter::SingleN => {
                let mut count = 0;
                npattern::for_each_n(p, NForm::N, |_| {
                    count += 1;
                    count > 1
                });
                count == 1
            }
        }
    }
}

impl FromStr for Filter {
    type Err = EnumerationError;

    fn from_str(s: &str) -> Result<Filter, EnumerationError> {
        Ok(match s {
            "nfree" => Filter::NFree,
            "has-n" => Filter::HasN,
            "sp" => Filter::SeriesParallel,
            "not-sp" => Filter::NotSeriesParallel,
            "single-n" => Filter::SingleN,
            _ => return Err(EnumerationError::UnknownFilter(s.into())),
        })
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filter::NFree => "nfree",
            Filter::HasN => "has-n",
            Filter::SeriesParallel => "sp",
            Filter::NotSeriesParallel => "not-sp",
            Filter::SingleN => "single-n",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EnumerationSpec {
    pub n: usize,
    pub filter: Option<Filter>,
    pub long_running: bool,
}

impl EnumerationSpec {
    pub fn new(n: usize) -> EnumerationSpec {
        EnumerationSpec {
            n,
            filter: None,
            long_running: false,
        }
    }

    pub fn with_filter(mut self, filter: Filter) -> EnumerationSpec {
        self.filter = Some(filter);
        self
    }

    pub fn long_running(mut self, yes: bool) -> EnumerationSpec {
        self.long_running = yes;
        self
    }

    pub fn validate(&self) -> Result<(), EnumerationError> {
        match self.n {
            0 => Err(EnumerationError::Empty),
            n if n > LONG_RUNNING_MAX_N => Err(EnumerationError::TooLarge(n)),
            n if n > DEFAULT_MAX_N && !self.long_running => Err(EnumerationError::NeedsLongRunning(n)),
            _ => Ok(()),
        }
    }
}

/// Every labeled poset on `v1..vn` exactly once, in a fixed order.
pub fn enumerate_posets(spec: &EnumerationSpec) -> Result<impl Iterator<Item = Poset>, EnumerationError> {
    spec.validate()?;
    let n = spec.n;
    let filter = spec.filter;
    let labels = labels(n);
    Ok(relations(n)
        .map(move |r| poset_from_relation(&labels, r))
        .filter(move |p| filter.is_none_or(|f| f.accepts(p))))
}

/// Relations of all posets on `n` vertices, in enumeration order.
pub fn relations(n: usize) -> impl Iterator<Item = Relation> {
    assert!(n <= 8);
    let mut level = vec![0 as Relation];
    for k in 0..n.saturating_sub(1) {
        level = level.iter().flat_map(|&r| extensions(r, k)).collect();
    }
    let last = n.checked_sub(1);
    level.into_iter().flat_map(move |r| match last {
        Some(k) => extensions(r, k),
        None => vec![r],
    })
}

/// All ways to add vertex `k` to the poset `r` on vertices `0..k`.
fn extensions(r: Relation, k: usize) -> Vec<Relation> {
    let below: Vec<u32> = (0..k)
        .map(|v| (0..k).filter(|&u| r & bit(u, v) != 0).fold(0, |m, u| m | 1 << u))
        .collect();
    let above: Vec<u32> = (0..k)
        .map(|v| (0..k).filter(|&u| r & bit(v, u) != 0).fold(0, |m, u| m | 1 << u))
        .collect();
    let members = |m: u32| (0..k).filter(move |&v| m >> v & 1 == 1);
    let down_closed = |m: u32| members(m).all(|v| below[v] & !m == 0);
    let up_closed = |m: u32| members(m).all(|v| above[v] & !m == 0);
    let downs: Vec<u32> = (0..1u32 << k).filter(|&m| down_closed(m)).collect();
    let ups: Vec<u32> = (0..1u32 << k).filter(|&m| up_closed(m)).collect();
    let mut out = Vec::new();
    for &d in &downs {
        // Everything in U must lie above everything in D.
        let common_above = members(d).fold((1u32 << k) - 1, |acc, v| acc & above[v]);
        for &u in &ups {
            if u & !common_above != 0 {
                continue;
            }
            let mut next = r;
            for v in members(d) {
                next |= bit(v, k);
            }
            for v in members(u) {
                next |= bit(k, v);
            }
            out.push(next);
        }
    }
    out
}

/// Brute force: every relation on `n` vertices that is irreflexive,
/// antisymmetric and transitive. Visits `2^(n(n-1))` relations.
pub fn relations_by_scan(n: usize) -> Vec<Relation> {
    assert!(n <= 5, "scan is only feasible for n <= 5");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let r: Relation = pairs
            .iter()
            .enumerate()
            .filter(|(t, _)| mask >> t & 1 == 1)
            .fold(0, |r, (_, &(i, j))| r | bit(i, j));
        let has = |i: usize, j: usize| r & bit(i, j) != 0;
        let antisymmetric = pairs.iter().all(|&(i, j)| !(has(i, j) && has(j, i)));
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !has(i, j) || (0..n).all(|k| !has(j, k) || has(i, k)))
        });
        if antisymmetric && transitive {
            out.push(r);
        }
    }
    out
}

/// Transitive closures of all acyclic digraphs on `n` vertices, deduplicated.
pub fn relations_by_dag_closure(n: usize) -> BTreeSet<Relation> {
    assert!(n <= 5, "DAG scan is only feasible for n <= 5");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let mut reach = [[false; 8]; 8];
        for (t, &(i, j)) in pairs.iter().enumerate() {
            if mask >> t & 1 == 1 {
                reach[i][j] = true;
            }
        }
        // Repeated squaring until stable.
        loop {
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    if !reach[i][j] && (0..n).any(|k| reach[i][k] && reach[k][j]) {
                        reach[i][j] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if (0..n).any(|i| reach[i][i]) {
            continue;
        }
        let mut r = 0;
        for (i, row) in reach.iter().enumerate() {
            for (j, &yes) in row.iter().enumerate() {
                if yes {
                    r |= bit(i, j);
                }
            }
        }
        out.insert(r);
    }
    out
}

fn labels(n: usize) -> Vec<VertexId> {
    (1..=n).map(|i| VertexId::Original(format!("v{i}"))).collect()
}

/// Builds the poset on `v1..vn` for a relation from this module.
pub fn relation_to_poset(n: usize, r: Relation) -> Poset {
    poset_from_relation(&labels(n), r)
}

fn poset_from_relation(labels: &[VertexId], r: Relation) -> Poset {
    // `v1..v8` sort in index order.
    let n = labels.len();
    let mut less = BitMatrix::new(n);
    for i in 0..n {
        for j in 0..n {
            if r & bit(i, j) != 0 {
                less.set(i, j);
            }
        }
    }
    Poset::from_closure(labels.to_vec(), less)
}
