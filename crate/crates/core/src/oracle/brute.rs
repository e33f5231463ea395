//! Definition-level reference implementations.
//!
//! Everything here is read straight off the definitions using only the
//! strict order `x < y` of a poset: covers are found by searching for an
//! element strictly between, patterns by scanning every ordered quadruple,
//! chains and antichains by scanning every vertex subset. Nothing here calls
//! into the detection or reduction code it is used to check.

use std::collections::BTreeSet;

use crate::npattern::NForm;
use crate::poset::Poset;

/// Index pairs, sorted.
pub type Pairs = BTreeSet<(usize, usize)>;

/// Order and cover tables of a poset, rebuilt from `x < y` alone.
pub struct Tables {
    n: usize,
    lt: Vec<bool>,
    cover: Vec<bool>,
}

impl Tables {
    pub fn new(p: &Poset) -> Tables {
        let n = p.len();
        let mut lt = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                lt[i * n + j] = p.lt_idx(i, j);
            }
        }
        let mut cover = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                cover[i * n + j] = lt[i * n + j] && !(0..n).any(|z| lt[i * n + z] && lt[z * n + j]);
            }
        }
        Tables { n, lt, cover }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.lt[i * self.n + j]
    }

    pub fn cover(&self, i: usize, j: usize) -> bool {
        self.cover[i * self.n + j]
    }

    pub fn inc(&self, i: usize, j: usize) -> bool {
        i != j && !self.lt(i, j) && !self.lt(j, i)
    }

    pub fn covers(&self) -> Pairs {
        self.all_pairs().filter(|&(i, j)| self.cover(i, j)).collect()
    }

    fn all_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (0..self.n).map(move |j| (i, j)))
    }

    fn is_witness(&self, form: NForm, [a, b, c, d]: [usize; 4]) -> bool {
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        distinct
            && match form {
                NForm::N => self.cover(b, c) && self.cover(a, c) && self.cover(b, d) && self.inc(a, d),
                NForm::NPrime => self.cover(b, c) && self.lt(a, c) && self.lt(b, d) && self.inc(a, d),
                NForm::NDiag => self.cover(b, c) && self.cover(a, c) && self.cover(b, d) && !self.cover(a, d),
            }
    }

    /// Every ordered quadruple satisfying the form, sorted.
    pub fn witnesses(&self, form: NForm) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        self.scan(form, |q| {
            out.push(q);
            false
        });
        out.sort_unstable();
        out
    }

    pub fn has_n(&self) -> bool {
        self.scan(NForm::N, |_| true)
    }

    // All quadruples, pruned only on the diagonal `b ≺ c` every form requires.
    fn scan(&self, form: NForm, mut visit: impl FnMut([usize; 4]) -> bool) -> bool {
        let n = self.n;
        for b in 0..n {
            for c in (0..n).filter(|&c| self.cover(b, c)) {
                for a in 0..n {
                    for d in 0..n {
                        if self.is_witness(form, [a, b, c, d]) && visit([a, b, c, d]) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    pub fn diagonals(&self, form: NForm) -> Pairs {
        self.witnesses(form).into_iter().map(|[_, b, c, _]| (b, c)).collect()
    }

    /// Covers `(b, c)` outside `diag` with `a < c`, `b < d`, `a ∥ b`, `c ∥ d`
    /// and `(a, c)` or `(b, d)` in `diag`.
    pub fn a_set(&self) -> Pairs {
        let diag = self.diagonals(NForm::N);
        let n = self.n;
        self.covers()
            .into_iter()
            .filter(|e| !diag.contains(e))
            .filter(|&(b, c)| {
                (0..n).any(|a| {
                    (0..n).any(|d| {
                        self.lt(a, c)
                            && self.lt(b, d)
                            && self.inc(a, b)
                            && self.inc(c, d)
                            && (diag.contains(&(a, c)) || diag.contains(&(b, d)))
                    })
                })
            })
            .collect()
    }

    /// Induced N: exactly `a < c`, `b < c`, `b < d` among the six pairs.
    pub fn has_induced_n(&self) -> bool {
        let n = self.n;
        (0..n).any(|a| {
            (0..n).any(|b| {
                (0..n).any(|c| {
                    (0..n).any(|d| {
                        let q = [a, b, c, d];
                        let distinct = (0..4).all(|x| (x + 1..4).all(|y| q[x] != q[y]));
                        distinct
                            && self.lt(a, c)
                            && self.lt(b, c)
                            && self.lt(b, d)
                            && self.inc(a, b)
                            && self.inc(a, d)
                            && self.inc(c, d)
                    })
                })
            })
        })
    }

    fn is_chain(&self, m: u32) -> bool {
        let v = self.members(m);
        v.iter().all(|&x| v.iter().all(|&y| x == y || !self.inc(x, y)))
    }

    fn is_antichain(&self, m: u32) -> bool {
        let v = self.members(m);
        v.iter().all(|&x| v.iter().all(|&y| x == y || self.inc(x, y)))
    }

    fn members(&self, m: u32) -> Vec<usize> {
        (0..self.n).filter(|&v| m >> v & 1 == 1).collect()
    }

    fn maximal_sets(&self, good: impl Fn(u32) -> bool) -> Vec<u32> {
        assert!(self.n <= 16, "subset scan limited to 16 vertices");
        let full = (1u32 << self.n) - 1;
        (1..=full)
            .filter(|&m| good(m))
            .filter(|&m| (0..self.n).all(|v| m >> v & 1 == 1 || !good(m | 1 << v)))
            .collect()
    }

    /// Maximal chains as vertex bitmasks.
    pub fn maximal_chains(&self) -> Vec<u32> {
        self.maximal_sets(|m| self.is_chain(m))
    }

    pub fn maximal_antichains(&self) -> Vec<u32> {
        self.maximal_sets(|m| self.is_antichain(m))
    }

    pub fn is_cac(&self) -> bool {
        let antichains = self.maximal_antichains();
        self.maximal_chains()
            .iter()
            .all(|c| antichains.iter().all(|a| a & c != 0))
    }
}
