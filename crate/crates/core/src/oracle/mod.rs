//! Brute-force ground truth and the exhaustive property suites.
//!
//! [`verify`] runs a suite over every labeled poset of a given size and
//! reports each failed property with the offending poset.

pub mod brute;
mod confluence;
mod enumerate;
mod minimality;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use confluence::{confluence_fuzz, ConfluenceReport};
pub use enumerate::{
    enumerate_posets, relation_to_poset, relations, relations_by_dag_closure, relations_by_scan,
    EnumerationError, EnumerationSpec, Filter, Relation, DEFAULT_MAX_N, LONG_RUNNING_MAX_N,
};
pub use minimality::{minimality_oracle, MinimalityError, MAX_SEARCH_COVERS};

use crate::format::serialize_poset_line;
use crate::npattern::{self, EdgeSet, NForm};
use crate::poset::{Poset, VertexId};
use crate::subdivision::{self, subdivide_idx, Strategy};
use brute::{Pairs, Tables};

/// Random strategies tried per poset by the confluence suite.
pub const CONFLUENCE_TRIALS: usize = 5;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    All,
    NPattern,
    Subdivision,
    Minimality,
    Confluence,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Ok(match s {
            "all" => Suite::All,
            "npattern" => Suite::NPattern,
            "subdivision" => Suite::Subdivision,
            "minimality" => Suite::Minimality,
            "confluence" => Suite::Confluence,
            _ => return Err(format!("unknown suite `{s}`")),
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Failure {
    pub property: &'static str,
    pub poset: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FAIL {}: {}", self.property, self.poset)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VerifyReport {
    pub checked: usize,
    /// Posets with at least one failed property.
    pub failed: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn summary(&self) -> String {
        format!("checked={} failed={}", self.checked, self.failed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for failure in &self.failures {
            writeln!(f, "{failure}")?;
        }
        write!(f, "{}", self.summary())
    }
}

/// Runs `suite` on every poset of `spec`, in parallel. Output order is the
/// enumeration order.
pub fn verify(spec: &EnumerationSpec, suite: Suite) -> Result<VerifyReport, EnumerationError> {
    let posets = enumerate_posets(spec)?;
    let mut results: Vec<(usize, Vec<&'static str>, String)> = posets
        .enumerate()
        .par_bridge()
        .filter_map(|(i, p)| {
            let failed = check(&p, suite, i as u64 * CONFLUENCE_TRIALS as u64);
            (!failed.is_empty()).then(|| (i, failed, serialize_poset_line(&p)))
        })
        .collect();
    results.sort_by_key(|r| r.0);
    let checked = enumerate_posets(spec)?.count();
    Ok(VerifyReport {
        checked,
        failed: results.len(),
        failures: results
            .into_iter()
            .flat_map(|(_, props, poset)| {
                props.into_iter().map(move |property| Failure {
                    property,
                    poset: poset.clone(),
                })
            })
            .collect(),
    })
}

/// Names of the properties of `suite` that fail on `p`.
pub fn check(p: &Poset, suite: Suite, seed: u64) -> Vec<&'static str> {
    let mut failed = Vec::new();
    let mut expect = |name: &'static str, ok: bool| {
        if !ok {
            failed.push(name);
        }
    };
    if suite.includes(Suite::NPattern) {
        check_poset(p, &mut expect);
        check_npattern(p, &mut expect);
    }
    if suite.includes(Suite::Subdivision) {
        check_subdivision(p, &mut expect);
    }
    if suite.includes(Suite::Minimality) {
        check_minimality(p, &mut expect);
    }
    if suite.includes(Suite::Confluence) {
        check_confluence(p, seed, &mut expect);
    }
    failed
}

type Expect<'a> = dyn FnMut(&'static str, bool) + 'a;

fn idx_set(pairs: &[(usize, usize)]) -> Pairs {
    pairs.iter().copied().collect()
}

fn mask_of(idx: &[usize]) -> u32 {
    idx.iter().fold(0, |m, &v| m | 1 << v)
}

fn check_poset(p: &Poset, expect: &mut Expect<'_>) {
    let t = Tables::new(p);
    expect("poset.reduction", idx_set(&p.cover_pairs_idx()) == t.covers());
    let rebuilt = Poset::new(
        p.vertices().to_vec(),
        p.cover_edges().into_iter().map(|e| (e.lower, e.upper)),
    );
    expect("poset.closure-of-covers", rebuilt.as_ref() == Ok(p));
    let d = p.dual();
    expect(
        "poset.dual",
        d.dual() == *p && p.less_pairs_idx().all(|(i, j)| d.lt_idx(j, i)) && d.comparability_count() == p.comparability_count(),
    );

    let chains = p.maximal_chains_idx();
    let antichains = p.maximal_antichains_idx();
    let n = p.len();
    let is_chain = |c: &[usize]| c.iter().all(|&x| c.iter().all(|&y| !p.inc_idx(x, y)));
    let is_antichain = |c: &[usize]| c.iter().all(|&x| c.iter().all(|&y| x == y || p.inc_idx(x, y)));
    expect(
        "poset.chains-maximal",
        chains.iter().all(|c| {
            is_chain(c)
                && (0..n).filter(|v| !c.contains(v)).all(|v| {
                    let mut ext = c.clone();
                    ext.push(v);
                    !is_chain(&ext)
                })
        }),
    );
    expect(
        "poset.antichains-maximal",
        antichains.iter().all(|a| {
            is_antichain(a)
                && (0..n).filter(|v| !a.contains(v)).all(|v| {
                    let mut ext = a.clone();
                    ext.push(v);
                    !is_antichain(&ext)
                })
        }),
    );
    if n <= 12 {
        let masks = |sets: &[Vec<usize>]| sets.iter().map(|s| mask_of(s)).collect::<BTreeSet<_>>();
        expect(
            "poset.chains-complete",
            chains.len() == masks(&chains).len() && masks(&chains) == t.maximal_chains().into_iter().collect(),
        );
        expect(
            "poset.antichains-complete",
            antichains.len() == masks(&antichains).len()
                && masks(&antichains) == t.maximal_antichains().into_iter().collect(),
        );
    }
}

fn collect_ns(p: &Poset, form: NForm) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    npattern::for_each_n(p, form, |q| {
        out.push(q);
        false
    });
    out.sort_unstable();
    out
}

fn check_npattern(p: &Poset, expect: &mut Expect<'_>) {
    let t = Tables::new(p);
    let ns = collect_ns(p, NForm::N);
    let primes = collect_ns(p, NForm::NPrime);
    let diags = collect_ns(p, NForm::NDiag);
    expect("npattern.witnesses-n", ns == t.witnesses(NForm::N));
    expect("npattern.witnesses-nprime", primes == t.witnesses(NForm::NPrime));
    expect("npattern.witnesses-ndiag", diags == t.witnesses(NForm::NDiag));
    expect(
        "npattern.three-forms",
        ns.is_empty() == primes.is_empty() && ns.is_empty() == diags.is_empty(),
    );
    expect(
        "npattern.n-is-nprime-and-ndiag",
        ns.iter().all(|q| primes.binary_search(q).is_ok() && diags.binary_search(q).is_ok()),
    );

    let nd = npattern::n_diag(p);
    let a = npattern::a_set(p);
    let ndd = npattern::nd_diag(p);
    let nd_idx = npattern::diagonals_idx(p, NForm::N);
    let a_idx = npattern::a_set_idx(p, &nd_idx);
    expect("npattern.n-diag", idx_set(&nd_idx) == t.diagonals(NForm::N));
    expect("npattern.a-set", idx_set(&a_idx) == t.a_set());
    expect(
        "npattern.nd-diag",
        idx_set(&npattern::diagonals_idx(p, NForm::NDiag)) == t.diagonals(NForm::NDiag),
    );

    let d = p.dual();
    expect("npattern.duality-n-diag", npattern::n_diag(&d) == nd.reversed());
    expect("npattern.duality-a-set", npattern::a_set(&d) == a.reversed());
    expect("npattern.duality-nd-diag", npattern::nd_diag(&d) == ndd.reversed());

    let covers: EdgeSet = p.cover_edges().into_iter().collect();
    expect(
        "npattern.disjoint-covers",
        nd.intersection(&a).is_empty() && nd.is_subset(&covers) && a.is_subset(&covers),
    );
    expect("npattern.nd-within-n-and-a", ndd.is_subset(&nd.union(&a)));

    // Covers a ≺ c, b ≺ d around a cover (b, c) that is not a diagonal.
    let diag = |i: usize, j: usize| nd_idx.binary_search(&(i, j)).is_ok();
    let mut first_1 = true;
    let mut first_2a = true;
    let mut first_2b = true;
    let mut first_3 = true;
    for (b, c) in p.cover_pairs_idx() {
        if diag(b, c) {
            continue;
        }
        for a in p.lower_covers_idx(c).filter(|&a| a != b) {
            for dd in p.upper_covers_idx(b).filter(|&dd| dd != c) {
                first_1 &= p.lt_idx(a, dd) && (p.cover_idx(a, dd) || (diag(a, c) && diag(b, dd)));
                let exists_x = p.upper_covers_idx(a).any(|x| p.inc_idx(x, b));
                first_3 &= diag(a, c) == exists_x;
                if diag(a, c) {
                    first_2a &= ns
                        .iter()
                        .filter(|q| q[1] == a && q[2] == c)
                        .all(|q| p.inc_idx(q[3], b));
                    first_2b &= diag(a, dd) == p.cover_idx(a, dd);
                }
            }
        }
    }
    expect("cover.crossing-comparable", first_1);
    expect("cover.diagonal-lower-inc", first_2a);
    expect("cover.diagonal-cross-cover", first_2b);
    expect("cover.diagonal-iff-side-inc", first_3);

    let free = npattern::is_n_free(p);
    expect("npattern.n-free", free == !t.has_n());
    expect("npattern.grillet-cac", npattern::is_cac(p) == free);
    if p.len() <= 12 {
        expect("npattern.cac-brute", npattern::is_cac(p) == t.is_cac());
    }
    expect(
        "npattern.series-parallel",
        npattern::is_series_parallel(p) == !t.has_induced_n(),
    );
}

/// In `sub`, a barycentric subdivision of `p`, both ends of every diagonal
/// are original, and so are all four corners when also `a ≺ c`, `b ≺ d`
/// and `a < d`.
fn ns_sit_on_originals(p: &Poset, sub: &Poset) -> bool {
    let original = |i: usize| p.contains(&sub.vertices()[i]);
    sub.cover_pairs_idx().into_iter().all(|(b, c)| {
        sub.below_idx(c).filter(|&a| sub.inc_idx(a, b)).all(|a| {
            sub.above_idx(b).filter(|&d| sub.inc_idx(d, c)).all(|d| {
                original(b)
                    && original(c)
                    && (!(sub.cover_idx(a, c) && sub.cover_idx(b, d) && sub.lt_idx(a, d))
                        || (original(a) && original(d)))
            })
        })
    })
}

/// Every dummy sits alone on its edge: one lower cover, one upper cover, and
/// those are the ends it is named after.
fn dummies_have_degree_one(q: &Poset) -> bool {
    (0..q.len()).filter(|&i| q.vertices()[i].is_dummy()).all(|i| {
        let VertexId::Dummy { lower, upper, .. } = &q.vertices()[i] else {
            unreachable!()
        };
        let lo: Vec<usize> = q.lower_covers_idx(i).collect();
        let hi: Vec<usize> = q.upper_covers_idx(i).collect();
        lo.len() == 1
            && hi.len() == 1
            && q.index_of(lower) == Some(lo[0])
            && q.index_of(upper) == Some(hi[0])
    })
}

fn check_subdivision(p: &Poset, expect: &mut Expect<'_>) {
    let nd_idx = npattern::diagonals_idx(p, NForm::N);
    let a_idx = npattern::a_set_idx(p, &nd_idx);
    let mut both = nd_idx.clone();
    both.extend(&a_idx);
    both.sort_unstable();

    let first = subdivision::s_n(p);
    let closed = subdivision::s_n(&first);
    expect("closure.n-free", npattern::is_n_free(&closed) && !Tables::new(&closed).has_n());
    expect("closure.size-law", closed.len() == p.len() + nd_idx.len() + a_idx.len());
    expect("closure.single-pass", subdivide_idx(p, &both).0 == closed);
    expect(
        "first-pass.diagonals-are-a-set",
        npattern::n_diag(&first) == EdgeSet::from_idx(p, &a_idx),
    );
    expect("first-pass.a-set-empty", npattern::a_set(&first).is_empty());
    expect("closure.idempotent", subdivision::grillet_closure(&closed) == closed);

    let full = subdivision::full_subdivision(p);
    expect(
        "full-subdivision",
        full.len() == p.len() + p.cover_count() && npattern::is_n_free(&full),
    );
    let embeds = |q: &Poset| q.induced(p.vertices()).as_ref() == Ok(p);
    expect(
        "subdivide.embedding",
        embeds(&first) && embeds(&closed) && embeds(&full),
    );
    expect(
        "subdivide.dummy-degree",
        dummies_have_degree_one(&first) && dummies_have_degree_one(&closed) && dummies_have_degree_one(&full),
    );
    expect(
        "subdivide.n-on-originals",
        ns_sit_on_originals(p, &first) && ns_sit_on_originals(p, &closed) && ns_sit_on_originals(p, &full),
    );
    expect("nd-closure", subdivision::nd_closure(p) == closed);

    let mut witnesses = 0;
    npattern::for_each_n(p, NForm::N, |_| {
        witnesses += 1;
        witnesses > 1
    });
    if witnesses == 1 {
        let step = subdivide_idx(p, &nd_idx).0;
        expect("single-n.one-step", nd_idx.len() == 1 && npattern::is_n_free(&step));
    }

    let swapped = closed.dual().map_ids(VertexId::swap_ends);
    expect(
        "closure.duality",
        swapped.as_ref() == Ok(&subdivision::grillet_closure(&p.dual())),
    );
}

fn check_minimality(p: &Poset, expect: &mut Expect<'_>) {
    if p.cover_count() > MAX_SEARCH_COVERS {
        return;
    }
    expect("minimality.oracle", minimality_oracle(p).is_ok());

    // Every poset between p and its closure only has diagonals among n_diag ∪ a_set.
    let nd_idx = npattern::diagonals_idx(p, NForm::N);
    let mut both = npattern::a_set_idx(p, &nd_idx);
    both.extend(nd_idx);
    both.sort_unstable();
    let allowed = EdgeSet::from_idx(p, &both);
    let ok = (0..1usize << both.len()).all(|mask| {
        let e: Vec<(usize, usize)> = (0..both.len())
            .filter(|t| mask >> t & 1 == 1)
            .map(|t| both[t])
            .collect();
        npattern::n_diag(&subdivide_idx(p, &e).0).is_subset(&allowed)
    });
    expect("intermediate.diagonals-bounded", ok);
}

fn check_confluence(p: &Poset, seed: u64, expect: &mut Expect<'_>) {
    expect(
        "sequential.confluence",
        confluence_fuzz(p, CONFLUENCE_TRIALS, seed).pass,
    );
    let allowed = npattern::n_diag(p).union(&npattern::a_set(p));
    let closed = subdivision::grillet_closure(p);
    let mut within = true;
    let run = subdivision::sequential_closure_with(p, &Strategy::SeededRandom(seed), |pm| {
        within &= npattern::n_diag(pm).is_subset(&allowed) && pm.vertices().iter().all(|v| closed.contains(v));
    });
    expect("sequential.diagonals-bounded", run.is_ok() && within);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::*;

    #[test]
    fn fixtures_pass_every_suite() {
        for p in [p4(), p5(), c3(), Poset::empty()] {
            assert_eq!(check(&p, Suite::All, 11), Vec::<&str>::new(), "{p:?}");
        }
    }

    #[test]
    fn verify_three_elements() {
        let report = verify(&EnumerationSpec::new(3), Suite::All).unwrap();
        assert_eq!(report.summary(), "checked=19 failed=0");
        assert_eq!(report.to_string(), "checked=19 failed=0");
    }

    #[test]
    fn suite_names() {
        for s in ["all", "npattern", "subdivision", "minimality", "confluence"] {
            assert!(s.parse::<Suite>().is_ok());
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
