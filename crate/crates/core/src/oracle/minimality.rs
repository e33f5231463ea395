use thiserror::Error;

use crate::npattern::{self, EdgeSet};
use crate::oracle::brute::Tables;
use crate::poset::Poset;
use crate::subdivision::subdivide_idx;

/// Largest cover count searched exhaustively.
pub const MAX_SEARCH_COVERS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinimalityError {
    #[error("{covers} covers exceed the search bound of {MAX_SEARCH_COVERS}")]
    BoundExceeded { covers: usize },
    #[error("minimality violated: {0}")]
    MinimalityViolation(String),
}

/// Searches every set of covers to subdivide (one dummy each) for those that
/// leave no N, and returns the unique inclusion-minimal one.
///
/// Fails with [`MinimalityError::MinimalityViolation`] unless that set is
/// unique, equals `n_diag(p) ∪ a_set(p)`, and every proper subset of it
/// still leaves an N.
pub fn minimality_oracle(p: &Poset) -> Result<EdgeSet, MinimalityError> {
    let covers = p.cover_pairs_idx();
    let m = covers.len();
    if m > MAX_SEARCH_COVERS {
        return Err(MinimalityError::BoundExceeded { covers: m });
    }
    let subset = |mask: usize| -> Vec<(usize, usize)> {
        (0..m).filter(|t| mask >> t & 1 == 1).map(|t| covers[t]).collect()
    };
    let free: Vec<bool> = (0..1usize << m)
        .map(|mask| !Tables::new(&subdivide_idx(p, &subset(mask)).0).has_n())
        .collect();

    // some_free[mask]: some subset of mask (mask included) is N-free.
    let mut some_free = free.clone();
    for mask in 0..1usize << m {
        for t in 0..m {
            if mask >> t & 1 == 1 && some_free[mask ^ 1 << t] {
                some_free[mask] = true;
            }
        }
    }
    let minimal: Vec<usize> = (0..1usize << m)
        .filter(|&mask| free[mask] && (0..m).all(|t| mask >> t & 1 == 0 || !some_free[mask ^ 1 << t]))
        .collect();
    let [best] = minimal[..] else {
        return Err(MinimalityError::MinimalityViolation(format!(
            "{} inclusion-minimal N-free subdivisions",
            minimal.len()
        )));
    };
    let found = EdgeSet::from_idx(p, &subset(best));

    let expected = npattern::n_diag(p).union(&npattern::a_set(p));
    if found != expected {
        return Err(MinimalityError::MinimalityViolation(format!(
            "minimal set {{{}}} differs from n_diag ∪ a_set {{{}}}",
            join(&found),
            join(&expected)
        )));
    }
    let mut sub = best;
    while sub != 0 {
        sub = (sub - 1) & best;
        if free[sub] {
            return Err(MinimalityError::MinimalityViolation(format!(
                "proper subset {{{}}} is already N-free",
                join(&EdgeSet::from_idx(p, &subset(sub)))
            )));
        }
    }
    Ok(found)
}

fn join(e: &EdgeSet) -> String {
    e.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::*;

    #[test]
    fn oracle_on_fixtures() {
        let set = |p: &[(&str, &str)]| edges(p).into_iter().collect::<EdgeSet>();
        assert_eq!(minimality_oracle(&p4()).unwrap(), set(&[("b", "c")]));
        assert!(minimality_oracle(&c3()).unwrap().is_empty());
        assert_eq!(
            minimality_oracle(&p5()).unwrap(),
            set(&[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
        );
    }

    #[test]
    fn bound_is_enforced() {
        let labels: Vec<String> = (0..14).map(|i| format!("x{i:02}")).collect();
        let p = Poset::chain(&labels).unwrap();
        assert_eq!(
            minimality_oracle(&p).unwrap_err(),
            MinimalityError::BoundExceeded { covers: 13 }
        );
    }
}
