use std::fmt;

use crate::npattern;
use crate::poset::Poset;
use crate::subdivision::{grillet_closure, sequential_closure, Strategy};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConfluenceReport {
    pub pass: bool,
    /// Step count of the lexicographic run.
    pub steps: usize,
    /// `|n_diag(p)| + |a_set(p)|`.
    pub expected_steps: usize,
    pub runs: usize,
    pub failures: Vec<String>,
}

impl fmt::Display for ConfluenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} runs={} steps={} expected={}",
            if self.pass { "pass" } else { "FAIL" },
            self.runs,
            self.steps,
            self.expected_steps
        )?;
        for msg in &self.failures {
            write!(f, "\n  {msg}")?;
        }
        Ok(())
    }
}

/// Runs the sequential algorithm lexicographically and under `trials` seeded
/// random strategies (seeds `seed`, `seed + 1`, ...), and checks that every
/// run ends on the same poset as the two-pass closure after
/// `|n_diag(p)| + |a_set(p)|` steps.
pub fn confluence_fuzz(p: &Poset, trials: usize, seed: u64) -> ConfluenceReport {
    let expected_steps = npattern::n_diag(p).len() + npattern::a_set(p).len();
    let target = grillet_closure(p);
    let strategies = std::iter::once(Strategy::Lexicographic)
        .chain((0..trials as u64).map(|i| Strategy::SeededRandom(seed.wrapping_add(i))));

    let mut failures = Vec::new();
    let mut steps = 0;
    let mut runs = 0;
    for strategy in strategies {
        runs += 1;
        match sequential_closure(p, &strategy) {
            Ok(trace) => {
                if strategy == Strategy::Lexicographic {
                    steps = trace.steps.len();
                }
                if trace.steps.len() != expected_steps {
                    failures.push(format!(
                        "{strategy:?}: {} steps, expected {expected_steps}",
                        trace.steps.len()
                    ));
                }
                if trace.result != target {
                    failures.push(format!("{strategy:?}: result differs from the two-pass closure"));
                }
            }
            Err(e) => failures.push(format!("{strategy:?}: {e}")),
        }
    }
    ConfluenceReport {
        pass: failures.is_empty(),
        steps,
        expected_steps,
        runs,
        failures,
    }
}
