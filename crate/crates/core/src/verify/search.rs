//! Exhaustive enumeration of binary necklaces of a given period.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlation::{self, oracle};
use crate::error::{Error, Result};
use crate::sequence::BinarySequence;

/// Largest period [`exhaustive_search`] accepts.
pub const SEARCH_BUDGET: usize = 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Ideal,
    /// Ideal sequences are included.
    Optimal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representative {
    pub sequence: String,
    pub balance: i64,
    pub out_of_phase: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub period: usize,
    pub target: Target,
    /// Sorted by sequence string.
    pub representatives: Vec<Representative>,
    pub count: usize,
    pub necklaces_examined: usize,
    /// `None` when the cross-check was not run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_disagreements: Option<usize>,
}

impl SearchResult {
    pub fn contains(&self, s: &BinarySequence) -> bool {
        let canonical = s.canonical_rotation().to_string();
        self.representatives
            .binary_search_by(|r| r.sequence.as_str().cmp(&canonical))
            .is_ok()
    }
}

/// `v` read as a bit string, most significant bit first, is the least of its
/// rotations.
fn is_canonical(v: u64, n: usize) -> bool {
    let mask = (1u64 << n) - 1;
    let mut r = v;
    for _ in 1..n {
        r = ((r << 1) | (r >> (n - 1))) & mask;
        if r < v {
            return false;
        }
    }
    true
}

fn to_sequence(v: u64, n: usize) -> BinarySequence {
    BinarySequence::from_fn(n, |i| (v >> (n - 1 - i)) & 1 == 1)
}

struct Outcome {
    hit: Option<Representative>,
    disagrees: bool,
}

/// Classifies every rotation class of period `n` and returns the canonical
/// representatives reaching `target`. Complements are kept as separate
/// classes. With `cross_check`, every examined sequence is also classified
/// from the definitional sum and disagreements with the packed kernel are
/// counted. `jobs` fixes the worker count; output does not depend on it.
pub fn exhaustive_search(
    n: usize,
    target: Target,
    jobs: Option<usize>,
    cross_check: bool,
) -> Result<SearchResult> {
    if n == 0 {
        return Err(Error::InvalidInput("period must be positive".into()));
    }
    if n > SEARCH_BUDGET {
        return Err(Error::BudgetExceeded {
            requested: n,
            limit: SEARCH_BUDGET,
        });
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;

    let outcomes: Vec<Outcome> = pool.install(|| {
        (0..1u64 << n)
            .into_par_iter()
            .filter(|&v| is_canonical(v, n))
            .map(|v| {
                let s = to_sequence(v, n);
                let spectrum = correlation::autocorrelation_spectrum(&s);
                let class = correlation::classify(&spectrum).expect("auto spectrum");
                let disagrees = cross_check && {
                    let reference = oracle::autocorrelation_spectrum(&s);
                    reference != spectrum
                        || correlation::classify(&reference).expect("auto spectrum") != class
                };
                let reached = match target {
                    Target::Ideal => class.is_ideal(),
                    Target::Optimal => class.is_optimal(),
                };
                Outcome {
                    hit: reached.then(|| Representative {
                        sequence: s.to_string(),
                        balance: s.balance(),
                        out_of_phase: spectrum.out_of_phase_set().into_iter().collect(),
                    }),
                    disagrees,
                }
            })
            .collect()
    });

    let necklaces_examined = outcomes.len();
    let oracle_disagreements = cross_check.then(|| outcomes.iter().filter(|o| o.disagrees).count());
    let mut representatives: Vec<Representative> = outcomes.into_iter().filter_map(|o| o.hit).collect();
    representatives.sort_by(|a, b| a.sequence.cmp(&b.sequence));
    Ok(SearchResult {
        period: n,
        target,
        count: representatives.len(),
        representatives,
        necklaces_examined,
        oracle_disagreements,
    })
}
