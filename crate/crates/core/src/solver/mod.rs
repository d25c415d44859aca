//! Decision algorithms for Π-Scaling and the dispatcher over them.

mod cluster_fpt;
mod complete;
mod xp;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{GraphClass, Instance, RadiusAssignment};
use crate::lp::{ConscalError, DEFAULT_LP_SEED};
use crate::oracle::{self, OracleBudget, OracleError};

pub use cluster_fpt::{solve_cluster_fpt, solve_cluster_fpt_with, Color, ColoredGraph};
pub use complete::{solve_complete, solve_complete_with};
pub use xp::{solve_xp, solve_xp_with};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Auto,
    Xp,
    ClusterFpt,
    Complete,
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Self::Auto => "auto",
            Self::Xp => "xp",
            Self::ClusterFpt => "cluster-fpt",
            Self::Complete => "complete",
            Self::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Self::Auto),
            "xp" => Ok(Self::Xp),
            "cluster-fpt" => Ok(Self::ClusterFpt),
            "complete" => Ok(Self::Complete),
            "oracle" => Ok(Self::Oracle),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    /// Algorithm that actually ran (after `auto` routing).
    pub algorithm: Algorithm,
    pub branches: u64,
    pub lp_calls: u64,
    #[serde(with = "micros")]
    pub elapsed: Duration,
}

mod micros {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_micros() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_micros(u64::deserialize(d)?))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub answer: Answer,
    pub witness: Option<RadiusAssignment>,
    pub stats: SolveStats,
}

impl SolveOutcome {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Seed for the LP constraint shuffle.
    pub seed: u64,
    /// Cooperative deadline, checked at branch boundaries.
    pub deadline: Option<Instant>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { seed: DEFAULT_LP_SEED, deadline: None }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("timed out")]
    Timeout,
    #[error(transparent)]
    Conscal(#[from] ConscalError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Runs `algo` (with `auto` routing: complete for Complete, cluster-fpt for
/// Cluster, xp otherwise).
pub fn solve(inst: &Instance, cls: GraphClass, algo: Algorithm, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let algo = match algo {
        Algorithm::Auto => match cls {
            GraphClass::Complete => Algorithm::Complete,
            GraphClass::Cluster => Algorithm::ClusterFpt,
            _ => Algorithm::Xp,
        },
        a => a,
    };
    match algo {
        Algorithm::Xp => solve_xp_with(inst, cls, opts),
        Algorithm::ClusterFpt if cls == GraphClass::Cluster => solve_cluster_fpt_with(inst, opts),
        Algorithm::Complete if cls == GraphClass::Complete => solve_complete_with(inst, opts),
        Algorithm::ClusterFpt | Algorithm::Complete => {
            Err(SolveError::Usage(format!("algorithm {algo} does not decide class {cls}")))
        }
        Algorithm::Oracle => Ok(oracle::brute_force_solve(inst, cls, &OracleBudget::default())?),
        Algorithm::Auto => unreachable!("routed above"),
    }
}

/// Branch/LP counters plus the cooperative deadline.
pub(crate) struct Tracker {
    algorithm: Algorithm,
    start: Instant,
    deadline: Option<Instant>,
    pub branches: u64,
    pub lp_calls: u64,
}

impl Tracker {
    pub fn new(algorithm: Algorithm, opts: &SolveOptions) -> Self {
        Self { algorithm, start: Instant::now(), deadline: opts.deadline, branches: 0, lp_calls: 0 }
    }

    /// Counts a branch; fails once the deadline has passed.
    pub fn branch(&mut self) -> Result<(), SolveError> {
        self.branches += 1;
        if self.branches.is_multiple_of(64) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(SolveError::Timeout);
                }
            }
        }
        Ok(())
    }

    pub fn finish(&self, witness: Option<RadiusAssignment>) -> SolveOutcome {
        SolveOutcome {
            answer: if witness.is_some() { Answer::Yes } else { Answer::No },
            witness,
            stats: SolveStats {
                algorithm: self.algorithm,
                branches: self.branches,
                lp_calls: self.lp_calls,
                elapsed: self.start.elapsed(),
            },
        }
    }
}

/// Ascending `size`-subsets of `0..n` in lexicographic order.
pub(crate) fn for_each_subset<E>(
    n: usize,
    size: usize,
    mut f: impl FnMut(&[usize]) -> Result<bool, E>,
) -> Result<bool, E> {
    if size > n {
        return Ok(false);
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if f(&idx)? {
            return Ok(true);
        }
        let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else {
            return Ok(false);
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_lex_order() {
        let mut seen = Vec::new();
        for_each_subset::<()>(4, 2, |s| {
            seen.push(s.to_vec());
            Ok(false)
        })
        .unwrap();
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut count = 0;
        for_each_subset::<()>(3, 0, |s| {
            assert!(s.is_empty());
            count += 1;
            Ok(false)
        })
        .unwrap();
        assert_eq!(count, 1);
    }
}
