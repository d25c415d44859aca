//! Exhaustive reference decider for small instances.
//!
//! Deliberately shares nothing with the solvers beyond the LP: every target
//! graph consistent with the unit graph on the unscaled disks is tried.

use std::time::Instant;

use thiserror::Error;

use crate::geom::{build_unit_disk_graph, dist2, int, GraphClass, Instance, RadiusAssignment, Rational};
use crate::graph::recognize;
use crate::lp::{ConscalContext, ConscalError, DEFAULT_LP_SEED};
use crate::solver::{Algorithm, Answer, SolveOutcome, SolveStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_k: usize,
    pub max_lp_calls: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { max_n: 8, max_k: 2, max_lp_calls: 1_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Fix pairs whose adjacency is decided by distance alone.
    pub forced_pruning: bool,
    pub seed: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { forced_pruning: true, seed: DEFAULT_LP_SEED }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("oracle refuses n = {n} (budget {max})")]
    TooManyPoints { n: usize, max: usize },
    #[error("oracle refuses k = {k} (budget {max})")]
    BudgetTooLarge { k: usize, max: usize },
    #[error("oracle exceeded {max} LP calls")]
    LpCalls { max: u64 },
    #[error(transparent)]
    Conscal(#[from] ConscalError),
}

pub fn brute_force_solve(inst: &Instance, cls: GraphClass, budget: &OracleBudget) -> Result<SolveOutcome, OracleError> {
    brute_force_solve_with(inst, cls, budget, &OracleOptions::default())
}

pub fn brute_force_solve_with(
    inst: &Instance,
    cls: GraphClass,
    budget: &OracleBudget,
    opts: &OracleOptions,
) -> Result<SolveOutcome, OracleError> {
    let start = Instant::now();
    let n = inst.n();
    if n > budget.max_n || n >= 64 {
        return Err(OracleError::TooManyPoints { n, max: budget.max_n.min(63) });
    }
    if inst.k() > budget.max_k {
        return Err(OracleError::BudgetTooLarge { k: inst.k(), max: budget.max_k });
    }
    let ctx = ConscalContext::new(inst.points());
    let unit = build_unit_disk_graph(inst.points());
    let mut branches = 0u64;
    let mut lp_calls = 0u64;
    let mut witness: Option<RadiusAssignment> = None;

    'sizes: for size in 0..=inst.k().min(n) {
        for mask in 0u64..(1u64 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let scaled: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let mut base = unit.clone();
            let mut free = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let si = mask >> i & 1 == 1;
                    let sj = mask >> j & 1 == 1;
                    if !si && !sj {
                        continue;
                    }
                    base.remove_edge(i, j);
                    match forced(inst, i, j, si && sj, opts.forced_pruning) {
                        Some(true) => base.add_edge(i, j),
                        Some(false) => {}
                        None => free.push((i, j)),
                    }
                }
            }
            for assign in 0u64..(1u64 << free.len()) {
                branches += 1;
                let mut h = base.clone();
                for (b, &(i, j)) in free.iter().enumerate() {
                    if assign >> b & 1 == 1 {
                        h.add_edge(i, j);
                    }
                }
                if !recognize(&h, cls) {
                    continue;
                }
                lp_calls += 1;
                if lp_calls > budget.max_lp_calls {
                    return Err(OracleError::LpCalls { max: budget.max_lp_calls });
                }
                if let Some(r) = ctx.solve(&scaled, &h, inst.r_min(), inst.r_max(), opts.seed)? {
                    witness = Some(r);
                    break 'sizes;
                }
            }
        }
    }
    Ok(SolveOutcome {
        answer: if witness.is_some() { Answer::Yes } else { Answer::No },
        witness,
        stats: SolveStats { algorithm: Algorithm::Oracle, branches, lp_calls, elapsed: start.elapsed() },
    })
}

/// Adjacency implied by distance alone, if any.
fn forced(inst: &Instance, i: usize, j: usize, both_scaled: bool, enabled: bool) -> Option<bool> {
    if !enabled {
        return None;
    }
    let d2 = dist2(&inst.points()[i], &inst.points()[j]);
    let reach = |a: &Rational, b: &Rational| {
        let s = a + b;
        &s * &s
    };
    let one = int(1);
    let (lo, hi) = if both_scaled {
        (reach(inst.r_min(), inst.r_min()), reach(inst.r_max(), inst.r_max()))
    } else {
        (reach(inst.r_min(), &one), reach(inst.r_max(), &one))
    };
    if d2 <= lo {
        Some(true)
    } else if d2 > hi {
        Some(false)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, verify_solution, Point};

    fn line(xs: &[i64], r_min: Rational, r_max: Rational, k: usize) -> Instance {
        Instance::new(xs.iter().enumerate().map(|(i, &x)| Point::from_ints(i, x, 0)).collect(), r_min, r_max, k).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let b = OracleBudget::default();
        let p3 = line(&[0, 2, 4], rat(1, 2), int(1), 1);
        let out = brute_force_solve(&p3, GraphClass::Cluster, &b).unwrap();
        assert!(out.is_yes());
        assert!(verify_solution(&p3, out.witness.as_ref().unwrap(), GraphClass::Cluster).unwrap().accepted());
        assert!(!brute_force_solve(&p3.clone().with_k(0), GraphClass::Cluster, &b).unwrap().is_yes());
        assert!(brute_force_solve(&p3.clone().with_k(0), GraphClass::Connected, &b).unwrap().is_yes());

        let far = line(&[0, 10], int(1), int(2), 2);
        assert!(!brute_force_solve(&far, GraphClass::Connected, &b).unwrap().is_yes());
    }

    #[test]
    fn oracle_refuses_over_budget() {
        let big = line(&[0, 3, 6, 9, 12, 15, 18, 21, 24], int(1), int(2), 1);
        assert!(matches!(
            brute_force_solve(&big, GraphClass::Edgeless, &OracleBudget::default()),
            Err(OracleError::TooManyPoints { .. })
        ));
        let k3 = line(&[0, 3], int(1), int(2), 3);
        assert!(matches!(
            brute_force_solve(&k3, GraphClass::Edgeless, &OracleBudget::default()),
            Err(OracleError::BudgetTooLarge { .. })
        ));
    }
}
