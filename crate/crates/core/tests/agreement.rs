//! Differential tests: solvers against each other and against the oracle.

use diskscale_core::gadgets::gen_random;
use diskscale_core::geom::{int, rat, verify_solution, GraphClass, Instance};
use diskscale_core::harness::{draw_trial, run_fuzz, FuzzConfig};
use diskscale_core::oracle::{brute_force_solve_with, OracleBudget, OracleOptions};
use diskscale_core::solver::{solve_cluster_fpt, solve_xp, SolveOutcome};

fn trials() -> usize {
    std::env::var("AGREEMENT_TRIALS").ok().and_then(|s| s.parse().ok()).unwrap_or(300)
}

fn assert_verified(inst: &Instance, cls: GraphClass, out: &SolveOutcome, what: &str) {
    if let Some(w) = &out.witness {
        let v = verify_solution(inst, w, cls).unwrap();
        assert!(v.accepted(), "{what}: witness rejected: {:?}", v.violation);
    }
    assert_eq!(out.is_yes(), out.witness.is_some(), "{what}");
}

#[test]
fn xp_and_specialized_solvers_match_oracle() {
    let cfg = FuzzConfig { budget: OracleBudget { max_k: 3, ..OracleBudget::default() }, k: 0..=3, ..FuzzConfig::default() };
    let report = run_fuzz(&cfg, trials(), 7, false);
    assert!(report.passed(), "{:?}", &report.mismatches[..report.mismatches.len().min(5)]);
    assert!(report.yes > 0 && report.no > 0);
}

#[test]
fn fault_injection_is_detected() {
    let report = run_fuzz(&FuzzConfig::default(), 20, 11, true);
    assert!(!report.passed());
}

#[test]
fn cluster_fpt_matches_xp_on_larger_instances() {
    let cfg = FuzzConfig { n: 6..=12, k: 0..=3, classes: vec![GraphClass::Cluster], ..FuzzConfig::default() };
    for index in 0..trials() {
        let t = draw_trial(&cfg, 3, index);
        let fpt = solve_cluster_fpt(&t.instance).unwrap();
        let xp = solve_xp(&t.instance, GraphClass::Cluster).unwrap();
        assert_eq!(fpt.answer, xp.answer, "trial {index}: {:?}", t.instance);
        assert_verified(&t.instance, GraphClass::Cluster, &fpt, "fpt");
    }
}

#[test]
fn oracle_pruning_does_not_change_answers() {
    let plain = OracleOptions { forced_pruning: false, ..OracleOptions::default() };
    let budget = OracleBudget { max_n: 7, ..OracleBudget::default() };
    for seed in 0..60u64 {
        let n = 3 + (seed as usize % 5);
        let (lo, hi) = [(rat(1, 2), int(1)), (int(1), int(2)), (rat(1, 2), rat(5, 2))][seed as usize % 3].clone();
        let inst = gen_random(n, 1 + seed as usize % 2, lo, hi, 3, seed).unwrap();
        for cls in GraphClass::ALL {
            let a = brute_force_solve_with(&inst, cls, &budget, &OracleOptions::default()).unwrap();
            let b = brute_force_solve_with(&inst, cls, &budget, &plain).unwrap();
            assert_eq!(a.answer, b.answer, "seed {seed} {cls}");
        }
    }
}

#[test]
fn cluster_fpt_matches_xp_on_dense_instances() {
    let intervals = [(rat(1, 2), int(1)), (int(1), int(1)), (int(1), int(2)), (rat(1, 2), rat(5, 2)), (rat(1, 3), rat(3, 2))];
    for seed in 0..trials() as u64 {
        let n = 4 + (seed as usize % 7);
        let (lo, hi) = intervals[seed as usize % intervals.len()].clone();
        let inst = gen_random(n, seed as usize % 4, lo, hi, 2 + (seed % 3) as u32, seed).unwrap();
        let fpt = solve_cluster_fpt(&inst).unwrap();
        let xp = solve_xp(&inst, GraphClass::Cluster).unwrap();
        assert_eq!(fpt.answer, xp.answer, "seed {seed}: {inst:?}");
        assert_verified(&inst, GraphClass::Cluster, &fpt, "fpt");
        assert_verified(&inst, GraphClass::Cluster, &xp, "xp");
    }
}

#[test]
fn xp_matches_oracle_on_dense_instances() {
    let intervals = [(rat(1, 2), int(1)), (int(1), int(2)), (rat(1, 2), rat(5, 2))];
    for seed in 0..(trials() / 2) as u64 {
        let n = 3 + (seed as usize % 6);
        let (lo, hi) = intervals[seed as usize % intervals.len()].clone();
        let inst = gen_random(n, seed as usize % 3, lo, hi, 2, seed).unwrap();
        for cls in GraphClass::ALL {
            let xp = solve_xp(&inst, cls).unwrap();
            let oracle = diskscale_core::oracle::brute_force_solve(&inst, cls, &OracleBudget::default()).unwrap();
            assert_eq!(xp.answer, oracle.answer, "seed {seed} {cls}: {inst:?}");
            assert_verified(&inst, cls, &xp, "xp");
        }
    }
}
