//! Seeded differential testing of the solvers against the oracle.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::gadgets::gen_random;
use crate::geom::{int, rat, verify_solution, GraphClass, Instance, Rational};
use crate::oracle::{brute_force_solve, OracleBudget};
use crate::solver::{solve_cluster_fpt, solve_complete, solve_xp, Algorithm, Answer, SolveOutcome};

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub n: RangeInclusive<usize>,
    pub k: RangeInclusive<usize>,
    pub intervals: Vec<(Rational, Rational)>,
    pub classes: Vec<GraphClass>,
    /// Also run the class-specific solvers where they apply.
    pub specialized: bool,
    pub budget: OracleBudget,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            n: 3..=8,
            k: 0..=2,
            intervals: vec![(rat(1, 2), int(1)), (int(1), int(1)), (int(1), int(2)), (rat(1, 2), rat(5, 2))],
            classes: GraphClass::ALL.to_vec(),
            specialized: true,
            budget: OracleBudget::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trial {
    pub index: usize,
    pub seed: u64,
    pub class: GraphClass,
    pub instance: Instance,
}

/// Side length of the sampling box: about two unit diameters per point
/// row, so instances are neither empty nor solid.
fn box_size(n: usize) -> u32 {
    (n as f64).sqrt().ceil() as u32 + 2
}

/// The `index`-th trial of the stream seeded by `seed`.
pub fn draw_trial(cfg: &FuzzConfig, seed: u64, index: usize) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let n = rng.random_range(cfg.n.clone());
    let k = rng.random_range(cfg.k.clone());
    let (r_min, r_max) = cfg.intervals[rng.random_range(0..cfg.intervals.len())].clone();
    let class = cfg.classes[rng.random_range(0..cfg.classes.len())];
    let inst_seed = rng.random::<u64>();
    let instance = gen_random(n, k, r_min, r_max, box_size(n), inst_seed).expect("valid parameters");
    Trial { index, seed: inst_seed, class, instance }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub trial: usize,
    pub class: GraphClass,
    pub algorithm: Algorithm,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FuzzReport {
    pub trials: usize,
    pub yes: usize,
    pub no: usize,
    pub comparisons: usize,
    pub mismatches: Vec<Disagreement>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every applicable solver with the oracle on one trial.
/// `inject_fault` flips the oracle's answer, which must surface as mismatches.
pub fn run_trial(cfg: &FuzzConfig, trial: &Trial, inject_fault: bool, report: &mut FuzzReport) {
    let inst = &trial.instance;
    let cls = trial.class;
    let fail = |report: &mut FuzzReport, algorithm, detail: String| {
        report.mismatches.push(Disagreement { trial: trial.index, class: cls, algorithm, detail })
    };
    report.trials += 1;
    let oracle = match brute_force_solve(inst, cls, &cfg.budget) {
        Ok(o) => o,
        Err(e) => return fail(report, Algorithm::Oracle, e.to_string()),
    };
    let mut expected = oracle.answer;
    if inject_fault {
        expected = if expected == Answer::Yes { Answer::No } else { Answer::Yes };
    }
    match expected {
        Answer::Yes => report.yes += 1,
        Answer::No => report.no += 1,
    }
    let mut runs: Vec<(Algorithm, Result<SolveOutcome, String>)> = vec![(Algorithm::Xp, solve_xp(inst, cls).map_err(|e| e.to_string()))];
    if cfg.specialized && cls == GraphClass::Cluster {
        runs.push((Algorithm::ClusterFpt, solve_cluster_fpt(inst).map_err(|e| e.to_string())));
    }
    if cfg.specialized && cls == GraphClass::Complete {
        runs.push((Algorithm::Complete, solve_complete(inst).map_err(|e| e.to_string())));
    }
    runs.push((Algorithm::Oracle, Ok(oracle)));
    for (algo, run) in runs {
        let out = match run {
            Ok(o) => o,
            Err(e) => {
                fail(report, algo, e);
                continue;
            }
        };
        report.comparisons += 1;
        if algo != Algorithm::Oracle && out.answer != expected {
            fail(report, algo, format!("answered {:?}, oracle {:?}", out.answer, expected));
        }
        if let Some(w) = &out.witness {
            match verify_solution(inst, w, cls) {
                Ok(v) if v.accepted() => {}
                Ok(v) => fail(report, algo, format!("witness rejected: {}", v.violation.expect("rejected"))),
                Err(e) => fail(report, algo, format!("witness invalid: {e}")),
            }
        } else if out.is_yes() {
            fail(report, algo, "yes without a witness".into());
        }
    }
}

pub fn run_fuzz(cfg: &FuzzConfig, trials: usize, seed: u64, inject_fault: bool) -> FuzzReport {
    let mut report = FuzzReport::default();
    for index in 0..trials {
        run_trial(cfg, &draw_trial(cfg, seed, index), inject_fault, &mut report);
    }
    report
}
