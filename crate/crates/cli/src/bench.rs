//! Timing runs over random instances of growing size, reported as CSV.

use std::io::Write;
use std::time::Instant;

use clap::ValueEnum;
use diskscale_core::gadgets::gen_random;
use diskscale_core::geom::{int, rat, GraphClass, Instance};
use diskscale_core::solver::{solve, Algorithm, SolveError, SolveOptions};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Xp,
    Cluster,
    Complete,
}

impl Suite {
    fn setup(self) -> (Algorithm, GraphClass) {
        match self {
            Self::Xp => (Algorithm::Xp, GraphClass::Cluster),
            Self::Cluster => (Algorithm::ClusterFpt, GraphClass::Cluster),
            Self::Complete => (Algorithm::Complete, GraphClass::Complete),
        }
    }

    /// Random instance with roughly constant density as `n` grows.
    pub fn instance(self, n: usize, k: usize, seed: u64) -> Instance {
        let (lo, hi) = match self {
            Self::Xp | Self::Cluster => (rat(1, 2), int(2)),
            Self::Complete => (int(1), int(2)),
        };
        let side = match self {
            Self::Complete => 2 + (n as f64).sqrt() as u32 / 4,
            _ => 2 * (n as f64).sqrt().ceil() as u32,
        };
        gen_random(n.max(1), k, lo, hi, side, seed ^ n as u64).expect("valid parameters")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub n: usize,
    pub k: usize,
    pub algo: String,
    pub branches: u64,
    pub lp_calls: u64,
    pub millis: f64,
}

pub fn run(suite: Suite, sizes: &[usize], k: usize, repeats: usize, seed: u64) -> Result<Vec<Row>, SolveError> {
    let (algo, cls) = suite.setup();
    let mut rows = Vec::new();
    for &n in sizes {
        let inst = suite.instance(n, k, seed);
        let mut times = Vec::new();
        let mut counters = (0, 0);
        for _ in 0..repeats.max(1) {
            let t = Instant::now();
            let out = solve(&inst, cls, algo, &SolveOptions { seed, deadline: None })?;
            times.push(t.elapsed().as_secs_f64() * 1e3);
            counters = (out.stats.branches, out.stats.lp_calls);
        }
        times.sort_by(f64::total_cmp);
        let millis = times[times.len() / 2];
        rows.push(Row { n, k, algo: algo.name().into(), branches: counters.0, lp_calls: counters.1, millis });
    }
    Ok(rows)
}

pub fn write_csv(rows: &[Row], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "k", "algo", "branches", "lp_calls", "millis"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.k.to_string(),
            r.algo.clone(),
            r.branches.to_string(),
            r.lp_calls.to_string(),
            format!("{:.3}", r.millis),
        ])?;
    }
    w.flush()?;
    Ok(())
}
