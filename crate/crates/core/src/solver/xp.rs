//! XP enumeration: scaled set, furthest unscaled neighbor per scaled disk,
//! adjacency among scaled disks, then ConScal.

use super::{for_each_subset, Algorithm, SolveError, SolveOptions, SolveOutcome, Tracker};
use crate::geom::{int, GraphClass, Instance, RadiusAssignment, Rational};
use crate::graph::{recognize, AdjacencyGraph};
use crate::lp::ConscalContext;

pub fn solve_xp(inst: &Instance, cls: GraphClass) -> Result<SolveOutcome, SolveError> {
    solve_xp_with(inst, cls, &SolveOptions::default())
}

pub fn solve_xp_with(inst: &Instance, cls: GraphClass, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let ctx = ConscalContext::new(inst.points());
    let mut tr = Tracker::new(Algorithm::Xp, opts);
    let witness = xp_search(inst, cls, &ctx, opts.seed, &mut tr)?;
    Ok(tr.finish(witness))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Forced {
    Edge,
    NonEdge,
    Free,
}

/// Geometrically forced adjacency for scaled/scaled and scaled/unscaled pairs.
struct Limits {
    n: usize,
    ss: Vec<Forced>,
    su: Vec<Forced>,
}

impl Limits {
    fn new(inst: &Instance, ctx: &ConscalContext) -> Self {
        let n = inst.n();
        let sq = |r: Rational| &r * &r;
        let ss_edge = sq(int(2) * inst.r_min());
        let ss_non = sq(int(2) * inst.r_max());
        let su_edge = sq(inst.r_min() + int(1));
        let su_non = sq(inst.r_max() + int(1));
        let classify = |d2: &Rational, edge: &Rational, non: &Rational| {
            if d2 <= edge {
                Forced::Edge
            } else if d2 > non {
                Forced::NonEdge
            } else {
                Forced::Free
            }
        };
        let mut ss = Vec::with_capacity(n * n);
        let mut su = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let d2 = ctx.dist2(i, j);
                ss.push(classify(d2, &ss_edge, &ss_non));
                su.push(classify(d2, &su_edge, &su_non));
            }
        }
        Self { n, ss, su }
    }

    fn ss(&self, p: usize, q: usize) -> Forced {
        self.ss[p * self.n + q]
    }

    fn su(&self, p: usize, u: usize) -> Forced {
        self.su[p * self.n + u]
    }
}

/// Candidate `far(p)` values: `None` stands for "no unscaled neighbor".
fn far_options(p: usize, unscaled: &[usize], lim: &Limits, ctx: &ConscalContext) -> Vec<Option<usize>> {
    // Every forced neighbor must lie within dist(p, far(p)).
    let required = unscaled.iter().filter(|&&u| lim.su(p, u) == Forced::Edge).map(|&u| ctx.dist2(p, u)).max();
    let mut out = Vec::new();
    if required.is_none() {
        out.push(None);
    }
    let mut seen: Vec<&Rational> = Vec::new();
    for &q in unscaled {
        let d = ctx.dist2(p, q);
        if lim.su(p, q) == Forced::NonEdge || required.is_some_and(|m| d < m) || seen.contains(&d) {
            continue;
        }
        seen.push(d);
        out.push(Some(q));
    }
    out
}

pub(crate) fn xp_search(
    inst: &Instance,
    cls: GraphClass,
    ctx: &ConscalContext,
    seed: u64,
    tr: &mut Tracker,
) -> Result<Option<RadiusAssignment>, SolveError> {
    let n = inst.n();
    let lim = Limits::new(inst, ctx);
    let unit = ctx.unit_graph();
    let mut found = None;
    for size in 0..=inst.k().min(n) {
        let hit = for_each_subset::<SolveError>(n, size, |t| {
            tr.branch()?;
            let unscaled: Vec<usize> = (0..n).filter(|v| t.binary_search(v).is_err()).collect();
            if cls.is_hereditary() && !recognize(&unit.induced(&unscaled), cls) {
                return Ok(false);
            }
            let fars: Vec<Vec<Option<usize>>> = t.iter().map(|&p| far_options(p, &unscaled, &lim, ctx)).collect();
            if fars.iter().any(Vec::is_empty) {
                return Ok(false);
            }
            let mut base = unit.clone();
            for &p in t {
                base.isolate(p);
            }
            let mut free = Vec::new();
            for (i, &p) in t.iter().enumerate() {
                for &q in &t[i + 1..] {
                    match lim.ss(p, q) {
                        Forced::Edge => base.add_edge(p, q),
                        Forced::NonEdge => {}
                        Forced::Free => free.push((p, q)),
                    }
                }
            }
            let mut choice = vec![0usize; t.len()];
            loop {
                let mut h1 = base.clone();
                for (i, &p) in t.iter().enumerate() {
                    if let Some(f) = fars[i][choice[i]] {
                        let reach = ctx.dist2(p, f);
                        for &u in &unscaled {
                            if ctx.dist2(p, u) <= reach {
                                h1.add_edge(p, u);
                            }
                        }
                    }
                }
                if let Some(r) = try_scaled_pairs(&h1, &free, t, cls, inst, ctx, seed, tr)? {
                    found = Some(r);
                    return Ok(true);
                }
                // Odometer over far choices.
                let Some(i) = (0..t.len()).rev().find(|&i| choice[i] + 1 < fars[i].len()) else {
                    return Ok(false);
                };
                choice[i] += 1;
                for c in &mut choice[i + 1..] {
                    *c = 0;
                }
            }
        })?;
        if hit {
            break;
        }
    }
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn try_scaled_pairs(
    h1: &AdjacencyGraph,
    free: &[(usize, usize)],
    t: &[usize],
    cls: GraphClass,
    inst: &Instance,
    ctx: &ConscalContext,
    seed: u64,
    tr: &mut Tracker,
) -> Result<Option<RadiusAssignment>, SolveError> {
    for mask in 0u64..(1u64 << free.len()) {
        tr.branch()?;
        let mut h = h1.clone();
        for (b, &(p, q)) in free.iter().enumerate() {
            if mask >> b & 1 == 1 {
                h.add_edge(p, q);
            }
        }
        if !recognize(&h, cls) {
            continue;
        }
        tr.lp_calls += 1;
        if let Some(r) = ctx.solve(t, &h, inst.r_min(), inst.r_max(), seed)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}
