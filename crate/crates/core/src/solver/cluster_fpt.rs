//! FPT algorithm for Cluster-Scaling.
//!
//! Phase 1 grows the scaled set one disk `w` at a time, guessing `far(w)` (the
//! furthest unscaled neighbor) and `clo(w)` (the closest unscaled
//! non-neighbor). Every disk strictly between the two must also be scaled and
//! is queued in `N`. Phase 2 settles the remaining pairs among scaled disks
//! from their blue neighborhoods, and guesses a partition for the scaled disks
//! that have none.

use fixedbitset::FixedBitSet;

use super::xp::xp_search;
use super::{Algorithm, SolveError, SolveOptions, SolveOutcome, Tracker};
use crate::geom::{int, GraphClass, Instance, RadiusAssignment, Rational};
use crate::graph::{clusters_of, maximal_p3_packing, recognize, AdjacencyGraph};
use crate::lp::ConscalContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    /// Non-edge.
    Red,
    /// Edge.
    Blue,
    /// Not decided yet.
    Green,
}

/// A complete 3-edge-colored graph; blue and red rows are kept as bitsets and
/// a pair in neither is green.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    blue: Vec<FixedBitSet>,
    red: Vec<FixedBitSet>,
}

impl ColoredGraph {
    /// All pairs green.
    pub fn new(n: usize) -> Self {
        Self { blue: vec![FixedBitSet::with_capacity(n); n], red: vec![FixedBitSet::with_capacity(n); n] }
    }

    /// Blue on edges of `g`, red elsewhere.
    pub fn from_graph(g: &AdjacencyGraph) -> Self {
        let n = g.n();
        let mut out = Self::new(n);
        for u in 0..n {
            out.blue[u] = g.row(u).clone();
            let mut red = g.row(u).clone();
            red.toggle_range(..);
            red.set(u, false);
            out.red[u] = red;
        }
        out
    }

    pub fn n(&self) -> usize {
        self.blue.len()
    }

    pub fn color(&self, u: usize, v: usize) -> Color {
        if self.blue[u].contains(v) {
            Color::Blue
        } else if self.red[u].contains(v) {
            Color::Red
        } else {
            Color::Green
        }
    }

    pub fn set(&mut self, u: usize, v: usize, c: Color) {
        debug_assert_ne!(u, v);
        for (a, b) in [(u, v), (v, u)] {
            self.blue[a].set(b, c == Color::Blue);
            self.red[a].set(b, c == Color::Red);
        }
    }

    pub fn blue(&self, u: usize) -> &FixedBitSet {
        &self.blue[u]
    }

    pub fn red(&self, u: usize) -> &FixedBitSet {
        &self.red[u]
    }

    /// The graph of blue pairs.
    pub fn blue_graph(&self) -> AdjacencyGraph {
        let n = self.n();
        let mut g = AdjacencyGraph::new(n);
        for u in 0..n {
            for v in self.blue[u].ones().filter(|&v| v > u) {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// First `(a, c, b)` with `ac`, `cb` blue and `ab` red, scanning the
    /// center `c` ascending, then `a` ascending.
    pub fn find_colorful_p3(&self) -> Option<(usize, usize, usize)> {
        (0..self.n()).find_map(|c| {
            self.blue[c].ones().find_map(|a| {
                let mut both = self.blue[c].clone();
                both.intersect_with(&self.red[a]);
                both.ones().next().map(|b| (a, c, b))
            })
        })
    }
}

pub fn solve_cluster_fpt(inst: &Instance) -> Result<SolveOutcome, SolveError> {
    solve_cluster_fpt_with(inst, &SolveOptions::default())
}

pub fn solve_cluster_fpt_with(inst: &Instance, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let ctx = ConscalContext::new(inst.points());
    let mut tr = Tracker::new(Algorithm::ClusterFpt, opts);
    let witness = if inst.n() <= inst.k() {
        xp_search(inst, GraphClass::Cluster, &ctx, opts.seed, &mut tr)?
    } else {
        let packing = maximal_p3_packing(ctx.unit_graph());
        if packing.triples.len() > inst.k() {
            None
        } else {
            let search = Search::new(inst, &ctx, &packing.covered, opts.seed);
            let state = State {
                t: FixedBitSet::with_capacity(inst.n()),
                f: FixedBitSet::with_capacity(inst.n()),
                queue: FixedBitSet::with_capacity(inst.n()),
                h: ColoredGraph::from_graph(ctx.unit_graph()),
            };
            search.phase1(state, &mut tr)?
        }
    };
    Ok(tr.finish(witness))
}

#[derive(Clone, Debug)]
struct State {
    /// Scaled.
    t: FixedBitSet,
    /// Unscaled in every completion of this branch.
    f: FixedBitSet,
    /// Must be scaled, not yet processed.
    queue: FixedBitSet,
    h: ColoredGraph,
}

struct Search<'a> {
    inst: &'a Instance,
    ctx: &'a ConscalContext,
    seed: u64,
    k: usize,
    packed: &'a [usize],
    /// Clusters of the unit graph minus the packed disks.
    clusters: Vec<Vec<usize>>,
    far_cap: Rational,
    clo_floor: Rational,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, ctx: &'a ConscalContext, packed: &'a [usize], seed: u64) -> Self {
        let rest: Vec<usize> = (0..inst.n()).filter(|v| packed.binary_search(v).is_err()).collect();
        let clusters = clusters_of(&ctx.unit_graph().induced(&rest))
            .expect("a maximal packing leaves a cluster graph")
            .into_iter()
            .map(|c| c.into_iter().map(|i| rest[i]).collect())
            .collect();
        let sq = |r: Rational| &r * &r;
        Self {
            inst,
            ctx,
            seed,
            k: inst.k(),
            packed,
            clusters,
            far_cap: sq(inst.r_max() + int(1)),
            clo_floor: sq(inst.r_min() + int(1)),
        }
    }

    fn phase1(&self, st: State, tr: &mut Tracker) -> Result<Option<RadiusAssignment>, SolveError> {
        tr.branch()?;
        if st.t.count_ones(..) + st.queue.count_ones(..) > self.k {
            return Ok(None);
        }
        let candidates: Vec<usize> = if let Some(w) = st.queue.ones().next() {
            vec![w]
        } else if let Some((a, c, b)) = st.h.find_colorful_p3() {
            let mut z: Vec<usize> = [a, c, b].into_iter().filter(|&v| !st.t.contains(v) && !st.f.contains(v)).collect();
            z.sort_unstable();
            z
        } else {
            return self.phase2(&st, tr);
        };
        for w in candidates {
            let mut excl = st.t.clone();
            excl.union_with(&st.queue);
            excl.insert(w);
            for far in self.far_options(w, &excl) {
                let d_far = far.map(|q| self.ctx.dist2(w, q));
                for clo in self.clo_options(w, d_far, &excl) {
                    if let Some(next) = self.rule1(&st, w, far, clo) {
                        if let Some(r) = self.phase1(next, tr)? {
                            return Ok(Some(r));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// `nil`, every packed disk, and the `k` furthest members of each of the
    /// `k` closest clusters; restricted to reach `r_max + 1`.
    fn far_options(&self, w: usize, excl: &FixedBitSet) -> Vec<Option<usize>> {
        let d2 = |q: usize| self.ctx.dist2(w, q);
        let eligible = |q: &usize| !excl.contains(*q);
        let mut ranked: Vec<(&Rational, usize, Vec<usize>)> = self
            .clusters
            .iter()
            .filter_map(|c| {
                let members: Vec<usize> = c.iter().copied().filter(eligible).collect();
                let (near, id) = members.iter().map(|&q| (d2(q), q)).min()?;
                Some((near, id, members))
            })
            .collect();
        ranked.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut out: Vec<usize> = self.packed.iter().copied().filter(eligible).collect();
        for (_, _, mut members) in ranked.into_iter().take(self.k) {
            members.sort_by(|&a, &b| d2(b).cmp(d2(a)).then(a.cmp(&b)));
            out.extend(members.into_iter().take(self.k));
        }
        out.retain(|&q| *d2(q) <= self.far_cap);
        std::iter::once(None).chain(out.into_iter().map(Some)).collect()
    }

    /// `nil` and the `k` nearest eligible disks beyond `far(w)`, restricted to
    /// lie beyond `r_min + 1`.
    fn clo_options(&self, w: usize, d_far: Option<&Rational>, excl: &FixedBitSet) -> Vec<Option<usize>> {
        let d2 = |q: usize| self.ctx.dist2(w, q);
        let mut beyond: Vec<usize> =
            (0..self.inst.n()).filter(|&q| !excl.contains(q) && d_far.is_none_or(|f| d2(q) > f)).collect();
        beyond.sort_by(|&a, &b| d2(a).cmp(d2(b)).then(a.cmp(&b)));
        beyond.truncate(self.k);
        beyond.retain(|&q| *d2(q) > self.clo_floor);
        std::iter::once(None).chain(beyond.into_iter().map(Some)).collect()
    }

    /// Scales `w` with the guessed `far`/`clo`, recoloring its pairs.
    fn rule1(&self, st: &State, w: usize, far: Option<usize>, clo: Option<usize>) -> Option<State> {
        let mut next = st.clone();
        next.t.insert(w);
        next.queue.set(w, false);
        next.f.extend(far.into_iter().chain(clo));
        let d_far = far.map(|q| self.ctx.dist2(w, q));
        let d_clo = clo.map(|q| self.ctx.dist2(w, q));
        let mut x = Vec::new();
        for v in 0..self.inst.n() {
            if v == w || next.t.contains(v) || st.queue.contains(v) {
                continue;
            }
            let d = self.ctx.dist2(w, v);
            let color = if d_far.is_some_and(|f| d <= f) {
                Color::Blue
            } else if d_clo.is_some_and(|c| d >= c) {
                Color::Red
            } else {
                Color::Green
            };
            next.h.set(w, v, color);
            if color == Color::Green {
                x.push(v);
            }
        }
        if x.iter().any(|&v| next.f.contains(v)) {
            return None;
        }
        next.queue.extend(x);
        let mut inside = next.t.clone();
        inside.union_with(&next.queue);
        if inside.count_ones(..) > self.k {
            return None;
        }
        let inside: Vec<usize> = inside.ones().collect();
        for (i, &a) in inside.iter().enumerate() {
            for &b in &inside[i + 1..] {
                next.h.set(a, b, Color::Green);
            }
        }
        Some(next)
    }

    fn phase2(&self, st: &State, tr: &mut Tracker) -> Result<Option<RadiusAssignment>, SolveError> {
        let t: Vec<usize> = st.t.ones().collect();
        let mut h = st.h.clone();
        let mut lonely = Vec::new();
        for (i, &u) in t.iter().enumerate() {
            let bu = st.h.blue(u);
            if bu.is_clear() {
                lonely.push(u);
            }
            for &v in &t[i + 1..] {
                let bv = st.h.blue(v);
                if bu.is_clear() && bv.is_clear() {
                    continue;
                }
                if bu == bv {
                    h.set(u, v, Color::Blue);
                } else if bu.is_disjoint(bv) {
                    h.set(u, v, Color::Red);
                } else {
                    return Ok(None);
                }
            }
        }
        let base = h.blue_graph();
        let mut blocks = vec![0usize; lonely.len()];
        self.partitions(&base, &t, &lonely, &mut blocks, 0, 0, tr)
    }

    /// Restricted-growth enumeration of partitions of the scaled disks with
    /// no blue neighbor; each block becomes a clique.
    #[allow(clippy::too_many_arguments)]
    fn partitions(
        &self,
        base: &AdjacencyGraph,
        t: &[usize],
        lonely: &[usize],
        blocks: &mut Vec<usize>,
        i: usize,
        used: usize,
        tr: &mut Tracker,
    ) -> Result<Option<RadiusAssignment>, SolveError> {
        if i == lonely.len() {
            tr.branch()?;
            let mut h = base.clone();
            for a in 0..lonely.len() {
                for b in a + 1..lonely.len() {
                    if blocks[a] == blocks[b] {
                        h.add_edge(lonely[a], lonely[b]);
                    }
                }
            }
            if !recognize(&h, GraphClass::Cluster) {
                return Ok(None);
            }
            tr.lp_calls += 1;
            return Ok(self.ctx.solve(t, &h, self.inst.r_min(), self.inst.r_max(), self.seed)?);
        }
        for b in 0..=used {
            blocks[i] = b;
            let used = used.max(b + 1);
            if let Some(r) = self.partitions(base, t, lonely, blocks, i + 1, used, tr)? {
                return Ok(Some(r));
            }
        }
        Ok(None)
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
    fn colorful_p3_scan() {
        let g = AdjacencyGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let mut h = ColoredGraph::from_graph(&g);
        assert_eq!(h.find_colorful_p3(), Some((0, 1, 2)));
        h.set(0, 2, Color::Green);
        assert_eq!(h.color(2, 0), Color::Green);
        assert_eq!(h.find_colorful_p3(), Some((1, 2, 3)));
        h.set(1, 3, Color::Blue);
        assert_eq!(h.find_colorful_p3(), Some((0, 1, 3)));
        h.set(0, 3, Color::Green);
        assert_eq!(h.find_colorful_p3(), None);
    }

    #[test]
    fn fpt_examples() {
        let p3 = line(&[0, 2, 4], rat(1, 2), int(1), 1);
        let out = solve_cluster_fpt(&p3).unwrap();
        assert!(out.is_yes());
        let w = out.witness.unwrap();
        assert_eq!(w.scaled_count(), 1);
        assert!(verify_solution(&p3, &w, GraphClass::Cluster).unwrap().accepted());
        assert!(!solve_cluster_fpt(&p3.with_k(0)).unwrap().is_yes());

        let clustered = line(&[0, 1, 10, 11], int(1), int(2), 0);
        assert!(solve_cluster_fpt(&clustered).unwrap().is_yes());
    }
}
