//! Low-dimensional LP (Seidel's randomized incremental algorithm) and the
//! ConScal feasibility program built on it.

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geom::{disks_intersect, dist2, to_f64, Point, RadiusAssignment, Rational};
use crate::graph::AdjacencyGraph;

/// Seed used by [`conscal`] when the caller does not supply one.
pub const DEFAULT_LP_SEED: u64 = 0x5EED_D15C;

/// Relative tolerance for "constraint satisfied" tests inside the LP.
const LP_TOL: f64 = 1e-12;
/// Coefficients below this magnitude (relative to the row) are treated as zero.
const COEFF_EPS: f64 = 1e-13;

/// `coeffs · x <= rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpace {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

impl HalfSpace {
    pub fn new(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self { coeffs, rhs }
    }

    fn slack_tol(&self, x: &[f64]) -> f64 {
        let mag: f64 = self.coeffs.iter().zip(x).map(|(a, v)| (a * v).abs()).sum();
        LP_TOL * (1.0 + self.rhs.abs() + mag)
    }

    fn satisfied(&self, x: &[f64]) -> bool {
        dot(&self.coeffs, x) <= self.rhs + self.slack_tol(x)
    }
}

/// Maximize `objective · x` subject to box bounds and general half-spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub constraints: Vec<HalfSpace>,
    pub objective: Vec<f64>,
}

impl LpProblem {
    pub fn dim(&self) -> usize {
        self.objective.len()
    }

    fn validate(&self) -> Result<(), LpError> {
        let d = self.dim();
        if d == 0 {
            return Err(LpError::Malformed("dimension must be at least 1".into()));
        }
        if self.lower.len() != d || self.upper.len() != d {
            return Err(LpError::Malformed("bounds do not match the dimension".into()));
        }
        if let Some(i) = self.constraints.iter().position(|c| c.coeffs.len() != d) {
            return Err(LpError::Malformed(format!("constraint {i} has the wrong arity")));
        }
        let finite = self.lower.iter().chain(&self.upper).chain(&self.objective).all(|v| v.is_finite())
            && self.constraints.iter().all(|c| c.rhs.is_finite() && c.coeffs.iter().all(|v| v.is_finite()));
        if !finite {
            return Err(LpError::IllConditioned("non-finite input".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("malformed LP: {0}")]
    Malformed(String),
    #[error("ill-conditioned LP: {0}")]
    IllConditioned(String),
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Optimal vertex of `lp`, or `None` if infeasible. Deterministic per seed.
pub fn solve_lp(lp: &LpProblem, seed: u64) -> Result<Option<LpSolution>, LpError> {
    lp.validate()?;
    if lp.lower.iter().zip(&lp.upper).any(|(l, u)| l > u) {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sol = seidel(&lp.lower, &lp.upper, &lp.constraints, &lp.objective, &mut rng)?;
    match sol {
        Some(x) if x.iter().all(|v| v.is_finite()) => {
            let value = dot(&lp.objective, &x);
            Ok(Some(LpSolution { x, value }))
        }
        Some(_) => Err(LpError::IllConditioned("non-finite optimum".into())),
        None => Ok(None),
    }
}

/// Solves a program whose objective is its last variable; returns `(ε*, x)`.
pub fn solve_lp_max_eps(lp: &LpProblem, seed: u64) -> Result<Option<(f64, Vec<f64>)>, LpError> {
    Ok(solve_lp(lp, seed)?.map(|s| (s.x[s.x.len() - 1], s.x)))
}

fn box_vertex(lower: &[f64], upper: &[f64], obj: &[f64]) -> Vec<f64> {
    (0..obj.len())
        .map(|j| match obj[j].partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Greater) => upper[j],
            Some(std::cmp::Ordering::Less) => lower[j],
            _ => 0.5 * (lower[j] + upper[j]),
        })
        .collect()
}

fn seidel(
    lower: &[f64],
    upper: &[f64],
    cons: &[HalfSpace],
    obj: &[f64],
    rng: &mut ChaCha8Rng,
) -> Result<Option<Vec<f64>>, LpError> {
    let d = obj.len();
    if d == 1 {
        return Ok(one_dim(lower[0], upper[0], cons, obj[0]));
    }
    let mut order: Vec<usize> = (0..cons.len()).collect();
    order.shuffle(rng);
    let mut x = box_vertex(lower, upper, obj);
    for pos in 0..order.len() {
        let h = &cons[order[pos]];
        if h.satisfied(&x) {
            continue;
        }
        // The optimum of the enlarged program lies on h's boundary.
        let (j, aj) = h
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &a)| (j, a))
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .expect("d >= 2");
        if aj.abs() <= COEFF_EPS {
            // 0 <= rhs is violated: infeasible.
            return Ok(None);
        }
        let prev: Vec<&HalfSpace> = order[..pos].iter().map(|&i| &cons[i]).collect();
        let sub = Projection::new(h, j, aj);
        let mut sub_cons: Vec<HalfSpace> = prev.iter().map(|c| sub.project(c)).collect();
        // Box of the eliminated variable becomes two general constraints.
        sub_cons.push(HalfSpace::new(sub.g.clone(), upper[j] - sub.beta0));
        sub_cons.push(HalfSpace::new(sub.g.iter().map(|v| -v).collect(), sub.beta0 - lower[j]));
        let sub_obj: Vec<f64> = drop_index(obj, j).iter().zip(&sub.g).map(|(o, g)| o + obj[j] * g).collect();
        let Some(y) = seidel(&drop_index(lower, j), &drop_index(upper, j), &sub_cons, &sub_obj, rng)? else {
            return Ok(None);
        };
        let xj = sub.beta0 + dot(&sub.g, &y);
        if !xj.is_finite() {
            return Err(LpError::IllConditioned("lifted coordinate is not finite".into()));
        }
        x = insert_index(&y, j, xj);
    }
    Ok(Some(x))
}

/// Parametrization of the hyperplane `a·x = b` by eliminating `x_j`:
/// `x_j = beta0 + g·y` where `y` are the remaining coordinates.
struct Projection {
    j: usize,
    beta0: f64,
    g: Vec<f64>,
}

impl Projection {
    fn new(h: &HalfSpace, j: usize, aj: f64) -> Self {
        let g = drop_index(&h.coeffs, j).iter().map(|a| clean(-a / aj)).collect();
        Self { j, beta0: h.rhs / aj, g }
    }

    fn project(&self, c: &HalfSpace) -> HalfSpace {
        let cj = c.coeffs[self.j];
        let coeffs = drop_index(&c.coeffs, self.j).iter().zip(&self.g).map(|(a, g)| clean(a + cj * g)).collect();
        HalfSpace::new(coeffs, c.rhs - cj * self.beta0)
    }
}

fn clean(v: f64) -> f64 {
    if v.abs() <= COEFF_EPS {
        0.0
    } else {
        v
    }
}

fn drop_index(v: &[f64], j: usize) -> Vec<f64> {
    v.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, &x)| x).collect()
}

fn insert_index(v: &[f64], j: usize, val: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(v.len() + 1);
    out.extend_from_slice(&v[..j]);
    out.push(val);
    out.extend_from_slice(&v[j..]);
    out
}

fn one_dim(lower: f64, upper: f64, cons: &[HalfSpace], c: f64) -> Option<Vec<f64>> {
    let (mut lo, mut hi) = (lower, upper);
    for h in cons {
        let a = h.coeffs[0];
        if a.abs() <= COEFF_EPS {
            if h.rhs < -LP_TOL * (1.0 + h.rhs.abs()) {
                return None;
            }
        } else if a > 0.0 {
            hi = hi.min(h.rhs / a);
        } else {
            lo = lo.max(h.rhs / a);
        }
    }
    if lo > hi {
        if lo - hi > LP_TOL * (1.0 + lo.abs() + hi.abs()) {
            return None;
        }
        let mid = 0.5 * (lo + hi);
        return Some(vec![mid]);
    }
    let x = if c > 0.0 {
        hi
    } else if c < 0.0 {
        lo
    } else {
        0.5 * (lo + hi)
    };
    Some(vec![x])
}

// ---------------------------------------------------------------------------
// ConScal

/// A ConScal query: fixed scaled set and fixed target graph.
#[derive(Clone, Copy, Debug)]
pub struct ConscalInput<'a> {
    pub points: &'a [Point],
    /// Scaled point ids; ascending and duplicate-free.
    pub scaled: &'a [usize],
    pub target: &'a AdjacencyGraph,
    pub r_min: &'a Rational,
    pub r_max: &'a Rational,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConscalError {
    #[error("unscaled pair ({u}, {v}) disagrees with the unit disk graph")]
    UnscaledMismatch { u: usize, v: usize },
    #[error("scaled set must be ascending, duplicate-free and in range")]
    BadScaledSet,
    #[error("target graph has {got} vertices, expected {expected}")]
    TargetSize { expected: usize, got: usize },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("ill-conditioned: LP witness realizes a different graph at pair ({u}, {v})")]
    WitnessMismatch { u: usize, v: usize },
}

/// Geometry shared by many ConScal queries on one point set.
#[derive(Clone, Debug)]
pub struct ConscalContext {
    n: usize,
    dist: Vec<f64>,
    d2: Vec<Rational>,
    unit: AdjacencyGraph,
    e_cap: f64,
}

impl ConscalContext {
    pub fn new(points: &[Point]) -> Self {
        let n = points.len();
        let mut d2 = Vec::with_capacity(n * n);
        for a in points {
            for b in points {
                d2.push(dist2(a, b));
            }
        }
        let dist: Vec<f64> = d2.iter().map(|v| to_f64(v).sqrt()).collect();
        let mut unit = AdjacencyGraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if crate::geom::unit_adjacent(&d2[i * n + j]) {
                    unit.add_edge(i, j);
                }
            }
        }
        let e_cap = dist.iter().copied().fold(0.0, f64::max) + 1.0;
        Self { n, dist, d2, unit, e_cap }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn dist2(&self, i: usize, j: usize) -> &Rational {
        &self.d2[i * self.n + j]
    }

    pub fn unit_graph(&self) -> &AdjacencyGraph {
        &self.unit
    }

    /// Cap on ε: max pairwise distance + 1.
    pub fn e_cap(&self) -> f64 {
        self.e_cap
    }

    /// Strictness threshold ε_min = 1e-7 · max(1, E_cap).
    pub fn eps_min(&self) -> f64 {
        1e-7 * self.e_cap.max(1.0)
    }

    fn check(&self, scaled: &[usize], target: &AdjacencyGraph) -> Result<FixedBitSet, ConscalError> {
        if target.n() != self.n {
            return Err(ConscalError::TargetSize { expected: self.n, got: target.n() });
        }
        if scaled.windows(2).any(|w| w[0] >= w[1]) || scaled.last().is_some_and(|&s| s >= self.n) {
            return Err(ConscalError::BadScaledSet);
        }
        let mut unscaled = FixedBitSet::with_capacity(self.n);
        unscaled.insert_range(..);
        for &p in scaled {
            unscaled.set(p, false);
        }
        for u in unscaled.ones() {
            let mut diff = self.unit.row(u).clone();
            diff.symmetric_difference_with(target.row(u));
            diff.intersect_with(&unscaled);
            if let Some(v) = diff.ones().next() {
                return Err(ConscalError::UnscaledMismatch { u: u.min(v), v: u.max(v) });
            }
        }
        Ok(unscaled)
    }

    /// The ConScal program; variables are `x_p` for `p` in `scaled` order, then ε.
    pub fn build_lp(
        &self,
        scaled: &[usize],
        target: &AdjacencyGraph,
        r_min: f64,
        r_max: f64,
    ) -> Result<LpProblem, ConscalError> {
        let unscaled = self.check(scaled, target)?;
        let t = scaled.len();
        let d = t + 1;
        let mut lower = vec![r_min; t];
        let mut upper = vec![r_max; t];
        lower.push(0.0);
        upper.push(self.e_cap);
        let mut objective = vec![0.0; d];
        objective[t] = 1.0;
        let mut constraints = Vec::new();
        let row = |entries: &[(usize, f64)], rhs: f64| {
            let mut c = vec![0.0; d];
            for &(i, v) in entries {
                c[i] += v;
            }
            HalfSpace::new(c, rhs)
        };
        for (i, &p) in scaled.iter().enumerate() {
            for u in unscaled.ones() {
                let dpu = self.dist(p, u);
                if target.has_edge(p, u) {
                    // x_p + 1 >= d
                    constraints.push(row(&[(i, -1.0)], 1.0 - dpu));
                } else {
                    // x_p + 1 <= d - ε
                    constraints.push(row(&[(i, 1.0), (t, 1.0)], dpu - 1.0));
                }
            }
        }
        for (i, &p) in scaled.iter().enumerate() {
            for (j, &q) in scaled.iter().enumerate().skip(i + 1) {
                let dpq = self.dist(p, q);
                if target.has_edge(p, q) {
                    constraints.push(row(&[(i, -1.0), (j, -1.0)], -dpq));
                } else {
                    constraints.push(row(&[(i, 1.0), (j, 1.0), (t, 1.0)], dpq));
                }
            }
        }
        Ok(LpProblem { lower, upper, constraints, objective })
    }

    /// Necessary conditions read off single-variable and pairwise bounds; a
    /// `false` here means the LP optimum is below ε_min.
    fn quick_reject(&self, scaled: &[usize], unscaled: &FixedBitSet, target: &AdjacencyGraph, r_min: f64, r_max: f64) -> bool {
        let eps = self.eps_min();
        let mut lo = vec![r_min; scaled.len()];
        let mut hi = vec![r_max; scaled.len()];
        for (i, &p) in scaled.iter().enumerate() {
            for u in unscaled.ones() {
                let d = self.dist(p, u);
                if target.has_edge(p, u) {
                    lo[i] = lo[i].max(d - 1.0);
                } else {
                    hi[i] = hi[i].min(d - 1.0 - eps);
                }
            }
            if lo[i] > hi[i] + 1e-9 {
                return true;
            }
        }
        for (i, &p) in scaled.iter().enumerate() {
            for (j, &q) in scaled.iter().enumerate().skip(i + 1) {
                let d = self.dist(p, q);
                let bad = if target.has_edge(p, q) { hi[i] + hi[j] < d - 1e-9 } else { lo[i] + lo[j] > d - eps + 1e-9 };
                if bad {
                    return true;
                }
            }
        }
        false
    }

    /// Decides ConScal; on success the returned radii realize `target` exactly
    /// under the disk-graph rule.
    pub fn solve(
        &self,
        scaled: &[usize],
        target: &AdjacencyGraph,
        r_min: &Rational,
        r_max: &Rational,
        seed: u64,
    ) -> Result<Option<RadiusAssignment>, ConscalError> {
        let (lo, hi) = (to_f64(r_min), to_f64(r_max));
        let unscaled = self.check(scaled, target)?;
        if scaled.is_empty() {
            return Ok(Some(RadiusAssignment::ones(self.n)));
        }
        if self.quick_reject(scaled, &unscaled, target, lo, hi) {
            return Ok(None);
        }
        let lp = self.build_lp(scaled, target, lo, hi)?;
        let Some((eps, x)) = solve_lp_max_eps(&lp, seed)? else {
            return Ok(None);
        };
        if eps < self.eps_min() {
            return Ok(None);
        }
        let mut radii = vec![1.0; self.n];
        for (i, &p) in scaled.iter().enumerate() {
            radii[p] = x[i].clamp(lo, hi);
        }
        let r = RadiusAssignment::new(radii).map_err(|e| LpError::IllConditioned(e.to_string()))?;
        for &p in scaled {
            for q in 0..self.n {
                if q != p && disks_intersect(self.dist2(p, q), r.radius(p), r.radius(q)) != target.has_edge(p, q) {
                    return Err(ConscalError::WitnessMismatch { u: p.min(q), v: p.max(q) });
                }
            }
        }
        Ok(Some(r))
    }
}

/// The ConScal program for `input`.
pub fn build_conscal_lp(input: &ConscalInput<'_>) -> Result<LpProblem, ConscalError> {
    ConscalContext::new(input.points).build_lp(input.scaled, input.target, to_f64(input.r_min), to_f64(input.r_max))
}

/// Radii realizing `input.target` with slack at least ε_min, if they exist.
pub fn conscal(input: &ConscalInput<'_>) -> Result<Option<RadiusAssignment>, ConscalError> {
    ConscalContext::new(input.points).solve(input.scaled, input.target, input.r_min, input.r_max, DEFAULT_LP_SEED)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{build_disk_graph, build_unit_disk_graph, int};

    fn lp1(lower: f64, upper: f64, cons: Vec<(Vec<f64>, f64)>, lo_eps: f64, hi_eps: f64) -> LpProblem {
        LpProblem {
            lower: vec![lower, lo_eps],
            upper: vec![upper, hi_eps],
            constraints: cons.into_iter().map(|(a, b)| HalfSpace::new(a, b)).collect(),
            objective: vec![0.0, 1.0],
        }
    }

    #[test]
    fn lp_examples() {
        let only_eps = LpProblem { lower: vec![0.0], upper: vec![5.0], constraints: vec![], objective: vec![1.0] };
        assert_eq!(solve_lp_max_eps(&only_eps, 1).unwrap().unwrap().0, 5.0);

        // x + 1 <= 2 - ε with x >= 1 forces ε = 0.
        let tight = lp1(1.0, 10.0, vec![(vec![1.0, 1.0], 1.0)], 0.0, 10.0);
        let (eps, x) = solve_lp_max_eps(&tight, 1).unwrap().unwrap();
        assert!(eps.abs() < 1e-12 && (x[0] - 1.0).abs() < 1e-12);

        // x >= 2 and x <= 1
        let infeasible = lp1(-10.0, 10.0, vec![(vec![-1.0, 0.0], -2.0), (vec![1.0, 0.0], 1.0)], 0.0, 1.0);
        assert_eq!(solve_lp(&infeasible, 1).unwrap(), None);
    }

    #[test]
    fn lp_three_dims_matches_hand_optimum() {
        // max x + y + z  s.t. x + y <= 1, y + z <= 1, x + z <= 1 in [0, 1]^3 -> 3/2.
        let lp = LpProblem {
            lower: vec![0.0; 3],
            upper: vec![1.0; 3],
            constraints: vec![
                HalfSpace::new(vec![1.0, 1.0, 0.0], 1.0),
                HalfSpace::new(vec![0.0, 1.0, 1.0], 1.0),
                HalfSpace::new(vec![1.0, 0.0, 1.0], 1.0),
            ],
            objective: vec![1.0, 1.0, 1.0],
        };
        for seed in 0..20 {
            let s = solve_lp(&lp, seed).unwrap().unwrap();
            assert!((s.value - 1.5).abs() < 1e-9, "seed {seed}: {}", s.value);
        }
    }

    fn two(a: (i64, i64), b: (i64, i64)) -> Vec<Point> {
        vec![Point::from_ints(0, a.0, a.1), Point::from_ints(1, b.0, b.1)]
    }

    #[test]
    fn build_lp_example() {
        let pts = two((0, 0), (3, 0));
        let h = AdjacencyGraph::from_edges(2, &[(0, 1)]);
        let input = ConscalInput { points: &pts, scaled: &[0], target: &h, r_min: &int(1), r_max: &int(3) };
        let lp = build_conscal_lp(&input).unwrap();
        assert_eq!(lp.lower, vec![1.0, 0.0]);
        assert_eq!(lp.upper, vec![3.0, 4.0]);
        assert_eq!(lp.constraints, vec![HalfSpace::new(vec![-1.0, 0.0], -2.0)]);
    }

    #[test]
    fn conscal_examples() {
        let pts = two((0, 0), (3, 0));
        let h = AdjacencyGraph::from_edges(2, &[(0, 1)]);
        let input = ConscalInput { points: &pts, scaled: &[0], target: &h, r_min: &int(1), r_max: &int(3) };
        let r = conscal(&input).unwrap().unwrap();
        assert!((2.0..=3.0).contains(&r.radius(0)) && r.radius(1) == 1.0);
        assert_eq!(build_disk_graph(&pts, &r), h);

        let pts = two((0, 0), (2, 0));
        let none = AdjacencyGraph::new(2);
        let input = ConscalInput { points: &pts, scaled: &[0], target: &none, r_min: &int(1), r_max: &int(3) };
        assert_eq!(conscal(&input).unwrap(), None);

        let g = build_unit_disk_graph(&pts);
        let input = ConscalInput { points: &pts, scaled: &[], target: &g, r_min: &int(1), r_max: &int(3) };
        assert_eq!(conscal(&input).unwrap(), Some(RadiusAssignment::ones(2)));
    }

    #[test]
    fn unscaled_mismatch_is_reported() {
        let pts = vec![Point::from_ints(0, 0, 0), Point::from_ints(1, 1, 0), Point::from_ints(2, 9, 0)];
        let h = AdjacencyGraph::new(3);
        let input = ConscalInput { points: &pts, scaled: &[2], target: &h, r_min: &int(1), r_max: &int(3) };
        assert_eq!(conscal(&input), Err(ConscalError::UnscaledMismatch { u: 0, v: 1 }));
    }
}
