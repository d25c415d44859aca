//! Exact planar geometry, instances, disk graphs and solution verification.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{self, AdjacencyGraph};

/// Exact rational number (lowest terms, positive denominator).
pub type Rational = BigRational;

/// Edge tolerance for disk-graph construction with non-unit radii, and for the
/// radius bound check in [`verify_solution`].
pub const EDGE_TOL: f64 = 1e-9;

/// Builds `num / den` in lowest terms. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Nearest binary64 value of an exact rational.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// A center with exact coordinates. `id` is its index in the owning instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub id: usize,
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(id: usize, x: Rational, y: Rational) -> Self {
        Self { id, x, y }
    }

    pub fn from_ints(id: usize, x: i64, y: i64) -> Self {
        Self::new(id, int(x), int(y))
    }
}

/// Squared Euclidean distance, exact.
pub fn dist2(a: &Point, b: &Point) -> Rational {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    &dx * &dx + &dy * &dy
}

/// Euclidean distance as the binary64 square root of the exact squared distance.
pub fn dist(a: &Point, b: &Point) -> f64 {
    to_f64(&dist2(a, b)).sqrt()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("instance has no points")]
    Empty,
    #[error("r_min must be positive")]
    NonPositiveRMin,
    #[error("r_min exceeds r_max")]
    EmptyInterval,
    #[error("point {index} carries id {id}; ids must be 0..n-1 in order")]
    BadId { index: usize, id: usize },
}

/// A Π-Scaling instance: points, the radius interval and the budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    points: Vec<Point>,
    r_min: Rational,
    r_max: Rational,
    k: usize,
}

impl Instance {
    pub fn new(points: Vec<Point>, r_min: Rational, r_max: Rational, k: usize) -> Result<Self, InstanceError> {
        if points.is_empty() {
            return Err(InstanceError::Empty);
        }
        if !r_min.is_positive() {
            return Err(InstanceError::NonPositiveRMin);
        }
        if r_min > r_max {
            return Err(InstanceError::EmptyInterval);
        }
        if let Some((index, p)) = points.iter().enumerate().find(|(i, p)| p.id != *i) {
            return Err(InstanceError::BadId { index, id: p.id });
        }
        Ok(Self { points, r_min, r_max, k })
    }

    /// Builds an instance from bare coordinates, assigning ids in order.
    pub fn from_coords(
        coords: impl IntoIterator<Item = (Rational, Rational)>,
        r_min: Rational,
        r_max: Rational,
        k: usize,
    ) -> Result<Self, InstanceError> {
        let points = coords.into_iter().enumerate().map(|(i, (x, y))| Point::new(i, x, y)).collect();
        Self::new(points, r_min, r_max, k)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn r_min(&self) -> &Rational {
        &self.r_min
    }

    pub fn r_max(&self) -> &Rational {
        &self.r_max
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_interval(self, r_min: Rational, r_max: Rational) -> Result<Self, InstanceError> {
        Self::new(self.points, r_min, r_max, self.k)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadiusError {
    #[error("radius {value} of point {index} is not a positive finite number")]
    NonPositive { index: usize, value: f64 },
}

/// Per-point binary64 radii. A point is scaled iff its radius is not exactly 1.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusAssignment {
    radii: Vec<f64>,
}

impl RadiusAssignment {
    pub fn new(radii: Vec<f64>) -> Result<Self, RadiusError> {
        if let Some((index, &value)) = radii.iter().enumerate().find(|(_, r)| !(r.is_finite() && **r > 0.0)) {
            return Err(RadiusError::NonPositive { index, value });
        }
        Ok(Self { radii })
    }

    pub fn ones(n: usize) -> Self {
        Self { radii: vec![1.0; n] }
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.radii[i]
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Sets one radius. Panics on a non-positive or non-finite value.
    pub fn set(&mut self, i: usize, r: f64) {
        assert!(r.is_finite() && r > 0.0, "radius must be positive and finite");
        self.radii[i] = r;
    }

    /// The scaled set T(r), ascending.
    pub fn scaled(&self) -> Vec<usize> {
        self.radii.iter().enumerate().filter(|(_, &r)| r != 1.0).map(|(i, _)| i).collect()
    }

    pub fn scaled_count(&self) -> usize {
        self.radii.iter().filter(|&&r| r != 1.0).count()
    }
}

/// Target graph class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Cluster,
    Complete,
    Connected,
    Edgeless,
}

impl GraphClass {
    pub const ALL: [GraphClass; 4] = [Self::Cluster, Self::Complete, Self::Connected, Self::Edgeless];

    /// Closed under induced subgraphs.
    pub fn is_hereditary(self) -> bool {
        !matches!(self, Self::Connected)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Cluster => "cluster",
            Self::Complete => "complete",
            Self::Connected => "connected",
            Self::Edgeless => "edgeless",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cluster" => Ok(Self::Cluster),
            "complete" => Ok(Self::Complete),
            "connected" => Ok(Self::Connected),
            "edgeless" => Ok(Self::Edgeless),
            other => Err(format!("unknown graph class `{other}`")),
        }
    }
}

/// Disk intersection test under the mixed-precision rule: two unit disks are
/// compared exactly, everything else in binary64 with [`EDGE_TOL`].
pub fn disks_intersect(d2: &Rational, ri: f64, rj: f64) -> bool {
    if ri == 1.0 && rj == 1.0 {
        return unit_adjacent(d2);
    }
    to_f64(d2).sqrt() <= ri + rj + EDGE_TOL
}

/// `d2 <= 4`, exactly.
pub fn unit_adjacent(d2: &Rational) -> bool {
    *d2 <= int(4)
}

/// `G(S, r)`.
pub fn build_disk_graph(points: &[Point], r: &RadiusAssignment) -> AdjacencyGraph {
    assert_eq!(points.len(), r.len(), "one radius per point");
    let n = points.len();
    let mut g = AdjacencyGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if disks_intersect(&dist2(&points[i], &points[j]), r.radius(i), r.radius(j)) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// `G(S, 1)`, decided exactly.
pub fn build_unit_disk_graph(points: &[Point]) -> AdjacencyGraph {
    let n = points.len();
    let mut g = AdjacencyGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if unit_adjacent(&dist2(&points[i], &points[j])) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Why a radius assignment was rejected.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Budget { scaled: usize, k: usize },
    RadiusBounds { point: usize, radius: f64, r_min: f64, r_max: f64 },
    InducedP3 { u: usize, v: usize, w: usize },
    MissingEdge { u: usize, v: usize },
    Disconnected { isolated: Option<usize>, unreachable: usize },
    Edge { u: usize, v: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Budget { scaled, k } => write!(f, "budget exceeded: {scaled} scaled disks, k = {k}"),
            Self::RadiusBounds { point, radius, r_min, r_max } => {
                write!(f, "radius {radius} of point {point} outside [{r_min}, {r_max}]")
            }
            Self::InducedP3 { u, v, w } => write!(f, "induced P3 ({u}, {v}, {w})"),
            Self::MissingEdge { u, v } => write!(f, "not complete: {u} and {v} are non-adjacent"),
            Self::Disconnected { isolated: Some(x), unreachable } => {
                write!(f, "disconnected: point {x} is isolated ({unreachable} not reachable from 0)")
            }
            Self::Disconnected { isolated: None, unreachable } => {
                write!(f, "disconnected: point {unreachable} not reachable from point 0")
            }
            Self::Edge { u, v } => write!(f, "not edgeless: edge ({u}, {v})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("radius list has {got} entries, instance has {expected} points")]
    LengthMismatch { expected: usize, got: usize },
}

/// Result of [`verify_solution`]: `None` means accepted.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub violation: Option<Violation>,
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks budget, radius bounds and class membership of `G(S, r)`.
///
/// Points that coincide and carry the same radius are true twins, so the check
/// runs on the quotient by such groups. This keeps gadget instances with
/// hundreds of thousands of co-located copies tractable.
pub fn verify_solution(inst: &Instance, r: &RadiusAssignment, cls: GraphClass) -> Result<Verdict, VerifyError> {
    if r.len() != inst.n() {
        return Err(VerifyError::LengthMismatch { expected: inst.n(), got: r.len() });
    }
    let verdict = |v: Option<Violation>| Ok(Verdict { violation: v });
    let scaled = r.scaled_count();
    if scaled > inst.k() {
        return verdict(Some(Violation::Budget { scaled, k: inst.k() }));
    }
    let (lo, hi) = (to_f64(inst.r_min()), to_f64(inst.r_max()));
    for (i, &ri) in r.radii().iter().enumerate() {
        if ri != 1.0 && (ri < lo - EDGE_TOL || ri > hi + EDGE_TOL) {
            return verdict(Some(Violation::RadiusBounds { point: i, radius: ri, r_min: lo, r_max: hi }));
        }
    }
    let twins = TwinGroups::new(inst.points(), r);
    verdict(twins.class_violation(cls))
}

/// Groups of coincident points with identical radius, and the disk graph on
/// one representative per group.
pub struct TwinGroups {
    /// Members of each group, ascending; groups ordered by smallest member.
    pub members: Vec<Vec<usize>>,
    pub quotient: AdjacencyGraph,
}

impl TwinGroups {
    pub fn new(points: &[Point], r: &RadiusAssignment) -> Self {
        let mut index: HashMap<(&Rational, &Rational, u64), usize> = HashMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            let key = (&p.x, &p.y, r.radius(i).to_bits());
            let g = *index.entry(key).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[g].push(i);
        }
        let reps: Vec<usize> = members.iter().map(|m| m[0]).collect();
        let mut quotient = AdjacencyGraph::new(reps.len());
        for a in 0..reps.len() {
            for b in a + 1..reps.len() {
                let (i, j) = (reps[a], reps[b]);
                if disks_intersect(&dist2(&points[i], &points[j]), r.radius(i), r.radius(j)) {
                    quotient.add_edge(a, b);
                }
            }
        }
        Self { members, quotient }
    }

    fn rep(&self, g: usize) -> usize {
        self.members[g][0]
    }

    /// First reason the full graph is not in `cls`, with original point ids.
    pub fn class_violation(&self, cls: GraphClass) -> Option<Violation> {
        let q = &self.quotient;
        match cls {
            GraphClass::Cluster => graph::find_induced_p3(q).map(|(u, v, w)| Violation::InducedP3 {
                u: self.rep(u),
                v: self.rep(v),
                w: self.rep(w),
            }),
            GraphClass::Complete => {
                graph::first_non_edge(q).map(|(u, v)| Violation::MissingEdge { u: self.rep(u), v: self.rep(v) })
            }
            GraphClass::Connected => {
                let comps = graph::components(q);
                if comps.len() <= 1 {
                    return None;
                }
                let isolated = (0..q.n())
                    .find(|&g| q.degree(g) == 0 && self.members[g].len() == 1)
                    .map(|g| self.rep(g));
                let unreachable = comps[1..].iter().map(|c| self.rep(c[0])).min().expect("second component");
                Some(Violation::Disconnected { isolated, unreachable })
            }
            GraphClass::Edgeless => {
                let twin = self.members.iter().find(|m| m.len() > 1).map(|m| (m[0], m[1]));
                let cross = q.edges().next().map(|(u, v)| (self.rep(u), self.rep(v)));
                match (twin, cross) {
                    (None, None) => None,
                    (Some(a), Some(b)) => {
                        let (u, v) = a.min(b);
                        Some(Violation::Edge { u, v })
                    }
                    (Some((u, v)), None) | (None, Some((u, v))) => Some(Violation::Edge { u, v }),
                }
            }
        }
    }
}

/// `sqrt(a) + sqrt(b) >= sqrt(d2)` for non-negative rationals, exactly.
pub fn sqrt_sum_reaches(d2: &Rational, a: &Rational, b: &Rational) -> bool {
    // d2 <= a + b + 2 sqrt(ab)  <=>  l <= 0 or l^2 <= 4ab, with l = d2 - a - b.
    let l = d2 - a - b;
    if !l.is_positive() {
        return true;
    }
    &l * &l <= int(4) * a * b
}

/// Exact floor of `sqrt(v)` scaled to `10^-digits`, rounded up: the smallest
/// decimal `m / 10^digits` with `(m / 10^digits)^2 >= v`.
pub fn sqrt_upper_decimal(v: &Rational, digits: u32) -> Rational {
    assert!(!v.is_negative());
    let scale = BigInt::from(10u32).pow(digits);
    // m >= sqrt(v) * scale  <=>  m^2 >= v * scale^2
    let target = v * Rational::from_integer(&scale * &scale);
    let floor_target = target.floor().to_integer();
    let mut m = floor_target.sqrt();
    while Rational::from_integer(&m * &m) < target {
        m += BigInt::one();
    }
    while m > BigInt::zero() && Rational::from_integer((&m - 1) * (&m - 1)) >= target {
        m -= BigInt::one();
    }
    Rational::new(m, scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(c: &[(i64, i64)]) -> Vec<Point> {
        c.iter().enumerate().map(|(i, &(x, y))| Point::from_ints(i, x, y)).collect()
    }

    #[test]
    fn dist2_examples() {
        let o = Point::from_ints(0, 0, 0);
        assert_eq!(dist2(&o, &Point::from_ints(1, 2, 0)), int(4));
        assert_eq!(dist2(&o, &o), int(0));
        let a = Point::new(0, rat(1, 2), int(0));
        let b = Point::new(1, int(0), rat(1, 2));
        assert_eq!(dist2(&a, &b), rat(1, 2));
    }

    #[test]
    fn disk_graph_examples() {
        let p = pts(&[(0, 0), (2, 0)]);
        assert!(build_disk_graph(&p, &RadiusAssignment::ones(2)).has_edge(0, 1));
        let q = vec![Point::from_ints(0, 0, 0), Point::new(1, rat(21, 10), int(0))];
        assert!(!build_disk_graph(&q, &RadiusAssignment::ones(2)).has_edge(0, 1));
        let s = pts(&[(0, 0), (3, 0)]);
        let r = RadiusAssignment::new(vec![2.5, 1.0]).unwrap();
        assert!(build_disk_graph(&s, &r).has_edge(0, 1));
    }

    #[test]
    fn unit_graph_examples() {
        let g = build_unit_disk_graph(&pts(&[(0, 0), (2, 0), (4, 0)]));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(build_unit_disk_graph(&pts(&[(5, 5)])).edge_count(), 0);
        let grid = pts(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]);
        let g = build_unit_disk_graph(&grid);
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    let (dx, dy) = (grid[i].x.clone() - grid[j].x.clone(), grid[i].y.clone() - grid[j].y.clone());
                    assert_eq!(g.has_edge(i, j), &dx * &dx + &dy * &dy <= int(4));
                }
            }
        }
    }

    fn p3_instance(k: usize) -> Instance {
        Instance::new(pts(&[(0, 0), (2, 0), (4, 0)]), rat(1, 2), int(1), k).unwrap()
    }

    #[test]
    fn verify_examples() {
        let path = Instance::new(pts(&[(0, 0), (2, 0)]), int(1), int(1), 0).unwrap();
        assert!(verify_solution(&path, &RadiusAssignment::ones(2), GraphClass::Cluster).unwrap().accepted());

        let r = RadiusAssignment::new(vec![1.0, 0.5, 1.0]).unwrap();
        assert!(verify_solution(&p3_instance(1), &r, GraphClass::Cluster).unwrap().accepted());

        let v = verify_solution(&p3_instance(5), &RadiusAssignment::ones(3), GraphClass::Cluster).unwrap();
        assert_eq!(v.violation, Some(Violation::InducedP3 { u: 0, v: 1, w: 2 }));
    }

    #[test]
    fn verify_budget_and_bounds() {
        let r = RadiusAssignment::new(vec![1.0, 0.5, 1.0]).unwrap();
        let v = verify_solution(&p3_instance(0), &r, GraphClass::Cluster).unwrap();
        assert_eq!(v.violation, Some(Violation::Budget { scaled: 1, k: 0 }));
        let r = RadiusAssignment::new(vec![1.0, 0.4, 1.0]).unwrap();
        let v = verify_solution(&p3_instance(1), &r, GraphClass::Cluster).unwrap();
        assert!(matches!(v.violation, Some(Violation::RadiusBounds { point: 1, .. })));
        assert!(verify_solution(&p3_instance(1), &RadiusAssignment::ones(2), GraphClass::Cluster).is_err());
    }

    #[test]
    fn twins_respected_for_edgeless() {
        let inst = Instance::new(pts(&[(0, 0), (0, 0), (9, 9)]), int(1), int(1), 0).unwrap();
        let v = verify_solution(&inst, &RadiusAssignment::ones(3), GraphClass::Edgeless).unwrap();
        assert_eq!(v.violation, Some(Violation::Edge { u: 0, v: 1 }));
        let v = verify_solution(&inst, &RadiusAssignment::ones(3), GraphClass::Connected).unwrap();
        assert_eq!(v.violation, Some(Violation::Disconnected { isolated: Some(2), unreachable: 2 }));
    }

    #[test]
    fn exact_sqrt_helpers() {
        // sqrt(2) + sqrt(2) = sqrt(8)
        assert!(sqrt_sum_reaches(&int(8), &int(2), &int(2)));
        assert!(!sqrt_sum_reaches(&rat(8001, 1000), &int(2), &int(2)));
        let s = sqrt_upper_decimal(&int(2), 6);
        assert_eq!(s, rat(1_414_214, 1_000_000));
        assert_eq!(sqrt_upper_decimal(&int(9), 3), int(3));
    }
}
