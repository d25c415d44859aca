//! Rectilinear grid embeddings of planar cubic graphs (supplied as input).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::GadgetError;
use crate::geom::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[serde(alias = "top")]
    Up,
    #[serde(alias = "bottom")]
    Down,
    Left,
    Right,
}

impl Direction {
    pub fn unit(self) -> (i64, i64) {
        match self {
            Self::Up => (0, 1),
            Self::Down => (0, -1),
            Self::Left => (-1, 0),
            Self::Right => (1, 0),
        }
    }

    fn from_step(dx: i64, dy: i64) -> Option<Self> {
        match (dx.signum(), dy.signum()) {
            (0, 1) => Some(Self::Up),
            (0, -1) => Some(Self::Down),
            (-1, 0) => Some(Self::Left),
            (1, 0) => Some(Self::Right),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedVertex {
    pub id: usize,
    pub pos: [i64; 2],
    /// A direction in which no incident edge leaves the vertex.
    pub free: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedEdge {
    pub u: usize,
    pub v: usize,
    /// Corner points from `pos(u)` to `pos(v)`.
    pub route: Vec<[i64; 2]>,
}

/// A straight piece of a route, in grid units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: [i64; 2],
    pub dir: Direction,
    pub len: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedGraph {
    pub vertices: Vec<EmbeddedVertex>,
    pub edges: Vec<EmbeddedEdge>,
}

impl EmbeddedGraph {
    pub fn from_json(s: &str) -> Result<Self, GadgetError> {
        let g: Self = serde_json::from_str(s).map_err(|e| GadgetError::Embedding(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("embedding serializes")
    }

    /// A hand-made embedding of K4 with total route length 11.
    pub fn k4() -> Self {
        let v = |id, x, y, free| EmbeddedVertex { id, pos: [x, y], free };
        let e = |u, v, route: &[[i64; 2]]| EmbeddedEdge { u, v, route: route.to_vec() };
        Self {
            vertices: vec![
                v(0, 1, 0, Direction::Down),
                v(1, 2, 1, Direction::Right),
                v(2, 1, 2, Direction::Up),
                v(3, 1, 1, Direction::Left),
            ],
            edges: vec![
                e(0, 1, &[[1, 0], [2, 0], [2, 1]]),
                e(1, 2, &[[2, 1], [2, 2], [1, 2]]),
                e(2, 0, &[[1, 2], [0, 2], [0, 0], [1, 0]]),
                e(3, 0, &[[1, 1], [1, 0]]),
                e(3, 1, &[[1, 1], [2, 1]]),
                e(3, 2, &[[1, 1], [1, 2]]),
            ],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn segments(&self, edge: usize) -> Vec<Segment> {
        self.edges[edge]
            .route
            .windows(2)
            .map(|w| {
                let (dx, dy) = (w[1][0] - w[0][0], w[1][1] - w[0][1]);
                Segment { start: w[0], dir: Direction::from_step(dx, dy).expect("validated route"), len: dx.abs() + dy.abs() }
            })
            .collect()
    }

    pub fn validate(&self) -> Result<(), GadgetError> {
        let bad = |m: String| Err(GadgetError::Embedding(m));
        if let Some((i, v)) = self.vertices.iter().enumerate().find(|(i, v)| v.id != *i) {
            return bad(format!("vertex at index {i} has id {}", v.id));
        }
        let n = self.vertices.len();
        let mut occupied: HashMap<[i64; 2], String> = HashMap::new();
        for v in &self.vertices {
            if let Some(prev) = occupied.insert(v.pos, format!("vertex {}", v.id)) {
                return bad(format!("vertex {} shares its position with {prev}", v.id));
            }
        }
        let mut degree = vec![0usize; n];
        let mut pairs = std::collections::HashSet::new();
        let mut used: Vec<Vec<Direction>> = vec![Vec::new(); n];
        for (ei, e) in self.edges.iter().enumerate() {
            if e.u >= n || e.v >= n || e.u == e.v {
                return bad(format!("edge {ei} has bad endpoints ({}, {})", e.u, e.v));
            }
            if !pairs.insert((e.u.min(e.v), e.u.max(e.v))) {
                return bad(format!("edge {ei} duplicates another edge"));
            }
            degree[e.u] += 1;
            degree[e.v] += 1;
            let r = &e.route;
            if r.len() < 2 || r[0] != self.vertices[e.u].pos || r[r.len() - 1] != self.vertices[e.v].pos {
                return bad(format!("edge {ei} route does not join its endpoints"));
            }
            if r.len() > 5 {
                return bad(format!("edge {ei} has {} bends", r.len() - 2));
            }
            let mut dirs = Vec::new();
            for w in r.windows(2) {
                let (dx, dy) = (w[1][0] - w[0][0], w[1][1] - w[0][1]);
                match Direction::from_step(dx, dy) {
                    Some(d) if dx == 0 || dy == 0 => dirs.push(d),
                    _ => return bad(format!("edge {ei} has a non axis-parallel or empty segment")),
                }
            }
            if dirs.windows(2).any(|d| d[0] == d[1] || d[0].unit() == (-d[1].unit().0, -d[1].unit().1)) {
                return bad(format!("edge {ei} has a corner without a turn"));
            }
            let last = dirs[dirs.len() - 1].unit();
            let arrive = Direction::from_step(-last.0, -last.1).expect("unit step");
            used[e.u].push(dirs[0]);
            used[e.v].push(arrive);
            for (si, w) in r.windows(2).enumerate() {
                let step = ((w[1][0] - w[0][0]).signum(), (w[1][1] - w[0][1]).signum());
                let len = (w[1][0] - w[0][0]).abs() + (w[1][1] - w[0][1]).abs();
                let from = if si == 0 { 1 } else { 0 };
                for t in from..len {
                    let p = [w[0][0] + t * step.0, w[0][1] + t * step.1];
                    if let Some(prev) = occupied.insert(p, format!("edge {ei}")) {
                        return bad(format!("edge {ei} passes through {p:?}, already used by {prev}"));
                    }
                }
            }
        }
        for (v, d) in degree.iter().enumerate() {
            if *d != 3 {
                return bad(format!("vertex {v} has degree {d}, expected 3"));
            }
        }
        for (v, dirs) in used.iter().enumerate() {
            if dirs.contains(&self.vertices[v].free) {
                return bad(format!("vertex {v}: free direction {:?} is used by an edge", self.vertices[v].free));
            }
        }
        Ok(())
    }
}

/// Smallest integer `γ > separation` such that every scaled segment length
/// `γ·l` is a multiple of `divisor`.
pub(crate) fn scale_factor(g: &EmbeddedGraph, divisor: &Rational, separation: &Rational) -> Result<i64, GadgetError> {
    use num_integer::Integer;
    let (p, q) = (divisor.numer().clone(), divisor.denom().clone());
    let mut base = BigInt::from(1);
    for e in 0..g.edges.len() {
        for (si, s) in g.segments(e).into_iter().enumerate() {
            let need = &p / p.gcd(&(BigInt::from(s.len) * &q));
            base = base.lcm(&need);
            if base.bits() > 40 {
                return Err(GadgetError::Segment {
                    edge: e,
                    segment: si,
                    reason: "divisibility forces an impractically large scale factor".into(),
                });
            }
        }
    }
    let base = base.to_i64().expect("bounded above");
    let sep = separation.floor().to_integer().to_i64().unwrap_or(i64::MAX);
    let mult = sep.div_euclid(base) + 1;
    Ok(base * mult)
}

/// The point at arc length `t` along `seg` after scaling the grid by `gamma`.
pub(crate) fn route_point(seg: &Segment, gamma: i64, t: &Rational) -> (Rational, Rational) {
    let (dx, dy) = seg.dir.unit();
    let sx = Rational::from_integer(BigInt::from(seg.start[0] * gamma));
    let sy = Rational::from_integer(BigInt::from(seg.start[1] * gamma));
    (sx + t * Rational::from_integer(dx.into()), sy + t * Rational::from_integer(dy.into()))
}
