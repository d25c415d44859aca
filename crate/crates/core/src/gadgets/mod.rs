//! Instance generators: random layouts, heavy P3s and the hardness
//! constructions, each with the assignment its correctness proof builds.

pub mod embedding;
pub mod gridtiling;
pub mod heavy;
pub mod is_enlarge;
pub mod random;
pub mod vc_shrink;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Instance, Point, Rational};

pub use embedding::{Direction, EmbeddedGraph, EmbeddedEdge, EmbeddedVertex};
pub use gridtiling::{
    build_gt_forward_solution, check_gt_distance_properties, gen_gridtiling_connected, gen_gridtiling_connected_with,
    gt_le_to_lt, gt_lt_to_gt, GridTilingInstance, GtCheckReport, GtProperty, GtRelation, GtViolation, Selection,
};
pub use heavy::{make_heavy_p3, HeavySpec};
pub use is_enlarge::{build_is_forward_solution, gen_is_enlarge, IsVariant};
pub use random::gen_random;
pub use vc_shrink::{build_vc_forward_solution, gen_vc_shrink};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("invalid embedding: {0}")]
    Embedding(String),
    #[error("edge {edge} segment {segment}: {reason}")]
    Segment { edge: usize, segment: usize, reason: String },
    #[error("construction places {first} and {second} at the same location")]
    Collision { first: String, second: String },
    #[error("structure check failed: {0}")]
    Structure(String),
    #[error("tile ({i}, {j}) has no tuple ({a}, {b})")]
    MissingTuple { i: usize, j: usize, a: usize, b: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

/// What an emitted point stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    Random,
    /// Heavy P3 gadget member: 0 left end, 1 middle, 2 right end.
    HeavyPart { part: usize },
    Vertex { vertex: usize },
    /// The doubled companion of a vertex disk in the enlarge construction.
    NegatedVertex { vertex: usize },
    Blocker { vertex: usize },
    /// Chain disk `index` (1-based) along the route of `edge`.
    Chain { edge: usize, index: usize },
    Tile { i: usize, j: usize, a: usize, b: usize },
    HSeparator { i: usize, j: usize, q: usize },
    VSeparator { i: usize, j: usize, q: usize },
    Dummy { side: Side, index: usize },
}

/// A run of consecutive ids sharing one role; heavy copies form one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    #[serde(flatten)]
    pub role: Role,
    pub start: usize,
    pub len: usize,
}

impl Group {
    pub fn ids(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

/// Derived constants of a construction; rationals serialize as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "snake_case")]
pub enum Params {
    Random {
        seed: u64,
        box_size: u32,
    },
    HeavyP3 {
        #[serde(with = "crate::io::rational_serde")]
        xi: Rational,
    },
    VcShrink(vc_shrink::VcParams),
    IsEnlarge(is_enlarge::IsParams),
    GridTiling(gridtiling::GtParams),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub instance: Instance,
    /// Ordered by `start`; covers every id exactly once.
    pub groups: Vec<Group>,
    pub params: Params,
}

impl ReductionArtifact {
    pub fn role_of(&self, id: usize) -> Option<Role> {
        let idx = self.groups.partition_point(|g| g.start <= id).checked_sub(1)?;
        let g = &self.groups[idx];
        g.ids().contains(&id).then_some(g.role)
    }

    pub fn group(&self, role: Role) -> Option<&Group> {
        self.groups.iter().find(|g| g.role == role)
    }

    /// Checks that the groups partition `0..n` and no role repeats.
    pub fn check_partition(&self) -> Result<(), GadgetError> {
        let mut next = 0;
        let mut roles = std::collections::HashSet::new();
        for g in &self.groups {
            if g.start != next || g.len == 0 {
                return Err(GadgetError::Structure(format!("group {:?} does not continue at id {next}", g.role)));
            }
            if !roles.insert(g.role) {
                return Err(GadgetError::Structure(format!("role {:?} appears twice", g.role)));
            }
            next += g.len;
        }
        if next != self.instance.n() {
            return Err(GadgetError::Structure(format!("groups cover {next} of {} points", self.instance.n())));
        }
        Ok(())
    }
}

/// Accumulates points group by group.
#[derive(Default)]
pub(crate) struct Emitter {
    pub points: Vec<Point>,
    pub groups: Vec<Group>,
}

impl Emitter {
    pub fn push(&mut self, role: Role, x: Rational, y: Rational, copies: usize) -> usize {
        let start = self.points.len();
        for id in start..start + copies {
            self.points.push(Point::new(id, x.clone(), y.clone()));
        }
        self.groups.push(Group { role, start, len: copies });
        start
    }

    /// Rejects two groups at the same location.
    pub fn check_collisions(&self) -> Result<(), GadgetError> {
        let mut seen = std::collections::HashMap::new();
        for g in &self.groups {
            let p = &self.points[g.start];
            if let Some(prev) = seen.insert((p.x.clone(), p.y.clone()), g.role) {
                return Err(GadgetError::Collision { first: format!("{prev:?}"), second: format!("{:?}", g.role) });
            }
        }
        Ok(())
    }
}
