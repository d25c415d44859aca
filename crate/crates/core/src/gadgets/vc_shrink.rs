//! Vertex Cover on planar cubic graphs to Cluster-Scaling with shrinking.
//!
//! Every edge becomes a chain of heavy disks along its route; chain disks
//! with index `≡ 2 (mod 3)` are θ-heavy, the rest η²-heavy. A vertex disk
//! touches the first chain disk of each incident edge and a θ-heavy blocker.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::embedding::{route_point, scale_factor};
use super::{EmbeddedGraph, Emitter, GadgetError, Params, ReductionArtifact, Role};
use crate::geom::{dist2, int, rat, to_f64, Instance, Point, RadiusAssignment, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcParams {
    pub kappa: usize,
    pub eta: usize,
    #[serde(with = "crate::io::rational_serde")]
    pub r_min: Rational,
    #[serde(with = "crate::io::rational_serde")]
    pub r_max: Rational,
    #[serde(with = "crate::io::rational_serde")]
    pub varsigma: Rational,
    pub alpha: i64,
    pub beta: i64,
    #[serde(with = "crate::io::rational_serde")]
    pub mu: Rational,
    pub gamma: i64,
    pub theta: usize,
    pub k_fix: usize,
    pub k: usize,
    /// Oriented edges `(u, v)` of the embedded graph.
    pub edges: Vec<(usize, usize)>,
    /// Scaled segment lengths per edge, before the final division by α.
    pub segment_lengths: Vec<Vec<i64>>,
    /// Interior chain disks per edge.
    pub chain_len: Vec<usize>,
}

impl VcParams {
    /// Chain spacing before division by α.
    pub fn spacing(&self) -> i64 {
        2 * self.alpha - 1
    }

    /// `λ_s = L_s / (3β(2α-1))`.
    pub fn lambdas(&self) -> Vec<Vec<Rational>> {
        let den = 3 * self.beta * self.spacing();
        self.segment_lengths.iter().map(|e| e.iter().map(|&l| rat(l, den)).collect()).collect()
    }
}

/// ς, α, β and μ for a given `r_min`.
pub fn vc_constants(r_min: &Rational) -> (Rational, i64, i64, Rational) {
    let one = int(1);
    let varsigma = (&one - r_min) / int(1000);
    let alpha = ceil_i64(&(int(2) / (&one - r_min - &varsigma)));
    let beta = 2 * ceil_i64(&rat(2 * alpha - 2, 3));
    let mu = rat(2 * alpha + 3 * beta, 3 * beta + 1);
    (varsigma, alpha, beta, mu)
}

fn ceil_i64(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("small constant")
}

pub fn gen_vc_shrink(
    g: &EmbeddedGraph,
    kappa: usize,
    r_min: Rational,
    r_max: Option<Rational>,
) -> Result<ReductionArtifact, GadgetError> {
    if !(r_min > int(0) && r_min < int(1)) {
        return Err(GadgetError::BadParameter(format!("r_min = {r_min} must lie in (0, 1)")));
    }
    let r_max = r_max.unwrap_or_else(|| r_min.clone());
    if r_max < r_min {
        return Err(GadgetError::BadParameter("r_max below r_min".into()));
    }
    g.validate()?;
    let (varsigma, alpha, beta, mu) = vc_constants(&r_min);
    let step = 2 * alpha - 1;
    let divisor = Rational::from_integer(BigInt::from(9 * beta * step));
    let gamma = scale_factor(g, &divisor, &int(4 * alpha))?;

    let eta = g.vertex_count();
    let segments: Vec<_> = (0..g.edges.len()).map(|e| g.segments(e)).collect();
    let segment_lengths: Vec<Vec<i64>> = segments.iter().map(|s| s.iter().map(|s| s.len * gamma).collect()).collect();
    let chain_len: Vec<usize> =
        segment_lengths.iter().map(|ls| (ls.iter().sum::<i64>() / step) as usize).collect();
    let q_total: usize = chain_len.iter().map(|m| m / 3).sum();
    let k_fix = eta * eta * q_total;
    let k = k_fix + kappa;
    let theta = k + 1;

    let alpha_r = int(alpha);
    let shrink = |(x, y): (Rational, Rational)| (x / &alpha_r, y / &alpha_r);
    let mut em = Emitter::default();
    for v in &g.vertices {
        let pos = (int(v.pos[0] * gamma), int(v.pos[1] * gamma));
        let (x, y) = shrink(pos.clone());
        em.push(Role::Vertex { vertex: v.id }, x, y, 1);
        let (dx, dy) = v.free.unit();
        let (x, y) = shrink((pos.0 + int(dx * step), pos.1 + int(dy * step)));
        em.push(Role::Blocker { vertex: v.id }, x, y, theta);
    }
    let compressed = int(2 * alpha) - &mu;
    for (e, segs) in segments.iter().enumerate() {
        let last = segs.len() - 1;
        let mut index = 0;
        for (si, seg) in segs.iter().enumerate() {
            let len = segment_lengths[e][si];
            let mut offsets: Vec<Rational> = Vec::new();
            if si < last {
                offsets.extend((0..len / step).map(|j| int(j * step)));
            } else {
                let block = 3 * beta * step;
                offsets.extend((0..=3 * beta).map(|j| int(j * step)));
                offsets.extend((1..=3 * beta + 1).map(|c| int(block) + &compressed * int(c)));
                offsets.extend((2 * 3 * beta + 1..len / step).map(|j| int(j * step)));
            }
            for t in offsets {
                if si == 0 && t == int(0) {
                    continue;
                }
                index += 1;
                let copies = if index % 3 == 2 { theta } else { eta * eta };
                let (x, y) = shrink(route_point(seg, gamma, &t));
                em.push(Role::Chain { edge: e, index }, x, y, copies);
            }
        }
        if index != chain_len[e] {
            return Err(GadgetError::Structure(format!("edge {e}: placed {index} chain disks, expected {}", chain_len[e])));
        }
    }
    em.check_collisions()?;
    let params = VcParams {
        kappa,
        eta,
        r_min: r_min.clone(),
        r_max: r_max.clone(),
        varsigma,
        alpha,
        beta,
        mu,
        gamma,
        theta,
        k_fix,
        k,
        edges: g.edges.iter().map(|e| (e.u, e.v)).collect(),
        segment_lengths,
        chain_len,
    };
    let instance = Instance::new(em.points, r_min, r_max, k).map_err(|e| GadgetError::BadParameter(e.to_string()))?;
    let art = ReductionArtifact { instance, groups: em.groups, params: Params::VcShrink(params) };
    check_vc_structure(&art)?;
    Ok(art)
}

fn vc_params(art: &ReductionArtifact) -> Result<&VcParams, GadgetError> {
    match &art.params {
        Params::VcShrink(p) => Ok(p),
        _ => Err(GadgetError::BadParameter("not a vc-shrink artifact".into())),
    }
}

/// Representative point of each role.
fn locations(art: &ReductionArtifact) -> HashMap<Role, &Point> {
    art.groups.iter().map(|g| (g.role, &art.instance.points()[g.start])).collect()
}

/// Checks each edge's chain `p_u, 1, …, m, p_v` exactly: consecutive disks
/// are within distance `(2α-1)/α < 2`, all other pairs are beyond 2. Returns
/// the number of pairs checked.
pub fn check_chain_spacing(art: &ReductionArtifact) -> Result<usize, GadgetError> {
    let p = vc_params(art)?;
    let loc = locations(art);
    let limit = rat(p.spacing(), p.alpha);
    let limit2 = &limit * &limit;
    let four = int(4);
    let mut checked = 0;
    for (e, &(u, v)) in p.edges.iter().enumerate() {
        let mut chain = vec![loc[&Role::Vertex { vertex: u }]];
        chain.extend((1..=p.chain_len[e]).map(|i| loc[&Role::Chain { edge: e, index: i }]));
        chain.push(loc[&Role::Vertex { vertex: v }]);
        for a in 0..chain.len() {
            for b in a + 1..chain.len() {
                let d2 = dist2(chain[a], chain[b]);
                let ok = if b == a + 1 { d2 <= limit2 } else { d2 > four };
                if !ok {
                    return Err(GadgetError::Structure(format!("edge {e}: chain positions {a} and {b} at squared distance {d2}")));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Compares the unit disk graph on group locations with the intended one:
/// chains, vertex to first/last chain disk, vertex to blocker, nothing else.
pub fn check_vc_structure(art: &ReductionArtifact) -> Result<(), GadgetError> {
    let p = vc_params(art)?;
    check_chain_spacing(art)?;
    let mut expected = std::collections::HashSet::new();
    let mut add = |a: Role, b: Role| {
        expected.insert((a, b));
        expected.insert((b, a));
    };
    for v in 0..p.eta {
        add(Role::Vertex { vertex: v }, Role::Blocker { vertex: v });
    }
    for (e, &(u, v)) in p.edges.iter().enumerate() {
        let m = p.chain_len[e];
        add(Role::Vertex { vertex: u }, Role::Chain { edge: e, index: 1 });
        add(Role::Chain { edge: e, index: m }, Role::Vertex { vertex: v });
        for i in 1..m {
            add(Role::Chain { edge: e, index: i }, Role::Chain { edge: e, index: i + 1 });
        }
    }
    unit_graph_matches(art, |a, b| expected.contains(&(a, b)))
}

pub(crate) fn unit_graph_matches(art: &ReductionArtifact, expected: impl Fn(Role, Role) -> bool) -> Result<(), GadgetError> {
    let pts = art.instance.points();
    let four = int(4);
    for (i, a) in art.groups.iter().enumerate() {
        for b in &art.groups[i + 1..] {
            let adjacent = dist2(&pts[a.start], &pts[b.start]) <= four;
            if adjacent != expected(a.role, b.role) {
                return Err(GadgetError::Structure(format!(
                    "{:?} and {:?} are {}adjacent in the unit disk graph",
                    a.role,
                    b.role,
                    if adjacent { "" } else { "not " }
                )));
            }
        }
    }
    Ok(())
}

/// Shrinks `p_v` for `v` in `cover`; on edge `(u, v)` shrinks chain indices
/// `≡ 0 (mod 3)` if `u` is in the cover, else `≡ 1 (mod 3)` if `v` is.
pub fn build_vc_forward_solution(art: &ReductionArtifact, cover: &[usize]) -> Result<RadiusAssignment, GadgetError> {
    let p = vc_params(art)?;
    if let Some(&v) = cover.iter().find(|&&v| v >= p.eta) {
        return Err(GadgetError::BadParameter(format!("vertex {v} out of range")));
    }
    let r = to_f64(&p.r_min);
    let mut radii = vec![1.0; art.instance.n()];
    let mut shrink = |role: Role| {
        let g = art.group(role).expect("role exists");
        radii[g.ids()].fill(r);
    };
    for &v in cover {
        shrink(Role::Vertex { vertex: v });
    }
    for (e, &(u, v)) in p.edges.iter().enumerate() {
        let residue = if cover.contains(&u) {
            0
        } else if cover.contains(&v) {
            1
        } else {
            continue;
        };
        for index in (1..=p.chain_len[e]).filter(|i| i % 3 == residue) {
            shrink(Role::Chain { edge: e, index });
        }
    }
    Ok(RadiusAssignment::new(radii).expect("positive radii"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_for_half() {
        let (varsigma, alpha, beta, mu) = vc_constants(&rat(1, 2));
        assert_eq!(varsigma, rat(1, 2000));
        assert_eq!((alpha, beta), (5, 6));
        assert_eq!(mu, rat(28, 19));
    }
}
