//! Independent Set on planar cubic graphs to Cluster-Scaling with enlarging.
//!
//! Each edge route carries isolated heavy P3s `(3j+1, 3j+2, 3j+3)` with a
//! θ-heavy middle; one η²-heavy end of each must be enlarged. Two enlarged
//! ends facing each other across a gap merge, so along an edge the choice
//! can switch from left ends to right ends only once, and an enlarged vertex
//! disk forces its edges' first P3s to enlarge away from it. Each vertex adds
//! the P3 `p_v`, θ blocker copies, two copies of `p_¬v`.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::embedding::{route_point, scale_factor};
use super::vc_shrink::unit_graph_matches;
use super::{EmbeddedGraph, Emitter, GadgetError, Params, ReductionArtifact, Role};
use crate::geom::{dist2, int, rat, to_f64, Instance, RadiusAssignment, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsVariant {
    /// `r_min > 1`: every scaled disk is enlarged.
    StrictEnlarge,
    /// `r_min = 1` with a supplied `r_max > 1`.
    UnitMin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsParams {
    pub variant: IsVariant,
    pub kappa: usize,
    pub eta: usize,
    #[serde(with = "crate::io::rational_serde")]
    pub r_min: Rational,
    #[serde(with = "crate::io::rational_serde")]
    pub r_max: Rational,
    /// Radius given to enlarged disks by the forward solution.
    #[serde(with = "crate::io::rational_serde")]
    pub r_witness: Rational,
    #[serde(with = "crate::io::rational_serde")]
    pub alpha: Rational,
    #[serde(with = "crate::io::rational_serde")]
    pub beta: Rational,
    pub mu: i64,
    pub gamma: i64,
    pub theta: usize,
    pub k_fix: usize,
    pub k: usize,
    pub edges: Vec<(usize, usize)>,
    /// Scaled segment lengths per edge.
    pub segment_lengths: Vec<Vec<i64>>,
    /// Heavy P3s per edge.
    pub p3_count: Vec<usize>,
}

impl IsParams {
    /// Gap between consecutive P3s inside the compressed block.
    pub fn compressed_gap(&self) -> Rational {
        &self.beta - &self.beta / int(self.mu)
    }

    /// `λ_s = L_s / (α + β)`.
    pub fn lambdas(&self) -> Vec<Vec<Rational>> {
        let unit = &self.alpha + &self.beta;
        self.segment_lengths.iter().map(|e| e.iter().map(|&l| int(l) / &unit).collect()).collect()
    }
}

/// α, β, μ and the witness radius.
pub fn is_constants(variant: IsVariant, r_min: &Rational, r_max: &Rational) -> Result<(Rational, Rational, i64, Rational), GadgetError> {
    let one = int(1);
    let r = match variant {
        IsVariant::StrictEnlarge if *r_min > one => r_min.clone(),
        IsVariant::StrictEnlarge => return Err(GadgetError::BadParameter("strict-enlarge needs r_min > 1".into())),
        IsVariant::UnitMin if *r_min == one && *r_max > one => r_max.clone().min(rat(3, 2)),
        IsVariant::UnitMin => return Err(GadgetError::BadParameter("unit-min needs r_min = 1 < r_max".into())),
    };
    let alpha = r.clone().min(rat(3, 2)) + &one;
    let beta = int(2) * &r;
    let bound = &beta / alpha.clone().min(&r - &one);
    let mu = (bound.floor() + &one).to_integer().to_i64().expect("small constant");
    let r_witness = match variant {
        IsVariant::StrictEnlarge => r_min.clone(),
        IsVariant::UnitMin => r,
    };
    Ok((alpha, beta, mu, r_witness))
}

pub fn gen_is_enlarge(
    g: &EmbeddedGraph,
    kappa: usize,
    r_min: Rational,
    r_max: Option<Rational>,
    variant: IsVariant,
) -> Result<ReductionArtifact, GadgetError> {
    let r_max = r_max.unwrap_or_else(|| r_min.clone());
    if r_max < r_min {
        return Err(GadgetError::BadParameter("r_max below r_min".into()));
    }
    g.validate()?;
    let eta = g.vertex_count();
    if kappa > eta {
        return Err(GadgetError::BadParameter(format!("κ = {kappa} exceeds the {eta} vertices")));
    }
    let (alpha, beta, mu, r_witness) = is_constants(variant, &r_min, &r_max)?;
    let unit = &alpha + &beta;
    let divisor = int(2 * (mu + 1)) * &unit;
    let gamma = scale_factor(g, &divisor, &(int(2) * &unit))?;

    let segments: Vec<_> = (0..g.edges.len()).map(|e| g.segments(e)).collect();
    let segment_lengths: Vec<Vec<i64>> = segments.iter().map(|s| s.iter().map(|s| s.len * gamma).collect()).collect();
    let lambda = |l: i64| (int(l) / &unit).to_integer().to_usize().expect("divisible");
    let p3_count: Vec<usize> = segment_lengths.iter().map(|ls| ls.iter().map(|&l| lambda(l)).sum()).collect();
    let k_fix = eta * eta * p3_count.iter().sum::<usize>();
    let k = k_fix + 2 * eta - kappa;
    let theta = k + 1;

    let mut em = Emitter::default();
    let half = &alpha / int(2);
    for v in &g.vertices {
        let (x, y) = (int(v.pos[0] * gamma), int(v.pos[1] * gamma));
        let (dx, dy) = v.free.unit();
        let at = |t: &Rational| (&x + t * int(dx), &y + t * int(dy));
        em.push(Role::Vertex { vertex: v.id }, x.clone(), y.clone(), 1);
        let (bx, by) = at(&half);
        em.push(Role::Blocker { vertex: v.id }, bx, by, theta);
        let (nx, ny) = at(&alpha);
        em.push(Role::NegatedVertex { vertex: v.id }, nx, ny, 2);
    }
    let shift = &beta / int(mu);
    for (e, segs) in segments.iter().enumerate() {
        let last = segs.len() - 1;
        let mut index = 0;
        for (si, seg) in segs.iter().enumerate() {
            for j in 0..lambda(segment_lengths[e][si]) {
                let mut start = &beta + int(j as i64) * &unit;
                if si == last {
                    start -= int(j.min(mu as usize) as i64) * &shift;
                }
                for (part, offset) in [int(0), half.clone(), alpha.clone()].into_iter().enumerate() {
                    index += 1;
                    let copies = if part == 1 { theta } else { eta * eta };
                    let (x, y) = route_point(seg, gamma, &(&start + offset));
                    em.push(Role::Chain { edge: e, index }, x, y, copies);
                }
            }
        }
    }
    em.check_collisions()?;
    let params = IsParams {
        variant,
        kappa,
        eta,
        r_min: r_min.clone(),
        r_max: r_max.clone(),
        r_witness,
        alpha,
        beta,
        mu,
        gamma,
        theta,
        k_fix,
        k,
        edges: g.edges.iter().map(|e| (e.u, e.v)).collect(),
        segment_lengths,
        p3_count,
    };
    let instance = Instance::new(em.points, r_min, r_max, k).map_err(|e| GadgetError::BadParameter(e.to_string()))?;
    let art = ReductionArtifact { instance, groups: em.groups, params: Params::IsEnlarge(params) };
    check_is_structure(&art)?;
    Ok(art)
}

fn is_params(art: &ReductionArtifact) -> Result<&IsParams, GadgetError> {
    match &art.params {
        Params::IsEnlarge(p) => Ok(p),
        _ => Err(GadgetError::BadParameter("not an is-enlarge artifact".into())),
    }
}

/// The unit disk graph must be a disjoint union of the heavy P3s and the
/// vertex triples.
pub fn check_is_structure(art: &ReductionArtifact) -> Result<(), GadgetError> {
    is_params(art)?;
    unit_graph_matches(art, |a, b| match (a, b) {
        (Role::Chain { edge: e1, index: i1 }, Role::Chain { edge: e2, index: i2 }) => {
            e1 == e2 && i1.abs_diff(i2) == 1 && (i1.min(i2) - 1) / 3 == (i1.max(i2) - 1) / 3
        }
        (Role::Vertex { vertex: v }, Role::Blocker { vertex: w })
        | (Role::Blocker { vertex: w }, Role::Vertex { vertex: v })
        | (Role::NegatedVertex { vertex: v }, Role::Blocker { vertex: w })
        | (Role::Blocker { vertex: w }, Role::NegatedVertex { vertex: v }) => v == w,
        _ => false,
    })
}

/// Checks every gap between consecutive P3s along an edge, exactly: with
/// `r` the witness radius, the gap lies in `(max(2r - α, r + 1), 2r]`, so two
/// facing enlarged ends merge while an enlarged end never reaches an
/// unscaled one. Returns the number of gaps checked.
pub fn check_p3_gaps(art: &ReductionArtifact) -> Result<usize, GadgetError> {
    let p = is_params(art)?;
    let pts = art.instance.points();
    let at = |e: usize, index: usize| &pts[art.group(Role::Chain { edge: e, index }).expect("chain disk").start];
    let r = &p.r_witness;
    let lo = (int(2) * r - &p.alpha).max(r + int(1));
    let hi = int(2) * r;
    let (lo2, hi2) = (&lo * &lo, &hi * &hi);
    let mut checked = 0;
    for e in 0..p.edges.len() {
        for j in 0..p.p3_count[e].saturating_sub(1) {
            let d2 = dist2(at(e, 3 * j + 3), at(e, 3 * j + 4));
            if d2 <= lo2 || d2 > hi2 {
                return Err(GadgetError::Structure(format!("edge {e}: gap after P3 {j} has squared length {d2}")));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Enlarges `p_v` for `v` in `independent` and both `p_¬u` for `u` outside;
/// on edge `(u, v)` enlarges the left ends (`≡ 1 mod 3`) if `u` is outside,
/// else the right ends (`≡ 0 mod 3`) if `v` is outside.
pub fn build_is_forward_solution(art: &ReductionArtifact, independent: &[usize]) -> Result<RadiusAssignment, GadgetError> {
    let p = is_params(art)?;
    if let Some(&v) = independent.iter().find(|&&v| v >= p.eta) {
        return Err(GadgetError::BadParameter(format!("vertex {v} out of range")));
    }
    let r = to_f64(&p.r_witness);
    let mut radii = vec![1.0; art.instance.n()];
    let mut enlarge = |role: Role| {
        let g = art.group(role).expect("role exists");
        radii[g.ids()].fill(r);
    };
    for v in 0..p.eta {
        if independent.contains(&v) {
            enlarge(Role::Vertex { vertex: v });
        } else {
            enlarge(Role::NegatedVertex { vertex: v });
        }
    }
    for (e, &(u, v)) in p.edges.iter().enumerate() {
        let residue = if !independent.contains(&u) {
            1
        } else if !independent.contains(&v) {
            0
        } else {
            continue;
        };
        for index in (1..=3 * p.p3_count[e]).filter(|i| i % 3 == residue) {
            enlarge(Role::Chain { edge: e, index });
        }
    }
    Ok(RadiusAssignment::new(radii).expect("positive radii"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let (alpha, beta, mu, rw) = is_constants(IsVariant::StrictEnlarge, &int(2), &int(2)).unwrap();
        assert_eq!((alpha, beta, mu, rw), (rat(5, 2), int(4), 5, int(2)));
        let (alpha, beta, mu, rw) = is_constants(IsVariant::UnitMin, &int(1), &int(2)).unwrap();
        assert_eq!((alpha, beta, mu, rw), (rat(5, 2), int(3), 7, rat(3, 2)));
        assert!(is_constants(IsVariant::StrictEnlarge, &int(1), &int(2)).is_err());
        assert!(is_constants(IsVariant::UnitMin, &int(2), &int(2)).is_err());
    }
}
