use super::{Emitter, GadgetError, Params, ReductionArtifact, Role};
use crate::geom::{dist2, int, Instance, Point, Rational};

/// `multiplicity` coincident copies of one location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavySpec {
    pub x: Rational,
    pub y: Rational,
    pub multiplicity: usize,
}

impl HeavySpec {
    pub fn new(x: Rational, y: Rational, multiplicity: usize) -> Self {
        Self { x, y, multiplicity }
    }
}

/// Emits the three groups in order (left, middle, right) with ids from 0.
/// The middle must be the midpoint of the ends, at distance `xi` from each,
/// with `1 < xi <= 2`: consecutive groups touch, the ends do not.
pub fn make_heavy_p3(left: &HeavySpec, mid: &HeavySpec, right: &HeavySpec, xi: &Rational) -> Result<Vec<Point>, GadgetError> {
    Ok(heavy_p3_emitter(left, mid, right, xi)?.points)
}

fn heavy_p3_emitter(left: &HeavySpec, mid: &HeavySpec, right: &HeavySpec, xi: &Rational) -> Result<Emitter, GadgetError> {
    if *xi <= int(1) || *xi > int(2) {
        return Err(GadgetError::BadParameter(format!("spacing {xi} outside (1, 2]")));
    }
    if [left, mid, right].iter().any(|s| s.multiplicity == 0) {
        return Err(GadgetError::BadParameter("multiplicity must be at least 1".into()));
    }
    let two = int(2);
    if &left.x + &right.x != &two * &mid.x || &left.y + &right.y != &two * &mid.y {
        return Err(GadgetError::BadParameter("middle group is not the midpoint of the ends".into()));
    }
    let at = |s: &HeavySpec| Point::new(0, s.x.clone(), s.y.clone());
    if dist2(&at(left), &at(mid)) != xi * xi {
        return Err(GadgetError::BadParameter(format!("ends are not at distance {xi} from the middle")));
    }
    let mut em = Emitter::default();
    for (part, s) in [left, mid, right].into_iter().enumerate() {
        em.push(Role::HeavyPart { part }, s.x.clone(), s.y.clone(), s.multiplicity);
    }
    Ok(em)
}

/// A δ-θ-heavy P3 along the x-axis with budget `θ - 1`.
pub fn heavy_p3_instance(
    delta: usize,
    theta: usize,
    xi: &Rational,
    r_min: Rational,
    r_max: Rational,
) -> Result<ReductionArtifact, GadgetError> {
    if theta == 0 {
        return Err(GadgetError::BadParameter("θ must be at least 1".into()));
    }
    let zero = int(0);
    let em = heavy_p3_emitter(
        &HeavySpec::new(zero.clone(), zero.clone(), delta),
        &HeavySpec::new(xi.clone(), zero.clone(), theta),
        &HeavySpec::new(xi * int(2), zero, delta),
        xi,
    )?;
    let instance = Instance::new(em.points, r_min, r_max, theta - 1).map_err(|e| GadgetError::BadParameter(e.to_string()))?;
    Ok(ReductionArtifact { instance, groups: em.groups, params: Params::HeavyP3 { xi: xi.clone() } })
}
