//! Grid Tiling and its reduction to Connected-Scaling with enlarging.
//!
//! Coordinates are built in a frame where unscaled disks have radius 1/10
//! and then multiplied by 10, so emitted instances use unit radius.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Emitter, GadgetError, Params, ReductionArtifact, Role, Side};
use crate::geom::{dist2, int, rat, sqrt_sum_reaches, sqrt_upper_decimal, to_f64, Instance, RadiusAssignment, Rational};

/// Tile indices `i, j` run over `1..=κ`, tuple entries over `1..=η`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridTilingInstance {
    pub eta: usize,
    pub kappa: usize,
    /// `tiles[i-1][j-1]` is `X_{i,j}`, sorted and duplicate-free.
    pub tiles: Vec<Vec<Vec<(usize, usize)>>>,
}

/// How neighboring choices must compare: first entries from tile `(i, j)` to
/// `(i+1, j)`, second entries from `(i, j)` to `(i, j+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GtRelation {
    Le,
    Lt,
    Gt,
}

impl GtRelation {
    fn holds(self, here: usize, next: usize) -> bool {
        match self {
            Self::Le => here <= next,
            Self::Lt => here < next,
            Self::Gt => here > next,
        }
    }
}

pub type Selection = BTreeMap<(usize, usize), (usize, usize)>;

impl GridTilingInstance {
    pub fn new(eta: usize, kappa: usize, tiles: Vec<Vec<Vec<(usize, usize)>>>) -> Result<Self, GadgetError> {
        let mut gt = Self { eta, kappa, tiles };
        gt.normalize();
        gt.validate()?;
        Ok(gt)
    }

    fn normalize(&mut self) {
        for col in &mut self.tiles {
            for t in col {
                t.sort_unstable();
                t.dedup();
            }
        }
    }

    pub fn validate(&self) -> Result<(), GadgetError> {
        if self.eta == 0 || self.kappa == 0 {
            return Err(GadgetError::BadParameter("η and κ must be positive".into()));
        }
        if self.tiles.len() != self.kappa || self.tiles.iter().any(|c| c.len() != self.kappa) {
            return Err(GadgetError::BadParameter(format!("expected a {0}×{0} family of tiles", self.kappa)));
        }
        let bad = self.tiles.iter().flatten().flatten().find(|&&(a, b)| !(1..=self.eta).contains(&a) || !(1..=self.eta).contains(&b));
        if let Some((a, b)) = bad {
            return Err(GadgetError::BadParameter(format!("tuple ({a}, {b}) outside [{}]²", self.eta)));
        }
        Ok(())
    }

    pub fn tile(&self, i: usize, j: usize) -> &[(usize, usize)] {
        &self.tiles[i - 1][j - 1]
    }

    /// Brute-force search for a selection under `rel`.
    pub fn solve(&self, rel: GtRelation) -> Option<Selection> {
        let mut chosen = vec![vec![(0, 0); self.kappa + 1]; self.kappa + 1];
        self.extend(rel, 0, &mut chosen).then(|| {
            (1..=self.kappa).flat_map(|i| (1..=self.kappa).map(move |j| (i, j))).map(|(i, j)| ((i, j), chosen[i][j])).collect()
        })
    }

    pub fn solvable(&self, rel: GtRelation) -> bool {
        self.solve(rel).is_some()
    }

    fn extend(&self, rel: GtRelation, pos: usize, chosen: &mut Vec<Vec<(usize, usize)>>) -> bool {
        if pos == self.kappa * self.kappa {
            return true;
        }
        let (i, j) = (pos / self.kappa + 1, pos % self.kappa + 1);
        for &(a, b) in self.tile(i, j) {
            if i > 1 && !rel.holds(chosen[i - 1][j].0, a) {
                continue;
            }
            if j > 1 && !rel.holds(chosen[i][j - 1].1, b) {
                continue;
            }
            chosen[i][j] = (a, b);
            if self.extend(rel, pos + 1, chosen) {
                return true;
            }
        }
        false
    }

    /// Whether `sel` picks a present tuple in every tile and satisfies `rel`.
    pub fn is_solution(&self, rel: GtRelation, sel: &Selection) -> bool {
        let k = self.kappa;
        let get = |i, j| sel.get(&(i, j)).copied();
        (1..=k).all(|i| (1..=k).all(|j| get(i, j).is_some_and(|t| self.tile(i, j).contains(&t))))
            && (1..k).all(|i| (1..=k).all(|j| rel.holds(get(i, j).unwrap().0, get(i + 1, j).unwrap().0)))
            && (1..=k).all(|i| (1..k).all(|j| rel.holds(get(i, j).unwrap().1, get(i, j + 1).unwrap().1)))
    }

    pub fn map_tuples(&self, eta: usize, f: impl Fn(usize, usize, usize, usize) -> (usize, usize)) -> Self {
        let tiles = (1..=self.kappa)
            .map(|i| (1..=self.kappa).map(|j| self.tile(i, j).iter().map(|&(a, b)| f(i, j, a, b)).collect()).collect())
            .collect();
        let mut out = Self { eta, kappa: self.kappa, tiles };
        out.normalize();
        out
    }
}

/// `≤` to `<`: `η' = η³ + κ`, `(a, b) ↦ (aη² + i, bη² + j)` in tile `(i, j)`.
pub fn gt_le_to_lt(gt: &GridTilingInstance) -> GridTilingInstance {
    let e2 = gt.eta * gt.eta;
    gt.map_tuples(gt.eta * e2 + gt.kappa, |i, j, a, b| (a * e2 + i, b * e2 + j))
}

/// `<` to `>` by flipping both entries: `(η + 1 - a, η + 1 - b)`.
pub fn gt_lt_to_gt(gt: &GridTilingInstance) -> GridTilingInstance {
    let e = gt.eta;
    gt.map_tuples(e, |_, _, a, b| (e + 1 - a, e + 1 - b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtParams {
    pub eta: usize,
    pub kappa: usize,
    /// Gap parameter used for the coordinates; `η²` unless overridden.
    pub gamma: usize,
    /// Factor from the construction frame to emitted coordinates.
    pub frame_scale: usize,
    /// Exact squared r_max in emitted units.
    #[serde(with = "crate::io::rational_serde")]
    pub r_max_squared: Rational,
    /// The instance's r_max: `sqrt(r_max_squared)` rounded up to 9 decimals.
    #[serde(with = "crate::io::rational_serde")]
    pub r_max: Rational,
    pub k: usize,
    pub source: GridTilingInstance,
}

pub fn gen_gridtiling_connected(gt: &GridTilingInstance) -> Result<ReductionArtifact, GadgetError> {
    gen_gridtiling_connected_with(gt, None)
}

/// As [`gen_gridtiling_connected`], optionally placing disks with a
/// different γ while keeping r_max computed for `γ = η²`.
pub fn gen_gridtiling_connected_with(gt: &GridTilingInstance, gamma_override: Option<usize>) -> Result<ReductionArtifact, GadgetError> {
    gt.validate()?;
    let (eta, kappa) = (gt.eta, gt.kappa);
    if eta < 2 {
        return Err(GadgetError::BadParameter("the construction needs η ≥ 2".into()));
    }
    let nominal = eta * eta;
    let gamma = gamma_override.unwrap_or(nominal);
    let scale = 10usize;
    let (e, g) = (eta as i64, gamma as i64);
    let period = 2 * e + 2 * g;
    // Construction-frame values are multiples of 1/2; emit 10x.
    let emit = |v: Rational| v * int(scale as i64);
    let mid = rat(e + 1, 2);

    let d_x = int(e + nominal as i64) - rat(1, 2);
    let d_y = rat(e - 1, 2);
    let r_max_squared = (&d_x * &d_x + &d_y * &d_y) * int((scale * scale) as i64);
    let r_max = sqrt_upper_decimal(&r_max_squared, 9);
    let k = kappa * kappa + 4 * kappa;

    let mut em = Emitter::default();
    for i in 1..=kappa {
        for j in 1..=kappa {
            let (ix, jy) = (i as i64 * period, j as i64 * period);
            for &(a, b) in gt.tile(i, j) {
                em.push(Role::Tile { i, j, a, b }, emit(int(ix + a as i64)), emit(int(jy + b as i64)), 1);
            }
            for q in 1..=eta {
                if i < kappa {
                    em.push(Role::HSeparator { i, j, q }, emit(int(ix + e + g + q as i64)), emit(int(jy) + &mid), 1);
                }
                if j < kappa {
                    em.push(Role::VSeparator { i, j, q }, emit(int(ix) + &mid), emit(int(jy + e + g + q as i64)), 1);
                }
            }
        }
    }
    let far = kappa as i64 * period + e + 2 * e * e;
    for index in 1..=kappa {
        let c = emit(int(index as i64 * period) + &mid);
        em.push(Role::Dummy { side: Side::Left, index }, emit(int(2 * e)), c.clone(), 1);
        em.push(Role::Dummy { side: Side::Right, index }, emit(int(far)), c.clone(), 1);
        em.push(Role::Dummy { side: Side::Bottom, index }, c.clone(), emit(int(2 * e)), 1);
        em.push(Role::Dummy { side: Side::Top, index }, c, emit(int(far)), 1);
    }
    em.check_collisions()?;
    let params = GtParams {
        eta,
        kappa,
        gamma,
        frame_scale: scale,
        r_max_squared,
        r_max: r_max.clone(),
        k,
        source: gt.clone(),
    };
    let instance = Instance::new(em.points, int(1), r_max, k).map_err(|e| GadgetError::BadParameter(e.to_string()))?;
    Ok(ReductionArtifact { instance, groups: em.groups, params: Params::GridTiling(params) })
}

fn gt_params(art: &ReductionArtifact) -> Result<&GtParams, GadgetError> {
    match &art.params {
        Params::GridTiling(p) => Ok(p),
        _ => Err(GadgetError::BadParameter("not a grid-tiling artifact".into())),
    }
}

/// Enlarges the selected tile disks and every dummy to r_max.
pub fn build_gt_forward_solution(art: &ReductionArtifact, selection: &Selection) -> Result<RadiusAssignment, GadgetError> {
    let p = gt_params(art)?;
    let r = to_f64(&p.r_max);
    let mut radii = vec![1.0; art.instance.n()];
    for i in 1..=p.kappa {
        for j in 1..=p.kappa {
            let &(a, b) = selection.get(&(i, j)).ok_or(GadgetError::MissingTuple { i, j, a: 0, b: 0 })?;
            let g = art.group(Role::Tile { i, j, a, b }).ok_or(GadgetError::MissingTuple { i, j, a, b })?;
            radii[g.start] = r;
        }
    }
    for g in art.groups.iter().filter(|g| matches!(g.role, Role::Dummy { .. })) {
        radii[g.start] = r;
    }
    Ok(RadiusAssignment::new(radii).expect("positive radii"))
}

/// The distance facts behind the reduction, labelled (a) to (e).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GtProperty {
    /// Scaled tile disk vs adjacent separator disk: intersect iff the index comparison holds.
    SeparatorWindow,
    /// Scaled tile disk reaches every disk of its own tile.
    SameTile,
    /// Scaled disks of adjacent tiles intersect iff the `>` comparison holds.
    AdjacentTiles,
    /// Scaled disks of non-adjacent tiles never intersect.
    DistantTiles,
    /// Dummies: clear of everything unscaled, within reach of their tile.
    Dummy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtViolation {
    pub property: GtProperty,
    pub first: usize,
    pub second: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtCheckReport {
    pub pairs_checked: BTreeMap<GtProperty, usize>,
    pub violations: Vec<GtViolation>,
}

impl GtCheckReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, property: GtProperty, ok: bool, first: usize, second: usize, detail: impl FnOnce() -> String) {
        *self.pairs_checked.entry(property).or_default() += 1;
        if !ok {
            self.violations.push(GtViolation { property, first, second, detail: detail() });
        }
    }
}

/// Checks every relevant pair exactly against the intended behavior, with
/// scaled disks at the exact r_max and unscaled ones at radius 1.
pub fn check_gt_distance_properties(art: &ReductionArtifact) -> Result<GtCheckReport, GadgetError> {
    let p = gt_params(art)?;
    let pts = art.instance.points();
    let big = &p.r_max_squared;
    let one = int(1);
    let reach_su = |x: usize, y: usize| sqrt_sum_reaches(&dist2(&pts[x], &pts[y]), big, &one);
    let reach_ss = |x: usize, y: usize| sqrt_sum_reaches(&dist2(&pts[x], &pts[y]), big, big);
    let mut report = GtCheckReport::default();
    for property in [
        GtProperty::SeparatorWindow,
        GtProperty::SameTile,
        GtProperty::AdjacentTiles,
        GtProperty::DistantTiles,
        GtProperty::Dummy,
    ] {
        report.pairs_checked.insert(property, 0);
    }

    let tiles: Vec<(usize, usize, usize, usize, usize)> = art
        .groups
        .iter()
        .filter_map(|g| match g.role {
            Role::Tile { i, j, a, b } => Some((g.start, i, j, a, b)),
            _ => None,
        })
        .collect();
    for &(id, i, j, a, b) in &tiles {
        for g in &art.groups {
            let expect = match g.role {
                Role::HSeparator { i: si, j: sj, q } if sj == j && si == i => Some(q < a),
                Role::HSeparator { i: si, j: sj, q } if sj == j && si + 1 == i => Some(q > a),
                Role::VSeparator { i: si, j: sj, q } if si == i && sj == j => Some(q < b),
                Role::VSeparator { i: si, j: sj, q } if si == i && sj + 1 == j => Some(q > b),
                _ => None,
            };
            if let Some(expect) = expect {
                let got = reach_su(id, g.start);
                report.record(GtProperty::SeparatorWindow, got == expect, id, g.start, || {
                    format!("{:?} vs {:?}: intersect = {got}, expected {expect}", Role::Tile { i, j, a, b }, g.role)
                });
            }
        }
    }
    for (x, &(id1, i1, j1, a1, b1)) in tiles.iter().enumerate() {
        for &(id2, i2, j2, a2, b2) in &tiles[x + 1..] {
            let (di, dj) = (i1.abs_diff(i2), j1.abs_diff(j2));
            match (di, dj) {
                (0, 0) => {
                    let ok = reach_su(id1, id2) && reach_su(id2, id1);
                    report.record(GtProperty::SameTile, ok, id1, id2, || "same-tile disks out of reach".into());
                }
                (1, 0) | (0, 1) => {
                    // Order the pair so that the second tile follows the first.
                    let ((la, lb), (ra, rb)) = if (i1, j1) < (i2, j2) { ((a1, b1), (a2, b2)) } else { ((a2, b2), (a1, b1)) };
                    let expect = if di == 1 { la > ra } else { lb > rb };
                    let got = reach_ss(id1, id2);
                    report.record(GtProperty::AdjacentTiles, got == expect, id1, id2, || {
                        format!("intersect = {got}, expected {expect}")
                    });
                }
                _ => {
                    let got = reach_ss(id1, id2);
                    report.record(GtProperty::DistantTiles, !got, id1, id2, || "non-adjacent tiles intersect".into());
                }
            }
        }
    }
    for d in art.groups.iter().filter(|g| matches!(g.role, Role::Dummy { .. })) {
        let Role::Dummy { side, index } = d.role else { unreachable!() };
        let home = match side {
            Side::Left => (1, index),
            Side::Right => (p.kappa, index),
            Side::Bottom => (index, 1),
            Side::Top => (index, p.kappa),
        };
        for g in &art.groups {
            if matches!(g.role, Role::Dummy { .. }) {
                continue;
            }
            let clear = !reach_su(d.start, g.start);
            report.record(GtProperty::Dummy, clear, d.start, g.start, || format!("{:?} reaches unscaled {:?}", d.role, g.role));
            if let Role::Tile { i, j, .. } = g.role {
                if (i, j) == home {
                    let ok = reach_ss(d.start, g.start);
                    report.record(GtProperty::Dummy, ok, d.start, g.start, || format!("{:?} cannot reach {:?}", d.role, g.role));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(eta: usize, t: (usize, usize)) -> GridTilingInstance {
        GridTilingInstance::new(eta, 1, vec![vec![vec![t]]]).unwrap()
    }

    #[test]
    fn transform_examples() {
        let gt = GridTilingInstance::new(3, 2, vec![vec![vec![], vec![(2, 1)]], vec![vec![], vec![]]]).unwrap();
        let lt = gt_le_to_lt(&gt);
        assert_eq!(lt.eta, 27 + 2);
        assert_eq!(lt.tile(1, 2), &[(19, 11)]);
        assert_eq!(gt_le_to_lt(&single(1, (1, 1))).tile(1, 1), &[(2, 2)]);

        let flipped = gt_lt_to_gt(&single(5, (2, 3)));
        assert_eq!(flipped.tile(1, 1), &[(4, 3)]);
        assert_eq!(gt_lt_to_gt(&flipped), single(5, (2, 3)));
    }

    #[test]
    fn frame_examples() {
        let gt = GridTilingInstance::new(2, 1, vec![vec![vec![(1, 1)]]]).unwrap();
        let art = gen_gridtiling_connected(&gt).unwrap();
        let tile = art.group(Role::Tile { i: 1, j: 1, a: 1, b: 1 }).unwrap();
        let p = &art.instance.points()[tile.start];
        assert_eq!((p.x.clone(), p.y.clone()), (int(130), int(130)));
        let Params::GridTiling(params) = &art.params else { panic!() };
        assert_eq!(params.r_max_squared, rat(61, 2) * int(100));
        assert!((to_f64(&params.r_max) / 10.0 - 30.5f64.sqrt()).abs() < 1e-9);
        assert_eq!(art.instance.k(), 5);
    }
}
