//! Polynomial algorithm for Complete-Scaling.
//!
//! With `r_max > 1` it never pays to shrink, and every scaled disk can take
//! `r_max`. Pairs too far for one enlarged disk force both endpoints to be
//! scaled; of the remaining endpoints of "one enlarged disk suffices" pairs,
//! the unscaled ones must form a unit-disk clique.

use super::{Algorithm, SolveError, SolveOptions, SolveOutcome, Tracker};
use crate::geom::{dist2, int, to_f64, Instance, Point, RadiusAssignment};
use crate::graph::max_clique_udg;

pub fn solve_complete(inst: &Instance) -> Result<SolveOutcome, SolveError> {
    solve_complete_with(inst, &SolveOptions::default())
}

pub fn solve_complete_with(inst: &Instance, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let mut tr = Tracker::new(Algorithm::Complete, opts);
    let witness = decide(inst, &mut tr)?;
    Ok(tr.finish(witness))
}

fn decide(inst: &Instance, tr: &mut Tracker) -> Result<Option<RadiusAssignment>, SolveError> {
    let pts = inst.points();
    let n = pts.len();
    let four = int(4);
    let one_enlarged = (inst.r_max() + int(1)) * (inst.r_max() + int(1));
    let both_enlarged = int(4) * inst.r_max() * inst.r_max();
    let enlarging = *inst.r_max() > int(1);

    let mut must = vec![false; n];
    let mut touched = vec![false; n];
    for i in 0..n {
        tr.branch()?;
        for j in i + 1..n {
            let d2 = dist2(&pts[i], &pts[j]);
            if d2 <= four {
                continue;
            }
            if !enlarging || d2 > both_enlarged {
                return Ok(None);
            }
            if d2 <= one_enlarged {
                touched[i] = true;
                touched[j] = true;
            } else {
                must[i] = true;
                must[j] = true;
            }
        }
    }
    if !enlarging {
        return Ok(Some(RadiusAssignment::ones(n)));
    }
    let forced = must.iter().filter(|&&m| m).count();
    if forced > inst.k() {
        return Ok(None);
    }
    let budget = inst.k() - forced;
    let x: Vec<usize> = (0..n).filter(|&i| touched[i] && !must[i]).collect();
    let sub: Vec<Point> = x.iter().map(|&i| pts[i].clone()).collect();
    let clique = max_clique_udg(&sub);
    if clique.len() + budget < x.len() {
        return Ok(None);
    }
    let mut radii = vec![1.0; n];
    let r = to_f64(inst.r_max());
    for i in (0..n).filter(|&i| must[i]) {
        radii[i] = r;
    }
    for (pos, &i) in x.iter().enumerate() {
        if clique.binary_search(&pos).is_err() {
            radii[i] = r;
        }
    }
    Ok(Some(RadiusAssignment::new(radii).expect("r_max is finite and positive")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, verify_solution, GraphClass};

    fn inst(pts: &[(i64, i64)], r_max: crate::geom::Rational, k: usize) -> Instance {
        Instance::new(pts.iter().enumerate().map(|(i, &(x, y))| Point::from_ints(i, x, y)).collect(), int(1), r_max, k).unwrap()
    }

    #[test]
    fn complete_examples() {
        let a = inst(&[(0, 0), (3, 0)], rat(5, 2), 1);
        let out = solve_complete(&a).unwrap();
        assert!(out.is_yes());
        assert!(verify_solution(&a, out.witness.as_ref().unwrap(), GraphClass::Complete).unwrap().accepted());

        assert!(!solve_complete(&inst(&[(0, 0), (6, 0)], rat(5, 2), 2)).unwrap().is_yes());
        assert!(solve_complete(&inst(&[(0, 0), (1, 0), (0, 1), (1, 1)], int(1), 0)).unwrap().is_yes());
        assert!(!solve_complete(&inst(&[(0, 0), (3, 0)], rat(5, 2), 0)).unwrap().is_yes());
    }
}
