//! General position of up to eight points: no three on a line, no six on a
//! conic, no eight on a cubic that is singular at one of them.

use std::collections::HashSet;
use std::fmt;

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::projgroup::ProjPoint;

/// The first condition a point set violates, with indices into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenPosFailure {
    Collinear([usize; 3]),
    OnConic([usize; 6]),
    OnSingularCubic { points: [usize; 8], singular: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPosReport {
    pub ok: bool,
    pub failure: Option<GenPosFailure>,
}

impl fmt::Display for GenPosReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "ok: in general position"),
            Some(GenPosFailure::Collinear(i)) => write!(f, "fail: points {i:?} are collinear"),
            Some(GenPosFailure::OnConic(i)) => write!(f, "fail: points {i:?} lie on a conic"),
            Some(GenPosFailure::OnSingularCubic { points, singular }) => write!(
                f,
                "fail: points {points:?} lie on a cubic singular at point {singular}"
            ),
        }
    }
}

fn check_distinct(points: &[&ProjPoint]) -> Result<()> {
    let mut seen = HashSet::new();
    for p in points {
        if !seen.insert(*p) {
            return Err(Error::Input(format!("repeated point {p}")));
        }
    }
    Ok(())
}

pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    let rows: Vec<Vec<CycloNum>> = [p, q, r].iter().map(|x| x.coords().to_vec()).collect();
    rank(&rows, 3) < 3
}

fn conic_row(p: &ProjPoint) -> Vec<CycloNum> {
    let [x, y, z] = p.coords();
    vec![x * x, y * y, z * z, x * y, x * z, y * z]
}

/// True when the six points lie on one conic.
pub fn six_on_conic(points: &[&ProjPoint]) -> Result<bool> {
    if points.len() != 6 {
        return Err(Error::Input(format!("expected 6 points, got {}", points.len())));
    }
    check_distinct(points)?;
    let rows: Vec<Vec<CycloNum>> = points.iter().map(|p| conic_row(p)).collect();
    Ok(rank(&rows, 6) < 6)
}

/// Cubic monomials in the order x³, y³, z³, x²y, x²z, y²x, y²z, z²x, z²y, xyz.
fn cubic_row(p: &ProjPoint) -> Vec<CycloNum> {
    let [x, y, z] = p.coords();
    let (xx, yy, zz) = (x * x, y * y, z * z);
    vec![
        &xx * x,
        &yy * y,
        &zz * z,
        &xx * y,
        &xx * z,
        &yy * x,
        &yy * z,
        &zz * x,
        &zz * y,
        &(x * y) * z,
    ]
}

/// Rows of ∂/∂x, ∂/∂y, ∂/∂z of the cubic monomials at `p`.
fn cubic_gradient_rows(p: &ProjPoint) -> Vec<Vec<CycloNum>> {
    let [x, y, z] = p.coords();
    let zero = CycloNum::zero(1).expect("conductor 1");
    let c = |k: i64, v: CycloNum| v.scale(&crate::cyclo::Rational::from_integer(k.into()));
    let (xx, yy, zz) = (x * x, y * y, z * z);
    let dx = vec![
        c(3, xx.clone()),
        zero.clone(),
        zero.clone(),
        c(2, x * y),
        c(2, x * z),
        yy.clone(),
        zero.clone(),
        zz.clone(),
        zero.clone(),
        y * z,
    ];
    let dy = vec![
        zero.clone(),
        c(3, yy.clone()),
        zero.clone(),
        xx.clone(),
        zero.clone(),
        c(2, y * x),
        c(2, y * z),
        zero.clone(),
        zz.clone(),
        x * z,
    ];
    let dz = vec![
        zero.clone(),
        zero.clone(),
        c(3, zz),
        zero.clone(),
        xx,
        zero.clone(),
        yy,
        c(2, z * x),
        c(2, z * y),
        x * y,
    ];
    vec![dx, dy, dz]
}

/// True when some cubic passes through all eight points and is singular at
/// one of them; returns the index of that point.
pub fn singular_cubic_witness(points: &[&ProjPoint]) -> Result<Option<usize>> {
    if points.len() != 8 {
        return Err(Error::Input(format!("expected 8 points, got {}", points.len())));
    }
    check_distinct(points)?;
    for s in 0..8 {
        let mut rows: Vec<Vec<CycloNum>> =
            points.iter().enumerate().filter(|&(i, _)| i != s).map(|(_, p)| cubic_row(p)).collect();
        rows.extend(cubic_gradient_rows(points[s]));
        if rank(&rows, 10) < 10 {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

pub fn eight_on_singular_cubic(points: &[&ProjPoint]) -> Result<bool> {
    Ok(singular_cubic_witness(points)?.is_some())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Check all three conditions in lexicographic subset order.
pub fn general_position(points: &[ProjPoint]) -> Result<GenPosReport> {
    let n = points.len();
    if n == 0 || n > 8 {
        return Err(Error::Input(format!("general position is checked for 1 to 8 points, got {n}")));
    }
    let refs: Vec<&ProjPoint> = points.iter().collect();
    check_distinct(&refs)?;
    let fail = |f| Ok(GenPosReport { ok: false, failure: Some(f) });
    for s in subsets(n, 3) {
        if collinear(&points[s[0]], &points[s[1]], &points[s[2]]) {
            return fail(GenPosFailure::Collinear([s[0], s[1], s[2]]));
        }
    }
    for s in subsets(n, 6) {
        let pts: Vec<&ProjPoint> = s.iter().map(|&i| &points[i]).collect();
        if six_on_conic(&pts)? {
            return fail(GenPosFailure::OnConic(std::array::from_fn(|i| s[i])));
        }
    }
    if n == 8 {
        if let Some(singular) = singular_cubic_witness(&refs)? {
            return fail(GenPosFailure::OnSingularCubic { points: std::array::from_fn(|i| i), singular });
        }
    }
    Ok(GenPosReport { ok: true, failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: [i64; 3]) -> ProjPoint {
        ProjPoint::from_ints(v).unwrap()
    }

    #[test]
    fn collinearity() {
        assert!(collinear(&p([1, 0, 0]), &p([0, 1, 0]), &p([1, 1, 0])));
        assert!(!collinear(&p([1, 0, 0]), &p([0, 1, 0]), &p([0, 0, 1])));
    }

    #[test]
    fn six_rational_points_on_a_conic() {
        // xy + yz + zx = 0 through (1:0:0), (0:1:0), (0:0:1) and (1:1:-1/2)-type points
        let pts = [p([1, 0, 0]), p([0, 1, 0]), p([0, 0, 1]), p([2, 2, -1]), p([3, 6, -2]), p([6, 3, -2])];
        let refs: Vec<&ProjPoint> = pts.iter().collect();
        assert!(six_on_conic(&refs).unwrap());
        let gp = general_position(&pts).unwrap();
        assert_eq!(gp.failure, Some(GenPosFailure::OnConic([0, 1, 2, 3, 4, 5])));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(general_position(&[p([1, 0, 0]), p([2, 0, 0])]).is_err());
        assert!(general_position(&[]).is_err());
    }

    #[test]
    fn small_sets() {
        let r = general_position(&[p([1, 0, 0]), p([0, 1, 0]), p([0, 0, 1]), p([1, 1, 1])]).unwrap();
        assert!(r.ok);
        let r = general_position(&[p([1, 0, 0]), p([0, 1, 0]), p([1, 1, 0])]).unwrap();
        assert_eq!(r.failure, Some(GenPosFailure::Collinear([0, 1, 2])));
    }

    #[test]
    fn eight_points_with_a_nodal_cubic() {
        // y²z = x³ + x²z has a node at (0:0:1); pick seven more rational points on it.
        let on_curve = |t: i64| p([t * t - 1, t * (t * t - 1), 1]);
        let mut pts = vec![p([0, 0, 1])];
        pts.extend([2, 3, 4, 5, -2, -3, -4].map(on_curve));
        let refs: Vec<&ProjPoint> = pts.iter().collect();
        assert_eq!(singular_cubic_witness(&refs).unwrap(), Some(0));
    }
}
