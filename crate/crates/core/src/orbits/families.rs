use std::collections::{HashMap, HashSet, VecDeque};

use crate::cyclo::{checked_lcm, CycloNum, NumKey, Rational};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Mat3, Subspace};
use crate::projgroup::{
    eigen_spaces_projective, finite_order_multiple, normalize_raw, GroupData, ProjLine,
    ProjPoint,
};

use super::{orbit_within, Orbit};

/// A line fixed pointwise by some group element, whose generic points all
/// have orbits of the same size.
#[derive(Debug, Clone)]
pub struct LineFamily {
    pub line: ProjLine,
    /// Size of the orbit of the line itself.
    pub line_orbit_size: usize,
    pub setwise_stabilizer_order: usize,
    pub pointwise_stabilizer_order: usize,
    /// Order of the group induced on the line by its setwise stabilizer.
    pub induced_p1_order: usize,
    pub generic_orbit_size: usize,
    pub exceptional: Vec<ExceptionalOrbit>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExceptionalReason {
    /// Points of the line with a stabilizer larger than the pointwise one.
    LargerStabilizer,
    /// Generic-size orbit lying on a group-invariant conic, given by its
    /// coefficients on `(x², y², z², xy, xz, yz)`.
    OnInvariantConic(Vec<CycloNum>),
}

#[derive(Debug, Clone)]
pub struct ExceptionalOrbit {
    pub orbit: Orbit,
    pub reason: ExceptionalReason,
}

impl LineFamily {
    pub fn conic_orbits(&self) -> impl Iterator<Item = &ExceptionalOrbit> {
        self.exceptional.iter().filter(|e| matches!(e.reason, ExceptionalReason::OnInvariantConic(_)))
    }

    pub(crate) fn has_generic_orbit(&self, o: &Orbit) -> bool {
        o.size() == self.generic_orbit_size
            && self.exceptional.iter().any(|e| e.orbit == *o && e.reason != ExceptionalReason::LargerStabilizer)
    }

    /// A point of the line different from every exceptional point, found by
    /// trying small integer combinations of a basis.
    ///
    /// When the generic orbit has at most 8 points, candidates whose orbit is
    /// not in general position are skipped too, since a family can contain
    /// degenerate members that no stabilizer or conic test detects.
    pub fn generic_point(&self, g: &GroupData) -> Result<ProjPoint> {
        let basis = line_basis(&self.line);
        let special: HashSet<&ProjPoint> =
            self.exceptional.iter().flat_map(|e| e.orbit.points()).collect();
        for t in 1..100i64 {
            let tt = CycloNum::from_int(t, 1)?;
            let v: [CycloNum; 3] = std::array::from_fn(|i| &basis[0][i] + &(&tt * &basis[1][i]));
            let p = ProjPoint::new(v)?;
            if special.contains(&p) {
                continue;
            }
            if self.generic_orbit_size <= 8 {
                let o = super::orbit(g, &p, self.generic_orbit_size)?;
                if !super::general_position(o.points())?.ok {
                    continue;
                }
            }
            return Ok(p);
        }
        Err(Error::Input("no generic point found".into()))
    }
}

pub(crate) struct LineAnalysis {
    pub family: LineFamily,
    pub special_points: Vec<ProjPoint>,
}

fn line_basis(line: &ProjLine) -> [[CycloNum; 3]; 2] {
    let k = kernel(&[line.dual().coords().to_vec()], 3);
    let v = |i: usize| std::array::from_fn(|j| k.basis[i][j].clone());
    [v(0), v(1)]
}

fn line_orbit(g: &GroupData, line: &ProjLine) -> Result<Vec<ProjLine>> {
    let duals: Vec<Mat3> = g
        .generator_elements()
        .into_iter()
        .map(|i| g.elements()[i].matrix().inverse_transpose())
        .collect::<Result<_>>()?;
    let mut seen: HashSet<ProjLine> = HashSet::from([line.clone()]);
    let mut queue = VecDeque::from([line.clone()]);
    while let Some(l) = queue.pop_front() {
        for d in &duals {
            let m = ProjLine::new(d.apply(l.dual().coords()))?;
            if seen.insert(m.clone()) {
                queue.push_back(m);
            }
        }
    }
    let mut out: Vec<ProjLine> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Smallest line of each orbit among `lines`.
pub(crate) fn line_orbit_representatives(g: &GroupData, lines: &[ProjLine]) -> Result<Vec<ProjLine>> {
    let mut covered: HashSet<ProjLine> = HashSet::new();
    let mut reps = Vec::new();
    for l in lines {
        if covered.contains(l) {
            continue;
        }
        let orb = line_orbit(g, l)?;
        reps.push(orb[0].clone());
        covered.extend(orb);
    }
    reps.sort();
    Ok(reps)
}

/// Coordinates `(α, β)` of `v = α·b1 + β·b2`, using a nonzero 2×2 minor.
struct LineCoords {
    basis: [[CycloNum; 3]; 2],
    rows: (usize, usize),
    inv_det: CycloNum,
}

impl LineCoords {
    fn new(basis: [[CycloNum; 3]; 2]) -> Self {
        for (r, s) in [(0, 1), (0, 2), (1, 2)] {
            let det = &(&basis[0][r] * &basis[1][s]) - &(&basis[0][s] * &basis[1][r]);
            if !det.is_zero() {
                let inv_det = det.inv().expect("nonzero minor");
                return LineCoords { basis, rows: (r, s), inv_det };
            }
        }
        unreachable!("basis vectors are independent")
    }

    fn coords(&self, v: &[CycloNum; 3]) -> [CycloNum; 2] {
        let (r, s) = self.rows;
        let b = &self.basis;
        let a = &(&(&v[r] * &b[1][s]) - &(&v[s] * &b[1][r])) * &self.inv_det;
        let c = &(&(&b[0][r] * &v[s]) - &(&b[0][s] * &v[r])) * &self.inv_det;
        [a, c]
    }
}

/// Compute the setwise and pointwise stabilizers of a pointwise-fixed line and
/// the points of the line whose stabilizer is larger than the pointwise one.
pub(crate) fn analyse_line(g: &GroupData, line: &ProjLine) -> Result<LineAnalysis> {
    let orbit = line_orbit(g, line)?;
    let m = orbit.len();
    let basis = line_basis(line);
    let lc = LineCoords::new(basis.clone());
    let dual = line.dual().coords();

    let mut setwise = 0usize;
    let mut pointwise = 0usize;
    // Distinct induced actions on the line, keyed by the projective 2×2 matrix.
    let mut restrictions: HashMap<Vec<NumKey>, usize> = HashMap::new();
    for i in 0..g.proj_order() {
        let rep = g.rep(i);
        let i0 = rep.apply(&basis[0]);
        let i1 = rep.apply(&basis[1]);
        if !crate::projgroup::dot(dual, &i0).is_zero() || !crate::projgroup::dot(dual, &i1).is_zero() {
            continue;
        }
        setwise += 1;
        let c0 = lc.coords(&i0);
        let c1 = lc.coords(&i1);
        let mut flat = vec![c0[0].clone(), c1[0].clone(), c0[1].clone(), c1[1].clone()];
        let lead = flat.iter().find(|x| !x.is_zero()).expect("invertible restriction").inv()?;
        for x in flat.iter_mut() {
            *x = &*x * &lead;
        }
        let trivial = flat[1].is_zero() && flat[2].is_zero() && flat[0] == flat[3];
        if trivial {
            pointwise += 1;
            continue;
        }
        let key: Vec<NumKey> = flat.iter().map(|x| x.embed(big_conductor(&flat)).expect("lcm").key()).collect();
        restrictions.entry(key).or_insert(i);
    }
    debug_assert!(pointwise >= 1 && setwise % pointwise == 0);
    let h = setwise / pointwise;
    let line_space = Subspace { basis: basis.iter().map(|v| v.to_vec()).collect() };

    let mut special = Vec::new();
    let mut reps: Vec<usize> = restrictions.into_values().collect();
    reps.sort_unstable();
    for i in reps {
        for s in eigen_spaces_projective(g.rep(i))? {
            let meet = s.intersect(&line_space);
            if meet.dim() == 1 {
                special.push(crate::projgroup::subspace_point(&meet)?);
            }
        }
    }
    for other in &orbit {
        if other != line {
            special.push(line.meet(other)?);
        }
    }
    special.sort();
    special.dedup();

    let family = LineFamily {
        line: line.clone(),
        line_orbit_size: m,
        setwise_stabilizer_order: setwise,
        pointwise_stabilizer_order: pointwise,
        induced_p1_order: h,
        generic_orbit_size: m * h,
        exceptional: vec![],
        notes: vec![],
    };
    Ok(LineAnalysis { family, special_points: special })
}

fn big_conductor(xs: &[CycloNum]) -> u32 {
    xs.iter().fold(1, |n, x| checked_lcm(n, x.conductor()).expect("within cap"))
}

/// Attach exceptional orbits: sporadic orbits meeting the line's orbit and
/// generic-size orbits cut out by invariant conics.
pub(crate) fn finish_family(
    g: &GroupData,
    analysis: LineAnalysis,
    sporadic: &[Orbit],
    bound: usize,
) -> Result<LineFamily> {
    let mut fam = analysis.family;
    let line = fam.line.clone();
    let mut exceptional: Vec<ExceptionalOrbit> = sporadic
        .iter()
        .filter(|o| o.points().iter().any(|p| line.contains(p)))
        .map(|o| ExceptionalOrbit { orbit: o.clone(), reason: ExceptionalReason::LargerStabilizer })
        .collect();

    for conic in invariant_conics(g)? {
        let pts = match conic_meets_line(&conic, &line)? {
            ConicMeet::Points(p) => p,
            ConicMeet::Contains => {
                fam.notes.push("line lies on an invariant conic".into());
                continue;
            }
            ConicMeet::Unresolved => {
                fam.notes.push(format!(
                    "intersection with invariant conic ({}) needs a square root outside the cyclotomic search",
                    conic.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
                ));
                continue;
            }
        };
        for p in pts {
            if exceptional.iter().any(|e| e.orbit.contains(&p)) {
                continue;
            }
            let o = orbit_within(g, &p, bound.max(fam.generic_orbit_size))?
                .ok_or(Error::OrbitTooLarge { cap: fam.generic_orbit_size })?;
            exceptional.push(ExceptionalOrbit {
                orbit: o,
                reason: ExceptionalReason::OnInvariantConic(conic.to_vec()),
            });
        }
    }
    exceptional.sort_by(|a, b| a.orbit.cmp(&b.orbit));
    fam.exceptional = exceptional;
    Ok(fam)
}

/// Matrix of `Q ↦ Q∘m` on quadratic forms in the basis `(x², y², z², xy, xz, yz)`.
fn quadratic_action(m: &Mat3) -> Vec<Vec<CycloNum>> {
    const PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];
    let slot = |p: usize, q: usize| -> usize {
        let (a, b) = if p <= q { (p, q) } else { (q, p) };
        PAIRS.iter().position(|&x| x == (a, b)).expect("pair present")
    };
    let n = m.conductor();
    let mut cols: Vec<Vec<CycloNum>> = Vec::new();
    for &(a, b) in &PAIRS {
        let mut col = vec![CycloNum::zero(n).expect("conductor"); 6];
        for p in 0..3 {
            for q in 0..3 {
                let c = m.get(a, p) * m.get(b, q);
                if !c.is_zero() {
                    let s = slot(p, q);
                    col[s] = &col[s] + &c;
                }
            }
        }
        cols.push(col);
    }
    (0..6).map(|r| (0..6).map(|c| cols[c][r].clone()).collect()).collect()
}

/// Conics preserved by the whole group, from common one-dimensional
/// eigenspaces of the generators acting on quadratic forms.
pub fn invariant_conics(g: &GroupData) -> Result<Vec<[CycloNum; 6]>> {
    let gens: Vec<Mat3> = g
        .generator_elements()
        .into_iter()
        .map(|i| finite_order_multiple(g.rep(i)))
        .collect::<Result<_>>()?;
    if gens.is_empty() {
        return Ok(vec![]);
    }
    let mut current: Option<Vec<Subspace>> = None;
    for m in &gens {
        let t = m.order(crate::linalg::DEFAULT_ORDER_CAP)?;
        let big = checked_lcm(m.conductor(), t)?;
        let q = quadratic_action(&m.embed(big)?);
        let mut spaces = Vec::new();
        for j in 0..t {
            let lambda = CycloNum::zeta_pow(big, (j * (big / t)) as i64)?;
            let shifted: Vec<Vec<CycloNum>> = q
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(c, x)| if r == c { x - &lambda } else { x.clone() })
                        .collect()
                })
                .collect();
            let k = kernel(&shifted, 6);
            if k.dim() > 0 {
                spaces.push(k);
            }
        }
        current = Some(match current {
            None => spaces,
            Some(prev) => {
                let mut next = Vec::new();
                for a in &prev {
                    for b in &spaces {
                        let c = a.intersect(b);
                        if c.dim() > 0 {
                            next.push(c);
                        }
                    }
                }
                next
            }
        });
    }
    let mut out = Vec::new();
    for s in current.unwrap_or_default() {
        if s.dim() != 1 {
            continue;
        }
        let v = &s.basis[0];
        let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero").inv()?;
        let c: [CycloNum; 6] = std::array::from_fn(|i| (&v[i] * &lead).minimized());
        out.push(c);
    }
    Ok(out)
}

fn eval_conic(c: &[CycloNum; 6], v: &[CycloNum; 3]) -> CycloNum {
    let mons = [&v[0] * &v[0], &v[1] * &v[1], &v[2] * &v[2], &v[0] * &v[1], &v[0] * &v[2], &v[1] * &v[2]];
    c.iter().zip(&mons).fold(CycloNum::zero(1).expect("conductor 1"), |acc, (a, b)| &acc + &(a * b))
}

enum ConicMeet {
    Points(Vec<ProjPoint>),
    Contains,
    Unresolved,
}

/// Square root of `d` when `d` is a rational square times a root of unity.
pub(crate) fn cyclotomic_sqrt(d: &CycloNum) -> Option<CycloNum> {
    use num_traits::Signed;
    if d.is_zero() {
        return Some(d.clone());
    }
    let d = d.minimized();
    let (r, k) = d.as_scaled_root_of_unity()?;
    let abs = r.abs();
    let num = abs.numer().sqrt();
    let den = abs.denom().sqrt();
    if &num * &num != *abs.numer() || &den * &den != *abs.denom() {
        return None;
    }
    // d = |r|·ρ with ρ = ±ζ_n^k, and the square roots of ρ are roots of unity
    // of order dividing 2·lcm(n, 2).
    let mut rho = CycloNum::zeta_pow(d.conductor(), k as i64).ok()?;
    if r.is_negative() {
        rho = -rho;
    }
    let m = 2 * checked_lcm(d.conductor(), 2).ok()?;
    let q = Rational::new(num, den);
    (0..m).find_map(|j| {
        let u = CycloNum::zeta_pow(m, j as i64).ok()?;
        (&u * &u == rho).then(|| u.scale(&q).minimized())
    })
}

fn conic_meets_line(c: &[CycloNum; 6], line: &ProjLine) -> Result<ConicMeet> {
    let [b1, b2] = line_basis(line);
    let sum: [CycloNum; 3] = std::array::from_fn(|i| &b1[i] + &b2[i]);
    let alpha = eval_conic(c, &b1);
    let gamma = eval_conic(c, &b2);
    let beta = &(&eval_conic(c, &sum) - &alpha) - &gamma;
    if alpha.is_zero() && beta.is_zero() && gamma.is_zero() {
        return Ok(ConicMeet::Contains);
    }
    let point = |s: &CycloNum, t: &CycloNum| -> Result<ProjPoint> {
        let v: [CycloNum; 3] = std::array::from_fn(|i| &(s * &b1[i]) + &(t * &b2[i]));
        ProjPoint::new(normalize_raw(&v)?)
    };
    let one = CycloNum::one(1)?;
    let zero = CycloNum::zero(1)?;
    let mut pts = Vec::new();
    if alpha.is_zero() {
        pts.push(point(&one, &zero)?);
        if !beta.is_zero() {
            pts.push(point(&gamma, &-&beta)?);
        }
    } else {
        let four = Rational::from_integer(4.into());
        let disc = &(&beta * &beta) - &(&alpha * &gamma).scale(&four);
        let Some(root) = cyclotomic_sqrt(&disc) else { return Ok(ConicMeet::Unresolved) };
        let two_alpha = alpha.scale(&Rational::from_integer(2.into()));
        for sign in [1i64, -1] {
            let r = root.scale(&Rational::from_integer(sign.into()));
            let s = (&-&beta + &r).div(&two_alpha)?;
            pts.push(point(&s, &one)?);
        }
    }
    pts.sort();
    pts.dedup();
    Ok(ConicMeet::Points(pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::parse_expr;

    #[test]
    fn square_roots() {
        let minus_four = CycloNum::from_int(-4, 1).unwrap();
        let r = cyclotomic_sqrt(&minus_four).unwrap();
        assert_eq!(&r * &r, minus_four);
        let w = parse_expr("9*z", 3).unwrap();
        let r = cyclotomic_sqrt(&w).unwrap();
        assert_eq!(&r * &r, w);
        assert!(cyclotomic_sqrt(&CycloNum::from_int(2, 1).unwrap()).is_none());
    }
}
