//! Orbits of finite groups on P², the search for all orbits of bounded size,
//! and the general-position tests.
//!
//! # Small-orbit search
//!
//! A point whose orbit is smaller than the group has a nontrivial stabilizer,
//! which contains an element of prime order. Such a point is either an
//! isolated eigenpoint of that element or lies on a line the element fixes
//! pointwise. [`small_orbits`] therefore scans one generator of every cyclic
//! subgroup of prime order, orbits the isolated eigenpoints, and analyses
//! each pointwise-fixed line separately: generic points of the line share one
//! orbit size, and the finitely many points with a larger stabilizer are
//! located exactly and added as candidates.
//!
//! When the group order forces a prime `p` into every subgroup of index at
//! most the bound, only the subgroups of order `p` are scanned.

mod families;
mod genpos;

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::cyclo::{checked_lcm, CycloNum, NumKey};
use crate::error::{Error, Result};
use crate::linalg::Mat3;
use crate::projgroup::{
    eigen_spaces_projective, normalize_raw, raw_key, subspace_line, subspace_point, GroupData,
    ProjElement, ProjLine, ProjPoint,
};

pub use families::{invariant_conics, ExceptionalOrbit, ExceptionalReason, LineFamily};
pub use genpos::{
    collinear, eight_on_singular_cubic, general_position, singular_cubic_witness, six_on_conic,
    GenPosFailure, GenPosReport,
};

/// One orbit. Points are listed in breadth-first order from the smallest
/// point, applying the generators in group order.
#[derive(Debug, Clone)]
pub struct Orbit {
    points: Vec<ProjPoint>,
    sorted: Vec<ProjPoint>,
}

impl PartialEq for Orbit {
    fn eq(&self, other: &Self) -> bool {
        self.sorted == other.sorted
    }
}

impl Eq for Orbit {}

impl std::hash::Hash for Orbit {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.sorted.hash(state)
    }
}

impl Orbit {
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// The smallest point in the canonical order, also the first listed.
    pub fn representative(&self) -> &ProjPoint {
        &self.points[0]
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.sorted.binary_search(p).is_ok()
    }

    /// Smallest conductor holding every coordinate.
    pub fn conductor(&self) -> u32 {
        self.points.iter().fold(1, |n, p| checked_lcm(n, p.conductor()).unwrap_or(n))
    }
}

impl PartialOrd for Orbit {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Orbit {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.size(), &self.points[0]).cmp(&(other.size(), &other.points[0]))
    }
}

/// Generator matrices of a group embedded at a chosen conductor, used to walk
/// orbits without canonicalising to minimal conductors at every step.
pub(crate) struct Walker {
    n: u32,
    gens: Vec<Mat3>,
}

impl Walker {
    pub(crate) fn new(g: &GroupData, extra_conductor: u32) -> Result<Self> {
        let n = checked_lcm(g.conductor(), extra_conductor)?;
        let gens = g
            .generator_elements()
            .into_iter()
            .map(|i| g.elements()[i].matrix().embed(n))
            .collect::<Result<_>>()?;
        Ok(Walker { n, gens })
    }

    fn start(&self, p: &ProjPoint) -> Result<[CycloNum; 3]> {
        p.coords_at(self.n)
    }

    /// Orbit of `p` as raw normalized coordinates; `None` once it exceeds `limit`.
    pub(crate) fn orbit_raw(&self, p: &ProjPoint, limit: usize) -> Result<Option<Vec<[CycloNum; 3]>>> {
        let start = normalize_raw(&self.start(p)?)?;
        let mut seen: HashSet<[NumKey; 3]> = HashSet::from([raw_key(&start)]);
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for g in &self.gens {
                let w = normalize_raw(&g.apply(&v))?;
                if seen.insert(raw_key(&w)) {
                    if out.len() >= limit {
                        return Ok(None);
                    }
                    out.push(w.clone());
                    queue.push_back(w);
                }
            }
        }
        Ok(Some(out))
    }
}

fn to_orbit(w: &Walker, raw: Vec<[CycloNum; 3]>) -> Result<Orbit> {
    let found: Vec<ProjPoint> = raw.into_iter().map(ProjPoint::new).collect::<Result<_>>()?;
    let mut sorted = found.clone();
    sorted.sort();
    let points = if found[0] == sorted[0] {
        found
    } else {
        let again = w.orbit_raw(&sorted[0], sorted.len())?.expect("same orbit size");
        again.into_iter().map(ProjPoint::new).collect::<Result<_>>()?
    };
    Ok(Orbit { points, sorted })
}

/// Full orbit of a point; fails when it has more than `cap` points.
pub fn orbit(g: &GroupData, x: &ProjPoint, cap: usize) -> Result<Orbit> {
    let w = Walker::new(g, x.conductor())?;
    match w.orbit_raw(x, cap)? {
        Some(raw) => to_orbit(&w, raw),
        None => Err(Error::OrbitTooLarge { cap }),
    }
}

/// Orbit size without building canonical points.
pub fn orbit_size(g: &GroupData, x: &ProjPoint) -> Result<usize> {
    let w = Walker::new(g, x.conductor())?;
    let raw = w.orbit_raw(x, g.proj_order())?.ok_or(Error::OrbitTooLarge { cap: g.proj_order() })?;
    Ok(raw.len())
}

/// The orbit when it has at most `bound` points.
pub fn orbit_within(g: &GroupData, x: &ProjPoint, bound: usize) -> Result<Option<Orbit>> {
    let w = Walker::new(g, x.conductor())?;
    w.orbit_raw(x, bound)?.map(|raw| to_orbit(&w, raw)).transpose()
}

/// All orbits of size at most `bound`.
#[derive(Debug, Clone)]
pub struct SmallOrbitReport {
    pub bound: usize,
    pub proj_order: usize,
    /// Isolated orbits, sorted by size then representative.
    pub sporadic: Vec<Orbit>,
    /// Lines whose generic points have orbits within the bound.
    pub families: Vec<LineFamily>,
    /// False when the group is so small that every orbit is within the bound.
    pub complete: bool,
    pub notes: Vec<String>,
}

impl SmallOrbitReport {
    pub fn sporadic_sizes(&self) -> Vec<usize> {
        self.sporadic.iter().map(Orbit::size).collect()
    }

    /// The sporadic orbit or family exceptional orbit containing `p`, if any.
    pub fn find(&self, p: &ProjPoint) -> Option<&Orbit> {
        self.sporadic
            .iter()
            .chain(self.families.iter().flat_map(|f| f.exceptional.iter().map(|e| &e.orbit)))
            .find(|o| o.contains(p))
    }
}

/// Eigen data of one element: isolated fixed points and pointwise-fixed lines.
struct FixedData {
    points: Vec<ProjPoint>,
    lines: Vec<ProjLine>,
}

fn fixed_data(m: &Mat3) -> Result<FixedData> {
    let mut points = Vec::new();
    let mut lines = Vec::new();
    for s in eigen_spaces_projective(m)? {
        match s.dim() {
            1 => points.push(subspace_point(&s)?),
            2 => lines.push(subspace_line(&s)?),
            _ => {}
        }
    }
    Ok(FixedData { points, lines })
}

fn p_adic_valuation(mut n: usize, p: usize) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Primes dividing the order of every subgroup of index at most `bound`.
///
/// Such a prime divides the order of the stabilizer of any point with a
/// small orbit, so that stabilizer contains an element of that prime order.
pub(crate) fn forced_stabilizer_primes(order: usize, bound: usize) -> Vec<usize> {
    (2..=order)
        .filter(|&p| order % p == 0 && (2..p).all(|d| p % d != 0))
        .filter(|&p| {
            let v = p_adic_valuation(order, p);
            (1..=bound.min(order)).filter(|i| order % i == 0).all(|i| p_adic_valuation(i, p) < v)
        })
        .collect()
}

/// Prime-order cyclic subgroups whose fixed loci contain every point with an
/// orbit of size at most `bound`. When some prime is forced into every
/// stabilizer only subgroups of that order are needed, and the prime with the
/// fewest subgroups is used.
fn scan_elements(g: &GroupData, bound: usize) -> Vec<usize> {
    let reps = g.prime_order_subgroup_reps();
    if g.proj_order() <= bound {
        return reps;
    }
    let orders = g.element_orders();
    forced_stabilizer_primes(g.proj_order(), bound)
        .into_iter()
        .map(|p| reps.iter().copied().filter(|&i| orders[i] as usize == p).collect::<Vec<_>>())
        .min_by_key(Vec::len)
        .unwrap_or(reps)
}

/// Search every orbit of size at most `bound`.
pub fn small_orbits(g: &GroupData, bound: usize) -> Result<SmallOrbitReport> {
    if bound == 0 {
        return Err(Error::Input("bound must be at least 1".into()));
    }
    let mut notes = Vec::new();
    let complete = g.proj_order() > bound;
    if !complete {
        notes.push(format!(
            "group order {} is at most the bound, so every orbit has size at most {bound}; \
             only orbits with a nontrivial stabilizer are listed",
            g.proj_order()
        ));
    }

    let reps = scan_elements(g, bound);
    let data: Vec<FixedData> =
        reps.par_iter().map(|&i| fixed_data(g.rep(i))).collect::<Result<_>>()?;

    let mut candidates: Vec<ProjPoint> = Vec::new();
    let mut lines: Vec<ProjLine> = Vec::new();
    for d in data {
        candidates.extend(d.points);
        lines.extend(d.lines);
    }
    lines.sort();
    lines.dedup();

    // Pointwise-fixed lines, one per orbit of lines.
    let line_reps = families::line_orbit_representatives(g, &lines)?;
    let mut families_out = Vec::new();
    for rep in &line_reps {
        let analysis = families::analyse_line(g, rep)?;
        candidates.extend(analysis.special_points.iter().cloned());
        if analysis.family.generic_orbit_size <= bound {
            families_out.push(analysis);
        }
    }

    let mut found: HashSet<ProjPoint> = HashSet::new();
    let mut sporadic: Vec<Orbit> = Vec::new();
    candidates.sort();
    candidates.dedup();
    for c in &candidates {
        if found.contains(c) {
            continue;
        }
        if let Some(o) = orbit_within(g, c, bound)? {
            found.extend(o.points().iter().cloned());
            sporadic.push(o);
        }
    }

    let mut families_final = Vec::new();
    for a in families_out {
        families_final.push(families::finish_family(g, a, &sporadic, bound)?);
    }
    // A sporadic orbit made of generic members of a reported family is part
    // of that family, not an isolated orbit.
    sporadic.retain(|o| !families_final.iter().any(|f: &LineFamily| f.has_generic_orbit(o)));
    sporadic.sort();
    Ok(SmallOrbitReport { bound, proj_order: g.proj_order(), sporadic, families: families_final, complete, notes })
}

/// Orbit sizes of the eigenpoints of two elements given as matrices in the group.
pub fn eigen_orbit_sizes(g: &GroupData, g1: &Mat3, g2: &Mat3) -> Result<Vec<usize>> {
    let mut sizes = Vec::new();
    for m in [g1, g2] {
        let pe = ProjElement::new(m)?;
        if !g.contains(&pe) {
            return Err(Error::Input("element is not in the group".into()));
        }
        for s in eigen_spaces_projective(m)? {
            if s.dim() != 1 {
                return Err(Error::MethodInapplicable(
                    "element has a repeated eigenvalue, use small_orbits instead".into(),
                ));
            }
            sizes.push(orbit_size(g, &subspace_point(&s)?)?);
        }
    }
    Ok(sizes)
}

/// The permutation `σ` with `g(p_i) = p_{σ(i)}`.
pub fn induced_permutation(g: &ProjElement, points: &[ProjPoint]) -> Result<Vec<usize>> {
    let index: HashMap<&ProjPoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    points
        .iter()
        .map(|p| {
            let q = g.apply(p)?;
            index.get(&q).copied().ok_or(Error::NotInvariant)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgroup::closure;

    fn tau() -> Mat3 {
        Mat3::from_ints(1, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]).unwrap()
    }

    #[test]
    fn orbit_of_tau() {
        let g = closure(&[tau()], 100).unwrap();
        let o = orbit(&g, &ProjPoint::from_ints([1, 0, 0]).unwrap(), 10).unwrap();
        assert_eq!(o.size(), 3);
        assert!(orbit(&g, &ProjPoint::from_ints([1, 2, 3]).unwrap(), 2).is_err());
    }

    #[test]
    fn forced_primes() {
        assert_eq!(forced_stabilizer_primes(1200, 8), vec![2, 5]);
        assert_eq!(forced_stabilizer_primes(12, 8), Vec::<usize>::new());
        assert_eq!(forced_stabilizer_primes(60, 8), Vec::<usize>::new());
        assert_eq!(forced_stabilizer_primes(216, 8), vec![3]);
    }

    #[test]
    fn permutation_of_tau() {
        let pts: Vec<ProjPoint> =
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|&v| ProjPoint::from_ints(v).unwrap()).collect();
        let t = ProjElement::new(&tau()).unwrap();
        assert_eq!(induced_permutation(&t, &pts).unwrap(), vec![2, 0, 1]);
        let id = ProjElement::new(&Mat3::identity(1).unwrap()).unwrap();
        assert_eq!(induced_permutation(&id, &pts).unwrap(), vec![0, 1, 2]);
        assert_eq!(induced_permutation(&t, &pts[..2]).unwrap_err(), Error::NotInvariant);
    }
}
