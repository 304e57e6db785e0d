//! Picard lattices of blowups of P² in at most eight points.
//!
//! A class is either an exceptional curve `E_i` or the class `(d; m_1, …, m_n)`
//! of a plane curve of degree `d` through the blown-up points with the given
//! multiplicities. The group acts through the permutation it induces on the
//! points. On top of that the module enumerates (−1)-classes, conic-bundle
//! fibration classes and the contractions that make up elementary links.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::orbits::induced_permutation;
use crate::projgroup::{GroupData, ProjPoint};

/// Largest number of blown-up points for which the surface is Del Pezzo.
pub const MAX_POINTS: usize = 8;

/// Degree bound for (−1)-classes; every (−1)-class on at most eight points has degree at most 6.
const NEG_ONE_DEGREE_BOUND: u32 = 6;

/// Degree bound for fibration classes.
pub const FIBRATION_DEGREE_BOUND: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DPClass {
    /// The exceptional curve over point `index` (0-based) of `n`.
    Exceptional { n: usize, index: usize },
    /// A plane curve of degree `d ≥ 1` with multiplicities `m`.
    Plane { d: u32, m: Vec<u32> },
}

impl DPClass {
    pub fn exceptional(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::Input(format!("exceptional index {index} out of range for {n} points")));
        }
        Ok(DPClass::Exceptional { n, index })
    }

    pub fn plane(d: u32, m: Vec<u32>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Input("plane classes have positive degree".into()));
        }
        Ok(DPClass::Plane { d, m })
    }

    /// Number of blown-up points.
    pub fn n(&self) -> usize {
        match self {
            DPClass::Exceptional { n, .. } => *n,
            DPClass::Plane { m, .. } => m.len(),
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self, DPClass::Exceptional { .. })
    }

    /// Intersection with the anticanonical class `3H − ΣE_i`.
    pub fn anticanonical_degree(&self) -> i64 {
        match self {
            DPClass::Exceptional { .. } => 1,
            DPClass::Plane { d, m } => 3 * *d as i64 - m.iter().map(|&x| x as i64).sum::<i64>(),
        }
    }

    pub fn self_intersection(&self) -> i64 {
        pairing(self, self).expect("same n")
    }

    /// Image under the point permutation `perm` (point `i` goes to `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> DPClass {
        match self {
            DPClass::Exceptional { n, index } => DPClass::Exceptional { n: *n, index: perm[*index] },
            DPClass::Plane { d, m } => {
                let mut out = vec![0; m.len()];
                for (i, &x) in m.iter().enumerate() {
                    out[perm[i]] = x;
                }
                DPClass::Plane { d: *d, m: out }
            }
        }
    }

    /// Position in the deterministic class order: exceptional curves first,
    /// then by degree, then by multiplicities in decreasing lexicographic order.
    fn sort_key(&self) -> (u32, Vec<std::cmp::Reverse<u32>>, usize) {
        match self {
            DPClass::Exceptional { index, .. } => (0, vec![], *index),
            DPClass::Plane { d, m } => (*d, m.iter().map(|&x| std::cmp::Reverse(x)).collect(), 0),
        }
    }
}

impl fmt::Display for DPClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DPClass::Exceptional { index, .. } => write!(f, "E{}", index + 1),
            DPClass::Plane { d, m } => {
                let ms: Vec<String> = m.iter().map(u32::to_string).collect();
                write!(f, "({d}; {})", ms.join(","))
            }
        }
    }
}

/// Intersection number of two classes on the same blowup.
pub fn pairing(a: &DPClass, b: &DPClass) -> Result<i64> {
    if a.n() != b.n() {
        return Err(Error::Input(format!("classes on {} and {} points", a.n(), b.n())));
    }
    Ok(match (a, b) {
        (DPClass::Exceptional { index: i, .. }, DPClass::Exceptional { index: j, .. }) => -((i == j) as i64),
        (DPClass::Exceptional { index, .. }, DPClass::Plane { m, .. })
        | (DPClass::Plane { m, .. }, DPClass::Exceptional { index, .. }) => m[*index] as i64,
        (DPClass::Plane { d: d1, m: m1 }, DPClass::Plane { d: d2, m: m2 }) => {
            *d1 as i64 * *d2 as i64 - m1.iter().zip(m2).map(|(&x, &y)| x as i64 * y as i64).sum::<i64>()
        }
    })
}

/// All vectors of `n` nonnegative integers with the given sum and sum of squares.
fn multiplicity_vectors(n: usize, sum: i64, squares: i64) -> Vec<Vec<u32>> {
    fn rec(left: usize, sum: i64, squares: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if sum == 0 && squares == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // m ≤ m² for integers, and (Σm)² ≤ k·Σm² on k entries.
        if sum < 0 || squares < sum || sum * sum > left as i64 * squares {
            return;
        }
        let mut x = 0i64;
        while x * x <= squares && x <= sum {
            cur.push(x as u32);
            rec(left - 1, sum - x, squares - x * x, cur, out);
            cur.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    rec(n, sum, squares, &mut Vec::with_capacity(n), &mut out);
    out
}

fn check_points(n: usize) -> Result<()> {
    if n == 0 || n > MAX_POINTS {
        return Err(Error::Input(format!("the number of blown-up points must be 1..={MAX_POINTS}, got {n}")));
    }
    Ok(())
}

fn sort_classes(classes: &mut [DPClass]) {
    classes.sort_by_key(DPClass::sort_key);
}

/// Plane classes of degree at most `max_d` with `c² = −1` and `−K·c = 1`.
pub fn neg_one_classes_up_to_degree(n: usize, max_d: u32) -> Result<Vec<DPClass>> {
    check_points(n)?;
    let mut out: Vec<DPClass> = (0..n).map(|i| DPClass::Exceptional { n, index: i }).collect();
    for d in 1..=max_d {
        let d = d as i64;
        for m in multiplicity_vectors(n, 3 * d - 1, d * d + 1) {
            out.push(DPClass::Plane { d: d as u32, m });
        }
    }
    sort_classes(&mut out);
    Ok(out)
}

/// Every (−1)-class on the blowup of `n` points.
pub fn neg_one_classes(n: usize) -> Result<Vec<DPClass>> {
    neg_one_classes_up_to_degree(n, NEG_ONE_DEGREE_BOUND)
}

/// Action of a group on the blown-up points, one permutation per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermAction {
    n: usize,
    perms: Vec<Vec<usize>>,
}

impl PermAction {
    pub fn new(n: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        for p in &perms {
            let set: BTreeSet<usize> = p.iter().copied().collect();
            if p.len() != n || set.len() != n || set.iter().any(|&i| i >= n) {
                return Err(Error::Input(format!("{p:?} is not a permutation of {n} points")));
            }
        }
        Ok(PermAction { n, perms })
    }

    pub fn trivial(n: usize) -> Self {
        PermAction { n, perms: vec![] }
    }

    /// Permutations induced by the generators of `g` on an invariant point set.
    pub fn from_group(g: &GroupData, points: &[ProjPoint]) -> Result<Self> {
        let perms = g
            .generator_elements()
            .into_iter()
            .map(|i| induced_permutation(&g.elements()[i], points))
            .collect::<Result<_>>()?;
        PermAction::new(points.len(), perms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Orbits of the action on point indices, each sorted, ordered by smallest member.
    pub fn index_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let i = orbit[k];
                for p in &self.perms {
                    if !seen[p[i]] {
                        seen[p[i]] = true;
                        orbit.push(p[i]);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_invariant(&self, c: &DPClass) -> bool {
        self.perms.iter().all(|p| c.permuted(p) == *c)
    }
}

/// Rank of the invariant part of the Picard lattice: the hyperplane class
/// plus one sum of exceptional curves per point orbit.
pub fn invariant_rank(action: &PermAction) -> usize {
    1 + action.index_orbits().len()
}

/// Partition of `classes` into orbits under the action.
///
/// Each orbit lists its classes in the order of `classes`; orbits are ordered
/// by their first class.
pub fn class_orbits(action: &PermAction, classes: &[DPClass]) -> Result<Vec<Vec<DPClass>>> {
    let index: HashMap<&DPClass, usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut seen = vec![false; classes.len()];
    let mut out = Vec::new();
    for start in 0..classes.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let c = &classes[orbit[k]];
            for p in action.permutations() {
                let image = c.permuted(p);
                let j = *index
                    .get(&image)
                    .ok_or_else(|| Error::Input(format!("class set is not closed: {image} missing")))?;
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit.into_iter().map(|i| classes[i].clone()).collect());
    }
    Ok(out)
}

/// Invariant classes `f` with `f² = 0`, `−K·f = 2` and `f·c ≥ 0` for every
/// (−1)-class `c`, of degree at most `max_d`.
pub fn fibration_classes(action: &PermAction, max_d: u32) -> Result<Vec<DPClass>> {
    let n = action.n();
    let negs = neg_one_classes(n)?;
    let mut out = Vec::new();
    for d in 1..=max_d {
        let d = d as i64;
        for m in multiplicity_vectors(n, 3 * d - 2, d * d) {
            let f = DPClass::Plane { d: d as u32, m };
            if !action.is_invariant(&f) {
                continue;
            }
            if negs.iter().all(|c| pairing(&f, c).expect("same n") >= 0) {
                out.push(f);
            }
        }
    }
    sort_classes(&mut out);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkKind {
    /// The blowup is a conic bundle with fibre class `fibration_class`.
    TypeI { fibration_class: DPClass },
    /// Contracting the listed class orbits gives a surface of the stated
    /// degree and invariant Picard rank.
    TypeII { contracted_orbits: Vec<Vec<DPClass>>, result_degree: u32, result_invariant_rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDescriptor {
    pub kind: LinkKind,
    /// Number of blown-up points.
    pub n: usize,
    /// Classes are effective and irreducible only when the points are in
    /// general position; always true for links produced here.
    pub general_position_required: bool,
}

impl LinkDescriptor {
    /// True for a contraction back to the projective plane with invariant rank one.
    pub fn lands_on_p2(&self) -> bool {
        matches!(self.kind, LinkKind::TypeII { result_degree: 9, result_invariant_rank: 1, .. })
    }

    pub fn is_type_i(&self) -> bool {
        matches!(self.kind, LinkKind::TypeI { .. })
    }
}

impl fmt::Display for LinkDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let points = if self.n == 1 { "1 point".to_string() } else { format!("{} points", self.n) };
        match &self.kind {
            LinkKind::TypeI { fibration_class } => {
                write!(f, "Type I on {points}: conic bundle with fibre class {fibration_class}")
            }
            LinkKind::TypeII { contracted_orbits, result_degree, result_invariant_rank } => {
                let orbits: Vec<String> = contracted_orbits
                    .iter()
                    .map(|o| format!("{{{}}}", o.iter().map(DPClass::to_string).collect::<Vec<_>>().join(" ")))
                    .collect();
                write!(
                    f,
                    "Type II on {points}: contract {} -> degree {result_degree}, invariant rank {result_invariant_rank}{}",
                    orbits.join(" + "),
                    if self.lands_on_p2() { " (P2)" } else { "" }
                )
            }
        }
    }
}

fn pairwise_disjoint(a: &[DPClass], b: &[DPClass]) -> bool {
    a.iter().all(|x| b.iter().all(|y| x == y || pairing(x, y).expect("same n") == 0))
}

/// Elementary links starting from the blowup of `n` points permuted by `action`.
///
/// `general_position_ok` certifies that the blown-up points are in general
/// position, which is what makes the lattice classes actual curves; without
/// it the call is refused.
///
/// Type II candidates are all unions of class orbits of (−1)-classes that are
/// pairwise disjoint and bring the invariant rank down to one, except the
/// contraction of the exceptional curves themselves.
pub fn links_from_orbit(n: usize, action: &PermAction, general_position_ok: bool) -> Result<Vec<LinkDescriptor>> {
    if !general_position_ok {
        return Err(Error::Constraint(
            "links need the blown-up points to be in general position".into(),
        ));
    }
    check_points(n)?;
    if action.n() != n {
        return Err(Error::Input(format!("action on {} points, expected {n}", action.n())));
    }
    let mut links = Vec::new();
    for f in fibration_classes(action, FIBRATION_DEGREE_BOUND)? {
        links.push(LinkDescriptor { kind: LinkKind::TypeI { fibration_class: f }, n, general_position_required: true });
    }

    let classes = neg_one_classes(n)?;
    let orbits: Vec<Vec<DPClass>> =
        class_orbits(action, &classes)?.into_iter().filter(|o| pairwise_disjoint(o, o)).collect();
    let rank = invariant_rank(action);
    let needed = rank - 1;
    let exceptional: BTreeSet<DPClass> = (0..n).map(|i| DPClass::Exceptional { n, index: i }).collect();

    let mut chosen: Vec<usize> = Vec::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    fn search(orbits: &[Vec<DPClass>], needed: usize, start: usize, chosen: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
        if chosen.len() == needed {
            found.push(chosen.clone());
            return;
        }
        for i in start..orbits.len() {
            if chosen.iter().all(|&j| pairwise_disjoint(&orbits[i], &orbits[j])) {
                chosen.push(i);
                search(orbits, needed, i + 1, chosen, found);
                chosen.pop();
            }
        }
    }
    search(&orbits, needed, 0, &mut chosen, &mut found);

    for set in found {
        let contracted: Vec<Vec<DPClass>> = set.iter().map(|&i| orbits[i].clone()).collect();
        let all: BTreeSet<DPClass> = contracted.iter().flatten().cloned().collect();
        if all == exceptional {
            continue;
        }
        let t = all.len();
        links.push(LinkDescriptor {
            kind: LinkKind::TypeII {
                contracted_orbits: contracted,
                result_degree: (9 - n + t) as u32,
                result_invariant_rank: rank - set.len(),
            },
            n,
            general_position_required: true,
        });
    }
    Ok(links)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Vec<usize> {
        (0..n).map(|i| (i + 1) % n).collect()
    }

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| neg_one_classes(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 3, 6, 10, 16, 27, 56, 240]);
        assert!(neg_one_classes(0).is_err());
        assert!(neg_one_classes(9).is_err());
    }

    #[test]
    fn three_points() {
        let c = neg_one_classes(3).unwrap();
        let shown: Vec<String> = c.iter().map(DPClass::to_string).collect();
        assert_eq!(shown, ["E1", "E2", "E3", "(1; 1,1,0)", "(1; 1,0,1)", "(1; 0,1,1)"]);
        for x in &c {
            assert_eq!(x.self_intersection(), -1);
            assert_eq!(x.anticanonical_degree(), 1);
        }
        assert_eq!(pairing(&c[0], &c[3]).unwrap(), 1);
    }

    #[test]
    fn conics_through_five_of_six_are_disjoint() {
        let g1 = DPClass::plane(2, vec![0, 1, 1, 1, 1, 1]).unwrap();
        let g2 = DPClass::plane(2, vec![1, 0, 1, 1, 1, 1]).unwrap();
        assert_eq!(pairing(&g1, &g2).unwrap(), 0);
        assert!(pairing(&g1, &DPClass::exceptional(5, 0).unwrap()).is_err());
    }

    #[test]
    fn cremona_link() {
        let action = PermAction::new(3, vec![cycle(3)]).unwrap();
        let links = links_from_orbit(3, &action, true).unwrap();
        assert_eq!(links.len(), 1);
        assert!(links[0].lands_on_p2());
        assert!(links_from_orbit(3, &action, false).is_err());
    }

    #[test]
    fn fixed_point_gives_pencil_of_lines() {
        let links = links_from_orbit(1, &PermAction::trivial(1), true).unwrap();
        assert_eq!(
            links,
            vec![LinkDescriptor {
                kind: LinkKind::TypeI { fibration_class: DPClass::plane(1, vec![1]).unwrap() },
                n: 1,
                general_position_required: true
            }]
        );
    }

    #[test]
    fn rank_and_orbits() {
        let action = PermAction::new(6, vec![vec![1, 2, 0, 4, 5, 3]]).unwrap();
        assert_eq!(invariant_rank(&action), 3);
        let orbits = class_orbits(&action, &neg_one_classes(6).unwrap()).unwrap();
        assert_eq!(orbits.len(), 9);
        assert!(orbits.iter().all(|o| o.len() == 3));
        assert!(PermAction::new(3, vec![vec![0, 0, 1]]).is_err());
    }
}
