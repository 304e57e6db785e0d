//! Projective canonical forms and finite subgroups of PGL(3,C).

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_traits::{One, Signed};

use crate::cyclo::{checked_lcm, CycloNum, NumKey};
use crate::error::{Error, Result};
use crate::linalg::{root_of_unity_eigenvalues, Mat3, Subspace, DEFAULT_ORDER_CAP};

/// Default cap on the number of elements produced by [`closure`].
pub const DEFAULT_GROUP_CAP: usize = 10_000;

fn lcm_of(xs: &[CycloNum]) -> Result<u32> {
    xs.iter().try_fold(1, |n, x| checked_lcm(n, x.conductor()))
}

/// Scale so the first nonzero entry is 1. Entries stay at their conductor.
pub(crate) fn normalize_raw(v: &[CycloNum; 3]) -> Result<[CycloNum; 3]> {
    let lead = v.iter().find(|x| !x.is_zero()).ok_or_else(|| Error::Input("zero vector".into()))?;
    if lead.is_one() {
        return Ok(v.clone());
    }
    let inv = lead.inv()?;
    Ok(std::array::from_fn(|i| &v[i] * &inv))
}

pub(crate) fn raw_key(v: &[CycloNum; 3]) -> [NumKey; 3] {
    std::array::from_fn(|i| v[i].key())
}

pub(crate) fn cross(a: &[CycloNum; 3], b: &[CycloNum; 3]) -> [CycloNum; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub(crate) fn dot(a: &[CycloNum; 3], b: &[CycloNum; 3]) -> CycloNum {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

/// A point of P², stored with first nonzero coordinate 1 and every
/// coordinate at the smallest conductor that holds all three.
#[derive(Clone)]
pub struct ProjPoint {
    coords: [CycloNum; 3],
}

impl ProjPoint {
    pub fn new(raw: [CycloNum; 3]) -> Result<Self> {
        let v = normalize_raw(&raw)?;
        let n = lcm_of(&v)?;
        let v: [CycloNum; 3] = {
            let mut out = v.clone();
            for x in out.iter_mut() {
                *x = x.embed(n)?;
            }
            out
        };
        let d = v.iter().try_fold(1, |acc, x| checked_lcm(acc, x.minimal_conductor()))?;
        let mut coords = v;
        for x in coords.iter_mut() {
            *x = x.restrict(d)?;
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(v: [i64; 3]) -> Result<Self> {
        Self::new([
            CycloNum::from_int(v[0], 1)?,
            CycloNum::from_int(v[1], 1)?,
            CycloNum::from_int(v[2], 1)?,
        ])
    }

    pub fn coords(&self) -> &[CycloNum; 3] {
        &self.coords
    }

    pub fn conductor(&self) -> u32 {
        self.coords[0].conductor()
    }

    /// Coordinates embedded at a multiple of [`ProjPoint::conductor`].
    pub fn coords_at(&self, n: u32) -> Result<[CycloNum; 3]> {
        Ok([self.coords[0].embed(n)?, self.coords[1].embed(n)?, self.coords[2].embed(n)?])
    }

    /// Text form with `z` read as ζ_n for the given multiple `n` of the conductor.
    pub fn display_at(&self, n: u32) -> String {
        let c = self.coords_at(n).unwrap_or_else(|_| self.coords.clone());
        format!("({} : {} : {})", c[0], c[1], c[2])
    }

    fn key(&self) -> [NumKey; 3] {
        raw_key(&self.coords)
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for ProjPoint {}

impl Hash for ProjPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_at(self.conductor()))?;
        if self.conductor() > 2 {
            write!(f, " (z = ζ{})", self.conductor())?;
        }
        Ok(())
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjPoint{self}")
    }
}

/// Points written over one shared conductor, which is returned alongside.
pub fn display_points(points: &[ProjPoint]) -> (u32, Vec<String>) {
    let n = points.iter().fold(1, |n, p| num_integer::lcm(n, p.conductor()));
    (n, points.iter().map(|p| p.display_at(n)).collect())
}

/// A line of P² given by dual coordinates `(a:b:c)`, the zero set of `ax+by+cz`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    dual: ProjPoint,
}

impl ProjLine {
    pub fn new(dual: [CycloNum; 3]) -> Result<Self> {
        Ok(ProjLine { dual: ProjPoint::new(dual)? })
    }

    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Result<Self> {
        if p == q {
            return Err(Error::Input("a line needs two distinct points".into()));
        }
        Self::new(cross(p.coords(), q.coords()))
    }

    pub fn dual(&self) -> &ProjPoint {
        &self.dual
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        dot(self.dual.coords(), p.coords()).is_zero()
    }

    pub fn meet(&self, other: &ProjLine) -> Result<ProjPoint> {
        if self == other {
            return Err(Error::Input("identical lines have no single intersection".into()));
        }
        ProjPoint::new(cross(self.dual.coords(), other.dual.coords()))
    }

    /// Image under a matrix acting on points.
    pub fn image(&self, g: &Mat3) -> Result<Self> {
        Self::new(g.inverse_transpose()?.apply(self.dual.coords()))
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}", self.dual)
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjLine{}", self.dual)
    }
}

/// A matrix modulo scalars, scaled so the first nonzero entry in row-major
/// order is 1.
#[derive(Clone)]
pub struct ProjElement {
    matrix: Mat3,
}

pub(crate) type ElemKey = Vec<NumKey>;

impl ProjElement {
    pub fn new(a: &Mat3) -> Result<Self> {
        if a.det().is_zero() {
            return Err(Error::Input("singular matrix has no projective class".into()));
        }
        let lead = a
            .rows()
            .iter()
            .flatten()
            .find(|x| !x.is_zero())
            .expect("invertible matrix has a nonzero entry");
        let matrix = if lead.is_one() { a.clone() } else { a.scale(&lead.inv()?) };
        Ok(ProjElement { matrix })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn compose(&self, other: &ProjElement) -> ProjElement {
        ProjElement::new(&(&self.matrix * &other.matrix)).expect("product of invertibles")
    }

    pub fn embed(&self, n: u32) -> Result<Self> {
        Ok(ProjElement { matrix: self.matrix.embed(n)? })
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        ProjPoint::new(self.matrix.apply(p.coords()))
    }

    pub(crate) fn key(&self) -> ElemKey {
        self.matrix.rows().iter().flatten().map(|x| x.key()).collect()
    }
}

impl PartialEq for ProjElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}
impl Eq for ProjElement {}

impl fmt::Debug for ProjElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjElement{:?}", self.matrix)
    }
}

pub fn normalize_point(raw: [CycloNum; 3]) -> Result<ProjPoint> {
    ProjPoint::new(raw)
}

pub fn normalize_element(a: &Mat3) -> Result<ProjElement> {
    ProjElement::new(a)
}

/// A finite subgroup of PGL(3,C) with every element enumerated.
///
/// `reps[i]` is a product of generators that maps to `elements[i]`; when the
/// generators have finite order these representatives do too, which is what
/// eigenvalue computations need.
#[derive(Clone)]
pub struct GroupData {
    conductor: u32,
    generators: Vec<Mat3>,
    elements: Vec<ProjElement>,
    reps: Vec<Mat3>,
    index: HashMap<ElemKey, usize>,
    /// `cayley[i][j]` is the index of `elements[i]·gen_j` over the deduplicated
    /// nonidentity generators used by the closure.
    cayley: Vec<Vec<usize>>,
    /// Generator word (indices into the closure generators) for each element.
    words: Vec<Vec<u16>>,
    orders: OnceLock<Vec<u32>>,
}

impl fmt::Debug for GroupData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupData")
            .field("conductor", &self.conductor)
            .field("generators", &self.generators.len())
            .field("proj_order", &self.elements.len())
            .finish()
    }
}

/// Breadth-first closure of the generators inside PGL(3,C).
///
/// Generators are embedded at their common conductor and visited in sorted
/// canonical order, so the element order does not depend on how the input
/// list was arranged.
pub fn closure(generators: &[Mat3], cap: usize) -> Result<GroupData> {
    let n = generators.iter().try_fold(1, |n, g| checked_lcm(n, g.conductor()))?;
    let mut gens: Vec<(ProjElement, Mat3)> = Vec::new();
    for g in generators {
        let g = g.embed(n)?;
        gens.push((ProjElement::new(&g)?, g));
    }
    gens.sort_by_key(|(e, _)| e.key());
    gens.dedup_by(|a, b| a.0 == b.0);
    gens.retain(|(e, _)| !e.is_identity());

    let id = Mat3::identity(n)?;
    let mut elements = vec![ProjElement::new(&id)?];
    let mut reps = vec![id];
    let mut index = HashMap::new();
    index.insert(elements[0].key(), 0);
    let mut cayley: Vec<Vec<usize>> = vec![Vec::with_capacity(gens.len())];
    let mut words: Vec<Vec<u16>> = vec![vec![]];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (j, (_, g)) in gens.iter().enumerate() {
            let prod = &reps[i] * g;
            let e = ProjElement::new(&prod)?;
            let key = e.key();
            if let Some(&k) = index.get(&key) {
                cayley[i].push(k);
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::GroupTooLarge { cap });
            }
            let k = elements.len();
            index.insert(key, k);
            queue.push_back(k);
            elements.push(e);
            reps.push(prod);
            cayley[i].push(k);
            cayley.push(Vec::with_capacity(gens.len()));
            let mut w = words[i].clone();
            w.push(j as u16);
            words.push(w);
        }
    }
    Ok(GroupData {
        conductor: n,
        generators: generators.iter().map(|g| g.embed(n)).collect::<Result<_>>()?,
        elements,
        reps,
        index,
        cayley,
        words,
        orders: OnceLock::new(),
    })
}

impl GroupData {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn generators(&self) -> &[Mat3] {
        &self.generators
    }

    pub fn elements(&self) -> &[ProjElement] {
        &self.elements
    }

    /// Representative matrix of `elements()[i]`.
    pub fn rep(&self, i: usize) -> &Mat3 {
        &self.reps[i]
    }

    pub fn proj_order(&self) -> usize {
        self.elements.len()
    }

    /// Index of the element, after embedding it at the group conductor.
    pub fn index_of(&self, e: &ProjElement) -> Option<usize> {
        let n = checked_lcm(self.conductor, e.matrix().conductor()).ok()?;
        if n != self.conductor {
            // An element needing a bigger field cannot be in the group unless
            // its canonical form happens to be expressible here.
            let e = e.matrix();
            let back: Option<Vec<CycloNum>> = e
                .rows()
                .iter()
                .flatten()
                .map(|x| {
                    let m = x.minimal_conductor();
                    (self.conductor % m == 0).then(|| x.minimized().embed(self.conductor).ok()).flatten()
                })
                .collect();
            let back = back?;
            let key: ElemKey = back.iter().map(|x| x.key()).collect();
            return self.index.get(&key).copied();
        }
        let e = e.embed(self.conductor).ok()?;
        self.index.get(&e.key()).copied()
    }

    pub fn contains(&self, e: &ProjElement) -> bool {
        self.index_of(e).is_some()
    }

    /// Index of `elements[a]·elements[b]`, read off the Cayley table.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.words[b].iter().fold(a, |cur, &j| self.cayley[cur][j as usize])
    }

    /// Projective order of each element, in element order.
    pub fn element_orders(&self) -> &[u32] {
        self.orders.get_or_init(|| {
            (0..self.elements.len())
                .map(|i| {
                    let mut cur = i;
                    let mut t = 1;
                    while cur != 0 {
                        cur = self.mul_index(cur, i);
                        t += 1;
                    }
                    t
                })
                .collect()
        })
    }

    /// Indices of the powers `g, g², …` of an element up to the identity.
    pub fn powers(&self, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        let mut cur = i;
        while cur != 0 {
            cur = self.mul_index(cur, i);
            out.push(cur);
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<ProjElement> =
            self.generators.iter().map(|g| ProjElement::new(g).expect("generator")).collect();
        gens.iter().all(|a| gens.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Images of the generators, deduplicated and without the identity.
    pub fn generator_elements(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .generators
            .iter()
            .filter_map(|g| self.index_of(&ProjElement::new(g).ok()?))
            .filter(|&i| !self.elements[i].is_identity())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Element indices of one generator per cyclic subgroup of prime order.
    pub fn prime_order_subgroup_reps(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let mut seen: HashSet<usize> = HashSet::new();
        let mut out = Vec::new();
        for (i, &o) in orders.iter().enumerate() {
            if o < 2 || !is_prime(o) || seen.contains(&i) {
                continue;
            }
            out.push(i);
            seen.extend(self.powers(i));
        }
        out
    }

    pub fn apply(&self, i: usize, p: &ProjPoint) -> Result<ProjPoint> {
        self.elements[i].apply(p)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Order of the closure of the generators inside GL(3,C), i.e. without
/// identifying scalar multiples.
pub fn sl_closure_order(generators: &[Mat3], cap: usize) -> Result<usize> {
    let n = generators.iter().try_fold(1, |n, g| checked_lcm(n, g.conductor()))?;
    let gens: Vec<Mat3> = generators.iter().map(|g| g.embed(n)).collect::<Result<_>>()?;
    let key = |m: &Mat3| -> ElemKey { m.rows().iter().flatten().map(|x| x.key()).collect() };
    let id = Mat3::identity(n)?;
    let mut seen: HashSet<ElemKey> = HashSet::from([key(&id)]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let p = &m * g;
            if seen.insert(key(&p)) {
                if seen.len() > cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                queue.push_back(p);
            }
        }
    }
    Ok(seen.len())
}

pub fn element_order_histogram(g: &GroupData) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &o in g.element_orders() {
        *h.entry(o).or_insert(0) += 1;
    }
    h
}

/// Points and lines fixed by the whole group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedLocus {
    pub points: Vec<ProjPoint>,
    pub lines: Vec<ProjLine>,
    /// Set when every generator is scalar, so the whole plane is fixed.
    pub whole_plane: bool,
}

impl FixedLocus {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.lines.is_empty() && !self.whole_plane
    }
}

pub(crate) fn subspace_point(s: &Subspace) -> Result<ProjPoint> {
    let v = &s.basis[0];
    ProjPoint::new([v[0].clone(), v[1].clone(), v[2].clone()])
}

pub(crate) fn subspace_line(s: &Subspace) -> Result<ProjLine> {
    let a: [CycloNum; 3] = std::array::from_fn(|i| s.basis[0][i].clone());
    let b: [CycloNum; 3] = std::array::from_fn(|i| s.basis[1][i].clone());
    ProjLine::new(cross(&a, &b))
}

/// Common eigenvectors of all generators: isolated fixed points plus lines
/// fixed pointwise.
pub fn common_fixed_locus(g: &GroupData) -> Result<FixedLocus> {
    let gens: Vec<&Mat3> = g
        .generators
        .iter()
        .filter(|m| m.as_scalar().is_none())
        .collect();
    if gens.is_empty() {
        return Ok(FixedLocus { points: vec![], lines: vec![], whole_plane: true });
    }
    let spaces: Vec<Vec<Subspace>> = gens
        .iter()
        .map(|m| Ok(eigen_spaces_projective(m)?))
        .collect::<Result<_>>()?;
    let mut current: Vec<Subspace> = spaces[0].clone();
    for next in &spaces[1..] {
        let mut merged = Vec::new();
        for a in &current {
            for b in next {
                let c = a.intersect(b);
                if c.dim() > 0 {
                    merged.push(c);
                }
            }
        }
        current = merged;
    }
    let mut points = Vec::new();
    let mut lines = Vec::new();
    for s in &current {
        match s.dim() {
            1 => points.push(subspace_point(s)?),
            2 => lines.push(subspace_line(s)?),
            _ => {}
        }
    }
    points.sort();
    points.dedup();
    lines.sort();
    lines.dedup();
    Ok(FixedLocus { points, lines, whole_plane: false })
}

/// A scalar multiple of `m` of finite order (`m` itself when it already is).
pub(crate) fn finite_order_multiple(m: &Mat3) -> Result<Mat3> {
    let det_is_unit = matches!(m.det().as_scaled_root_of_unity(), Some((r, _)) if r.abs().is_one());
    if det_is_unit && m.order(DEFAULT_ORDER_CAP).is_ok() {
        return Ok(m.clone());
    }
    // m^t = c·I for the projective order t; dividing by a t-th root of c
    // leaves a matrix of finite order.
    let pe = ProjElement::new(m)?;
    let mut t = 1;
    let mut cur = pe.clone();
    while !cur.is_identity() {
        cur = cur.compose(&pe);
        t += 1;
        if t > DEFAULT_ORDER_CAP {
            return Err(Error::NotFiniteOrder { cap: DEFAULT_ORDER_CAP });
        }
    }
    let power = pe.matrix().pow(t as i64)?;
    let c = power.as_scalar().expect("projective order reached");
    let r = root_in_field(&c, t).ok_or_else(|| {
        Error::MethodInapplicable("no finite-order scalar multiple in the field".into())
    })?;
    Ok(pe.matrix().scale(&r.inv()?))
}

/// Eigenspaces of `m`, computed on a finite-order scalar multiple.
pub(crate) fn eigen_spaces_projective(m: &Mat3) -> Result<Vec<Subspace>> {
    let f = finite_order_multiple(m)?;
    Ok(root_of_unity_eigenvalues(&f)?.into_iter().map(|e| e.space).collect())
}

/// A `t`-th root of `c` of the form `q·ζ_N^j` for a rational `q`, when one exists.
fn root_in_field(c: &CycloNum, t: u32) -> Option<CycloNum> {
    let (r, _) = c.as_scaled_root_of_unity()?;
    let n = c.conductor();
    let q = rational_root(&r, t)?;
    for big in [n, checked_lcm(n, t).ok()?, checked_lcm(n, 2 * t).ok()?] {
        for j in 0..big {
            let z = CycloNum::zeta_pow(big, j as i64).ok()?;
            let cand = &CycloNum::from_rational(&q, big).ok()? * &z;
            if cand.pow(t as i64).ok()? == *c {
                return Some(cand);
            }
        }
    }
    None
}

fn rational_root(r: &crate::cyclo::Rational, t: u32) -> Option<crate::cyclo::Rational> {
    let abs = r.abs();
    let num = abs.numer().nth_root(t);
    let den = abs.denom().nth_root(t);
    if num.pow(t) != *abs.numer() || den.pow(t) != *abs.denom() {
        return None;
    }
    Some(crate::cyclo::Rational::new(num, den))
}

/// Conjugate every element by `m`: `A ↦ m·A·m⁻¹`.
pub fn conjugate_group(g: &GroupData, m: &Mat3) -> Result<GroupData> {
    let mi = m.inv().map_err(|_| Error::Input("conjugating matrix is singular".into()))?;
    let n = checked_lcm(g.conductor, m.conductor())?;
    let conj = |a: &Mat3| -> Mat3 { &(m * a) * &mi };
    let generators: Vec<Mat3> =
        g.generators.iter().map(|a| conj(a).embed(n)).collect::<Result<_>>()?;
    let mut elements = Vec::with_capacity(g.elements.len());
    let mut reps = Vec::with_capacity(g.reps.len());
    let mut index = HashMap::new();
    for (i, r) in g.reps.iter().enumerate() {
        let c = conj(r).embed(n)?;
        let e = ProjElement::new(&c)?;
        index.insert(e.key(), i);
        elements.push(e);
        reps.push(c);
    }
    Ok(GroupData {
        conductor: n,
        generators,
        elements,
        reps,
        index,
        cayley: g.cayley.clone(),
        words: g.words.clone(),
        orders: g.orders.clone(),
    })
}

/// Same set of projective elements, compared inside the lcm field.
pub fn groups_projectively_equal(a: &GroupData, b: &GroupData) -> Result<bool> {
    if a.proj_order() != b.proj_order() {
        return Ok(false);
    }
    let n = checked_lcm(a.conductor, b.conductor)?;
    let keys = |g: &GroupData| -> Result<HashSet<ElemKey>> {
        g.elements.iter().map(|e| Ok(e.embed(n)?.key())).collect()
    };
    Ok(keys(a)? == keys(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_mat(rows: [[i64; 3]; 3]) -> Mat3 {
        Mat3::from_ints(1, rows).unwrap()
    }

    #[test]
    fn point_normalization() {
        let p = ProjPoint::from_ints([2, 2, 2]).unwrap();
        assert_eq!(p, ProjPoint::from_ints([1, 1, 1]).unwrap());
        let three = CycloNum::from_int(3, 3).unwrap();
        let w = CycloNum::zeta(3).unwrap();
        let p = ProjPoint::new([CycloNum::zero(3).unwrap(), &three * &w, three.clone()]).unwrap();
        assert!(p.coords()[1].is_one());
        assert_eq!(p.coords()[2], CycloNum::zeta_pow(3, 2).unwrap());
        assert!(ProjPoint::from_ints([0, 0, 0]).is_err());
    }

    #[test]
    fn points_from_different_fields_hash_alike() {
        let a = ProjPoint::new([
            CycloNum::one(12).unwrap(),
            CycloNum::zeta_pow(12, 4).unwrap(),
            CycloNum::zero(12).unwrap(),
        ])
        .unwrap();
        let b = ProjPoint::new([
            CycloNum::one(3).unwrap(),
            CycloNum::zeta(3).unwrap(),
            CycloNum::zero(3).unwrap(),
        ])
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.conductor(), 3);
    }

    #[test]
    fn scalar_matrix_is_projective_identity() {
        let w = CycloNum::zeta(3).unwrap();
        let m = Mat3::diagonal(w.clone(), w.clone(), w).unwrap();
        assert!(ProjElement::new(&m).unwrap().is_identity());
        let z = int_mat([[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
        assert!(ProjElement::new(&z).is_err());
    }

    #[test]
    fn closure_of_identity_and_tau() {
        let id = Mat3::identity(1).unwrap();
        assert_eq!(closure(&[id], 10).unwrap().proj_order(), 1);
        let t = int_mat([[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
        let g = closure(&[t.clone()], 10).unwrap();
        assert_eq!(g.proj_order(), 3);
        assert_eq!(element_order_histogram(&g), BTreeMap::from([(1, 1), (3, 2)]));
        assert!(closure(&[t], 2).is_err());
    }

    #[test]
    fn fixed_locus_of_reflection_has_a_line() {
        let r = int_mat([[1, 0, 0], [0, -1, 0], [0, 0, -1]]);
        let g = closure(&[r], 10).unwrap();
        let fl = common_fixed_locus(&g).unwrap();
        assert_eq!(fl.points, vec![ProjPoint::from_ints([1, 0, 0]).unwrap()]);
        assert_eq!(fl.lines.len(), 1);
        assert!(fl.lines[0].contains(&ProjPoint::from_ints([0, 1, 5]).unwrap()));
    }

    #[test]
    fn eigenspaces_of_non_normalized_matrix() {
        let m = int_mat([[0, 2, 0], [0, 0, 2], [2, 0, 0]]);
        let spaces = eigen_spaces_projective(&m).unwrap();
        assert_eq!(spaces.len(), 3);
    }

    #[test]
    fn line_through_and_meet() {
        let p = ProjPoint::from_ints([1, 0, 0]).unwrap();
        let q = ProjPoint::from_ints([0, 1, 0]).unwrap();
        let l = ProjLine::through(&p, &q).unwrap();
        assert!(l.contains(&ProjPoint::from_ints([1, 1, 0]).unwrap()));
        let m = ProjLine::through(&p, &ProjPoint::from_ints([0, 0, 1]).unwrap()).unwrap();
        assert_eq!(l.meet(&m).unwrap(), p);
    }
}
