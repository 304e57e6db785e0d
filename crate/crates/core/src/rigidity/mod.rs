//! Action classification and birational rigidity verdicts for P² under a
//! finite group, plus the battery of checks in [`verify_paper`].
//!
//! A verdict is reached in three steps. A group fixing a point is not rigid:
//! blowing up the fixed point gives the pencil of lines through it. A
//! transitive group with a four-point orbit in general position is not
//! rigid: the blowup is a conic bundle. Otherwise every blowup of one or more
//! orbits with at most eight points in general position is examined, and the
//! group is rigid exactly when every link found leads back to P².

mod report;

use std::collections::BTreeMap;

use crate::error::Result;
use crate::orbits::{general_position, orbit, small_orbits, GenPosReport, Orbit, SmallOrbitReport};
use crate::picard::{links_from_orbit, LinkDescriptor, PermAction};
use crate::projgroup::{common_fixed_locus, element_order_histogram, GroupData, ProjPoint};

pub use report::{verify_paper, verify_paper_check, Check, PaperReport, CAVEAT, CHECK_NAMES};

/// Orbits of this size or smaller are the only ones a Del Pezzo blowup can use.
pub const LINK_ORBIT_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionClass {
    Intransitive { fixed_point: ProjPoint },
    /// Transitive with an orbit of size 3. `warning` is set when the smallest
    /// orbit has size 1 or 2 on a family line, a case outside the usual taxonomy.
    Imprimitive { size3_orbit: Orbit, warning: Option<String> },
    Primitive,
}

impl ActionClass {
    pub fn name(&self) -> &'static str {
        match self {
            ActionClass::Intransitive { .. } => "intransitive",
            ActionClass::Imprimitive { .. } => "imprimitive",
            ActionClass::Primitive => "primitive",
        }
    }
}

/// Intransitive when some point is fixed, imprimitive when there is an orbit
/// of size at most 3, primitive otherwise.
pub fn classify_action(g: &GroupData) -> Result<ActionClass> {
    let locus = common_fixed_locus(g)?;
    let mut preferred = None;
    for v in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
        let p = ProjPoint::from_ints(v)?;
        if locus.points.contains(&p) {
            preferred = Some(p);
            break;
        }
    }
    if let Some(p) = preferred.or_else(|| locus.points.first().cloned()) {
        return Ok(ActionClass::Intransitive { fixed_point: p });
    }
    if locus.whole_plane {
        return Ok(ActionClass::Intransitive { fixed_point: ProjPoint::from_ints([1, 0, 0])? });
    }
    if let Some(line) = locus.lines.first() {
        return Ok(ActionClass::Intransitive { fixed_point: first_point_on(line)? });
    }
    let report = small_orbits(g, 3)?;
    if let Some(o) = report.sporadic.iter().find(|o| o.size() == 3) {
        return Ok(ActionClass::Imprimitive { size3_orbit: o.clone(), warning: None });
    }
    if let Some(o) = report.sporadic.first() {
        return Ok(ActionClass::Imprimitive {
            size3_orbit: o.clone(),
            warning: Some(format!("no fixed point but an orbit of size {}", o.size())),
        });
    }
    if let Some(f) = report.families.first() {
        let o = orbit(g, &f.generic_point(g)?, LINK_ORBIT_BOUND)?;
        let warning = (o.size() != 3).then(|| format!("no fixed point but a family of orbits of size {}", o.size()));
        return Ok(ActionClass::Imprimitive { size3_orbit: o, warning });
    }
    Ok(ActionClass::Primitive)
}

fn first_point_on(line: &crate::projgroup::ProjLine) -> Result<ProjPoint> {
    for v in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
        let p = ProjPoint::from_ints(v)?;
        if line.contains(&p) {
            return Ok(p);
        }
    }
    let [a, b, _] = line.dual().coords().clone();
    let zero = crate::cyclo::CycloNum::zero(1)?;
    ProjPoint::new([b, -&a, zero])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallSymmetricType {
    A4,
    S4,
}

/// Identify A4 and S4 by order and element-order histogram, which separates
/// them from every other group of order 12 or 24.
pub fn is_a4_or_s4(g: &GroupData) -> Option<SmallSymmetricType> {
    let h = element_order_histogram(g);
    let want = |pairs: &[(u32, usize)]| h == pairs.iter().copied().collect::<BTreeMap<_, _>>();
    match g.proj_order() {
        12 if want(&[(1, 1), (2, 3), (3, 8)]) => Some(SmallSymmetricType::A4),
        24 if want(&[(1, 1), (2, 9), (3, 8), (4, 6)]) => Some(SmallSymmetricType::S4),
        _ => None,
    }
}

/// A union of orbits considered for blowing up.
#[derive(Debug, Clone)]
pub struct BlowupCandidate {
    pub orbits: Vec<Orbit>,
    pub general_position: GenPosReport,
    /// Empty when the points are not in general position.
    pub links: Vec<LinkDescriptor>,
}

impl BlowupCandidate {
    pub fn points(&self) -> Vec<ProjPoint> {
        self.orbits.iter().flat_map(|o| o.points().iter().cloned()).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::size).collect()
    }

    pub fn n(&self) -> usize {
        self.orbits.iter().map(Orbit::size).sum()
    }

    pub fn excluded(&self) -> bool {
        !self.general_position.ok
    }
}

/// Link that shows the plane is not rigid, with the points it blows up.
#[derive(Debug, Clone)]
pub struct Witness {
    pub points: Vec<ProjPoint>,
    pub orbit_sizes: Vec<usize>,
    pub link: LinkDescriptor,
}

/// One step of the reasoning behind a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reason {
    pub citation: &'static str,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub rigid: bool,
    pub action: ActionClass,
    pub isomorphism_type: Option<SmallSymmetricType>,
    pub witness: Option<Witness>,
    pub candidates: Vec<BlowupCandidate>,
    pub reasons: Vec<Reason>,
    /// For transitive groups: whether the A4/S4 test and the four-point-orbit
    /// test reach the same conclusion.
    pub routes_agree: Option<bool>,
}

/// Orbits of size at most 8: sporadic ones, one generic member per family and
/// the exceptional members of each family. When the group itself has at most
/// 8 elements a free orbit is added as well.
fn small_orbit_list(g: &GroupData, report: &SmallOrbitReport) -> Result<Vec<Orbit>> {
    let mut out: Vec<Orbit> = report.sporadic.clone();
    for f in &report.families {
        out.push(orbit(g, &f.generic_point(g)?, LINK_ORBIT_BOUND)?);
        out.extend(f.exceptional.iter().filter(|e| e.orbit.size() <= LINK_ORBIT_BOUND).map(|e| e.orbit.clone()));
    }
    if !report.complete {
        'search: for a in 1..20i64 {
            for b in 1..20i64 {
                let p = ProjPoint::from_ints([1, a, a * b + 7])?;
                let o = orbit(g, &p, g.proj_order())?;
                if o.size() == g.proj_order() {
                    out.push(o);
                    break 'search;
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn assess(g: &GroupData, orbits: Vec<Orbit>) -> Result<BlowupCandidate> {
    let points: Vec<ProjPoint> = orbits.iter().flat_map(|o| o.points().iter().cloned()).collect();
    let gp = general_position(&points)?;
    let links = if gp.ok {
        let action = PermAction::from_group(g, &points)?;
        links_from_orbit(points.len(), &action, true)?
    } else {
        vec![]
    };
    Ok(BlowupCandidate { orbits, general_position: gp, links })
}

/// Every union of distinct small orbits with at most 8 points.
pub fn blowup_candidates(g: &GroupData, report: &SmallOrbitReport) -> Result<Vec<BlowupCandidate>> {
    let orbits = small_orbit_list(g, report)?;
    let mut sets: Vec<Vec<usize>> = Vec::new();
    fn rec(orbits: &[Orbit], start: usize, total: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..orbits.len() {
            let t = total + orbits[i].size();
            if t <= LINK_ORBIT_BOUND {
                cur.push(i);
                out.push(cur.clone());
                rec(orbits, i + 1, t, cur, out);
                cur.pop();
            }
        }
    }
    rec(&orbits, 0, 0, &mut Vec::new(), &mut sets);
    sets.sort_by_key(|s| (s.len(), s.clone()));
    sets.into_iter().map(|s| assess(g, s.into_iter().map(|i| orbits[i].clone()).collect())).collect()
}

const CITE_FIXED_POINT: &str = "groups fixing a point: blowing up the point gives the pencil of lines";
const CITE_CONIC_BUNDLE: &str = "A4 and S4: blowing up the four-point orbit gives a conic bundle";
const CITE_SMALL_ORBITS: &str = "a link blows up orbits with at most 8 points in general position";
const CITE_ALL_TO_PLANE: &str = "every link from a small orbit returns to P2";

/// Decide whether P² is birationally rigid for the group.
pub fn rigidity_verdict(g: &GroupData) -> Result<Verdict> {
    let action = classify_action(g)?;
    let isomorphism_type = is_a4_or_s4(g);
    let mut reasons = Vec::new();

    if let ActionClass::Intransitive { fixed_point } = &action {
        let o = orbit(g, fixed_point, 1)?;
        let link = links_from_orbit(1, &PermAction::trivial(1), true)?
            .into_iter()
            .find(LinkDescriptor::is_type_i)
            .expect("a fixed point always gives the pencil of lines");
        reasons.push(Reason {
            citation: CITE_FIXED_POINT,
            message: format!("fixed point {fixed_point}; {link}"),
        });
        return Ok(Verdict {
            rigid: false,
            action,
            isomorphism_type,
            witness: Some(Witness { points: o.points().to_vec(), orbit_sizes: vec![1], link }),
            candidates: vec![],
            reasons,
            routes_agree: None,
        });
    }

    let report = small_orbits(g, LINK_ORBIT_BOUND)?;
    let candidates = blowup_candidates(g, &report)?;
    reasons.push(Reason {
        citation: CITE_SMALL_ORBITS,
        message: format!(
            "{} sporadic orbit(s) of sizes {:?}, {} line famil{} and {} blowup candidate(s)",
            report.sporadic.len(),
            report.sporadic_sizes(),
            report.families.len(),
            if report.families.len() == 1 { "y" } else { "ies" },
            candidates.len()
        ),
    });
    for c in candidates.iter().filter(|c| c.excluded()) {
        reasons.push(Reason {
            citation: CITE_SMALL_ORBITS,
            message: format!("orbits of sizes {:?} excluded: not in general position ({})", c.orbit_sizes(), c.general_position),
        });
    }

    let four_point = candidates.iter().find_map(|c| {
        (c.orbits.len() == 1 && c.n() == 4 && !c.excluded())
            .then(|| c.links.iter().find(|l| l.is_type_i()).map(|l| (c, l.clone())))
            .flatten()
    });
    let routes_agree = Some(four_point.is_some() == isomorphism_type.is_some());
    let via_four_points = four_point.is_some();

    let witness = if let Some((c, link)) = four_point {
        reasons.push(Reason { citation: CITE_CONIC_BUNDLE, message: link.to_string() });
        Some(Witness { points: c.points(), orbit_sizes: c.orbit_sizes(), link })
    } else {
        candidates.iter().find_map(|c| {
            c.links.iter().find(|l| !l.lands_on_p2()).map(|l| Witness {
                points: c.points(),
                orbit_sizes: c.orbit_sizes(),
                link: l.clone(),
            })
        })
    };
    if witness.is_none() {
        let count: usize = candidates.iter().map(|c| c.links.len()).sum();
        reasons.push(Reason {
            citation: CITE_ALL_TO_PLANE,
            message: format!("{count} link(s) found, all lead back to P2"),
        });
    } else if !via_four_points {
        let w = witness.as_ref().expect("set above");
        reasons.push(Reason { citation: CITE_SMALL_ORBITS, message: format!("link away from P2: {}", w.link) });
    }
    Ok(Verdict { rigid: witness.is_none(), action, isomorphism_type, witness, candidates, reasons, routes_agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;
    use crate::projgroup::closure;

    fn group(id: &str) -> GroupData {
        closure(&build(id).unwrap().generators, 10_000).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_action(&group("INTRANSITIVE_SAMPLE")).unwrap(),
            ActionClass::Intransitive { fixed_point: ProjPoint::from_ints([1, 0, 0]).unwrap() }
        );
        match classify_action(&group("S4_MONO")).unwrap() {
            ActionClass::Imprimitive { size3_orbit, warning } => {
                assert_eq!(size3_orbit.size(), 3);
                assert!(warning.is_none());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(classify_action(&group("E108")).unwrap(), ActionClass::Primitive);
    }

    #[test]
    fn small_symmetric_groups() {
        assert_eq!(is_a4_or_s4(&group("A4_MONO")), Some(SmallSymmetricType::A4));
        assert_eq!(is_a4_or_s4(&group("S4_MONO")), Some(SmallSymmetricType::S4));
        assert_eq!(is_a4_or_s4(&group("C3xC3_MONO")), None);
    }

    #[test]
    fn a4_is_not_rigid() {
        let v = rigidity_verdict(&group("A4_MONO")).unwrap();
        assert!(!v.rigid);
        assert_eq!(v.witness.unwrap().orbit_sizes, vec![4]);
        assert_eq!(v.routes_agree, Some(true));
    }
}
