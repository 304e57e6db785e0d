use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::catalog::{build, cube_root_point, fixtures, survey_t_groups, SurveyCell, IDS};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::linalg::Mat3;
use crate::orbits::{
    eigen_orbit_sizes, general_position, induced_permutation, invariant_conics, orbit, small_orbits,
    ExceptionalReason, GenPosFailure, Orbit, SmallOrbitReport,
};
use crate::picard::{
    class_orbits, invariant_rank, links_from_orbit, neg_one_classes, DPClass, LinkDescriptor, LinkKind,
    PermAction,
};
use crate::projgroup::{
    closure, conjugate_group, display_points, element_order_histogram, groups_projectively_equal, sl_closure_order, GroupData,
    ProjElement, ProjLine, ProjPoint, DEFAULT_GROUP_CAP,
};

use super::{classify_action, is_a4_or_s4, rigidity_verdict, ActionClass, LINK_ORBIT_BOUND};

/// Printed at the top of every report.
pub const CAVEAT: &str = "Rigidity is decided from orbits of size at most 8, general position and \
Picard-lattice links. For groups outside the catalog the verdict is sound only given that every \
equivariant birational map factors into elementary links.";

/// Result of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub citation: &'static str,
    pub pass: bool,
    pub evidence: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaperReport {
    pub caveat: &'static str,
    /// Sorted by name.
    pub checks: Vec<Check>,
}

impl PaperReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "caveat": self.caveat,
            "checks": self.checks.iter().map(|c| json!({
                "check": c.name,
                "citation": c.citation,
                "pass": c.pass,
                "evidence": c.evidence,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# {}", self.caveat).expect("string write");
        for c in &self.checks {
            writeln!(out, "{} {} [{}]", if c.pass { "PASS" } else { "FAIL" }, c.name, c.citation).expect("string write");
            writeln!(out, "    evidence: {}", c.evidence).expect("string write");
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        writeln!(out, "{passed}/{} checks passed", self.checks.len()).expect("string write");
        out
    }
}

struct Context {
    groups: HashMap<&'static str, GroupData>,
    reports: HashMap<&'static str, SmallOrbitReport>,
}

impl Context {
    fn new(ids: &[&'static str]) -> Result<Self> {
        let built: Vec<(&'static str, GroupData, SmallOrbitReport)> = ids
            .par_iter()
            .map(|&id| {
                let g = closure(&build(id)?.generators, DEFAULT_GROUP_CAP)?;
                let r = small_orbits(&g, LINK_ORBIT_BOUND)?;
                Ok((id, g, r))
            })
            .collect::<Result<_>>()?;
        let mut groups = HashMap::new();
        let mut reports = HashMap::new();
        for (id, g, r) in built {
            groups.insert(id, g);
            reports.insert(id, r);
        }
        Ok(Context { groups, reports })
    }

    fn group(&self, id: &str) -> &GroupData {
        &self.groups[id]
    }

    fn report(&self, id: &str) -> &SmallOrbitReport {
        &self.reports[id]
    }
}

type CheckFn = fn(&Context) -> Result<(bool, Value)>;

struct CheckDef {
    name: &'static str,
    citation: &'static str,
    groups: &'static [&'static str],
    run: CheckFn,
}

const ALL: &[&str] = &IDS;

const CHECKS: &[CheckDef] = &[
    CheckDef {
        name: "a4_conic_memberships",
        citation: "A4 geometry: four-point orbits and six-point orbits on the invariant conics C1, C2, C3",
        groups: &["A4_MONO"],
        run: a4_conic_memberships,
    },
    CheckDef {
        name: "a4_orbit_inventory",
        citation: "monomial conclusion: A4 has one orbit of size 3, three of size 4 and a family of size 6",
        groups: &["A4_MONO"],
        run: a4_orbit_inventory,
    },
    CheckDef {
        name: "a5_eigen_orbit_sizes",
        citation: "A5: eigenpoints of elements of order 5 and 3 have orbits of sizes 6, 10 and 12 or 20",
        groups: &["A5_I", "A5_II"],
        run: a5_eigen_orbit_sizes,
    },
    CheckDef {
        name: "a5_line_transitivity",
        citation: "A5: the fifteen lines through pairs of the six-point orbit form one orbit",
        groups: &["A5_I"],
        run: a5_line_transitivity,
    },
    CheckDef {
        name: "a5_orbit_inventory",
        citation: "A5: one orbit of size 6, in general position, and no other orbit of size at most 8",
        groups: &["A5_I", "A5_II", "A5_W"],
        run: a5_orbit_inventory,
    },
    CheckDef {
        name: "action_classes",
        citation: "intransitive, imprimitive and primitive actions",
        groups: ALL,
        run: action_classes,
    },
    CheckDef {
        name: "bertini_link",
        citation: "C7:C3: blowing up a seven-point orbit gives the Bertini involution back to P2",
        groups: &["T_2_7", "T_4_7"],
        run: bertini_link,
    },
    CheckDef {
        name: "catalog_orders",
        citation: "named finite subgroups of SL(3,C) and their images in PGL(3,C)",
        groups: ALL,
        run: catalog_orders,
    },
    CheckDef {
        name: "conic_bundle_link",
        citation: "A4 and S4: blowing up the four-point orbit gives a conic bundle",
        groups: &["A4_MONO", "S4_MONO", "T_2_7"],
        run: conic_bundle_link,
    },
    CheckDef {
        name: "cremona_link",
        citation: "blowing up the distinguished three-point orbit gives the Cremona involution",
        groups: &["C3xC3_MONO", "A4_MONO", "S4_MONO", "T_2_7", "T_4_7", "T_4_21", "T_16_21"],
        run: cremona_link,
    },
    CheckDef {
        name: "cubic_surface_links",
        citation: "E108 and A5: the six-point blowups are cubic surfaces contracting the six conics back to P2",
        groups: &["E108", "A5_I", "A5_II"],
        run: cubic_surface_links,
    },
    CheckDef {
        name: "fixed_point_link",
        citation: "groups fixing a point: blowing up the point gives the pencil of lines",
        groups: &["INTRANSITIVE_SAMPLE"],
        run: fixed_point_link,
    },
    CheckDef {
        name: "hessian_e108_orbits",
        citation: "Hessian chain: E108 has exactly the two listed six-point orbits, both in general position",
        groups: &["E108"],
        run: hessian_e108_orbits,
    },
    CheckDef {
        name: "hessian_f216_merge",
        citation: "Hessian chain: F216 combines the two six-point orbits into one orbit of size 12",
        groups: &["F216"],
        run: hessian_f216_merge,
    },
    CheckDef {
        name: "hessian_no_small_orbits",
        citation: "Hessian chain: F216 and H648 have no orbits of size at most 8",
        groups: &["F216", "H648"],
        run: hessian_no_small_orbits,
    },
    CheckDef {
        name: "klein_valentiner_orbits",
        citation: "PSL(2,7) and 3.A6: no orbits of size at most 8; eigenpoint orbits of sizes 21, 24, 28, 56 and 36, 45, 72, 90",
        groups: &["PSL27", "PSL27_W", "A6_3FOLD"],
        run: klein_valentiner_orbits,
    },
    CheckDef {
        name: "non_rigidity_routes_agree",
        citation: "rigid if and only if transitive and not isomorphic to A4 or S4",
        groups: ALL,
        run: non_rigidity_routes_agree,
    },
    CheckDef {
        name: "order_nine_double_orbit_links",
        citation: "order-9 group: blowing up two three-point orbits, 27 curves in 9 orbits, contractions back to P2",
        groups: &["C3xC3_MONO"],
        run: order_nine_double_orbit_links,
    },
    CheckDef {
        name: "order_nine_orbit_inventory",
        citation: "monomial conclusion: the order-9 group has four orbits of size 3, none on a line",
        groups: &["C3xC3_MONO"],
        run: order_nine_orbit_inventory,
    },
    CheckDef {
        name: "order_nine_structure",
        citation: "monomial conclusion: the order-9 group generated by S and T",
        groups: &["C3xC3_MONO"],
        run: order_nine_structure,
    },
    CheckDef {
        name: "rigidity_verdicts",
        citation: "rigid if and only if transitive and not isomorphic to A4 or S4",
        groups: ALL,
        run: rigidity_verdicts,
    },
    CheckDef {
        name: "s4_orbit_inventory",
        citation: "S4: one orbit of size 3, one of size 4, two of size 6 and one of size 8 on C1",
        groups: &["A4_MONO", "S4_MONO"],
        run: s4_orbit_inventory,
    },
    CheckDef {
        name: "t_group_conjugacy",
        citation: "groups T_(a,k): conjugacy and projective equalities",
        groups: &["T_2_7", "T_4_7", "T_4_21", "T_16_21"],
        run: t_group_conjugacy,
    },
    CheckDef {
        name: "t_group_orbit_inventory",
        citation: "groups T_(a,k): one orbit of size 3 and three orbits of size 7 in general position",
        groups: &["T_2_7", "T_4_7", "T_4_21", "T_16_21"],
        run: t_group_orbit_inventory,
    },
    CheckDef {
        name: "t_group_power_identities",
        citation: "groups T_(a,k): powers of the diagonal generators",
        groups: &[],
        run: t_group_power_identities,
    },
    CheckDef {
        name: "t_group_survey",
        citation: "groups T_(a,k): the pairs (2,7), (4,7), (4,21), (16,21) are the only ones with seven-point orbits",
        groups: &["T_2_7", "T_4_7"],
        run: t_group_survey,
    },
];

/// Names of every check, sorted.
pub const CHECK_NAMES: [&str; 26] = [
    "a4_conic_memberships",
    "a4_orbit_inventory",
    "a5_eigen_orbit_sizes",
    "a5_line_transitivity",
    "a5_orbit_inventory",
    "action_classes",
    "bertini_link",
    "catalog_orders",
    "conic_bundle_link",
    "cremona_link",
    "cubic_surface_links",
    "fixed_point_link",
    "hessian_e108_orbits",
    "hessian_f216_merge",
    "hessian_no_small_orbits",
    "klein_valentiner_orbits",
    "non_rigidity_routes_agree",
    "order_nine_double_orbit_links",
    "order_nine_orbit_inventory",
    "order_nine_structure",
    "rigidity_verdicts",
    "s4_orbit_inventory",
    "t_group_conjugacy",
    "t_group_orbit_inventory",
    "t_group_power_identities",
    "t_group_survey",
];

fn run_checks(defs: Vec<&CheckDef>) -> Result<PaperReport> {
    let mut ids: BTreeSet<&'static str> = BTreeSet::new();
    for d in &defs {
        ids.extend(d.groups.iter().copied());
    }
    let ids: Vec<&'static str> = ids.into_iter().collect();
    let ctx = Context::new(&ids)?;
    let mut checks: Vec<Check> = defs
        .par_iter()
        .map(|d| {
            let (pass, evidence) = match (d.run)(&ctx) {
                Ok(r) => r,
                Err(e) => (false, json!({ "error": e.to_string() })),
            };
            Check { name: d.name, citation: d.citation, pass, evidence }
        })
        .collect();
    checks.sort_by_key(|c| c.name);
    Ok(PaperReport { caveat: CAVEAT, checks })
}

/// Run every check.
pub fn verify_paper() -> Result<PaperReport> {
    run_checks(CHECKS.iter().collect())
}

/// Run one named check.
pub fn verify_paper_check(name: &str) -> Result<PaperReport> {
    let def = CHECKS
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::Input(format!("unknown check `{name}`; known checks: {}", CHECK_NAMES.join(", "))))?;
    run_checks(vec![def])
}

fn show_points(points: &[ProjPoint]) -> Vec<String> {
    let (n, shown) = display_points(points);
    let suffix = if n > 2 { format!(" (z = ζ{n})") } else { String::new() };
    shown.into_iter().map(|p| format!("{p}{suffix}")).collect()
}

fn sizes(report: &SmallOrbitReport) -> Value {
    json!({
        "sporadic": report.sporadic_sizes(),
        "families": report.families.iter().map(|f| json!({
            "generic_size": f.generic_orbit_size,
            "exceptional_sizes": f.exceptional.iter().map(|e| e.orbit.size()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "complete": report.complete,
    })
}

fn orbit_of(ctx: &Context, id: &str, p: &ProjPoint) -> Result<Orbit> {
    let g = ctx.group(id);
    orbit(g, p, g.proj_order())
}

fn on_conic(conic: usize, points: &[ProjPoint]) -> bool {
    let c = &fixtures().conics[conic];
    points.iter().all(|p| c.contains(p))
}

fn fixture_point(name: &str) -> ProjPoint {
    fixtures().points.into_iter().find(|(n, _)| *n == name).expect("fixture exists").1
}

fn catalog_orders(ctx: &Context) -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = BTreeMap::new();
    for id in IDS {
        let e = build(id)?;
        let g = ctx.group(id);
        let sl = sl_closure_order(&e.generators, DEFAULT_GROUP_CAP)?;
        let ok = sl == e.sl_order && g.proj_order() == e.proj_order && sl % g.proj_order() == 0;
        pass &= ok;
        rows.insert(id, json!({ "sl_order": sl, "proj_order": g.proj_order(), "expected": [e.sl_order, e.proj_order], "ok": ok }));
    }
    Ok((pass, json!(rows)))
}

fn order_nine_structure(ctx: &Context) -> Result<(bool, Value)> {
    let g = ctx.group("C3xC3_MONO");
    let h = element_order_histogram(g);
    let abelian = g.is_abelian();
    let pass = g.proj_order() == 9 && h == BTreeMap::from([(1, 1), (3, 8)]);
    Ok((
        pass,
        json!({
            "proj_order": g.proj_order(),
            "histogram": h,
            "abelian": abelian,
            "note": "the projective group is abelian (C3 x C3); the name C3:C3 is not confirmed as a non-trivial semidirect product",
        }),
    ))
}

fn t_group_power_identities(_: &Context) -> Result<(bool, Value)> {
    let g = |a, k| -> Result<Mat3> { Ok(crate::catalog::t_group_generators(a, k)?.remove(0)) };
    let w = crate::catalog::diag_matrix(3, 1, 1, 1)?;
    let facts = [
        ("g_(4,21)^3 = g_(4,7)", g(4, 21)?.pow(3)? == g(4, 7)?),
        ("g_(16,21)^3 = g_(2,7)", g(16, 21)?.pow(3)? == g(2, 7)?),
        ("g_(4,21)^7 = W", g(4, 21)?.pow(7)? == w),
        ("g_(16,21)^7 = W", g(16, 21)?.pow(7)? == w),
    ];
    let pass = facts.iter().all(|f| f.1);
    Ok((pass, json!(facts.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>())))
}

fn t_group_conjugacy(ctx: &Context) -> Result<(bool, Value)> {
    let m = Mat3::from_ints(1, [[-1, 0, 0], [0, 0, -1], [0, -1, 0]])?;
    let conj = conjugate_group(ctx.group("T_2_7"), &m)?;
    let facts = [
        ("conjugate of T_2_7 equals T_4_7", groups_projectively_equal(&conj, ctx.group("T_4_7"))?),
        ("T_4_21 equals T_4_7", groups_projectively_equal(ctx.group("T_4_21"), ctx.group("T_4_7"))?),
        ("T_16_21 equals T_2_7", groups_projectively_equal(ctx.group("T_16_21"), ctx.group("T_2_7"))?),
        ("T_2_7 differs from T_4_7", !groups_projectively_equal(ctx.group("T_2_7"), ctx.group("T_4_7"))?),
    ];
    let pass = facts.iter().all(|f| f.1);
    Ok((pass, json!(facts.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>())))
}

fn t_group_survey(ctx: &Context) -> Result<(bool, Value)> {
    let rows = survey_t_groups(24, LINK_ORBIT_BOUND)?;
    let failed: Vec<String> =
        rows.iter().filter(|r| matches!(r.cell, SurveyCell::Failed(_))).map(|r| format!("({},{})", r.a, r.k)).collect();
    let seven: Vec<(u32, u32)> = rows.iter().filter(|r| r.has_sporadic(7)).map(|r| (r.a, r.k)).collect();
    let mut same_groups = true;
    for &(a, k) in &seven {
        let g = closure(&crate::catalog::t_group_generators(a as i64, k)?, DEFAULT_GROUP_CAP)?;
        same_groups &= groups_projectively_equal(&g, ctx.group("T_2_7"))?
            || groups_projectively_equal(&g, ctx.group("T_4_7"))?;
    }
    let find = |a, k| rows.iter().find(|r| r.a == a && r.k == k).map(|r| r.cell.clone());
    let threes = |c: &Option<SurveyCell>| {
        matches!(c, Some(SurveyCell::Profile { sporadic, .. }) if sporadic.iter().filter(|&&s| s == 3).count() >= 2)
    };
    let four = rows.iter().any(|r| r.a == 1 && r.k == 2 && r.has_sporadic(4));
    let three_a = threes(&find(0, 3));
    let three_b = threes(&find(2, 3));
    let pass = failed.is_empty()
        && seven == vec![(2, 7), (4, 7), (4, 21), (16, 21)]
        && same_groups
        && four
        && three_a
        && three_b;
    let with_small: BTreeMap<String, Value> = rows
        .iter()
        .filter_map(|r| match &r.cell {
            SurveyCell::Profile { sporadic, families, proj_order } if sporadic.iter().any(|&s| s > 3) || !families.is_empty() => {
                Some((format!("({},{})", r.a, r.k), json!({ "proj_order": proj_order, "sporadic": sporadic, "families": families })))
            }
            _ => None,
        })
        .collect();
    Ok((
        pass,
        json!({
            "cells": rows.len(),
            "skipped": rows.iter().filter(|r| r.cell == SurveyCell::Skipped).map(|r| format!("({},{})", r.a, r.k)).collect::<Vec<_>>(),
            "failed": failed,
            "seven_point_rows": seven.iter().map(|(a, k)| format!("({a},{k})")).collect::<Vec<_>>(),
            "seven_point_groups_are_t_2_7_or_t_4_7": same_groups,
            "row_(1,2)_has_size_4": four,
            "rows_(0,3)_and_(2,3)_have_extra_size_3": three_a && three_b,
            "rows_with_orbits_beyond_size_3": with_small,
        }),
    ))
}

fn a4_orbit_inventory(ctx: &Context) -> Result<(bool, Value)> {
    let r = ctx.report("A4_MONO");
    let g = ctx.group("A4_MONO");
    let fam_ok = r.families.len() == 1 && {
        let f = &r.families[0];
        f.generic_orbit_size == 6 && f.conic_orbits().count() == 3 && f.conic_orbits().all(|e| e.orbit.size() == 6)
    };
    let mut gp = BTreeMap::new();
    let mut all_gp = true;
    for o in r.sporadic.iter().filter(|o| o.size() == 4) {
        let ok = general_position(o.points())?.ok;
        all_gp &= ok;
        gp.insert(show_points(&[o.representative().clone()])[0].clone(), ok);
    }
    let generic = match r.families.first() {
        Some(f) => general_position(orbit(g, &f.generic_point(g)?, 8)?.points())?.ok,
        None => false,
    };
    // Family members through (0:1:a) with a³ = 1 have three points on one of the lines x ± y ± z = 0.
    let mut degenerate = BTreeMap::new();
    for k in 0..3 {
        let a = CycloNum::zeta_pow(3, k)?;
        let p = ProjPoint::new([CycloNum::zero(3)?, CycloNum::one(3)?, a])?;
        let o = orbit(g, &p, 8)?;
        degenerate.insert(show_points(&[p])[0].clone(), general_position(o.points())?.to_string());
    }
    let pass = r.sporadic_sizes() == vec![3, 4, 4, 4] && fam_ok && all_gp && generic;
    Ok((
        pass,
        json!({
            "orbits": sizes(r),
            "size_4_general_position": gp,
            "generic_family_member_general_position": generic,
            "degenerate_family_members": degenerate,
        }),
    ))
}

fn a4_conic_memberships(ctx: &Context) -> Result<(bool, Value)> {
    let id = "A4_MONO";
    let o = |name: &str| -> Result<Orbit> { orbit_of(ctx, id, &fixture_point(name)) };
    let (o1, o2, o3) = (o("(1:1:1)")?, o("(1:ζ3:ζ3²)")?, o("(1:ζ3²:ζ3)")?);
    let union = |a: &Orbit, b: &Orbit| [a.points(), b.points()].concat();
    let on_lines = |p: &ProjPoint| p.coords().iter().any(CycloNum::is_zero);
    let mut facts: Vec<(String, bool)> = vec![
        ("O2 ∪ O3 ⊂ C1".into(), on_conic(0, &union(&o2, &o3))),
        ("O1 ∪ O3 ⊂ C2".into(), on_conic(1, &union(&o1, &o3))),
        ("O1 ∪ O2 ⊂ C3".into(), on_conic(2, &union(&o1, &o2))),
        ("O1 ⊄ C1".into(), !on_conic(0, o1.points())),
    ];
    for (i, name) in ["(0:1:ζ12³)", "(0:1:ζ12)", "(0:1:ζ12⁵)"].into_iter().enumerate() {
        let p = fixture_point(name);
        let orb = o(name)?;
        facts.push((format!("{name} ∈ C{} ∩ (L1 ∪ L2 ∪ L3)", i + 1), on_conic(i, &[p.clone()]) && on_lines(&p)));
        facts.push((format!("orbit of {name} lies on C{} and has size 6", i + 1), orb.size() == 6 && on_conic(i, orb.points())));
        let fails = matches!(general_position(orb.points())?.failure, Some(GenPosFailure::OnConic(_)));
        facts.push((format!("orbit of {name} is not in general position"), fails));
    }
    let r = ctx.report(id);
    let conic_orbit_reps: BTreeSet<ProjPoint> = r
        .families
        .iter()
        .flat_map(|f| f.conic_orbits().map(|e| e.orbit.representative().clone()))
        .collect();
    let fixture_reps: BTreeSet<ProjPoint> = ["(0:1:ζ12³)", "(0:1:ζ12)", "(0:1:ζ12⁵)"]
        .iter()
        .map(|n| Ok(o(n)?.representative().clone()))
        .collect::<Result<_>>()?;
    facts.push(("family conic orbits are the orbits of the three fixture points".into(), conic_orbit_reps == fixture_reps));
    let invariant = invariant_conics(ctx.group(id))?;
    let fixture_conics: Vec<[CycloNum; 6]> = fixtures().conics.into_iter().map(|c| c.coeffs).collect();
    let same_conics = invariant.len() == 3
        && fixture_conics.iter().all(|f| invariant.iter().any(|c| proportional6(c, f)));
    facts.push(("the invariant conics are exactly C1, C2, C3".into(), same_conics));
    let pass = facts.iter().all(|f| f.1);
    Ok((pass, json!(facts.into_iter().collect::<BTreeMap<_, _>>())))
}

fn proportional6(a: &[CycloNum; 6], b: &[CycloNum; 6]) -> bool {
    (0..6).all(|i| (0..6).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

fn s4_orbit_inventory(ctx: &Context) -> Result<(bool, Value)> {
    let id = "S4_MONO";
    let r = ctx.report(id);
    let g = ctx.group(id);
    let six: Vec<&Orbit> = r.sporadic.iter().filter(|o| o.size() == 6).collect();
    let eight: Vec<&Orbit> = r.sporadic.iter().filter(|o| o.size() == 8).collect();
    let p011 = fixture_point("(0:1:1)");
    let gp_six = six.iter().find(|o| o.contains(&p011));
    let other_six = six.iter().find(|o| !o.contains(&p011));
    let on_c1 = |o: &Orbit| on_conic(0, o.points());
    let conic_fail = |o: &Orbit| -> Result<bool> {
        Ok(matches!(general_position(o.points())?.failure, Some(GenPosFailure::OnConic(_))))
    };
    let four_gp = match r.sporadic.iter().find(|o| o.size() == 4) {
        Some(o) => general_position(o.points())?.ok,
        None => false,
    };
    let gp_six_report = match gp_six {
        Some(o) => general_position(o.points())?.to_string(),
        None => "missing".to_string(),
    };
    let gp_six_ok = gp_six_report.starts_with("ok");
    let other_six_ok = match other_six {
        Some(o) => on_c1(o) && conic_fail(o)?,
        None => false,
    };
    let eight_ok = match eight.first() {
        Some(o) => on_c1(o) && conic_fail(o)?,
        None => false,
    };
    // σ joins the A4 orbits O2 and O3 into the eight-point orbit.
    let a4 = ctx.group("A4_MONO");
    let o2 = orbit(a4, &fixture_point("(1:ζ3:ζ3²)"), 4)?;
    let o3 = orbit(a4, &fixture_point("(1:ζ3²:ζ3)"), 4)?;
    let pts = [o2.points(), o3.points()].concat();
    let sigma = ProjElement::new(&build(id)?.generators[3])?;
    let perm = induced_permutation(&sigma, &pts)?;
    let exchanges = perm.iter().enumerate().all(|(i, &j)| (i < 4) != (j < 4));
    let pass = r.sporadic_sizes() == vec![3, 4, 6, 6, 8]
        && r.families.is_empty()
        && four_gp
        && gp_six_ok
        && other_six_ok
        && eight_ok
        && exchanges
        && g.proj_order() == 24;
    Ok((
        pass,
        json!({
            "orbits": sizes(r),
            "size_4_general_position": four_gp,
            "size_6_through_(0:1:1)_general_position": gp_six_ok,
            "size_6_through_(0:1:1)_report": gp_six_report,
            "other_size_6_on_C1_and_fails": other_six_ok,
            "size_8_on_C1_and_fails": eight_ok,
            "sigma_exchanges_O2_and_O3": exchanges,
            "sigma_permutation": perm,
        }),
    ))
}

fn order_nine_orbit_inventory(ctx: &Context) -> Result<(bool, Value)> {
    let r = ctx.report("C3xC3_MONO");
    let mut gp = Vec::new();
    for o in &r.sporadic {
        gp.push(general_position(o.points())?.ok);
    }
    let pass = r.sporadic_sizes() == vec![3, 3, 3, 3] && r.families.is_empty() && gp.iter().all(|&b| b);
    Ok((
        pass,
        json!({
            "orbits": sizes(r),
            "not_collinear": gp,
            "points": r.sporadic.iter().map(|o| show_points(o.points())).collect::<Vec<_>>(),
        }),
    ))
}

fn t_group_orbit_inventory(ctx: &Context) -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = BTreeMap::new();
    for id in ["T_2_7", "T_4_7", "T_4_21", "T_16_21"] {
        let r = ctx.report(id);
        let sevens: Vec<&Orbit> = r.sporadic.iter().filter(|o| o.size() == 7).collect();
        let mut gp = true;
        for o in &sevens {
            gp &= general_position(o.points())?.ok;
        }
        let reps_distinct = (0..3)
            .map(|c| sevens.iter().position(|o| o.contains(&cube_root_point(c))))
            .collect::<Option<BTreeSet<usize>>>()
            .is_some_and(|s| s.len() == 3);
        let ok = r.sporadic_sizes() == vec![3, 7, 7, 7] && r.families.is_empty() && gp && reps_distinct;
        pass &= ok;
        rows.insert(
            id,
            json!({ "orbits": sizes(r), "size_7_general_position": gp, "cube_root_points_in_distinct_orbits": reps_distinct }),
        );
    }
    Ok((pass, json!(rows)))
}

fn hessian_e108_orbits(ctx: &Context) -> Result<(bool, Value)> {
    let r = ctx.report("E108");
    let expected: Vec<BTreeSet<ProjPoint>> =
        fixtures().hessian_orbits.iter().map(|o| o.iter().cloned().collect()).collect();
    let found: Vec<BTreeSet<ProjPoint>> = r.sporadic.iter().map(|o| o.points().iter().cloned().collect()).collect();
    let matches = found.len() == 2 && expected.iter().all(|e| found.contains(e));
    let mut gp = Vec::new();
    for o in &r.sporadic {
        gp.push(general_position(o.points())?.ok);
    }
    let pass = matches && r.families.is_empty() && gp.iter().all(|&b| b) && r.complete;
    Ok((
        pass,
        json!({
            "orbits": sizes(r),
            "match_listed_points": matches,
            "general_position": gp,
            "points": r.sporadic.iter().map(|o| show_points(o.points())).collect::<Vec<_>>(),
        }),
    ))
}

fn hessian_f216_merge(ctx: &Context) -> Result<(bool, Value)> {
    let fx = fixtures();
    let union: BTreeSet<ProjPoint> = fx.hessian_orbits.iter().flatten().cloned().collect();
    let o = orbit_of(ctx, "F216", &fx.hessian_orbits[0][0])?;
    let got: BTreeSet<ProjPoint> = o.points().iter().cloned().collect();
    let pass = o.size() == 12 && got == union;
    Ok((pass, json!({ "orbit_size": o.size(), "equals_union_of_e108_orbits": got == union })))
}

fn hessian_no_small_orbits(ctx: &Context) -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = BTreeMap::new();
    for id in ["F216", "H648"] {
        let r = ctx.report(id);
        pass &= r.sporadic.is_empty() && r.families.is_empty() && r.complete;
        rows.insert(id, sizes(r));
    }
    Ok((pass, json!(rows)))
}

fn element_of_order(g: &GroupData, order: u32) -> Option<Mat3> {
    g.element_orders().iter().position(|&o| o == order).map(|i| g.rep(i).clone())
}

fn a5_orbit_inventory(ctx: &Context) -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = BTreeMap::new();
    for id in ["A5_I", "A5_II", "A5_W"] {
        let r = ctx.report(id);
        let gp = match r.sporadic.first() {
            Some(o) => general_position(o.points())?.ok,
            None => false,
        };
        let ok = r.sporadic_sizes() == vec![6] && r.families.is_empty() && gp && r.complete;
        pass &= ok;
        rows.insert(id, json!({ "orbits": sizes(r), "general_position": gp }));
    }
    let hist_equal = element_order_histogram(ctx.group("A5_I")) == element_order_histogram(ctx.group("A5_II"));
    let distinct = !groups_projectively_equal(ctx.group("A5_I"), ctx.group("A5_II"))?;
    pass &= hist_equal && distinct;
    rows.insert("A5_I_vs_A5_II", json!({ "same_histogram": hist_equal, "projectively_distinct": distinct }));
    Ok((pass, json!(rows)))
}

fn a5_eigen_orbit_sizes(ctx: &Context) -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = BTreeMap::new();
    for id in ["A5_I", "A5_II"] {
        let g = ctx.group(id);
        let five = element_of_order(g, 5).ok_or_else(|| Error::Input("no element of order 5".into()))?;
        let three = element_of_order(g, 3).ok_or_else(|| Error::Input("no element of order 3".into()))?;
        let mut s = eigen_orbit_sizes(g, &five, &three)?;
        s.sort_unstable();
        let has = |x| s.contains(&x);
        let rest_ok = {
            let mut rest = s.clone();
            for x in [6, 10] {
                if let Some(i) = rest.iter().position(|&y| y == x) {
                    rest.remove(i);
                }
            }
            rest.len() == 4 && rest.iter().all(|x| [12, 20].contains(x))
        };
        let ok = has(6) && has(10) && rest_ok;
        pass &= ok;
        rows.insert(id, json!(s));
    }
    Ok((pass, json!(rows)))
}

fn a5_line_transitivity(ctx: &Context) -> Result<(bool, Value)> {
    let g = ctx.group("A5_I");
    let r = ctx.report("A5_I");
    let o = r.sporadic.first().ok_or_else(|| Error::Input("no six-point orbit".into()))?;
    let pts = o.points();
    let mut lines = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            lines.push(ProjLine::through(&pts[i], &pts[j])?);
        }
    }
    let set: BTreeSet<ProjLine> = lines.iter().cloned().collect();
    let start = lines[0].clone();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    let gens: Vec<Mat3> = g.generator_elements().into_iter().map(|i| g.rep(i).clone()).collect();
    while let Some(l) = stack.pop() {
        for m in &gens {
            let image = l.image(m)?;
            if seen.insert(image.clone()) {
                stack.push(image);
            }
        }
    }
    let pass = set.len() == 15 && seen == set;
    Ok((pass, json!({ "lines": set.len(), "orbit_of_first_line": seen.len(), "closed": seen == set })))
}

fn klein_valentiner_orbits(ctx: &Context) -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = BTreeMap::new();
    for id in ["PSL27", "PSL27_W", "A6_3FOLD"] {
        let r = ctx.report(id);
        let ok = r.sporadic.is_empty() && r.families.is_empty() && r.complete;
        pass &= ok;
        rows.insert(id.to_string(), sizes(r));
    }
    let psl = build("PSL27")?;
    let mut s = eigen_orbit_sizes(ctx.group("PSL27"), &psl.generators[0], &psl.generators[1])?;
    s.sort_unstable();
    let psl_ok = s.iter().all(|x| [21, 24, 28, 56].contains(x));
    let a6 = build("A6_3FOLD")?;
    let (a, b) = (&a6.generators[0], &a6.generators[1]);
    let abb = &(a * b) * b;
    let mut t = eigen_orbit_sizes(ctx.group("A6_3FOLD"), b, &abb)?;
    t.sort_unstable();
    let a6_ok = t.iter().all(|x| [36, 45, 72, 90].contains(x));
    pass &= psl_ok && a6_ok;
    rows.insert("PSL27_eigen_orbit_sizes".into(), json!(s));
    rows.insert("A6_3FOLD_eigen_orbit_sizes".into(), json!(t));
    Ok((pass, json!(rows)))
}

fn links_for(g: &GroupData, points: &[ProjPoint]) -> Result<(Vec<LinkDescriptor>, PermAction)> {
    if !general_position(points)?.ok {
        return Err(Error::Constraint("points are not in general position".into()));
    }
    let action = PermAction::from_group(g, points)?;
    Ok((links_from_orbit(points.len(), &action, true)?, action))
}

fn describe(links: &[LinkDescriptor]) -> Vec<String> {
    links.iter().map(LinkDescriptor::to_string).collect()
}

fn cremona_link(ctx: &Context) -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = BTreeMap::new();
    let distinguished = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|v| ProjPoint::from_ints(v).expect("nonzero"));
    for id in ["C3xC3_MONO", "A4_MONO", "S4_MONO", "T_2_7", "T_4_7", "T_4_21", "T_16_21"] {
        let o = orbit_of(ctx, id, &distinguished[0])?;
        let (links, _) = links_for(ctx.group(id), o.points())?;
        let ok = links.len() == 1
            && links[0].lands_on_p2()
            && matches!(&links[0].kind, LinkKind::TypeII { contracted_orbits, .. }
                if contracted_orbits.len() == 1 && contracted_orbits[0].iter().all(|c| matches!(c, DPClass::Plane { d: 1, .. })));
        pass &= ok && o.size() == 3;
        rows.insert(id, json!(describe(&links)));
    }
    Ok((pass, json!(rows)))
}

fn order_nine_double_orbit_links(ctx: &Context) -> Result<(bool, Value)> {
    let id = "C3xC3_MONO";
    let g = ctx.group(id);
    let r = ctx.report(id);
    let mut pass = r.sporadic.len() == 4;
    let mut rows = BTreeMap::new();
    for i in 0..r.sporadic.len() {
        for j in i + 1..r.sporadic.len() {
            let pts = [r.sporadic[i].points(), r.sporadic[j].points()].concat();
            let (links, action) = links_for(g, &pts)?;
            let orbits = class_orbits(&action, &neg_one_classes(6)?)?;
            let ok = orbits.len() == 9
                && orbits.iter().all(|o| o.len() == 3)
                && invariant_rank(&action) == 3
                && !links.is_empty()
                && links.iter().all(LinkDescriptor::lands_on_p2);
            pass &= ok;
            rows.insert(
                format!("orbits {} + {}", i + 1, j + 1),
                json!({ "class_orbit_sizes": orbits.iter().map(Vec::len).collect::<Vec<_>>(), "links": describe(&links) }),
            );
        }
    }
    Ok((pass, json!(rows)))
}

fn bertini_link(ctx: &Context) -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = BTreeMap::new();
    for id in ["T_2_7", "T_4_7"] {
        for o in ctx.report(id).sporadic.iter().filter(|o| o.size() == 7) {
            let (links, _) = links_for(ctx.group(id), o.points())?;
            let bertini = links.iter().any(|l| {
                l.lands_on_p2()
                    && matches!(&l.kind, LinkKind::TypeII { contracted_orbits, .. }
                        if contracted_orbits.iter().flatten().all(|c| matches!(c, DPClass::Plane { d: 3, .. })))
            });
            let ok = bertini && links.iter().all(LinkDescriptor::lands_on_p2);
            pass &= ok;
            rows.insert(format!("{id} {}", show_points(&[o.representative().clone()])[0]), json!(describe(&links)));
        }
    }
    Ok((pass, json!(rows)))
}

fn conic_bundle_link(ctx: &Context) -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = BTreeMap::new();
    let f = DPClass::plane(2, vec![1, 1, 1, 1])?;
    for id in ["A4_MONO", "S4_MONO"] {
        let o = orbit_of(ctx, id, &fixture_point("(1:1:1)"))?;
        let (links, _) = links_for(ctx.group(id), o.points())?;
        let ok = o.size() == 4
            && links.iter().any(|l| matches!(&l.kind, LinkKind::TypeI { fibration_class } if *fibration_class == f));
        pass &= ok;
        rows.insert(id, json!(describe(&links)));
    }
    let none_on_three = {
        let o = orbit_of(ctx, "T_2_7", &ProjPoint::from_ints([1, 0, 0])?)?;
        let (links, _) = links_for(ctx.group("T_2_7"), o.points())?;
        !links.iter().any(LinkDescriptor::is_type_i)
    };
    pass &= none_on_three;
    rows.insert("no_fibration_on_three_points", json!(none_on_three));
    Ok((pass, json!(rows)))
}

fn cubic_surface_links(ctx: &Context) -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = BTreeMap::new();
    for id in ["E108", "A5_I", "A5_II"] {
        for o in &ctx.report(id).sporadic {
            let (links, _) = links_for(ctx.group(id), o.points())?;
            let conics = links.iter().any(|l| {
                l.lands_on_p2()
                    && matches!(&l.kind, LinkKind::TypeII { contracted_orbits, .. }
                        if contracted_orbits.len() == 1 && contracted_orbits[0].len() == 6
                            && contracted_orbits[0].iter().all(|c| matches!(c, DPClass::Plane { d: 2, .. })))
            });
            let ok = o.size() == 6 && conics && links.iter().all(LinkDescriptor::lands_on_p2);
            pass &= ok;
            rows.insert(format!("{id} {}", show_points(&[o.representative().clone()])[0]), json!(describe(&links)));
        }
    }
    Ok((pass, json!(rows)))
}

fn fixed_point_link(ctx: &Context) -> Result<(bool, Value)> {
    let v = rigidity_verdict(ctx.group("INTRANSITIVE_SAMPLE"))?;
    let w = v.witness.as_ref();
    let pass = !v.rigid
        && w.is_some_and(|w| {
            matches!(&w.link.kind, LinkKind::TypeI { fibration_class } if *fibration_class == DPClass::Plane { d: 1, m: vec![1] })
        });
    Ok((
        pass,
        json!({
            "rigid": v.rigid,
            "witness": w.map(|w| json!({ "points": show_points(&w.points), "link": w.link.to_string() })),
        }),
    ))
}

fn action_classes(ctx: &Context) -> Result<(bool, Value)> {
    let mut rows = BTreeMap::new();
    let mut pass = true;
    for id in IDS {
        let c = classify_action(ctx.group(id))?;
        let expected = match id {
            "INTRANSITIVE_SAMPLE" => "intransitive",
            "C3xC3_MONO" | "A4_MONO" | "S4_MONO" | "T_2_7" | "T_4_7" | "T_4_21" | "T_16_21" => "imprimitive",
            _ => "primitive",
        };
        let extra = match &c {
            ActionClass::Intransitive { fixed_point } => {
                pass &= *fixed_point == ProjPoint::from_ints([1, 0, 0])?;
                show_points(&[fixed_point.clone()])
            }
            ActionClass::Imprimitive { size3_orbit, warning } => {
                pass &= warning.is_none() && size3_orbit.size() == 3;
                show_points(size3_orbit.points())
            }
            ActionClass::Primitive => vec![],
        };
        pass &= c.name() == expected;
        rows.insert(id, json!({ "class": c.name(), "points": extra }));
    }
    Ok((pass, json!(rows)))
}

const EXPECTED_RIGID: [&str; 14] = [
    "C3xC3_MONO", "T_2_7", "T_4_7", "T_4_21", "T_16_21", "E108", "F216", "H648", "A5_I", "A5_II", "A5_W", "PSL27",
    "PSL27_W", "A6_3FOLD",
];

fn rigidity_verdicts(ctx: &Context) -> Result<(bool, Value)> {
    let verdicts: Vec<(&str, super::Verdict)> =
        IDS.par_iter().map(|&id| Ok((id, rigidity_verdict(ctx.group(id))?))).collect::<Result<_>>()?;
    let mut pass = true;
    let mut rows = BTreeMap::new();
    for (id, v) in verdicts {
        let expected = EXPECTED_RIGID.contains(&id);
        pass &= v.rigid == expected && (v.rigid || v.witness.is_some());
        rows.insert(
            id,
            json!({
                "rigid": v.rigid,
                "expected_rigid": expected,
                "witness": v.witness.as_ref().map(|w| json!({ "orbit_sizes": w.orbit_sizes, "link": w.link.to_string() })),
                "links_examined": v.candidates.iter().map(|c| c.links.len()).sum::<usize>(),
                "excluded_not_in_general_position": v.candidates.iter().filter(|c| c.excluded()).map(|c| c.orbit_sizes()).collect::<Vec<_>>(),
            }),
        );
    }
    Ok((pass, json!(rows)))
}

fn non_rigidity_routes_agree(ctx: &Context) -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = BTreeMap::new();
    for id in IDS {
        let g = ctx.group(id);
        if matches!(classify_action(g)?, ActionClass::Intransitive { .. }) {
            continue;
        }
        let iso = is_a4_or_s4(g).is_some();
        let four = ctx.report(id).sporadic.iter().filter(|o| o.size() == 4).try_fold(false, |acc, o| {
            Ok::<_, Error>(acc || general_position(o.points())?.ok)
        })?;
        pass &= iso == four;
        rows.insert(id, json!({ "a4_or_s4": iso, "four_point_orbit_in_general_position": four }));
    }
    Ok((pass, json!(rows)))
}

#[allow(dead_code)]
fn conic_reason_count(r: &SmallOrbitReport) -> usize {
    r.families
        .iter()
        .flat_map(|f| f.exceptional.iter())
        .filter(|e| matches!(e.reason, ExceptionalReason::OnInvariantConic(_)))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_sorted_and_complete() {
        let mut names: Vec<&str> = CHECKS.iter().map(|c| c.name).collect();
        names.sort_unstable();
        assert_eq!(names, CHECK_NAMES);
    }

    #[test]
    fn single_check_runs() {
        let r = verify_paper_check("hessian_f216_merge").unwrap();
        assert_eq!(r.checks.len(), 1);
        assert!(r.checks[0].pass, "{:?}", r.checks[0]);
        assert!(verify_paper_check("nope").is_err());
    }
}
