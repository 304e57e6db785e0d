use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::catalog::{build, IDS};
use crate::error::Result;
use crate::orbits::{general_position, orbit, small_orbits, ExceptionalReason, Orbit};
use crate::projgroup::{display_points, element_order_histogram, sl_closure_order, GroupData, ProjPoint, DEFAULT_GROUP_CAP};
use crate::rigidity::{blowup_candidates, classify_action, is_a4_or_s4, rigidity_verdict, ActionClass, LINK_ORBIT_BOUND};

use super::LoadedGroup;

type Rendered = (String, Value);

macro_rules! line {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a String")
    };
}

/// Points over a shared conductor, as `(n, [strings])`.
fn points_json(points: &[ProjPoint]) -> Value {
    let (n, shown) = display_points(points);
    json!({ "z": format!("ζ{n}"), "points": shown })
}

fn points_text(points: &[ProjPoint]) -> String {
    let (n, shown) = display_points(points);
    let suffix = if n > 2 { format!("  [z = ζ{n}]") } else { String::new() };
    format!("{}{suffix}", shown.join(" "))
}

pub fn catalog() -> Result<Rendered> {
    let mut text = String::new();
    let mut rows = Vec::new();
    line!(text, "{:<20} {:>9} {:>8} {:>9}  description", "id", "conductor", "SL", "PGL");
    for id in IDS {
        let e = build(id)?;
        line!(text, "{:<20} {:>9} {:>8} {:>9}  {}", id, e.conductor, e.sl_order, e.proj_order, e.description);
        rows.push(json!({
            "id": id,
            "conductor": e.conductor,
            "sl_order": e.sl_order,
            "proj_order": e.proj_order,
            "description": e.description,
            "citation": e.citation,
        }));
    }
    Ok((text, json!({ "groups": rows })))
}

fn action_json(a: &ActionClass) -> Value {
    match a {
        ActionClass::Intransitive { fixed_point } => {
            json!({ "class": a.name(), "fixed_point": points_json(std::slice::from_ref(fixed_point)) })
        }
        ActionClass::Imprimitive { size3_orbit, warning } => {
            json!({ "class": a.name(), "orbit": points_json(size3_orbit.points()), "warning": warning })
        }
        ActionClass::Primitive => json!({ "class": a.name() }),
    }
}

fn action_text(a: &ActionClass) -> String {
    match a {
        ActionClass::Intransitive { fixed_point } => format!("intransitive, fixes {}", points_text(std::slice::from_ref(fixed_point))),
        ActionClass::Imprimitive { size3_orbit, warning } => {
            let mut s = format!("imprimitive, orbit {}", points_text(size3_orbit.points()));
            if let Some(w) = warning {
                s.push_str(&format!(" (warning: {w})"));
            }
            s
        }
        ActionClass::Primitive => "primitive".to_string(),
    }
}

pub fn info(loaded: &LoadedGroup, g: &GroupData) -> Result<Rendered> {
    let sl = sl_closure_order(&loaded.generators, DEFAULT_GROUP_CAP)?;
    let hist = element_order_histogram(g);
    let action = classify_action(g)?;
    let iso = is_a4_or_s4(g).map(|t| format!("{t:?}"));
    let mut text = String::new();
    line!(text, "group: {}", loaded.name);
    line!(text, "conductor: {}", g.conductor());
    line!(text, "generators: {}", loaded.generators.len());
    line!(text, "SL order: {sl}");
    line!(text, "projective order: {}", g.proj_order());
    let h: Vec<String> = hist.iter().map(|(o, c)| format!("{o}:{c}")).collect();
    line!(text, "element orders (order:count): {}", h.join(" "));
    line!(text, "action: {}", action_text(&action));
    if let Some(t) = &iso {
        line!(text, "isomorphic to: {t}");
    }
    let json = json!({
        "group": loaded.name,
        "conductor": g.conductor(),
        "generators": loaded.generators.len(),
        "sl_order": sl,
        "proj_order": g.proj_order(),
        "element_orders": hist.iter().map(|(o, c)| json!({ "order": o, "count": c })).collect::<Vec<_>>(),
        "action": action_json(&action),
        "isomorphic_to": iso,
    });
    Ok((text, json))
}

fn genpos_of(o: &Orbit) -> Result<Option<String>> {
    if o.size() > LINK_ORBIT_BOUND {
        return Ok(None);
    }
    Ok(Some(general_position(o.points())?.to_string()))
}

fn reason_text(r: &ExceptionalReason) -> String {
    match r {
        ExceptionalReason::LargerStabilizer => "larger stabilizer".to_string(),
        ExceptionalReason::OnInvariantConic(c) => {
            // Coordinates are x0, x1, x2 so that `z` keeps meaning a root of unity.
            let names = ["x0^2", "x1^2", "x2^2", "x0*x1", "x0*x2", "x1*x2"];
            let n = c.iter().fold(1, |n, a| num_integer::lcm(n, a.conductor()));
            let terms: Vec<String> = c
                .iter()
                .zip(names)
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, m)| {
                    if a.is_one() {
                        return m.to_string();
                    }
                    let shown = a.embed(n).map(|e| e.to_string()).unwrap_or_else(|_| a.to_string());
                    format!("({shown})*{m}")
                })
                .collect();
            let suffix = if n > 2 { format!(", z = ζ{n}") } else { String::new() };
            format!("on the invariant conic {} = 0{suffix}", terms.join(" + "))
        }
    }
}

pub fn orbits(loaded: &LoadedGroup, g: &GroupData, bound: usize) -> Result<Rendered> {
    let r = small_orbits(g, bound)?;
    let mut text = String::new();
    line!(text, "group: {}", loaded.name);
    line!(text, "orbits with at most {bound} points (projective order {})", r.proj_order);
    let mut sporadic = Vec::new();
    for o in &r.sporadic {
        let gp = genpos_of(o)?;
        line!(text, "  size {}: {}", o.size(), points_text(o.points()));
        if let Some(s) = &gp {
            line!(text, "    general position: {s}");
        }
        sporadic.push(json!({ "size": o.size(), "points": points_json(o.points()), "general_position": gp }));
    }
    let mut families = Vec::new();
    for f in &r.families {
        line!(
            text,
            "  family of size {} on the {} (line orbit {}, setwise stabilizer {}, pointwise stabilizer {}, group on the line {})",
            f.generic_orbit_size,
            f.line,
            f.line_orbit_size,
            f.setwise_stabilizer_order,
            f.pointwise_stabilizer_order,
            f.induced_p1_order
        );
        let generic = orbit(g, &f.generic_point(g)?, f.generic_orbit_size.max(1))?;
        line!(text, "    generic member: {}", points_text(generic.points()));
        let mut exceptional = Vec::new();
        for e in &f.exceptional {
            line!(text, "    exceptional size {} ({}): {}", e.orbit.size(), reason_text(&e.reason), points_text(e.orbit.points()));
            exceptional.push(json!({
                "size": e.orbit.size(),
                "reason": reason_text(&e.reason),
                "points": points_json(e.orbit.points()),
                "general_position": genpos_of(&e.orbit)?,
            }));
        }
        for n in &f.notes {
            line!(text, "    note: {n}");
        }
        families.push(json!({
            "line": f.line.to_string(),
            "line_orbit_size": f.line_orbit_size,
            "setwise_stabilizer_order": f.setwise_stabilizer_order,
            "pointwise_stabilizer_order": f.pointwise_stabilizer_order,
            "induced_p1_order": f.induced_p1_order,
            "generic_orbit_size": f.generic_orbit_size,
            "generic_member": points_json(generic.points()),
            "exceptional": exceptional,
            "notes": f.notes,
        }));
    }
    if r.sporadic.is_empty() && r.families.is_empty() {
        line!(text, "  none");
    }
    if !r.complete {
        line!(text, "incomplete: orbits of the whole group fit within the bound");
    }
    for n in &r.notes {
        line!(text, "note: {n}");
    }
    let json = json!({
        "group": loaded.name,
        "bound": bound,
        "proj_order": r.proj_order,
        "complete": r.complete,
        "sporadic": sporadic,
        "families": families,
        "notes": r.notes,
    });
    Ok((text, json))
}

pub fn genpos(loaded: &LoadedGroup, g: &GroupData, p: &ProjPoint) -> Result<Rendered> {
    let o = orbit(g, p, LINK_ORBIT_BOUND)?;
    let report = general_position(o.points())?;
    let mut text = String::new();
    line!(text, "group: {}", loaded.name);
    line!(text, "orbit of size {}: {}", o.size(), points_text(o.points()));
    line!(text, "{report}");
    let json = json!({
        "group": loaded.name,
        "orbit": points_json(o.points()),
        "size": o.size(),
        "ok": report.ok,
        "report": report.to_string(),
    });
    Ok((text, json))
}

pub fn links(loaded: &LoadedGroup, g: &GroupData) -> Result<Rendered> {
    let r = small_orbits(g, LINK_ORBIT_BOUND)?;
    let candidates = blowup_candidates(g, &r)?;
    let mut text = String::new();
    line!(text, "group: {}", loaded.name);
    let mut rows = Vec::new();
    for c in &candidates {
        let pts = c.points();
        line!(text, "blowup of orbits of sizes {:?}: {}", c.orbit_sizes(), points_text(&pts));
        if c.excluded() {
            line!(text, "  excluded, not in general position: {}", c.general_position);
        }
        for l in &c.links {
            line!(text, "  {l}");
        }
        rows.push(json!({
            "orbit_sizes": c.orbit_sizes(),
            "points": points_json(&pts),
            "general_position": c.general_position.to_string(),
            "links": c.links.iter().map(|l| json!({
                "description": l.to_string(),
                "type": if l.is_type_i() { "I" } else { "II" },
                "lands_on_p2": l.lands_on_p2(),
            })).collect::<Vec<_>>(),
        }));
    }
    if candidates.is_empty() {
        line!(text, "no orbits with at most {LINK_ORBIT_BOUND} points, so no links start from the plane");
    }
    Ok((text, json!({ "group": loaded.name, "candidates": rows })))
}

pub fn verdict(loaded: &LoadedGroup, g: &GroupData) -> Result<Rendered> {
    let v = rigidity_verdict(g)?;
    let mut text = String::new();
    line!(text, "{}", if v.rigid { "RIGID" } else { "NOT RIGID" });
    line!(text, "group: {}", loaded.name);
    line!(text, "action: {}", action_text(&v.action));
    if let Some(t) = &v.isomorphism_type {
        line!(text, "isomorphic to: {t:?}");
    }
    if let Some(w) = &v.witness {
        line!(text, "witness: {}", w.link);
        line!(text, "  blown-up points: {}", points_text(&w.points));
    }
    for r in &v.reasons {
        line!(text, "- {} [{}]", r.message, r.citation);
    }
    if let Some(agree) = v.routes_agree {
        line!(text, "four-point orbit test agrees with the A4/S4 test: {agree}");
    }
    let json = json!({
        "group": loaded.name,
        "rigid": v.rigid,
        "action": action_json(&v.action),
        "isomorphic_to": v.isomorphism_type.map(|t| format!("{t:?}")),
        "witness": v.witness.as_ref().map(|w| json!({
            "link": w.link.to_string(),
            "orbit_sizes": w.orbit_sizes,
            "points": points_json(&w.points),
        })),
        "reasons": v.reasons.iter().map(|r| json!({ "citation": r.citation, "message": r.message })).collect::<Vec<_>>(),
        "routes_agree": v.routes_agree,
        "links_examined": v.candidates.iter().map(|c| c.links.len()).sum::<usize>(),
    });
    Ok((text, json))
}
