//! Acceptance criteria 1 to 8. Each test prints one PASS/FAIL line and fails
//! when its criterion is not met exactly.

mod common;

use std::process::Command;

use common::*;
use planar_rigidity::catalog::{build, fixtures, survey_t_groups, t_group_generators, IDS};
use planar_rigidity::cyclo::{CycloNum, Rational};
use planar_rigidity::linalg::Mat3;
use planar_rigidity::orbits::{eigen_orbit_sizes, general_position, orbit, small_orbits, GenPosFailure, Orbit};
use planar_rigidity::picard::{class_orbits, links_from_orbit, neg_one_classes, DPClass, LinkKind, PermAction};
use planar_rigidity::projgroup::{closure, conjugate_group, groups_projectively_equal, ProjPoint, DEFAULT_GROUP_CAP};
use planar_rigidity::rigidity::rigidity_verdict;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn finish(criterion: u32, title: &str, failures: Vec<String>) {
    let ok = report_line(criterion, title, &failures);
    assert!(ok, "criterion {criterion} failed: {failures:#?}");
}

fn gp(points: &[ProjPoint]) -> bool {
    general_position(points).unwrap().ok
}

fn links_of(id: &str, points: &[ProjPoint]) -> Vec<planar_rigidity::picard::LinkDescriptor> {
    let g = group(id);
    let action = PermAction::from_group(&g, points).unwrap();
    links_from_orbit(points.len(), &action, gp(points)).unwrap()
}

#[test]
fn criterion_1_catalog_orders() {
    let expected = [
        ("C3xC3_MONO", 9),
        ("A4_MONO", 12),
        ("S4_MONO", 24),
        ("T_2_7", 21),
        ("T_4_7", 21),
        ("T_4_21", 21),
        ("T_16_21", 21),
        ("E108", 108),
        ("F216", 216),
        ("H648", 648),
        ("A5_I", 60),
        ("A5_II", 60),
        ("PSL27", 168),
        ("A6_3FOLD", 360),
    ];
    let mut failures = Vec::new();
    for (id, order) in expected {
        let got = group(id).proj_order();
        if got != order {
            failures.push(format!("{id}: projective order {got}, expected {order}"));
        }
    }
    finish(1, "catalog projective orders", failures);
}

#[test]
fn criterion_2_t_group_survey() {
    let mut failures = Vec::new();
    let rows = survey_t_groups(24, 8).unwrap();
    let seven: Vec<(u32, u32)> = rows.iter().filter(|r| r.has_sporadic(7)).map(|r| (r.a, r.k)).collect();
    if seven != [(2, 7), (4, 7), (4, 21), (16, 21)] {
        failures.push(format!("seven-point orbits at {seven:?}"));
    }
    let t = |a, k| closure(&t_group_generators(a, k).unwrap(), DEFAULT_GROUP_CAP).unwrap();
    if !groups_projectively_equal(&t(4, 21), &t(4, 7)).unwrap() {
        failures.push("(4,21) and (4,7) differ projectively".into());
    }
    if !groups_projectively_equal(&t(16, 21), &t(2, 7)).unwrap() {
        failures.push("(16,21) and (2,7) differ projectively".into());
    }
    let m = Mat3::from_ints(1, [[-1, 0, 0], [0, 0, -1], [0, -1, 0]]).unwrap();
    if !groups_projectively_equal(&conjugate_group(&t(2, 7), &m).unwrap(), &t(4, 7)).unwrap() {
        failures.push("the displayed matrix does not conjugate (2,7) to (4,7)".into());
    }
    if !groups_projectively_equal(&conjugate_group(&t(4, 21), &m).unwrap(), &t(16, 21)).unwrap() {
        failures.push("the displayed matrix does not conjugate (4,21) to (16,21)".into());
    }
    finish(2, "T-group survey and conjugacies", failures);
}

#[test]
fn criterion_3_monomial_inventories() {
    let mut failures = Vec::new();

    let a4 = group("A4_MONO");
    let r = small_orbits(&a4, 8).unwrap();
    if r.sporadic_sizes() != [3, 4, 4, 4] {
        failures.push(format!("A4 sporadic sizes {:?}", r.sporadic_sizes()));
    }
    let fam_ok = r.families.len() == 1
        && r.families[0].generic_orbit_size == 6
        && r.families[0].conic_orbits().count() == 3
        && r.families[0].conic_orbits().all(|e| e.orbit.size() == 6);
    if !fam_ok {
        failures.push("A4 family is not generic-6 with exactly three conic orbits".into());
    }

    let s4 = group("S4_MONO");
    let r = small_orbits(&s4, 8).unwrap();
    if r.sporadic_sizes() != [3, 4, 6, 6, 8] || !r.families.is_empty() {
        failures.push(format!("S4 sporadic sizes {:?}, {} families", r.sporadic_sizes(), r.families.len()));
    }
    let c1 = &fixtures().conics[0];
    let on_c1 = |o: &Orbit| o.points().iter().all(|p| c1.contains(p));
    let p011 = ProjPoint::from_ints([0, 1, 1]).unwrap();
    for o in r.sporadic.iter().filter(|o| o.size() == 6) {
        if o.contains(&p011) {
            let report = general_position(o.points()).unwrap();
            if !report.ok {
                failures.push(format!("S4 six-point orbit through (0:1:1) is not in general position: {report}"));
            }
        } else if !on_c1(o) {
            failures.push("S4 second six-point orbit is not on C1".into());
        }
    }
    if !r.sporadic.iter().filter(|o| o.size() == 8).all(on_c1) {
        failures.push("S4 eight-point orbit is not on C1".into());
    }

    let r = small_orbits(&group("C3xC3_MONO"), 8).unwrap();
    if r.sporadic_sizes() != [3, 3, 3, 3] || !r.families.is_empty() {
        failures.push(format!("C3xC3 sizes {:?}", r.sporadic_sizes()));
    }

    let r = small_orbits(&group("T_2_7"), 8).unwrap();
    if r.sporadic_sizes() != [3, 7, 7, 7] || !r.families.is_empty() {
        failures.push(format!("T_2_7 sizes {:?}", r.sporadic_sizes()));
    }
    if !r.sporadic.iter().filter(|o| o.size() == 7).all(|o| gp(o.points())) {
        failures.push("a seven-point orbit of T_2_7 is not in general position".into());
    }
    finish(3, "monomial orbit inventories", failures);
}

#[test]
fn criterion_4_primitive_inventories() {
    let mut failures = Vec::new();
    let fx = fixtures();

    let e108 = group("E108");
    let r = small_orbits(&e108, 8).unwrap();
    let mut listed: Vec<Vec<ProjPoint>> = fx.hessian_orbits.iter().map(|o| sorted(o.clone())).collect();
    listed.sort();
    let mut found: Vec<Vec<ProjPoint>> = r.sporadic.iter().map(|o| sorted(o.points().to_vec())).collect();
    found.sort();
    if found != listed || !r.families.is_empty() {
        failures.push("E108 orbits differ from the listed six-point orbits".into());
    }
    if !r.sporadic.iter().all(|o| gp(o.points())) {
        failures.push("an E108 six-point orbit is not in general position".into());
    }

    let merged = orbit(&group("F216"), &fx.hessian_orbits[0][0], 72).unwrap();
    let union = sorted(fx.hessian_orbits.iter().flatten().cloned().collect());
    if sorted(merged.points().to_vec()) != union {
        failures.push(format!("F216 orbit has {} points, not the union of the E108 orbits", merged.size()));
    }

    for id in ["H648", "PSL27", "A6_3FOLD"] {
        let r = small_orbits(&group(id), 8).unwrap();
        if !r.sporadic.is_empty() || !r.families.is_empty() || !r.complete {
            failures.push(format!("{id} has orbits of size at most 8: {:?}", r.sporadic_sizes()));
        }
    }

    for id in ["A5_I", "A5_II"] {
        let g = group(id);
        let r = small_orbits(&g, 8).unwrap();
        if r.sporadic_sizes() != [6] || !r.families.is_empty() || !gp(r.sporadic[0].points()) {
            failures.push(format!("{id} small orbits {:?}", r.sporadic_sizes()));
        }
        let of_order = |k| (0..g.proj_order()).find(|&i| g.element_orders()[i] == k).map(|i| g.rep(i).clone()).unwrap();
        let mut sizes = eigen_orbit_sizes(&g, &of_order(5), &of_order(3)).unwrap();
        sizes.sort_unstable();
        let mut rest = sizes.clone();
        let mut has = true;
        for x in [6, 10] {
            match rest.iter().position(|&y| y == x) {
                Some(i) => {
                    rest.remove(i);
                }
                None => has = false,
            }
        }
        if !has || !rest.iter().all(|x| [12, 20].contains(x)) {
            failures.push(format!("{id} eigen-orbit sizes {sizes:?}"));
        }
    }

    let psl = build("PSL27").unwrap();
    let sizes = eigen_orbit_sizes(&group("PSL27"), &psl.generators[0], &psl.generators[1]).unwrap();
    if !sizes.iter().all(|x| [21, 24, 28, 56].contains(x)) {
        failures.push(format!("PSL27 eigen-orbit sizes {sizes:?}"));
    }
    let a6 = build("A6_3FOLD").unwrap();
    let (a, b) = (&a6.generators[0], &a6.generators[1]);
    let sizes = eigen_orbit_sizes(&group("A6_3FOLD"), b, &(&(a * b) * b)).unwrap();
    if !sizes.iter().all(|x| [36, 45, 72, 90].contains(x)) {
        failures.push(format!("A6_3FOLD eigen-orbit sizes {sizes:?}"));
    }
    finish(4, "primitive orbit inventories", failures);
}

fn sorted(mut v: Vec<ProjPoint>) -> Vec<ProjPoint> {
    v.sort();
    v
}

#[test]
fn criterion_5_link_outcomes() {
    let mut failures = Vec::new();
    let axes: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|v| ProjPoint::from_ints(*v).unwrap()).collect();

    for id in ["C3xC3_MONO", "A4_MONO", "S4_MONO", "T_2_7", "T_4_7", "T_4_21", "T_16_21"] {
        let links = links_of(id, &axes);
        let cremona = links.iter().any(|l| {
            l.lands_on_p2()
                && matches!(&l.kind, LinkKind::TypeII { contracted_orbits, .. }
                    if contracted_orbits.len() == 1 && contracted_orbits[0].len() == 3
                        && contracted_orbits[0].iter().all(|c| matches!(c, DPClass::Plane { d: 1, .. })))
        });
        if !cremona {
            failures.push(format!("{id}: no Cremona link from the three-point orbit"));
        }
        if links.iter().any(|l| l.is_type_i()) {
            failures.push(format!("{id}: a fibration class exists on three points"));
        }
    }

    let c9 = group("C3xC3_MONO");
    let r = small_orbits(&c9, 8).unwrap();
    let pts = [r.sporadic[0].points(), r.sporadic[1].points()].concat();
    let action = PermAction::from_group(&c9, &pts).unwrap();
    let orbits = class_orbits(&action, &neg_one_classes(6).unwrap()).unwrap();
    let total: usize = orbits.iter().map(Vec::len).sum();
    if total != 27 || orbits.len() != 9 || !orbits.iter().all(|o| o.len() == 3) {
        failures.push(format!(
            "C3xC3 double orbit: {total} classes in {} orbits of sizes {:?}, expected 9 orbits of 3",
            orbits.len(),
            orbits.iter().map(Vec::len).collect::<Vec<_>>()
        ));
    }
    let pair_to_plane = links_of("C3xC3_MONO", &pts).iter().any(|l| {
        l.lands_on_p2() && matches!(&l.kind, LinkKind::TypeII { contracted_orbits, .. } if contracted_orbits.len() == 2)
    });
    if !pair_to_plane {
        failures.push("C3xC3 double orbit: no pair of class orbits contracts to P2".into());
    }

    for id in ["E108", "A5_I", "A5_II"] {
        let r = small_orbits(&group(id), 8).unwrap();
        for o in &r.sporadic {
            let conics = links_of(id, o.points()).iter().any(|l| {
                l.lands_on_p2()
                    && matches!(&l.kind, LinkKind::TypeII { contracted_orbits, .. }
                        if contracted_orbits.len() == 1 && contracted_orbits[0].len() == 6
                            && contracted_orbits[0].iter().all(|c| matches!(c, DPClass::Plane { d: 2, .. })))
            });
            if !conics {
                failures.push(format!("{id}: contracting the six conics does not reach P2"));
            }
        }
    }

    let r = small_orbits(&group("T_2_7"), 8).unwrap();
    for o in r.sporadic.iter().filter(|o| o.size() == 7) {
        let bertini = links_of("T_2_7", o.points()).iter().any(|l| {
            matches!(&l.kind, LinkKind::TypeII { contracted_orbits, result_degree: 9, .. }
                if contracted_orbits.iter().flatten().all(|c| matches!(c, DPClass::Plane { d: 3, .. })))
        });
        if !bertini {
            failures.push("T_2_7: no Bertini contraction to degree 9".into());
        }
    }

    let fibre = DPClass::plane(2, vec![1, 1, 1, 1]).unwrap();
    for id in ["A4_MONO", "S4_MONO"] {
        let o = orbit(&group(id), &ProjPoint::from_ints([1, 1, 1]).unwrap(), 8).unwrap();
        let found = links_of(id, o.points())
            .iter()
            .any(|l| matches!(&l.kind, LinkKind::TypeI { fibration_class } if *fibration_class == fibre));
        if !found {
            failures.push(format!("{id}: no fibration class (2;1,1,1,1)"));
        }
    }
    finish(5, "elementary link outcomes", failures);
}

#[test]
fn criterion_6_rigidity_verdicts() {
    let mut failures = Vec::new();
    for id in IDS {
        let v = rigidity_verdict(&group(id)).unwrap();
        let expect_rigid = !matches!(id, "A4_MONO" | "S4_MONO" | "INTRANSITIVE_SAMPLE");
        if v.rigid != expect_rigid {
            failures.push(format!("{id}: rigid = {}, expected {expect_rigid}", v.rigid));
        }
        if !v.rigid && v.witness.is_none() {
            failures.push(format!("{id}: not rigid but no witness link"));
        }
        if v.rigid && v.witness.is_some() {
            failures.push(format!("{id}: rigid but a witness was reported"));
        }
    }
    finish(6, "rigidity verdicts", failures);
}

fn random_num(rng: &mut ChaCha8Rng, n: u32) -> CycloNum {
    let deg = planar_rigidity::cyclo::euler_phi(n as u64) as usize;
    let coeffs: Vec<Rational> =
        (0..deg).map(|_| Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into())).collect();
    CycloNum::from_coeffs(n, &coeffs).unwrap()
}

#[test]
fn criterion_7_property_suites() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    for n in [1u32, 3, 4, 5, 7, 9, 12, 15, 20, 21] {
        for _ in 0..20 {
            let (a, b, c) = (random_num(&mut rng, n), random_num(&mut rng, n), random_num(&mut rng, n));
            let assoc = &(&a * &b) * &c == &a * &(&b * &c) && &(&a + &b) + &c == &a + &(&b + &c);
            let comm = &a * &b == &b * &a && &a + &b == &b + &a;
            let dist = &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
            let inv = a.is_zero() || (&a * &a.inv().unwrap()).is_one();
            let hom = (1..n as i64).filter(|k| num_integer::gcd(*k, n as i64) == 1).all(|k| {
                (&a * &b).galois(k).unwrap() == &a.galois(k).unwrap() * &b.galois(k).unwrap()
            });
            if !(assoc && comm && dist && inv && hom) {
                failures.push(format!("field axioms fail at conductor {n} for {a}, {b}, {c}"));
            }
        }
    }

    for n in 1..=60 {
        if !cyclotomic_product_holds(n) {
            failures.push(format!("x^{n} - 1 is not the product of its cyclotomic factors"));
        }
    }

    for id in IDS {
        for m in build(id).unwrap().generators {
            if let Err(e) = char_poly_consistent(&m) {
                failures.push(format!("{id}: {e}"));
            }
        }
    }

    for id in IDS {
        let g = group(id);
        let mut sample_rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let v = [sample_rng.gen_range(-5..=5), sample_rng.gen_range(-5..=5), sample_rng.gen_range(1..=5)];
            let p = ProjPoint::from_ints(v).unwrap();
            let size = orbit(&g, &p, g.proj_order()).unwrap().size();
            if g.proj_order() % size != 0 {
                failures.push(format!("{id}: orbit size {size} does not divide {}", g.proj_order()));
            }
        }
    }

    for id in IDS {
        let g = group(id);
        if g.proj_order() > 108 {
            continue;
        }
        let report = small_orbits(&g, 8).unwrap();
        let sample = oracle_points(&g, 500, &mut ChaCha8Rng::seed_from_u64(500));
        for m in missing_orbits(&g, &report, &sample) {
            failures.push(format!("{id}: {m} missing from the small-orbit report"));
        }
    }

    let expected = [1, 3, 6, 10, 16, 27, 56, 240];
    for n in 1..=8 {
        let lib = neg_one_classes(n).unwrap().len();
        let oracle = neg_one_count_oracle(n, 8);
        if lib != expected[n - 1] || oracle != expected[n - 1] {
            failures.push(format!("n = {n}: library {lib}, oracle {oracle}, expected {}", expected[n - 1]));
        }
    }
    finish(7, "property suites", failures);
}

#[test]
fn criterion_8_verify_paper() {
    let bin = env!("CARGO_BIN_EXE_planar-rigidity");
    let spawn = || std::thread::spawn(move || Command::new(bin).args(["verify-paper"]).output().unwrap());
    let (first, second) = (spawn(), spawn());
    let (first, second) = (first.join().unwrap(), second.join().unwrap());
    let mut failures = Vec::new();
    if first.stdout != second.stdout {
        failures.push("two runs produced different reports".into());
    }
    if first.status.code() != Some(0) {
        failures.push(format!("exit code {:?}", first.status.code()));
        let text = String::from_utf8_lossy(&first.stdout);
        failures.extend(text.lines().filter(|l| l.starts_with("FAIL")).map(str::to_string));
    }
    finish(8, "verify-paper passes and is byte-stable", failures);
}

#[test]
fn ledger_examples_hold() {
    // The six S4 points through (0:1:1) form a complete quadrilateral.
    let o = orbit(&group("S4_MONO"), &ProjPoint::from_ints([0, 1, 1]).unwrap(), 8).unwrap();
    let report = general_position(o.points()).unwrap();
    assert!(matches!(report.failure, Some(GenPosFailure::Collinear(_))));
}
