//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use planar_rigidity::catalog::build;
use planar_rigidity::cyclo::{cyclotomic_polynomial, CycloNum, IntPoly};
use planar_rigidity::linalg::{root_of_unity_eigenvalues, Mat3};
use planar_rigidity::orbits::{orbit_within, SmallOrbitReport};
use planar_rigidity::projgroup::{closure, GroupData, ProjLine, ProjPoint, DEFAULT_GROUP_CAP};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn group(id: &str) -> GroupData {
    closure(&build(id).unwrap().generators, DEFAULT_GROUP_CAP).unwrap()
}

/// Prints the verdict line the acceptance suite reports and returns whether it passed.
pub fn report_line(criterion: u32, title: &str, failures: &[String]) -> bool {
    use std::io::Write;
    // Written to the process stdout directly so the line survives output capture.
    let mut text = if failures.is_empty() {
        format!("PASS criterion {criterion}: {title}\n")
    } else {
        format!("FAIL criterion {criterion}: {title}\n")
    };
    for f in failures {
        text.push_str(&format!("    {f}\n"));
    }
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).expect("stdout");
    out.flush().expect("stdout");
    failures.is_empty()
}

fn int_point(rng: &mut ChaCha8Rng, range: i64) -> ProjPoint {
    loop {
        let v = [rng.gen_range(-range..=range), rng.gen_range(-range..=range), rng.gen_range(-range..=range)];
        if v != [0, 0, 0] {
            return ProjPoint::from_ints(v).unwrap();
        }
    }
}

/// Combination `a·u + b·v` of two spanning vectors of a line.
fn on_span(u: &[CycloNum], v: &[CycloNum], a: i64, b: i64) -> Option<ProjPoint> {
    let n = u[0].conductor();
    let a = CycloNum::from_int(a, n).unwrap();
    let b = CycloNum::from_int(b, n).unwrap();
    let c: [CycloNum; 3] = std::array::from_fn(|i| &(&a * &u[i]) + &(&b * &v[i]));
    ProjPoint::new(c).ok()
}

/// Random rational points, every eigenpoint of every element, random points
/// on every eigenline, and the meets of pairs of eigenlines.
pub fn oracle_points(g: &GroupData, random: usize, rng: &mut ChaCha8Rng) -> Vec<ProjPoint> {
    let mut pts: HashSet<ProjPoint> = HashSet::new();
    for _ in 0..random {
        pts.insert(int_point(rng, 30));
    }
    let mut lines: HashSet<ProjLine> = HashSet::new();
    for i in 0..g.proj_order() {
        for e in root_of_unity_eigenvalues(g.rep(i)).unwrap() {
            let b = &e.space.basis;
            match b.len() {
                1 => {
                    if let Ok(p) = ProjPoint::new([b[0][0].clone(), b[0][1].clone(), b[0][2].clone()]) {
                        pts.insert(p);
                    }
                }
                2 => {
                    for _ in 0..3 {
                        let (x, y) = (rng.gen_range(-9..=9), rng.gen_range(1..=9));
                        pts.extend(on_span(&b[0], &b[1], x, y));
                    }
                    let p = on_span(&b[0], &b[1], 1, 0).unwrap();
                    let q = on_span(&b[0], &b[1], 0, 1).unwrap();
                    lines.insert(ProjLine::through(&p, &q).unwrap());
                }
                _ => {}
            }
        }
    }
    let lines: Vec<ProjLine> = lines.into_iter().collect();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Ok(p) = lines[i].meet(&lines[j]) {
                pts.insert(p);
            }
        }
    }
    let mut out: Vec<ProjPoint> = pts.into_iter().collect();
    out.sort();
    out
}

/// Orbits of at most `bound` points reached from the sample that the report
/// does not account for.
pub fn missing_orbits(g: &GroupData, report: &SmallOrbitReport, sample: &[ProjPoint]) -> Vec<String> {
    let mut missing = Vec::new();
    let mut seen = HashSet::new();
    for p in sample {
        let Some(o) = orbit_within(g, p, report.bound).unwrap() else { continue };
        if !seen.insert(o.representative().clone()) {
            continue;
        }
        let listed = report.find(p).is_some_and(|r| r == &o);
        let in_family = report
            .families
            .iter()
            .any(|f| f.generic_orbit_size == o.size() && o.points().iter().any(|q| f.line.contains(q)));
        let free = !report.complete && o.size() == g.proj_order();
        if !(listed || in_family || free) {
            missing.push(format!("orbit of {p} with {} points", o.size()));
        }
    }
    missing
}

/// Number of classes (d; m_1..m_n) with d² − Σm² = −1 and 3d − Σm = 1,
/// counting the exceptional classes and every d up to `max_d`.
pub fn neg_one_count_oracle(n: usize, max_d: i64) -> usize {
    fn walk(left: usize, max_m: i64, sum: i64, sq: i64, target_sum: i64, target_sq: i64, mult: &mut Vec<i64>, out: &mut usize) {
        if left == 0 {
            if sum == target_sum && sq == target_sq {
                *out += permutations(mult);
            }
            return;
        }
        for m in (0..=max_m).rev() {
            if sum + m > target_sum || sq + m * m > target_sq {
                continue;
            }
            mult.push(m);
            walk(left - 1, m, sum + m, sq + m * m, target_sum, target_sq, mult, out);
            mult.pop();
        }
    }
    fn permutations(ms: &[i64]) -> usize {
        let fact = |k: usize| (1..=k).product::<usize>();
        let mut counts = std::collections::BTreeMap::new();
        for m in ms {
            *counts.entry(*m).or_insert(0usize) += 1;
        }
        counts.values().fold(fact(ms.len()), |acc, c| acc / fact(*c))
    }
    let mut total = n;
    for d in 1..=max_d {
        let mut count = 0;
        walk(n, d, 0, 0, 3 * d - 1, d * d + 1, &mut Vec::new(), &mut count);
        total += count;
    }
    total
}

/// `x^n − 1 = Π_{d | n} Φ_d(x)`.
pub fn cyclotomic_product_holds(n: usize) -> bool {
    let mut prod = IntPoly::one();
    for d in (1..=n).filter(|d| n % d == 0) {
        prod = prod.mul(&cyclotomic_polynomial(d as u64).unwrap());
    }
    prod == IntPoly::x_pow_minus_one(n)
}

/// Cayley–Hamilton, eigenvalues as roots of the characteristic polynomial and
/// a full eigenbasis for a finite-order matrix.
pub fn char_poly_consistent(m: &Mat3) -> Result<(), String> {
    let cp = m.char_poly();
    let m2 = m * m;
    let m3 = &m2 * m;
    for i in 0..3 {
        for j in 0..3 {
            let mut v = &(m3.get(i, j) - &(&cp.t * m2.get(i, j))) + &(&cp.s * m.get(i, j));
            if i == j {
                v = &v - &cp.d;
            }
            if !v.is_zero() {
                return Err(format!("Cayley-Hamilton fails for\n{m}"));
            }
        }
    }
    let eig = root_of_unity_eigenvalues(m).map_err(|e| e.to_string())?;
    let dim: usize = eig.iter().map(|e| e.space.dim()).sum();
    if dim != 3 {
        return Err(format!("eigenspaces span dimension {dim}"));
    }
    for e in &eig {
        if !cp.eval(&e.value).is_zero() {
            return Err(format!("eigenvalue {} is not a root", e.value));
        }
        for v in &e.space.basis {
            let v3 = [v[0].clone(), v[1].clone(), v[2].clone()];
            let lhs = m.apply(&v3);
            if (0..3).any(|i| lhs[i] != &e.value * &v3[i]) {
                return Err(format!("eigenvector check fails for {}", e.value));
            }
        }
    }
    Ok(())
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
