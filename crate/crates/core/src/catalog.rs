//! Named finite subgroups of SL(3,C), their monomial building blocks, fixed
//! reference points and conics, and the brute-force survey of the groups
//! `⟨M_k(1,a,−(a+1)), τ⟩`.

use rayon::prelude::*;

use crate::cyclo::{checked_lcm, parse_expr, CycloNum};
use crate::error::{Error, Result};
use crate::linalg::Mat3;
use crate::orbits::small_orbits;
use crate::projgroup::{closure, ProjElement, ProjPoint, DEFAULT_GROUP_CAP};

/// Every id accepted by [`build`], in catalog order.
pub const IDS: [&str; 17] = [
    "C3xC3_MONO",
    "A4_MONO",
    "S4_MONO",
    "T_2_7",
    "T_4_7",
    "T_4_21",
    "T_16_21",
    "E108",
    "F216",
    "H648",
    "A5_I",
    "A5_II",
    "A5_W",
    "PSL27",
    "PSL27_W",
    "A6_3FOLD",
    "INTRANSITIVE_SAMPLE",
];

/// A compiled-in group with its expected sizes.
///
/// `sl_order` is the size of the matrix group generated inside SL(3,C);
/// `proj_order` the size of its image in PGL(3,C).
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub conductor: u32,
    pub generators: Vec<Mat3>,
    pub sl_order: usize,
    pub proj_order: usize,
    pub citation: &'static str,
    pub description: &'static str,
}

/// Parameters of the anti-diagonal element `σ`.
#[derive(Debug, Clone)]
pub struct SigmaParams {
    pub alpha: CycloNum,
    pub beta: CycloNum,
    pub gamma: CycloNum,
}

fn num(text: &str, n: u32) -> CycloNum {
    parse_expr(text, n).expect("compiled-in expression")
}

fn mat(n: u32, rows: [[&str; 3]; 3]) -> Mat3 {
    Mat3::new(rows.map(|r| r.map(|e| num(e, n)))).expect("compiled-in matrix")
}

/// `diag(ζ_k^a, ζ_k^b, ζ_k^c)`, requiring `a + b + c ≡ 0 (mod k)`.
pub fn diag_matrix(k: u32, a: i64, b: i64, c: i64) -> Result<Mat3> {
    if k == 0 {
        return Err(Error::Input("k must be positive".into()));
    }
    if (a + b + c).rem_euclid(k as i64) != 0 {
        return Err(Error::Constraint(format!(
            "diag exponents ({a},{b},{c}) do not sum to 0 mod {k}, determinant is not 1"
        )));
    }
    Mat3::diagonal(CycloNum::zeta_pow(k, a)?, CycloNum::zeta_pow(k, b)?, CycloNum::zeta_pow(k, c)?)
}

/// The coordinate 3-cycle `(x:y:z) ↦ (y:z:x)`.
pub fn tau() -> Mat3 {
    Mat3::from_ints(1, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]).expect("integer matrix")
}

/// `[[α,0,0],[0,0,αβ],[0,αγ,0]]`, which has determinant `−α³βγ`.
pub fn sigma(params: &SigmaParams) -> Result<Mat3> {
    let z = CycloNum::zero(1)?;
    let m = Mat3::new([
        [params.alpha.clone(), z.clone(), z.clone()],
        [z.clone(), z.clone(), &params.alpha * &params.beta],
        [z.clone(), &params.alpha * &params.gamma, z],
    ])?;
    if !m.det().is_one() {
        return Err(Error::Constraint(format!("sigma has determinant {}, not 1", m.det())));
    }
    Ok(m)
}

fn s_matrix() -> Mat3 {
    diag_matrix(3, 0, 1, 2).expect("valid exponents")
}

fn w_matrix() -> Mat3 {
    let w = CycloNum::zeta(3).expect("conductor 3");
    Mat3::diagonal(w.clone(), w.clone(), w).expect("scalar")
}

/// `(1/√−3)·[[1,1,1],[1,ω,ω²],[1,ω²,ω]]` with `√−3 = 1 + 2ω`.
fn v_matrix() -> Mat3 {
    let f = mat(3, [["1", "1", "1"], ["1", "z", "z^2"], ["1", "z^2", "z"]]);
    f.scale(&num("1/(1 + 2*z)", 3))
}

/// `diag(ε, ε, εω)` with `ε = ζ_9^2`, the first power of ζ_9 whose cube is ω².
fn u_matrix() -> Mat3 {
    let eps = (1..9)
        .map(|j| CycloNum::zeta_pow(9, j).expect("conductor 9"))
        .find(|e| e.pow(3).expect("power") == CycloNum::zeta_pow(3, 2).expect("conductor 3"))
        .expect("a cube root of ω² exists in Q(ζ_9)");
    let epsw = &eps * &CycloNum::zeta(3).expect("conductor 3");
    Mat3::diagonal(eps.clone(), eps, epsw).expect("diagonal")
}

/// The order-2 icosahedral element over Q(√5); golden ratio `φ = −(ζ_5² + ζ_5³)`.
fn icosahedral_involution() -> Mat3 {
    let phi = "(-z^2 - z^3)";
    let phi_inv = "(z + z^4)";
    let m = mat(5, [["-1", phi, phi_inv], [phi, phi_inv, "1"], [phi_inv, "1", &format!("-{phi}")]]);
    m.scale(&num("1/2", 5))
}

/// Klein's order-2 generator, `−(1/√−7)·[(ζ^a − ζ^{−a})]` on a circulant pattern.
fn klein_involution() -> Mat3 {
    let a = "z - z^6";
    let b = "z^2 - z^5";
    let c = "z^4 - z^3";
    let m = mat(7, [[a, b, c], [b, c, a], [c, a, b]]);
    m.scale(&num("-1/(z + z^2 + z^4 - z^3 - z^5 - z^6)", 7))
}

/// Order-2 element normalizing the Hessian configuration, over Q(ζ_3).
fn valentiner_x() -> Mat3 {
    mat(3, [["1", "0", "0"], ["0", "0", "-z^2"], ["0", "z", "0"]])
}

fn t_group(a: i64, k: u32) -> Vec<Mat3> {
    vec![diag_matrix(k, 1, a, -(a + 1)).expect("exponents sum to 0"), tau()]
}

fn a4_generators() -> Vec<Mat3> {
    vec![diag_matrix(2, 0, 1, 1).expect("valid"), diag_matrix(2, 1, 0, 1).expect("valid"), tau()]
}

fn e108_generators() -> Vec<Mat3> {
    vec![s_matrix(), tau(), v_matrix()]
}

fn f216_generators() -> Vec<Mat3> {
    let u = u_matrix();
    let p = &(&u * &v_matrix()) * &u.inv().expect("invertible");
    let mut g = e108_generators();
    g.push(p);
    g
}

fn a5_generators() -> Vec<Mat3> {
    vec![tau(), icosahedral_involution()]
}

/// Build a catalog group by id.
pub fn build(id: &str) -> Result<CatalogEntry> {
    let (generators, sl_order, proj_order, citation, description): (Vec<Mat3>, usize, usize, &str, &str) =
        match id {
            "C3xC3_MONO" => (
                vec![s_matrix(), tau()],
                27,
                9,
                "monomial groups: the group generated by S and T",
                "⟨S, T⟩, abelian of order 9 in PGL(3,C)",
            ),
            "A4_MONO" => (
                a4_generators(),
                12,
                12,
                "monomial groups: the case k = 2",
                "diagonal Klein four-group extended by the 3-cycle",
            ),
            "S4_MONO" => {
                let mut g = a4_generators();
                let params = SigmaParams {
                    alpha: CycloNum::from_int(-1, 1)?,
                    beta: CycloNum::from_int(1, 1)?,
                    gamma: CycloNum::from_int(1, 1)?,
                };
                g.push(sigma(&params)?);
                (g, 24, 24, "monomial groups with σ: α = −1, β = γ = 1", "A4_MONO extended by σ")
            }
            "T_2_7" => (t_group(2, 7), 21, 21, "groups T_(a,k): (a,k) = (2,7)", "⟨M_7(1,2,4), τ⟩"),
            "T_4_7" => (t_group(4, 7), 21, 21, "groups T_(a,k): (a,k) = (4,7)", "⟨M_7(1,4,2), τ⟩"),
            "T_4_21" => (
                t_group(4, 21),
                63,
                21,
                "groups T_(a,k): (a,k) = (4,21)",
                "⟨M_21(1,4,16), τ⟩, projectively equal to T_4_7",
            ),
            "T_16_21" => (
                t_group(16, 21),
                63,
                21,
                "groups T_(a,k): (a,k) = (16,21)",
                "⟨M_21(1,16,4), τ⟩, projectively equal to T_2_7",
            ),
            "E108" => (
                e108_generators(),
                108,
                36,
                "Hessian chain: E108 = ⟨S, T, V⟩",
                "Hessian subgroup of order 108 in SL(3,C)",
            ),
            "F216" => (
                f216_generators(),
                216,
                72,
                "Hessian chain: F216 = ⟨S, T, V, UVU⁻¹⟩",
                "Hessian subgroup of order 216 in SL(3,C)",
            ),
            "H648" => {
                let mut g = f216_generators();
                g.push(u_matrix());
                (g, 648, 216, "Hessian chain: H648 = ⟨S, T, V, U⟩", "Hessian group of order 648 in SL(3,C)")
            }
            "A5_I" => (
                a5_generators(),
                60,
                60,
                "icosahedral group A5, first 3-dimensional representation",
                "⟨τ, icosahedral involution over Q(√5)⟩",
            ),
            "A5_II" => (
                a5_generators().iter().map(|m| m.galois(2)).collect::<Result<_>>()?,
                60,
                60,
                "icosahedral group A5, second 3-dimensional representation",
                "A5_I under ζ_5 ↦ ζ_5²",
            ),
            "A5_W" => {
                let mut g = a5_generators();
                g.push(w_matrix());
                (g, 180, 60, "icosahedral group A5 times the centre", "A5_I × ⟨ωI⟩")
            }
            "PSL27" => (
                vec![diag_matrix(7, 4, 2, 1)?, tau(), klein_involution()],
                168,
                168,
                "Klein's simple group of order 168",
                "Klein's representation over Q(ζ_7)",
            ),
            "PSL27_W" => (
                vec![diag_matrix(7, 4, 2, 1)?, tau(), klein_involution(), w_matrix()],
                504,
                168,
                "Klein's group times the centre",
                "PSL27 × ⟨ωI⟩",
            ),
            "A6_3FOLD" => {
                let c = tau();
                let b = &(&(&c * &c) * &valentiner_x()) * &c;
                (
                    vec![icosahedral_involution(), b],
                    1080,
                    360,
                    "Valentiner group 3.A6 from standard generators A (order 2) and B (order 4)",
                    "triple cover of A6 over Q(ζ_15)",
                )
            }
            "INTRANSITIVE_SAMPLE" => (
                vec![diag_matrix(5, 0, 1, 4)?],
                5,
                5,
                "groups fixing a point",
                "⟨diag(1, ζ_5, ζ_5⁴)⟩",
            ),
            other => return Err(Error::UnknownGroup(other.to_string())),
        };
    let conductor = generators.iter().try_fold(1, |n, g| checked_lcm(n, g.conductor()))?;
    let id = IDS.iter().find(|&&x| x == id).expect("matched above");
    Ok(CatalogEntry { id, conductor, generators, sl_order, proj_order, citation, description })
}

/// Conic given by coefficients on `(x², y², z², xy, xz, yz)`.
#[derive(Debug, Clone)]
pub struct Conic {
    pub name: &'static str,
    pub coeffs: [CycloNum; 6],
}

impl Conic {
    pub fn contains(&self, p: &ProjPoint) -> bool {
        let [x, y, z] = p.coords();
        let mons = [x * x, y * y, z * z, x * y, x * z, y * z];
        let mut acc = CycloNum::zero(1).expect("conductor 1");
        for (c, m) in self.coeffs.iter().zip(&mons) {
            acc = &acc + &(c * m);
        }
        acc.is_zero()
    }
}

/// Reference points and conics used by the orbit inventories.
#[derive(Debug, Clone)]
pub struct Fixtures {
    pub conics: Vec<Conic>,
    pub points: Vec<(&'static str, ProjPoint)>,
    /// The two six-point orbits of E108.
    pub hessian_orbits: [Vec<ProjPoint>; 2],
}

fn point(n: u32, coords: [&str; 3]) -> ProjPoint {
    ProjPoint::new(coords.map(|c| num(c, n))).expect("nonzero point")
}

pub fn fixtures() -> Fixtures {
    let conic = |name, c: [&str; 6]| Conic { name, coeffs: c.map(|e| num(e, 3)) };
    let conics = vec![
        conic("C1", ["1", "1", "1", "0", "0", "0"]),
        conic("C2", ["z", "-1 - z", "1", "0", "0", "0"]),
        conic("C3", ["z", "1", "-1 - z", "0", "0", "0"]),
    ];
    let points = vec![
        ("(1:1:1)", point(1, ["1", "1", "1"])),
        ("(1:ζ3:ζ3²)", point(3, ["1", "z", "z^2"])),
        ("(1:ζ3²:ζ3)", point(3, ["1", "z^2", "z"])),
        ("(0:1:1)", point(1, ["0", "1", "1"])),
        ("(0:1:ζ12)", point(12, ["0", "1", "z"])),
        ("(0:1:ζ12³)", point(12, ["0", "1", "z^3"])),
        ("(0:1:ζ12⁵)", point(12, ["0", "1", "z^5"])),
    ];
    let orbit_a = vec![
        point(1, ["1", "0", "0"]),
        point(1, ["0", "1", "0"]),
        point(1, ["0", "0", "1"]),
        point(1, ["1", "1", "1"]),
        point(3, ["1", "z", "z^2"]),
        point(3, ["1", "z^2", "z"]),
    ];
    let orbit_b = vec![
        point(3, ["1", "z", "z"]),
        point(3, ["1", "z^2", "1"]),
        point(3, ["1", "1", "z^2"]),
        point(3, ["1", "z^2", "z^2"]),
        point(3, ["1", "1", "z"]),
        point(3, ["1", "z", "1"]),
    ];
    Fixtures { conics, points, hessian_orbits: [orbit_a, orbit_b] }
}

/// `(1 : ζ_3^c : ζ_3^{2c})`.
pub fn cube_root_point(c: i64) -> ProjPoint {
    ProjPoint::new([
        CycloNum::one(3).expect("conductor 3"),
        CycloNum::zeta_pow(3, c).expect("conductor 3"),
        CycloNum::zeta_pow(3, 2 * c).expect("conductor 3"),
    ])
    .expect("nonzero point")
}

/// Outcome of one `(a, k)` cell of [`survey_t_groups`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurveyCell {
    /// The diagonal generator is a scalar matrix.
    Skipped,
    Failed(String),
    Profile {
        proj_order: usize,
        /// Sorted sizes of the sporadic orbits of size at most the bound.
        sporadic: Vec<usize>,
        /// Generic sizes of line families within the bound.
        families: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub a: u32,
    pub k: u32,
    pub cell: SurveyCell,
}

impl SurveyRow {
    pub fn has_sporadic(&self, size: usize) -> bool {
        matches!(&self.cell, SurveyCell::Profile { sporadic, .. } if sporadic.contains(&size))
    }
}

/// Small-orbit profile of every group `⟨M_k(1,a,−(a+1)), τ⟩` with
/// `2 <= k <= max_k` and `0 <= a < k`.
pub fn survey_t_groups(max_k: u32, orbit_bound: usize) -> Result<Vec<SurveyRow>> {
    if max_k > 24 {
        return Err(Error::Input("survey is limited to k <= 24".into()));
    }
    let cells: Vec<(u32, u32)> = (2..=max_k).flat_map(|k| (0..k).map(move |a| (a, k))).collect();
    let rows = cells
        .into_par_iter()
        .map(|(a, k)| {
            let cell = survey_cell(a, k, orbit_bound);
            SurveyRow { a, k, cell }
        })
        .collect();
    Ok(rows)
}

fn survey_cell(a: u32, k: u32, bound: usize) -> SurveyCell {
    let run = || -> Result<SurveyCell> {
        let d = diag_matrix(k, 1, a as i64, -(a as i64 + 1))?;
        if ProjElement::new(&d)?.is_identity() {
            return Ok(SurveyCell::Skipped);
        }
        let g = closure(&[d, tau()], DEFAULT_GROUP_CAP)?;
        let report = small_orbits(&g, bound)?;
        let mut sporadic: Vec<usize> = report.sporadic.iter().map(|o| o.size()).collect();
        sporadic.sort_unstable();
        let mut families: Vec<usize> = report.families.iter().map(|f| f.generic_orbit_size).collect();
        families.sort_unstable();
        Ok(SurveyCell::Profile { proj_order: g.proj_order(), sporadic, families })
    };
    run().unwrap_or_else(|e| SurveyCell::Failed(e.to_string()))
}

/// Generators of `T_(a,k)` for any `(a, k)`.
pub fn t_group_generators(a: i64, k: u32) -> Result<Vec<Mat3>> {
    Ok(vec![diag_matrix(k, 1, a, -(a + 1))?, tau()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants_are_one() {
        for id in IDS {
            for g in build(id).unwrap().generators {
                assert!(g.det().is_one(), "{id}: det {}", g.det());
            }
        }
    }

    #[test]
    fn building_blocks() {
        let d = diag_matrix(7, 1, 2, 4).unwrap();
        assert_eq!(*d.get(2, 2), CycloNum::zeta_pow(7, 4).unwrap());
        assert!(diag_matrix(7, 1, 2, 3).is_err());
        let s = sigma(&SigmaParams {
            alpha: CycloNum::from_int(-1, 1).unwrap(),
            beta: CycloNum::one(1).unwrap(),
            gamma: CycloNum::one(1).unwrap(),
        })
        .unwrap();
        assert_eq!(s, Mat3::from_ints(1, [[-1, 0, 0], [0, 0, -1], [0, -1, 0]]).unwrap());
        assert!(sigma(&SigmaParams {
            alpha: CycloNum::one(1).unwrap(),
            beta: CycloNum::one(1).unwrap(),
            gamma: CycloNum::one(1).unwrap(),
        })
        .is_err());
    }

    #[test]
    fn unknown_id() {
        assert_eq!(build("NOPE").unwrap_err(), Error::UnknownGroup("NOPE".into()));
    }

    #[test]
    fn fixture_conics() {
        let f = fixtures();
        let c1 = &f.conics[0];
        let p = f.points.iter().find(|(n, _)| *n == "(0:1:ζ12³)").unwrap();
        assert!(c1.contains(&p.1));
        assert!(!c1.contains(&ProjPoint::from_ints([1, 1, 1]).unwrap()));
    }
}
