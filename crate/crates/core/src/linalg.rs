//! Exact linear algebra over cyclotomic fields.
//!
//! [`Mat3`] is the group-element type. [`kernel`] and [`rank`] work on small
//! rectangular systems (up to 12×12) and drive eigenspaces and the
//! general-position tests.

use std::fmt;
use std::ops::Mul;

use crate::cyclo::{checked_lcm, CycloNum};
use crate::error::{Error, Result};

/// Default cap for [`Mat3::order`].
pub const DEFAULT_ORDER_CAP: u32 = 10_000;

/// A 3×3 matrix whose entries share one conductor.
///
/// Equality compares values, so the same matrix stored at two conductors is equal.
#[derive(Clone)]
pub struct Mat3 {
    n: u32,
    e: [[CycloNum; 3]; 3],
}

impl PartialEq for Mat3 {
    fn eq(&self, other: &Self) -> bool {
        self.e == other.e
    }
}

impl Eq for Mat3 {}

/// `λ³ − t·λ² + s·λ − d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    pub t: CycloNum,
    pub s: CycloNum,
    pub d: CycloNum,
}

impl CharPoly {
    pub fn eval(&self, x: &CycloNum) -> CycloNum {
        // Horner: ((x − t)·x + s)·x − d
        let a = x - &self.t;
        let b = &(&a * x) + &self.s;
        &(&b * x) - &self.d
    }
}

impl Mat3 {
    /// Build from rows, embedding every entry into the lcm of their conductors.
    pub fn new(rows: [[CycloNum; 3]; 3]) -> Result<Self> {
        let mut n = 1;
        for row in &rows {
            for x in row {
                n = checked_lcm(n, x.conductor())?;
            }
        }
        let mut e = rows;
        for row in e.iter_mut() {
            for x in row.iter_mut() {
                if x.conductor() != n {
                    *x = x.embed(n)?;
                }
            }
        }
        Ok(Mat3 { n, e })
    }

    pub fn from_ints(conductor: u32, rows: [[i64; 3]; 3]) -> Result<Self> {
        let mut out = Vec::with_capacity(9);
        for row in rows {
            for v in row {
                out.push(CycloNum::from_int(v, conductor)?);
            }
        }
        let mut it = out.into_iter();
        let e = std::array::from_fn(|_| std::array::from_fn(|_| it.next().expect("nine entries")));
        Ok(Mat3 { n: conductor, e })
    }

    pub fn identity(conductor: u32) -> Result<Self> {
        Self::from_ints(conductor, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn diagonal(a: CycloNum, b: CycloNum, c: CycloNum) -> Result<Self> {
        let z = CycloNum::zero(1)?;
        Self::new([[a, z.clone(), z.clone()], [z.clone(), b, z.clone()], [z.clone(), z, c]])
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.e[i][j]
    }

    pub fn rows(&self) -> &[[CycloNum; 3]; 3] {
        &self.e
    }

    fn map(&self, f: impl Fn(&CycloNum) -> CycloNum) -> Mat3 {
        Mat3 { n: self.n, e: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.e[i][j]))) }
    }

    pub fn embed(&self, target: u32) -> Result<Self> {
        if target == self.n {
            return Ok(self.clone());
        }
        let mut e = self.e.clone();
        for row in e.iter_mut() {
            for x in row.iter_mut() {
                *x = x.embed(target)?;
            }
        }
        Ok(Mat3 { n: target, e })
    }

    /// Apply the field automorphism ζ ↦ ζ^k entrywise.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let mut e = self.e.clone();
        for row in e.iter_mut() {
            for x in row.iter_mut() {
                *x = x.galois(k)?;
            }
        }
        Ok(Mat3 { n: self.n, e })
    }

    pub fn scale(&self, c: &CycloNum) -> Mat3 {
        let m = self.map(|x| x * c);
        let n = m.e[0][0].conductor();
        Mat3 { n, ..m }
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3 { n: self.n, e: std::array::from_fn(|i| std::array::from_fn(|j| self.e[j][i].clone())) }
    }

    pub fn det(&self) -> CycloNum {
        let m = &self.e;
        let a = &(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]);
        let b = &(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]);
        let c = &(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]);
        &(&(&m[0][0] * &a) - &(&m[0][1] * &b)) + &(&m[0][2] * &c)
    }

    fn cofactor(&self, i: usize, j: usize) -> CycloNum {
        let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        let m = &self.e;
        let minor = &(&m[r[0]][c[0]] * &m[r[1]][c[1]]) - &(&m[r[0]][c[1]] * &m[r[1]][c[0]]);
        if (i + j) % 2 == 0 {
            minor
        } else {
            -minor
        }
    }

    pub fn inv(&self) -> Result<Mat3> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let di = det.inv()?;
        Ok(Mat3 {
            n: self.n,
            e: std::array::from_fn(|i| std::array::from_fn(|j| &self.cofactor(j, i) * &di)),
        })
    }

    /// `(A⁻¹)ᵀ`, the action on dual coordinates of lines.
    pub fn inverse_transpose(&self) -> Result<Mat3> {
        Ok(self.inv()?.transpose())
    }

    pub fn pow(&self, e: i64) -> Result<Mat3> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Mat3::identity(self.n)?;
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| if i == j { self.e[i][j].is_one() } else { self.e[i][j].is_zero() }))
    }

    /// `Some(c)` when the matrix is `c·I`.
    pub fn as_scalar(&self) -> Option<CycloNum> {
        let c = &self.e[0][0];
        let ok = (0..3).all(|i| {
            (0..3).all(|j| if i == j { self.e[i][j] == *c } else { self.e[i][j].is_zero() })
        });
        ok.then(|| c.clone())
    }

    /// Smallest `t >= 1` with `A^t = I`.
    pub fn order(&self, cap: u32) -> Result<u32> {
        let mut cur = self.clone();
        for t in 1..=cap {
            if cur.is_identity() {
                return Ok(t);
            }
            cur = &cur * self;
        }
        Err(Error::NotFiniteOrder { cap })
    }

    pub fn char_poly(&self) -> CharPoly {
        let m = &self.e;
        let t = &(&m[0][0] + &m[1][1]) + &m[2][2];
        let s = &(&self.cofactor(0, 0) + &self.cofactor(1, 1)) + &self.cofactor(2, 2);
        CharPoly { t, s, d: self.det() }
    }

    pub fn apply(&self, v: &[CycloNum; 3]) -> [CycloNum; 3] {
        std::array::from_fn(|i| {
            let r = &self.e[i];
            &(&(&r[0] * &v[0]) + &(&r[1] * &v[1])) + &(&r[2] * &v[2])
        })
    }

    /// Rows of `A − λI` as a generic system for [`kernel`].
    fn shifted(&self, lambda: &CycloNum) -> Vec<Vec<CycloNum>> {
        (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == j { &self.e[i][j] - lambda } else { self.e[i][j].clone() })
                    .collect()
            })
            .collect()
    }
}

impl<'a> Mul<&'a Mat3> for &'a Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: &'a Mat3) -> Mat3 {
        let (a, b);
        let (l, r) = if self.n == rhs.n {
            (self, rhs)
        } else {
            let n = checked_lcm(self.n, rhs.n).unwrap_or_else(|e| panic!("{e}"));
            a = self.embed(n).expect("lcm");
            b = rhs.embed(n).expect("lcm");
            (&a, &b)
        };
        Mat3 {
            n: l.n,
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let x = &(&l.e[i][0] * &r.e[0][j]) + &(&l.e[i][1] * &r.e[1][j]);
                    &x + &(&l.e[i][2] * &r.e[2][j])
                })
            }),
        }
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        &self * &rhs
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat3[{}]{self}", self.n)
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.e.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}, {}, {}", row[0], row[1], row[2])?;
        }
        write!(f, "]")
    }
}

/// A linear subspace given by an independent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub basis: Vec<Vec<CycloNum>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Intersection with another subspace of the same ambient space.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.basis.is_empty() || other.basis.is_empty() {
            return Subspace { basis: vec![] };
        }
        // Solve Σ a_i u_i − Σ b_j v_j = 0 and map the a-part back.
        let dim = self.basis[0].len();
        let cols = self.dim() + other.dim();
        let rows: Vec<Vec<CycloNum>> = (0..dim)
            .map(|r| {
                let mut row: Vec<CycloNum> = self.basis.iter().map(|u| u[r].clone()).collect();
                row.extend(other.basis.iter().map(|v| -&v[r]));
                row
            })
            .collect();
        let k = kernel(&rows, cols);
        let raw: Vec<Vec<CycloNum>> = k
            .basis
            .iter()
            .map(|coef| {
                (0..dim)
                    .map(|r| {
                        self.basis.iter().zip(coef).fold(zero_like(&coef[0]), |acc, (u, a)| &acc + &(&u[r] * a))
                    })
                    .collect()
            })
            .collect();
        // The u_i are independent, so these vectors are too.
        Subspace { basis: raw }
    }
}

fn zero_like(x: &CycloNum) -> CycloNum {
    CycloNum::zero(x.conductor()).expect("conductor already valid")
}

fn common_conductor(rows: &[Vec<CycloNum>]) -> u32 {
    rows.iter()
        .flatten()
        .fold(1, |n, x| checked_lcm(n, x.conductor()).unwrap_or_else(|e| panic!("{e}")))
}

/// Reduced row echelon form with first-nonzero pivoting; returns pivot columns.
fn rref(rows: &[Vec<CycloNum>], ncols: usize) -> (Vec<Vec<CycloNum>>, Vec<usize>) {
    let n = common_conductor(rows);
    let mut m: Vec<Vec<CycloNum>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length must equal the column count");
            r.iter().map(|x| x.embed(n).expect("lcm")).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for v in m[r].iter_mut().skip(c) {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..ncols {
                if m[r][j].is_zero() {
                    continue;
                }
                let t = &m[r][j] * &f;
                m[i][j] = &m[i][j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(rows: &[Vec<CycloNum>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Null space basis, one vector per free column (that column set to 1).
pub fn kernel(rows: &[Vec<CycloNum>], ncols: usize) -> Subspace {
    let (m, pivots) = rref(rows, ncols);
    let n = if rows.is_empty() { 1 } else { common_conductor(rows) };
    let zero = CycloNum::zero(n).expect("valid conductor");
    let one = CycloNum::one(n).expect("valid conductor");
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); ncols];
        v[free] = one.clone();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&m[r][free];
        }
        basis.push(v);
    }
    Subspace { basis }
}

/// An eigenvalue with its eigenspace.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub value: CycloNum,
    /// `j` with `value = ζ_t^j`, where `t` is the order of the matrix.
    pub exponent: u32,
    pub space: Subspace,
}

/// All eigenvalues of a finite-order matrix, found among the t-th roots of
/// unity where t is its order, in increasing exponent.
pub fn root_of_unity_eigenvalues(a: &Mat3) -> Result<Vec<Eigen>> {
    let t = a.order(DEFAULT_ORDER_CAP)?;
    let big = checked_lcm(a.conductor(), t)?;
    let a = a.embed(big)?;
    let cp = a.char_poly();
    let mut out = Vec::new();
    let mut total = 0;
    for j in 0..t {
        let lambda = CycloNum::zeta_pow(big, (j * (big / t)) as i64)?;
        if !cp.eval(&lambda).is_zero() {
            continue;
        }
        let space = kernel(&a.shifted(&lambda), 3);
        total += space.dim();
        out.push(Eigen { value: lambda, exponent: j, space });
        if total == 3 {
            break;
        }
    }
    debug_assert_eq!(total, 3, "finite-order matrices are diagonalizable");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau() -> Mat3 {
        Mat3::from_ints(1, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]).unwrap()
    }

    #[test]
    fn tau_basics() {
        let t = tau();
        assert!(t.det().is_one());
        assert!((&(&t * &t) * &t).is_identity());
        assert_eq!(t.order(10).unwrap(), 3);
        let cp = t.char_poly();
        assert!(cp.t.is_zero() && cp.s.is_zero() && cp.d.is_one());
    }

    #[test]
    fn equality_ignores_storage_conductor() {
        let t = tau();
        assert_eq!(t, t.embed(21).unwrap());
        assert_ne!(t, Mat3::identity(7).unwrap());
    }

    #[test]
    fn inverse_and_singular() {
        let t = tau();
        assert!((&t * &t.inv().unwrap()).is_identity());
        let z = Mat3::from_ints(1, [[1, 2, 3], [2, 4, 6], [0, 0, 1]]).unwrap();
        assert_eq!(z.inv().unwrap_err(), Error::Singular);
    }

    #[test]
    fn order_cap() {
        let m = Mat3::from_ints(1, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(m.order(50).unwrap_err(), Error::NotFiniteOrder { cap: 50 });
    }

    #[test]
    fn kernel_and_rank() {
        let zero: Vec<Vec<CycloNum>> =
            (0..3).map(|_| (0..3).map(|_| CycloNum::zero(1).unwrap()).collect()).collect();
        assert_eq!(rank(&zero, 3), 0);
        assert_eq!(kernel(&zero, 3).dim(), 3);
        let k = kernel(&tau().shifted(&CycloNum::one(1).unwrap()), 3);
        assert_eq!(k.dim(), 1);
        assert!(k.basis[0].iter().all(|x| x.is_one()));
    }

    #[test]
    fn eigen_of_tau_and_reflection() {
        let ev = root_of_unity_eigenvalues(&tau()).unwrap();
        assert_eq!(ev.len(), 3);
        assert!(ev[0].value.is_one());
        assert!(ev.iter().all(|e| e.space.dim() == 1));
        let r = Mat3::from_ints(1, [[1, 0, 0], [0, -1, 0], [0, 0, -1]]).unwrap();
        let ev = root_of_unity_eigenvalues(&r).unwrap();
        assert_eq!(ev.iter().map(|e| e.space.dim()).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn subspace_intersection() {
        let one = |v: [i64; 3]| v.iter().map(|&x| CycloNum::from_int(x, 1).unwrap()).collect::<Vec<_>>();
        let a = Subspace { basis: vec![one([1, 0, 0]), one([0, 1, 0])] };
        let b = Subspace { basis: vec![one([0, 1, 0]), one([0, 0, 1])] };
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.basis[0][0].is_zero() && c.basis[0][2].is_zero());
    }
}
