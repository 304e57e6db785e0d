use std::borrow::Cow;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{checked_lcm, field, CycloField};
use super::poly::divisors;
use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = BigRational;

/// An element of the cyclotomic field Q(ζ_n), stored in the power basis
/// `1, ζ, …, ζ^{φ(n)-1}` with one common denominator.
///
/// Values carry the conductor they were built at. Equality is semantic: two
/// values at different conductors compare equal when they agree inside
/// Q(ζ_lcm). Hashing goes through [`CycloNum::key`], which is only meaningful
/// between values at the same conductor.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Structural key of a value at a fixed conductor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumKey {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut out = CycloNum { field, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        self.den /= &g;
        for c in &mut self.num {
            *c /= &g;
        }
    }

    pub fn zero(conductor: u32) -> Result<Self> {
        let f = field(conductor)?;
        let phi = f.phi;
        Ok(CycloNum { field: f, num: vec![BigInt::zero(); phi], den: BigInt::one() })
    }

    pub fn one(conductor: u32) -> Result<Self> {
        Self::from_int(1, conductor)
    }

    pub fn from_int(v: i64, conductor: u32) -> Result<Self> {
        Self::from_rational(&Rational::from_integer(v.into()), conductor)
    }

    pub fn from_rational(r: &Rational, conductor: u32) -> Result<Self> {
        let mut out = Self::zero(conductor)?;
        out.num[0] = r.numer().clone();
        out.den = r.denom().clone();
        out.normalize();
        Ok(out)
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(conductor: u32, k: i64) -> Result<Self> {
        let f = field(conductor)?;
        let e = k.rem_euclid(conductor as i64) as usize;
        let num = f.power(e).to_vec();
        Ok(CycloNum { field: f, num, den: BigInt::one() })
    }

    pub fn zeta(conductor: u32) -> Result<Self> {
        Self::zeta_pow(conductor, 1)
    }

    /// Build from power-basis coefficients; longer vectors are reduced mod Φ_n.
    pub fn from_coeffs(conductor: u32, coeffs: &[Rational]) -> Result<Self> {
        let f = field(conductor)?;
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let num = f.reduce(num);
        Ok(Self::from_parts(f, num, den))
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    /// Number of power-basis coefficients, i.e. φ(conductor).
    pub fn degree(&self) -> usize {
        self.field.phi
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn key(&self) -> NumKey {
        NumKey { conductor: self.field.n, num: self.num.clone(), den: self.den.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Express the same element in Q(ζ_target); `target` must be a multiple of the conductor.
    pub fn embed(&self, target: u32) -> Result<Self> {
        let n = self.field.n;
        if target == n {
            return Ok(self.clone());
        }
        if target == 0 || target % n != 0 {
            return Err(Error::Conductor {
                got: target as u64,
                reason: format!("not a multiple of {n}"),
            });
        }
        let tf = field(target)?;
        let step = (target / n) as usize;
        let mut num = vec![BigInt::zero(); tf.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (acc, p) in num.iter_mut().zip(tf.power(i * step)) {
                if !p.is_zero() {
                    *acc += c * p;
                }
            }
        }
        Ok(Self::from_parts(tf, num, self.den.clone()))
    }

    fn aligned<'a>(a: &'a Self, b: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        if a.field.n == b.field.n {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let target = checked_lcm(a.field.n, b.field.n)
            .unwrap_or_else(|e| panic!("mixed-conductor arithmetic: {e}"));
        (
            Cow::Owned(a.embed(target).expect("lcm is a multiple")),
            Cow::Owned(b.embed(target).expect("lcm is a multiple")),
        )
    }

    fn add_same(a: &Self, b: &Self, negate_b: bool) -> Self {
        let num: Vec<BigInt> = if a.den == b.den {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if negate_b { x - y } else { x + y })
                .collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| {
                    let l = x * &b.den;
                    let r = y * &a.den;
                    if negate_b { l - r } else { l + r }
                })
                .collect()
        };
        let den = if a.den == b.den { a.den.clone() } else { &a.den * &b.den };
        Self::from_parts(a.field.clone(), num, den)
    }

    fn mul_same(a: &Self, b: &Self) -> Self {
        let phi = a.field.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let num = a.field.reduce(prod);
        Self::from_parts(a.field.clone(), num, &a.den * &b.den)
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * r.denom())
    }

    /// The automorphism ζ ↦ ζ^k of Q(ζ_n); `k` must be coprime to the conductor.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.field.n as i64;
        let k = k.rem_euclid(n.max(1)) as u64;
        if n > 1 && num_integer::gcd(k, n as u64) != 1 {
            return Err(Error::Input(format!("{k} is not a unit modulo {n}")));
        }
        Ok(self.galois_unchecked(k as usize))
    }

    fn galois_unchecked(&self, k: usize) -> Self {
        let f = &self.field;
        let mut num = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (acc, p) in num.iter_mut().zip(f.power(i * k)) {
                if !p.is_zero() {
                    *acc += c * p;
                }
            }
        }
        Self::from_parts(f.clone(), num, self.den.clone())
    }

    /// Multiplicative inverse through the field norm: the product of the
    /// non-trivial conjugates divided by the (rational) norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let r = Rational::new(self.den.clone(), self.num[0].clone());
            return Self::from_rational(&r, self.field.n);
        }
        let n = self.field.n;
        let mut prod: Option<Self> = None;
        for &k in &self.field.units {
            if k % n == 1 % n {
                continue;
            }
            let conj = self.galois_unchecked(k as usize);
            prod = Some(match prod {
                None => conj,
                Some(p) => Self::mul_same(&p, &conj),
            });
        }
        let prod = prod.expect("a non-rational value lives in a field of degree >= 2");
        let norm = Self::mul_same(self, &prod)
            .to_rational()
            .expect("the norm of a cyclotomic number is rational");
        Ok(prod.scale(&norm.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.field.n)?;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.field.n as usize;
        self.galois_unchecked(n.max(2) - 1)
    }

    /// Smallest conductor d dividing the current one with the value in Q(ζ_d).
    pub fn minimal_conductor(&self) -> u32 {
        if self.is_rational() {
            return 1;
        }
        let n = self.field.n;
        for d in divisors(n as u64) {
            let d = d as u32;
            if d % 4 == 2 {
                continue;
            }
            if d == n {
                return n;
            }
            let fixed = self
                .field
                .units
                .iter()
                .filter(|&&k| k % d == 1 % d)
                .all(|&k| self.galois_unchecked(k as usize) == *self);
            if fixed {
                return d;
            }
        }
        n
    }

    /// Re-express the value at a divisor `d` of its conductor, when it lies in Q(ζ_d).
    pub fn restrict(&self, d: u32) -> Result<Self> {
        let n = self.field.n;
        if d == n {
            return Ok(self.clone());
        }
        if d == 0 || n % d != 0 {
            return Err(Error::Conductor { got: d as u64, reason: format!("does not divide {n}") });
        }
        let small = field(d)?;
        let step = (n / d) as usize;
        let cols: Vec<&[BigInt]> = (0..small.phi).map(|j| self.field.power(j * step)).collect();
        let sol = solve_integer_columns(&cols, &self.num).ok_or_else(|| {
            Error::Conductor { got: d as u64, reason: "value does not lie in that subfield".into() }
        })?;
        let coeffs: Vec<Rational> =
            sol.into_iter().map(|c| c / Rational::from_integer(self.den.clone())).collect();
        Self::from_coeffs(d, &coeffs)
    }

    /// Same value at its minimal conductor.
    pub fn minimized(&self) -> Self {
        let d = self.minimal_conductor();
        self.restrict(d).expect("minimal conductor contains the value")
    }

    /// `Some((c, k))` when the value equals `c·ζ_n^k` with `c` rational.
    pub fn as_scaled_root_of_unity(&self) -> Option<(Rational, u32)> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some((r, 0));
        }
        let n = self.field.n;
        for k in 1..n {
            let back = CycloNum {
                field: self.field.clone(),
                num: self.field.power((n - k) as usize).to_vec(),
                den: BigInt::one(),
            };
            if let Some(r) = Self::mul_same(self, &back).to_rational() {
                return Some((r, k));
            }
        }
        None
    }

    /// Power-basis expression in the group-file grammar (`z` = ζ_conductor).
    pub fn to_expr(&self) -> String {
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let r = Rational::new(c.clone(), self.den.clone());
            terms.push(term(&r, k as u32));
        }
        join_terms(terms)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn term(r: &Rational, k: u32) -> (bool, String) {
    let neg = r.is_negative();
    let mag = r.abs();
    let body = match (k, mag.is_one()) {
        (0, _) => fmt_rational(&mag),
        (1, true) => "z".to_string(),
        (1, false) => format!("{}*z", fmt_rational(&mag)),
        (_, true) => format!("z^{k}"),
        (_, false) => format!("{}*z^{k}", fmt_rational(&mag)),
    };
    (neg, body)
}

fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

/// Solve `Σ x_j col_j = target` over Q by fraction-based elimination.
fn solve_integer_columns(cols: &[&[BigInt]], target: &[BigInt]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let ncols = cols.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> =
                cols.iter().map(|c| Rational::from_integer(c[i].clone())).collect();
            row.push(Rational::from_integer(target[i].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=ncols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = m[i][ncols].clone();
    }
    Some(sol)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.field.n == other.field.n {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::aligned(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.field.n, self.to_expr())
    }
}

/// Prints `c*z^k` when the value is a rational multiple of a root of unity,
/// otherwise the power-basis expression.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_scaled_root_of_unity() {
            Some((r, k)) => write!(f, "{}", join_terms(vec![term(&r, k)])),
            None => write!(f, "{}", self.to_expr()),
        }
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &'a CycloNum) -> CycloNum {
        let (a, b) = CycloNum::aligned(self, rhs);
        CycloNum::add_same(&a, &b, false)
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &'a CycloNum) -> CycloNum {
        let (a, b) = CycloNum::aligned(self, rhs);
        CycloNum::add_same(&a, &b, true)
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &'a CycloNum) -> CycloNum {
        let (a, b) = CycloNum::aligned(self, rhs);
        CycloNum::mul_same(&a, &b)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &'a CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
