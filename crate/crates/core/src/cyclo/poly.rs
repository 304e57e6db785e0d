use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer polynomial, coefficients stored from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact division by a monic polynomial; fails if there is a remainder.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        if !divisor.is_monic() {
            return Err(Error::Input("divisor must be monic".into()));
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if rem.iter().all(|c| c.is_zero()) {
                Ok(IntPoly::new(vec![]))
            } else {
                Err(Error::Input("polynomial division leaves a remainder".into()))
            };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..dd {
                rem[k - dd + j] -= &c * &divisor.coeffs[j];
            }
            quot[k - dd] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Input("polynomial division leaves a remainder".into()));
        }
        Ok(IntPoly::new(quot))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64
}

/// The n-th cyclotomic polynomial, obtained by dividing `x^n - 1` by every
/// `Φ_d` with `d` a proper divisor of `n`.
pub fn cyclotomic_polynomial(n: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::Input("cyclotomic polynomial needs n >= 1".into()));
    }
    let mut table: Vec<(u64, IntPoly)> = Vec::new();
    for d in divisors(n) {
        let mut denom = IntPoly::one();
        for (e, p) in &table {
            if d % e == 0 {
                denom = denom.mul(p);
            }
        }
        let phi_d = IntPoly::x_pow_minus_one(d as usize).div_exact(&denom)?;
        table.push((d, phi_d));
    }
    Ok(table.pop().expect("n has at least one divisor").1)
}
