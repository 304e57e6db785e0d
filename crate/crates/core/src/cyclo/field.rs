use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{cyclotomic_polynomial, euler_phi};
use crate::error::{Error, Result};

/// Largest conductor the toolkit accepts.
pub const MAX_CONDUCTOR: u32 = 2520;

/// Shared per-conductor data: the reduction modulus and the reduced powers of ζ.
#[derive(Debug)]
pub(crate) struct CycloField {
    pub(crate) n: u32,
    pub(crate) phi: usize,
    /// Φ_n from the constant term up; monic of degree `phi`.
    pub(crate) modulus: Vec<BigInt>,
    /// Exponents in 1..=n coprime to n, ascending.
    pub(crate) units: Vec<u32>,
    powers: OnceLock<Vec<Vec<BigInt>>>,
}

impl CycloField {
    fn build(n: u32) -> Result<Self> {
        let poly = cyclotomic_polynomial(n as u64)?;
        let phi = euler_phi(n as u64) as usize;
        debug_assert_eq!(poly.degree(), Some(phi));
        let units = (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).collect();
        Ok(CycloField {
            n,
            phi,
            modulus: poly.coeffs().to_vec(),
            units,
            powers: OnceLock::new(),
        })
    }

    /// ζ_n^k reduced into the power basis, for `0 <= k < n`.
    pub(crate) fn power(&self, k: usize) -> &[BigInt] {
        let table = self.powers.get_or_init(|| {
            let mut out = Vec::with_capacity(self.n as usize);
            let mut cur = vec![BigInt::zero(); self.phi];
            cur[0] = BigInt::one();
            for _ in 0..self.n {
                out.push(cur.clone());
                // multiply by x and fold x^phi back with the monic modulus
                let top = cur.pop().expect("phi >= 1");
                cur.insert(0, BigInt::zero());
                if !top.is_zero() {
                    for (c, m) in cur.iter_mut().zip(&self.modulus) {
                        *c -= &top * m;
                    }
                }
            }
            out
        });
        &table[k % self.n as usize]
    }

    /// Reduce a coefficient vector of any length modulo Φ_n.
    pub(crate) fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let phi = self.phi;
        if v.len() > phi {
            for k in (phi..v.len()).rev() {
                let c = std::mem::take(&mut v[k]);
                if c.is_zero() {
                    continue;
                }
                for j in 0..phi {
                    v[k - phi + j] -= &c * &self.modulus[j];
                }
            }
            v.truncate(phi);
        }
        v.resize(phi, BigInt::zero());
        v
    }
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<CycloField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn field(n: u32) -> Result<Arc<CycloField>> {
    if n == 0 || n > MAX_CONDUCTOR {
        return Err(Error::Conductor {
            got: n as u64,
            reason: format!("must lie in 1..={MAX_CONDUCTOR}"),
        });
    }
    if let Some(f) = cache().lock().expect("field cache poisoned").get(&n) {
        return Ok(f.clone());
    }
    let built = Arc::new(CycloField::build(n)?);
    let mut guard = cache().lock().expect("field cache poisoned");
    Ok(guard.entry(n).or_insert(built).clone())
}

pub(crate) fn lcm(a: u32, b: u32) -> u64 {
    num_integer::lcm(a as u64, b as u64)
}

pub(crate) fn checked_lcm(a: u32, b: u32) -> Result<u32> {
    let l = lcm(a, b);
    if l > MAX_CONDUCTOR as u64 {
        Err(Error::Conductor {
            got: l,
            reason: format!("lcm of {a} and {b} exceeds {MAX_CONDUCTOR}"),
        })
    } else {
        Ok(l as u32)
    }
}
