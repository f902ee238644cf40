//! Sparse multivariate polynomials with integer coefficients. Exponent
//! vectors are packed eight bits per variable into a u128 key, so a
//! polynomial can involve at most sixteen variables with individual
//! exponents below 256; both limits are enforced, not assumed.

use crate::error::{Error, Result};
use num::{BigInt, One, Zero};
use std::collections::HashMap;

pub const MAX_VARS: usize = 16;
pub const MAX_EXP: u32 = 255;

/// Default bound on intermediate term counts for products.
pub const DEFAULT_TERM_CAP: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    terms: HashMap<u128, i64>,
}

pub fn key_from_exponents(exps: &[u8]) -> u128 {
    debug_assert!(exps.len() <= MAX_VARS);
    let mut key = 0u128;
    for (v, &e) in exps.iter().enumerate() {
        key |= (e as u128) << (8 * v);
    }
    key
}

pub fn exponent(key: u128, var: usize) -> u8 {
    (key >> (8 * var)) as u8
}

pub fn key_exponents(key: u128, nvars: usize) -> Vec<u8> {
    (0..nvars).map(|v| exponent(key, v)).collect()
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        SparsePoly {
            nvars,
            terms: HashMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(0, c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: u128) -> i64 {
        self.terms.get(&key).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u128, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn add_term(&mut self, key: u128, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(key).or_insert(0);
        *entry = entry
            .checked_add(coeff)
            .ok_or_else(|| Error::Overflow("polynomial coefficient".into()))?;
        if *entry == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (k, c) in other.terms() {
            let neg = c
                .checked_neg()
                .ok_or_else(|| Error::Overflow("polynomial coefficient".into()))?;
            out.add_term(k, neg)?;
        }
        Ok(out)
    }

    /// Largest exponent per variable over all terms.
    pub fn lane_max(&self) -> [u32; MAX_VARS] {
        let mut m = [0u32; MAX_VARS];
        for &k in self.terms.keys() {
            for (v, mv) in m.iter_mut().enumerate().take(self.nvars) {
                *mv = (*mv).max(exponent(k, v) as u32);
            }
        }
        m
    }

    pub fn mul(&self, other: &Self, term_cap: usize) -> Result<Self> {
        assert_eq!(self.nvars, other.nvars);
        let ma = self.lane_max();
        let mb = other.lane_max();
        for v in 0..self.nvars {
            if ma[v] + mb[v] > MAX_EXP {
                return Err(Error::Overflow(format!(
                    "exponent of variable {v} would exceed {MAX_EXP}"
                )));
            }
        }
        let mut out = Self::zero(self.nvars);
        for (ka, ca) in self.terms() {
            for (kb, cb) in other.terms() {
                let c = ca
                    .checked_mul(cb)
                    .ok_or_else(|| Error::Overflow("polynomial coefficient".into()))?;
                out.add_term(ka + kb, c)?;
                if out.terms.len() > term_cap {
                    return Err(Error::TermCap { cap: term_cap });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32, term_cap: usize) -> Result<Self> {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self, term_cap)?;
        }
        Ok(out)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|&k| (0..self.nvars).map(|v| exponent(k, v) as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn all_coeffs_nonneg(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// Some term with a negative coefficient, if any.
    pub fn negative_term(&self) -> Option<(Vec<u8>, i64)> {
        self.terms
            .iter()
            .filter(|(_, &c)| c < 0)
            .map(|(&k, &c)| (key_exponents(k, self.nvars), c))
            .min()
    }

    pub fn sum_coeffs(&self) -> i128 {
        self.terms.values().map(|&c| c as i128).sum()
    }

    pub fn eval_big(&self, vals: &[BigInt]) -> BigInt {
        assert_eq!(vals.len(), self.nvars);
        let lanes = self.lane_max();
        // per-variable power tables up to the largest exponent used
        let pows: Vec<Vec<BigInt>> = (0..self.nvars)
            .map(|v| {
                let mut t = Vec::with_capacity(lanes[v] as usize + 1);
                t.push(BigInt::one());
                for e in 1..=lanes[v] as usize {
                    let next = &t[e - 1] * &vals[v];
                    t.push(next);
                }
                t
            })
            .collect();
        let mut acc = BigInt::zero();
        for (k, c) in self.terms() {
            let mut term = BigInt::from(c);
            for (v, pv) in pows.iter().enumerate() {
                let e = exponent(k, v) as usize;
                if e > 0 {
                    term *= &pv[e];
                }
            }
            acc += term;
        }
        acc
    }

    /// Terms sorted lexicographically by exponent vector; the
    /// canonical order for serialization and comparison output.
    pub fn sorted_terms(&self) -> Vec<(Vec<u8>, i64)> {
        let mut out: Vec<(Vec<u8>, i64)> = self
            .terms
            .iter()
            .map(|(&k, &c)| (key_exponents(k, self.nvars), c))
            .collect();
        out.sort();
        out
    }

    /// Exponent vectors of the support as integer points.
    pub fn support_points(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self
            .terms
            .keys()
            .map(|&k| (0..self.nvars).map(|v| exponent(k, v) as i64).collect())
            .collect();
        out.sort();
        out
    }
}
