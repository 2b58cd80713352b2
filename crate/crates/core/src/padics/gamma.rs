//! Morita's p-adic gamma function, tabulated on `[0, p^N)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::frac;

/// Largest table size `p^N` built by default.
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 27;

type TableCache = HashMap<(u64, u32), Arc<GammaTable>>;

/// A residue in `Z/p^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicInt {
    pub residue: u64,
    pub p: u64,
    pub prec: u32,
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.p, self.prec)
    }
}

#[derive(Debug)]
pub struct GammaTable {
    p: u64,
    prec: u32,
    pn: u64,
    values: Vec<u32>,
}

impl GammaTable {
    pub fn new(p: u64, prec: u32, budget: u64) -> Result<Self> {
        if prec == 0 {
            return Err(Error::ZeroPrecision);
        }
        let pn = p
            .checked_pow(prec)
            .filter(|&v| v <= budget && v <= u32::MAX as u64)
            .ok_or(Error::PrecisionBudget { p, prec })?;
        let mut values = Vec::with_capacity(pn as usize);
        // Gamma(m+1) = -m Gamma(m) for p not dividing m, else -Gamma(m).
        let mut g: u64 = 1;
        values.push(1u32);
        for m in 1..pn {
            let prev = m - 1;
            let factor = if prev % p == 0 { 1 } else { prev };
            g = (pn - g * factor % pn) % pn;
            values.push(g as u32);
        }
        Ok(GammaTable {
            p,
            prec,
            pn,
            values,
        })
    }

    /// Process-wide cache keyed by `(p, N)`.
    pub fn shared(p: u64, prec: u32) -> Result<Arc<GammaTable>> {
        static CACHE: OnceLock<Mutex<TableCache>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("gamma cache poisoned");
        if let Some(t) = guard.get(&(p, prec)) {
            return Ok(Arc::clone(t));
        }
        let t = Arc::new(GammaTable::new(p, prec, DEFAULT_TABLE_BUDGET)?);
        guard.insert((p, prec), Arc::clone(&t));
        Ok(t)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `Gamma_p(m)` for `0 <= m < p^N`.
    pub fn at(&self, m: u64) -> u64 {
        self.values[m as usize] as u64
    }

    /// `Gamma_p(x)` for `x` with denominator prime to `p`.
    pub fn gamma(&self, x: &BigRational) -> Result<u64> {
        let m = frac::residue_mod(x, self.p, self.pn)?;
        Ok(self.at(m))
    }

    pub fn gamma_padic(&self, x: &BigRational) -> Result<PadicInt> {
        Ok(PadicInt {
            residue: self.gamma(x)?,
            p: self.p,
            prec: self.prec,
        })
    }
}

/// One-shot `Gamma_p(x) mod p^N` through the shared table.
pub fn gamma_p(x: &BigRational, p: u64, prec: u32) -> Result<PadicInt> {
    GammaTable::shared(p, prec)?.gamma_padic(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac::ratio;

    #[test]
    fn small_values() {
        let t = GammaTable::new(5, 4, DEFAULT_TABLE_BUDGET).unwrap();
        assert_eq!(t.at(0), 1);
        assert_eq!(t.at(1), 624);
        assert_eq!(t.at(2), 1);
        assert_eq!(t.at(3), 625 - 2);
        // Gamma_5(6) = (-1)^6 * 1*2*3*4 = 24
        assert_eq!(t.at(6), 24);
    }

    #[test]
    fn functional_equation_exhaustive() {
        for (p, n) in [(3, 5), (5, 4), (7, 3), (11, 2)] {
            let t = GammaTable::new(p, n, DEFAULT_TABLE_BUDGET).unwrap();
            let pn = p.pow(n);
            for m in 1..pn - 1 {
                let factor = if m % p == 0 { 1 } else { m };
                assert_eq!(t.at(m + 1), (pn - factor * t.at(m) % pn) % pn);
            }
        }
    }

    #[test]
    fn reflection_formula() {
        // Gamma_p(x) Gamma_p(1-x) = (-1)^{x_0}, x_0 in [1, p] with x_0 = x mod p.
        let t = GammaTable::new(7, 3, DEFAULT_TABLE_BUDGET).unwrap();
        for (n, d) in [(1, 2), (1, 3), (2, 5), (3, 4), (1, 6)] {
            let x = ratio(n, d);
            let one_minus = ratio(d - n, d);
            let x0 = frac::residue_mod(&x, 7, 7).unwrap();
            let x0 = if x0 == 0 { 7 } else { x0 };
            let expected: i64 = if x0 % 2 == 0 { 1 } else { -1 };
            let prod = t.gamma(&x).unwrap() * t.gamma(&one_minus).unwrap() % 343;
            assert_eq!(prod, (expected.rem_euclid(343)) as u64);
        }
    }

    #[test]
    fn rejects_p_in_denominator_and_budget() {
        assert!(gamma_p(&ratio(1, 3), 3, 2).is_err());
        assert!(GammaTable::new(13, 9, DEFAULT_TABLE_BUDGET).is_err());
        assert_eq!(gamma_p(&ratio(0, 1), 3, 2).unwrap().residue, 1);
    }

    #[test]
    fn shared_tables_are_reused() {
        let a = GammaTable::shared(5, 3).unwrap();
        let b = GammaTable::shared(5, 3).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
