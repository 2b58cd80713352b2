//! Fractions `p^v * u` with `u` a `Z_q`-unit known to relative precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::zq::{ZqCtx, ZqElem};
use crate::error::{Error, Result};

/// Valuation used for values that are exactly zero.
const EXACT_ZERO: i64 = i64::MAX / 4;

/// `p^val * unit`, with `unit` known modulo `p^rel`.
///
/// `rel == 0` means the value is only known to be divisible by `p^val`,
/// i.e. it is zero at absolute precision `val`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicRationalZq {
    val: i64,
    unit: ZqElem,
    rel: u32,
}

impl PadicRationalZq {
    pub fn zero(zq: &ZqCtx) -> Self {
        PadicRationalZq {
            val: EXACT_ZERO,
            unit: zq.zero(),
            rel: 0,
        }
    }

    /// Wrap an element known modulo `p^abs_prec`.
    pub fn from_zq(zq: &ZqCtx, x: &ZqElem, abs_prec: u32) -> Self {
        let abs_prec = abs_prec.min(zq.prec());
        let x = zq.truncate(x, abs_prec);
        match zq.ord_p(&x) {
            None => PadicRationalZq {
                val: abs_prec as i64,
                unit: zq.zero(),
                rel: 0,
            },
            Some(v) => {
                let unit = zq.div_p_pow(&x, v);
                let rel = abs_prec - v;
                PadicRationalZq {
                    val: v as i64,
                    unit: zq.truncate(&unit, rel),
                    rel,
                }
            }
        }
    }

    /// A Z_q element exact to the context precision.
    pub fn from_full(zq: &ZqCtx, x: &ZqElem) -> Self {
        Self::from_zq(zq, x, zq.prec())
    }

    pub fn from_int(zq: &ZqCtx, n: i64) -> Self {
        Self::from_bigint(zq, &BigInt::from(n))
    }

    fn from_bigint(zq: &ZqCtx, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero(zq);
        }
        let p = BigInt::from(zq.p());
        let mut v = 0i64;
        let mut m = n.clone();
        while (&m % &p).is_zero() {
            m /= &p;
            v += 1;
        }
        let pn = BigInt::from(zq.modulus_int());
        let c = m.mod_floor(&pn).to_i64().expect("residue fits");
        PadicRationalZq {
            val: v,
            unit: zq.from_int(c),
            rel: zq.prec(),
        }
    }

    pub fn from_ratio(zq: &ZqCtx, num: i64, den: i64) -> Self {
        Self::from_rational(zq, &BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(zq: &ZqCtx, x: &BigRational) -> Self {
        let n = Self::from_bigint(zq, x.numer());
        let d = Self::from_bigint(zq, x.denom());
        n.div(zq, &d)
            .expect("denominator of a nonzero rational is nonzero")
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn rel(&self) -> u32 {
        self.rel
    }

    pub fn unit(&self) -> &ZqElem {
        &self.unit
    }

    /// Absolute precision: the value is known modulo `p^abs_prec`.
    pub fn abs_prec(&self) -> i64 {
        self.val.saturating_add(self.rel as i64)
    }

    /// Zero at the tracked precision.
    pub fn is_zero(&self) -> bool {
        self.rel == 0
    }

    pub fn is_exact_zero(&self) -> bool {
        self.val >= EXACT_ZERO
    }

    fn normalize(zq: &ZqCtx, val: i64, unit: ZqElem, rel: u32) -> Self {
        if val >= EXACT_ZERO {
            return Self::zero(zq);
        }
        if rel == 0 {
            return PadicRationalZq {
                val,
                unit: zq.zero(),
                rel: 0,
            };
        }
        let unit = zq.truncate(&unit, rel);
        match zq.ord_p(&unit) {
            None => PadicRationalZq {
                val: val + rel as i64,
                unit: zq.zero(),
                rel: 0,
            },
            Some(k) => PadicRationalZq {
                val: val + k as i64,
                unit: zq.truncate(&zq.div_p_pow(&unit, k), rel - k),
                rel: rel - k,
            },
        }
    }

    pub fn add(&self, zq: &ZqCtx, other: &Self) -> Self {
        if self.is_exact_zero() {
            return other.clone();
        }
        if other.is_exact_zero() {
            return self.clone();
        }
        let v = self.val.min(other.val);
        let rel = (self.abs_prec() - v)
            .min(other.abs_prec() - v)
            .min(zq.prec() as i64) as u32;
        let mut sum = zq.zero();
        for x in [self, other] {
            let shift = x.val - v;
            if x.rel == 0 || shift >= rel as i64 {
                continue;
            }
            let term = zq.mul_int(&x.unit, zq.p_pow(shift as u32) as i64);
            sum = zq.add(&sum, &term);
        }
        Self::normalize(zq, v, sum, rel)
    }

    pub fn neg(&self, zq: &ZqCtx) -> Self {
        PadicRationalZq {
            val: self.val,
            unit: zq.truncate(&zq.neg(&self.unit), self.rel),
            rel: self.rel,
        }
    }

    pub fn sub(&self, zq: &ZqCtx, other: &Self) -> Self {
        self.add(zq, &other.neg(zq))
    }

    pub fn mul(&self, zq: &ZqCtx, other: &Self) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero(zq);
        }
        let rel = self.rel.min(other.rel);
        let unit = zq.mul(&self.unit, &other.unit);
        Self::normalize(zq, self.val + other.val, unit, rel)
    }

    pub fn mul_zq(&self, zq: &ZqCtx, x: &ZqElem) -> Self {
        self.mul(zq, &Self::from_full(zq, x))
    }

    pub fn mul_int(&self, zq: &ZqCtx, n: i64) -> Self {
        self.mul(zq, &Self::from_int(zq, n))
    }

    /// Multiply by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !self.is_exact_zero() {
            out.val += k;
        }
        out
    }

    pub fn div(&self, zq: &ZqCtx, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::PrecisionExhausted(
                "division by a value that is zero at working precision".into(),
            ));
        }
        if self.is_exact_zero() {
            return Ok(Self::zero(zq));
        }
        let inv = zq.inv(&other.unit)?;
        let rel = self.rel.min(other.rel);
        let unit = zq.mul(&self.unit, &inv);
        Ok(Self::normalize(zq, self.val - other.val, unit, rel))
    }

    /// `Some(P)` when the two values agree modulo `p^P`, `None` when they differ.
    pub fn agreement(&self, zq: &ZqCtx, other: &Self) -> Option<i64> {
        let d = self.sub(zq, other);
        d.is_zero().then_some(d.val)
    }

    /// The rational integer in `[lo, hi]` this value represents.
    ///
    /// Needs a zero non-constant part, the symmetric residue within a quarter
    /// of the modulus, and the whole target range inside that quarter.
    pub fn recover_integer(&self, zq: &ZqCtx, lo: i64, hi: i64) -> Result<i64> {
        if self.is_exact_zero() {
            return if lo <= 0 && 0 <= hi {
                Ok(0)
            } else {
                Err(Error::IntegerRecovery(format!("0 outside [{lo}, {hi}]")))
            };
        }
        if self.val < 0 {
            return Err(Error::IntegerRecovery(format!(
                "negative valuation {} at relative precision {}",
                self.val, self.rel
            )));
        }
        if self.unit.coeffs()[1..].iter().any(|&c| c != 0) {
            return Err(Error::IntegerRecovery(
                "value has nonzero non-constant coordinates".into(),
            ));
        }
        let p = BigInt::from(zq.p());
        let modulus = num_traits::pow(p.clone(), self.abs_prec() as usize);
        let raw = BigInt::from(self.unit.coeffs()[0]) * num_traits::pow(p, self.val as usize);
        let mut rep = raw.mod_floor(&modulus);
        if &rep * 2 > modulus {
            rep -= &modulus;
        }
        let quarter = &modulus / 4;
        let bound = BigInt::from(lo.abs().max(hi.abs()));
        if bound > quarter {
            return Err(Error::IntegerRecovery(format!(
                "range [{lo}, {hi}] too wide for precision {}^{}",
                zq.p(),
                self.abs_prec()
            )));
        }
        if rep.abs() > quarter || rep < BigInt::from(lo) || rep > BigInt::from(hi) {
            return Err(Error::IntegerRecovery(format!(
                "residue {rep} mod {}^{} is not in [{lo}, {hi}]",
                zq.p(),
                self.abs_prec()
            )));
        }
        Ok(rep.to_i64().expect("bounded by hi"))
    }

    /// `"<residue> mod p^P"` for integral values, `"p^v * (<unit> mod p^rel)"` otherwise.
    pub fn format(&self, zq: &ZqCtx) -> String {
        let p = zq.p();
        if self.is_exact_zero() {
            return "0".into();
        }
        if self.rel == 0 {
            return format!("0 mod {p}^{}", self.val);
        }
        let coeffs = |scale: &BigInt, m: &BigInt| -> String {
            let v: Vec<String> = self
                .unit
                .coeffs()
                .iter()
                .map(|&c| (BigInt::from(c) * scale).mod_floor(m).to_string())
                .collect();
            if v.len() == 1 {
                v[0].clone()
            } else {
                format!("[{}]", v.join(","))
            }
        };
        if self.val >= 0 {
            let scale = num_traits::pow(BigInt::from(p), self.val as usize);
            let m = num_traits::pow(BigInt::from(p), self.abs_prec() as usize);
            format!("{} mod {p}^{}", coeffs(&scale, &m), self.abs_prec())
        } else {
            let m = num_traits::pow(BigInt::from(p), self.rel as usize);
            format!(
                "{p}^{} * ({} mod {p}^{})",
                self.val,
                coeffs(&BigInt::from(1), &m),
                self.rel
            )
        }
    }
}
