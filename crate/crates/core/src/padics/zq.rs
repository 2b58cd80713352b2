use crate::error::{Error, Result};
use crate::fields::{FieldCtx, Fq};

/// `Z_q / p^N = (Z/p^N)[x] / (f)` where `f` lifts the field modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZqCtx {
    p: u64,
    r: u32,
    prec: u32,
    pn: u64,
    /// Monic, lowest degree first, entries in `[0, p)`.
    modulus: Vec<u64>,
}

/// Element of `Z_q / p^N`; coefficients canonical in `[0, p^N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZqElem {
    c: Vec<u64>,
}

impl ZqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }
}

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl ZqCtx {
    /// Precision is limited so products of residues fit in `u128`.
    pub fn new(field: &FieldCtx, prec: u32) -> Result<Self> {
        let p = field.p();
        if prec == 0 {
            return Err(Error::ZeroPrecision);
        }
        let pn = p
            .checked_pow(prec)
            .filter(|&v| v < 1 << 62)
            .ok_or(Error::PrecisionBudget { p, prec })?;
        Ok(ZqCtx {
            p,
            r: field.r(),
            prec,
            pn,
            modulus: field.modulus().to_vec(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `p^N`.
    pub fn modulus_int(&self) -> u64 {
        self.pn
    }

    pub fn p_pow(&self, k: u32) -> u64 {
        self.p.pow(k)
    }

    pub fn zero(&self) -> ZqElem {
        ZqElem {
            c: vec![0; self.r as usize],
        }
    }

    pub fn one(&self) -> ZqElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> ZqElem {
        let mut c = vec![0; self.r as usize];
        c[0] = (n as i128).rem_euclid(self.pn as i128) as u64;
        ZqElem { c }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> ZqElem {
        assert_eq!(coeffs.len(), self.r as usize);
        ZqElem {
            c: coeffs.iter().map(|&x| x % self.pn).collect(),
        }
    }

    /// Constant term when every other coordinate vanishes.
    pub fn as_int(&self, x: &ZqElem) -> Option<u64> {
        x.c[1..].iter().all(|&v| v == 0).then_some(x.c[0])
    }

    pub fn is_zero(&self, x: &ZqElem) -> bool {
        x.c.iter().all(|&v| v == 0)
    }

    pub fn add(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        ZqElem {
            c: a.c
                .iter()
                .zip(&b.c)
                .map(|(&x, &y)| {
                    let s = x + y;
                    if s >= self.pn {
                        s - self.pn
                    } else {
                        s
                    }
                })
                .collect(),
        }
    }

    pub fn neg(&self, a: &ZqElem) -> ZqElem {
        ZqElem {
            c: a.c
                .iter()
                .map(|&x| if x == 0 { 0 } else { self.pn - x })
                .collect(),
        }
    }

    pub fn sub(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul_int(&self, a: &ZqElem, n: i64) -> ZqElem {
        let m = (n as i128).rem_euclid(self.pn as i128) as u64;
        ZqElem {
            c: a.c.iter().map(|&x| mulmod(x, m, self.pn)).collect(),
        }
    }

    pub fn mul(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        let r = self.r as usize;
        let pn = self.pn;
        if r == 1 {
            return ZqElem {
                c: vec![mulmod(a.c[0], b.c[0], pn)],
            };
        }
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                let t = mulmod(x, y, pn);
                let s = prod[i + j] + t;
                prod[i + j] = if s >= pn { s - pn } else { s };
            }
        }
        for top in (r..2 * r - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            // x^r = -(f_0 + ... + f_{r-1} x^{r-1})
            for (i, &fi) in self.modulus[..r].iter().enumerate() {
                if fi == 0 {
                    continue;
                }
                let j = top - r + i;
                let t = mulmod(c, fi, pn);
                prod[j] = (prod[j] + pn - t) % pn;
            }
        }
        prod.truncate(r);
        ZqElem { c: prod }
    }

    pub fn pow(&self, base: &ZqElem, mut e: u64) -> ZqElem {
        let mut result = self.one();
        let mut b = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        result
    }

    /// Largest `v` with `p^v | x`, or `None` for zero.
    pub fn ord_p(&self, x: &ZqElem) -> Option<u32> {
        x.c.iter()
            .filter(|&&v| v != 0)
            .map(|&v| {
                let mut v = v;
                let mut k = 0;
                while v % self.p == 0 {
                    v /= self.p;
                    k += 1;
                }
                k
            })
            .min()
    }

    /// Exact division by `p^v`; the caller guarantees divisibility.
    pub fn div_p_pow(&self, x: &ZqElem, v: u32) -> ZqElem {
        let d = self.p.pow(v);
        ZqElem {
            c: x.c
                .iter()
                .map(|&c| {
                    debug_assert_eq!(c % d, 0);
                    c / d
                })
                .collect(),
        }
    }

    /// Reduce every coordinate mod `p^k`.
    pub fn truncate(&self, x: &ZqElem, k: u32) -> ZqElem {
        let m = self.p.pow(k.min(self.prec));
        ZqElem {
            c: x.c.iter().map(|&c| c % m).collect(),
        }
    }

    pub fn is_unit(&self, x: &ZqElem) -> bool {
        x.c.iter().any(|&c| c % self.p != 0)
    }

    /// Inverse of a unit by Newton iteration seeded with `x^{q-2}`.
    pub fn inv(&self, x: &ZqElem) -> Result<ZqElem> {
        if !self.is_unit(x) {
            return Err(Error::ZeroArgument("Z_q inverse of a non-unit"));
        }
        let q = self.p.pow(self.r);
        let mut y = self.pow(x, q - 2);
        let two = self.from_int(2);
        let mut digits = 1;
        while digits < self.prec {
            y = self.mul(&y, &self.sub(&two, &self.mul(x, &y)));
            digits *= 2;
        }
        debug_assert_eq!(self.mul(x, &y), self.one());
        Ok(y)
    }

    /// Residue map to `F_q`.
    pub fn reduce<'f>(&self, field: &'f FieldCtx, x: &ZqElem) -> Fq<'f> {
        let digits: Vec<u64> = x.c.iter().map(|&c| c % self.p).collect();
        field
            .from_coeffs(&digits)
            .expect("residues are valid coefficients")
    }

    /// Teichmüller representative of a nonzero element.
    pub fn teichmuller(&self, t: Fq<'_>) -> Result<ZqElem> {
        if t.is_zero() {
            return Err(Error::ZeroArgument("Teichmüller lift"));
        }
        let q = self.p.pow(self.r);
        let mut z = self.from_coeffs(&t.coeffs());
        // Each step z -> z^q gains at least one p-adic digit.
        for _ in 0..=self.prec {
            let next = self.pow(&z, q);
            if next == z {
                return Ok(z);
            }
            z = next;
        }
        unreachable!("Teichmüller iteration failed to stabilise")
    }

    pub fn format(&self, x: &ZqElem) -> String {
        match self.as_int(x) {
            Some(v) => format!("{v} mod {}^{}", self.p, self.prec),
            None => {
                let s: Vec<String> = x.c.iter().map(u64::to_string).collect();
                format!("[{}] mod {}^{}", s.join(","), self.p, self.prec)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn teichmuller_lifts() {
        let f = FieldCtx::new(7, 1).unwrap();
        let zq = ZqCtx::new(&f, 3).unwrap();
        let z = zq.teichmuller(f.from_int(2)).unwrap();
        assert_eq!(z.coeffs()[0] % 7, 2);
        assert_eq!(zq.pow(&z, 6), zq.one());
        assert_eq!(zq.teichmuller(f.one()).unwrap(), zq.one());
        assert_eq!(zq.teichmuller(f.from_int(-1)).unwrap(), zq.from_int(-1));
        assert!(zq.teichmuller(f.zero()).is_err());
    }

    #[test]
    fn teichmuller_is_multiplicative_and_reduces() {
        for (p, r, n) in [(3, 2, 5), (5, 2, 4), (7, 1, 4), (5, 3, 3)] {
            let f = FieldCtx::new(p, r).unwrap();
            let zq = ZqCtx::new(&f, n).unwrap();
            let lifts: Vec<ZqElem> = f.nonzero().map(|x| zq.teichmuller(x).unwrap()).collect();
            for (i, x) in f.nonzero().enumerate() {
                assert_eq!(zq.reduce(&f, &lifts[i]), x);
                for (j, y) in f.nonzero().enumerate().step_by(3) {
                    let xy = (x * y).code() as usize - 1;
                    assert_eq!(zq.mul(&lifts[i], &lifts[j]), lifts[xy]);
                }
            }
        }
    }

    #[test]
    fn inverse_and_ord() {
        let f = FieldCtx::new(5, 2).unwrap();
        let zq = ZqCtx::new(&f, 6).unwrap();
        let x = zq.from_coeffs(&[3, 7]);
        let y = zq.inv(&x).unwrap();
        assert_eq!(zq.mul(&x, &y), zq.one());
        assert!(zq.inv(&zq.from_int(25)).is_err());
        assert_eq!(zq.ord_p(&zq.from_coeffs(&[50, 125])), Some(2));
        assert_eq!(zq.ord_p(&zq.zero()), None);
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let f = FieldCtx::new(3, 3).unwrap();
        let zq = ZqCtx::new(&f, 4).unwrap();
        for a in f.elements().step_by(2) {
            for b in f.elements().step_by(5) {
                let (x, y) = (zq.from_coeffs(&a.coeffs()), zq.from_coeffs(&b.coeffs()));
                assert_eq!(zq.reduce(&f, &zq.mul(&x, &y)), a * b);
                assert_eq!(zq.reduce(&f, &zq.add(&x, &y)), a + b);
            }
        }
    }

    proptest! {
        #[test]
        fn ring_laws(a in proptest::collection::vec(0u64..15625, 2),
                     b in proptest::collection::vec(0u64..15625, 2),
                     c in proptest::collection::vec(0u64..15625, 2)) {
            let f = FieldCtx::new(5, 2).unwrap();
            let zq = ZqCtx::new(&f, 6).unwrap();
            let (a, b, c) = (zq.from_coeffs(&a), zq.from_coeffs(&b), zq.from_coeffs(&c));
            prop_assert_eq!(zq.mul(&zq.add(&a, &b), &c), zq.add(&zq.mul(&a, &c), &zq.mul(&b, &c)));
            prop_assert_eq!(zq.mul(&zq.mul(&a, &b), &c), zq.mul(&a, &zq.mul(&b, &c)));
            prop_assert_eq!(zq.sub(&a, &a), zq.zero());
        }
    }
}
