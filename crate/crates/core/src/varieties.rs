//! Brute-force point counts: the ground truth side of every identity.

use crate::error::{Error, Result};
use crate::fields::{FieldCtx, Fq};

/// `X^d + Y^d = d lambda X^k Y^{d-k}` in `P^1`.
#[derive(Debug, Clone, Copy)]
pub struct DiagonalSurface<'a> {
    pub d: u64,
    pub k: u64,
    pub lambda: Fq<'a>,
}

impl<'a> DiagonalSurface<'a> {
    pub fn new(d: u64, k: u64, lambda: Fq<'a>) -> Result<Self> {
        if d < 2 || k == 0 || k >= d {
            return Err(Error::Precondition(format!(
                "need d >= 2 and 1 <= k < d, got d={d}, k={k}"
            )));
        }
        if lambda.is_zero() {
            return Err(Error::ZeroArgument("lambda"));
        }
        Ok(DiagonalSurface { d, k, lambda })
    }

    fn field(&self) -> &'a FieldCtx {
        self.lambda.ctx()
    }

    /// `p` divides none of `d`, `k`, `d - k`.
    pub fn p_admissible(&self) -> bool {
        let p = self.field().p();
        [self.d, self.k, self.d - self.k].iter().all(|v| v % p != 0)
    }

    fn dl(&self) -> Fq<'a> {
        self.field().from_int(self.d as i64) * self.lambda
    }

    fn on_curve(&self, x: Fq<'a>, y: Fq<'a>) -> bool {
        let (d, k) = (self.d as i64, self.k as i64);
        x.pow(d) + y.pow(d) == self.dl() * x.pow(k) * y.pow(d - k)
    }

    /// Enumerates `[x : 1]` and `[1 : 0]`.
    pub fn count_projective(&self) -> u64 {
        let f = self.field();
        let affine = f.elements().filter(|&x| self.on_curve(x, f.one())).count() as u64;
        affine + u64::from(self.on_curve(f.one(), f.zero()))
    }

    /// Solutions `(x, y)` in `F_q^2`, the origin included.
    pub fn count_affine(&self) -> u64 {
        let f = self.field();
        let mut n = 0;
        for x in f.elements() {
            for y in f.elements() {
                n += u64::from(self.on_curve(x, y));
            }
        }
        n
    }

    /// Distinct roots of `y^{d-k} (1 - y)^k - (d lambda)^{-d}`.
    pub fn r_q(&self) -> Result<u64> {
        let f = self.field();
        let (d, k) = (self.d as usize, self.k as usize);
        let dl = self.dl();
        if dl.is_zero() {
            return Err(Error::Precondition(format!("p divides d = {}", self.d)));
        }
        let c = dl.pow(-(self.d as i64));
        // (1 - y)^k expanded, shifted up by d - k.
        let mut poly = vec![f.zero(); d + 1];
        let mut binom = 1u64;
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            poly[d - k + j] = f.from_int(sign * (binom % f.p()) as i64);
            binom = binom * (k - j) as u64 / (j + 1) as u64;
        }
        poly[0] = poly[0] - c;
        f.count_distinct_roots(&poly).map(|n| n as u64)
    }

    /// Distinct roots of `y^d - d lambda y^k + 1`.
    pub fn r_q_prime(&self) -> Result<u64> {
        let f = self.field();
        let mut poly = vec![f.zero(); self.d as usize + 1];
        poly[0] = f.one();
        poly[self.k as usize] = -self.dl();
        poly[self.d as usize] = f.one();
        f.count_distinct_roots(&poly).map(|n| n as u64)
    }
}

/// `y^2 = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Debug, Clone, Copy)]
pub struct WeierstrassCurve<'a> {
    pub a2: Fq<'a>,
    pub a4: Fq<'a>,
    pub a6: Fq<'a>,
}

impl<'a> WeierstrassCurve<'a> {
    pub fn new(a2: Fq<'a>, a4: Fq<'a>, a6: Fq<'a>) -> Self {
        WeierstrassCurve { a2, a4, a6 }
    }

    /// `16` times the discriminant of the cubic.
    pub fn discriminant(&self) -> Fq<'a> {
        let f = self.a2.ctx();
        let c = |n: i64| f.from_int(n);
        let (a, b, e) = (self.a2, self.a4, self.a6);
        let disc = a * a * b * b - c(4) * b.pow(3) - c(4) * a.pow(3) * e + c(18) * a * b * e
            - c(27) * e * e;
        c(16) * disc
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    /// `None` for singular curves.
    pub fn j_invariant(&self) -> Option<Fq<'a>> {
        let f = self.a2.ctx();
        let c4 = f.from_int(16) * self.a2 * self.a2 - f.from_int(48) * self.a4;
        let delta = self.discriminant();
        (!delta.is_zero()).then(|| c4.pow(3) / delta)
    }

    /// `#E(F_q)` including infinity, with no smoothness check.
    pub fn count_unchecked(&self) -> u64 {
        let f = self.a2.ctx();
        let sum: i64 = f
            .elements()
            .map(|x| {
                let rhs = x * x * x + self.a2 * x * x + self.a4 * x + self.a6;
                1 + rhs.quadratic_char()
            })
            .sum();
        sum as u64 + 1
    }

    pub fn count(&self) -> Result<u64> {
        if self.is_singular() {
            return Err(Error::Singular(format!(
                "y^2 = x^3 + {}x^2 + {}x + {}",
                self.a2, self.a4, self.a6
            )));
        }
        Ok(self.count_unchecked())
    }

    /// `q + 1 - #E(F_q)`.
    pub fn trace(&self) -> Result<i64> {
        Ok(self.a2.ctx().q() as i64 + 1 - self.count()? as i64)
    }

    pub fn trace_unchecked(&self) -> i64 {
        self.a2.ctx().q() as i64 + 1 - self.count_unchecked() as i64
    }
}

/// `x^3 + y^3 + 1 = 3 a x y`.
#[derive(Debug, Clone, Copy)]
pub struct HessianCurve<'a> {
    pub a: Fq<'a>,
}

impl<'a> HessianCurve<'a> {
    pub fn new(a: Fq<'a>) -> Result<Self> {
        if a.pow(3).is_one() {
            return Err(Error::Singular(format!(
                "Hessian curve with a = {a}, a^3 = 1"
            )));
        }
        Ok(HessianCurve { a })
    }

    pub fn count_affine(&self) -> u64 {
        let f = self.a.ctx();
        let three_a = f.from_int(3) * self.a;
        let cubes: Vec<Fq<'_>> = f.elements().map(|x| x.pow(3)).collect();
        let mut n = 0;
        for (x, &x3) in f.elements().zip(&cubes) {
            for (y, &y3) in f.elements().zip(&cubes) {
                n += u64::from(x3 + y3 + f.one() == three_a * x * y);
            }
        }
        n
    }

    /// Adds the points `[x : y : 0]` with `x^3 + y^3 = 0`, one per cube root of `-1`.
    pub fn count_projective(&self) -> u64 {
        let f = self.a.ctx();
        let at_infinity = f
            .nonzero()
            .filter(|x| (x.pow(3) + f.one()).is_zero())
            .count();
        self.count_affine() + at_infinity as u64
    }
}
