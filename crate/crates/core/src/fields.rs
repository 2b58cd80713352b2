//! Finite fields `F_q = F_p[x]/(f)` with fully tabulated discrete logarithms.
//!
//! Elements are stored as a packed code `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`
//! of their residue polynomial. Multiplication goes through the log/exp
//! tables, addition is digit-wise.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest field order the tables are allowed to reach.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    r: u32,
    q: u64,
    /// Monic, lowest degree first, length `r + 1`.
    modulus: Vec<u64>,
    generator: u32,
    /// `exp[i] = g^i` for `i < q - 1`.
    exp: Vec<u32>,
    /// `log[0]` is unused.
    log: Vec<u32>,
    trace: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldCtx {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenPrime(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r < 1 {
            return Err(Error::BadDegree(r));
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge { p, r })?;
        let modulus = smallest_irreducible(p, r);
        let generator = find_generator(p, r, q, &modulus);

        let qm1 = (q - 1) as usize;
        let mut exp = vec![0u32; qm1];
        let mut log = vec![u32::MAX; q as usize];
        let g = to_digits(generator as u64, p, r);
        let mut cur = to_digits(1, p, r);
        for (i, slot) in exp.iter_mut().enumerate() {
            let code = from_digits(&cur, p) as u32;
            *slot = code;
            log[code as usize] = i as u32;
            cur = poly::mul_mod(&cur, &g, &modulus, p);
        }

        let mut ctx = FieldCtx {
            p,
            r,
            q,
            modulus,
            generator,
            exp,
            log,
            trace: Vec::new(),
        };
        let mut trace = vec![0u32; q as usize];
        for code in 1..q as u32 {
            let l = ctx.log[code as usize] as u64;
            let mut acc = 0u32;
            let mut e = l;
            for _ in 0..r {
                acc = ctx.add_codes(acc, ctx.exp[e as usize]);
                e = (e * p) % (q - 1);
            }
            debug_assert!((acc as u64) < p, "trace must land in the prime field");
            trace[code as usize] = acc;
        }
        ctx.trace = trace;
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        poly_to_string(&self.modulus)
    }

    pub fn zero(&self) -> Fq<'_> {
        Fq { ctx: self, code: 0 }
    }

    pub fn one(&self) -> Fq<'_> {
        Fq { ctx: self, code: 1 }
    }

    pub fn generator(&self) -> Fq<'_> {
        Fq {
            ctx: self,
            code: self.generator,
        }
    }

    /// `g^e` for any integer exponent.
    pub fn gen_pow(&self, e: i64) -> Fq<'_> {
        let qm1 = (self.q - 1) as i64;
        Fq {
            ctx: self,
            code: self.exp[e.rem_euclid(qm1) as usize],
        }
    }

    pub fn from_code(&self, code: u32) -> Fq<'_> {
        assert!((code as u64) < self.q, "code {code} out of range");
        Fq { ctx: self, code }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Fq<'_> {
        Fq {
            ctx: self,
            code: n.rem_euclid(self.p as i64) as u32,
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fq<'_>> {
        if coeffs.len() > self.r as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse {
                what: "field element",
                input: format!("{coeffs:?}"),
            });
        }
        Ok(Fq {
            ctx: self,
            code: from_digits(coeffs, self.p) as u32,
        })
    }

    /// Parse `"c0,c1,..."` (lowest degree first); a single integer is read mod p.
    pub fn parse(&self, s: &str) -> Result<Fq<'_>> {
        let err = || Error::Parse {
            what: "field element",
            input: s.to_string(),
        };
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() == 1 {
            let n: i64 = parts[0].parse().map_err(|_| err())?;
            return Ok(self.from_int(n));
        }
        let coeffs = parts
            .iter()
            .map(|t| t.parse::<u64>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs).map_err(|_| err())
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq<'_>> + '_ {
        (0..self.q as u32).map(move |code| Fq { ctx: self, code })
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fq<'_>> + '_ {
        (1..self.q as u32).map(move |code| Fq { ctx: self, code })
    }

    /// Exhaustive count of distinct roots of `sum coeffs[i] y^i` in `F_q`.
    pub fn count_distinct_roots(&self, coeffs: &[Fq<'_>]) -> Result<usize> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self
            .elements()
            .filter(|&y| eval_poly(coeffs, y).is_zero())
            .count())
    }

    fn add_codes(&self, a: u32, b: u32) -> u32 {
        if self.r == 1 {
            return ((a as u64 + b as u64) % self.p) as u32;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.r {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out as u32
    }

    fn neg_code(&self, a: u32) -> u32 {
        if self.r == 1 {
            return ((self.p - a as u64) % self.p) as u32;
        }
        let mut a = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.r {
            let d = (self.p - a % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
        }
        out as u32
    }

    fn mul_codes(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % (self.q - 1)) as usize]
    }
}

/// Horner evaluation; coefficients lowest degree first.
pub fn eval_poly<'a>(coeffs: &[Fq<'a>], y: Fq<'a>) -> Fq<'a> {
    let mut acc = y.ctx.zero();
    for &c in coeffs.iter().rev() {
        acc = acc * y + c;
    }
    acc
}

#[derive(Clone, Copy)]
pub struct Fq<'a> {
    ctx: &'a FieldCtx,
    code: u32,
}

impl<'a> Fq<'a> {
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    pub fn coeffs(&self) -> Vec<u64> {
        to_digits(self.code as u64, self.ctx.p, self.ctx.r)
    }

    /// Exponent `e in [0, q-2]` with `g^e = self`.
    pub fn dlog(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroArgument("dlog"));
        }
        Ok(self.ctx.log[self.code as usize])
    }

    pub fn inv(&self) -> Result<Fq<'a>> {
        let l = self.dlog().map_err(|_| Error::ZeroArgument("inverse"))? as i64;
        Ok(self.ctx.gen_pow(-l))
    }

    /// `self^e`; `0^0 = 1`, negative powers of zero panic.
    pub fn pow(&self, e: i64) -> Fq<'a> {
        if self.is_zero() {
            assert!(e >= 0, "negative power of zero");
            return if e == 0 { self.ctx.one() } else { *self };
        }
        let l = self.ctx.log[self.code as usize] as i128;
        let qm1 = (self.ctx.q - 1) as i128;
        let idx = (l * e as i128).rem_euclid(qm1) as i64;
        self.ctx.gen_pow(idx)
    }

    pub fn frobenius(&self) -> Fq<'a> {
        self.pow(self.ctx.p as i64)
    }

    /// Absolute trace to `F_p`, as a residue in `[0, p)`.
    pub fn trace(&self) -> u64 {
        self.ctx.trace[self.code as usize] as u64
    }

    /// Quadratic character with `phi(0) = 0`.
    pub fn quadratic_char(&self) -> i64 {
        if self.is_zero() {
            0
        } else if self.ctx.log[self.code as usize].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self) -> bool {
        self.quadratic_char() >= 0
    }

    /// A square root, or `None` for non-squares.
    pub fn sqrt(&self) -> Option<Fq<'a>> {
        if self.is_zero() {
            return Some(*self);
        }
        let l = self.ctx.log[self.code as usize];
        l.is_multiple_of(2).then(|| self.ctx.gen_pow(l as i64 / 2))
    }

    fn same_field(&self, other: &Fq<'_>) {
        assert!(
            std::ptr::eq(self.ctx, other.ctx) || self.ctx == other.ctx,
            "arithmetic across different fields"
        );
    }
}

impl PartialEq for Fq<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other);
        self.code == other.code
    }
}

impl Eq for Fq<'_> {}

impl std::hash::Hash for Fq<'_> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl fmt::Debug for Fq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({self})")
    }
}

/// Comma separated coefficients, lowest degree first.
impl fmt::Display for Fq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coeffs().iter().map(u64::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl<'a> Add for Fq<'a> {
    type Output = Fq<'a>;
    fn add(self, rhs: Self) -> Self::Output {
        self.same_field(&rhs);
        Fq {
            ctx: self.ctx,
            code: self.ctx.add_codes(self.code, rhs.code),
        }
    }
}

impl<'a> Neg for Fq<'a> {
    type Output = Fq<'a>;
    fn neg(self) -> Self::Output {
        Fq {
            ctx: self.ctx,
            code: self.ctx.neg_code(self.code),
        }
    }
}

impl<'a> Sub for Fq<'a> {
    type Output = Fq<'a>;
    fn sub(self, rhs: Self) -> Self::Output {
        self + (-rhs)
    }
}

impl<'a> Mul for Fq<'a> {
    type Output = Fq<'a>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.same_field(&rhs);
        Fq {
            ctx: self.ctx,
            code: self.ctx.mul_codes(self.code, rhs.code),
        }
    }
}

impl<'a> Div for Fq<'a> {
    type Output = Fq<'a>;
    /// Panics on division by zero; use [`Fq::inv`] for a fallible inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self::Output {
        self * rhs.inv().expect("division by zero in F_q")
    }
}

fn to_digits(mut code: u64, p: u64, r: u32) -> Vec<u64> {
    let mut v = Vec::with_capacity(r as usize);
    for _ in 0..r {
        v.push(code % p);
        code /= p;
    }
    v
}

fn from_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_to_string(f: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Monic degree-`r` irreducible, smallest when compared `c_0` first.
fn smallest_irreducible(p: u64, r: u32) -> Vec<u64> {
    let total = p.pow(r);
    for n in 0..total {
        // c_0 is the most significant digit of n.
        let mut f = vec![0u64; r as usize + 1];
        let mut m = n;
        for j in (0..r as usize).rev() {
            f[j] = m % p;
            m /= p;
        }
        f[r as usize] = 1;
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Smallest element of order `q - 1`, compared `c_0` first.
fn find_generator(p: u64, r: u32, q: u64, modulus: &[u64]) -> u32 {
    let factors = prime_factors(q - 1);
    let one = to_digits(1, p, r);
    for n in 1..q {
        let mut d = vec![0u64; r as usize];
        let mut m = n;
        for j in (0..r as usize).rev() {
            d[j] = m % p;
            m /= p;
        }
        if d.iter().all(|&c| c == 0) {
            continue;
        }
        let ok = factors
            .iter()
            .all(|&l| poly::pow_mod(&d, (q - 1) / l, modulus, p) != one);
        if ok {
            return from_digits(&d, p) as u32;
        }
    }
    unreachable!("F_q^x is cyclic")
}

/// Dense polynomials over `F_p`, lowest degree first.
mod poly {
    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let f = trim(f.to_vec());
        let mut a = trim(a.to_vec());
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p);
        while a.len() > df {
            let da = a.len() - 1;
            let c = a[da] * lead_inv % p;
            for (i, &fi) in f.iter().enumerate() {
                let j = da - df + i;
                a[j] = (a[j] + p - c * fi % p) % p;
            }
            a = trim(a);
        }
        a
    }

    /// Product reduced mod the monic `f`, padded to length `deg f`.
    pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut out = rem(&prod, f, p);
        out.resize(f.len() - 1, 0);
        out
    }

    pub fn pow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let n = f.len() - 1;
        let mut result = vec![0u64; n];
        result[0] = 1;
        let mut b = rem(base, f, p);
        b.resize(n, 0);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, f, p);
            }
            b = mul_mod(&b, &b, f, p);
            e >>= 1;
        }
        result
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin-style test: `gcd(x^{p^i} - x, f) = 1` for `i <= deg f / 2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        let mut x = vec![0u64; n];
        x[1] = 1;
        let mut xp = x.clone();
        for _ in 0..n / 2 {
            xp = pow_mod(&xp, p, f, p);
            let mut diff = xp.clone();
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}
