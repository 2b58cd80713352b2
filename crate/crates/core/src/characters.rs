//! Multiplicative characters `omega^m` of `F_q`, Gauss and Jacobi sums, and
//! Greene's character binomials.
//!
//! Characters are indexed by their exponent against the Teichmüller
//! character. Every character, the trivial one included, vanishes at 0.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fields::{FieldCtx, Fq};
use crate::frac;
use crate::padics::{EisCtx, EisElem, GammaTable, PadicRationalZq, ZqCtx, ZqElem};

/// The character `omega^exp`, exponent reduced mod `q - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Char {
    exp: u64,
    qm1: u64,
}

impl Char {
    pub fn new(exp: i64, qm1: u64) -> Self {
        Char {
            exp: exp.rem_euclid(qm1 as i64) as u64,
            qm1,
        }
    }

    pub fn trivial(qm1: u64) -> Self {
        Char::new(0, qm1)
    }

    /// The quadratic character `phi`.
    pub fn quadratic(qm1: u64) -> Self {
        Char::new((qm1 / 2) as i64, qm1)
    }

    pub fn exp(&self) -> u64 {
        self.exp
    }

    pub fn is_trivial(&self) -> bool {
        self.exp == 0
    }

    pub fn conj(&self) -> Self {
        Char::new(-(self.exp as i64), self.qm1)
    }

    pub fn mul(&self, other: &Char) -> Self {
        assert_eq!(self.qm1, other.qm1, "characters of different fields");
        Char::new((self.exp + other.exp) as i64, self.qm1)
    }

    pub fn pow(&self, k: i64) -> Self {
        Char::new(
            (self.exp as i128 * k as i128).rem_euclid(self.qm1 as i128) as i64,
            self.qm1,
        )
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.qm1 / num_integer::gcd(self.exp, self.qm1)
    }
}

/// Gross–Koblitz data: `g = -pi^s * unit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussSumValue {
    pub s: u64,
    pub unit: ZqElem,
}

/// Character tables for one field at one p-adic precision.
pub struct Characters<'f> {
    field: &'f FieldCtx,
    zq: ZqCtx,
    gamma: Arc<GammaTable>,
    /// `omega(g)^k` for `k < q - 1`.
    omega: Vec<ZqElem>,
    /// Indexed by `a`, describing `g(omega^{-a})`.
    gk: Vec<GaussSumValue>,
    /// Inverse of `-unit`, same indexing as `gk`.
    gk_neg_unit_inv: Vec<ZqElem>,
}

impl<'f> Characters<'f> {
    pub fn new(field: &'f FieldCtx, prec: u32) -> Result<Self> {
        let zq = ZqCtx::new(field, prec)?;
        let gamma = GammaTable::shared(field.p(), prec)?;
        let qm1 = field.q() - 1;
        let w = zq.teichmuller(field.generator())?;
        let mut omega = Vec::with_capacity(qm1 as usize);
        let mut cur = zq.one();
        for _ in 0..qm1 {
            omega.push(cur.clone());
            cur = zq.mul(&cur, &w);
        }
        assert_eq!(cur, zq.one(), "omega(g) must have order q - 1");

        let mut ctx = Characters {
            field,
            zq,
            gamma,
            omega,
            gk: Vec::new(),
            gk_neg_unit_inv: Vec::new(),
        };
        let mut gk = Vec::with_capacity(qm1 as usize);
        let mut inv = Vec::with_capacity(qm1 as usize);
        for a in 0..qm1 {
            let v = ctx.gross_koblitz(a)?;
            inv.push(ctx.zq.inv(&ctx.zq.neg(&v.unit))?);
            gk.push(v);
        }
        ctx.gk = gk;
        ctx.gk_neg_unit_inv = inv;
        Ok(ctx)
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.field
    }

    pub fn zq(&self) -> &ZqCtx {
        &self.zq
    }

    pub fn gamma(&self) -> &GammaTable {
        &self.gamma
    }

    pub fn prec(&self) -> u32 {
        self.zq.prec()
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn qm1(&self) -> u64 {
        self.field.q() - 1
    }

    pub fn ch(&self, exp: i64) -> Char {
        Char::new(exp, self.qm1())
    }

    pub fn all(&self) -> impl Iterator<Item = Char> + '_ {
        (0..self.qm1()).map(move |e| self.ch(e as i64))
    }

    pub fn eisenstein(&self) -> EisCtx {
        EisCtx::new(self.zq.clone())
    }

    /// `omega(g)^k` for any integer `k`.
    pub fn omega_pow(&self, k: i64) -> &ZqElem {
        &self.omega[k.rem_euclid(self.qm1() as i64) as usize]
    }

    /// `omega^m(x)` with `omega^m(0) = 0`.
    pub fn omega_at(&self, m: i64, x: Fq<'_>) -> ZqElem {
        match x.dlog() {
            Err(_) => self.zq.zero(),
            Ok(l) => {
                let qm1 = self.qm1() as i128;
                let k = (m as i128 * l as i128).rem_euclid(qm1) as usize;
                self.omega[k].clone()
            }
        }
    }

    pub fn delta(&self, a: Char) -> u8 {
        u8::from(a.is_trivial())
    }

    pub fn eval(&self, a: Char, x: Fq<'_>) -> ZqElem {
        self.omega_at(a.exp as i64, x)
    }

    /// `chi(-1)` as `+1` or `-1`.
    pub fn sign_at_minus_one(&self, a: Char) -> i64 {
        // omega(-1) = -1 and omega^m(-1) = (-1)^m.
        if a.exp.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `sum_x A(x) B(1 - x)`.
    pub fn jacobi(&self, a: Char, b: Char) -> ZqElem {
        let one = self.field.one();
        let mut acc = self.zq.zero();
        for x in self.field.elements() {
            if x.is_zero() || x.is_one() {
                continue;
            }
            acc = self
                .zq
                .add(&acc, &self.zq.mul(&self.eval(a, x), &self.eval(b, one - x)));
        }
        acc
    }

    /// `(A choose B) = B(-1) J(A, conj B) / q`.
    pub fn binomial(&self, a: Char, b: Char) -> PadicRationalZq {
        let j = self
            .zq
            .mul_int(&self.jacobi(a, b.conj()), self.sign_at_minus_one(b));
        PadicRationalZq::from_full(&self.zq, &j).shift(-(self.field.r() as i64))
    }

    /// Right side of Gross–Koblitz for `g(omega^{-a})`.
    fn gross_koblitz(&self, a: u64) -> Result<GaussSumValue> {
        let p = self.field.p();
        let qm1 = self.qm1();
        let mut s = 0u64;
        let mut unit = self.zq.one();
        let mut api = a % qm1;
        for _ in 0..self.field.r() {
            // <a p^i / (q-1)> = (a p^i mod (q-1)) / (q-1)
            let num = api;
            let g = self.gamma.gamma(&frac::ratio(num as i64, qm1 as i64))?;
            unit = self.zq.mul(&unit, &self.zq.from_int(g as i64));
            s += num;
            api = api * p % qm1;
        }
        // (p-1) * sum <a p^i / (q-1)> is the base-p digit sum of a.
        debug_assert_eq!((s * (p - 1)) % qm1, 0);
        Ok(GaussSumValue {
            s: s * (p - 1) / qm1,
            unit,
        })
    }

    /// Gross–Koblitz data of `g(chi)`.
    pub fn gauss_gk(&self, chi: Char) -> &GaussSumValue {
        &self.gk[chi.conj().exp as usize]
    }

    /// `g(chi)` in the Eisenstein ring from its Gross–Koblitz data.
    pub fn gauss_gk_eis(&self, eis: &EisCtx, chi: Char) -> EisElem {
        let v = self.gauss_gk(chi);
        let e = eis.mul_zq(&eis.pi_pow(v.s), &v.unit);
        eis.neg(&e)
    }

    /// `g(chi) = sum_x chi(x) zeta^{tr x}` summed directly.
    pub fn gauss_direct(&self, eis: &EisCtx, chi: Char) -> EisElem {
        let p = self.field.p() as usize;
        let mut by_trace = vec![self.zq.zero(); p];
        for x in self.field.nonzero() {
            let t = x.trace() as usize;
            by_trace[t] = self.zq.add(&by_trace[t], &self.eval(chi, x));
        }
        let mut acc = eis.zero();
        for (t, s) in by_trace.iter().enumerate() {
            acc = eis.add(&acc, &eis.mul_zq(eis.zeta_pow(t as i64), s));
        }
        acc
    }

    /// Direct Gauss sum, erroring when it vanishes at precision for `chi != eps`.
    pub fn gauss_sum(&self, eis: &EisCtx, chi: Char) -> Result<EisElem> {
        let g = self.gauss_direct(eis, chi);
        if eis.is_zero(&g) {
            return Err(Error::PrecisionExhausted(format!(
                "Gauss sum of omega^{} vanishes at precision {}",
                chi.exp,
                self.prec()
            )));
        }
        Ok(g)
    }

    /// Whether `(q-1) theta(alpha) = sum_m g(omega^{-m}) omega^m(alpha)` holds.
    pub fn theta_expansion_check(&self, eis: &EisCtx, alpha: Fq<'_>) -> Result<bool> {
        if alpha.is_zero() {
            return Err(Error::ZeroArgument("additive character expansion"));
        }
        let lhs = eis.mul_zq(
            eis.zeta_pow(alpha.trace() as i64),
            &self.zq.from_int(self.qm1() as i64),
        );
        let mut rhs = eis.zero();
        for m in 0..self.qm1() as i64 {
            let g = self.gauss_gk_eis(eis, self.ch(-m));
            rhs = eis.add(&rhs, &eis.mul_zq(&g, &self.omega_at(m, alpha)));
        }
        Ok(lhs == rhs)
    }

    /// `sum_chi chi(x)`.
    pub fn orthogonality(&self, x: Fq<'_>) -> ZqElem {
        self.all()
            .fold(self.zq.zero(), |acc, c| self.zq.add(&acc, &self.eval(c, x)))
    }

    pub fn gauss_product(&self) -> GaussProduct<'_, 'f> {
        GaussProduct {
            chars: self,
            pi_exp: 0,
            unit: self.zq.one(),
        }
    }

    /// `C(d, k, alpha) = sum_chi g(chi^d) g(conj chi^{d-k}) chi(alpha) / g(chi^k)`.
    pub fn char_sum_c(&self, d: u64, k: u64, alpha: Fq<'_>) -> Result<PadicRationalZq> {
        if alpha.is_zero() {
            return Err(Error::ZeroArgument("C(d, k, alpha)"));
        }
        if k == 0 || k >= d {
            return Err(Error::Precondition(format!(
                "need 1 <= k < d, got d={d}, k={k}"
            )));
        }
        let mut acc = PadicRationalZq::zero(&self.zq);
        for chi in self.all() {
            let mut g = self.gauss_product();
            g.mul_gauss(chi.pow(d as i64));
            g.mul_gauss(chi.conj().pow((d - k) as i64));
            g.div_gauss(chi.pow(k as i64));
            g.mul_zq(&self.eval(chi, alpha));
            let term = g.finish()?;
            assert!(
                term.val() >= 0 || term.is_zero(),
                "C(d,k,alpha) terms are integral"
            );
            acc = acc.add(&self.zq, &term);
        }
        Ok(acc)
    }

    /// Complex-valued Gauss sum through a fixed embedding; a sanity oracle only.
    pub fn gauss_complex(&self, chi: Char) -> Complex64 {
        let qm1 = self.qm1() as f64;
        let p = self.field.p() as f64;
        let tau = std::f64::consts::TAU;
        self.field
            .nonzero()
            .map(|x| {
                let l = x.dlog().expect("nonzero") as f64;
                let angle = tau * ((chi.exp as f64 * l) / qm1 + x.trace() as f64 / p);
                Complex64::from_polar(1.0, angle)
            })
            .sum()
    }
}

/// Running product of Gauss sums and their inverses, kept as `pi^e * unit`.
pub struct GaussProduct<'c, 'f> {
    chars: &'c Characters<'f>,
    pi_exp: i64,
    unit: ZqElem,
}

impl GaussProduct<'_, '_> {
    pub fn mul_gauss(&mut self, chi: Char) -> &mut Self {
        let zq = &self.chars.zq;
        let v = self.chars.gauss_gk(chi);
        self.pi_exp += v.s as i64;
        self.unit = zq.mul(&self.unit, &zq.neg(&v.unit));
        self
    }

    pub fn div_gauss(&mut self, chi: Char) -> &mut Self {
        let zq = &self.chars.zq;
        let a = chi.conj().exp as usize;
        self.pi_exp -= self.chars.gk[a].s as i64;
        self.unit = zq.mul(&self.unit, &self.chars.gk_neg_unit_inv[a]);
        self
    }

    pub fn mul_zq(&mut self, x: &ZqElem) -> &mut Self {
        self.unit = self.chars.zq.mul(&self.unit, x);
        self
    }

    /// Requires the pi-exponent to be a multiple of `p - 1`.
    pub fn finish(&self) -> Result<PadicRationalZq> {
        let zq = &self.chars.zq;
        let d = self.chars.field.p() as i64 - 1;
        if self.pi_exp.rem_euclid(d) != 0 {
            return Err(Error::Precondition(format!(
                "Gauss product has pi-exponent {} not divisible by p - 1",
                self.pi_exp
            )));
        }
        let k = self.pi_exp.div_euclid(d);
        let unit = if k % 2 == 0 {
            self.unit.clone()
        } else {
            zq.neg(&self.unit)
        };
        Ok(PadicRationalZq::from_full(zq, &unit).shift(k))
    }
}
