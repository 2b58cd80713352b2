//! McCarthy's `nGn`, Greene's `n+1Fn` and McCarthy's `n+1Fn*`.
//!
//! Each evaluator comes as a plan: the per-character coefficients are
//! computed once for a parameter set, and every evaluation is then a single
//! pass over the `q - 1` characters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::characters::{Char, Characters};
use crate::error::{Error, Result};
use crate::fields::Fq;
use crate::frac::{self, fract, parse_fraction_list, ratio};
use crate::padics::{PadicRationalZq, ZqElem};

/// Parameters `a_1..a_n; b_1..b_n` of `nGn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GParams {
    top: Vec<BigRational>,
    bottom: Vec<BigRational>,
}

impl GParams {
    pub fn new(top: Vec<BigRational>, bottom: Vec<BigRational>) -> Result<Self> {
        if top.is_empty() || top.len() != bottom.len() {
            return Err(Error::ParamLength {
                top: top.len(),
                bottom: bottom.len(),
            });
        }
        Ok(GParams { top, bottom })
    }

    pub fn parse(top: &str, bottom: &str) -> Result<Self> {
        Self::new(parse_fraction_list(top)?, parse_fraction_list(bottom)?)
    }

    pub fn from_ratios(top: &[(i64, i64)], bottom: &[(i64, i64)]) -> Self {
        Self::new(
            top.iter().map(|&(n, d)| ratio(n, d)).collect(),
            bottom.iter().map(|&(n, d)| ratio(n, d)).collect(),
        )
        .expect("static parameter lists are well formed")
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }

    pub fn top(&self) -> &[BigRational] {
        &self.top
    }

    pub fn bottom(&self) -> &[BigRational] {
        &self.bottom
    }

    /// Every denominator must be prime to `p`.
    pub fn check_prime(&self, p: u64) -> Result<()> {
        let bp = BigInt::from(p);
        for x in self.top.iter().chain(&self.bottom) {
            if (x.denom() % &bp).is_zero() {
                return Err(Error::DenominatorDivisibleByP {
                    value: x.to_string(),
                    p,
                });
            }
        }
        Ok(())
    }

    /// Tops `h/d` for `h = 1..d-1`; bottoms `0`, `h/k` for `h = 1..k-1`,
    /// `h/(d-k)` for `h = 1..d-k-1`.
    pub fn diagonal(d: u64, k: u64) -> Self {
        assert!(d >= 2 && k >= 1 && k < d);
        let (d, k) = (d as i64, k as i64);
        let top = (1..d).map(|h| ratio(h, d)).collect();
        let mut bottom = vec![ratio(0, 1)];
        bottom.extend((1..k).map(|h| ratio(h, k)));
        bottom.extend((1..d - k).map(|h| ratio(h, d - k)));
        Self::new(top, bottom).expect("d - 1 entries on both sides")
    }

    /// `diagonal(d, k)` with the entry `1/2` of the `d - k` block replaced by a
    /// trailing `0`; needs `d - k` even.
    pub fn diagonal_shifted(d: u64, k: u64) -> Self {
        assert!(d > k && (d - k).is_multiple_of(2));
        let base = Self::diagonal(d, k);
        let half = ratio(1, 2);
        // the d - k block comes last, so its 1/2 is the last one
        let pos = base
            .bottom
            .iter()
            .rposition(|b| *b == half)
            .expect("(d-k)/2 slot");
        let mut bottom = base.bottom.clone();
        bottom.remove(pos);
        bottom.push(ratio(0, 1));
        Self::new(base.top, bottom).expect("same length")
    }

    /// Tops `h/d` without `1/2`; bottoms `h/k` for `h = 1..k-1` and
    /// `h/(d-k)` for `h = 1..d-k-1`. Needs `d` even and `2 <= k < d`.
    pub fn diagonal_reduced(d: u64, k: u64) -> Self {
        assert!(d.is_multiple_of(2) && k >= 2 && k < d);
        let (d, k) = (d as i64, k as i64);
        let top = (1..d)
            .filter(|&h| 2 * h != d)
            .map(|h| ratio(h, d))
            .collect();
        let mut bottom: Vec<BigRational> = (1..k).map(|h| ratio(h, k)).collect();
        bottom.extend((1..d - k).map(|h| ratio(h, d - k)));
        Self::new(top, bottom).expect("d - 2 entries on both sides")
    }

    pub fn format(&self) -> String {
        let j = |v: &[BigRational]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("[{}; {}]", j(&self.top), j(&self.bottom))
    }
}

/// Precomputed coefficients of `nGn` for one parameter set and one field.
pub struct GnPlan<'c, 'f> {
    chars: &'c Characters<'f>,
    /// `(e, [(a, u_a)])`: terms sharing the power `p^e`.
    buckets: Vec<(i64, Vec<(u64, ZqElem)>)>,
    min_exp: i64,
}

impl<'c, 'f> GnPlan<'c, 'f> {
    pub fn new(chars: &'c Characters<'f>, params: &GParams) -> Result<Self> {
        let field = chars.field();
        let p = field.p();
        params.check_prime(p)?;
        let zq = chars.zq();
        let gamma = chars.gamma();
        let qm1 = chars.qm1() as i64;
        let n = params.n() as u64;
        let r = field.r();

        // p^i-scaled parameters and the inverse of their Gamma denominators.
        let mut scaled: Vec<(BigRational, BigRational)> = Vec::new();
        let mut denom = zq.one();
        let mut pi = BigInt::from(1);
        for _ in 0..r {
            let pi_r = BigRational::from_integer(pi.clone());
            for (a, b) in params.top.iter().zip(&params.bottom) {
                let alpha = fract(&(a * &pi_r));
                let beta = fract(&(-b * &pi_r));
                let g = zq.from_int(gamma.gamma(&alpha)? as i64);
                let h = zq.from_int(gamma.gamma(&beta)? as i64);
                denom = zq.mul(&denom, &zq.mul(&g, &h));
                scaled.push((alpha, beta));
            }
            pi *= p;
        }
        let denom_inv = zq.inv(&denom)?;

        let mut by_exp: std::collections::BTreeMap<i64, Vec<(u64, ZqElem)>> = Default::default();
        for a in 0..qm1 {
            let mut e = 0i64;
            let mut unit = denom_inv.clone();
            let mut pi = BigInt::from(1);
            let mut idx = 0;
            for _ in 0..r {
                let u = BigRational::new(BigInt::from(a) * &pi, BigInt::from(qm1));
                for _ in 0..n {
                    let (alpha, beta) = &scaled[idx];
                    idx += 1;
                    let lo = alpha - &u;
                    let hi = beta + &u;
                    let part = -frac::floor_i64(&lo) - frac::floor_i64(&hi);
                    assert!(
                        (-1..=1).contains(&part),
                        "per-parameter exponent {part} outside [-1, 1]"
                    );
                    e += part;
                    let g1 = gamma.gamma(&fract(&lo))?;
                    let g2 = gamma.gamma(&fract(&hi))?;
                    unit = zq.mul(&unit, &zq.mul_int(&zq.from_int(g1 as i64), g2 as i64));
                }
                pi *= p;
            }
            // (-1)^{a n} (-p)^e = (-1)^{a n + e} p^e
            if (a * n as i64 + e).rem_euclid(2) == 1 {
                unit = zq.neg(&unit);
            }
            by_exp.entry(e).or_default().push((a as u64, unit));
        }
        let min_exp = *by_exp.keys().next().expect("q - 1 >= 2 terms");
        Ok(GnPlan {
            chars,
            buckets: by_exp.into_iter().collect(),
            min_exp,
        })
    }

    /// Most negative power of `p` among the terms; bounds the precision loss.
    pub fn min_exponent(&self) -> i64 {
        self.min_exp
    }

    /// `nGn[params | t]`, with every character vanishing at `t = 0`.
    pub fn eval(&self, t: Fq<'_>) -> PadicRationalZq {
        let zq = self.chars.zq();
        let Ok(l) = t.dlog() else {
            return PadicRationalZq::zero(zq);
        };
        let mut total = PadicRationalZq::zero(zq);
        for (e, terms) in &self.buckets {
            let mut s = zq.zero();
            for (a, u) in terms {
                // conj(omega)^a(t) = omega(g)^{-a log t}
                let w = self.chars.omega_pow(-(*a as i64) * l as i64);
                s = zq.add(&s, &zq.mul(u, w));
            }
            total = total.add(zq, &PadicRationalZq::from_full(zq, &s).shift(*e));
        }
        let scale = PadicRationalZq::from_ratio(zq, -1, self.chars.qm1() as i64);
        total.mul(zq, &scale)
    }
}

/// One-shot `nGn` evaluation.
pub fn gn_eval(chars: &Characters<'_>, params: &GParams, t: Fq<'_>) -> Result<PadicRationalZq> {
    Ok(GnPlan::new(chars, params)?.eval(t))
}

/// Characters `A_0..A_n; B_1..B_n` of Greene's and McCarthy's functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FParams {
    top: Vec<Char>,
    bottom: Vec<Char>,
}

impl FParams {
    pub fn new(top: Vec<Char>, bottom: Vec<Char>) -> Result<Self> {
        if top.len() != bottom.len() + 1 || bottom.is_empty() {
            return Err(Error::ParamLength {
                top: top.len(),
                bottom: bottom.len(),
            });
        }
        Ok(FParams { top, bottom })
    }

    pub fn n(&self) -> usize {
        self.bottom.len()
    }
}

/// Greene's `n+1Fn` with precomputed binomial products.
pub struct GreenePlan<'c, 'f> {
    chars: &'c Characters<'f>,
    coeffs: Vec<PadicRationalZq>,
}

impl<'c, 'f> GreenePlan<'c, 'f> {
    pub fn new(chars: &'c Characters<'f>, params: &FParams) -> Self {
        let zq = chars.zq();
        let coeffs = chars
            .all()
            .map(|chi| {
                let mut c = chars.binomial(params.top[0].mul(&chi), chi);
                for (a, b) in params.top[1..].iter().zip(&params.bottom) {
                    c = c.mul(zq, &chars.binomial(a.mul(&chi), b.mul(&chi)));
                }
                c
            })
            .collect();
        GreenePlan { chars, coeffs }
    }

    pub fn eval(&self, x: Fq<'_>) -> PadicRationalZq {
        let zq = self.chars.zq();
        let mut acc = PadicRationalZq::zero(zq);
        if x.is_zero() {
            return acc;
        }
        for (chi, c) in self.chars.all().zip(&self.coeffs) {
            acc = acc.add(zq, &c.mul_zq(zq, &self.chars.eval(chi, x)));
        }
        let q = self.chars.q() as i64;
        acc.mul(zq, &PadicRationalZq::from_ratio(zq, q, q - 1))
    }
}

pub fn greene_f(chars: &Characters<'_>, params: &FParams, x: Fq<'_>) -> PadicRationalZq {
    GreenePlan::new(chars, params).eval(x)
}

/// McCarthy's `n+1Fn*` through Gross–Koblitz decompositions.
pub struct FStarPlan<'c, 'f> {
    chars: &'c Characters<'f>,
    coeffs: Vec<PadicRationalZq>,
}

impl<'c, 'f> FStarPlan<'c, 'f> {
    pub fn new(chars: &'c Characters<'f>, params: &FParams) -> Result<Self> {
        let n = params.n() as i64;
        let coeffs = chars
            .all()
            .map(|chi| {
                let mut g = chars.gauss_product();
                for a in &params.top {
                    g.mul_gauss(a.mul(&chi)).div_gauss(*a);
                }
                for b in &params.bottom {
                    g.mul_gauss(b.mul(&chi).conj()).div_gauss(b.conj());
                }
                g.mul_gauss(chi.conj());
                let sign = chars.sign_at_minus_one(chi.pow(n + 1));
                g.mul_zq(&chars.zq().from_int(sign));
                g.finish()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FStarPlan { chars, coeffs })
    }

    pub fn eval(&self, x: Fq<'_>) -> PadicRationalZq {
        let zq = self.chars.zq();
        let mut acc = PadicRationalZq::zero(zq);
        if x.is_zero() {
            return acc;
        }
        for (chi, c) in self.chars.all().zip(&self.coeffs) {
            acc = acc.add(zq, &c.mul_zq(zq, &self.chars.eval(chi, x)));
        }
        acc.mul(
            zq,
            &PadicRationalZq::from_ratio(zq, -1, self.chars.qm1() as i64),
        )
    }
}

pub fn mccarthy_fstar(
    chars: &Characters<'_>,
    params: &FParams,
    x: Fq<'_>,
) -> Result<PadicRationalZq> {
    Ok(FStarPlan::new(chars, params)?.eval(x))
}

/// `3G3[1/4,1/2,3/4; 0,1/2,1/2]` versus `2G2[1/4,3/4; 0,1/2] + phi(x)/q`.
pub fn g_shift_3to2(
    chars: &Characters<'_>,
    x: Fq<'_>,
) -> Result<(PadicRationalZq, PadicRationalZq)> {
    let zq = chars.zq();
    let g3 = GParams::from_ratios(&[(1, 4), (1, 2), (3, 4)], &[(0, 1), (1, 2), (1, 2)]);
    let g2 = GParams::from_ratios(&[(1, 4), (3, 4)], &[(0, 1), (1, 2)]);
    let lhs = gn_eval(chars, &g3, x)?;
    let phi = PadicRationalZq::from_ratio(zq, x.quadratic_char(), chars.q() as i64);
    let rhs = gn_eval(chars, &g2, x)?.add(zq, &phi);
    Ok((lhs, rhs))
}

/// Both sides of one of the three `2G2` transformations.
///
/// 1. `[1/4,3/4; 1/2,1/2 | t] = [1/2,1/2; 1/4,3/4 | 1/t]`, `t != 0`.
/// 2. `[1/4,3/4; 1/2,1/2 | t] = phi(-t)/q [1/4,3/4; 0,0 | t]`.
/// 3. `[1/3,2/3; 0,0 | t] = phi(-3t) q [1/2,1/2; 1/6,5/6 | 1/t]`, `t != 0`, `p > 3`.
pub fn g2_transforms(
    chars: &Characters<'_>,
    t: Fq<'_>,
    which: u8,
) -> Result<(PadicRationalZq, PadicRationalZq)> {
    let zq = chars.zq();
    let field = chars.field();
    let q = chars.q() as i64;
    let needs_nonzero = || {
        if t.is_zero() {
            Err(Error::Precondition(format!(
                "transformation {which} needs t != 0"
            )))
        } else {
            Ok(())
        }
    };
    let quarter_half = GParams::from_ratios(&[(1, 4), (3, 4)], &[(1, 2), (1, 2)]);
    match which {
        1 => {
            needs_nonzero()?;
            let rhs_p = GParams::from_ratios(&[(1, 2), (1, 2)], &[(1, 4), (3, 4)]);
            let lhs = gn_eval(chars, &quarter_half, t)?;
            let rhs = gn_eval(chars, &rhs_p, t.inv()?)?;
            Ok((lhs, rhs))
        }
        2 => {
            let rhs_p = GParams::from_ratios(&[(1, 4), (3, 4)], &[(0, 1), (0, 1)]);
            let lhs = gn_eval(chars, &quarter_half, t)?;
            let factor = PadicRationalZq::from_ratio(zq, (-t).quadratic_char(), q);
            let rhs = gn_eval(chars, &rhs_p, t)?.mul(zq, &factor);
            Ok((lhs, rhs))
        }
        3 => {
            needs_nonzero()?;
            if field.p() <= 3 {
                return Err(Error::Precondition("transformation 3 needs p > 3".into()));
            }
            let lhs_p = GParams::from_ratios(&[(1, 3), (2, 3)], &[(0, 1), (0, 1)]);
            let rhs_p = GParams::from_ratios(&[(1, 2), (1, 2)], &[(1, 6), (5, 6)]);
            let lhs = gn_eval(chars, &lhs_p, t)?;
            let sign = (field.from_int(-3) * t).quadratic_char();
            let rhs = gn_eval(chars, &rhs_p, t.inv()?)?.mul_int(zq, sign * q);
            Ok((lhs, rhs))
        }
        _ => Err(Error::Precondition(format!(
            "unknown transformation {which}"
        ))),
    }
}

/// Exact `i64` value of a small rational known to be an integer.
pub fn rational_to_i64(x: &BigRational) -> Option<i64> {
    frac::is_integer(x).then(|| x.numer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldCtx;
    use crate::padics::default_precision;
    use proptest::prelude::*;

    #[test]
    fn vanishing_value_from_non_square() {
        let f = FieldCtx::new(7, 1).unwrap();
        let ch = Characters::new(&f, default_precision(7, 1)).unwrap();
        let params = GParams::parse("1/4,3/4", "0,1/2").unwrap();
        let v = gn_eval(&ch, &params, f.from_int(6)).unwrap();
        assert_eq!(v.recover_integer(ch.zq(), -5, 5).unwrap(), 0);
    }

    #[test]
    fn diagonal_parameters() {
        let g = GParams::diagonal(5, 2);
        assert_eq!(g.format(), "[1/5,2/5,3/5,4/5; 0,1/2,1/3,2/3]");
        let g = GParams::diagonal(3, 1);
        assert_eq!(g.format(), "[1/3,2/3; 0,1/2]");
        let g = GParams::diagonal_shifted(5, 3);
        assert_eq!(g.format(), "[1/5,2/5,3/5,4/5; 0,1/3,2/3,0]");
        let g = GParams::diagonal_reduced(6, 3);
        assert_eq!(g.format(), "[1/6,1/3,2/3,5/6; 1/3,2/3,1/3,2/3]");
    }

    #[test]
    fn rejects_bad_parameters() {
        let f = FieldCtx::new(3, 1).unwrap();
        let ch = Characters::new(&f, 4).unwrap();
        let params = GParams::parse("1/6", "0").unwrap();
        assert!(matches!(
            GnPlan::new(&ch, &params),
            Err(Error::DenominatorDivisibleByP { .. })
        ));
        assert!(GParams::parse("1/2,1/3", "0").is_err());
        assert!(GParams::parse("", "").is_err());
    }

    #[test]
    fn counts_roots_of_cubic() {
        let f = FieldCtx::new(5, 1).unwrap();
        let ch = Characters::new(&f, default_precision(5, 1)).unwrap();
        let v = gn_eval(&ch, &GParams::diagonal(3, 1), f.from_int(4)).unwrap();
        let c = |n| f.from_int(n);
        let roots = f.count_distinct_roots(&[c(1), c(-3), c(0), c(1)]).unwrap() as i64;
        assert_eq!(v.recover_integer(ch.zq(), -1, 2).unwrap(), roots - 1);
    }

    #[test]
    fn shift_and_transforms_small_fields() {
        let f = FieldCtx::new(5, 1).unwrap();
        let ch = Characters::new(&f, 6).unwrap();
        for x in f.elements() {
            let (l, r) = g_shift_3to2(&ch, x).unwrap();
            assert!(l.agreement(ch.zq(), &r).is_some(), "x={x}");
            let (l, r) = g2_transforms(&ch, x, 2).unwrap();
            assert!(l.agreement(ch.zq(), &r).is_some(), "x={x}");
            if !x.is_zero() {
                let (l, r) = g2_transforms(&ch, x, 1).unwrap();
                assert!(l.agreement(ch.zq(), &r).is_some(), "x={x}");
                let (l, r) = g2_transforms(&ch, x, 3).unwrap();
                assert!(l.agreement(ch.zq(), &r).is_some(), "x={x}");
            }
        }
        assert!(g2_transforms(&ch, f.zero(), 1).is_err());
    }

    #[test]
    fn fstar_and_greene_agree_on_order_three_characters() {
        let f = FieldCtx::new(7, 1).unwrap();
        let ch = Characters::new(&f, 5).unwrap();
        let zq = ch.zq();
        let chi3 = ch.ch(2);
        let params = FParams::new(vec![chi3, chi3.conj()], vec![ch.ch(0)]).unwrap();
        let fstar = FStarPlan::new(&ch, &params).unwrap();
        let greene = GreenePlan::new(&ch, &params);
        let g = GnPlan::new(&ch, &GParams::parse("1/3,2/3", "0,0").unwrap()).unwrap();
        // F* = q F here and G(y) = -F*(1/y), so G(y) = -q F(1/y).
        for y in f.nonzero() {
            let z = y.inv().unwrap();
            let fs = fstar.eval(z);
            let gr = greene.eval(z);
            assert!(fs.agreement(zq, &gr.mul_int(zq, 7)).is_some());
            assert!(g.eval(y).agreement(zq, &fs.neg(zq)).is_some());
            assert!(g.eval(y).agreement(zq, &gr.mul_int(zq, -7)).is_some());
        }
        assert!(fstar.eval(f.zero()).is_exact_zero());
        assert!(greene.eval(f.zero()).is_exact_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn permutation_and_periodicity(x in 1u32..13, rot in 0usize..3, shift in -2i64..3) {
            let f = FieldCtx::new(13, 1).unwrap();
            let ch = Characters::new(&f, 3).unwrap();
            let base = GParams::from_ratios(&[(1, 5), (2, 5), (3, 4)], &[(0, 1), (1, 2), (1, 3)]);
            let mut top = base.top().to_vec();
            let mut bottom = base.bottom().to_vec();
            top.rotate_left(rot);
            bottom.rotate_right(rot);
            top[0] += BigRational::from_integer(shift.into());
            bottom[1] -= BigRational::from_integer(shift.into());
            let moved = GParams::new(top, bottom).unwrap();
            let t = f.from_code(x);
            let a = gn_eval(&ch, &base, t).unwrap();
            let b = gn_eval(&ch, &moved, t).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
