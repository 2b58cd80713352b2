//! Gauss-sum identities and the Gamma-function lemmas behind the
//! transformation proofs.

use num_rational::BigRational;

use super::caps::*;
use super::{Batch, FieldRun, Record, Status};
use crate::characters::Characters;
use crate::error::Result;
use crate::frac::{floor_i64, fract, int, ratio};
use crate::padics::{PadicRationalZq, ZqElem};

/// `Gamma_p(<x>)` as an element of `Z_q`.
fn gam(chars: &Characters<'_>, x: &BigRational) -> Result<ZqElem> {
    let g = chars.gamma().gamma(&fract(x))?;
    Ok(chars.zq().from_int(g as i64))
}

fn small_field(run: &FieldRun<'_>) -> bool {
    run.q() <= LEMMA_QMAX
}

pub(super) fn gross_koblitz(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "gk";
    if run.p() > GK_PMAX {
        return Ok(Vec::new());
    }
    let prec = run.prec.max(GK_MIN_PRECISION);
    let chars = Characters::new(run.field, prec)?;
    let eis = chars.eisenstein();
    let mut out = Vec::new();
    for a in 1..run.q() as i64 - 1 {
        let chi = chars.ch(-a);
        let direct = chars.gauss_direct(&eis, chi);
        let gk = chars.gauss_gk_eis(&eis, chi);
        let status = if direct == gk {
            Status::Pass
        } else {
            Status::Fail
        };
        let mut rec = Record::new(ID, run.params().with("a", a), run.key(&[a]), status);
        rec.lhs = Some(eis.format(&direct));
        rec.rhs = Some(eis.format(&gk));
        rec.precision = Some(prec as i64);
        out.push(rec.detail(format!("pi-adic precision {}", (run.p() - 1) * prec as u64)));
    }
    Ok(out)
}

/// `|g(chi)|^2 = q` through a complex embedding.
pub(super) fn complex_shadow(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "complex";
    if run.q() > COMPLEX_QMAX {
        return Ok(Vec::new());
    }
    let chars = run.chars()?;
    let q = run.q() as f64;
    let worst = chars
        .all()
        .filter(|c| !c.is_trivial())
        .map(|c| (chars.gauss_complex(c).norm_sqr() - q).abs())
        .fold(0.0f64, f64::max);
    let status = if worst < COMPLEX_TOL {
        Status::Pass
    } else {
        Status::Fail
    };
    let mut rec = Record::new(ID, run.params(), run.key(&[]), status);
    rec.lhs = Some(format!("max |g|^2 - q = {worst:.3e}"));
    rec.rhs = Some(format!("tolerance {COMPLEX_TOL:e}"));
    Ok(vec![rec])
}

/// `sum_t phi(t(t-1)) = -1`.
pub(super) fn phi_sum(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    let f = run.field;
    let s: i64 = f
        .elements()
        .map(|t| (t * (t - f.one())).quadratic_char())
        .sum();
    Ok(vec![Record::ints(
        "phi-sum",
        run.params(),
        run.key(&[]),
        s,
        -1,
    )])
}

pub(super) fn lemma_2_1(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    if !small_field(run) {
        return Ok(Vec::new());
    }
    let chars = run.chars()?;
    let eis = chars.eisenstein();
    let mut batch = Batch::new();
    for alpha in run.field.nonzero() {
        batch.check(chars.theta_expansion_check(&eis, alpha)?, || {
            format!("alpha={alpha}")
        });
    }
    Ok(vec![batch.record("lemma-2.1", run, None)])
}

/// `g(chi) g(conj chi) = q chi(-1) - (q-1) delta(chi)`.
pub(super) fn lemma_2_2(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    if !small_field(run) {
        return Ok(Vec::new());
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let q = run.q() as i64;
    let mut batch = Batch::new();
    for chi in chars.all() {
        let lhs = chars
            .gauss_product()
            .mul_gauss(chi)
            .mul_gauss(chi.conj())
            .finish()?;
        let rhs = q * chars.sign_at_minus_one(chi) - (q - 1) * chars.delta(chi) as i64;
        let ok = lhs
            .agreement(zq, &PadicRationalZq::from_int(zq, rhs))
            .is_some();
        batch.check(ok, || format!("chi=omega^{}", chi.exp()));
    }
    Ok(vec![batch.record("lemma-2.2", run, None)])
}

/// `J(A, B) = g(A) g(B) / g(AB) + (q-1) B(-1) delta(AB)`.
pub(super) fn lemma_2_3(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    if !small_field(run) {
        return Ok(Vec::new());
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let q = run.q() as i64;
    let mut batch = Batch::new();
    for a in chars.all() {
        for b in chars.all() {
            let ab = a.mul(&b);
            let lhs = PadicRationalZq::from_full(zq, &chars.jacobi(a, b));
            let ratio = chars
                .gauss_product()
                .mul_gauss(a)
                .mul_gauss(b)
                .div_gauss(ab)
                .finish()?;
            let corr = (q - 1) * chars.sign_at_minus_one(b) * chars.delta(ab) as i64;
            let rhs = ratio.add(zq, &PadicRationalZq::from_int(zq, corr));
            batch.check(lhs.agreement(zq, &rhs).is_some(), || {
                format!("A=omega^{} B=omega^{}", a.exp(), b.exp())
            });
        }
    }
    Ok(vec![batch.record("lemma-2.3", run, None)])
}

/// Multiplication formulas for `Gamma_p`, `t = 2..6`, `0 <= a <= q-2`.
///
/// `mirror` selects the `+a` form; otherwise the `-a` form.
pub(super) fn lemma_2_5(run: &FieldRun<'_>, mirror: bool) -> Result<Vec<Record>> {
    let id = if mirror { "lemma-2.6" } else { "lemma-2.5" };
    if !small_field(run) {
        return Ok(Vec::new());
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let f = run.field;
    let (p, r) = (run.p() as i64, run.r());
    let qm1 = run.q() as i64 - 1;
    let sign = if mirror { 1 } else { -1 };
    let mut out = Vec::new();
    for t in (2..=6i64).filter(|t| t % p != 0) {
        let mut batch = Batch::new();
        for a in 0..qm1 {
            let mut lhs = chars.omega_at(sign * t * a, f.from_int(t));
            let mut rhs = zq.one();
            let mut pi = 1i64;
            for _ in 0..r {
                let x = ratio(sign * t * pi * a, qm1);
                lhs = zq.mul(&lhs, &gam(&chars, &x)?);
                for h in 1..t {
                    lhs = zq.mul(&lhs, &gam(&chars, &ratio(h * pi, t))?);
                }
                for h in 0..t {
                    let shift = if mirror { h } else { 1 + h };
                    let y = ratio(pi * shift, t) + ratio(sign * pi * a, qm1);
                    rhs = zq.mul(&rhs, &gam(&chars, &y)?);
                }
                pi *= p;
            }
            batch.check(lhs == rhs, || format!("a={a}"));
        }
        let mut rec = batch.record(id, run, None);
        rec.params = rec.params.with("t", t);
        rec.key.push(t);
        out.push(rec);
    }
    Ok(out)
}

/// Reflection-type products of `Gamma_p` at `a/(q-1)` shifts.
pub(super) fn lemma_2_7(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "lemma-2.7";
    if !small_field(run) {
        return Ok(Vec::new());
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let (p, r) = (run.p() as i64, run.r());
    let qm1 = run.q() as i64 - 1;
    let signed = |e: i64| zq.from_int(if e % 2 == 0 { 1 } else { -1 });
    let mut reflection = Batch::new();
    let mut half = Batch::new();
    for a in 0..qm1 {
        let mut pi = 1i64;
        let (mut refl, mut num, mut den) = (zq.one(), zq.one(), zq.one());
        for _ in 0..r {
            let x = ratio(a * pi, qm1);
            refl = zq.mul(&refl, &gam(&chars, &(int(pi) - &x))?);
            refl = zq.mul(&refl, &gam(&chars, &x)?);
            let h = ratio(pi, 2);
            num = zq.mul(&num, &gam(&chars, &(&h - &x))?);
            num = zq.mul(&num, &gam(&chars, &(&h + &x))?);
            let g = gam(&chars, &h)?;
            den = zq.mul(&den, &zq.mul(&g, &g));
            pi *= p;
        }
        if a > 0 {
            reflection.check(refl == signed(r as i64 + a), || format!("a={a}"));
        }
        if 2 * a != qm1 {
            half.check(num == zq.mul(&den, &signed(a)), || format!("a={a}"));
        }
    }
    Ok(vec![
        reflection.record(ID, run, None).branch("reflection"),
        {
            let mut rec = half.record(ID, run, None).branch("half-shift");
            rec.key.push(1);
            rec
        },
    ])
}

fn coprime_range(p: i64, lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).filter(move |d| d % p != 0)
}

/// `floor(a p^i/(q-1)) + floor(-d a p^i/(q-1))
///  = sum_{h=1}^{d-1} floor(<h p^i/d> - a p^i/(q-1)) - 1`.
pub(super) fn lemma_2_8(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    if !small_field(run) {
        return Ok(Vec::new());
    }
    let (p, r) = (run.p() as i64, run.r());
    let qm1 = run.q() as i64 - 1;
    let mut batch = Batch::new();
    for d in coprime_range(p, 2, 8) {
        for a in 1..qm1 {
            let mut pi = 1i64;
            for i in 0..r {
                let lhs = (a * pi).div_euclid(qm1) + (-d * a * pi).div_euclid(qm1);
                let x = ratio(a * pi, qm1);
                let rhs: i64 = (1..d)
                    .map(|h| floor_i64(&(fract(&ratio(h * pi, d)) - &x)))
                    .sum::<i64>()
                    - 1;
                batch.check(lhs == rhs, || format!("d={d} a={a} i={i}"));
                pi *= p;
            }
        }
    }
    Ok(vec![batch.record("lemma-2.8", run, None)])
}

/// `floor(l a p^i/(q-1)) = sum_{h=0}^{l-1} floor(<-h p^i/l> + a p^i/(q-1))`.
pub(super) fn lemma_2_9(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    if !small_field(run) {
        return Ok(Vec::new());
    }
    let (p, r) = (run.p() as i64, run.r());
    let qm1 = run.q() as i64 - 1;
    let mut batch = Batch::new();
    for l in coprime_range(p, 1, 8) {
        for a in 0..qm1 {
            let mut pi = 1i64;
            for i in 0..r {
                let lhs = (l * a * pi).div_euclid(qm1);
                let x = ratio(a * pi, qm1);
                let rhs: i64 = (0..l)
                    .map(|h| floor_i64(&(fract(&ratio(-h * pi, l)) + &x)))
                    .sum();
                batch.check(lhs == rhs, || format!("l={l} a={a} i={i}"));
                pi *= p;
            }
        }
    }
    Ok(vec![batch.record("lemma-2.9", run, None)])
}

/// Gamma products against the twisted sums `sum_t phi(t(t-1)) omega^{-+a}(-t)`.
///
/// `mirror = false` is the `conj(omega)^a` form, `true` the `omega^a` form.
pub(super) fn lemma_4_x(run: &FieldRun<'_>, mirror: bool) -> Result<Vec<Record>> {
    let id = if mirror { "lemma-4.2" } else { "lemma-4.1" };
    if !small_field(run) {
        return Ok(Vec::new());
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let f = run.field;
    let (p, r) = (run.p() as i64, run.r());
    let qm1 = run.q() as i64 - 1;
    let s = if mirror { 1 } else { -1 };
    let minus_p_pow = |e: i64| {
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        PadicRationalZq::from_int(zq, sign).shift(e)
    };
    let mut batch = Batch::new();
    for a in 0..qm1 {
        let mut lhs = PadicRationalZq::from_int(zq, 1);
        let mut scale = PadicRationalZq::from_int(zq, 1);
        let mut pi = 1i64;
        for _ in 0..r {
            let x = ratio(a * pi, qm1);
            let h = ratio(pi, 2);
            let first = if mirror { x.clone() } else { int(pi) - &x };
            let second = &h - ratio(s, 1) * &x;
            let num = zq.mul(&gam(&chars, &first)?, &gam(&chars, &second)?);
            let den = gam(&chars, &h)?;
            let e = floor_i64(&(ratio(1, 2) - ratio(s, 1) * &x));
            let term = PadicRationalZq::from_full(zq, &zq.mul(&num, &zq.inv(&den)?));
            lhs = lhs.mul(zq, &term).div(zq, &minus_p_pow(e))?;
            scale = scale.mul(zq, &minus_p_pow(floor_i64(&(ratio(s, 1) * &x))));
            pi *= p;
        }
        let mut sum = zq.zero();
        for t in f.elements() {
            let w = (t * (t - f.one())).quadratic_char();
            if w != 0 {
                sum = zq.add(&sum, &zq.mul_int(&chars.omega_at(s * a, -t), w));
            }
        }
        let rhs = PadicRationalZq::from_full(zq, &zq.neg(&sum)).mul(zq, &scale);
        batch.check(lhs.agreement(zq, &rhs).is_some(), || format!("a={a}"));
    }
    Ok(vec![batch.record(id, run, None)])
}
