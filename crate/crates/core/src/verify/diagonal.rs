//! Diagonal hypersurfaces: root counts, point counts and the summation
//! identities for their `G`-values.

use num_integer::Integer;

use super::caps::*;
use super::{sample_nonzero, FieldRun, Record};
use crate::characters::Characters;
use crate::error::Result;
use crate::fields::Fq;
use crate::hypergeo::{GParams, GnPlan};
use crate::padics::PadicRationalZq;
use crate::varieties::DiagonalSurface;

fn admissible(p: u64, d: u64, k: u64) -> bool {
    [d, k, d - k].iter().all(|v| v % p != 0)
}

fn dk_pairs(dmax: u64) -> impl Iterator<Item = (u64, u64)> {
    (2..=dmax).flat_map(|d| (1..d).map(move |k| (d, k)))
}

/// `lambda^d k^k (d-k)^{d-k}`.
fn g_argument<'f>(lambda: Fq<'f>, d: u64, k: u64) -> Fq<'f> {
    let f = lambda.ctx();
    let (d, k) = (d as i64, k as i64);
    lambda.pow(d) * f.from_int(k).pow(k) * f.from_int(d - k).pow(d - k)
}

/// Integer in `[lo, hi]` or the raw p-adic string.
fn show(zq: &crate::padics::ZqCtx, v: &PadicRationalZq, lo: i64, hi: i64) -> (Option<i64>, String) {
    match v.recover_integer(zq, lo, hi) {
        Ok(n) => (Some(n), n.to_string()),
        Err(_) => (None, v.format(zq)),
    }
}

pub(super) fn thm_1_2(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "thm-1.2";
    let mut out = Vec::new();
    if run.p() > DIAGONAL_PMAX {
        return Ok(out);
    }
    let f = run.field;
    for (d, k) in dk_pairs(run.cfg.dmax) {
        let params = run.params().with("d", d).with("k", k);
        if d.gcd(&k) != 1 {
            out.push(Record::skip(
                ID,
                params,
                run.key(&[d as i64, k as i64, -1]),
                "gcd(d, k) > 1",
            ));
            continue;
        }
        if !admissible(run.p(), d, k) {
            out.push(Record::skip(
                ID,
                params,
                run.key(&[d as i64, k as i64, -1]),
                "p divides dk(d-k)",
            ));
            continue;
        }
        for lambda in f.nonzero() {
            let s = DiagonalSurface::new(d, k, lambda)?;
            let proj = s.count_projective() as i64;
            let rq = s.r_q()? as i64;
            let rqp = s.r_q_prime()? as i64;
            let key = run.key(&[d as i64, k as i64, lambda.code() as i64]);
            let params = params.clone().with("lambda", lambda);
            let mut rec = Record::ints(ID, params, key, proj, rq);
            let mut detail = format!("r_q'={rqp}");
            if rqp != rq {
                rec.status = super::Status::Fail;
            }
            if run.q() <= LEMMA_QMAX {
                let n = s.count_affine() as i64;
                detail.push_str(&format!(" N={n}"));
                if n != (run.q() as i64 - 1) * proj + 1 {
                    rec.status = super::Status::Fail;
                }
            }
            out.push(rec.detail(detail));
        }
    }
    Ok(out)
}

/// `1 + G[diagonal(d, k) | lambda^d k^k (d-k)^{d-k}]` for every `lambda`.
fn one_plus_g<'f>(
    chars: &Characters<'f>,
    d: u64,
    k: u64,
) -> Result<Vec<(Fq<'f>, PadicRationalZq)>> {
    let zq = chars.zq();
    let plan = GnPlan::new(chars, &GParams::diagonal(d, k))?;
    let one = PadicRationalZq::from_int(zq, 1);
    Ok(chars
        .field()
        .nonzero()
        .map(|l| (l, one.add(zq, &plan.eval(g_argument(l, d, k)))))
        .collect())
}

pub(super) fn thm_1_1(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "thm-1.1";
    let mut out = Vec::new();
    if run.p() > DIAGONAL_PMAX {
        return Ok(out);
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    for (d, k) in dk_pairs(run.cfg.dmax) {
        let params = run.params().with("d", d).with("k", k);
        let head = run.key(&[d as i64, k as i64, -1]);
        if d.gcd(&k) != 1 {
            out.push(Record::skip(ID, params, head, "gcd(d, k) > 1"));
            continue;
        }
        if !admissible(run.p(), d, k) {
            out.push(Record::skip(ID, params, head, "p divides dk(d-k)"));
            continue;
        }
        for (lambda, v) in one_plus_g(&chars, d, k)? {
            let count = DiagonalSurface::new(d, k, lambda)?.count_projective() as i64;
            let key = run.key(&[d as i64, k as i64, lambda.code() as i64]);
            let params = params.clone().with("lambda", lambda);
            let (n, shown) = show(zq, &v, 0, d as i64);
            let mut rec = Record::ints(ID, params, key, count, n.unwrap_or(i64::MIN));
            rec.rhs = Some(shown);
            rec.precision = Some(v.abs_prec());
            if n.is_none() {
                rec.detail = Some("integer recovery failed".into());
            }
            out.push(rec);
        }
    }
    Ok(out)
}

pub(super) fn thm_1_3(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "thm-1.3";
    let mut out = Vec::new();
    if run.p() > DIAGONAL_PMAX {
        return Ok(out);
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let f = run.field;
    let q = run.q() as i64;
    for (d, k) in dk_pairs(run.cfg.dmax) {
        let params = run.params().with("d", d).with("k", k);
        if !admissible(run.p(), d, k) {
            out.push(Record::skip(
                ID,
                params,
                run.key(&[d as i64, k as i64, -1]),
                "p divides dk(d-k)",
            ));
            continue;
        }
        let k1 = (run.q() - 1).gcd(&k);
        for (lambda, v) in one_plus_g(&chars, d, k)? {
            // sum over chi != eps, chi^{k1} = eps of conj(chi)^d(-lambda d) delta(chi^d)
            let arg = -(f.from_int(d as i64) * lambda);
            let mut s = zq.zero();
            for chi in chars.all() {
                if chi.is_trivial() || !chi.pow(k1 as i64).is_trivial() {
                    continue;
                }
                let cd = chi.pow(d as i64);
                if chars.delta(cd) == 1 {
                    s = zq.add(&s, &chars.eval(cd.conj(), arg));
                }
            }
            let shortcut = (k1.gcd(&d) - 1) as i64;
            let s = PadicRationalZq::from_full(zq, &s);
            let corr = s.mul(zq, &PadicRationalZq::from_ratio(zq, q - 1, q));
            let total = v.add(zq, &corr);
            let rq = DiagonalSurface::new(d, k, lambda)?.r_q()? as i64;
            let key = run.key(&[d as i64, k as i64, lambda.code() as i64]);
            let params = params.clone().with("lambda", lambda);
            let (n, shown) = show(zq, &total, 0, d as i64);
            let mut rec =
                Record::ints(ID, params, key, rq, n.unwrap_or(i64::MIN)).branch(if shortcut == 0 {
                    "no-correction"
                } else {
                    "correction"
                });
            rec.rhs = Some(shown);
            rec.precision = Some(total.abs_prec());
            if s.agreement(zq, &PadicRationalZq::from_int(zq, shortcut))
                .is_none()
            {
                rec.status = super::Status::Fail;
                rec.detail = Some(format!(
                    "correction sum differs from gcd(k1, d) - 1 = {shortcut}"
                ));
            } else if n.is_none() {
                rec.detail = Some("integer recovery failed".into());
            }
            out.push(rec);
        }
    }
    Ok(out)
}

const THM15_PAIRS: &[(u64, u64)] = &[(3, 1), (5, 1), (5, 3), (7, 3)];
const THM16_PAIRS: &[(u64, u64)] = &[(4, 2), (4, 3), (6, 3), (6, 5)];

pub(super) fn thm_1_5(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "thm-1.5";
    let mut out = Vec::new();
    if run.q() > SUMMATION_QMAX {
        return Ok(out);
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let f = run.field;
    let q = run.q() as i64;
    let weights: Vec<(Fq<'_>, i64)> = f
        .elements()
        .map(|t| (t, (t * (t - f.one())).quadratic_char()))
        .filter(|&(_, w)| w != 0)
        .collect();
    let xs: Vec<Fq<'_>> = if run.q() <= SUMMATION_EXHAUSTIVE_QMAX {
        f.nonzero().collect()
    } else {
        sample_nonzero(f, SUMMATION_SAMPLES)
    };
    for &(d, k) in THM15_PAIRS.iter().filter(|(d, _)| *d <= run.cfg.dmax) {
        let params = run.params().with("d", d).with("k", k);
        if !admissible(run.p(), d, k) {
            out.push(Record::skip(
                ID,
                params,
                run.key(&[d as i64, k as i64, -1]),
                "p divides dk(d-k)",
            ));
            continue;
        }
        let std = GnPlan::new(&chars, &GParams::diagonal(d, k))?;
        let shifted = GnPlan::new(&chars, &GParams::diagonal_shifted(d, k))?;
        for &x in &xs {
            let lhs = PadicRationalZq::from_int(zq, 1).add(zq, &std.eval(x).mul_int(zq, q));
            let mut rhs = PadicRationalZq::zero(zq);
            for &(t, w) in &weights {
                rhs = rhs.add(zq, &shifted.eval(x * t).mul_int(zq, -w));
            }
            let key = run.key(&[d as i64, k as i64, x.code() as i64]);
            out.push(Record::padic(
                ID,
                params.clone().with("x", x),
                key,
                zq,
                &lhs,
                &rhs,
            ));
        }
    }
    Ok(out)
}

pub(super) fn thm_1_6(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "thm-1.6";
    let mut out = Vec::new();
    if run.q() > SUMMATION_QMAX {
        return Ok(out);
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let f = run.field;
    let weights: Vec<(Fq<'_>, i64)> = f
        .elements()
        .map(|t| (t, (f.one() - t).quadratic_char()))
        .filter(|&(_, w)| w != 0)
        .collect();
    let xs: Vec<Fq<'_>> = if run.q() <= SUMMATION_EXHAUSTIVE_QMAX {
        f.elements().collect()
    } else {
        std::iter::once(f.zero())
            .chain(sample_nonzero(f, SUMMATION_SAMPLES))
            .collect()
    };
    for &(d, k) in THM16_PAIRS.iter().filter(|(d, _)| *d <= run.cfg.dmax) {
        let params = run.params().with("d", d).with("k", k);
        if !admissible(run.p(), d, k) {
            out.push(Record::skip(
                ID,
                params,
                run.key(&[d as i64, k as i64, -1]),
                "p divides dk(d-k)",
            ));
            continue;
        }
        let std = GnPlan::new(&chars, &GParams::diagonal(d, k))?;
        let reduced = GnPlan::new(&chars, &GParams::diagonal_reduced(d, k))?;
        for &x in &xs {
            let mut lhs = PadicRationalZq::zero(zq);
            for &(t, w) in &weights {
                lhs = lhs.add(zq, &reduced.eval(x * t).mul_int(zq, w));
            }
            let rhs = std.eval(x).neg(zq);
            let key = run.key(&[d as i64, k as i64, x.code() as i64]);
            let mut rec = Record::padic(ID, params.clone().with("x", x), key, zq, &lhs, &rhs);
            if x.is_zero() {
                rec = rec
                    .branch("x=0")
                    .detail("every character vanishes at 0, so G(0) = 0");
            } else {
                rec = rec.branch("x!=0");
            }
            out.push(rec);
        }
    }
    Ok(out)
}
