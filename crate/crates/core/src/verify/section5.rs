//! Low-degree `G` transformations and the character sums built on them.

use super::caps::*;
use super::{FieldRun, Record};
use crate::characters::Characters;
use crate::error::Result;
use crate::fields::Fq;
use crate::hypergeo::{FParams, FStarPlan, GParams, GnPlan, GreenePlan};
use crate::padics::{PadicRationalZq, ZqCtx};

fn plan<'c, 'f>(
    chars: &'c Characters<'f>,
    top: &[(i64, i64)],
    bottom: &[(i64, i64)],
) -> Result<GnPlan<'c, 'f>> {
    GnPlan::new(chars, &GParams::from_ratios(top, bottom))
}

/// `num / q`.
fn over_q(zq: &ZqCtx, run: &FieldRun<'_>, num: i64) -> PadicRationalZq {
    PadicRationalZq::from_ratio(zq, num, run.q() as i64)
}

/// `phi(t(t-1))` for the `t` where it is nonzero.
fn weights<'f>(run: &FieldRun<'f>) -> Vec<(Fq<'f>, i64)> {
    let f = run.field;
    f.elements()
        .map(|t| (t, (t * (t - f.one())).quadratic_char()))
        .filter(|&(_, w)| w != 0)
        .collect()
}

/// `x != 0, 1` with `phi(3x(1-x)) = -1`.
fn twisted_points<'f>(run: &FieldRun<'f>) -> Vec<Fq<'f>> {
    let f = run.field;
    f.elements()
        .filter(|&x| (f.from_int(3) * x * (f.one() - x)).quadratic_char() == -1)
        .collect()
}

pub(super) fn lemma_5_1(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "lemma-5.1";
    if run.q() > LEMMA_QMAX {
        return Ok(Vec::new());
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let g3 = plan(&chars, &[(1, 4), (1, 2), (3, 4)], &[(0, 1), (1, 2), (1, 2)])?;
    let g2 = plan(&chars, &[(1, 4), (3, 4)], &[(0, 1), (1, 2)])?;
    let mut out = Vec::new();
    for x in run.field.elements() {
        let phi = over_q(zq, run, x.quadratic_char());
        let rhs = g2.eval(x).add(zq, &phi);
        let key = run.key(&[x.code() as i64]);
        out.push(Record::padic(
            ID,
            run.params().with("x", x),
            key,
            zq,
            &g3.eval(x),
            &rhs,
        ));
    }
    Ok(out)
}

pub(super) fn lemma_5_2(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "lemma-5.2";
    if run.q() > LEMMA_QMAX {
        return Ok(Vec::new());
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let f = run.field;
    let q = run.q() as i64;
    let quarter_half = plan(&chars, &[(1, 4), (3, 4)], &[(1, 2), (1, 2)])?;
    let half_quarter = plan(&chars, &[(1, 2), (1, 2)], &[(1, 4), (3, 4)])?;
    let quarter_zero = plan(&chars, &[(1, 4), (3, 4)], &[(0, 1), (0, 1)])?;
    let third = if run.p() > 3 {
        Some((
            plan(&chars, &[(1, 3), (2, 3)], &[(0, 1), (0, 1)])?,
            plan(&chars, &[(1, 2), (1, 2)], &[(1, 6), (5, 6)])?,
        ))
    } else {
        None
    };
    let mut out = Vec::new();
    for t in f.elements() {
        let params = || run.params().with("t", t);
        let key = |b: i64| run.key(&[b, t.code() as i64]);
        let lhs = quarter_half.eval(t);
        if !t.is_zero() {
            let rhs = half_quarter.eval(t.inv()?);
            out.push(Record::padic(ID, params(), key(1), zq, &lhs, &rhs).branch("(1)"));
        }
        let rhs = quarter_zero
            .eval(t)
            .mul(zq, &over_q(zq, run, (-t).quadratic_char()));
        out.push(Record::padic(ID, params(), key(2), zq, &lhs, &rhs).branch("(2)"));
        if let (Some((l, r)), false) = (&third, t.is_zero()) {
            let sign = (f.from_int(-3) * t).quadratic_char();
            let rhs = r.eval(t.inv()?).mul_int(zq, sign * q);
            out.push(Record::padic(ID, params(), key(3), zq, &l.eval(t), &rhs).branch("(3)"));
        }
    }
    if third.is_none() {
        out.push(Record::skip(
            ID,
            run.params(),
            run.key(&[3, -1]),
            "(3) needs p > 3",
        ));
    }
    Ok(out)
}

/// `sum_t phi(1-t) G[1/4,3/4; 1/2,1/2 | xt]` in closed form.
pub(super) fn cor_5_3(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "cor-5.3";
    if run.q() > LEMMA_QMAX {
        return Ok(Vec::new());
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let f = run.field;
    let g = plan(&chars, &[(1, 4), (3, 4)], &[(1, 2), (1, 2)])?;
    let phi2 = f.from_int(2).quadratic_char();
    let mut out = Vec::new();
    for x in f.nonzero() {
        let mut lhs = PadicRationalZq::zero(zq);
        for t in f.elements() {
            let w = (f.one() - t).quadratic_char();
            if w != 0 {
                lhs = lhs.add(zq, &g.eval(x * t).mul_int(zq, w));
            }
        }
        let c = (x - f.one()) / x;
        let (branch, rhs) = if x.is_one() {
            (
                "x=1",
                over_q(zq, run, -1).add(zq, &PadicRationalZq::from_int(zq, -phi2)),
            )
        } else if let Some(a) = c.sqrt() {
            let s = (f.one() + a).quadratic_char() + (f.one() - a).quadratic_char();
            let base = over_q(zq, run, -x.quadratic_char());
            (
                "square",
                base.add(zq, &PadicRationalZq::from_int(zq, -phi2 * s)),
            )
        } else {
            ("non-square", over_q(zq, run, -x.quadratic_char()))
        };
        let key = run.key(&[x.code() as i64]);
        out.push(Record::padic(ID, run.params().with("x", x), key, zq, &lhs, &rhs).branch(branch));
    }
    Ok(out)
}

pub(super) fn cor_5_4(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "cor-5.4";
    if run.q() > LEMMA_QMAX {
        return Ok(Vec::new());
    }
    if run.p() <= 3 {
        return Ok(vec![Record::skip(
            ID,
            run.params(),
            run.key(&[]),
            "needs p > 3",
        )]);
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let q = run.q() as i64;
    let g = plan(&chars, &[(1, 3), (2, 3)], &[(0, 1), (0, 1)])?;
    let ws = weights(run);
    let sum_at = |x: Fq<'_>| -> Result<PadicRationalZq> {
        let xi = x.inv()?;
        Ok(ws.iter().fold(PadicRationalZq::zero(zq), |acc, &(t, w)| {
            acc.add(zq, &g.eval(t * xi).mul_int(zq, w))
        }))
    };
    let mut out = Vec::new();
    let one = run.field.one();
    let lhs = sum_at(one)?;
    let rhs = PadicRationalZq::from_int(zq, -1 - q);
    out.push(Record::padic(ID, run.params(), run.key(&[1, -1]), zq, &lhs, &rhs).branch("x=1"));
    for x in twisted_points(run) {
        let key = run.key(&[2, x.code() as i64]);
        let rhs = PadicRationalZq::from_int(zq, -1);
        let rec = Record::padic(ID, run.params().with("x", x), key, zq, &sum_at(x)?, &rhs);
        out.push(rec.branch("phi(3x(1-x))=-1"));
    }
    Ok(out)
}

/// Greene's `2F1(chi3, conj chi3; eps)` sums, and the bridge from `G` to it.
pub(super) fn cor_5_5(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "cor-5.5";
    if run.q() > LEMMA_QMAX {
        return Ok(Vec::new());
    }
    if run.p() <= 3 || run.q() % 3 != 1 {
        return Ok(vec![Record::skip(
            ID,
            run.params(),
            run.key(&[]),
            "needs p > 3 and q = 1 mod 3",
        )]);
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let f = run.field;
    let q = run.q() as i64;
    let chi3 = chars.ch((run.q() as i64 - 1) / 3);
    let params = FParams::new(vec![chi3, chi3.conj()], vec![chars.ch(0)])?;
    let greene = GreenePlan::new(&chars, &params);
    let fstar = FStarPlan::new(&chars, &params)?;
    let g = plan(&chars, &[(1, 3), (2, 3)], &[(0, 1), (0, 1)])?;
    let ws: Vec<(Fq<'_>, i64)> = weights(run)
        .into_iter()
        .filter(|(t, _)| !t.is_zero())
        .collect();
    let sum_at = |x: Fq<'_>| -> Result<PadicRationalZq> {
        let mut acc = PadicRationalZq::zero(zq);
        for &(t, w) in &ws {
            acc = acc.add(zq, &greene.eval(x / t).mul_int(zq, w));
        }
        Ok(acc)
    };
    let mut out = Vec::new();
    let rhs = PadicRationalZq::from_int(zq, 1).add(zq, &over_q(zq, run, 1));
    let lhs = sum_at(f.one())?;
    out.push(Record::padic(ID, run.params(), run.key(&[1, -1]), zq, &lhs, &rhs).branch("x=1"));
    for x in twisted_points(run) {
        let key = run.key(&[2, x.code() as i64]);
        let rec = Record::padic(
            ID,
            run.params().with("x", x),
            key,
            zq,
            &sum_at(x)?,
            &over_q(zq, run, 1),
        );
        out.push(rec.branch("phi(3x(1-x))=-1"));
    }
    // G(y) = -F*(1/y) and F* = q F, so G(y) = -q F(1/y).
    for y in f.nonzero() {
        let z = y.inv()?;
        let (gy, fs, gr) = (g.eval(y), fstar.eval(z), greene.eval(z));
        let scaled = gr.mul_int(zq, -q);
        let mut rec = Record::padic(
            ID,
            run.params().with("y", y),
            run.key(&[3, y.code() as i64]),
            zq,
            &gy,
            &scaled,
        );
        if fs.agreement(zq, &gr.mul_int(zq, q)).is_none() || gy.agreement(zq, &fs.neg(zq)).is_none()
        {
            rec.status = super::Status::Fail;
            rec.detail = Some("F* differs from q F or from -G(1/y)".into());
        }
        out.push(rec.branch("bridge"));
    }
    Ok(out)
}

/// `G3[1/4,1/2,3/4; 0,1/2,1/2 | 1/(16 alpha)]` against the roots of
/// `y^4 - 2y^3 + y^2 - alpha`.
pub(super) fn remark_5(run: &FieldRun<'_>) -> Result<Vec<Record>> {
    const ID: &str = "remark-5";
    if run.q() > LEMMA_QMAX {
        return Ok(Vec::new());
    }
    let chars = run.chars()?;
    let zq = chars.zq();
    let f = run.field;
    let q = run.q() as i64;
    let g3 = plan(&chars, &[(1, 4), (1, 2), (3, 4)], &[(0, 1), (1, 2), (1, 2)])?;
    let g2 = plan(&chars, &[(1, 4), (3, 4)], &[(0, 1), (1, 2)])?;
    let mut out = Vec::new();
    for alpha in f.nonzero() {
        let poly = [-alpha, f.zero(), f.one(), f.from_int(-2), f.one()];
        let n = f.count_distinct_roots(&poly)? as i64;
        let phi = alpha.quadratic_char();
        let arg = (f.from_int(16) * alpha).inv()?;
        let rhs = PadicRationalZq::from_int(zq, n - 1).add(zq, &over_q(zq, run, (1 - q) * phi));
        let key = run.key(&[alpha.code() as i64]);
        let mut rec = Record::padic(
            ID,
            run.params().with("alpha", alpha),
            key,
            zq,
            &g3.eval(arg),
            &rhs,
        )
        .detail(format!("n_q={n}"));
        if phi == -1 {
            if !g2.eval(arg).is_zero() {
                rec.status = super::Status::Fail;
                rec.detail = Some(format!("n_q={n}; G2 does not vanish"));
            }
            rec = rec.branch("non-square");
        } else {
            rec = rec.branch("square");
        }
        out.push(rec);
    }
    Ok(out)
}
