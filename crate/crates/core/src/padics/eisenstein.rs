//! The totally ramified extension `Z_q[pi] / (pi^{p-1} + p)`.

use num_rational::Ratio;

use super::zq::{ZqCtx, ZqElem};

/// `sum_{j < p-1} c_j pi^j` with every `c_j` in `Z_q / p^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisElem {
    c: Vec<ZqElem>,
}

impl EisElem {
    pub fn coeffs(&self) -> &[ZqElem] {
        &self.c
    }
}

#[derive(Debug, Clone)]
pub struct EisCtx {
    zq: ZqCtx,
    /// `zeta_p^j` for `j < p`.
    zeta_pows: Vec<EisElem>,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl EisCtx {
    pub fn new(zq: ZqCtx) -> Self {
        let mut ctx = EisCtx {
            zq,
            zeta_pows: Vec::new(),
        };
        let zeta = ctx.compute_zeta();
        let mut pows = vec![ctx.one()];
        for j in 1..ctx.p() {
            pows.push(ctx.mul(&pows[j as usize - 1], &zeta));
        }
        assert!(
            ctx.mul(&pows[ctx.p() as usize - 1], &zeta) == ctx.one(),
            "zeta_p^p must be 1"
        );
        ctx.zeta_pows = pows;
        ctx
    }

    pub fn zq(&self) -> &ZqCtx {
        &self.zq
    }

    pub fn p(&self) -> u64 {
        self.zq.p()
    }

    fn deg(&self) -> usize {
        (self.zq.p() - 1) as usize
    }

    pub fn zero(&self) -> EisElem {
        EisElem {
            c: vec![self.zq.zero(); self.deg()],
        }
    }

    pub fn one(&self) -> EisElem {
        self.from_zq(&self.zq.one())
    }

    pub fn from_zq(&self, x: &ZqElem) -> EisElem {
        let mut e = self.zero();
        e.c[0] = x.clone();
        e
    }

    pub fn from_int(&self, n: i64) -> EisElem {
        self.from_zq(&self.zq.from_int(n))
    }

    pub fn pi(&self) -> EisElem {
        self.pi_pow(1)
    }

    /// `pi^s = (-p)^{s div (p-1)} pi^{s mod (p-1)}`.
    pub fn pi_pow(&self, s: u64) -> EisElem {
        let d = self.deg() as u64;
        let (k, j) = (s / d, s % d);
        let mut e = self.zero();
        if k < self.zq.prec() as u64 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            e.c[j as usize] = self.zq.from_int(sign * self.zq.p_pow(k as u32) as i64);
        }
        e
    }

    pub fn zeta(&self) -> &EisElem {
        &self.zeta_pows[1]
    }

    /// `zeta_p^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> &EisElem {
        &self.zeta_pows[k.rem_euclid(self.p() as i64) as usize]
    }

    pub fn add(&self, a: &EisElem, b: &EisElem) -> EisElem {
        EisElem {
            c: a.c
                .iter()
                .zip(&b.c)
                .map(|(x, y)| self.zq.add(x, y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &EisElem) -> EisElem {
        EisElem {
            c: a.c.iter().map(|x| self.zq.neg(x)).collect(),
        }
    }

    pub fn sub(&self, a: &EisElem, b: &EisElem) -> EisElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul_zq(&self, a: &EisElem, x: &ZqElem) -> EisElem {
        EisElem {
            c: a.c.iter().map(|y| self.zq.mul(x, y)).collect(),
        }
    }

    pub fn mul(&self, a: &EisElem, b: &EisElem) -> EisElem {
        let d = self.deg();
        let mut prod = vec![self.zq.zero(); 2 * d - 1];
        for (i, x) in a.c.iter().enumerate() {
            if self.zq.is_zero(x) {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                prod[i + j] = self.zq.add(&prod[i + j], &self.zq.mul(x, y));
            }
        }
        let minus_p = -(self.p() as i64);
        for j in (d..2 * d - 1).rev() {
            let folded = self.zq.mul_int(&prod[j], minus_p);
            prod[j - d] = self.zq.add(&prod[j - d], &folded);
        }
        prod.truncate(d);
        EisElem { c: prod }
    }

    pub fn pow(&self, base: &EisElem, mut e: u64) -> EisElem {
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

    pub fn is_zero(&self, a: &EisElem) -> bool {
        a.c.iter().all(|x| self.zq.is_zero(x))
    }

    /// Valuation normalised so that `v(p) = 1`; `None` when zero at precision.
    pub fn valuation(&self, a: &EisElem) -> Option<Ratio<i64>> {
        let d = self.deg() as i64;
        a.c.iter()
            .enumerate()
            .filter_map(|(j, x)| self.zq.ord_p(x).map(|o| j as i64 + d * o as i64))
            .min()
            .map(|units| Ratio::new(units, d))
    }

    /// `1 + pi w` where `w = 1 + O(pi)` solves `((1 + pi w)^p - 1) / (pi w) = 0`.
    fn compute_zeta(&self) -> EisElem {
        let p = self.p();
        // With pi^{p-1} = -p the equation becomes
        // w^{p-1} = 1 + sum_{j=1}^{p-2} (C(p, j+1) / p) pi^j w^j,
        // and w <- w + F(w) contracts by a factor of pi.
        let coeffs: Vec<EisElem> = (1..p - 1)
            .map(|j| {
                let c = (binomial(p, j + 1) / p) as i64;
                let mut e = self.pi_pow(j);
                e = self.mul_zq(&e, &self.zq.from_int(c));
                e
            })
            .collect();
        let residual = |w: &EisElem| -> EisElem {
            let mut f = self.sub(&self.pow(w, p - 1), &self.one());
            let mut wj = self.one();
            for c in &coeffs {
                wj = self.mul(&wj, w);
                f = self.sub(&f, &self.mul(c, &wj));
            }
            f
        };
        let mut w = self.one();
        let steps = (p - 1) * self.zq.prec() as u64 + 5;
        for _ in 0..steps {
            w = self.add(&w, &residual(&w));
        }
        assert!(
            self.is_zero(&residual(&w)),
            "zeta iteration did not converge"
        );
        self.add(&self.one(), &self.mul(&self.pi(), &w))
    }

    pub fn format(&self, a: &EisElem) -> String {
        let parts: Vec<String> =
            a.c.iter()
                .map(|x| {
                    let v: Vec<String> = x.coeffs().iter().map(u64::to_string).collect();
                    format!("[{}]", v.join(","))
                })
                .collect();
        format!("[{}] mod {}^{}", parts.join(","), self.p(), self.zq.prec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldCtx;

    fn ctx(p: u64, r: u32, n: u32) -> EisCtx {
        EisCtx::new(ZqCtx::new(&FieldCtx::new(p, r).unwrap(), n).unwrap())
    }

    #[test]
    fn pi_relation() {
        for p in [3, 5, 7] {
            let e = ctx(p, 1, 4);
            let lhs = e.pow(&e.pi(), p - 1);
            assert_eq!(lhs, e.from_int(-(p as i64)));
            assert_eq!(e.valuation(&e.pi()), Some(Ratio::new(1, p as i64 - 1)));
            assert_eq!(e.valuation(&e.from_int(p as i64)), Some(Ratio::new(1, 1)));
            assert_eq!(e.valuation(&e.zero()), None);
        }
    }

    #[test]
    fn zeta_is_a_primitive_root_congruent_to_one_plus_pi() {
        for (p, r, n) in [(3, 1, 6), (5, 1, 6), (7, 1, 6), (3, 2, 5), (5, 2, 4)] {
            let e = ctx(p, r, n);
            let z = e.zeta().clone();
            assert_eq!(e.pow(&z, p), e.one());
            assert_ne!(z, e.one());
            let diff = e.sub(&e.sub(&z, &e.one()), &e.pi());
            let v = e.valuation(&diff).unwrap();
            assert!(v >= Ratio::new(2, p as i64 - 1));
            // 1 + zeta + ... + zeta^{p-1} = 0
            let s = (0..p as i64).fold(e.zero(), |acc, k| e.add(&acc, e.zeta_pow(k)));
            assert!(e.is_zero(&s));
        }
    }

    #[test]
    fn zeta_for_three_solves_its_quadratic() {
        // u = zeta - 1 satisfies u^2 + 3u + 3 = 0
        let e = ctx(3, 1, 8);
        let u = e.sub(e.zeta(), &e.one());
        let val = e.add(
            &e.add(&e.mul(&u, &u), &e.mul_zq(&u, &e.zq().from_int(3))),
            &e.from_int(3),
        );
        assert!(e.is_zero(&val));
    }
}
