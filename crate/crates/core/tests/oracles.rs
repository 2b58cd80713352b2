//! Independent brute-force oracles against the library's fast paths.

use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use padic_hypergeo::characters::Characters;
use padic_hypergeo::frac::ratio;
use padic_hypergeo::hypergeo::{FParams, GParams, GnPlan, GreenePlan};
use padic_hypergeo::padics::{GammaTable, ZqCtx};
use padic_hypergeo::varieties::{DiagonalSurface, HessianCurve, WeierstrassCurve};
use padic_hypergeo::{FieldCtx, Fq};

const FIELDS: &[(u64, u32)] = &[(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (11, 1), (13, 1)];

/// `Gamma_p(n) = (-1)^n prod_{0 < j < n, p \nmid j} j`, straight from the definition.
fn morita(n: u64, p: u64, pn: u64) -> u64 {
    let mut acc = 1u64;
    for j in 1..n {
        if j % p != 0 {
            acc = acc * j % pn;
        }
    }
    if n % 2 == 1 {
        (pn - acc) % pn
    } else {
        acc
    }
}

#[test]
fn gamma_table_matches_definition() {
    for (p, prec) in [(3u64, 5u32), (5, 3), (7, 3), (13, 2)] {
        let pn = p.pow(prec);
        let table = GammaTable::new(p, prec, 1 << 20).unwrap();
        for n in 0..pn.min(400) {
            assert_eq!(table.at(n), morita(n, p, pn), "p={p} n={n}");
        }
    }
}

/// `l(x)` in `{1..p}` with `l(x) = x mod p`.
fn lead(x: &BigRational, p: u64) -> u64 {
    let num = x.numer().to_string().parse::<i64>().unwrap();
    let den = x.denom().to_string().parse::<i64>().unwrap();
    let inv = (1..p as i64)
        .find(|v| (den * v).rem_euclid(p as i64) == 1)
        .unwrap();
    let l = (num * inv).rem_euclid(p as i64) as u64;
    if l == 0 {
        p
    } else {
        l
    }
}

proptest! {
    // Gamma_p(x) Gamma_p(1 - x) = (-1)^{l(x)}.
    #[test]
    fn gamma_reflection(pi in 0usize..4, num in -60i64..60, den in 1i64..30) {
        let p = [3u64, 5, 7, 11][pi];
        prop_assume!(den % p as i64 != 0);
        let prec = 3;
        let pn = p.pow(prec);
        let table = GammaTable::new(p, prec, 1 << 20).unwrap();
        let x = ratio(num, den);
        let y = ratio(1, 1) - &x;
        let prod = table.gamma(&x).unwrap() * table.gamma(&y).unwrap() % pn;
        let want = if lead(&x, p).is_multiple_of(2) { 1 } else { pn - 1 };
        prop_assert_eq!(prod, want);
    }
}

#[test]
fn teichmuller_lifts_are_roots_of_unity_reducing_to_x() {
    for &(p, r) in FIELDS {
        let f = FieldCtx::new(p, r).unwrap();
        let zq = ZqCtx::new(&f, 4).unwrap();
        for x in f.nonzero() {
            let w = zq.teichmuller(x).unwrap();
            assert_eq!(zq.pow(&w, f.q() - 1), zq.one());
            assert_eq!(zq.reduce(&f, &w), x);
        }
    }
}

fn trace(x: Fq<'_>) -> u64 {
    // x + x^p + ... + x^{p^{r-1}}, read off as an element of F_p
    let f = x.ctx();
    let mut acc = f.zero();
    let mut y = x;
    for _ in 0..f.r() {
        acc = acc + y;
        y = y.pow(f.p() as i64);
    }
    acc.coeffs()[0]
}

#[test]
fn complex_gauss_sums_by_hand() {
    for &(p, r) in FIELDS {
        let f = FieldCtx::new(p, r).unwrap();
        let chars = Characters::new(&f, 2).unwrap();
        let g = f.generator();
        let qm1 = f.q() - 1;
        for m in 1..qm1 {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut x = f.one();
            for l in 0..qm1 {
                let angle = std::f64::consts::TAU
                    * ((m * l) as f64 / qm1 as f64 + trace(x) as f64 / p as f64);
                sum += Complex64::from_polar(1.0, angle);
                x = x * g;
            }
            assert!((sum.norm_sqr() - f.q() as f64).abs() < 1e-8);
            assert!((sum - chars.gauss_complex(chars.ch(m as i64))).norm() < 1e-8);
        }
    }
}

fn legendre_trace<'f>(lambda: Fq<'f>) -> i64 {
    let f = lambda.ctx();
    WeierstrassCurve::new(-(f.one() + lambda), lambda, f.zero())
        .trace()
        .unwrap()
}

/// Legendre curves: `q 2F1(phi, phi; eps | l) = -phi(-1) a_q` and
/// `2G2[1/2,1/2; 0,0 | l] = phi(-l) a_q`.
#[test]
fn legendre_family() {
    for &(p, r) in &[(5u64, 1u32), (3, 2), (7, 1), (11, 1), (13, 1), (5, 2)] {
        let f = FieldCtx::new(p, r).unwrap();
        let chars = Characters::new(&f, 4).unwrap();
        let zq = chars.zq();
        let q = f.q() as i64;
        let phi = chars.ch((q - 1) / 2);
        let greene = GreenePlan::new(
            &chars,
            &FParams::new(vec![phi, phi], vec![chars.ch(0)]).unwrap(),
        );
        let g = GnPlan::new(
            &chars,
            &GParams::from_ratios(&[(1, 2), (1, 2)], &[(0, 1), (0, 1)]),
        )
        .unwrap();
        let sign = f.from_int(-1).quadratic_char();
        for l in f.nonzero().filter(|l| !l.is_one()) {
            let a = legendre_trace(l);
            let qf = greene
                .eval(l)
                .mul_int(zq, q)
                .recover_integer(zq, -2 * q, 2 * q);
            assert_eq!(qf, Ok(-sign * a), "q={q} l={l}");
            let gv = g.eval(l).recover_integer(zq, -2 * q, 2 * q);
            assert_eq!(gv, Ok((-l).quadratic_char() * a), "q={q} l={l}");
        }
    }
}

#[test]
fn curve_counts_by_double_loop() {
    let f = FieldCtx::new(7, 2).unwrap();
    for (a, b) in [(1, 3), (2, 0), (0, 5), (3, 3)] {
        let e = WeierstrassCurve::new(f.zero(), f.from_int(a), f.from_int(b));
        let mut n = 1u64;
        for x in f.elements() {
            for y in f.elements() {
                n += u64::from(y * y == x.pow(3) + e.a4 * x + e.a6);
            }
        }
        assert_eq!(e.count_unchecked(), n);
    }
    for a in f.nonzero() {
        let Ok(c) = HessianCurve::new(a) else {
            continue;
        };
        let mut n = 0u64;
        for x in f.elements() {
            for y in f.elements() {
                n += u64::from(x * x * x + y * y * y + f.one() == f.from_int(3) * a * x * y);
            }
        }
        assert_eq!(c.count_affine(), n);
    }
}

/// Projective points as lines through the origin of `F_q^2`.
#[test]
fn diagonal_counts_by_lines() {
    for &(p, r) in FIELDS {
        let f = FieldCtx::new(p, r).unwrap();
        for (d, k) in [(2u64, 1u64), (3, 1), (4, 1), (5, 2)] {
            for lambda in f.nonzero().take(6) {
                let s = DiagonalSurface::new(d, k, lambda).unwrap();
                let dl = f.from_int(d as i64) * lambda;
                let (d, k) = (d as i64, k as i64);
                let mut nonzero_sols = 0u64;
                for x in f.elements() {
                    for y in f.elements() {
                        if (x.is_zero() && y.is_zero())
                            || x.pow(d) + y.pow(d) != dl * x.pow(k) * y.pow(d - k)
                        {
                            continue;
                        }
                        nonzero_sols += 1;
                    }
                }
                assert_eq!(s.count_projective(), nonzero_sols / (f.q() - 1));
            }
        }
    }
}
