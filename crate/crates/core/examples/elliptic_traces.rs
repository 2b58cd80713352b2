//! Frobenius traces of `y^2 = x^3 + ax + b` against
//! `q phi(b) G[1/4,3/4; 1/3,2/3 | -27b^2/(4a^3)]`, and Hessian point counts.

use padic_hypergeo::characters::Characters;
use padic_hypergeo::hypergeo::{GParams, GnPlan};
use padic_hypergeo::padics::default_precision;
use padic_hypergeo::varieties::{HessianCurve, WeierstrassCurve};
use padic_hypergeo::FieldCtx;

fn main() -> padic_hypergeo::Result<()> {
    let f = FieldCtx::new(11, 1)?;
    let chars = Characters::new(&f, default_precision(11, 1))?;
    let zq = chars.zq();
    let q = f.q() as i64;
    let plan = GnPlan::new(&chars, &GParams::parse("1/4,3/4", "1/3,2/3")?)?;

    for (a, b) in [(1, 1), (2, 5), (3, 7), (7, 2)] {
        let (a, b) = (f.from_int(a), f.from_int(b));
        let e = WeierstrassCurve::new(f.zero(), a, b);
        let arg = f.from_int(-27) * b * b / (f.from_int(4) * a.pow(3));
        let g = plan.eval(arg).mul_int(zq, q * b.quadratic_char());
        println!(
            "a = {a:>2}, b = {b:>2}: #E = {:>2}, a_q = {:>3}, from G: {:?}, j = {:?}",
            e.count()?,
            e.trace()?,
            g.recover_integer(zq, -2 * q, 2 * q),
            e.j_invariant().map(|j| j.to_string())
        );
    }

    for a in f.nonzero().take(5) {
        match HessianCurve::new(a) {
            Ok(c) => println!(
                "x^3 + y^3 + 1 = 3({a})xy: {} affine points",
                c.count_affine()
            ),
            Err(e) => println!("a = {a}: {e}"),
        }
    }
    Ok(())
}
