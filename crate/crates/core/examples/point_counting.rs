//! Projective points on `X^d + Y^d = d lambda X^k Y^{d-k}` against
//! `1 + G[diagonal(d, k) | lambda^d k^k (d-k)^{d-k}]`.

use padic_hypergeo::characters::Characters;
use padic_hypergeo::hypergeo::{GParams, GnPlan};
use padic_hypergeo::padics::{default_precision, PadicRationalZq};
use padic_hypergeo::varieties::DiagonalSurface;
use padic_hypergeo::FieldCtx;

fn main() -> padic_hypergeo::Result<()> {
    let (p, r, d, k) = (7, 2, 5i64, 2i64);
    let f = FieldCtx::new(p, r)?;
    let chars = Characters::new(&f, default_precision(p, r))?;
    let zq = chars.zq();
    let plan = GnPlan::new(&chars, &GParams::diagonal(d as u64, k as u64))?;

    println!("q = {}, d = {d}, k = {k}", f.q());
    for lambda in f.nonzero().step_by(6) {
        let s = DiagonalSurface::new(d as u64, k as u64, lambda)?;
        let arg = lambda.pow(d) * f.from_int(k).pow(k) * f.from_int(d - k).pow(d - k);
        let g = PadicRationalZq::from_int(zq, 1).add(zq, &plan.eval(arg));
        println!(
            "lambda = {lambda:>5}: #D = {}, r_q = {}, r_q' = {}, 1 + G = {:?}",
            s.count_projective(),
            s.r_q()?,
            s.r_q_prime()?,
            g.recover_integer(zq, 0, d)
        );
    }
    Ok(())
}
