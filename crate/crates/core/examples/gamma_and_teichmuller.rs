//! Morita's p-adic gamma function and Teichmüller lifts in Z_q.

use padic_hypergeo::frac::ratio;
use padic_hypergeo::padics::{gamma_p, ZqCtx};
use padic_hypergeo::FieldCtx;

fn main() -> padic_hypergeo::Result<()> {
    let p = 7;
    for (n, d) in [(1, 2), (1, 3), (2, 3), (1, 6)] {
        println!("Gamma_{p}({n}/{d}) = {}", gamma_p(&ratio(n, d), p, 4)?);
    }
    // reflection: Gamma_p(1/2)^2 = (-1)^{(p+1)/2}
    let h = gamma_p(&ratio(1, 2), p, 4)?.residue;
    println!("Gamma_{p}(1/2)^2 = {} mod {p}^4", h * h % 7u64.pow(4));

    let f = FieldCtx::new(3, 2)?;
    let zq = ZqCtx::new(&f, 5)?;
    let g = f.generator();
    let w = zq.teichmuller(g)?;
    println!("omega({g}) = {}", zq.format(&w));
    println!("omega({g})^(q-1) = {}", zq.format(&zq.pow(&w, f.q() - 1)));
    Ok(())
}
