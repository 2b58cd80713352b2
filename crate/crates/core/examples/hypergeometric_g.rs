//! Values of `nGn[a; b | t]`, recovered as integers when they are integral.

use padic_hypergeo::characters::Characters;
use padic_hypergeo::hypergeo::{GParams, GnPlan};
use padic_hypergeo::padics::default_precision;
use padic_hypergeo::FieldCtx;

fn main() -> padic_hypergeo::Result<()> {
    let f = FieldCtx::new(13, 1)?;
    let chars = Characters::new(&f, default_precision(13, 1))?;
    let zq = chars.zq();
    let q = f.q() as i64;

    let params = GParams::parse("1/4,3/4", "0,1/2")?;
    let plan = GnPlan::new(&chars, &params)?;
    println!("G{} over F_{q}", params.format());
    for t in f.elements() {
        let v = plan.eval(t);
        match v.recover_integer(zq, -q, q) {
            Ok(n) => println!("  t = {t:>2}: {n}"),
            Err(_) => println!("  t = {t:>2}: {}", v.format(zq)),
        }
    }

    // the diagonal parameters behind the point counts of X^d + Y^d = d lambda X^k Y^{d-k}
    let diag = GParams::diagonal(5, 2);
    println!("diagonal(5, 2) = {}", diag.format());
    let v = GnPlan::new(&chars, &diag)?.eval(f.from_int(3));
    println!("  value at 3: {}", v.format(zq));
    Ok(())
}
