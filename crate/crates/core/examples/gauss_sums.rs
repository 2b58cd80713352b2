//! Gauss sums three ways: summed in Z_q[pi], through Gross–Koblitz, and as
//! complex numbers. Also the Jacobi-sum relation `J(A, B) g(AB) = g(A) g(B)`.

use padic_hypergeo::characters::Characters;
use padic_hypergeo::padics::PadicRationalZq;
use padic_hypergeo::FieldCtx;

fn main() -> padic_hypergeo::Result<()> {
    let f = FieldCtx::new(5, 1)?;
    let chars = Characters::new(&f, 6)?;
    let eis = chars.eisenstein();
    let zq = chars.zq();

    for a in 1..f.q() as i64 - 1 {
        let chi = chars.ch(-a);
        let direct = chars.gauss_direct(&eis, chi);
        let gk = chars.gauss_gk_eis(&eis, chi);
        let z = chars.gauss_complex(chi);
        println!(
            "g(omega^-{a}): pi-adic valuation {}, Gross-Koblitz agrees: {}, |g|^2 = {:.6}",
            eis.valuation(&direct)
                .map_or("inf".into(), |v| v.to_string()),
            direct == gk,
            z.norm_sqr()
        );
    }

    let (a, b) = (chars.ch(1), chars.ch(2));
    let j = PadicRationalZq::from_full(zq, &chars.jacobi(a, b));
    let ratio = chars
        .gauss_product()
        .mul_gauss(a)
        .mul_gauss(b)
        .div_gauss(a.mul(&b))
        .finish()?;
    println!("J(omega, omega^2) = {}", j.format(zq));
    println!("g(omega) g(omega^2) / g(omega^3) = {}", ratio.format(zq));
    Ok(())
}
