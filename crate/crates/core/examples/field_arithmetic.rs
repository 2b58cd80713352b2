//! Arithmetic in F_25: the modulus, a generator, square roots and traces.

use padic_hypergeo::FieldCtx;

fn main() -> padic_hypergeo::Result<()> {
    let f = FieldCtx::new(5, 2)?;
    println!("F_{} = F_5[x]/({})", f.q(), f.modulus_string());
    println!("generator g = {}", f.generator());

    let x = f.parse("2,3")?; // 2 + 3x
    let y = f.parse("4")?;
    println!("x = {x}, y = {y}");
    println!("x + y = {}, x * y = {}, x / y = {}", x + y, x * y, x / y);
    println!("x^(q-1) = {}", x.pow(f.q() as i64 - 1));
    println!(
        "log_g x = {}, tr x = {}, phi(x) = {}",
        x.dlog()?,
        x.trace(),
        x.quadratic_char()
    );
    if let Some(s) = (x * x).sqrt() {
        println!("a square root of x^2 is {s}");
    }

    // y^2 - 2 has a root in F_25 but not in F_5
    let roots = f.count_distinct_roots(&[f.from_int(-2), f.zero(), f.one()])?;
    println!("y^2 - 2 has {roots} roots in F_25");
    Ok(())
}
