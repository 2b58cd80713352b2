//! Runs check families over a small grid and prints the plain report.
//!
//! `cargo run --release --example verification_report -- thm-1.2 lemma-2`

use padic_hypergeo::verify::{run_suite, OutputFormat, SuiteConfig};

fn main() -> padic_hypergeo::Result<()> {
    let suite: Vec<String> = std::env::args().skip(1).collect();
    let cfg = SuiteConfig {
        suite: if suite.is_empty() {
            vec!["all".into()]
        } else {
            suite
        },
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg)?;
    print!("{}", report.render(OutputFormat::Plain)?);
    Ok(())
}
