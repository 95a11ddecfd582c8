//! The fixed claims suite with small budgets.
//!
//! ```bash
//! cargo run --release --example verify_claims -- --full
//! ```

use radlab::search::verify::{verify_paper, VerifyConfig};

fn main() {
    let cfg = if std::env::args().any(|a| a == "--full") {
        VerifyConfig::full()
    } else {
        VerifyConfig::quick()
    };
    let report = verify_paper(&cfg);
    print!("{}", report.table());
    let failed = report.failures().count();
    println!("{} rows, {failed} failed", report.rows.len());
    std::process::exit(if failed == 0 { 0 } else { 1 });
}
