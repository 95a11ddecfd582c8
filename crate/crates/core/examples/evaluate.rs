//! Tail counts of a single vector.
//!
//! ```bash
//! cargo run --example evaluate -- 1/2,1/2,1/2,1/2
//! ```

use radlab::enumerate::{distribution, tail_counts_norm};
use radlab::CoeffVec;

fn main() -> radlab::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1,1,1,1,1,1,0".into());
    let a: CoeffVec = text.parse()?;
    let t = tail_counts_norm(&a)?;
    println!("a = ({a}), |a|^2 = {}", a.norm_sq());
    println!("below {}  at {}  above {}", t.below, t.at, t.above);
    println!("P(|a.e| <  |a|) = {}", t.p_lt());
    println!("P(|a.e| <= |a|) = {}", t.p_le());
    println!("P(|a.e| =  |a|) = {}", t.p_eq());
    println!("P(|a.e| >= |a|) = {}", t.p_ge());
    println!("P(|a.e| >  |a|) = {}", t.p_gt());
    if a.n() <= 12 {
        let d = distribution(&a)?;
        let line: Vec<String> = d.values.iter().map(|(v, c)| format!("{v}:{c}")).collect();
        println!("sums: {}", line.join(" "));
    }
    Ok(())
}
