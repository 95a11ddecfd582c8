//! The delta inequality P(|a.e| <= d|a|) >= P(|a.e| >= |a|/d) checked on
//! every region cut out by the critical values, plus the fixed-delta form
//! at d = 1 where the two-tail sum exceeds one.

use radlab::conjectures::{check_delta_alt, delta_sweep_max, SweepRegion};
use radlab::exact::{format_rational, rational};
use radlab::CoeffVec;

fn main() -> radlab::Result<()> {
    let a: CoeffVec = "3,2,2,1,1".parse()?;
    let sweep = delta_sweep_max(&a)?;
    for (region, count) in &sweep.regions {
        let label = match region {
            SweepRegion::Interval { lo, hi } => format!(
                "d^2 in ({}, {})",
                format_rational(lo),
                hi.as_ref().map_or("inf".into(), format_rational)
            ),
            SweepRegion::Point { delta_squared } => {
                format!("d^2 = {}", format_rational(delta_squared))
            }
        };
        println!("{label:<24} count {count}");
    }
    println!(
        "max left side {} (holds: {})",
        sweep.max_lhs(),
        sweep.holds()
    );

    let r = check_delta_alt(&"1,1,1,1".parse()?, &rational(1, 1))?;
    println!(
        "(1,1,1,1) at d=1: tail sum {}, inequality {:?}",
        r.values["sum_ge_delta_ge_inv_delta"], r.verdict
    );
    Ok(())
}
