//! The prefix-sum order on sign vectors: a closure, the case lemma in
//! dimension 7, and the resulting lower bound on |V_sd(a)|.

use radlab::dominance::{case_lemma_7, upward_closure, vsd_count_lower_bound, vsd_size};
use radlab::{CoeffVec, SignAssignment};

fn main() -> radlab::Result<()> {
    let s = SignAssignment::from_set(&[4, 5, 7], 7)?;
    let closure = upward_closure(&s)?;
    let names: Vec<String> = closure.iter().map(|t| t.to_string()).collect();
    println!(
        "{} vectors dominate {s}: {}",
        closure.len(),
        names.join(" ")
    );

    for text in ["5,4,3,3,2,1,1", "1,1,1,1,1,1,0", "9,2,2,2,1,1,1"] {
        let a: CoeffVec = text.parse()?;
        let w = case_lemma_7(&a, false)?;
        let seeds = [
            SignAssignment::from_set(&[2], 7)?,
            SignAssignment::from_set(&[3, 4], 7)?,
            SignAssignment::from_set(&[5, 6, 7], 7)?,
        ];
        let bound = vsd_count_lower_bound(&a, &seeds)?;
        println!(
            "a = ({a}): first member {w}, closures give |V_sd| >= {bound}, actual {}",
            vsd_size(&a, false)?
        );
    }
    Ok(())
}
