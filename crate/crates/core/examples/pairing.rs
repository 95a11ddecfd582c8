//! Sorted pairing of the nonnegative sign sums against the squared norm.

use radlab::conjectures::check_pairing;
use radlab::CoeffVec;

fn main() -> radlab::Result<()> {
    for text in ["1,1,1", "3,2,2,1", "5,3,3,2,1,1", "1,1,1,1,1,1,1,1"] {
        let a: CoeffVec = text.parse()?;
        let r = check_pairing(&a)?;
        println!(
            "({a}): max product / |a|^2 = {}, {:?}",
            r.values["max_product_over_norm_sq"], r.verdict
        );
    }
    Ok(())
}
