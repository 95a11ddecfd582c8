//! An exhaustive sweep interrupted part way, checkpointed to JSON and
//! resumed to the same record.

use radlab::search::{
    exhaustive_integer_search, exhaustive_search_resumable, Checkpoint, ExhaustiveConfig,
    ExhaustiveOutcome, RunControl, SearchTarget,
};

fn main() -> radlab::Result<()> {
    let cfg = ExhaustiveConfig::new(7, SearchTarget::Gprime, 30);
    let control = RunControl {
        stop_after: Some(1000),
        ..Default::default()
    };
    let ck = match exhaustive_search_resumable(&cfg, None, &control, |_| Ok(()))? {
        ExhaustiveOutcome::Interrupted(ck) => ck,
        ExhaustiveOutcome::Finished(r) => {
            println!("finished before the stop: {}", serde_json::to_string(&r)?);
            return Ok(());
        }
    };
    let saved = serde_json::to_string_pretty(&ck)?;
    println!("checkpoint:\n{saved}");

    let ck: Checkpoint = serde_json::from_str(&saved)?;
    let ExhaustiveOutcome::Finished(resumed) =
        exhaustive_search_resumable(&cfg, Some(&ck), &RunControl::default(), |_| Ok(()))?
    else {
        unreachable!()
    };
    let direct = exhaustive_integer_search(7, SearchTarget::Gprime, 30)?;
    println!("resumed: {}", serde_json::to_string(&resumed)?);
    println!("identical to an uninterrupted run: {}", resumed == direct);
    Ok(())
}
