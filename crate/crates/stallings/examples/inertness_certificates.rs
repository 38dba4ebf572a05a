//! Certify inertness through highly inert labellings, and refute it by
//! exhaustive opponent search where no certificate exists.
//!
//! Run with: cargo run --example inertness_certificates

use stallings::fold::{fold_all, wedge_of_cycles};
use stallings::graph::Alphabet;
use stallings::inert::{
    certify_inert, is_inert_set, refute_inertness, InertnessVerdict, RefuteBudget,
};
use stallings::word::Word;

fn main() -> stallings::Result<()> {
    let alphabet = Alphabet::new(["a", "b"])?;
    let subgroup = |texts: &[&str]| -> stallings::Result<stallings::LabeledGraph> {
        let gens: Vec<Word> = texts
            .iter()
            .map(|t| Word::parse(t, &alphabet))
            .collect::<stallings::Result<_>>()?;
        Ok(fold_all(&wedge_of_cycles(&gens, &alphabet).graph))
    };

    for texts in [
        vec!["a", "b"],          // bouquet: single branching vertex
        vec!["ab", "ba"],        // rank 2, two branching vertices, distinct links
        vec!["abAB", "ABab"],    // the commutator pair
        vec!["aa", "ab", "bb"],  // rank 3 in a rank-2 free group
    ] {
        let h = subgroup(&texts)?;
        let report = is_inert_set(&h, &h.vertex_set().clone())?;
        println!("subgroup {texts:?}: rank {}", h.rank()?);
        println!("  branching overlap sums: {:?}", report.overlap_sums);
        match certify_inert(&h)? {
            InertnessVerdict::CertifiedInert { kind } => {
                println!("  certified inert ({kind:?})");
            }
            _ => {
                println!("  no certificate; searching for an opponent...");
                let budget = RefuteBudget { max_edges: 4, trials: 0, seed: 0 };
                match refute_inertness(&h, &budget)? {
                    InertnessVerdict::Refuted { witness, intersection_rank, witness_rank } => {
                        println!(
                            "  refuted: opponent with {} edges of rank {witness_rank} \
                             meets it in rank {intersection_rank}",
                            witness.edge_count()
                        );
                    }
                    _ => println!("  unknown within the budget"),
                }
            }
        }
    }
    Ok(())
}
