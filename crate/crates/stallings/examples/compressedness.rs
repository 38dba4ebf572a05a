//! Decide compressedness by exhaustive quotient enumeration, and walk a
//! placeholder deflation/inflation round trip.
//!
//! Run with: cargo run --example compressedness

use stallings::compress::{
    arc_word_oriented, best_transversal, deflate, inflate, is_compressed, CompressionVerdict,
};
use stallings::fold::{canonical_key, fold_all, wedge_of_cycles};
use stallings::graph::Alphabet;
use stallings::word::Word;

fn main() -> stallings::Result<()> {
    let ab = Alphabet::new(["a", "b"])?;
    let abc = Alphabet::new(["a", "b", "c"])?;

    let subgroup = |texts: &[&str], alphabet: &Alphabet| -> stallings::Result<stallings::LabeledGraph> {
        let gens: Vec<Word> = texts
            .iter()
            .map(|t| Word::parse(t, alphabet))
            .collect::<stallings::Result<_>>()?;
        Ok(fold_all(&wedge_of_cycles(&gens, alphabet).graph))
    };

    for (texts, alphabet) in [
        (vec!["ab"], &ab),
        (vec!["ab", "ba"], &ab),
        (vec!["aa", "ab", "bb"], &ab),
    ] {
        let h = subgroup(&texts, alphabet)?;
        match is_compressed(&h, 8)? {
            CompressionVerdict::CompressedVerified { budget_edges } => {
                println!("{texts:?}: compressed (exhaustive up to {budget_edges} edges)");
                if h.is_core() && h.rank()? > 1 {
                    let (_, labels) = best_transversal(&h)?;
                    println!("  best transversal carries {labels} labels >= rank {}", h.rank()?);
                }
            }
            CompressionVerdict::NotCompressed(w) => {
                println!(
                    "{texts:?}: NOT compressed; quotient drops reduced rank {} -> {}",
                    w.source_mrank, w.target_mrank
                );
            }
            CompressionVerdict::Unknown { budget_edges } => {
                println!("{texts:?}: unknown (over the {budget_edges}-edge budget)");
            }
        }
    }

    // a disjoint union of two copies of a compressed graph immerses onto
    // one copy, so it is never compressed
    let fig8 = stallings::LabeledGraph::bouquet(ab.clone());
    let doubled = fig8.disjoint_union(&fig8)?;
    println!(
        "figure-eight doubled: {:?}",
        matches!(is_compressed(&doubled, 8)?, CompressionVerdict::NotCompressed(_))
            .then_some("not compressed")
            .unwrap_or("unexpected")
    );

    // deflation: the c-labeled arc collapses to its placeholder edge
    let h = subgroup(&["acb", "a"], &abc)?;
    let arcs = h.arcs()?;
    let c_edge = h.edges().find(|e| e.label == 2).unwrap().id;
    let arc = arcs.iter().find(|a| a.contains_edge(c_edge)).unwrap();
    let (word, _, _) = arc_word_oriented(&h, arc, c_edge)?;
    let deflated = deflate(&h, arc, c_edge)?;
    println!(
        "\ndeflation of the {}-edge arc: {} -> {} edges, rank {} -> {}",
        arc.len(),
        h.edge_count(),
        deflated.edge_count(),
        h.rank()?,
        deflated.rank()?
    );
    let inflated = inflate(&deflated, c_edge, &word)?;
    println!(
        "inflating back with {:?} restores the graph: {}",
        word.to_text(&abc),
        canonical_key(&inflated)? == canonical_key(&h)?
    );
    Ok(())
}
