//! Enumerate maximal essential edge sets, decompose into islands, and
//! exchange essential edges.
//!
//! Run with: cargo run --example essential_sets

use std::collections::BTreeSet;

use stallings::essential::{
    exchange, injective_maximal_essential, island_decomposition, is_essential_set,
    maximal_essential_sets,
};
use stallings::fold::{fold_all, wedge_of_cycles};
use stallings::graph::{Alphabet, EdgeId};
use stallings::word::Word;

fn main() -> stallings::Result<()> {
    let alphabet = Alphabet::new(["a", "b"])?;
    let gens: Vec<Word> = ["aa", "ab", "bb"]
        .iter()
        .map(|t| Word::parse(t, &alphabet))
        .collect::<stallings::Result<_>>()?;
    let h = fold_all(&wedge_of_cycles(&gens, &alphabet).graph);
    println!("graph: {} edges, reduced rank {}", h.edge_count(), h.reduced_rank());

    // a single edge set is essential iff removing it drops the reduced
    // rank by its size; both decision procedures agree
    let first: BTreeSet<EdgeId> = [h.edge_ids().next().unwrap()].into();
    println!("first edge essential: {}", is_essential_set(&h, &first)?);

    let sets = maximal_essential_sets(&h)?;
    println!("\n{} maximal essential sets:", sets.len());
    for set in &sets {
        let ids: Vec<EdgeId> = set.edges.iter().copied().collect();
        println!("  {ids:?}");
    }

    let d = island_decomposition(&h, &sets[0])?;
    println!("\nislands of the first set (each of rank 1):");
    for island in &d.islands {
        println!(
            "  island with {} vertices, {} edges, rank {}",
            island.vertex_count(),
            island.edge_count(),
            island.rank()?
        );
    }

    // exchange one essential edge for a maximal essential set of the
    // subgraph it spans
    let set = &sets[0];
    let part: BTreeSet<EdgeId> = [*set.edges.iter().next().unwrap()].into();
    let swapped = exchange(&h, set, &part, &part)?;
    println!("\nidentity exchange returns {:?}", swapped.edges);

    match injective_maximal_essential(&h)? {
        Some(set) => println!("injective maximal essential set: {:?}", set.edges),
        None => println!("no injectively labeled maximal essential set exists"),
    }
    Ok(())
}
