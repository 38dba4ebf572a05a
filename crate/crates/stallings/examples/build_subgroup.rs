//! Build the subgroup graph of a finitely generated subgroup by folding
//! a wedge of generator cycles, then query membership.
//!
//! Run with: cargo run --example build_subgroup

use stallings::dot::export_dot;
use stallings::fold::{fold_all, wedge_of_cycles, Acceptor};
use stallings::graph::Alphabet;
use stallings::word::Word;

fn main() -> stallings::Result<()> {
    let alphabet = Alphabet::new(["a", "b", "c", "d", "e"])?;
    let gens: Vec<Word> = ["ab", "aacb", "ce"]
        .iter()
        .map(|t| Word::parse(t, &alphabet))
        .collect::<stallings::Result<_>>()?;

    let wedge = wedge_of_cycles(&gens, &alphabet);
    println!(
        "wedge: {} vertices, {} edges",
        wedge.graph.vertex_count(),
        wedge.graph.edge_count()
    );

    let h = fold_all(&wedge.graph);
    println!(
        "folded: {} vertices, {} edges, rank {}, Euler characteristic {}",
        h.vertex_count(),
        h.edge_count(),
        h.rank()?,
        h.euler_characteristic()
    );

    let acceptor = Acceptor::new(&h)?;
    for text in ["ab", "aacb", "ce", "abce", "a", "cab"] {
        let w = Word::parse(text, &alphabet)?;
        println!("  accepts {text:>5}: {}", acceptor.accepts(&w));
    }

    println!("\nDOT rendering:\n{}", export_dot(&h));
    Ok(())
}
