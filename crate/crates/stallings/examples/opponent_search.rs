//! Enumerate small opponent graphs exhaustively, as the inertness
//! refuter does, and tabulate intersection ranks against a fixed
//! subgroup.
//!
//! Run with: cargo run --example opponent_search

use stallings::fold::{fold_all, wedge_of_cycles};
use stallings::graph::Alphabet;
use stallings::inert::enumerate_based_cores;
use stallings::pullback::intersection_rank;
use stallings::word::Word;

fn main() -> stallings::Result<()> {
    let alphabet = Alphabet::new(["a", "b"])?;
    let gens: Vec<Word> = ["aa", "ab", "bb"]
        .iter()
        .map(|t| Word::parse(t, &alphabet))
        .collect::<stallings::Result<_>>()?;
    let h = fold_all(&wedge_of_cycles(&gens, &alphabet).graph);
    println!("subgroup of rank {} over two letters", h.rank()?);

    let mut shown = 0usize;
    let mut total = 0usize;
    let mut refuted = None;
    enumerate_based_cores(&alphabet, 3, &mut |k| {
        total += 1;
        let rank = intersection_rank(&h, k).expect("pullback succeeds");
        let k_rank = k.rank().expect("opponents are connected");
        if shown < 10 {
            println!(
                "  opponent {:>2}: {} edges, rank {k_rank}, intersection rank {rank}",
                total,
                k.edge_count()
            );
            shown += 1;
        }
        if rank > k_rank && refuted.is_none() {
            refuted = Some((k.clone(), rank, k_rank));
        }
        true
    })?;
    println!("enumerated {total} based core opponents with at most 3 edges");
    match refuted {
        Some((k, rank, k_rank)) => println!(
            "inertness refuted by a {}-edge opponent: rank(H cap K) = {rank} > rank(K) = {k_rank}",
            k.edge_count()
        ),
        None => println!("no refutation among the enumerated opponents"),
    }
    Ok(())
}
