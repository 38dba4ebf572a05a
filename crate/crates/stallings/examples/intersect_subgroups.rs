//! Intersect subgroups through the fiber product and evaluate the
//! classical rank bounds on the result.
//!
//! Run with: cargo run --example intersect_subgroups

use stallings::fold::{fold_all, wedge_of_cycles, Acceptor};
use stallings::graph::Alphabet;
use stallings::pullback::{based_component, bound_report, fiber_product};
use stallings::word::Word;

fn subgroup(texts: &[&str], alphabet: &Alphabet) -> stallings::Result<stallings::LabeledGraph> {
    let gens: Vec<Word> = texts
        .iter()
        .map(|t| Word::parse(t, alphabet))
        .collect::<stallings::Result<_>>()?;
    Ok(fold_all(&wedge_of_cycles(&gens, alphabet).graph))
}

fn main() -> stallings::Result<()> {
    let alphabet = Alphabet::new(["a", "b"])?;

    // <a> meets <aa> in <aa>
    let h = subgroup(&["a"], &alphabet)?;
    let k = subgroup(&["aa"], &alphabet)?;
    let comp = based_component(&fiber_product(&h, &k)?)?;
    let acceptor = Acceptor::new(&comp)?;
    println!("<a> already contains <aa>:");
    for text in ["a", "aa", "aaa", "aaaa"] {
        let w = Word::parse(text, &alphabet)?;
        println!("  intersection accepts {text:>4}: {}", acceptor.accepts(&w));
    }

    // <ab> and <ba> are conjugate but intersect trivially
    let h = subgroup(&["ab"], &alphabet)?;
    let k = subgroup(&["ba"], &alphabet)?;
    let comp = based_component(&fiber_product(&h, &k)?)?;
    println!(
        "\n<ab> meets <ba> in a tree (trivial intersection): core is empty: {}",
        comp.core().is_empty()
    );

    // bounds on a rank-2 self-intersection
    let h = subgroup(&["ab", "ba"], &alphabet)?;
    let report = bound_report(&h, &h)?;
    println!("\nself-intersection of a rank-2 subgroup:");
    println!("  rank(H)                  = {}", report.rank_h);
    println!("  rank of intersection     = {}", report.actual_rank);
    println!("  reduced rank (mrank)     = {}", report.actual);
    println!("  Howson bound             = {}", report.howson_bound);
    println!("  Hanna Neumann weak bound = {}", report.hn_weak_bound);
    println!("  Hanna Neumann bound      = {}", report.hnc_bound);
    println!("  all satisfied            = {}", report.all_satisfied);
    Ok(())
}
