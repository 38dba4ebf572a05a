//! Echelon form of explicit bases, generalized echelon certificates, and
//! the abelianization obstruction.
//!
//! Run with: cargo run --example echelon_certificates

use stallings::echelon::{
    check_echelon_form, echelon_via_cycles, generalized_echelon_certificate,
    non_echelon_witness, NonEchelonVerdict,
};
use stallings::fold::{fold_all, wedge_of_cycles};
use stallings::graph::Alphabet;
use stallings::word::Word;

fn main() -> stallings::Result<()> {
    let five = Alphabet::new(["a", "b", "c", "d", "e"])?;
    let two = Alphabet::new(["a", "b"])?;

    // an ordered basis in echelon form: every generator introduces a
    // fresh base letter
    let gens: Vec<Word> = ["ab", "aacb", "ce"]
        .iter()
        .map(|t| Word::parse(t, &five))
        .collect::<stallings::Result<_>>()?;
    let report = check_echelon_form(&gens);
    println!("(ab, aacb, ce) echelon: {}", report.echelon);
    for (i, fresh) in report.fresh.iter().enumerate() {
        let names: Vec<&str> = fresh.iter().map(|&l| five.name(l)).collect();
        println!("  generator {i} introduces {names:?}");
    }

    // the fresh letters pick out a maximal essential set on the graph
    let (h, set) = echelon_via_cycles(&gens, &five)?;
    println!("fresh-letter essential set on the folded graph: {:?}", set.edges);

    // so the graph carries a generalized echelon certificate
    let cert = generalized_echelon_certificate(&h)?.expect("echelon implies generalized echelon");
    let labels: Vec<&str> = cert.essential_labels.iter().map(|&l| five.name(l)).collect();
    println!("certificate: essential edges {:?} with labels {labels:?}", cert.essential);

    // the commutator pair is generalized echelon (rank 2) but cannot be
    // echelon: its whole abelianization image vanishes
    let gens: Vec<Word> = ["abAB", "ABab"]
        .iter()
        .map(|t| Word::parse(t, &two))
        .collect::<stallings::Result<_>>()?;
    let h = fold_all(&wedge_of_cycles(&gens, &two).graph);
    let cert = generalized_echelon_certificate(&h)?.expect("rank-2 graphs are generalized echelon");
    println!(
        "\ncommutator pair: rank {}, certificate with {} essential edge(s)",
        h.rank()?,
        cert.essential.len()
    );
    match non_echelon_witness(&h)? {
        NonEchelonVerdict::NotEchelonByAbelianization => {
            println!("abelianization image is trivial: not echelon with respect to any basis")
        }
        NonEchelonVerdict::Inconclusive => println!("abelianization obstruction inconclusive"),
    }
    Ok(())
}
