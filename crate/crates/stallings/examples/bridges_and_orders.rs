//! Label orders, lexicographic edge comparison, and bridges in eventually
//! periodic labeled lines.
//!
//! Run with: cargo run --example bridges_and_orders

use std::cmp::Ordering;

use stallings::echelon::generalized_echelon_certificate;
use stallings::fold::{fold_all, wedge_of_cycles};
use stallings::graph::Alphabet;
use stallings::order::{
    bridge_in_line, certificate_label_order, lex_compare, verify_bridge_certificate,
    BridgeVerdict, LabelOrder, LineSpec, LiftedEdge,
};
use stallings::word::Word;

fn main() -> stallings::Result<()> {
    let alphabet = Alphabet::new(["a", "b"])?;
    let w = |t: &str| Word::parse(t, &alphabet);

    // label-major lexicographic comparison of lifted edges
    let order = LabelOrder::identity(2);
    let mut by_len = |x: &Word, y: &Word| x.len().cmp(&y.len());
    let e1 = LiftedEdge::new(w("ab")?, 0)?;
    let e2 = LiftedEdge::new(w("ab")?, 1)?;
    println!("a-edge vs b-edge over the same element: {:?}", lex_compare(&e1, &e2, &order, &mut by_len)?);

    // the line ...aaab(b)abaaa... : with a < b the three b-edges in the
    // window are the candidates; a position oracle favoring the marked
    // middle edge makes it the bridge
    let line = LineSpec::new(w("a")?, w("bbab")?, 1, w("a")?)?;
    let rank = |p: usize| match p {
        1 => 3,
        0 => 2,
        2 => 1,
        _ => 0,
    };
    let mut favor_middle = move |x: usize, y: usize| -> Ordering { rank(x).cmp(&rank(y)) };
    match bridge_in_line(&line, &order, &mut favor_middle)? {
        BridgeVerdict::BridgeAt(i) => println!("bridge at the marked position {i}"),
        other => println!("unexpected verdict {other:?}"),
    }

    // moving the largest label into a periodic tail destroys the maximum
    let line = LineSpec::new(w("b")?, w("ab")?, 0, w("a")?)?;
    let mut by_pos = |x: usize, y: usize| x.cmp(&y);
    println!("b in the periodic tail: {:?}", bridge_in_line(&line, &order, &mut by_pos)?);

    // certificates prescribe the label order their inertness proof needs,
    // and each essential edge carries the largest label of its component
    let gens: Vec<Word> = ["ab", "ba"].iter().map(|t| w(t)).collect::<stallings::Result<_>>()?;
    let h = fold_all(&wedge_of_cycles(&gens, &alphabet).graph);
    let cert = generalized_echelon_certificate(&h)?.expect("rank-2 certificate");
    let d_order = certificate_label_order(&cert, &alphabet)?;
    let names: Vec<&str> = d_order.sequence().into_iter().map(|l| alphabet.name(l)).collect();
    println!("certificate label order (smallest first): {names:?}");
    println!("bridge content verified: {}", verify_bridge_certificate(&h, &cert)?);
    Ok(())
}
