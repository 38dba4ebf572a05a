//! Acceptance suite: one test per criterion, each printing a pass line
//! with its measurements. Criteria with stated time budgets assert them.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stallings::echelon::{
    check_echelon_form, generalized_echelon_certificate, non_echelon_witness, NonEchelonVerdict,
    verify_echelon_certificate,
};
use stallings::essential::{
    essential_by_rank_drop, essential_by_tree_condition, injective_maximal_essential,
};
use stallings::fold::{fold_all, wedge_of_cycles, Acceptor};
use stallings::graph::{Alphabet, EdgeId, LabeledGraph};
use stallings::harness::{
    run_harness, suite_bounds, suite_compressed_pool, suite_echelon_soundness,
    suite_folding_confluence, suite_inert_soundness, HarnessConfig,
};
use stallings::compress::is_compressed;
use stallings::order::{bridge_in_line, BridgeVerdict, LabelOrder, LineSpec};
use stallings::pullback::{based_component, fiber_product};
use stallings::random::{build_pool, random_subgroup_graph};
use stallings::word::{Letter, Word};

const SEED: u64 = 20260808;

fn pool() -> Vec<LabeledGraph> {
    build_pool(SEED, 40, true)
}

fn parse(texts: &[&str], alphabet: &Alphabet) -> Vec<Word> {
    texts.iter().map(|t| Word::parse(t, alphabet).unwrap()).collect()
}

/// All freely reduced words of length <= max over the alphabet.
fn reduced_words(n_labels: usize, max: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &frontier {
            for label in 0..n_labels {
                for inverse in [false, true] {
                    let l = Letter { label, inverse };
                    if w.letters().last().is_some_and(|&t| t.cancels(l)) {
                        continue;
                    }
                    let mut letters = w.letters().to_vec();
                    letters.push(l);
                    next.push(Word::from_letters(letters));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[test]
fn c01_folding_confluence() {
    let start = Instant::now();
    let report = suite_folding_confluence(SEED, 200, 3).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(report.cases, 200);
    assert_eq!(report.violations, 0, "{:?}", report.witnesses);
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}, budget 10s");
    println!("criterion 01 folding-confluence: PASS ({} wedges, {elapsed:?})", report.cases);
}

#[test]
fn c02_gauss_bonnet_everywhere() {
    let pool = pool();
    let mut checked = 0usize;
    for g in &pool {
        assert!(g.gauss_bonnet_check(), "pool graph fails the curvature identity");
        checked += 1;
        assert!(g.core().gauss_bonnet_check());
        checked += 1;
    }
    // derived graphs: pullbacks of the first few same-alphabet pairs
    for h in pool.iter().take(6) {
        for k in pool.iter().take(6) {
            if h.alphabet() != k.alphabet() {
                continue;
            }
            let p = fiber_product(h, k).unwrap();
            assert!(p.graph().gauss_bonnet_check());
            checked += 1;
        }
    }
    println!("criterion 02 gauss-bonnet: PASS ({checked} graphs, exact)");
}

#[test]
fn c03_intersection_correctness() {
    let start = Instant::now();
    let pool = pool();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xA3);
    let mut pairs_checked = 0usize;
    let mut words_checked = 0usize;
    while pairs_checked < 50 {
        let h = &pool[rand::Rng::random_range(&mut rng, 0..pool.len())];
        let same: Vec<&LabeledGraph> =
            pool.iter().filter(|k| k.alphabet() == h.alphabet()).collect();
        let k = same[rand::Rng::random_range(&mut rng, 0..same.len())];
        let comp = based_component(&fiber_product(h, k).unwrap()).unwrap();
        let ha = Acceptor::new(h).unwrap();
        let ka = Acceptor::new(k).unwrap();
        let ca = Acceptor::new(&comp).unwrap();
        for w in reduced_words(h.alphabet().size(), 6) {
            assert_eq!(
                ca.accepts(&w),
                ha.accepts(&w) && ka.accepts(&w),
                "acceptance mismatch on a length-{} word",
                w.len()
            );
            words_checked += 1;
        }
        pairs_checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget 60s");
    println!(
        "criterion 03 intersection-correctness: PASS ({pairs_checked} pairs, {words_checked} words, {elapsed:?})"
    );
}

#[test]
fn c04_bounds() {
    let start = Instant::now();
    let report = suite_bounds(SEED, 500, &pool()).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(report.cases, 500);
    assert_eq!(report.violations, 0, "{:?}", report.witnesses);
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget 60s");
    println!("criterion 04 bounds: PASS (500 pairs, zero violations, {elapsed:?})");
}

#[test]
fn c05_inert_certificate_soundness() {
    let report = suite_inert_soundness(SEED, 200, &pool()).unwrap();
    let certified = report.counters.get("certified").copied().unwrap_or(0);
    assert!(certified >= 20, "only {certified} certified instances in the pool");
    assert_eq!(report.violations, 0, "{:?}", report.witnesses);
    println!(
        "criterion 05 inert-soundness: PASS ({certified} certified graphs x 200 opponents, zero violations)"
    );
}

#[test]
fn c06_rank_two_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xC6);
    let ab = Alphabet::new(["a", "b"]).unwrap();
    let abc = Alphabet::new(["a", "b", "c"]).unwrap();
    let mut found = 0usize;
    let mut attempts = 0usize;
    while found < 100 && attempts < 10_000 {
        attempts += 1;
        let alphabet = if attempts.is_multiple_of(2) { &ab } else { &abc };
        let h = random_subgroup_graph(&mut rng, alphabet, 2, 6);
        if h.is_empty() || !h.is_core() || h.rank().unwrap() != 2 {
            continue;
        }
        let cert = generalized_echelon_certificate(&h)
            .unwrap()
            .expect("every rank-2 core graph is generalized echelon");
        assert!(verify_echelon_certificate(&h, &cert).unwrap());
        assert_eq!(cert.essential.len(), 1);
        found += 1;
    }
    assert!(found >= 100, "only {found} rank-2 instances in {attempts} attempts");
    println!("criterion 06 rank-2-certificates: PASS ({found} instances, 100% certified)");
}

#[test]
fn c07_echelon_soundness() {
    let report = suite_echelon_soundness(SEED, 200, &pool()).unwrap();
    let certified = report.counters.get("certified").copied().unwrap_or(0);
    assert!(certified > 0);
    assert_eq!(report.violations, 0, "{:?}", report.witnesses);
    println!(
        "criterion 07 echelon-soundness: PASS ({certified} certified graphs x 200 opponents, zero violations)"
    );
}

#[test]
fn c08_worked_examples() {
    // (a) the five-letter echelon basis
    let five = Alphabet::new(["a", "b", "c", "d", "e"]).unwrap();
    let report = check_echelon_form(&parse(&["ab", "aacb", "ce"], &five));
    assert!(report.echelon);

    // (b) the commutator pair: rank 2, generalized echelon, yet not
    // echelon by the abelianization obstruction
    let two = Alphabet::new(["a", "b"]).unwrap();
    let h = fold_all(&wedge_of_cycles(&parse(&["abAB", "ABab"], &two), &two).graph);
    assert_eq!(h.rank().unwrap(), 2);
    let cert = generalized_echelon_certificate(&h).unwrap().expect("certificate");
    assert!(verify_echelon_certificate(&h, &cert).unwrap());
    assert_eq!(
        non_echelon_witness(&h).unwrap(),
        NonEchelonVerdict::NotEchelonByAbelianization
    );

    // (c) the line ...aaab(b)abaaa...: bridge at a b-edge under a
    // positional oracle; no maximum once b recurs in a tail
    let w = |t: &str| Word::parse(t, &two).unwrap();
    let line = LineSpec::new(w("a"), w("bbab"), 1, w("a")).unwrap();
    let order = LabelOrder::identity(2);
    let rank = |p: usize| match p {
        1 => 3,
        0 => 2,
        2 => 1,
        _ => 0,
    };
    let verdict = bridge_in_line(&line, &order, &mut |x, y| rank(x).cmp(&rank(y))).unwrap();
    assert_eq!(verdict, BridgeVerdict::BridgeAt(1));
    let tail_b = LineSpec::new(w("b"), w("ab"), 0, w("a")).unwrap();
    let verdict = bridge_in_line(&tail_b, &order, &mut |x, y| x.cmp(&y)).unwrap();
    assert_eq!(verdict, BridgeVerdict::NoMaximum);

    println!("criterion 08 worked-examples: PASS (echelon basis, commutator pair, bridge line)");
}

#[test]
fn c09_essential_oracle_equivalence() {
    let start = Instant::now();
    let mut graphs = 0usize;
    let mut subsets = 0usize;
    for g in pool() {
        if g.edge_count() > 12 || g.is_empty() || !g.is_connected() {
            continue;
        }
        graphs += 1;
        let ids: Vec<EdgeId> = g.edge_ids().collect();
        for mask in 0u32..(1u32 << ids.len()) {
            let set: BTreeSet<EdgeId> = ids
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let a = essential_by_rank_drop(&g, &set).unwrap();
            let b = essential_by_tree_condition(&g, &set).unwrap();
            assert_eq!(a, b, "oracles disagree on {set:?}");
            subsets += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}, budget 120s");
    println!(
        "criterion 09 essential-oracle-equivalence: PASS ({graphs} graphs, {subsets} subsets, {elapsed:?})"
    );
}

#[test]
fn c10_injective_maximal_essential() {
    let mut verified = 0usize;
    for g in pool() {
        if g.edge_count() > 8 || g.is_empty() || !g.is_connected() || !g.is_core() {
            continue;
        }
        if !is_compressed(&g, 8).unwrap().is_verified() {
            continue;
        }
        verified += 1;
        assert!(
            injective_maximal_essential(&g).unwrap().is_some(),
            "verified-compressed graph lacks an injective maximal essential set"
        );
    }
    assert!(verified >= 10, "only {verified} verified-compressed graphs in the pool");
    println!("criterion 10 injective-maximal-essential: PASS ({verified} compressed graphs, 100%)");
}

#[test]
fn c11_placeholder_lemma() {
    let report = suite_compressed_pool(8, &pool()).unwrap();
    let eligible = report.counters.get("deflation-eligible").copied().unwrap_or(0);
    assert!(eligible >= 20, "only {eligible} deflation-eligible instances");
    assert_eq!(report.violations, 0, "{:?}", report.witnesses);
    println!(
        "criterion 11 placeholder-lemma: PASS ({eligible} deflations: rank and compressedness preserved, round trips exact)"
    );
}

#[test]
fn c12_transversal_proposition() {
    let report = suite_compressed_pool(8, &pool()).unwrap();
    let checked = report.counters.get("transversal-checked").copied().unwrap_or(0);
    assert!(checked >= 10, "only {checked} transversal checks ran");
    assert_eq!(report.violations, 0, "{:?}", report.witnesses);
    println!("criterion 12 transversal-proposition: PASS ({checked} compressed graphs of rank > 1, 100%)");
}

#[test]
fn c13_harness_determinism() {
    let config = HarnessConfig { seed: SEED, trials: 25, ..Default::default() };
    let a = run_harness(&config).unwrap();
    let b = run_harness(&config).unwrap();
    assert_eq!(a.to_json(), b.to_json(), "reports differ across runs");
    assert_eq!(a.total_violations, 0);
    println!("criterion 13 harness-determinism: PASS (byte-identical reports)");
}
