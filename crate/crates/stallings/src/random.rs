//! Seeded random words and subgroup graphs for the property harness and
//! the test pools. All sampling goes through a caller-supplied generator,
//! so fixed seeds give identical outputs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fold::{fold_all, wedge_of_cycles};
use crate::graph::{Alphabet, LabeledGraph};
use crate::word::{Letter, Word};

/// A nonempty freely reduced word of length 1..=max_len.
pub fn random_reduced_word(rng: &mut impl Rng, n_labels: usize, max_len: usize) -> Word {
    let len = rng.random_range(1..=max_len.max(1));
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter {
            label: rng.random_range(0..n_labels),
            inverse: rng.random_bool(0.5),
        };
        if letters.last().is_some_and(|&t| t.cancels(l)) {
            continue;
        }
        letters.push(l);
    }
    Word::from_letters(letters)
}

/// A random generating set: 1..=max_gens cyclically reduced words.
pub fn random_generators(
    rng: &mut impl Rng,
    n_labels: usize,
    max_gens: usize,
    max_len: usize,
) -> Vec<Word> {
    let count = rng.random_range(1..=max_gens.max(1));
    (0..count)
        .map(|_| {
            loop {
                let w = random_reduced_word(rng, n_labels, max_len).cyclically_reduced();
                if !w.is_empty() {
                    return w;
                }
            }
        })
        .collect()
}

/// The folded wedge of a random cyclically reduced generating set: an
/// immersed based core graph.
pub fn random_subgroup_graph(
    rng: &mut impl Rng,
    alphabet: &Alphabet,
    max_gens: usize,
    max_len: usize,
) -> LabeledGraph {
    let gens = random_generators(rng, alphabet.size(), max_gens, max_len);
    let folded = fold_all(&wedge_of_cycles(&gens, alphabet).graph);
    // cyclically reduced generators leave every vertex at degree >= 2,
    // but fall back to the based core if a degenerate case slips through
    if folded.is_core() {
        folded
    } else {
        folded.based_core().expect("wedge is based")
    }
}

/// Direct sampler: a random partial injection per label, cored and
/// restricted to its largest component, retried until it is a nontrivial
/// immersed core graph. Based at the smallest surviving vertex.
pub fn random_core_graph(
    rng: &mut impl Rng,
    alphabet: &Alphabet,
    max_vertices: usize,
) -> Option<LabeledGraph> {
    for _ in 0..64 {
        let n = rng.random_range(2..=max_vertices.max(2));
        let mut g = LabeledGraph::new(alphabet.clone());
        for v in 0..n {
            g.add_vertex(v).unwrap();
        }
        for label in 0..alphabet.size() {
            // choose a random injective partial map on 0..n
            let mut targets: Vec<usize> = (0..n).collect();
            for i in (1..targets.len()).rev() {
                let j = rng.random_range(0..=i);
                targets.swap(i, j);
            }
            for (origin, &target) in targets.iter().enumerate() {
                if rng.random_bool(0.6) {
                    g.fresh_edge(origin, target, label).unwrap();
                }
            }
        }
        let core = g.core();
        if core.is_empty() {
            continue;
        }
        let mut comps = core.components();
        comps.sort_by_key(|c| std::cmp::Reverse(c.edge_count()));
        let mut best = comps.remove(0);
        if best.reduced_rank() == 0 {
            continue;
        }
        let base = best.vertices().next().unwrap();
        best.set_base(Some(base)).unwrap();
        debug_assert!(crate::fold::is_immersion(&best));
        return Some(best);
    }
    None
}

/// The deterministic shared pool used by the harness and the acceptance
/// suites: a fixed family of named graphs plus seeded random subgroup
/// graphs over two- and three-letter alphabets. Empty when `random_count`
/// is zero and `include_fixed` is false.
pub fn build_pool(seed: u64, random_count: usize, include_fixed: bool) -> Vec<LabeledGraph> {
    let ab = Alphabet::new(["a", "b"]).unwrap();
    let abc = Alphabet::new(["a", "b", "c"]).unwrap();
    let mut pool = Vec::new();
    if include_fixed {
        let parse = |texts: &[&str], alpha: &Alphabet| -> Vec<Word> {
            texts.iter().map(|t| Word::parse(t, alpha).unwrap()).collect()
        };
        // bouquets, cycles, and familiar small cores
        pool.push(LabeledGraph::bouquet(ab.clone()));
        pool.push(LabeledGraph::bouquet(abc.clone()));
        for (texts, alpha) in [
            (vec!["ab"], &ab),
            (vec!["abab"], &ab),
            (vec!["a", "b"], &ab),
            (vec!["ab", "ba"], &ab),
            (vec!["a", "bab"], &ab),
            (vec!["abAB", "ABab"], &ab),
            (vec!["abc"], &abc),
            (vec!["ab", "c"], &abc),
            (vec!["a", "b", "c"], &abc),
            (vec!["ab", "bc"], &abc),
        ] {
            pool.push(fold_all(&wedge_of_cycles(&parse(&texts, alpha), alpha).graph));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random_count {
        let alpha = if i % 2 == 0 { &ab } else { &abc };
        if i % 5 == 4 {
            if let Some(g) = random_core_graph(&mut rng, alpha, 6) {
                pool.push(g);
                continue;
            }
        }
        pool.push(random_subgroup_graph(&mut rng, alpha, 4, 6));
    }
    pool
}
