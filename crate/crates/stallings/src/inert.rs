//! Inert vertex sets, highly inert immersions, positive inertness
//! certificates, and brute-force refutation by opponent search.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fold::{canonical_form, is_immersion, GraphMap};
use crate::graph::{Alphabet, Direction, LabeledGraph, VertexId};
use crate::pullback::intersection_rank;
use crate::random::random_subgroup_graph;
use crate::{Error, Result};

/// Per-branching-vertex link-label overlap sums for a vertex set. The set
/// is inert when every sum is at most 2: the directed edge labels at each
/// branching vertex appear at most twice, with multiplicity, among the
/// remaining branching vertices of the set.
#[derive(Clone, Debug)]
pub struct InertSetReport {
    pub set: BTreeSet<VertexId>,
    pub overlap_sums: BTreeMap<VertexId, usize>,
    pub verdict: bool,
}

fn end_label_multiset(g: &LabeledGraph, v: VertexId) -> Result<BTreeMap<(usize, Direction), usize>> {
    let mut counts = BTreeMap::new();
    for end in g.link(v)? {
        *counts.entry(end.end_label(g)?).or_insert(0) += 1;
    }
    Ok(counts)
}

fn multiset_intersection_size(
    a: &BTreeMap<(usize, Direction), usize>,
    b: &BTreeMap<(usize, Direction), usize>,
) -> usize {
    a.iter()
        .filter_map(|(key, &ca)| b.get(key).map(|&cb| ca.min(cb)))
        .sum()
}

/// Evaluates the inert-set condition on a vertex subset. Link labels are
/// compared as multisets of (label, direction) pairs.
pub fn is_inert_set(h: &LabeledGraph, set: &BTreeSet<VertexId>) -> Result<InertSetReport> {
    for &v in set {
        if !h.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    let s_star: Vec<VertexId> = {
        let mut out = Vec::new();
        for &v in set {
            if h.degree(v)? >= 3 {
                out.push(v);
            }
        }
        out
    };
    let multisets: BTreeMap<VertexId, _> = s_star
        .iter()
        .map(|&v| Ok((v, end_label_multiset(h, v)?)))
        .collect::<Result<_>>()?;
    let mut overlap_sums = BTreeMap::new();
    let mut verdict = true;
    for &v in &s_star {
        let sum: usize = s_star
            .iter()
            .filter(|&&w| w != v)
            .map(|w| multiset_intersection_size(&multisets[&v], &multisets[w]))
            .sum();
        if sum > 2 {
            verdict = false;
        }
        overlap_sums.insert(v, sum);
    }
    Ok(InertSetReport { set: set.clone(), overlap_sums, verdict })
}

/// An immersion is highly inert when every vertex fiber is an inert set.
pub fn is_highly_inert(map: &GraphMap, source: &LabeledGraph, target: &LabeledGraph) -> Result<bool> {
    if !map.is_immersion_map(source, target)? {
        return Err(Error::InvalidArgument("highly inert requires an immersion".into()));
    }
    for w in target.vertices() {
        if !is_inert_set(source, &map.fiber(w))?.verdict {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The labelling of `h` is highly inert exactly when the full vertex set
/// of `h` is inert.
pub fn labelling_highly_inert(h: &LabeledGraph) -> Result<bool> {
    Ok(is_inert_set(h, &h.vertex_set().clone())?.verdict)
}

/// Which sufficient condition certified inertness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// At most one branching vertex; covers cycles and immersed bouquets.
    SingleBranchingVertex,
    /// The labelling is a highly inert immersion.
    HighlyInertLabelling,
}

/// Outcome of an inertness query. Certification is sound but not
/// complete; refutation carries a verified opponent.
#[derive(Clone, Debug)]
pub enum InertnessVerdict {
    CertifiedInert { kind: CertificateKind },
    Refuted { witness: LabeledGraph, intersection_rank: usize, witness_rank: usize },
    Unknown,
}

impl InertnessVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, InertnessVerdict::CertifiedInert { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, InertnessVerdict::Refuted { .. })
    }
}

/// Certifies inertness when the labelling is highly inert; otherwise
/// returns Unknown (the condition is sufficient, not necessary).
pub fn certify_inert(h: &LabeledGraph) -> Result<InertnessVerdict> {
    if !is_immersion(h) {
        return Err(Error::Precondition("inertness certification requires an immersed graph".into()));
    }
    if labelling_highly_inert(h)? {
        let kind = if h.branching_vertices().len() <= 1 {
            CertificateKind::SingleBranchingVertex
        } else {
            CertificateKind::HighlyInertLabelling
        };
        Ok(InertnessVerdict::CertifiedInert { kind })
    } else {
        Ok(InertnessVerdict::Unknown)
    }
}

/// Search budget for [`refute_inertness`]. Opponents with at most
/// [`EXHAUSTIVE_EDGE_CAP`] edges are enumerated exhaustively; beyond
/// that, seeded random subgroup graphs are sampled.
#[derive(Clone, Copy, Debug)]
pub struct RefuteBudget {
    pub max_edges: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for RefuteBudget {
    fn default() -> Self {
        RefuteBudget { max_edges: 8, trials: 10_000, seed: 0 }
    }
}

/// Edge count up to which opponents are enumerated exhaustively.
pub const EXHAUSTIVE_EDGE_CAP: usize = 6;

/// Searches for an opponent K with rank(H cap K) > rank(K). Exhaustive in
/// order of edge count over connected immersed based core graphs, then
/// randomized up to the trial budget. Witnesses are re-verified through a
/// fresh pullback before being returned.
pub fn refute_inertness(h: &LabeledGraph, budget: &RefuteBudget) -> Result<InertnessVerdict> {
    if h.base().is_none() || !is_immersion(h) {
        return Err(Error::Precondition("refutation requires an immersed based graph".into()));
    }
    let alphabet = h.alphabet().clone();
    let mut verdict = None;
    let mut search_error = None;
    let exhaustive_cap = budget.max_edges.min(EXHAUSTIVE_EDGE_CAP);
    enumerate_based_cores(&alphabet, exhaustive_cap, &mut |k| {
        match check_opponent(h, k) {
            Ok(Some(found)) => {
                verdict = Some(found);
                false
            }
            Ok(None) => true,
            Err(e) => {
                search_error = Some(e);
                false
            }
        }
    })?;
    if let Some(e) = search_error {
        return Err(e);
    }
    if let Some(v) = verdict {
        return Ok(v);
    }
    if budget.max_edges > EXHAUSTIVE_EDGE_CAP {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        for _ in 0..budget.trials {
            let k = random_subgroup_graph(&mut rng, &alphabet, 4, 6);
            if k.edge_count() > budget.max_edges || k.edge_count() == 0 {
                continue;
            }
            if let Some(found) = check_opponent(h, &k)? {
                return Ok(found);
            }
        }
    }
    Ok(InertnessVerdict::Unknown)
}

fn check_opponent(h: &LabeledGraph, k: &LabeledGraph) -> Result<Option<InertnessVerdict>> {
    let witness_rank = k.rank()?;
    let rank = intersection_rank(h, k)?;
    if rank > witness_rank {
        // re-verify through a fresh pullback
        let recheck = intersection_rank(h, k)?;
        assert_eq!(rank, recheck, "pullback re-verification disagreed");
        return Ok(Some(InertnessVerdict::Refuted {
            witness: k.clone(),
            intersection_rank: rank,
            witness_rank,
        }));
    }
    Ok(None)
}

/// Enumerates connected immersed based core graphs (every non-base vertex
/// of degree >= 2) over the alphabet, in order of edge count, visiting
/// each based isomorphism class once. The visitor returns false to stop.
pub fn enumerate_based_cores(
    alphabet: &Alphabet,
    max_edges: usize,
    visit: &mut dyn FnMut(&LabeledGraph) -> bool,
) -> Result<()> {
    let mut start = LabeledGraph::new(alphabet.clone());
    start.add_vertex(0)?;
    start.set_base(Some(0))?;
    let mut seen: HashSet<LabeledGraph> = HashSet::new();
    let mut level = vec![start];
    for _ in 0..max_edges {
        let mut next_level = Vec::new();
        for g in &level {
            let vertices: Vec<VertexId> = g.vertices().collect();
            let fresh = vertices.iter().max().unwrap() + 1;
            let mut origins = vertices.clone();
            origins.push(fresh);
            for &origin in &origins {
                let mut termini = vertices.clone();
                if origin != fresh {
                    termini.push(fresh);
                }
                for &terminus in &termini {
                    for label in 0..alphabet.size() {
                        if g.edges().any(|e| {
                            (e.origin == origin && e.label == label)
                                || (e.terminus == terminus && e.label == label)
                        }) {
                            continue;
                        }
                        let mut candidate = g.clone();
                        if origin == fresh || terminus == fresh {
                            candidate.add_vertex(fresh)?;
                        }
                        candidate.fresh_edge(origin, terminus, label)?;
                        let canon = canonical_form(&candidate)?;
                        if seen.insert(canon.clone()) {
                            next_level.push(canon);
                        }
                    }
                }
            }
        }
        // construction order is deterministic: level order and expansion
        // order are both fixed
        for g in &next_level {
            let is_candidate = g
                .vertices()
                .all(|v| Some(v) == g.base() || g.degree(v).unwrap() >= 2);
            if is_candidate && !visit(g) {
                return Ok(());
            }
        }
        level = next_level;
    }
    Ok(())
}

/// The degree inequality at an inert fiber of an immersion of core
/// graphs: `deg(w) - 2 >= sum over the fiber of (deg(v) - 2)`, that is,
/// the curvature at `w` is at most the fiber's total curvature.
pub fn fiber_curvature_check(
    map: &GraphMap,
    source: &LabeledGraph,
    target: &LabeledGraph,
    w: VertexId,
) -> Result<bool> {
    if !map.is_immersion_map(source, target)? {
        return Err(Error::Precondition("fiber curvature check requires an immersion".into()));
    }
    if !source.is_core() || !target.is_core() {
        return Err(Error::Precondition("fiber curvature check requires core graphs".into()));
    }
    if !target.has_vertex(w) {
        return Err(Error::UnknownVertex(w));
    }
    let fiber = map.fiber(w);
    if !is_inert_set(source, &fiber)?.verdict {
        return Err(Error::Precondition(format!("fiber of vertex {w} is not an inert set")));
    }
    let lhs = target.degree(w)? as i64 - 2;
    let mut rhs = 0i64;
    for &v in &fiber {
        rhs += source.degree(v)? as i64 - 2;
    }
    Ok(lhs >= rhs)
}
