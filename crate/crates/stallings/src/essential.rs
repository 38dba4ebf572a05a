//! Essential edge sets: the rank-drop definition and the no-tree-component
//! characterization, maximal essential enumeration, island decompositions,
//! the exchange construction, and injectively labeled maximal sets.

use std::collections::{BTreeMap, BTreeSet};

use crate::fold::is_immersion;
use crate::graph::{EdgeId, LabeledGraph, VertexId};
use crate::{Error, Result};

/// An essential edge subset with the reduced rank left after removing it.
/// Maximal exactly when the set's size equals the graph's reduced rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialSet {
    pub edges: BTreeSet<EdgeId>,
    pub mrank_after_removal: usize,
}

impl EssentialSet {
    pub fn is_maximal(&self, h: &LabeledGraph) -> bool {
        self.edges.len() == h.reduced_rank()
    }
}

/// Rank-drop test: `mrank(h - E) == mrank(h) - |E|`.
pub fn essential_by_rank_drop(h: &LabeledGraph, set: &BTreeSet<EdgeId>) -> Result<bool> {
    for &e in set {
        if !h.has_edge(e) {
            return Err(Error::UnknownEdge(e));
        }
    }
    let after = h.reduced_rank_without(set) as i64;
    Ok(after == h.reduced_rank() as i64 - set.len() as i64)
}

/// Characterization for connected graphs: every edge of the set must have
/// both endpoint components of `h - E` not trees.
pub fn essential_by_tree_condition(h: &LabeledGraph, set: &BTreeSet<EdgeId>) -> Result<bool> {
    if !h.is_connected() || h.is_empty() {
        return Err(Error::Precondition(
            "the tree-component characterization requires a connected graph".into(),
        ));
    }
    for &e in set {
        if !h.has_edge(e) {
            return Err(Error::UnknownEdge(e));
        }
    }
    let remainder = h.without_edges(set)?;
    // component id and tree-ness per vertex
    let comps = remainder.component_vertex_sets();
    let mut comp_of: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of.insert(v, i);
        }
    }
    let mut is_tree = vec![true; comps.len()];
    for (i, comp) in comps.iter().enumerate() {
        let edges = remainder.edges().filter(|e| comp.contains(&e.origin)).count();
        is_tree[i] = edges + 1 == comp.len();
    }
    for &id in set {
        let e = h.edge(id)?;
        if is_tree[comp_of[&e.origin]] || is_tree[comp_of[&e.terminus]] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides essentiality. On connected graphs both algorithms run and must
/// agree; disagreement is a bug and fails hard.
pub fn is_essential_set(h: &LabeledGraph, set: &BTreeSet<EdgeId>) -> Result<bool> {
    let by_rank = essential_by_rank_drop(h, set)?;
    if !h.is_empty() && h.is_connected() {
        let by_trees = essential_by_tree_condition(h, set)?;
        assert_eq!(
            by_rank, by_trees,
            "essential-set algorithms disagree on {set:?} (bug)"
        );
    }
    Ok(by_rank)
}

/// All maximal essential sets of a connected core graph of reduced rank
/// at least 1, in ascending lexicographic order of their edge id lists.
/// Subsets of essential sets are essential, so the enumeration prunes on
/// inessential prefixes.
pub fn maximal_essential_sets(h: &LabeledGraph) -> Result<Vec<EssentialSet>> {
    if h.is_empty() || !h.is_connected() || !h.is_core() {
        return Err(Error::Precondition(
            "maximal essential sets require a connected core graph".into(),
        ));
    }
    let m = h.reduced_rank();
    if m == 0 {
        return Err(Error::Precondition(
            "maximal essential sets require reduced rank at least 1".into(),
        ));
    }
    let ids: Vec<EdgeId> = h.edge_ids().collect();
    let mut out = Vec::new();
    let mut current: BTreeSet<EdgeId> = BTreeSet::new();
    enumerate(h, &ids, 0, m, &mut current, &mut out)?;
    return Ok(out);

    fn enumerate(
        h: &LabeledGraph,
        ids: &[EdgeId],
        start: usize,
        m: usize,
        current: &mut BTreeSet<EdgeId>,
        out: &mut Vec<EssentialSet>,
    ) -> Result<()> {
        if current.len() == m {
            if is_essential_set(h, current)? {
                out.push(EssentialSet { edges: current.clone(), mrank_after_removal: 0 });
            }
            return Ok(());
        }
        let needed = m - current.len();
        for i in start..ids.len() {
            if ids.len() - i < needed {
                break;
            }
            current.insert(ids[i]);
            // a prefix of an essential set must itself be essential
            if essential_by_rank_drop(h, current)? {
                enumerate(h, ids, i + 1, m, current, out)?;
            }
            current.remove(&ids[i]);
        }
        Ok(())
    }
}

/// Islands (components of `h - E`) and per-edge core components for a
/// maximal essential set. Islands always have rank exactly 1, and each
/// core component `C(e)` has reduced rank exactly 1.
#[derive(Clone, Debug)]
pub struct IslandDecomposition {
    pub islands: Vec<LabeledGraph>,
    pub core_components: BTreeMap<EdgeId, LabeledGraph>,
}

pub fn island_decomposition(h: &LabeledGraph, set: &EssentialSet) -> Result<IslandDecomposition> {
    if !h.is_core() {
        return Err(Error::Precondition("island decomposition requires a core graph".into()));
    }
    if !is_essential_set(h, &set.edges)? || !set.is_maximal(h) {
        return Err(Error::InvalidArgument("the set is not maximal essential".into()));
    }
    let remainder = h.without_edges(&set.edges)?;
    let islands = remainder.components();
    for island in &islands {
        assert_eq!(island.rank()?, 1, "island of a maximal essential set must have rank 1");
    }
    let mut core_components = BTreeMap::new();
    for &e in &set.edges {
        let others: BTreeSet<EdgeId> = set.edges.iter().copied().filter(|&f| f != e).collect();
        let with_e = h.without_edges(&others)?;
        let comp = with_e.component_of(h.edge(e)?.origin)?;
        let core = comp.core();
        assert_eq!(
            core.reduced_rank(),
            1,
            "core component of an essential edge must have reduced rank 1"
        );
        core_components.insert(e, core);
    }
    Ok(IslandDecomposition { islands, core_components })
}

/// The subgraph `H1`: the union of the components of `(h - E) + E1` that
/// contain an edge of `E1`.
pub fn exchange_subgraph(
    h: &LabeledGraph,
    set: &EssentialSet,
    part: &BTreeSet<EdgeId>,
) -> Result<LabeledGraph> {
    let others: BTreeSet<EdgeId> =
        set.edges.iter().copied().filter(|e| !part.contains(e)).collect();
    let with_part = h.without_edges(&others)?;
    let mut union: Option<LabeledGraph> = None;
    for comp in with_part.components() {
        if part.iter().any(|&e| comp.has_edge(e)) {
            union = Some(match union {
                None => comp,
                Some(u) => u.union_with(&comp)?,
            });
        }
    }
    union.ok_or_else(|| Error::InvalidArgument("the subset selects no component".into()))
}

/// The exchange construction: replace a nonempty subset `E1` of a maximal
/// essential set by any maximal essential set `E1'` of the subgraph `H1`
/// it spans. The result is again maximal essential. Taking `E1 = E` spans
/// the whole graph, so the exchange then just substitutes one maximal
/// essential set for another.
pub fn exchange(
    h: &LabeledGraph,
    set: &EssentialSet,
    part: &BTreeSet<EdgeId>,
    replacement: &BTreeSet<EdgeId>,
) -> Result<EssentialSet> {
    if !is_essential_set(h, &set.edges)? || !set.is_maximal(h) {
        return Err(Error::InvalidArgument("the set is not maximal essential".into()));
    }
    if part.is_empty() || !part.is_subset(&set.edges) {
        return Err(Error::InvalidArgument(
            "the exchanged part must be a nonempty subset of the essential set".into(),
        ));
    }
    let h1 = exchange_subgraph(h, set, part)?;
    let m1 = h1.reduced_rank();
    assert_eq!(m1, part.len(), "the spanned subgraph has reduced rank |E1|");
    for &e in replacement {
        if !h1.has_edge(e) {
            return Err(Error::InvalidArgument(format!(
                "replacement edge {e} does not lie in the spanned subgraph"
            )));
        }
    }
    if replacement.len() != m1 || !essential_by_rank_drop(&h1, replacement)? {
        return Err(Error::InvalidArgument(
            "the replacement is not maximal essential in the spanned subgraph".into(),
        ));
    }
    let mut exchanged: BTreeSet<EdgeId> =
        set.edges.iter().copied().filter(|e| !part.contains(e)).collect();
    exchanged.extend(replacement.iter().copied());
    let essential = is_essential_set(h, &exchanged)?;
    assert!(
        essential && exchanged.len() == h.reduced_rank(),
        "exchange produced a non-maximal set (bug or theorem violation)"
    );
    Ok(EssentialSet { edges: exchanged, mrank_after_removal: 0 })
}

/// A maximal essential set whose edges carry pairwise distinct labels, if
/// one exists. On compressed graphs one always exists. A graph of reduced
/// rank 0 has the empty set as its maximal essential set, injectively
/// labeled for free.
pub fn injective_maximal_essential(h: &LabeledGraph) -> Result<Option<EssentialSet>> {
    if !is_immersion(h) {
        return Err(Error::Precondition(
            "injective essential search requires an immersed graph".into(),
        ));
    }
    if h.reduced_rank() == 0 {
        return Ok(Some(EssentialSet { edges: BTreeSet::new(), mrank_after_removal: 0 }));
    }
    for set in maximal_essential_sets(h)? {
        let labels: BTreeSet<usize> = set
            .edges
            .iter()
            .map(|&e| h.edge(e).map(|edge| edge.label))
            .collect::<Result<_>>()?;
        if labels.len() == set.edges.len() {
            return Ok(Some(set));
        }
    }
    Ok(None)
}
