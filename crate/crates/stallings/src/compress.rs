//! Compressedness via exhaustive quotient enumeration, placeholder
//! deflation and inflation, and transversal label distribution.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::fold::{canonical_key, fold_all_traced, is_immersion, GraphMap};
use crate::graph::{Arc, EdgeId, LabeledGraph, VertexId};
use crate::word::Word;
use crate::{Error, Result};

/// A surjective immersion onto a strictly smaller reduced rank: the
/// disqualifying object for compressedness.
#[derive(Clone, Debug)]
pub struct QuotientWitness {
    pub target: LabeledGraph,
    pub map: GraphMap,
    pub source_mrank: usize,
    pub target_mrank: usize,
}

/// Verdict of the quotient search. A verified verdict is always relative
/// to the edge budget the search ran under.
#[derive(Clone, Debug)]
pub enum CompressionVerdict {
    CompressedVerified { budget_edges: usize },
    NotCompressed(QuotientWitness),
    Unknown { budget_edges: usize },
}

impl CompressionVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, CompressionVerdict::CompressedVerified { .. })
    }
}

/// Checks that a witness really disqualifies: a surjective, locally
/// injective, label-preserving map with a reduced-rank drop.
pub fn verify_quotient_witness(h: &LabeledGraph, w: &QuotientWitness) -> Result<()> {
    if !w.map.is_immersion_map(h, &w.target)? {
        return Err(Error::InvalidArgument("witness map is not an immersion".into()));
    }
    if !w.map.is_surjective(&w.target) {
        return Err(Error::InvalidArgument("witness map is not surjective".into()));
    }
    let source_mrank = h.reduced_rank();
    let target_mrank = w.target.reduced_rank();
    if source_mrank != w.source_mrank || target_mrank != w.target_mrank {
        return Err(Error::InvalidArgument("witness ranks are stale".into()));
    }
    if source_mrank <= target_mrank {
        return Err(Error::InvalidArgument("witness does not drop the reduced rank".into()));
    }
    Ok(())
}

/// Identify two vertices and fold back to an immersion, returning the
/// quotient together with its map.
fn identify_and_fold(g: &LabeledGraph, u: VertexId, v: VertexId) -> Result<(LabeledGraph, GraphMap)> {
    let (keep, drop) = (u.min(v), u.max(v));
    let mut merged = g.clone();
    merged.merge_vertices(keep, drop)?;
    let mut vertex_map: BTreeMap<VertexId, VertexId> = g.vertices().map(|x| (x, x)).collect();
    vertex_map.insert(drop, keep);
    let identify = GraphMap::new(vertex_map, g.edge_ids().map(|e| (e, e)).collect());
    let trace = fold_all_traced(&merged);
    let map = identify.compose(&trace.quotient_map())?;
    Ok((trace.graph, map))
}

/// Decides compressedness by exhausting every quotient reachable from `h`
/// by repeatedly identifying a vertex pair and folding, memoized on
/// isomorphism classes. Inputs beyond the edge budget come back Unknown;
/// every returned witness is re-verified.
pub fn is_compressed(h: &LabeledGraph, budget_edges: usize) -> Result<CompressionVerdict> {
    if !is_immersion(h) {
        return Err(Error::Precondition("compressedness requires an immersed graph".into()));
    }
    if h.edge_count() > budget_edges {
        return Ok(CompressionVerdict::Unknown { budget_edges });
    }
    let source_mrank = h.reduced_rank();
    let mut unbased = h.clone();
    unbased.set_base(None)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(canonical_key(&unbased)?);
    let mut stack: Vec<(LabeledGraph, GraphMap)> = vec![(unbased, GraphMap::identity(h))];
    while let Some((g, map)) = stack.pop() {
        let vertices: Vec<VertexId> = g.vertices().collect();
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                let (q, step) = identify_and_fold(&g, vertices[i], vertices[j])?;
                let key = canonical_key(&q)?;
                if !seen.insert(key) {
                    continue;
                }
                let composed = map.compose(&step)?;
                let target_mrank = q.reduced_rank();
                if target_mrank < source_mrank {
                    let witness =
                        QuotientWitness { target: q, map: composed, source_mrank, target_mrank };
                    verify_quotient_witness(h, &witness)
                        .expect("quotient construction produced an invalid witness");
                    return Ok(CompressionVerdict::NotCompressed(witness));
                }
                stack.push((q, composed));
            }
        }
    }
    Ok(CompressionVerdict::CompressedVerified { budget_edges })
}

/// The word read along an arc, oriented so that `e` is traversed
/// forward; returns the word with the matching start and end vertices.
pub fn arc_word_oriented(h: &LabeledGraph, arc: &Arc, e: EdgeId) -> Result<(Word, VertexId, VertexId)> {
    if arc.closed {
        return Err(Error::InvalidArgument("closed arcs have no preferred orientation".into()));
    }
    let step = arc
        .steps
        .iter()
        .find(|s| s.edge == e)
        .ok_or_else(|| Error::InvalidArgument(format!("edge {e} is not in the arc")))?;
    match step.direction {
        crate::graph::Direction::Forward => Ok((arc.word(h)?, arc.start, arc.end)),
        crate::graph::Direction::Backward => Ok((arc.word(h)?.inverse(), arc.end, arc.start)),
    }
}

fn find_arc_of_edge(h: &LabeledGraph, e: EdgeId) -> Result<Arc> {
    h.arcs()?
        .into_iter()
        .find(|a| a.contains_edge(e))
        .ok_or(Error::UnknownEdge(e))
}

fn clashing_edges(h: &LabeledGraph, arc: &Arc, label: usize) -> Vec<EdgeId> {
    let arc_edges = arc.edge_set();
    h.edges()
        .filter(|e| e.label == label && !arc_edges.contains(&e.id))
        .map(|e| e.id)
        .collect()
}

/// Replaces an arc by one of its edges. The edge's label must not occur
/// outside the arc, so the result is again an immersion; rank and
/// compressedness are preserved.
pub fn deflate(h: &LabeledGraph, arc: &Arc, e: EdgeId) -> Result<LabeledGraph> {
    if !is_immersion(h) {
        return Err(Error::Precondition("deflation requires an immersed graph".into()));
    }
    let actual = find_arc_of_edge(h, e)?;
    if actual != *arc {
        return Err(Error::InvalidArgument(format!("the arc supplied is not the arc of edge {e}")));
    }
    deflate_unchecked(h, arc, e)
}

fn deflate_unchecked(h: &LabeledGraph, arc: &Arc, e: EdgeId) -> Result<LabeledGraph> {
    if arc.closed {
        return Err(Error::InvalidArgument("cannot deflate a closed arc".into()));
    }
    let label = h.edge(e)?.label;
    let clashes = clashing_edges(h, arc, label);
    if !clashes.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "label {} of edge {e} also appears outside the arc, on edges {clashes:?}",
            h.alphabet().name(label)
        )));
    }
    let interior: BTreeSet<VertexId> = arc.interior(h)?.into_iter().collect();
    if let Some(b) = h.base() {
        if interior.contains(&b) {
            return Err(Error::InvalidArgument("arc interior contains the base vertex".into()));
        }
    }
    let (_, from, to) = arc_word_oriented(h, arc, e)?;
    let vertices: BTreeSet<VertexId> =
        h.vertices().filter(|v| !interior.contains(v)).collect();
    let arc_edges = arc.edge_set();
    let edges: BTreeSet<EdgeId> =
        h.edge_ids().filter(|id| !arc_edges.contains(id)).collect();
    let mut out = h.subgraph(&vertices, &edges)?;
    out.add_edge(e, from, to, label)?;
    debug_assert!(is_immersion(&out));
    Ok(out)
}

/// Generalized deflation of several disjoint arcs at once. The picked
/// edges must carry pairwise distinct labels, none of which occurs
/// outside the union of the picked arcs.
pub fn deflate_set(h: &LabeledGraph, picks: &[(Arc, EdgeId)]) -> Result<LabeledGraph> {
    if !is_immersion(h) {
        return Err(Error::Precondition("deflation requires an immersed graph".into()));
    }
    let mut labels = BTreeSet::new();
    let mut all_arc_edges: BTreeSet<EdgeId> = BTreeSet::new();
    for (arc, e) in picks {
        let actual = find_arc_of_edge(h, *e)?;
        if actual != *arc {
            return Err(Error::InvalidArgument(format!(
                "the arc supplied is not the arc of edge {e}"
            )));
        }
        if !labels.insert(h.edge(*e)?.label) {
            return Err(Error::InvalidArgument("picked labels must be pairwise distinct".into()));
        }
        all_arc_edges.extend(arc.edge_set());
    }
    for (_, e) in picks {
        let label = h.edge(*e)?.label;
        let clashes: Vec<EdgeId> = h
            .edges()
            .filter(|f| f.label == label && !all_arc_edges.contains(&f.id))
            .map(|f| f.id)
            .collect();
        if !clashes.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "label of edge {e} appears outside the picked arcs, on edges {clashes:?}"
            )));
        }
    }
    let mut out = h.clone();
    for (arc, e) in picks {
        let interior: BTreeSet<VertexId> = arc.interior(h)?.into_iter().collect();
        if let Some(b) = out.base() {
            if interior.contains(&b) {
                return Err(Error::InvalidArgument("arc interior contains the base vertex".into()));
            }
        }
        let (_, from, to) = arc_word_oriented(h, arc, *e)?;
        let label = h.edge(*e)?.label;
        for id in arc.edge_ids() {
            out.remove_edge(id)?;
        }
        for v in interior {
            out.remove_vertex_isolated(v)?;
        }
        out.add_edge(*e, from, to, label)?;
    }
    debug_assert!(is_immersion(&out));
    Ok(out)
}

/// Replaces an edge by a subdivided arc spelling `word` from the edge's
/// origin to its terminus. Inverse of deflation up to canonical form when
/// the deflation preconditions held.
pub fn inflate(h: &LabeledGraph, e: EdgeId, word: &Word) -> Result<LabeledGraph> {
    let edge = *h.edge(e)?;
    if word.is_empty() {
        return Err(Error::InvalidArgument("cannot inflate with an empty word".into()));
    }
    for l in word.letters() {
        if l.label >= h.alphabet().size() {
            return Err(Error::InvalidArgument(format!("letter label {} out of range", l.label)));
        }
    }
    let mut out = h.clone();
    out.remove_edge(e)?;
    let mut cur = edge.origin;
    for (i, l) in word.letters().iter().enumerate() {
        let next = if i + 1 == word.len() { edge.terminus } else { out.fresh_vertex() };
        if l.inverse {
            out.fresh_edge(next, cur, l.label)?;
        } else {
            out.fresh_edge(cur, next, l.label)?;
        }
        cur = next;
    }
    Ok(out)
}

/// One edge chosen from each arc, in arc order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    pub edges: Vec<EdgeId>,
}

impl Transversal {
    pub fn labels(&self, g: &LabeledGraph) -> Result<BTreeSet<usize>> {
        self.edges.iter().map(|&e| Ok(g.edge(e)?.label)).collect()
    }
}

/// A transversal maximizing the number of distinct labels, found by
/// exhaustive search over the per-arc label choices, and that count.
/// Compressed graphs of rank m admit one with at least m labels.
pub fn best_transversal(h: &LabeledGraph) -> Result<(Transversal, usize)> {
    if !is_immersion(h) {
        return Err(Error::Precondition("transversals require an immersed graph".into()));
    }
    let arcs = h.arcs()?;
    // distinct labels available per arc, each with its first representative
    let mut options: Vec<Vec<(usize, EdgeId)>> = Vec::with_capacity(arcs.len());
    for arc in &arcs {
        let mut by_label: BTreeMap<usize, EdgeId> = BTreeMap::new();
        for step in &arc.steps {
            let label = h.edge(step.edge)?.label;
            by_label.entry(label).or_insert(step.edge);
        }
        options.push(by_label.into_iter().collect());
    }
    let mut best: Option<(Vec<EdgeId>, BTreeSet<usize>)> = None;
    let mut chosen: Vec<EdgeId> = Vec::with_capacity(options.len());
    fn search(
        idx: usize,
        options: &[Vec<(usize, EdgeId)>],
        chosen: &mut Vec<EdgeId>,
        labels: &mut BTreeSet<usize>,
        best: &mut Option<(Vec<EdgeId>, BTreeSet<usize>)>,
    ) {
        if let Some((_, best_labels)) = best {
            // remaining arcs can add at most one new label each
            if labels.len() + (options.len() - idx) <= best_labels.len() {
                return;
            }
        }
        if idx == options.len() {
            if best.as_ref().is_none_or(|(_, b)| labels.len() > b.len()) {
                *best = Some((chosen.clone(), labels.clone()));
            }
            return;
        }
        for &(label, edge) in &options[idx] {
            let added = labels.insert(label);
            chosen.push(edge);
            search(idx + 1, options, chosen, labels, best);
            chosen.pop();
            if added {
                labels.remove(&label);
            }
        }
    }
    let mut labels = BTreeSet::new();
    search(0, &options, &mut chosen, &mut labels, &mut best);
    let (edges, label_set) =
        best.unwrap_or_else(|| (Vec::new(), BTreeSet::new()));
    let count = label_set.len();
    Ok((Transversal { edges }, count))
}

/// Unions disjoint connected subgraphs of a verified-compressed graph and
/// re-runs the compressedness search on the union; the union must come
/// back verified. `parts` are edge id sets; each part's vertices are the
/// endpoints of its edges.
pub fn subgraph_union_compressed_check(
    h: &LabeledGraph,
    parts: &[BTreeSet<EdgeId>],
    budget_edges: usize,
) -> Result<bool> {
    match is_compressed(h, budget_edges)? {
        CompressionVerdict::CompressedVerified { .. } => {}
        other => {
            return Err(Error::Precondition(format!(
                "h is not verified compressed within the budget: {other:?}"
            )))
        }
    }
    let mut used_vertices: BTreeSet<VertexId> = BTreeSet::new();
    let mut used_edges: BTreeSet<EdgeId> = BTreeSet::new();
    let mut union_vertices: BTreeSet<VertexId> = BTreeSet::new();
    for part in parts {
        if part.is_empty() {
            return Err(Error::InvalidArgument("parts must be nonempty".into()));
        }
        let mut vertices = BTreeSet::new();
        for &id in part {
            let e = h.edge(id)?;
            vertices.insert(e.origin);
            vertices.insert(e.terminus);
            if !used_edges.insert(id) {
                return Err(Error::InvalidArgument(format!("edge {id} appears in two parts")));
            }
        }
        if vertices.iter().any(|v| used_vertices.contains(v)) {
            return Err(Error::InvalidArgument("parts overlap in a vertex".into()));
        }
        let sub = h.subgraph(&vertices, part)?;
        if !sub.is_connected() {
            return Err(Error::InvalidArgument("each part must be connected".into()));
        }
        used_vertices.extend(vertices.iter().copied());
        union_vertices.extend(vertices);
    }
    let mut union = h.subgraph(&union_vertices, &used_edges)?;
    union.set_base(None)?;
    Ok(is_compressed(&union, budget_edges)?.is_verified())
}
