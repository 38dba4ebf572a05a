//! Fiber products of immersions over the bouquet: intersection graphs,
//! their ranks, and the classical intersection bounds.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::fold::{is_immersion, GraphMap};
use crate::graph::{EdgeId, LabeledGraph, VertexId};
use crate::{Error, Result};

/// Above this many vertex pairs the pullback drops isolated vertex pairs
/// (pairs not touched by any matching edge pair), which cannot affect any
/// rank computation. The based pair is always kept.
pub const DENSE_PAIR_LIMIT: usize = 10_000;

/// The fiber product of two immersions over the bouquet, with its two
/// projections. Carrier ids are dense; the pair tables recover the
/// original coordinates.
#[derive(Clone, Debug)]
pub struct Pullback {
    graph: LabeledGraph,
    vertex_pairs: BTreeMap<VertexId, (VertexId, VertexId)>,
    edge_pairs: BTreeMap<EdgeId, (EdgeId, EdgeId)>,
    to_h: GraphMap,
    to_k: GraphMap,
}

impl Pullback {
    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    /// The projection beta onto the first factor.
    pub fn to_h(&self) -> &GraphMap {
        &self.to_h
    }

    /// The projection alpha onto the second factor.
    pub fn to_k(&self) -> &GraphMap {
        &self.to_k
    }

    pub fn vertex_pair(&self, v: VertexId) -> Result<(VertexId, VertexId)> {
        self.vertex_pairs.get(&v).copied().ok_or(Error::UnknownVertex(v))
    }

    pub fn edge_pair(&self, e: EdgeId) -> Result<(EdgeId, EdgeId)> {
        self.edge_pairs.get(&e).copied().ok_or(Error::UnknownEdge(e))
    }

    /// Every alpha-fiber meets every beta-fiber in at most one vertex and
    /// at most one edge. Holds for every legal pullback; exposed as a
    /// self-test.
    pub fn fiber_injectivity_check(&self) -> bool {
        let mut seen_v = BTreeSet::new();
        for pair in self.vertex_pairs.values() {
            if !seen_v.insert(*pair) {
                return false;
            }
        }
        let mut seen_e = BTreeSet::new();
        for pair in self.edge_pairs.values() {
            if !seen_e.insert(*pair) {
                return false;
            }
        }
        true
    }
}

/// Builds the fiber product of two immersed graphs over a common
/// alphabet. Vertices are pairs, edges are label-matched edge pairs; both
/// projections are label-preserving immersions.
pub fn fiber_product(h: &LabeledGraph, k: &LabeledGraph) -> Result<Pullback> {
    if h.alphabet() != k.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if !is_immersion(h) || !is_immersion(k) {
        return Err(Error::Precondition("fiber product requires immersed inputs".into()));
    }
    struct EdgeRecord {
        pair: (EdgeId, EdgeId),
        origin: (VertexId, VertexId),
        terminus: (VertexId, VertexId),
        label: usize,
    }
    let mut vertex_pairs: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let dense = h.vertex_count().saturating_mul(k.vertex_count()) <= DENSE_PAIR_LIMIT;
    let mut edge_records: Vec<EdgeRecord> = Vec::new();
    let mut k_by_label: BTreeMap<usize, Vec<&crate::graph::Edge>> = BTreeMap::new();
    for e in k.edges() {
        k_by_label.entry(e.label).or_default().push(e);
    }
    for e1 in h.edges() {
        for e2 in k_by_label.get(&e1.label).map(Vec::as_slice).unwrap_or(&[]) {
            let origin = (e1.origin, e2.origin);
            let terminus = (e1.terminus, e2.terminus);
            vertex_pairs.insert(origin);
            vertex_pairs.insert(terminus);
            edge_records.push(EdgeRecord {
                pair: (e1.id, e2.id),
                origin,
                terminus,
                label: e1.label,
            });
        }
    }
    if dense {
        for u in h.vertices() {
            for v in k.vertices() {
                vertex_pairs.insert((u, v));
            }
        }
    }
    let based_pair = match (h.base(), k.base()) {
        (Some(bh), Some(bk)) => {
            vertex_pairs.insert((bh, bk));
            Some((bh, bk))
        }
        _ => None,
    };

    let vertex_id: BTreeMap<(VertexId, VertexId), VertexId> =
        vertex_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut graph = LabeledGraph::new(h.alphabet().clone());
    for i in 0..vertex_pairs.len() {
        graph.add_vertex(i)?;
    }
    edge_records.sort_by_key(|r| r.pair);
    let mut vertex_map_h = BTreeMap::new();
    let mut vertex_map_k = BTreeMap::new();
    for (&pair, &id) in &vertex_id {
        vertex_map_h.insert(id, pair.0);
        vertex_map_k.insert(id, pair.1);
    }
    let mut edge_pairs = BTreeMap::new();
    let mut edge_map_h = BTreeMap::new();
    let mut edge_map_k = BTreeMap::new();
    for (i, r) in edge_records.iter().enumerate() {
        graph.add_edge(i, vertex_id[&r.origin], vertex_id[&r.terminus], r.label)?;
        edge_pairs.insert(i, r.pair);
        edge_map_h.insert(i, r.pair.0);
        edge_map_k.insert(i, r.pair.1);
    }
    if let Some(bp) = based_pair {
        graph.set_base(Some(vertex_id[&bp]))?;
    }
    let vertex_pairs: BTreeMap<VertexId, (VertexId, VertexId)> =
        vertex_id.iter().map(|(&p, &id)| (id, p)).collect();
    let to_h = GraphMap::new(vertex_map_h, edge_map_h);
    let to_k = GraphMap::new(vertex_map_k, edge_map_k);
    debug_assert!(to_h.is_immersion_map(&graph, h).unwrap());
    debug_assert!(to_k.is_immersion_map(&graph, k).unwrap());
    Ok(Pullback { graph, vertex_pairs, edge_pairs, to_h, to_k })
}

/// The connected component of the fiber product containing the pair of
/// base vertices. Its fundamental group is the intersection of the two
/// subgroups.
pub fn based_component(p: &Pullback) -> Result<LabeledGraph> {
    let base = p
        .graph
        .base()
        .ok_or_else(|| Error::InvalidArgument("based component requires based inputs".into()))?;
    p.graph.component_of(base)
}

/// Rank of the core of the based pullback component.
pub fn intersection_rank(h: &LabeledGraph, k: &LabeledGraph) -> Result<usize> {
    let p = fiber_product(h, k)?;
    let comp = based_component(&p)?;
    let core = comp.core();
    if core.is_empty() {
        Ok(0)
    } else {
        core.rank()
    }
}

/// The classical intersection bounds evaluated on one pair of subgroup
/// graphs. `actual` is the reduced rank of the based component's core,
/// matching the Hanna Neumann formulation; `actual_rank` is its plain
/// rank. The two classical bounds are rank statements and hold whenever
/// both inputs have nontrivial rank.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub rank_h: usize,
    pub rank_k: usize,
    pub mrank_h: usize,
    pub mrank_k: usize,
    pub howson_bound: i64,
    pub hn_weak_bound: i64,
    pub hnc_bound: i64,
    pub actual_rank: usize,
    pub actual: usize,
    pub howson_ok: bool,
    pub hn_weak_ok: bool,
    pub hnc_ok: bool,
    pub all_satisfied: bool,
}

/// Evaluates Howson's bound, Hanna Neumann's weak bound, and the Hanna
/// Neumann bound (strengthened form, a theorem) on the based intersection.
pub fn bound_report(h: &LabeledGraph, k: &LabeledGraph) -> Result<BoundReport> {
    let rank_h = h.rank()?;
    let rank_k = k.rank()?;
    let mrank_h = h.reduced_rank();
    let mrank_k = k.reduced_rank();
    let p = fiber_product(h, k)?;
    let comp = based_component(&p)?;
    let core = comp.core();
    let actual_rank = if core.is_empty() { 0 } else { core.rank()? };
    let actual = core.reduced_rank();
    let (rh, rk) = (rank_h as i64, rank_k as i64);
    let howson_bound = 2 * rh * rk - rh - rk + 1;
    let hn_weak_bound = 2 * (rh - 1) * (rk - 1) + 1;
    let hnc_bound = (mrank_h * mrank_k) as i64;
    let nontrivial = rank_h > 0 && rank_k > 0;
    let howson_ok = !nontrivial || actual_rank as i64 <= howson_bound;
    let hn_weak_ok = !nontrivial || actual_rank as i64 <= hn_weak_bound;
    let hnc_ok = actual as i64 <= hnc_bound;
    Ok(BoundReport {
        rank_h,
        rank_k,
        mrank_h,
        mrank_k,
        howson_bound,
        hn_weak_bound,
        hnc_bound,
        actual_rank,
        actual,
        howson_ok,
        hn_weak_ok,
        hnc_ok,
        all_satisfied: howson_ok && hn_weak_ok && hnc_ok,
    })
}
