//! Finite labeled directed multigraphs and their structural measurements:
//! links, degrees, curvature, Euler characteristic, components, cores,
//! branching vertices, and arcs.
//!
//! Vertex and edge ids are plain integers. Every container iterates in id
//! order, so all derived data is deterministic given the input.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// The base labels; the bouquet with one loop per name is the common
/// target of every labelling.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// At least one name; names must be distinct.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidArgument("alphabet must be nonempty".into()));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::InvalidArgument("alphabet names must be distinct".into()));
        }
        if names.iter().any(|n| n.is_empty()) {
            return Err(Error::InvalidArgument("alphabet names must be nonempty".into()));
        }
        Ok(Alphabet { names })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    /// Panics if `label` is out of range.
    pub fn name(&self, label: usize) -> &str {
        &self.names[label]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }
}

/// One edge record: oriented from `origin` to `terminus`, carrying a
/// label index into the alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub origin: VertexId,
    pub terminus: VertexId,
    pub label: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// A length-1 path leaving a vertex along an edge in the stated
/// direction. A loop at a vertex contributes two ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedEnd {
    pub edge: EdgeId,
    pub direction: Direction,
}

impl DirectedEnd {
    pub fn forward(edge: EdgeId) -> Self {
        DirectedEnd { edge, direction: Direction::Forward }
    }

    pub fn backward(edge: EdgeId) -> Self {
        DirectedEnd { edge, direction: Direction::Backward }
    }

    pub fn reversed(self) -> Self {
        DirectedEnd { edge: self.edge, direction: self.direction.reversed() }
    }

    /// Vertex the end leaves.
    pub fn source(&self, g: &LabeledGraph) -> Result<VertexId> {
        let e = g.edge(self.edge)?;
        Ok(match self.direction {
            Direction::Forward => e.origin,
            Direction::Backward => e.terminus,
        })
    }

    /// Vertex the end enters.
    pub fn target(&self, g: &LabeledGraph) -> Result<VertexId> {
        let e = g.edge(self.edge)?;
        Ok(match self.direction {
            Direction::Forward => e.terminus,
            Direction::Backward => e.origin,
        })
    }

    pub fn label(&self, g: &LabeledGraph) -> Result<usize> {
        Ok(g.edge(self.edge)?.label)
    }

    /// Image of the end in the bouquet: the label together with the
    /// traversal direction.
    pub fn end_label(&self, g: &LabeledGraph) -> Result<(usize, Direction)> {
        Ok((g.edge(self.edge)?.label, self.direction))
    }
}

/// A path: a start vertex and a sequence of directed ends, consecutive
/// ends being incident.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub start: VertexId,
    pub steps: Vec<DirectedEnd>,
}

impl Walk {
    pub fn new(start: VertexId, steps: Vec<DirectedEnd>) -> Self {
        Walk { start, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Consecutive incidence: each step leaves the vertex the previous
    /// step entered.
    pub fn validate(&self, g: &LabeledGraph) -> Result<()> {
        if !g.has_vertex(self.start) {
            return Err(Error::UnknownVertex(self.start));
        }
        let mut cur = self.start;
        for step in &self.steps {
            if step.source(g)? != cur {
                return Err(Error::InvalidArgument(format!(
                    "walk step along edge {} does not leave vertex {cur}",
                    step.edge
                )));
            }
            cur = step.target(g)?;
        }
        Ok(())
    }

    pub fn end(&self, g: &LabeledGraph) -> Result<VertexId> {
        let mut cur = self.start;
        for step in &self.steps {
            cur = step.target(g)?;
        }
        Ok(cur)
    }

    pub fn is_closed(&self, g: &LabeledGraph) -> Result<bool> {
        Ok(self.end(g)? == self.start)
    }

    /// The word read along the walk; backward traversals read inverse
    /// letters.
    pub fn word(&self, g: &LabeledGraph) -> Result<crate::word::Word> {
        let mut letters = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            let label = step.label(g)?;
            letters.push(match step.direction {
                Direction::Forward => crate::word::Letter::positive(label),
                Direction::Backward => crate::word::Letter::negative(label),
            });
        }
        Ok(crate::word::Word::from_letters(letters))
    }
}

/// A connected component of the graph minus its branching vertices,
/// together with the branching vertices in its closure. `steps` walks the
/// arc from `start` to `end`; for a `closed` arc (a component without any
/// branching vertex) the walk goes once around and `start == end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub steps: Vec<DirectedEnd>,
    pub start: VertexId,
    pub end: VertexId,
    pub closed: bool,
}

impl Arc {
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.steps.iter().map(|s| s.edge).collect()
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.steps.iter().map(|s| s.edge).collect()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.steps.iter().any(|s| s.edge == e)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Boundary branching vertices (one or two; empty for closed arcs).
    pub fn boundary(&self) -> BTreeSet<VertexId> {
        if self.closed {
            BTreeSet::new()
        } else {
            [self.start, self.end].into_iter().collect()
        }
    }

    /// Vertices strictly inside the arc, in walk order. Every vertex of
    /// a closed arc is interior.
    pub fn interior(&self, g: &LabeledGraph) -> Result<Vec<VertexId>> {
        let mut out = Vec::new();
        if self.closed {
            out.push(self.start);
        }
        for (i, step) in self.steps.iter().enumerate() {
            if i + 1 < self.steps.len() {
                out.push(step.target(g)?);
            }
        }
        Ok(out)
    }

    pub fn word(&self, g: &LabeledGraph) -> Result<crate::word::Word> {
        Walk::new(self.start, self.steps.clone()).word(g)
    }
}

/// Finite directed multigraph with edge labels drawn from an alphabet and
/// an optional base vertex. The universal carrier for every construction
/// in this crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
    base: Option<VertexId>,
}

impl LabeledGraph {
    pub fn new(alphabet: Alphabet) -> Self {
        LabeledGraph { alphabet, vertices: BTreeSet::new(), edges: BTreeMap::new(), base: None }
    }

    /// The single-vertex graph with one loop per alphabet label, based at
    /// its vertex. Its fundamental group is the whole free group.
    pub fn bouquet(alphabet: Alphabet) -> Self {
        let mut g = LabeledGraph::new(alphabet);
        g.add_vertex(0).unwrap();
        for label in 0..g.alphabet.size() {
            g.add_edge(label, 0, 0, label).unwrap();
        }
        g.base = Some(0);
        g
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn base(&self) -> Option<VertexId> {
        self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge> {
        self.edges.get(&e).ok_or(Error::UnknownEdge(e))
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<()> {
        if !self.vertices.insert(v) {
            return Err(Error::InvalidArgument(format!("duplicate vertex id {v}")));
        }
        Ok(())
    }

    pub fn fresh_vertex(&mut self) -> VertexId {
        let v = self.vertices.iter().next_back().map_or(0, |m| m + 1);
        self.vertices.insert(v);
        v
    }

    pub fn add_edge(&mut self, id: EdgeId, origin: VertexId, terminus: VertexId, label: usize) -> Result<()> {
        if self.edges.contains_key(&id) {
            return Err(Error::InvalidArgument(format!("duplicate edge id {id}")));
        }
        if !self.has_vertex(origin) {
            return Err(Error::UnknownVertex(origin));
        }
        if !self.has_vertex(terminus) {
            return Err(Error::UnknownVertex(terminus));
        }
        if label >= self.alphabet.size() {
            return Err(Error::InvalidArgument(format!(
                "label index {label} out of range for alphabet of size {}",
                self.alphabet.size()
            )));
        }
        self.edges.insert(id, Edge { id, origin, terminus, label });
        Ok(())
    }

    pub fn fresh_edge(&mut self, origin: VertexId, terminus: VertexId, label: usize) -> Result<EdgeId> {
        let id = self.edges.keys().next_back().map_or(0, |m| m + 1);
        self.add_edge(id, origin, terminus, label)?;
        Ok(id)
    }

    pub fn set_base(&mut self, base: Option<VertexId>) -> Result<()> {
        if let Some(v) = base {
            if !self.has_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        self.base = base;
        Ok(())
    }

    pub(crate) fn remove_edge(&mut self, e: EdgeId) -> Result<Edge> {
        self.edges.remove(&e).ok_or(Error::UnknownEdge(e))
    }

    pub(crate) fn remove_vertex_isolated(&mut self, v: VertexId) -> Result<()> {
        if self.edges.values().any(|e| e.origin == v || e.terminus == v) {
            return Err(Error::InvalidArgument(format!("vertex {v} is not isolated")));
        }
        if !self.vertices.remove(&v) {
            return Err(Error::UnknownVertex(v));
        }
        if self.base == Some(v) {
            self.base = None;
        }
        Ok(())
    }

    /// Replace every occurrence of vertex `from` by `to` in edge
    /// endpoints, then drop `from`. Base-ness is inherited by `to`.
    pub(crate) fn merge_vertices(&mut self, to: VertexId, from: VertexId) -> Result<()> {
        if !self.has_vertex(to) {
            return Err(Error::UnknownVertex(to));
        }
        if !self.has_vertex(from) || to == from {
            return Err(Error::InvalidArgument("cannot merge a vertex with itself".into()));
        }
        for e in self.edges.values_mut() {
            if e.origin == from {
                e.origin = to;
            }
            if e.terminus == from {
                e.terminus = to;
            }
        }
        self.vertices.remove(&from);
        if self.base == Some(from) {
            self.base = Some(to);
        }
        Ok(())
    }

    /// All directed ends leaving `v`; a loop at `v` contributes two.
    pub fn link(&self, v: VertexId) -> Result<Vec<DirectedEnd>> {
        if !self.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut out = Vec::new();
        for e in self.edges.values() {
            if e.origin == v {
                out.push(DirectedEnd::forward(e.id));
            }
            if e.terminus == v {
                out.push(DirectedEnd::backward(e.id));
            }
        }
        Ok(out)
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.link(v)?.len())
    }

    /// Curvature at a vertex in units of pi: `2 - deg(v)`.
    pub fn curvature_units(&self, v: VertexId) -> Result<i64> {
        Ok(2 - self.degree(v)? as i64)
    }

    /// `|vertices| - |edges|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    /// Checks the combinatorial Gauss-Bonnet identity
    /// `2 * chi = sum over vertices of (2 - deg)`, in pi-units.
    pub fn gauss_bonnet_check(&self) -> bool {
        let total: i64 = self
            .vertices
            .iter()
            .map(|&v| self.curvature_units(v).expect("vertex exists"))
            .sum();
        2 * self.euler_characteristic() == total
    }

    fn adjacency(&self) -> BTreeMap<VertexId, Vec<DirectedEnd>> {
        let mut adj: BTreeMap<VertexId, Vec<DirectedEnd>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in self.edges.values() {
            adj.get_mut(&e.origin).unwrap().push(DirectedEnd::forward(e.id));
            adj.get_mut(&e.terminus).unwrap().push(DirectedEnd::backward(e.id));
        }
        adj
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn component_vertex_sets(&self) -> Vec<BTreeSet<VertexId>> {
        let adj = self.adjacency();
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            comp.insert(start);
            while let Some(v) = queue.pop_front() {
                for end in &adj[&v] {
                    let w = end.target(self).expect("edge exists");
                    if seen.insert(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Connected components as graphs; vertex and edge ids are preserved.
    /// The base stays with the component containing it.
    pub fn components(&self) -> Vec<LabeledGraph> {
        self.component_vertex_sets()
            .into_iter()
            .map(|vs| {
                let es: BTreeSet<EdgeId> = self
                    .edges
                    .values()
                    .filter(|e| vs.contains(&e.origin))
                    .map(|e| e.id)
                    .collect();
                self.subgraph(&vs, &es).expect("component is closed under incidence")
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_vertex_sets().len() <= 1
    }

    /// Component containing `v`, ids preserved.
    pub fn component_of(&self, v: VertexId) -> Result<LabeledGraph> {
        if !self.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        for comp in self.components() {
            if comp.has_vertex(v) {
                return Ok(comp);
            }
        }
        unreachable!("vertex belongs to some component")
    }

    /// The subgraph on the given vertex and edge id sets. Edge endpoints
    /// must lie in the vertex set. The base is kept when it survives.
    pub fn subgraph(&self, vertices: &BTreeSet<VertexId>, edges: &BTreeSet<EdgeId>) -> Result<LabeledGraph> {
        let mut g = LabeledGraph::new(self.alphabet.clone());
        for &v in vertices {
            if !self.has_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
            g.add_vertex(v)?;
        }
        for &id in edges {
            let e = self.edge(id)?;
            if !vertices.contains(&e.origin) || !vertices.contains(&e.terminus) {
                return Err(Error::InvalidArgument(format!(
                    "edge {id} has an endpoint outside the vertex set"
                )));
            }
            g.add_edge(e.id, e.origin, e.terminus, e.label)?;
        }
        if let Some(b) = self.base {
            if vertices.contains(&b) {
                g.base = Some(b);
            }
        }
        Ok(g)
    }

    /// The graph with the given edges removed; all vertices retained.
    pub fn without_edges(&self, removed: &BTreeSet<EdgeId>) -> Result<LabeledGraph> {
        for &e in removed {
            if !self.has_edge(e) {
                return Err(Error::UnknownEdge(e));
            }
        }
        let keep: BTreeSet<EdgeId> =
            self.edges.keys().copied().filter(|e| !removed.contains(e)).collect();
        self.subgraph(&self.vertices.clone(), &keep)
    }

    /// Union of two subgraphs of a common parent: ids must agree where
    /// they overlap.
    pub fn union_with(&self, other: &LabeledGraph) -> Result<LabeledGraph> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut g = self.clone();
        for &v in &other.vertices {
            g.vertices.insert(v);
        }
        for e in other.edges.values() {
            match g.edges.get(&e.id) {
                Some(existing) if existing != e => {
                    return Err(Error::InvalidArgument(format!(
                        "edge id {} carries conflicting records",
                        e.id
                    )));
                }
                Some(_) => {}
                None => {
                    g.edges.insert(e.id, *e);
                }
            }
        }
        if g.base.is_none() {
            g.base = other.base;
        }
        Ok(g)
    }

    /// Disjoint union; the other graph's ids are shifted past ours. The
    /// result keeps our base.
    pub fn disjoint_union(&self, other: &LabeledGraph) -> Result<LabeledGraph> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let v_shift = self.vertices.iter().next_back().map_or(0, |m| m + 1);
        let e_shift = self.edges.keys().next_back().map_or(0, |m| m + 1);
        let mut g = self.clone();
        for &v in &other.vertices {
            g.add_vertex(v + v_shift)?;
        }
        for e in other.edges.values() {
            g.add_edge(e.id + e_shift, e.origin + v_shift, e.terminus + v_shift, e.label)?;
        }
        Ok(g)
    }

    /// Reduced rank: sum over components of `max(0, -chi)`.
    pub fn reduced_rank(&self) -> usize {
        self.reduced_rank_without(&BTreeSet::new())
    }

    /// Reduced rank of the graph minus the given edge set, without
    /// materializing the subgraph.
    pub fn reduced_rank_without(&self, removed: &BTreeSet<EdgeId>) -> usize {
        let mut dsu = DisjointSets::new(&self.vertices);
        let mut edge_count: BTreeMap<VertexId, i64> = BTreeMap::new();
        for e in self.edges.values() {
            if removed.contains(&e.id) {
                continue;
            }
            dsu.union(e.origin, e.terminus);
            *edge_count.entry(e.origin).or_insert(0) += 1;
        }
        let mut per_root: BTreeMap<VertexId, (i64, i64)> = BTreeMap::new();
        for &v in &self.vertices {
            let r = dsu.find(v);
            let entry = per_root.entry(r).or_insert((0, 0));
            entry.0 += 1;
            entry.1 += edge_count.get(&v).copied().unwrap_or(0);
        }
        per_root.values().map(|&(v, e)| (e - v).max(0) as usize).sum()
    }

    /// Rank `1 - chi` of a connected nonempty graph.
    pub fn rank(&self) -> Result<usize> {
        if self.is_empty() || !self.is_connected() {
            return Err(Error::InvalidArgument(
                "rank requires a connected nonempty graph".into(),
            ));
        }
        Ok((1 - self.euler_characteristic()) as usize)
    }

    /// All vertices of degree >= 2. The empty graph is vacuously a core.
    pub fn is_core(&self) -> bool {
        self.vertices.iter().all(|&v| self.degree(v).unwrap() >= 2)
    }

    /// Iteratively deletes vertices of degree <= 1 (together with their
    /// edges). Tree components vanish entirely; the base is dropped if it
    /// gets deleted.
    pub fn core(&self) -> LabeledGraph {
        self.core_impl(None)
    }

    /// Like [`core`](Self::core) but never deletes the base vertex, which
    /// may therefore end with degree < 2.
    pub fn based_core(&self) -> Result<LabeledGraph> {
        let base = self
            .base
            .ok_or_else(|| Error::InvalidArgument("based core requires a base vertex".into()))?;
        Ok(self.core_impl(Some(base)))
    }

    fn core_impl(&self, protected: Option<VertexId>) -> LabeledGraph {
        let mut g = self.clone();
        loop {
            let doomed: Vec<VertexId> = g
                .vertices
                .iter()
                .copied()
                .filter(|&v| Some(v) != protected && g.degree(v).unwrap() <= 1)
                .collect();
            if doomed.is_empty() {
                break;
            }
            for v in doomed {
                let dead_edges: Vec<EdgeId> = g
                    .edges
                    .values()
                    .filter(|e| e.origin == v || e.terminus == v)
                    .map(|e| e.id)
                    .collect();
                for e in dead_edges {
                    // both endpoints may be doomed; the edge may be gone already
                    let _ = g.remove_edge(e);
                }
                let _ = g.remove_vertex_isolated(v);
            }
        }
        g
    }

    /// Vertices of degree >= 3.
    pub fn branching_vertices(&self) -> BTreeSet<VertexId> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| self.degree(v).unwrap() >= 3)
            .collect()
    }

    /// The branching part `S*` of a vertex subset.
    pub fn branching_of(&self, set: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>> {
        let mut out = BTreeSet::new();
        for &v in set {
            if self.degree(v)? >= 3 {
                out.insert(v);
            }
        }
        Ok(out)
    }

    /// Decomposes a core graph into arcs. Every edge lies in exactly one
    /// arc; interior vertices have degree exactly 2.
    pub fn arcs(&self) -> Result<Vec<Arc>> {
        if !self.is_core() {
            return Err(Error::InvalidArgument(
                "arc structure requires a core graph".into(),
            ));
        }
        let branching = self.branching_vertices();
        // group edges connected through non-branching vertices
        let edge_ids: Vec<EdgeId> = self.edges.keys().copied().collect();
        let mut dsu = DisjointSets::new(&edge_ids.iter().copied().collect());
        for &v in &self.vertices {
            if branching.contains(&v) {
                continue;
            }
            let incident: Vec<EdgeId> = {
                let mut ids: Vec<EdgeId> = self
                    .link(v)?
                    .into_iter()
                    .map(|end| end.edge)
                    .collect();
                ids.dedup();
                ids
            };
            for w in incident.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        let mut groups: BTreeMap<EdgeId, BTreeSet<EdgeId>> = BTreeMap::new();
        for &e in &edge_ids {
            groups.entry(dsu.find(e)).or_default().insert(e);
        }
        let mut arcs = Vec::new();
        for group in groups.values() {
            arcs.push(self.trace_arc(group, &branching)?);
        }
        arcs.sort_by_key(|a| a.steps.iter().map(|s| s.edge).min());
        Ok(arcs)
    }

    fn trace_arc(&self, group: &BTreeSet<EdgeId>, branching: &BTreeSet<VertexId>) -> Result<Arc> {
        // candidate starting ends: leave a branching vertex into the group
        let mut starts: Vec<DirectedEnd> = Vec::new();
        for &id in group {
            let e = self.edge(id)?;
            if branching.contains(&e.origin) {
                starts.push(DirectedEnd::forward(id));
            }
            if branching.contains(&e.terminus) {
                starts.push(DirectedEnd::backward(id));
            }
        }
        let closed = starts.is_empty();
        let first = if closed {
            // whole component is a cycle of degree-2 vertices: start at the
            // smallest incident vertex, smallest end
            let mut best: Option<(VertexId, DirectedEnd)> = None;
            for &id in group {
                for end in [DirectedEnd::forward(id), DirectedEnd::backward(id)] {
                    let s = end.source(self)?;
                    if best.is_none_or(|(bv, be)| (s, end) < (bv, be)) {
                        best = Some((s, end));
                    }
                }
            }
            best.expect("nonempty group").1
        } else {
            starts.sort();
            starts[0]
        };
        let start = first.source(self)?;
        let mut steps = vec![first];
        let mut cur = first.target(self)?;
        let mut came_by = first;
        loop {
            if closed {
                if cur == start && !steps.is_empty() && steps.len() == group.len() {
                    break;
                }
            } else if branching.contains(&cur) {
                break;
            }
            // cur has degree exactly 2; take the end that is not the reverse
            // of the one we came in by
            let next = self
                .link(cur)?
                .into_iter()
                .find(|&end| end != came_by.reversed())
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("arc walk stuck at vertex {cur}"))
                })?;
            steps.push(next);
            cur = next.target(self)?;
            came_by = next;
        }
        Ok(Arc { steps, start, end: cur, closed })
    }
}

/// Plain union-find over explicit ids.
pub(crate) struct DisjointSets {
    parent: BTreeMap<usize, usize>,
}

impl DisjointSets {
    pub(crate) fn new(ids: &BTreeSet<usize>) -> Self {
        DisjointSets { parent: ids.iter().map(|&v| (v, v)).collect() }
    }

    pub(crate) fn find(&mut self, v: usize) -> usize {
        let p = self.parent[&v];
        if p == v {
            return v;
        }
        let root = self.find(p);
        self.parent.insert(v, root);
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    /// Cycle of length n, all edges labeled `a`, vertices 0..n.
    fn cycle(n: usize) -> LabeledGraph {
        let mut g = LabeledGraph::new(ab());
        for v in 0..n {
            g.add_vertex(v).unwrap();
        }
        for i in 0..n {
            g.add_edge(i, i, (i + 1) % n, 0).unwrap();
        }
        g
    }

    /// Two vertices joined by three parallel edges a, b, c.
    fn theta() -> LabeledGraph {
        let mut g = LabeledGraph::new(abc());
        g.add_vertex(0).unwrap();
        g.add_vertex(1).unwrap();
        for label in 0..3 {
            g.add_edge(label, 0, 1, label).unwrap();
        }
        g
    }

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["a", "b"]).is_ok());
    }

    #[test]
    fn bouquet_link_has_four_ends() {
        let g = LabeledGraph::bouquet(ab());
        let link = g.link(0).unwrap();
        assert_eq!(link.len(), 4);
        assert_eq!(g.degree(0).unwrap(), 4);
    }

    #[test]
    fn isolated_vertex_has_empty_link() {
        let mut g = LabeledGraph::new(ab());
        g.add_vertex(7).unwrap();
        assert!(g.link(7).unwrap().is_empty());
        assert!(g.link(0).is_err());
    }

    #[test]
    fn cycle_vertex_has_two_ends() {
        let g = cycle(3);
        for v in 0..3 {
            assert_eq!(g.link(v).unwrap().len(), 2);
        }
    }

    #[test]
    fn degree_counts_loops_twice() {
        // one loop and one incident edge at vertex 0
        let mut g = LabeledGraph::new(ab());
        g.add_vertex(0).unwrap();
        g.add_vertex(1).unwrap();
        g.add_edge(0, 0, 0, 0).unwrap();
        g.add_edge(1, 0, 1, 1).unwrap();
        assert_eq!(g.degree(0).unwrap(), 3);
        assert_eq!(g.degree(1).unwrap(), 1);
    }

    #[test]
    fn curvature_in_pi_units() {
        let g = LabeledGraph::bouquet(ab());
        assert_eq!(g.curvature_units(0).unwrap(), -2);
        let c = cycle(3);
        assert_eq!(c.curvature_units(0).unwrap(), 0);
        let mut path = LabeledGraph::new(ab());
        path.add_vertex(0).unwrap();
        path.add_vertex(1).unwrap();
        path.add_edge(0, 0, 1, 0).unwrap();
        assert_eq!(path.curvature_units(0).unwrap(), 1);
    }

    #[test]
    fn euler_characteristic_basics() {
        assert_eq!(LabeledGraph::bouquet(ab()).euler_characteristic(), -1);
        let mut single = LabeledGraph::new(ab());
        single.add_vertex(0).unwrap();
        assert_eq!(single.euler_characteristic(), 1);
        assert_eq!(cycle(5).euler_characteristic(), 0);
        assert_eq!(LabeledGraph::new(ab()).euler_characteristic(), 0);
    }

    #[test]
    fn components_partition() {
        let two_loops = {
            let mut g = LabeledGraph::new(ab());
            g.add_vertex(0).unwrap();
            g.add_vertex(1).unwrap();
            g.add_edge(0, 0, 0, 0).unwrap();
            g.add_edge(1, 1, 1, 1).unwrap();
            g
        };
        let comps = two_loops.components();
        assert_eq!(comps.len(), 2);
        let total_vertices: usize = comps.iter().map(|c| c.vertex_count()).sum();
        let total_edges: usize = comps.iter().map(|c| c.edge_count()).sum();
        assert_eq!(total_vertices, 2);
        assert_eq!(total_edges, 2);

        let g = cycle(4);
        let comps = g.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0], g);

        assert!(LabeledGraph::new(ab()).components().is_empty());
    }

    #[test]
    fn reduced_rank_examples() {
        assert_eq!(LabeledGraph::bouquet(ab()).reduced_rank(), 1);
        let fig8 = LabeledGraph::bouquet(ab());
        let two_fig8 = fig8.disjoint_union(&fig8).unwrap();
        assert_eq!(two_fig8.reduced_rank(), 2);
        // any forest has reduced rank 0
        let mut forest = LabeledGraph::new(ab());
        for v in 0..5 {
            forest.add_vertex(v).unwrap();
        }
        forest.add_edge(0, 0, 1, 0).unwrap();
        forest.add_edge(1, 1, 2, 1).unwrap();
        forest.add_edge(2, 3, 4, 0).unwrap();
        assert_eq!(forest.reduced_rank(), 0);
    }

    #[test]
    fn core_drops_pendant_edge() {
        let mut g = cycle(4);
        let v = g.fresh_vertex();
        g.fresh_edge(0, v, 1).unwrap();
        let core = g.core();
        assert_eq!(core, cycle(4));
        assert_eq!(core.reduced_rank(), g.reduced_rank());
    }

    #[test]
    fn core_of_tree_is_empty_unbased() {
        let mut tree = LabeledGraph::new(ab());
        tree.add_vertex(0).unwrap();
        tree.add_vertex(1).unwrap();
        tree.add_vertex(2).unwrap();
        tree.add_edge(0, 0, 1, 0).unwrap();
        tree.add_edge(1, 1, 2, 1).unwrap();
        assert!(tree.core().is_empty());

        tree.set_base(Some(1)).unwrap();
        let based = tree.based_core().unwrap();
        assert_eq!(based.vertex_count(), 1);
        assert_eq!(based.base(), Some(1));
    }

    #[test]
    fn core_graph_is_fixed_point() {
        let g = theta();
        assert!(g.is_core());
        assert_eq!(g.core(), g);
    }

    #[test]
    fn branching_vertices_examples() {
        assert_eq!(
            LabeledGraph::bouquet(ab()).branching_vertices(),
            [0].into_iter().collect()
        );
        assert!(cycle(4).branching_vertices().is_empty());
        assert_eq!(theta().branching_vertices(), [0, 1].into_iter().collect());
    }

    #[test]
    fn figure_eight_has_two_loop_arcs() {
        let g = LabeledGraph::bouquet(ab());
        let arcs = g.arcs().unwrap();
        assert_eq!(arcs.len(), 2);
        for arc in &arcs {
            assert_eq!(arc.len(), 1);
            assert!(!arc.closed);
            assert_eq!(arc.boundary(), [0].into_iter().collect());
        }
    }

    #[test]
    fn theta_has_three_arcs() {
        let arcs = theta().arcs().unwrap();
        assert_eq!(arcs.len(), 3);
        let mut covered = BTreeSet::new();
        for arc in &arcs {
            for e in arc.edge_ids() {
                assert!(covered.insert(e), "edge in two arcs");
            }
        }
        assert_eq!(covered.len(), 3);
    }

    #[test]
    fn subdivided_figure_eight_arcs() {
        // two loops of length 3 wedged at vertex 0
        let mut g = LabeledGraph::new(ab());
        for v in 0..5 {
            g.add_vertex(v).unwrap();
        }
        g.add_edge(0, 0, 1, 0).unwrap();
        g.add_edge(1, 1, 2, 0).unwrap();
        g.add_edge(2, 2, 0, 0).unwrap();
        g.add_edge(3, 0, 3, 1).unwrap();
        g.add_edge(4, 3, 4, 1).unwrap();
        g.add_edge(5, 4, 0, 1).unwrap();
        let arcs = g.arcs().unwrap();
        assert_eq!(arcs.len(), 2);
        for arc in &arcs {
            assert_eq!(arc.len(), 3);
            for v in arc.interior(&g).unwrap() {
                assert_eq!(g.degree(v).unwrap(), 2);
            }
        }
    }

    #[test]
    fn closed_arc_on_cycle_component() {
        let g = cycle(3);
        let arcs = g.arcs().unwrap();
        assert_eq!(arcs.len(), 1);
        assert!(arcs[0].closed);
        assert_eq!(arcs[0].len(), 3);
        assert!(arcs[0].boundary().is_empty());
    }

    #[test]
    fn arcs_reject_non_core() {
        let mut g = cycle(3);
        let v = g.fresh_vertex();
        g.fresh_edge(0, v, 1).unwrap();
        assert!(g.arcs().is_err());
    }

    #[test]
    fn gauss_bonnet_on_small_graphs() {
        assert!(LabeledGraph::bouquet(ab()).gauss_bonnet_check());
        let mut single = LabeledGraph::new(ab());
        single.add_vertex(0).unwrap();
        assert!(single.gauss_bonnet_check());
        assert!(theta().gauss_bonnet_check());
        assert!(cycle(7).gauss_bonnet_check());
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        for g in [LabeledGraph::bouquet(ab()), theta(), cycle(6)] {
            let sum: usize = g.vertices().map(|v| g.degree(v).unwrap()).sum();
            assert_eq!(sum, 2 * g.edge_count());
        }
    }

    #[test]
    fn walk_validation() {
        let g = cycle(3);
        let walk = Walk::new(
            0,
            vec![DirectedEnd::forward(0), DirectedEnd::forward(1), DirectedEnd::forward(2)],
        );
        walk.validate(&g).unwrap();
        assert!(walk.is_closed(&g).unwrap());
        let bad = Walk::new(0, vec![DirectedEnd::forward(1)]);
        assert!(bad.validate(&g).is_err());
    }

    #[test]
    fn empty_graph_conventions() {
        let g = LabeledGraph::new(ab());
        assert_eq!(g.euler_characteristic(), 0);
        assert_eq!(g.reduced_rank(), 0);
        assert!(g.is_core());
        assert!(g.arcs().unwrap().is_empty());
        assert!(g.gauss_bonnet_check());
    }
}
