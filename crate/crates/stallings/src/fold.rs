//! Stallings foldings: subgroup graphs from generator wedges, admissible
//! pair folding with provenance, label-preserving graph maps, membership,
//! and canonical forms.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::{Alphabet, Direction, DirectedEnd, Edge, EdgeId, LabeledGraph, VertexId};
use crate::word::{Letter, Word};
use crate::{Error, Result};

/// A wedge of generator cycles, with the edge ids of each cycle in
/// letter order. Generators that reduce to the empty word are dropped and
/// reported in `dropped`; their `cycle_edges` entry stays empty.
#[derive(Clone, Debug)]
pub struct Wedge {
    pub graph: LabeledGraph,
    pub cycle_edges: Vec<Vec<EdgeId>>,
    pub dropped: Vec<usize>,
}

/// One subdivided labeled cycle per generator, all wedged at base vertex
/// 0. Reading cycle `i` from the base spells generator `i`.
pub fn wedge_of_cycles(gens: &[Word], alphabet: &Alphabet) -> Wedge {
    let mut g = LabeledGraph::new(alphabet.clone());
    g.add_vertex(0).unwrap();
    g.set_base(Some(0)).unwrap();
    let mut cycle_edges = Vec::with_capacity(gens.len());
    let mut dropped = Vec::new();
    for (i, gen) in gens.iter().enumerate() {
        if gen.free_reduced().is_empty() {
            dropped.push(i);
            cycle_edges.push(Vec::new());
            continue;
        }
        let letters = gen.letters();
        let mut edges = Vec::with_capacity(letters.len());
        let mut cur = 0;
        for (j, l) in letters.iter().enumerate() {
            let next = if j + 1 == letters.len() { 0 } else { g.fresh_vertex() };
            let id = if l.inverse {
                g.fresh_edge(next, cur, l.label).unwrap()
            } else {
                g.fresh_edge(cur, next, l.label).unwrap()
            };
            edges.push(id);
            cur = next;
        }
        cycle_edges.push(edges);
    }
    Wedge { graph: g, cycle_edges, dropped }
}

/// Record of one folding: the admissible pair, the survivor, and the
/// vertex pair identified (kept, removed), if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FoldEvent {
    pub kept_edge: EdgeId,
    pub removed_edge: EdgeId,
    pub identified: Option<(VertexId, VertexId)>,
}

/// All admissible pairs `(e1, e2)` with `e1 < e2`: equal labels sharing
/// an origin or a terminus, in ascending order.
pub fn admissible_pairs(g: &LabeledGraph) -> Vec<(EdgeId, EdgeId)> {
    let mut buckets: BTreeMap<(VertexId, usize, bool), Vec<EdgeId>> = BTreeMap::new();
    for e in g.edges() {
        buckets.entry((e.origin, e.label, false)).or_default().push(e.id);
        buckets.entry((e.terminus, e.label, true)).or_default().push(e.id);
    }
    let mut pairs: BTreeSet<(EdgeId, EdgeId)> = BTreeSet::new();
    for ids in buckets.values() {
        for i in 0..ids.len() {
            for j in (i + 1)..ids.len() {
                let (a, b) = (ids[i].min(ids[j]), ids[i].max(ids[j]));
                pairs.insert((a, b));
            }
        }
    }
    pairs.into_iter().collect()
}

fn fold_pair_in_place(g: &mut LabeledGraph, e1: EdgeId, e2: EdgeId) -> Result<FoldEvent> {
    let a = *g.edge(e1)?;
    let b = *g.edge(e2)?;
    if a.label != b.label || (a.origin != b.origin && a.terminus != b.terminus) {
        return Err(Error::InvalidArgument(format!("pair ({e1}, {e2}) is not admissible")));
    }
    let identified = if a.origin == b.origin && a.terminus != b.terminus {
        Some((a.terminus.min(b.terminus), a.terminus.max(b.terminus)))
    } else if a.terminus == b.terminus && a.origin != b.origin {
        Some((a.origin.min(b.origin), a.origin.max(b.origin)))
    } else {
        None
    };
    g.remove_edge(e2)?;
    if let Some((keep, drop)) = identified {
        g.merge_vertices(keep, drop)?;
    }
    Ok(FoldEvent { kept_edge: e1, removed_edge: e2, identified })
}

/// Performs one fold if an admissible pair exists, always choosing the
/// smallest pair. Returns `None` on an already immersed graph.
pub fn fold_step(g: &LabeledGraph) -> Option<(LabeledGraph, FoldEvent)> {
    let pairs = admissible_pairs(g);
    let &(e1, e2) = pairs.first()?;
    let mut out = g.clone();
    let event = fold_pair_in_place(&mut out, e1, e2).expect("pair is admissible");
    Some((out, event))
}

/// Folds until immersed, smallest admissible pair first.
pub fn fold_all(g: &LabeledGraph) -> LabeledGraph {
    fold_all_traced(g).graph
}

/// A completed fold sequence with the maps it induces. `edge_map` sends
/// every original edge to its surviving image; `absorbed` inverts it.
#[derive(Clone, Debug)]
pub struct FoldTrace {
    pub graph: LabeledGraph,
    pub events: Vec<FoldEvent>,
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
    pub absorbed: BTreeMap<EdgeId, BTreeSet<EdgeId>>,
}

impl FoldTrace {
    /// The quotient map from the original graph onto the folded one.
    pub fn quotient_map(&self) -> GraphMap {
        GraphMap::new(self.vertex_map.clone(), self.edge_map.clone())
    }
}

/// Folds until immersed, recording the quotient maps. Pass the identity
/// selection; see [`fold_all_with`] for custom fold orders.
pub fn fold_all_traced(g: &LabeledGraph) -> FoldTrace {
    fold_all_with(g, |_| 0)
}

/// Folds until immersed, letting `picker` choose among the admissible
/// pairs at each step (it receives the sorted pair list and returns an
/// index). Used to exercise confluence.
pub fn fold_all_with<F>(g: &LabeledGraph, mut picker: F) -> FoldTrace
where
    F: FnMut(&[(EdgeId, EdgeId)]) -> usize,
{
    let mut graph = g.clone();
    let mut events = Vec::new();
    let mut vertex_map: BTreeMap<VertexId, VertexId> =
        g.vertices().map(|v| (v, v)).collect();
    let mut edge_map: BTreeMap<EdgeId, EdgeId> = g.edge_ids().map(|e| (e, e)).collect();
    loop {
        let pairs = admissible_pairs(&graph);
        if pairs.is_empty() {
            break;
        }
        let pick = picker(&pairs).min(pairs.len() - 1);
        let (e1, e2) = pairs[pick];
        let event = fold_pair_in_place(&mut graph, e1, e2).expect("pair is admissible");
        for target in edge_map.values_mut() {
            if *target == event.removed_edge {
                *target = event.kept_edge;
            }
        }
        if let Some((keep, drop)) = event.identified {
            for target in vertex_map.values_mut() {
                if *target == drop {
                    *target = keep;
                }
            }
        }
        events.push(event);
    }
    let mut absorbed: BTreeMap<EdgeId, BTreeSet<EdgeId>> = BTreeMap::new();
    for (&orig, &surv) in &edge_map {
        absorbed.entry(surv).or_default().insert(orig);
    }
    FoldTrace { graph, events, vertex_map, edge_map, absorbed }
}

/// True when the labelling to the bouquet is locally injective: no vertex
/// has two outgoing or two incoming edges with the same label.
pub fn is_immersion(g: &LabeledGraph) -> bool {
    let mut out_seen = BTreeSet::new();
    let mut in_seen = BTreeSet::new();
    for e in g.edges() {
        if !out_seen.insert((e.origin, e.label)) {
            return false;
        }
        if !in_seen.insert((e.terminus, e.label)) {
            return false;
        }
    }
    true
}

/// A label-preserving assignment of vertices and edges between two
/// graphs. Label preservation over the bouquet forces each edge's
/// orientation to be preserved, so no direction flags are carried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMap {
    vertex_map: BTreeMap<VertexId, VertexId>,
    edge_map: BTreeMap<EdgeId, EdgeId>,
}

impl GraphMap {
    pub fn new(vertex_map: BTreeMap<VertexId, VertexId>, edge_map: BTreeMap<EdgeId, EdgeId>) -> Self {
        GraphMap { vertex_map, edge_map }
    }

    pub fn identity(g: &LabeledGraph) -> Self {
        GraphMap {
            vertex_map: g.vertices().map(|v| (v, v)).collect(),
            edge_map: g.edge_ids().map(|e| (e, e)).collect(),
        }
    }

    /// The labelling of `g`, as a map onto the bouquet over its alphabet.
    pub fn labelling(g: &LabeledGraph) -> (GraphMap, LabeledGraph) {
        let bouquet = LabeledGraph::bouquet(g.alphabet().clone());
        let map = GraphMap {
            vertex_map: g.vertices().map(|v| (v, 0)).collect(),
            edge_map: g.edges().map(|e| (e.id, e.label)).collect(),
        };
        (map, bouquet)
    }

    pub fn vertex(&self, v: VertexId) -> Result<VertexId> {
        self.vertex_map.get(&v).copied().ok_or(Error::UnknownVertex(v))
    }

    pub fn edge(&self, e: EdgeId) -> Result<EdgeId> {
        self.edge_map.get(&e).copied().ok_or(Error::UnknownEdge(e))
    }

    pub fn vertex_assignments(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.vertex_map
    }

    pub fn edge_assignments(&self) -> &BTreeMap<EdgeId, EdgeId> {
        &self.edge_map
    }

    /// Checks totality, referential validity, incidence commutation, and
    /// label preservation.
    pub fn validate(&self, source: &LabeledGraph, target: &LabeledGraph) -> Result<()> {
        if source.alphabet() != target.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        for v in source.vertices() {
            let w = self.vertex(v)?;
            if !target.has_vertex(w) {
                return Err(Error::UnknownVertex(w));
            }
        }
        for e in source.edges() {
            let f_id = self.edge(e.id)?;
            let f = target.edge(f_id)?;
            if f.label != e.label {
                return Err(Error::InvalidArgument(format!(
                    "edge {} maps across labels ({} -> {})",
                    e.id, e.label, f.label
                )));
            }
            if self.vertex(e.origin)? != f.origin || self.vertex(e.terminus)? != f.terminus {
                return Err(Error::InvalidArgument(format!(
                    "edge {} does not commute with the incidence maps",
                    e.id
                )));
            }
        }
        Ok(())
    }

    /// Valid and locally injective on every link.
    pub fn is_immersion_map(&self, source: &LabeledGraph, target: &LabeledGraph) -> Result<bool> {
        self.validate(source, target)?;
        for v in source.vertices() {
            let mut images = BTreeSet::new();
            for end in source.link(v)? {
                let image = DirectedEnd { edge: self.edge(end.edge)?, direction: end.direction };
                if !images.insert(image) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_surjective(&self, target: &LabeledGraph) -> bool {
        let hit_v: BTreeSet<VertexId> = self.vertex_map.values().copied().collect();
        let hit_e: BTreeSet<EdgeId> = self.edge_map.values().copied().collect();
        target.vertices().all(|v| hit_v.contains(&v)) && target.edge_ids().all(|e| hit_e.contains(&e))
    }

    /// `self` then `next`.
    pub fn compose(&self, next: &GraphMap) -> Result<GraphMap> {
        let mut vertex_map = BTreeMap::new();
        for (&v, &w) in &self.vertex_map {
            vertex_map.insert(v, next.vertex(w)?);
        }
        let mut edge_map = BTreeMap::new();
        for (&e, &f) in &self.edge_map {
            edge_map.insert(e, next.edge(f)?);
        }
        Ok(GraphMap { vertex_map, edge_map })
    }

    /// Vertices mapping to `w`.
    pub fn fiber(&self, w: VertexId) -> BTreeSet<VertexId> {
        self.vertex_map
            .iter()
            .filter(|(_, &img)| img == w)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Edges mapping to `f`.
    pub fn edge_fiber(&self, f: EdgeId) -> BTreeSet<EdgeId> {
        self.edge_map
            .iter()
            .filter(|(_, &img)| img == f)
            .map(|(&e, _)| e)
            .collect()
    }
}

/// Word acceptor over an immersed based graph, with indexed transitions
/// for repeated membership queries.
pub struct Acceptor {
    base: VertexId,
    out: BTreeMap<(VertexId, usize), VertexId>,
    inc: BTreeMap<(VertexId, usize), VertexId>,
}

impl Acceptor {
    pub fn new(g: &LabeledGraph) -> Result<Acceptor> {
        let base = g
            .base()
            .ok_or_else(|| Error::Precondition("membership requires a based graph".into()))?;
        if !is_immersion(g) {
            return Err(Error::Precondition("membership requires an immersed graph".into()));
        }
        let mut out = BTreeMap::new();
        let mut inc = BTreeMap::new();
        for e in g.edges() {
            out.insert((e.origin, e.label), e.terminus);
            inc.insert((e.terminus, e.label), e.origin);
        }
        Ok(Acceptor { base, out, inc })
    }

    /// True when the freely reduced word reads a closed walk at the base.
    pub fn accepts(&self, w: &Word) -> bool {
        let w = w.free_reduced();
        let mut cur = self.base;
        for l in w.letters() {
            let next = if l.inverse {
                self.inc.get(&(cur, l.label))
            } else {
                self.out.get(&(cur, l.label))
            };
            match next {
                Some(&v) => cur = v,
                None => return false,
            }
        }
        cur == self.base
    }
}

/// One-shot membership test; build an [`Acceptor`] for repeated queries.
pub fn accepts(g: &LabeledGraph, w: &Word) -> Result<bool> {
    Ok(Acceptor::new(g)?.accepts(w))
}

/// Breadth-first traversal order from `start`, expanding ends by
/// (label, direction). Requires an immersed graph so that the expansion
/// order is well defined.
fn bfs_order(g: &LabeledGraph, start: VertexId) -> Vec<VertexId> {
    let mut order = vec![start];
    let mut seen: BTreeSet<VertexId> = [start].into();
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let mut ends = g.link(v).expect("vertex exists");
        ends.sort_by_key(|end| end.end_label(g).expect("edge exists"));
        for end in ends {
            let w = end.target(g).expect("edge exists");
            if seen.insert(w) {
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order
}

/// Renumbers an immersed, connected, based graph into its canonical
/// form: vertices in breadth-first order from the base with label-order
/// tie-breaking, edges by (origin, label). Isomorphic based graphs yield
/// identical values.
pub fn canonical_form(g: &LabeledGraph) -> Result<LabeledGraph> {
    let base = g
        .base()
        .ok_or_else(|| Error::InvalidArgument("canonical form requires a based graph".into()))?;
    if !is_immersion(g) {
        return Err(Error::InvalidArgument("canonical form requires an immersed graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::InvalidArgument("canonical form requires a connected graph".into()));
    }
    let order = bfs_order(g, base);
    let number: BTreeMap<VertexId, usize> =
        order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges: Vec<&Edge> = g.edges().collect();
    edges.sort_by_key(|e| (number[&e.origin], e.label));
    let mut out = LabeledGraph::new(g.alphabet().clone());
    for i in 0..order.len() {
        out.add_vertex(i).unwrap();
    }
    for (i, e) in edges.iter().enumerate() {
        out.add_edge(i, number[&e.origin], number[&e.terminus], e.label).unwrap();
    }
    out.set_base(Some(0)).unwrap();
    Ok(out)
}

fn component_encoding_from(g: &LabeledGraph, start: VertexId) -> Vec<u32> {
    let order = bfs_order(g, start);
    let number: BTreeMap<VertexId, u32> =
        order.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let mut code = vec![order.len() as u32];
    for &v in &order {
        let mut ends = g.link(v).expect("vertex exists");
        ends.sort_by_key(|end| end.end_label(g).expect("edge exists"));
        code.push(ends.len() as u32);
        for end in ends {
            let (label, dir) = end.end_label(g).expect("edge exists");
            let w = end.target(g).expect("edge exists");
            code.push(label as u32);
            code.push(if dir == Direction::Forward { 0 } else { 1 });
            code.push(number[&w]);
        }
    }
    code
}

/// Isomorphism-invariant encoding of an immersed graph, ignoring the base
/// and working on disconnected graphs: per component, the minimum
/// breadth-first encoding over all start vertices; components sorted.
pub fn canonical_key(g: &LabeledGraph) -> Result<Vec<u32>> {
    if !is_immersion(g) {
        return Err(Error::InvalidArgument("canonical key requires an immersed graph".into()));
    }
    let mut component_codes = Vec::new();
    for comp in g.components() {
        let code = comp
            .vertices()
            .map(|v| component_encoding_from(&comp, v))
            .min()
            .expect("component is nonempty");
        component_codes.push(code);
    }
    component_codes.sort();
    let mut key = vec![component_codes.len() as u32];
    for code in component_codes {
        key.push(u32::MAX); // component separator
        key.extend(code);
    }
    Ok(key)
}

/// A free basis for the fundamental group at the base: one word per
/// non-tree edge of a breadth-first spanning tree.
pub fn spanning_tree_basis(g: &LabeledGraph) -> Result<Vec<Word>> {
    let base = g
        .base()
        .ok_or_else(|| Error::Precondition("spanning tree basis requires a based graph".into()))?;
    if !is_immersion(g) || !g.is_connected() {
        return Err(Error::Precondition(
            "spanning tree basis requires a connected immersed graph".into(),
        ));
    }
    let mut path: BTreeMap<VertexId, Word> = BTreeMap::new();
    path.insert(base, Word::empty());
    let mut tree_edges: BTreeSet<EdgeId> = BTreeSet::new();
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        let mut ends = g.link(v)?;
        ends.sort_by_key(|end| end.end_label(g).expect("edge exists"));
        for end in ends {
            let w = end.target(g)?;
            if !path.contains_key(&w) {
                let letter = match end.direction {
                    Direction::Forward => Letter::positive(end.label(g)?),
                    Direction::Backward => Letter::negative(end.label(g)?),
                };
                let mut p = path[&v].clone();
                p = p.concat(&Word::from_letters(vec![letter]));
                path.insert(w, p);
                tree_edges.insert(end.edge);
                queue.push_back(w);
            }
        }
    }
    let mut basis = Vec::new();
    for e in g.edges() {
        if tree_edges.contains(&e.id) {
            continue;
        }
        let loop_word = path[&e.origin]
            .concat(&Word::from_letters(vec![Letter::positive(e.label)]))
            .concat(&path[&e.terminus].inverse());
        basis.push(loop_word.free_reduced());
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn words(texts: &[&str], alpha: &Alphabet) -> Vec<Word> {
        texts.iter().map(|t| Word::parse(t, alpha).unwrap()).collect()
    }

    #[test]
    fn wedge_of_single_cycle() {
        let w = wedge_of_cycles(&words(&["ab"], &ab()), &ab());
        assert_eq!(w.graph.vertex_count(), 2);
        assert_eq!(w.graph.edge_count(), 2);
        assert_eq!(w.graph.base(), Some(0));
        let walk_word = crate::graph::Walk::new(
            0,
            w.cycle_edges[0]
                .iter()
                .map(|&e| DirectedEnd::forward(e))
                .collect(),
        )
        .word(&w.graph)
        .unwrap();
        assert_eq!(walk_word, Word::parse("ab", &ab()).unwrap());
    }

    #[test]
    fn wedge_of_two_loops_is_figure_eight() {
        let w = wedge_of_cycles(&words(&["a", "b"], &ab()), &ab());
        assert_eq!(w.graph.vertex_count(), 1);
        assert_eq!(w.graph.edge_count(), 2);
        assert!(is_immersion(&w.graph));
    }

    #[test]
    fn wedge_commutator_pair_has_eight_edges() {
        let w = wedge_of_cycles(&words(&["abAB", "ABab"], &ab()), &ab());
        assert_eq!(w.graph.edge_count(), 8);
        assert_eq!(w.graph.vertex_count(), 7);
    }

    #[test]
    fn empty_generator_list_yields_single_vertex() {
        let w = wedge_of_cycles(&[], &ab());
        assert_eq!(w.graph.vertex_count(), 1);
        assert_eq!(w.graph.edge_count(), 0);
    }

    #[test]
    fn trivial_generators_are_dropped() {
        let w = wedge_of_cycles(&words(&["aA", "b"], &ab()), &ab());
        assert_eq!(w.dropped, vec![0]);
        assert_eq!(fold_all(&w.graph).rank().unwrap(), 1);
    }

    #[test]
    fn fold_step_merges_double_loop() {
        let mut g = LabeledGraph::new(ab());
        g.add_vertex(0).unwrap();
        g.add_edge(0, 0, 0, 0).unwrap();
        g.add_edge(1, 0, 0, 0).unwrap();
        let (folded, event) = fold_step(&g).unwrap();
        assert_eq!(folded.edge_count(), 1);
        assert_eq!(event.kept_edge, 0);
        assert_eq!(event.removed_edge, 1);
        assert_eq!(event.identified, None);
    }

    #[test]
    fn fold_step_on_immersed_graph_is_none() {
        let g = LabeledGraph::bouquet(ab());
        assert!(fold_step(&g).is_none());
    }

    #[test]
    fn fold_step_picks_smallest_pair() {
        // wedge of "aa" and "ab": the two initial a-edges from the base fold
        let w = wedge_of_cycles(&words(&["aa", "ab"], &ab()), &ab());
        let pairs = admissible_pairs(&w.graph);
        assert_eq!(pairs[0], (0, 2));
        let (_, event) = fold_step(&w.graph).unwrap();
        assert_eq!((event.kept_edge, event.removed_edge), (0, 2));
    }

    #[test]
    fn fold_all_duplicate_generator() {
        let w = wedge_of_cycles(&words(&["a", "a"], &ab()), &ab());
        let h = fold_all(&w.graph);
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.rank().unwrap(), 1);
    }

    #[test]
    fn fold_all_commutator_pair_is_rank_two() {
        let w = wedge_of_cycles(&words(&["abAB", "ABab"], &ab()), &ab());
        let h = fold_all(&w.graph);
        assert!(is_immersion(&h));
        assert_eq!(h.rank().unwrap(), 2);
        // this wedge is already immersed, so folding leaves it alone
        assert_eq!(h.vertex_count(), 7);
        assert_eq!(h.edge_count(), 8);
    }

    #[test]
    fn fold_never_increases_rank() {
        let alpha = ab();
        for gens in [
            vec!["aa", "ab", "bb"],
            vec!["abAB", "ABab"],
            vec!["aba", "bab", "aabb"],
        ] {
            let w = wedge_of_cycles(&words(&gens, &alpha), &alpha);
            let before = w.graph.reduced_rank();
            let after = fold_all(&w.graph).reduced_rank();
            assert!(after <= before);
        }
    }

    #[test]
    fn immersion_detects_label_clash() {
        let mut g = LabeledGraph::new(ab());
        g.add_vertex(0).unwrap();
        g.add_edge(0, 0, 0, 0).unwrap();
        g.add_edge(1, 0, 0, 0).unwrap();
        assert!(!is_immersion(&g));
        assert!(is_immersion(&LabeledGraph::bouquet(ab())));
    }

    #[test]
    fn composition_of_immersions_is_immersion() {
        let h = fold_all(&wedge_of_cycles(&words(&["ab", "ba"], &ab()), &ab()).graph);
        let (labelling, bouquet) = GraphMap::labelling(&h);
        assert!(labelling.is_immersion_map(&h, &bouquet).unwrap());
        let identity = GraphMap::identity(&h);
        let composed = identity.compose(&labelling).unwrap();
        assert!(composed.is_immersion_map(&h, &bouquet).unwrap());
    }

    #[test]
    fn accepts_powers_of_generator() {
        let h = fold_all(&wedge_of_cycles(&words(&["ab"], &ab()), &ab()).graph);
        let acc = Acceptor::new(&h).unwrap();
        assert!(acc.accepts(&Word::parse("abab", &ab()).unwrap()));
        assert!(acc.accepts(&Word::parse("BA", &ab()).unwrap()));
        assert!(!acc.accepts(&Word::parse("a", &ab()).unwrap()));
        assert!(acc.accepts(&Word::empty()));
    }

    #[test]
    fn accepts_commutator_generator() {
        let h = fold_all(&wedge_of_cycles(&words(&["abAB", "ABab"], &ab()), &ab()).graph);
        assert!(accepts(&h, &Word::parse("abAB", &ab()).unwrap()).unwrap());
        assert!(!accepts(&h, &Word::parse("ab", &ab()).unwrap()).unwrap());
    }

    #[test]
    fn every_generator_is_accepted() {
        let gens = words(&["abA", "bab", "aaB"], &ab());
        let h = fold_all(&wedge_of_cycles(&gens, &ab()).graph);
        let acc = Acceptor::new(&h).unwrap();
        for g in &gens {
            assert!(acc.accepts(g));
        }
        // brute-force soundness: short products of generators and inverses
        let mut pool: Vec<Word> = gens.clone();
        pool.extend(gens.iter().map(Word::inverse));
        for x in &pool {
            for y in &pool {
                assert!(acc.accepts(&x.concat(y)));
                for z in &pool {
                    assert!(acc.accepts(&x.concat(y).concat(z)));
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_relabel_invariant() {
        let h = fold_all(&wedge_of_cycles(&words(&["ab", "ba"], &ab()), &ab()).graph);
        // rebuild the same graph with shifted ids
        let mut shifted = LabeledGraph::new(ab());
        for v in h.vertices() {
            shifted.add_vertex(v + 10).unwrap();
        }
        for e in h.edges() {
            shifted.add_edge(e.id + 50, e.origin + 10, e.terminus + 10, e.label).unwrap();
        }
        shifted.set_base(h.base().map(|b| b + 10)).unwrap();
        assert_eq!(canonical_form(&h).unwrap(), canonical_form(&shifted).unwrap());
        // a pendant edge changes the canonical form
        let mut bigger = h.clone();
        let v = bigger.fresh_vertex();
        bigger.fresh_edge(v, 1, 1).unwrap();
        assert!(is_immersion(&bigger));
        assert_ne!(canonical_form(&h).unwrap(), canonical_form(&bigger).unwrap());
    }

    #[test]
    fn canonical_form_rejects_unbased_or_disconnected() {
        let mut g = LabeledGraph::bouquet(ab());
        g.set_base(None).unwrap();
        assert!(canonical_form(&g).is_err());
        let two = LabeledGraph::bouquet(ab())
            .disjoint_union(&LabeledGraph::bouquet(ab()))
            .unwrap();
        assert!(canonical_form(&two).is_err());
    }

    #[test]
    fn fold_orders_agree_on_canonical_form() {
        let alpha = ab();
        let gens = words(&["aab", "aba", "bb"], &alpha);
        let w = wedge_of_cycles(&gens, &alpha);
        let deterministic = canonical_form(&fold_all(&w.graph)).unwrap();
        // a picker that always takes the last pair
        let reversed = fold_all_with(&w.graph, |pairs| pairs.len() - 1).graph;
        assert_eq!(canonical_form(&reversed).unwrap(), deterministic);
        // and one that alternates
        let mut flip = false;
        let alt = fold_all_with(&w.graph, |pairs| {
            flip = !flip;
            if flip {
                pairs.len() / 2
            } else {
                0
            }
        })
        .graph;
        assert_eq!(canonical_form(&alt).unwrap(), deterministic);
    }

    #[test]
    fn fold_trace_tracks_absorbed_edges() {
        let w = wedge_of_cycles(&words(&["aa", "ab"], &ab()), &ab());
        let trace = fold_all_traced(&w.graph);
        // original edges 0 and 2 (the two initial a-edges) merge
        assert_eq!(trace.edge_map[&0], trace.edge_map[&2]);
        let survivor = trace.edge_map[&0];
        assert!(trace.absorbed[&survivor].contains(&0));
        assert!(trace.absorbed[&survivor].contains(&2));
        // the quotient map is a valid morphism onto the fold
        trace.quotient_map().validate(&w.graph, &trace.graph).unwrap();
        assert!(trace.quotient_map().is_surjective(&trace.graph));
    }

    #[test]
    fn canonical_key_ignores_base_and_components() {
        let fig8 = LabeledGraph::bouquet(ab());
        let mut unbased = fig8.clone();
        unbased.set_base(None).unwrap();
        assert_eq!(canonical_key(&fig8).unwrap(), canonical_key(&unbased).unwrap());
        let two = fig8.disjoint_union(&fig8).unwrap();
        let key = canonical_key(&two).unwrap();
        assert_eq!(key, canonical_key(&two).unwrap());
        assert_ne!(key, canonical_key(&fig8).unwrap());
    }

    /// Rebuild a graph with ids renamed by seeded shuffles.
    fn relabel(g: &LabeledGraph, seed: u64) -> LabeledGraph {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let vertices: Vec<VertexId> = g.vertices().collect();
        let mut new_v: Vec<VertexId> = (0..vertices.len()).map(|i| i * 3 + 1).collect();
        new_v.shuffle(&mut rng);
        let vmap: BTreeMap<VertexId, VertexId> =
            vertices.iter().copied().zip(new_v).collect();
        let edges: Vec<Edge> = g.edges().copied().collect();
        let mut new_e: Vec<EdgeId> = (0..edges.len()).map(|i| i * 2 + 5).collect();
        new_e.shuffle(&mut rng);
        let mut out = LabeledGraph::new(g.alphabet().clone());
        for &v in vmap.values() {
            out.add_vertex(v).unwrap();
        }
        for (e, id) in edges.iter().zip(new_e) {
            out.add_edge(id, vmap[&e.origin], vmap[&e.terminus], e.label).unwrap();
        }
        out.set_base(g.base().map(|b| vmap[&b])).unwrap();
        out
    }

    proptest::proptest! {
        #[test]
        fn canonical_forms_ignore_id_names(seed in 0u64..300, perm in 0u64..1000) {
            let g = crate::random::build_pool(seed, 1, false).remove(0);
            let shuffled = relabel(&g, perm);
            proptest::prop_assert_eq!(
                canonical_form(&g).unwrap(),
                canonical_form(&shuffled).unwrap()
            );
            proptest::prop_assert_eq!(
                canonical_key(&g).unwrap(),
                canonical_key(&shuffled).unwrap()
            );
        }
    }

    #[test]
    fn spanning_tree_basis_generates_the_subgroup() {
        let gens = words(&["ab", "ba"], &ab());
        let h = fold_all(&wedge_of_cycles(&gens, &ab()).graph);
        let basis = spanning_tree_basis(&h).unwrap();
        assert_eq!(basis.len(), h.rank().unwrap());
        let acc = Acceptor::new(&h).unwrap();
        for w in &basis {
            assert!(acc.accepts(w));
        }
    }
}
