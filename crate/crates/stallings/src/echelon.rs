//! Echelon-form checking for explicit bases, generalized-echelon
//! certificate search and verification, and the abelianization
//! obstruction for echelon-ness.

use std::collections::{BTreeMap, BTreeSet};

use crate::essential::{is_essential_set, maximal_essential_sets, EssentialSet};
use crate::fold::{fold_all_traced, is_immersion, spanning_tree_basis, wedge_of_cycles};
use crate::graph::{Alphabet, Arc, EdgeId, LabeledGraph};
use crate::order::LabelOrder;
use crate::word::Word;
use crate::{Error, Result};

/// Echelon-form verdict for an ordered generating set, with the fresh
/// base letters each generator introduces (in either sign).
#[derive(Clone, Debug)]
pub struct EchelonFormReport {
    pub echelon: bool,
    pub fresh: Vec<BTreeSet<usize>>,
}

/// An ordered basis is in echelon form when every generator contains at
/// least one base letter unseen in the earlier generators.
pub fn check_echelon_form(gens: &[Word]) -> EchelonFormReport {
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut fresh = Vec::with_capacity(gens.len());
    let mut echelon = true;
    for gen in gens {
        let reduced = gen.free_reduced();
        let labels: BTreeSet<usize> = reduced.letters().iter().map(|l| l.label).collect();
        let new: BTreeSet<usize> = labels.difference(&seen).copied().collect();
        if new.is_empty() {
            echelon = false;
        }
        seen.extend(labels);
        fresh.push(new);
    }
    EchelonFormReport { echelon, fresh }
}

/// A generalized echelon certificate: an ordered maximal essential set
/// with injective labels whose prefix subgraphs avoid the labels of the
/// later essential edges, plus the label order its inertness proof uses.
#[derive(Clone, Debug)]
pub struct EchelonCertificate {
    /// Essential edges in certificate order.
    pub essential: Vec<EdgeId>,
    /// Their labels, in the same order.
    pub essential_labels: Vec<usize>,
    /// The arc containing each essential edge.
    pub arcs: Vec<Arc>,
    /// Component of the graph minus all other essential arcs containing
    /// each essential edge.
    pub components: Vec<LabeledGraph>,
    /// Cumulative unions of the components.
    pub prefixes: Vec<LabeledGraph>,
    /// Non-essential labels first, then essential labels in order.
    pub label_order: LabelOrder,
}

fn edge_labels(g: &LabeledGraph) -> BTreeSet<usize> {
    g.edges().map(|e| e.label).collect()
}

/// The component containing essential edge `e` after removing the arcs of
/// all the other essential edges (their edges and interior vertices).
pub fn component_of_essential_edge(
    h: &LabeledGraph,
    essential: &BTreeSet<EdgeId>,
    e: EdgeId,
) -> Result<LabeledGraph> {
    let arcs = h.arcs()?;
    let mut removed_edges: BTreeSet<EdgeId> = BTreeSet::new();
    let mut removed_vertices: BTreeSet<usize> = BTreeSet::new();
    for &f in essential {
        if f == e {
            continue;
        }
        let arc = arcs
            .iter()
            .find(|a| a.contains_edge(f))
            .ok_or(Error::UnknownEdge(f))?;
        removed_edges.extend(arc.edge_set());
        removed_vertices.extend(arc.interior(h)?);
    }
    let vertices: BTreeSet<usize> =
        h.vertices().filter(|v| !removed_vertices.contains(v)).collect();
    let edges: BTreeSet<EdgeId> =
        h.edge_ids().filter(|id| !removed_edges.contains(id)).collect();
    let rest = h.subgraph(&vertices, &edges)?;
    rest.component_of(h.edge(e)?.origin)
}

fn certificate_order(h: &LabeledGraph, essential_labels: &[usize]) -> Result<LabelOrder> {
    let essential: BTreeSet<usize> = essential_labels.iter().copied().collect();
    let mut seq: Vec<usize> =
        (0..h.alphabet().size()).filter(|l| !essential.contains(l)).collect();
    seq.extend(essential_labels.iter().copied());
    LabelOrder::from_sequence(&seq)
}

/// Searches maximal essential sets and their orderings for a generalized
/// echelon certificate. Returned certificates are re-verified from
/// scratch.
pub fn generalized_echelon_certificate(h: &LabeledGraph) -> Result<Option<EchelonCertificate>> {
    if !is_immersion(h) || h.is_empty() || !h.is_connected() || !h.is_core() {
        return Err(Error::Precondition(
            "certificate search requires an immersed connected core graph".into(),
        ));
    }
    if h.reduced_rank() == 0 {
        return Err(Error::Precondition(
            "certificate search requires reduced rank at least 1".into(),
        ));
    }
    for set in maximal_essential_sets(h)? {
        let labels: BTreeMap<EdgeId, usize> = set
            .edges
            .iter()
            .map(|&e| Ok((e, h.edge(e)?.label)))
            .collect::<Result<_>>()?;
        let distinct: BTreeSet<usize> = labels.values().copied().collect();
        if distinct.len() != labels.len() {
            continue; // condition 1 fails for this set
        }
        let mut components: BTreeMap<EdgeId, LabeledGraph> = BTreeMap::new();
        for &e in &set.edges {
            components.insert(e, component_of_essential_edge(h, &set.edges, e)?);
        }
        let ids: Vec<EdgeId> = set.edges.iter().copied().collect();
        if let Some(order) = order_essential(&ids, &labels, &components) {
            let cert = build_certificate(h, &order, &labels, &components)?;
            let ok = verify_echelon_certificate(h, &cert)?;
            assert!(ok, "freshly built certificate failed re-verification (bug)");
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Backtracking over orderings with the label-disjointness condition as
/// pruning: an edge may be placed next only if the labels of its
/// component stay clear of the labels of the still unplaced edges.
fn order_essential(
    ids: &[EdgeId],
    labels: &BTreeMap<EdgeId, usize>,
    components: &BTreeMap<EdgeId, LabeledGraph>,
) -> Option<Vec<EdgeId>> {
    fn step(
        placed: &mut Vec<EdgeId>,
        used_labels: &BTreeSet<usize>,
        remaining: &BTreeSet<EdgeId>,
        labels: &BTreeMap<EdgeId, usize>,
        components: &BTreeMap<EdgeId, LabeledGraph>,
    ) -> bool {
        if remaining.is_empty() {
            return true;
        }
        for &e in remaining {
            let mut next_used = used_labels.clone();
            next_used.extend(edge_labels(&components[&e]));
            let rest: BTreeSet<EdgeId> =
                remaining.iter().copied().filter(|&f| f != e).collect();
            if rest.iter().any(|f| next_used.contains(&labels[f])) {
                continue;
            }
            placed.push(e);
            if step(placed, &next_used, &rest, labels, components) {
                return true;
            }
            placed.pop();
        }
        false
    }
    let mut placed = Vec::with_capacity(ids.len());
    let remaining: BTreeSet<EdgeId> = ids.iter().copied().collect();
    if step(&mut placed, &BTreeSet::new(), &remaining, labels, components) {
        Some(placed)
    } else {
        None
    }
}

fn build_certificate(
    h: &LabeledGraph,
    order: &[EdgeId],
    labels: &BTreeMap<EdgeId, usize>,
    components: &BTreeMap<EdgeId, LabeledGraph>,
) -> Result<EchelonCertificate> {
    let arcs = h.arcs()?;
    let mut cert_arcs = Vec::with_capacity(order.len());
    let mut comps = Vec::with_capacity(order.len());
    let mut prefixes: Vec<LabeledGraph> = Vec::with_capacity(order.len());
    for (i, &e) in order.iter().enumerate() {
        let arc = arcs
            .iter()
            .find(|a| a.contains_edge(e))
            .ok_or(Error::UnknownEdge(e))?
            .clone();
        cert_arcs.push(arc);
        let c = components[&e].clone();
        let prefix = if i == 0 { c.clone() } else { prefixes[i - 1].union_with(&c)? };
        comps.push(c);
        prefixes.push(prefix);
    }
    let essential_labels: Vec<usize> = order.iter().map(|e| labels[e]).collect();
    let label_order = certificate_order(h, &essential_labels)?;
    Ok(EchelonCertificate {
        essential: order.to_vec(),
        essential_labels,
        arcs: cert_arcs,
        components: comps,
        prefixes,
        label_order,
    })
}

/// Re-verifies a certificate from scratch: the set is maximal essential
/// with injective labels, the cached components match recomputation, each
/// has reduced rank 1, and every prefix avoids the later essential
/// labels. Returns false on any failure, so corrupted certificates can be
/// used as negative controls.
pub fn verify_echelon_certificate(h: &LabeledGraph, cert: &EchelonCertificate) -> Result<bool> {
    let set: BTreeSet<EdgeId> = cert.essential.iter().copied().collect();
    if set.len() != cert.essential.len() || set.len() != h.reduced_rank() {
        return Ok(false);
    }
    if !is_essential_set(h, &set)? {
        return Ok(false);
    }
    let mut labels = Vec::new();
    for &e in &cert.essential {
        labels.push(h.edge(e)?.label);
    }
    if labels != cert.essential_labels {
        return Ok(false);
    }
    let distinct: BTreeSet<usize> = labels.iter().copied().collect();
    if distinct.len() != labels.len() {
        return Ok(false);
    }
    let mut prefix_labels: BTreeSet<usize> = BTreeSet::new();
    for (i, &e) in cert.essential.iter().enumerate() {
        let comp = component_of_essential_edge(h, &set, e)?;
        if comp != cert.components[i] {
            return Ok(false);
        }
        if comp.reduced_rank() != 1 {
            return Ok(false);
        }
        prefix_labels.extend(edge_labels(&comp));
        if cert.prefixes[i].edge_count() < comp.edge_count() {
            return Ok(false);
        }
        for &later in &cert.essential[i + 1..] {
            if prefix_labels.contains(&h.edge(later)?.label) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Builds the subgroup graph of an echelon basis and reads off the
/// maximal essential set given by the fresh letters of the generators
/// after the first, located through fold provenance.
pub fn echelon_via_cycles(gens: &[Word], alphabet: &Alphabet) -> Result<(LabeledGraph, EssentialSet)> {
    let reduced: Vec<Word> = gens.iter().map(Word::free_reduced).collect();
    let report = check_echelon_form(&reduced);
    if !report.echelon || reduced.iter().any(Word::is_empty) {
        return Err(Error::Precondition("generators are not in echelon form".into()));
    }
    let wedge = wedge_of_cycles(&reduced, alphabet);
    let trace = fold_all_traced(&wedge.graph);
    let mut edges = BTreeSet::new();
    for (i, gen) in reduced.iter().enumerate().skip(1) {
        let fresh_label = *report.fresh[i].iter().next().expect("echelon form");
        let position = gen
            .letters()
            .iter()
            .position(|l| l.label == fresh_label)
            .expect("fresh letter occurs in its generator");
        let original_edge = wedge.cycle_edges[i][position];
        let surviving = trace.edge_map[&original_edge];
        edges.insert(surviving);
    }
    let h = trace.graph;
    assert_eq!(edges.len(), reduced.len().saturating_sub(1), "fresh edges stay distinct");
    let essential = is_essential_set(&h, &edges)?;
    assert!(
        essential && edges.len() == h.reduced_rank(),
        "fresh-letter edges must form a maximal essential set"
    );
    let label_count: BTreeSet<usize> = edges
        .iter()
        .map(|&e| h.edge(e).map(|edge| edge.label))
        .collect::<Result<_>>()?;
    assert_eq!(label_count.len(), edges.len(), "fresh-letter labels are injective");
    Ok((h, EssentialSet { edges, mrank_after_removal: 0 }))
}

/// One-directional obstruction: a subgroup of full rank whose entire
/// image dies under abelianization cannot be echelon with respect to any
/// basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonEchelonVerdict {
    NotEchelonByAbelianization,
    Inconclusive,
}

/// Applies the abelianization obstruction using a spanning-tree basis of
/// the subgroup graph.
pub fn non_echelon_witness(h: &LabeledGraph) -> Result<NonEchelonVerdict> {
    let n = h.alphabet().size();
    let basis = spanning_tree_basis(h)?;
    if h.rank()? != n {
        return Ok(NonEchelonVerdict::Inconclusive);
    }
    let zero = vec![0i64; n];
    if basis.iter().all(|w| w.abelianization(n) == zero) {
        Ok(NonEchelonVerdict::NotEchelonByAbelianization)
    } else {
        Ok(NonEchelonVerdict::Inconclusive)
    }
}
