//! Label orders, lexicographic edge comparison, and bridge verification
//! on eventually periodic labeled lines. The lexicographic convention is
//! label-major: the label order decides, and a caller-supplied total
//! order on group elements breaks ties.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::echelon::{component_of_essential_edge, EchelonCertificate};
use crate::graph::{Alphabet, EdgeId, LabeledGraph};
use crate::word::Word;
use crate::{Error, Result};

/// A total order on the alphabet labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelOrder {
    position: Vec<usize>,
}

impl LabelOrder {
    /// Builds the order from labels listed smallest first. The sequence
    /// must be a permutation of `0..len`.
    pub fn from_sequence(seq: &[usize]) -> Result<LabelOrder> {
        let mut position = vec![usize::MAX; seq.len()];
        for (rank, &label) in seq.iter().enumerate() {
            if label >= seq.len() || position[label] != usize::MAX {
                return Err(Error::InvalidArgument(
                    "label order must be a permutation of the labels".into(),
                ));
            }
            position[label] = rank;
        }
        Ok(LabelOrder { position })
    }

    pub fn identity(n: usize) -> LabelOrder {
        LabelOrder { position: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    /// Panics if a label is out of range, like indexing.
    pub fn compare(&self, a: usize, b: usize) -> Ordering {
        self.position[a].cmp(&self.position[b])
    }

    /// Labels smallest first.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = (0..self.position.len()).collect();
        seq.sort_by_key(|&l| self.position[l]);
        seq
    }

    pub fn max_of(&self, labels: impl IntoIterator<Item = usize>) -> Option<usize> {
        labels.into_iter().max_by(|&a, &b| self.compare(a, b))
    }
}

/// An edge of the universal cover: a group element (reduced word) and a
/// label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedEdge {
    pub element: Word,
    pub label: usize,
}

impl LiftedEdge {
    pub fn new(element: Word, label: usize) -> Result<LiftedEdge> {
        if !element.is_reduced() {
            return Err(Error::InvalidArgument("lifted edge elements must be reduced".into()));
        }
        Ok(LiftedEdge { element, label })
    }
}

/// Label-major lexicographic comparison: the label order decides, and the
/// supplied comparator on reduced words breaks ties. The comparator must
/// be a total order; reporting distinct words equal is an oracle error.
pub fn lex_compare(
    a: &LiftedEdge,
    b: &LiftedEdge,
    d_order: &LabelOrder,
    f_order: &mut dyn FnMut(&Word, &Word) -> Ordering,
) -> Result<Ordering> {
    match d_order.compare(a.label, b.label) {
        Ordering::Equal => {}
        decided => return Ok(decided),
    }
    if a.element == b.element {
        return Ok(Ordering::Equal);
    }
    match f_order(&a.element, &b.element) {
        Ordering::Equal => Err(Error::InvalidOracle(
            "comparator reported distinct group elements as equal".into(),
        )),
        decided => Ok(decided),
    }
}

/// An eventually periodic bi-infinite labeled line: a left periodic word,
/// a finite middle segment with one marked edge, and a right periodic
/// word. Signs are part of the data; the line must read reduced across
/// all seams and inside both periods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSpec {
    pub left: Word,
    pub mid: Word,
    pub marked: usize,
    pub right: Word,
}

impl LineSpec {
    pub fn new(left: Word, mid: Word, marked: usize, right: Word) -> Result<LineSpec> {
        let line = LineSpec { left, mid, marked, right };
        line.validate()?;
        Ok(line)
    }

    pub fn validate(&self) -> Result<()> {
        if self.left.is_empty() || self.right.is_empty() {
            return Err(Error::InvalidArgument("periodic words must be nonempty".into()));
        }
        for (name, w) in [("left", &self.left), ("mid", &self.mid), ("right", &self.right)] {
            if !w.is_reduced() {
                return Err(Error::InvalidArgument(format!("{name} word is not reduced")));
            }
        }
        let l_last = *self.left.letters().last().unwrap();
        let l_first = self.left.letters()[0];
        if l_last.cancels(l_first) {
            return Err(Error::InvalidArgument("left period cancels at its seam".into()));
        }
        let r_last = *self.right.letters().last().unwrap();
        let r_first = self.right.letters()[0];
        if r_last.cancels(r_first) {
            return Err(Error::InvalidArgument("right period cancels at its seam".into()));
        }
        match (self.mid.letters().first(), self.mid.letters().last()) {
            (Some(&m_first), Some(&m_last)) => {
                if l_last.cancels(m_first) {
                    return Err(Error::InvalidArgument("left/middle seam cancels".into()));
                }
                if m_last.cancels(r_first) {
                    return Err(Error::InvalidArgument("middle/right seam cancels".into()));
                }
                if self.marked >= self.mid.len() {
                    return Err(Error::InvalidArgument("marked index outside the middle".into()));
                }
            }
            _ => {
                if l_last.cancels(r_first) {
                    return Err(Error::InvalidArgument("left/right seam cancels".into()));
                }
                if self.marked != 0 {
                    return Err(Error::InvalidArgument(
                        "marked index must be 0 on an empty middle".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn tail_labels(&self) -> BTreeSet<usize> {
        self.left
            .letters()
            .iter()
            .chain(self.right.letters())
            .map(|l| l.label)
            .collect()
    }
}

/// Bridge verdict for a line. When the largest label under the order
/// occurs in a periodic tail, it occurs infinitely often and no maximal
/// edge exists under any left-invariant order; that is reported, not
/// decided. Otherwise the finitely many maximal-label edges in the middle
/// are compared by the position oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BridgeVerdict {
    /// The marked edge is the largest edge of the line.
    BridgeAt(usize),
    /// Some other middle position wins.
    NotMarkedMax(usize),
    /// The maximal label recurs in a tail; no largest edge exists.
    NoMaximum,
}

/// Finds the largest edge of the line under the label-major order,
/// breaking label ties with a total order on middle positions.
pub fn bridge_in_line(
    line: &LineSpec,
    d_order: &LabelOrder,
    f_order: &mut dyn FnMut(usize, usize) -> Ordering,
) -> Result<BridgeVerdict> {
    line.validate()?;
    let tails = line.tail_labels();
    let mids: Vec<usize> = line.mid.letters().iter().map(|l| l.label).collect();
    let all_max = d_order
        .max_of(tails.iter().copied().chain(mids.iter().copied()))
        .expect("line is nonempty");
    if tails.contains(&all_max) {
        return Ok(BridgeVerdict::NoMaximum);
    }
    let candidates: Vec<usize> = mids
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == all_max)
        .map(|(i, _)| i)
        .collect();
    let mut winner = candidates[0];
    for &c in &candidates[1..] {
        match f_order(winner, c) {
            Ordering::Less => winner = c,
            Ordering::Greater => {}
            Ordering::Equal => {
                return Err(Error::InvalidOracle(
                    "position oracle reported distinct positions as equal".into(),
                ))
            }
        }
    }
    if winner == line.marked {
        Ok(BridgeVerdict::BridgeAt(winner))
    } else {
        Ok(BridgeVerdict::NotMarkedMax(winner))
    }
}

/// The label order a generalized echelon certificate prescribes:
/// non-essential labels first (in alphabet order), then the essential
/// labels in certificate order.
pub fn certificate_label_order(cert: &EchelonCertificate, alphabet: &Alphabet) -> Result<LabelOrder> {
    let essential: BTreeSet<usize> = cert.essential_labels.iter().copied().collect();
    if essential.len() != cert.essential_labels.len() {
        return Err(Error::InvalidArgument("certificate labels must be distinct".into()));
    }
    for &l in &essential {
        if l >= alphabet.size() {
            return Err(Error::InvalidArgument(format!("label {l} outside the alphabet")));
        }
    }
    let mut seq: Vec<usize> =
        (0..alphabet.size()).filter(|l| !essential.contains(l)).collect();
    seq.extend(cert.essential_labels.iter().copied());
    LabelOrder::from_sequence(&seq)
}

/// The finite bridge content of a certificate: under the prescribed label
/// order, each essential edge must carry the strictly largest label of
/// its component. False signals a corrupted certificate.
pub fn verify_bridge_certificate(h: &LabeledGraph, cert: &EchelonCertificate) -> Result<bool> {
    let order = certificate_label_order(cert, h.alphabet())?;
    let set: BTreeSet<EdgeId> = cert.essential.iter().copied().collect();
    for (i, &e) in cert.essential.iter().enumerate() {
        let comp = component_of_essential_edge(h, &set, e)?;
        let labels: BTreeSet<usize> = comp.edges().map(|edge| edge.label).collect();
        let max = order.max_of(labels).ok_or_else(|| {
            Error::InvalidArgument("essential component carries no edges".into())
        })?;
        if max != cert.essential_labels[i] {
            return Ok(false);
        }
    }
    Ok(true)
}
