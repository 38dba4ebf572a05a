//! JSON serialization for graphs, lines, and certificates, plus file
//! helpers. The graph format is fixed field-for-field:
//! `{"alphabet":["a","b"],"base":0,"vertices":[0,1],"edges":[{"id":0,"from":0,"to":1,"label":0}]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::echelon::EchelonCertificate;
use crate::graph::{Alphabet, LabeledGraph};
use crate::order::LineSpec;
use crate::word::Word;
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    alphabet: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    base: Option<usize>,
    vertices: Vec<usize>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    id: usize,
    from: usize,
    to: usize,
    label: usize,
}

/// Compact single-line JSON with fixed field order.
pub fn graph_to_json(g: &LabeledGraph) -> String {
    let doc = GraphDoc {
        alphabet: g.alphabet().names().map(str::to_owned).collect(),
        base: g.base(),
        vertices: g.vertices().collect(),
        edges: g
            .edges()
            .map(|e| EdgeDoc { id: e.id, from: e.origin, to: e.terminus, label: e.label })
            .collect(),
    };
    serde_json::to_string(&doc).expect("graph serialization cannot fail")
}

/// Parses and validates a graph document; all referential integrity
/// checks run through the ordinary constructors.
pub fn graph_from_json(text: &str) -> Result<LabeledGraph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: e.column(),
        message: e.to_string(),
    })?;
    let alphabet = Alphabet::new(doc.alphabet)?;
    let mut g = LabeledGraph::new(alphabet);
    for v in doc.vertices {
        g.add_vertex(v)?;
    }
    for e in doc.edges {
        g.add_edge(e.id, e.from, e.to, e.label)?;
    }
    g.set_base(doc.base)?;
    Ok(g)
}

pub fn read_graph(path: &Path) -> Result<LabeledGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    graph_from_json(&text)
}

pub fn write_graph(path: &Path, g: &LabeledGraph) -> Result<()> {
    std::fs::write(path, graph_to_json(g) + "\n").map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[derive(Serialize, Deserialize)]
struct LineDoc {
    left: String,
    mid: String,
    marked: usize,
    right: String,
}

/// Line format: `{"left":"a","mid":"abbbab","marked":4,"right":"a"}` with
/// uppercase letters denoting inverses.
pub fn line_to_json(line: &LineSpec, alphabet: &Alphabet) -> String {
    let doc = LineDoc {
        left: line.left.to_text(alphabet),
        mid: line.mid.to_text(alphabet),
        marked: line.marked,
        right: line.right.to_text(alphabet),
    };
    serde_json::to_string(&doc).expect("line serialization cannot fail")
}

pub fn line_from_json(text: &str, alphabet: &Alphabet) -> Result<LineSpec> {
    let doc: LineDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: e.column(),
        message: e.to_string(),
    })?;
    LineSpec::new(
        Word::parse(&doc.left, alphabet)?,
        Word::parse(&doc.mid, alphabet)?,
        doc.marked,
        Word::parse(&doc.right, alphabet)?,
    )
}

pub fn read_line_spec(path: &Path, alphabet: &Alphabet) -> Result<LineSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    line_from_json(&text, alphabet)
}

#[derive(Serialize)]
struct CertificateDoc {
    essential: Vec<usize>,
    labels: Vec<String>,
    arcs: Vec<Vec<usize>>,
    components: Vec<Vec<usize>>,
    prefixes: Vec<Vec<usize>>,
    label_order: Vec<String>,
}

/// Certificate export: essential edge ids in order, their label names,
/// the arc/component/prefix edge id lists, and the label order.
pub fn certificate_to_json(cert: &EchelonCertificate, alphabet: &Alphabet) -> String {
    let doc = CertificateDoc {
        essential: cert.essential.clone(),
        labels: cert
            .essential_labels
            .iter()
            .map(|&l| alphabet.name(l).to_owned())
            .collect(),
        arcs: cert.arcs.iter().map(|a| a.edge_ids()).collect(),
        components: cert
            .components
            .iter()
            .map(|c| c.edge_ids().collect())
            .collect(),
        prefixes: cert.prefixes.iter().map(|p| p.edge_ids().collect()).collect(),
        label_order: cert
            .label_order
            .sequence()
            .into_iter()
            .map(|l| alphabet.name(l).to_owned())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("certificate serialization cannot fail")
}
