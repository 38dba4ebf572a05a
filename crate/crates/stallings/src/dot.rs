//! Graphviz DOT export: one directed arc per edge, labeled with the
//! alphabet name; the base vertex is drawn double-circled.

use crate::graph::LabeledGraph;

pub fn export_dot(g: &LabeledGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        if g.base() == Some(v) {
            out.push_str(&format!("  {v} [shape=doublecircle];\n"));
        } else {
            out.push_str(&format!("  {v} [shape=circle];\n"));
        }
    }
    for e in g.edges() {
        out.push_str(&format!(
            "  {} -> {} [label=\"{}\"];\n",
            e.origin,
            e.terminus,
            g.alphabet().name(e.label)
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fold::{fold_all, wedge_of_cycles};
    use crate::graph::Alphabet;
    use crate::word::Word;

    #[test]
    fn figure_eight_dot() {
        let g = LabeledGraph::bouquet(Alphabet::new(["a", "b"]).unwrap());
        let dot = export_dot(&g);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("label=\"a\""));
        assert!(dot.contains("label=\"b\""));
    }

    #[test]
    fn commutator_pair_dot_counts() {
        let alpha = Alphabet::new(["a", "b"]).unwrap();
        let gens: Vec<Word> =
            ["abAB", "ABab"].iter().map(|t| Word::parse(t, &alpha).unwrap()).collect();
        let h = fold_all(&wedge_of_cycles(&gens, &alpha).graph);
        let dot = export_dot(&h);
        // that wedge is already immersed: seven vertices carry eight arcs
        assert_eq!(dot.matches("->").count(), 8);
        assert_eq!(dot.matches("circle").count(), 7);
    }

    #[test]
    fn empty_graph_dot() {
        let g = LabeledGraph::new(Alphabet::new(["a"]).unwrap());
        assert_eq!(export_dot(&g), "digraph G {\n}\n");
    }
}
