use super::ColoredGraph;

const PALETTE: [&str; 8] = ["#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999"];

/// Graphviz text: white vertices `w<i>`, black vertices `b<i>`, one edge
/// per (color, white) in serialization order.
pub fn export_dot(g: &ColoredGraph) -> String {
    let mut s = String::from("graph colored {\n");
    for w in 1..=g.pairs() {
        s.push_str(&format!("  w{w} [shape=circle, style=filled, fillcolor=\"white\", label=\"{w}\"];\n"));
    }
    for b in 1..=g.pairs() {
        s.push_str(&format!(
            "  b{b} [shape=circle, style=filled, fillcolor=\"black\", fontcolor=\"white\", label=\"{b}\"];\n"
        ));
    }
    for e in g.edges() {
        let color = PALETTE[e.color % PALETTE.len()];
        s.push_str(&format!("  w{} -- b{} [color=\"{color}\", label=\"{}\"];\n", e.white, e.black, e.color));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dipole_declarations() {
        let text = export_dot(&ColoredGraph::dipole(3));
        let nodes = text.lines().filter(|l| l.trim_start().starts_with(['w', 'b']) && !l.contains("--")).count();
        let edges = text.lines().filter(|l| l.contains("--")).count();
        assert_eq!((nodes, edges), (2, 3));
        assert_eq!(text, export_dot(&ColoredGraph::dipole(3)));
    }
}
