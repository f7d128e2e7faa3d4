//! Diagram output: Graphviz DOT or a fixed-width listing.
//!
//! Interventions are drawn as circles, observations as boxes and hidden
//! edges dashed; in the listing they are marked `(o)`, `[#]` and `~~~`.

use std::fmt::Write;

use helsinki_core::{Assignment, Endpoint, Role, Scenario, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph,
    Ascii,
}

fn flavor_label(a: Option<&Assignment>, edge: &helsinki_core::EdgeId) -> Option<String> {
    a.and_then(|a| a.get(edge)).map(|f| f.to_string())
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render(s: &Scenario, a: Option<&Assignment>, format: Format) -> String {
    match format {
        Format::Graph => dot(s, a),
        Format::Ascii => ascii(s, a),
    }
}

fn terminal_node(edge: &str, side: Side) -> String {
    match side {
        Side::Past => format!("past:{edge}"),
        Side::Future => format!("future:{edge}"),
    }
}

fn endpoint_node(edge: &str, end: &Endpoint) -> String {
    match end {
        Endpoint::Node { node, .. } => node.to_string(),
        Endpoint::Terminal { side, .. } => terminal_node(edge, *side),
    }
}

fn dot(s: &Scenario, a: Option<&Assignment>) -> String {
    let mut out = String::new();
    out.push_str("digraph helsinki {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [fontname=\"monospace\"];\n");
    out.push_str("  edge [fontname=\"monospace\"];\n");
    for (id, kind) in s.structure.nodes() {
        let shape = match kind {
            helsinki_core::NodeKind::Production => "triangle",
            helsinki_core::NodeKind::Annihilation => "invtriangle",
        };
        let _ = writeln!(
            out,
            "  {} [shape={shape}, label={}];",
            quote(id.as_str()),
            quote(&format!("{id}\n{kind}"))
        );
    }
    for (id, edge) in s.structure.edges() {
        for end in [&edge.from, &edge.to] {
            if let Endpoint::Terminal { side, .. } = end {
                let (shape, color) = match side {
                    Side::Past => ("circle", "gold"),
                    Side::Future => ("box", "palegreen"),
                };
                let _ = writeln!(
                    out,
                    "  {} [shape={shape}, style=filled, fillcolor={color}, label={}];",
                    quote(&terminal_node(id.as_str(), *side)),
                    quote(id.as_str())
                );
            }
        }
    }
    for (id, edge) in s.structure.edges() {
        let role = s.roles.get(id).copied().unwrap_or(Role::Hidden);
        let label = match flavor_label(a, id) {
            Some(f) => format!("{id}={f}"),
            None => id.to_string(),
        };
        let style = if role == Role::Hidden { ", style=dashed" } else { "" };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{style}];",
            quote(&endpoint_node(id.as_str(), &edge.from)),
            quote(&endpoint_node(id.as_str(), &edge.to)),
            quote(&label)
        );
    }
    out.push_str("}\n");
    out
}

fn ascii(s: &Scenario, a: Option<&Assignment>) -> String {
    let mut out = String::new();
    let order = s
        .structure
        .topological_nodes()
        .unwrap_or_else(|| s.structure.nodes().keys().cloned().collect());
    let incident = s.structure.incident_edges();
    let show = |e: &Option<helsinki_core::EdgeId>| match e {
        Some(e) => format!("{e}={}", flavor_label(a, e).unwrap_or_else(|| "?".into())),
        None => "-".into(),
    };

    out.push_str("nodes (past to future)\n");
    let width = order.iter().map(|n| n.as_str().len()).max().unwrap_or(0);
    for node in &order {
        let kind = s.structure.kind(node.as_str()).expect("node of structure");
        let slots = &incident[node];
        let (ins, outs): (Vec<_>, Vec<_>) = match kind {
            helsinki_core::NodeKind::Production => (vec![&slots[0]], vec![&slots[1], &slots[2]]),
            helsinki_core::NodeKind::Annihilation => (vec![&slots[0], &slots[1]], vec![&slots[2]]),
        };
        let ins: Vec<_> = ins.into_iter().map(show).collect();
        let outs: Vec<_> = outs.into_iter().map(show).collect();
        let glyph = match kind {
            helsinki_core::NodeKind::Production => "/\\",
            helsinki_core::NodeKind::Annihilation => "\\/",
        };
        let _ = writeln!(
            out,
            "  {glyph} {node:<width$}  {kind:<12}  {} => {}",
            ins.join(" "),
            outs.join(" ")
        );
    }

    out.push_str("edges\n");
    let width = s.structure.edges().keys().map(|e| e.as_str().len()).max().unwrap_or(0);
    for (id, edge) in s.structure.edges() {
        let role = s.roles.get(id).copied().unwrap_or(Role::Hidden);
        let mark = match role {
            Role::Intervention => "(o)",
            Role::Observation => "[#]",
            Role::Hidden => "~~~",
        };
        let flavor = flavor_label(a, id).unwrap_or_else(|| " ".into());
        let _ = writeln!(
            out,
            "  {mark} {id:<width$}  {flavor}  {} -> {}  {role}",
            edge.from, edge.to
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use helsinki_core::{build_chain, build_h_cell, EdgeId, Flavor};

    fn sample_run() -> Assignment {
        use Flavor::*;
        [
            ("c_in", A),
            ("l_in", B),
            ("r_in", C),
            ("h_left", A),
            ("h_right", A),
            ("l_out", C),
            ("r_out", B),
        ]
        .into_iter()
        .map(|(e, f)| (EdgeId::from(e), f))
        .collect()
    }

    #[test]
    fn dot_labels_edges() {
        let text = render(&build_h_cell(), Some(&sample_run()), Format::Graph);
        for label in ["l_in=B", "c_in=A", "r_in=C", "h_left=A", "h_right=A", "l_out=C", "r_out=B"] {
            assert!(text.contains(&format!("label=\"{label}\"")), "{label}");
        }
        assert_eq!(text.matches("style=dashed").count(), 2);
        assert_eq!(text, render(&build_h_cell(), Some(&sample_run()), Format::Graph));
    }

    #[test]
    fn ascii_without_assignment() {
        let text = render(&build_h_cell(), None, Format::Ascii);
        assert!(text.contains("c_in=?"));
        assert_eq!(text.matches("(o)").count(), 3);
        assert_eq!(text.matches("[#]").count(), 2);
        assert_eq!(text.matches("~~~").count(), 2);
    }

    #[test]
    fn chain_shows_six_nodes() {
        let text = render(&build_chain(2).unwrap(), None, Format::Ascii);
        assert_eq!(text.matches("production").count(), 2);
        assert_eq!(text.matches("annihilation").count(), 4);
        let dot = render(&build_chain(2).unwrap(), None, Format::Graph);
        assert!(dot.contains("\"ann_right\" -> \"prod.2\""));
    }
}
