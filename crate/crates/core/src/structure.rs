//! Structures: production/annihilation nodes wired by flavored edges, with
//! external terminals on the past and future sides.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::assignment::{EdgeId, NodeId};
use crate::error::{Error, Result};
use crate::flavor::NodeKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Port {
    In1,
    In2,
    Out1,
    Out2,
}

impl Port {
    pub fn is_input(self) -> bool {
        matches!(self, Port::In1 | Port::In2)
    }

    /// The ports a node of `kind` exposes, inputs first.
    pub fn for_kind(kind: NodeKind) -> [Port; 3] {
        match kind {
            NodeKind::Production => [Port::In1, Port::Out1, Port::Out2],
            NodeKind::Annihilation => [Port::In1, Port::In2, Port::Out1],
        }
    }

    fn reflected(self) -> Port {
        match self {
            Port::In1 => Port::Out1,
            Port::In2 => Port::Out2,
            Port::Out1 => Port::In1,
            Port::Out2 => Port::In2,
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Port::In1 => "in1",
            Port::In2 => "in2",
            Port::Out1 => "out1",
            Port::Out2 => "out2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Past,
    Future,
}

impl Side {
    fn reflected(self) -> Side {
        match self {
            Side::Past => Side::Future,
            Side::Future => Side::Past,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum Endpoint {
    Node { node: NodeId, port: Port },
    Terminal { terminal: String, side: Side },
}

impl Endpoint {
    pub fn node(node: impl Into<NodeId>, port: Port) -> Self {
        Endpoint::Node {
            node: node.into(),
            port,
        }
    }

    pub fn terminal(name: impl Into<String>, side: Side) -> Self {
        Endpoint::Terminal {
            terminal: name.into(),
            side,
        }
    }

    pub fn node_id(&self) -> Option<&NodeId> {
        match self {
            Endpoint::Node { node, .. } => Some(node),
            Endpoint::Terminal { .. } => None,
        }
    }

    pub fn side(&self) -> Option<Side> {
        match self {
            Endpoint::Terminal { side, .. } => Some(*side),
            Endpoint::Node { .. } => None,
        }
    }

    fn reflected(&self) -> Endpoint {
        match self {
            Endpoint::Node { node, port } => Endpoint::Node {
                node: node.clone(),
                port: port.reflected(),
            },
            Endpoint::Terminal { terminal, side } => Endpoint::Terminal {
                terminal: terminal.clone(),
                side: side.reflected(),
            },
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Node { node, port } => write!(f, "{node}.{port}"),
            Endpoint::Terminal { terminal, side } => {
                let side = match side {
                    Side::Past => "past",
                    Side::Future => "future",
                };
                write!(f, "{side}:{terminal}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub from: Endpoint,
    pub to: Endpoint,
}

impl Edge {
    pub fn new(from: Endpoint, to: Endpoint) -> Self {
        Edge { from, to }
    }

    /// Both ends attach to nodes.
    pub fn is_internal(&self) -> bool {
        self.from.node_id().is_some() && self.to.node_id().is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Intervention,
    Observation,
    Hidden,
}

impl Role {
    /// The role an edge must carry given its endpoints.
    pub fn of_edge(edge: &Edge) -> Role {
        if edge.from.side() == Some(Side::Past) {
            Role::Intervention
        } else if edge.to.side() == Some(Side::Future) {
            Role::Observation
        } else {
            Role::Hidden
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Role::Intervention => "intervention",
            Role::Observation => "observation",
            Role::Hidden => "hidden",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Structure {
    nodes: BTreeMap<NodeId, NodeKind>,
    edges: BTreeMap<EdgeId, Edge>,
}

impl Structure {
    /// Assembles a structure without checking it; see [`validate_topology`].
    pub fn new(nodes: BTreeMap<NodeId, NodeKind>, edges: BTreeMap<EdgeId, Edge>) -> Self {
        Structure { nodes, edges }
    }

    pub fn nodes(&self) -> &BTreeMap<NodeId, NodeKind> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeMap<EdgeId, Edge> {
        &self.edges
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.get(id)
    }

    pub fn kind(&self, node: &str) -> Option<NodeKind> {
        self.nodes.get(node).copied()
    }

    /// For each node, the edge attached to each of its ports in
    /// [`Port::for_kind`] order. Only meaningful on a valid structure.
    pub fn incident_edges(&self) -> BTreeMap<NodeId, [Option<EdgeId>; 3]> {
        let mut out: BTreeMap<NodeId, [Option<EdgeId>; 3]> =
            self.nodes.keys().map(|n| (n.clone(), [None, None, None])).collect();
        for (id, edge) in &self.edges {
            for end in [&edge.from, &edge.to] {
                if let Endpoint::Node { node, port } = end {
                    let (Some(kind), Some(slots)) = (self.nodes.get(node), out.get_mut(node)) else {
                        continue;
                    };
                    if let Some(i) = Port::for_kind(*kind).iter().position(|p| p == port) {
                        slots[i] = Some(id.clone());
                    }
                }
            }
        }
        out
    }

    /// Internal edges as `(edge, source node, target node)`.
    pub fn adjacency(&self) -> Vec<(EdgeId, NodeId, NodeId)> {
        self.edges
            .iter()
            .filter_map(|(id, e)| match (e.from.node_id(), e.to.node_id()) {
                (Some(a), Some(b)) => Some((id.clone(), a.clone(), b.clone())),
                _ => None,
            })
            .collect()
    }

    /// Nodes in a topological order (ties broken by id), or `None` when the
    /// node graph has a cycle.
    pub fn topological_nodes(&self) -> Option<Vec<NodeId>> {
        let mut indegree: BTreeMap<&NodeId, usize> = self.nodes.keys().map(|n| (n, 0)).collect();
        let mut succ: BTreeMap<&NodeId, Vec<&NodeId>> = BTreeMap::new();
        for e in self.edges.values() {
            if let (Some(a), Some(b)) = (e.from.node_id(), e.to.node_id()) {
                if let (Some(a), Some(b)) = (self.nodes.get_key_value(a), self.nodes.get_key_value(b)) {
                    succ.entry(a.0).or_default().push(b.0);
                    *indegree.get_mut(b.0).unwrap() += 1;
                }
            }
        }
        let mut ready: BTreeSet<&NodeId> =
            indegree.iter().filter(|(_, d)| **d == 0).map(|(n, _)| *n).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(n) = ready.pop_first() {
            order.push(n.clone());
            for m in succ.get(n).into_iter().flatten() {
                let d = indegree.get_mut(m).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(m);
                }
            }
        }
        (order.len() == self.nodes.len()).then_some(order)
    }

    /// Number of nodes on the longest directed node path (0 for an empty or
    /// cyclic structure).
    pub fn longest_node_path(&self) -> usize {
        let Some(order) = self.topological_nodes() else {
            return 0;
        };
        let mut best: BTreeMap<&NodeId, usize> = BTreeMap::new();
        let adjacency = self.adjacency();
        for n in &order {
            let here = adjacency
                .iter()
                .filter(|(_, _, to)| to == n)
                .map(|(_, from, _)| best.get(from).copied().unwrap_or(1))
                .max()
                .unwrap_or(0)
                + 1;
            best.insert(n, here);
        }
        best.values().copied().max().unwrap_or(0)
    }
}

/// A structure with each edge tagged by its operational role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub structure: Structure,
    pub roles: BTreeMap<EdgeId, Role>,
}

impl Scenario {
    /// Tags every edge with the role implied by its terminals.
    pub fn new(structure: Structure) -> Self {
        let roles = structure
            .edges
            .iter()
            .map(|(id, e)| (id.clone(), Role::of_edge(e)))
            .collect();
        Scenario { structure, roles }
    }

    pub fn edges_with_role(&self, role: Role) -> Vec<EdgeId> {
        self.roles
            .iter()
            .filter(|(_, r)| **r == role)
            .map(|(e, _)| e.clone())
            .collect()
    }

    pub fn interventions(&self) -> Vec<EdgeId> {
        self.edges_with_role(Role::Intervention)
    }

    pub fn observations(&self) -> Vec<EdgeId> {
        self.edges_with_role(Role::Observation)
    }

    pub fn hidden(&self) -> Vec<EdgeId> {
        self.edges_with_role(Role::Hidden)
    }

    /// Topology violations plus any role tag that disagrees with the edge's
    /// terminals.
    pub fn validate(&self) -> ValidationReport {
        let mut report = validate_topology(&self.structure);
        for (id, edge) in &self.structure.edges {
            let expected = Role::of_edge(edge);
            match self.roles.get(id) {
                Some(&found) if found != expected => report.violations.push(Violation::RoleMismatch {
                    edge: id.clone(),
                    expected,
                    found,
                }),
                None => report.violations.push(Violation::MissingRole { edge: id.clone() }),
                _ => {}
            }
        }
        for id in self.roles.keys() {
            if !self.structure.edges.contains_key(id) {
                report.violations.push(Violation::UnknownEdge { edge: id.clone() });
            }
        }
        report
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    UnknownNode { edge: EdgeId, node: NodeId },
    InvalidPort { edge: EdgeId, node: NodeId, port: Port },
    PortUnused { node: NodeId, port: Port },
    PortReused { node: NodeId, port: Port, edges: Vec<EdgeId> },
    BadSource { edge: EdgeId },
    BadTarget { edge: EdgeId },
    Detached { edge: EdgeId },
    Cycle { nodes: Vec<NodeId> },
    Alternation { edge: EdgeId, from: NodeId, to: NodeId, kind: NodeKind },
    RoleMismatch { edge: EdgeId, expected: Role, found: Role },
    MissingRole { edge: EdgeId },
    UnknownEdge { edge: EdgeId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownNode { edge, node } => {
                write!(f, "edge {edge}: unknown node {node}")
            }
            Violation::InvalidPort { edge, node, port } => {
                write!(f, "edge {edge}: node {node} has no port {port}")
            }
            Violation::PortUnused { node, port } => {
                write!(f, "node {node}: port {port} has no edge")
            }
            Violation::PortReused { node, port, edges } => {
                let edges: Vec<_> = edges.iter().map(EdgeId::as_str).collect();
                write!(f, "node {node}: port {port} used by {}", edges.join(", "))
            }
            Violation::BadSource { edge } => {
                write!(f, "edge {edge}: source must be an output port or a past terminal")
            }
            Violation::BadTarget { edge } => {
                write!(f, "edge {edge}: target must be an input port or a future terminal")
            }
            Violation::Detached { edge } => write!(f, "edge {edge}: touches no node"),
            Violation::Cycle { nodes } => {
                let nodes: Vec<_> = nodes.iter().map(NodeId::as_str).collect();
                write!(f, "cycle through nodes {}", nodes.join(", "))
            }
            Violation::Alternation { edge, from, to, kind } => {
                write!(f, "edge {edge}: {from} and {to} are both {kind} nodes")
            }
            Violation::RoleMismatch { edge, expected, found } => {
                write!(f, "edge {edge}: role {found}, expected {expected}")
            }
            Violation::MissingRole { edge } => write!(f, "edge {edge}: no role"),
            Violation::UnknownEdge { edge } => write!(f, "role given for unknown edge {edge}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  - {v}")?;
        }
        Ok(())
    }
}

pub fn validate_topology(s: &Structure) -> ValidationReport {
    let mut violations = Vec::new();
    let mut port_users: BTreeMap<(&NodeId, Port), Vec<EdgeId>> = BTreeMap::new();

    for (id, edge) in &s.edges {
        if edge.from.node_id().is_none() && edge.to.node_id().is_none() {
            violations.push(Violation::Detached { edge: id.clone() });
        }
        let source_ok = match &edge.from {
            Endpoint::Node { port, .. } => !port.is_input(),
            Endpoint::Terminal { side, .. } => *side == Side::Past,
        };
        if !source_ok {
            violations.push(Violation::BadSource { edge: id.clone() });
        }
        let target_ok = match &edge.to {
            Endpoint::Node { port, .. } => port.is_input(),
            Endpoint::Terminal { side, .. } => *side == Side::Future,
        };
        if !target_ok {
            violations.push(Violation::BadTarget { edge: id.clone() });
        }
        for end in [&edge.from, &edge.to] {
            let Endpoint::Node { node, port } = end else {
                continue;
            };
            match s.nodes.get_key_value(node) {
                None => violations.push(Violation::UnknownNode {
                    edge: id.clone(),
                    node: node.clone(),
                }),
                Some((key, kind)) => {
                    if Port::for_kind(*kind).contains(port) {
                        port_users.entry((key, *port)).or_default().push(id.clone());
                    } else {
                        violations.push(Violation::InvalidPort {
                            edge: id.clone(),
                            node: node.clone(),
                            port: *port,
                        });
                    }
                }
            }
        }
    }

    for (node, kind) in &s.nodes {
        for port in Port::for_kind(*kind) {
            match port_users.get(&(node, port)) {
                None => violations.push(Violation::PortUnused {
                    node: node.clone(),
                    port,
                }),
                Some(edges) if edges.len() > 1 => violations.push(Violation::PortReused {
                    node: node.clone(),
                    port,
                    edges: edges.clone(),
                }),
                _ => {}
            }
        }
    }

    for (edge, from, to) in s.adjacency() {
        if let (Some(a), Some(b)) = (s.kind(from.as_str()), s.kind(to.as_str())) {
            if a == b {
                violations.push(Violation::Alternation { edge, from, to, kind: a });
            }
        }
    }

    if s.topological_nodes().is_none() {
        violations.push(Violation::Cycle {
            nodes: cyclic_nodes(s),
        });
    }

    ValidationReport { violations }
}

/// Nodes that remain after repeatedly stripping sources and sinks.
fn cyclic_nodes(s: &Structure) -> Vec<NodeId> {
    let adjacency: Vec<(NodeId, NodeId)> = s
        .adjacency()
        .into_iter()
        .filter(|(_, a, b)| s.nodes.contains_key(a) && s.nodes.contains_key(b))
        .map(|(_, a, b)| (a, b))
        .collect();
    let mut alive: BTreeSet<NodeId> = s.nodes.keys().cloned().collect();
    loop {
        let before = alive.len();
        let snapshot = alive.clone();
        alive.retain(|n| {
            let has_in = adjacency.iter().any(|(a, b)| b == n && snapshot.contains(a));
            let has_out = adjacency.iter().any(|(a, b)| a == n && snapshot.contains(b));
            has_in && has_out
        });
        if alive.len() == before {
            return alive.into_iter().collect();
        }
    }
}

/// Mirrors a scenario in time: terminal sides flip, node kinds swap, every
/// edge reverses and roles are recomputed.
pub fn reverse_time(s: &Scenario) -> Scenario {
    let nodes = s
        .structure
        .nodes
        .iter()
        .map(|(id, k)| (id.clone(), k.reflected()))
        .collect();
    let edges = s
        .structure
        .edges
        .iter()
        .map(|(id, e)| (id.clone(), Edge::new(e.to.reflected(), e.from.reflected())))
        .collect();
    Scenario::new(Structure::new(nodes, edges))
}

fn suffixed(base: &str, cell: usize) -> String {
    if cell == 1 {
        base.to_owned()
    } else {
        format!("{base}.{cell}")
    }
}

/// One production feeding two annihilations, with three prepared inputs,
/// two hidden edges and two observed outputs.
pub fn build_h_cell() -> Scenario {
    build_chain(1).expect("one cell is a valid chain")
}

/// `cells` h-cells, each cell's right output feeding the next cell's
/// production. Cell 1 uses bare ids (`c_in`, `h_left`, ...); cell `i > 1`
/// suffixes them with `.i`.
pub fn build_chain(cells: usize) -> Result<Scenario> {
    if cells == 0 {
        return Err(Error::contract("a chain needs at least one cell"));
    }
    let mut nodes = BTreeMap::new();
    let mut edges = BTreeMap::new();
    let mut add = |id: String, from: Endpoint, to: Endpoint| {
        edges.insert(EdgeId::new(id), Edge::new(from, to));
    };

    for i in 1..=cells {
        let prod = NodeId::new(suffixed("prod", i));
        let left = NodeId::new(suffixed("ann_left", i));
        let right = NodeId::new(suffixed("ann_right", i));
        nodes.insert(prod.clone(), NodeKind::Production);
        nodes.insert(left.clone(), NodeKind::Annihilation);
        nodes.insert(right.clone(), NodeKind::Annihilation);

        if i == 1 {
            add(
                "c_in".into(),
                Endpoint::terminal("c_in", Side::Past),
                Endpoint::node(prod.clone(), Port::In1),
            );
        } else {
            let prev_right = NodeId::new(suffixed("ann_right", i - 1));
            add(
                suffixed("r_out", i - 1),
                Endpoint::node(prev_right, Port::Out1),
                Endpoint::node(prod.clone(), Port::In1),
            );
        }
        add(
            suffixed("h_left", i),
            Endpoint::node(prod.clone(), Port::Out1),
            Endpoint::node(left.clone(), Port::In1),
        );
        add(
            suffixed("h_right", i),
            Endpoint::node(prod, Port::Out2),
            Endpoint::node(right.clone(), Port::In1),
        );
        let l_in = suffixed("l_in", i);
        add(
            l_in.clone(),
            Endpoint::terminal(l_in, Side::Past),
            Endpoint::node(left.clone(), Port::In2),
        );
        let l_out = suffixed("l_out", i);
        add(
            l_out.clone(),
            Endpoint::node(left, Port::Out1),
            Endpoint::terminal(l_out, Side::Future),
        );
        let r_in = suffixed("r_in", i);
        add(
            r_in.clone(),
            Endpoint::terminal(r_in, Side::Past),
            Endpoint::node(right.clone(), Port::In2),
        );
        if i == cells {
            let r_out = suffixed("r_out", i);
            add(
                r_out.clone(),
                Endpoint::node(right, Port::Out1),
                Endpoint::terminal(r_out, Side::Future),
            );
        }
    }
    Ok(Scenario::new(Structure::new(nodes, edges)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: Vec<EdgeId>) -> Vec<String> {
        v.into_iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn h_cell_shape() {
        let s = build_h_cell();
        assert_eq!(s.structure.nodes().len(), 3);
        assert_eq!(s.structure.edges().len(), 7);
        assert_eq!(ids(s.interventions()), ["c_in", "l_in", "r_in"]);
        assert_eq!(ids(s.observations()), ["l_out", "r_out"]);
        assert_eq!(ids(s.hidden()), ["h_left", "h_right"]);
        assert!(s.validate().is_valid());
    }

    #[test]
    fn chain_shapes() {
        assert_eq!(build_chain(1).unwrap(), build_h_cell());
        assert!(matches!(build_chain(0), Err(Error::Contract(_))));

        let two = build_chain(2).unwrap();
        assert_eq!(two.structure.nodes().len(), 6);
        assert_eq!(two.structure.edges().len(), 13);
        assert_eq!(
            ids(two.interventions()),
            ["c_in", "l_in", "l_in.2", "r_in", "r_in.2"]
        );
        assert_eq!(ids(two.observations()), ["l_out", "l_out.2", "r_out.2"]);

        for k in 1..=6 {
            let c = build_chain(k).unwrap();
            assert_eq!(c.structure.nodes().len(), 3 * k);
            assert_eq!(c.structure.edges().len(), 6 * k + 1);
            assert!(c.validate().is_valid(), "chain({k}): {}", c.validate());
        }
    }

    #[test]
    fn chain_path_length() {
        // prod -> ann_right -> prod.2 -> ... each cell adds two nodes on the
        // spine, the last cell's left branch is no longer than its right one
        assert_eq!(build_chain(1).unwrap().structure.longest_node_path(), 2);
        assert_eq!(build_chain(3).unwrap().structure.longest_node_path(), 6);
    }

    #[test]
    fn production_to_production_breaks_alternation() {
        let mut nodes = BTreeMap::new();
        nodes.insert(NodeId::from("p1"), NodeKind::Production);
        nodes.insert(NodeId::from("p2"), NodeKind::Production);
        let mut edges = BTreeMap::new();
        let mut edge = |id: &str, from, to| {
            edges.insert(EdgeId::from(id), Edge::new(from, to));
        };
        edge("in", Endpoint::terminal("in", Side::Past), Endpoint::node("p1", Port::In1));
        edge("link", Endpoint::node("p1", Port::Out1), Endpoint::node("p2", Port::In1));
        edge("o1", Endpoint::node("p1", Port::Out2), Endpoint::terminal("o1", Side::Future));
        edge("o2", Endpoint::node("p2", Port::Out1), Endpoint::terminal("o2", Side::Future));
        edge("o3", Endpoint::node("p2", Port::Out2), Endpoint::terminal("o3", Side::Future));
        let report = validate_topology(&Structure::new(nodes, edges));
        assert_eq!(
            report.violations,
            vec![Violation::Alternation {
                edge: EdgeId::from("link"),
                from: NodeId::from("p1"),
                to: NodeId::from("p2"),
                kind: NodeKind::Production,
            }]
        );
    }

    #[test]
    fn missing_annihilation_input() {
        let s = build_h_cell();
        let mut edges = s.structure.edges().clone();
        edges.remove("l_in");
        let report = validate_topology(&Structure::new(s.structure.nodes().clone(), edges));
        assert_eq!(
            report.violations,
            vec![Violation::PortUnused {
                node: NodeId::from("ann_left"),
                port: Port::In2,
            }]
        );
    }

    #[test]
    fn direction_ports_and_cycles() {
        let mut nodes = BTreeMap::new();
        nodes.insert(NodeId::from("p"), NodeKind::Production);
        nodes.insert(NodeId::from("a"), NodeKind::Annihilation);
        let mut edges = BTreeMap::new();
        let mut edge = |id: &str, from, to| {
            edges.insert(EdgeId::from(id), Edge::new(from, to));
        };
        edge("x", Endpoint::node("p", Port::Out1), Endpoint::node("a", Port::In1));
        edge("y", Endpoint::node("p", Port::Out2), Endpoint::node("a", Port::In2));
        edge("z", Endpoint::node("a", Port::Out1), Endpoint::node("p", Port::In1));
        edge("w", Endpoint::terminal("w", Side::Future), Endpoint::node("a", Port::Out2));
        edge("v", Endpoint::terminal("v", Side::Past), Endpoint::terminal("v", Side::Future));
        let report = validate_topology(&Structure::new(nodes, edges));
        let v = &report.violations;
        assert!(v.contains(&Violation::Cycle {
            nodes: vec![NodeId::from("a"), NodeId::from("p")]
        }));
        assert!(v.contains(&Violation::BadSource { edge: EdgeId::from("w") }));
        assert!(v.contains(&Violation::BadTarget { edge: EdgeId::from("w") }));
        assert!(v.contains(&Violation::InvalidPort {
            edge: EdgeId::from("w"),
            node: NodeId::from("a"),
            port: Port::Out2,
        }));
        assert!(v.contains(&Violation::Detached { edge: EdgeId::from("v") }));
    }

    #[test]
    fn role_mismatch_reported() {
        let mut s = build_h_cell();
        s.roles.insert(EdgeId::from("h_left"), Role::Observation);
        assert_eq!(
            s.validate().violations,
            vec![Violation::RoleMismatch {
                edge: EdgeId::from("h_left"),
                expected: Role::Hidden,
                found: Role::Observation,
            }]
        );
    }

    #[test]
    fn time_reversal() {
        let s = build_h_cell();
        let r = reverse_time(&s);
        assert_eq!(reverse_time(&r), s);
        assert_eq!(ids(r.interventions()), ["l_out", "r_out"]);
        assert_eq!(r.observations().len(), 3);
        let kinds: Vec<_> = r.structure.nodes().values().copied().collect();
        assert_eq!(kinds.iter().filter(|k| **k == NodeKind::Production).count(), 2);
        assert_eq!(kinds.iter().filter(|k| **k == NodeKind::Annihilation).count(), 1);
        assert!(r.validate().is_valid());
        assert!(reverse_time(&build_chain(3).unwrap()).validate().is_valid());
    }
}
