//! JSON structure files.
//!
//! ```json
//! {
//!   "nodes": {"prod": "production", ...},
//!   "edges": {"c_in": {"from": {"terminal": "c_in", "side": "past"},
//!                      "to": {"node": "prod", "port": "in1"}}, ...},
//!   "roles": {"c_in": "intervention", ...},
//!   "assignment": {"c_in": "A"}
//! }
//! ```
//!
//! `roles` may be omitted, in which case they are derived from the
//! terminals. `assignment` is an optional partial assignment carried along
//! with the structure.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::assignment::{Assignment, EdgeId, NodeId};
use crate::error::{Error, Result};
use crate::flavor::NodeKind;
use crate::structure::{Edge, Role, Scenario, Structure, Violation};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    nodes: BTreeMap<NodeId, NodeKind>,
    edges: BTreeMap<EdgeId, Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    roles: Option<BTreeMap<EdgeId, Role>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    assignment: Option<Assignment>,
}

/// Parses a structure file, returning the scenario and any embedded
/// assignment. The structure must validate.
pub fn parse_scenario_document(text: &str) -> Result<(Scenario, Option<Assignment>)> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let structure = Structure::new(doc.nodes, doc.edges);
    let scenario = match doc.roles {
        Some(roles) => Scenario { structure, roles },
        None => Scenario::new(structure),
    };
    let mut report = scenario.validate();
    if let Some(a) = &doc.assignment {
        for edge in a.keys() {
            if scenario.structure.edge(edge.as_str()).is_none() {
                report
                    .violations
                    .push(Violation::UnknownEdge { edge: edge.clone() });
            }
        }
    }
    report.into_result()?;
    Ok((scenario, doc.assignment))
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    parse_scenario_document(text).map(|(s, _)| s)
}

pub fn serialize_scenario(s: &Scenario) -> String {
    serialize_scenario_with(s, None)
}

pub fn serialize_scenario_with(s: &Scenario, assignment: Option<&Assignment>) -> String {
    let doc = Document {
        nodes: s.structure.nodes().clone(),
        edges: s.structure.edges().clone(),
        roles: Some(s.roles.clone()),
        assignment: assignment.cloned(),
    };
    serde_json::to_string_pretty(&doc).expect("structure documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flavor::Flavor;
    use crate::structure::{build_chain, build_h_cell, reverse_time, Port};

    #[test]
    fn round_trip() {
        for s in [build_h_cell(), build_chain(3).unwrap(), reverse_time(&build_h_cell())] {
            assert_eq!(parse_scenario(&serialize_scenario(&s)).unwrap(), s);
        }
    }

    #[test]
    fn field_names() {
        let text = serialize_scenario(&build_h_cell());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["nodes"]["prod"], "production");
        assert_eq!(v["edges"]["c_in"]["from"]["terminal"], "c_in");
        assert_eq!(v["edges"]["c_in"]["from"]["side"], "past");
        assert_eq!(v["edges"]["c_in"]["to"]["node"], "prod");
        assert_eq!(v["edges"]["c_in"]["to"]["port"], "in1");
        assert_eq!(v["roles"]["h_left"], "hidden");
    }

    #[test]
    fn roles_are_optional() {
        let mut v: serde_json::Value =
            serde_json::from_str(&serialize_scenario(&build_h_cell())).unwrap();
        v.as_object_mut().unwrap().remove("roles");
        assert_eq!(parse_scenario(&v.to_string()).unwrap(), build_h_cell());
    }

    #[test]
    fn missing_port_is_reported() {
        let mut v: serde_json::Value =
            serde_json::from_str(&serialize_scenario(&build_h_cell())).unwrap();
        v["edges"].as_object_mut().unwrap().remove("r_in");
        v["roles"].as_object_mut().unwrap().remove("r_in");
        match parse_scenario(&v.to_string()) {
            Err(Error::Invalid(report)) => {
                assert_eq!(
                    report.violations,
                    vec![Violation::PortUnused {
                        node: NodeId::from("ann_right"),
                        port: Port::In2,
                    }]
                );
                assert!(report.to_string().contains("port in2"));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn embedded_assignment() {
        let a: Assignment = [(EdgeId::from("c_in"), Flavor::A)].into_iter().collect();
        let text = serialize_scenario_with(&build_h_cell(), Some(&a));
        let (_, parsed) = parse_scenario_document(&text).unwrap();
        assert_eq!(parsed, Some(a));

        let bad = text.replace("\"c_in\": \"A\"", "\"c_in\": \"D\"");
        assert_ne!(bad, text);
        match parse_scenario_document(&bad) {
            Err(Error::Parse { line, message, .. }) => {
                assert!(line > 0);
                assert!(message.contains("unknown flavor"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_has_position() {
        match parse_scenario("{\n  \"nodes\": {\n    \"p\": \"proton\"\n  }\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
