use std::collections::HashSet;
use std::fmt;

use super::diagram::{configuration_count, InfluenceDiagram, NodeId, NodeKind};
use crate::scalar::Scalar;

/// A single broken structural rule.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NonContiguousId { position: usize, id: NodeId },
    DuplicateName(String),
    UnknownParent { node: String, parent: NodeId },
    DuplicateParent { node: String, parent: String },
    Cycle { nodes: Vec<String> },
    UtilityHasChildren { node: String, children: Vec<String> },
    InvalidDomain { node: String, domain: Option<usize> },
    MissingTable { node: String },
    UnexpectedTable { node: String },
    SizeMismatch { node: String, expected: usize, actual: usize },
    ProbabilityOutOfRange { node: String, index: usize, value: f64 },
    RowSum { node: String, row: usize, sum: f64 },
    NonFiniteUtility { node: String, index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonContiguousId { position, id } => {
                write!(f, "node at position {position} has id {id}; ids must be contiguous from 0")
            }
            Violation::DuplicateName(name) => write!(f, "duplicate node name `{name}`"),
            Violation::UnknownParent { node, parent } => write!(f, "node `{node}` has unknown parent {parent}"),
            Violation::DuplicateParent { node, parent } => write!(f, "node `{node}` lists parent `{parent}` twice"),
            Violation::Cycle { nodes } => write!(f, "cycle through nodes {}", nodes.join(", ")),
            Violation::UtilityHasChildren { node, children } => {
                write!(f, "utility node `{node}` has children: {}", children.join(", "))
            }
            Violation::InvalidDomain { node, domain: Some(d) } => {
                write!(f, "node `{node}` has domain size {d}; chance and decision nodes need at least 2")
            }
            Violation::InvalidDomain { node, domain: None } => write!(f, "node `{node}` has no domain size"),
            Violation::MissingTable { node } => write!(f, "node `{node}` has no table"),
            Violation::UnexpectedTable { node } => write!(f, "node `{node}` must not carry this table"),
            Violation::SizeMismatch { node, expected, actual } => {
                write!(f, "table of `{node}` has {actual} entries, expected {expected}")
            }
            Violation::ProbabilityOutOfRange { node, index, value } => {
                write!(f, "probability {value} at index {index} of `{node}` is outside [0, 1]")
            }
            Violation::RowSum { node, row, sum } => write!(f, "row {row} of `{node}`: row sum {sum} ≠ 1"),
            Violation::NonFiniteUtility { node, index } => write!(f, "utility {index} of `{node}` is not finite"),
        }
    }
}

/// Every violation found in a diagram; empty iff the diagram is well formed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn validate_diagram<T: Scalar>(diagram: &InfluenceDiagram<T>) -> ValidationReport {
    let nodes = diagram.nodes();
    let n = nodes.len();
    let mut out = Vec::new();

    let mut names = HashSet::new();
    for (position, node) in nodes.iter().enumerate() {
        if node.id.0 != position {
            out.push(Violation::NonContiguousId { position, id: node.id });
        }
        if !names.insert(node.name.as_str()) {
            out.push(Violation::DuplicateName(node.name.clone()));
        }
    }
    // Later checks index nodes by id.
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }

    let mut structurally_sound = true;
    for node in nodes {
        let mut seen = HashSet::new();
        for &p in &node.parents {
            if p.0 >= n {
                out.push(Violation::UnknownParent { node: node.name.clone(), parent: p });
                structurally_sound = false;
            } else if !seen.insert(p) {
                out.push(Violation::DuplicateParent { node: node.name.clone(), parent: nodes[p.0].name.clone() });
            }
        }
        match (node.kind, node.domain) {
            (NodeKind::Utility, None) => {}
            (NodeKind::Utility, Some(_)) => {
                out.push(Violation::InvalidDomain { node: node.name.clone(), domain: node.domain })
            }
            (_, Some(d)) if d >= 2 => {}
            _ => {
                out.push(Violation::InvalidDomain { node: node.name.clone(), domain: node.domain });
                structurally_sound = false;
            }
        }
    }
    if !structurally_sound {
        return ValidationReport { violations: out };
    }

    // Kahn's algorithm; whatever is left over lies on or behind a cycle.
    let mut indegree: Vec<usize> = nodes.iter().map(|nd| nd.parents.len()).collect();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for node in nodes {
        for &p in &node.parents {
            children[p.0].push(node.id.0);
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut removed = 0;
    while let Some(i) = stack.pop() {
        removed += 1;
        for &c in &children[i] {
            indegree[c] -= 1;
            if indegree[c] == 0 {
                stack.push(c);
            }
        }
    }
    if removed < n {
        let cyclic = (0..n).filter(|&i| indegree[i] > 0).map(|i| nodes[i].name.clone()).collect();
        out.push(Violation::Cycle { nodes: cyclic });
    }

    for node in nodes {
        if node.kind == NodeKind::Utility && !children[node.id.0].is_empty() {
            out.push(Violation::UtilityHasChildren {
                node: node.name.clone(),
                children: children[node.id.0].iter().map(|&c| nodes[c].name.clone()).collect(),
            });
        }
    }

    let tol = T::TOLERANCE;
    for node in nodes {
        let name = &node.name;
        let configs = configuration_count(&diagram.parent_cards(node.id));
        let cpt = diagram.cpt(node.id);
        let util = diagram.utility(node.id);
        match node.kind {
            NodeKind::Chance => {
                if util.is_some() {
                    out.push(Violation::UnexpectedTable { node: name.clone() });
                }
                let Some(cpt) = cpt else {
                    out.push(Violation::MissingTable { node: name.clone() });
                    continue;
                };
                let k = node.domain.unwrap_or(0);
                let expected = configs.saturating_mul(k);
                if cpt.values.len() != expected {
                    out.push(Violation::SizeMismatch { node: name.clone(), expected, actual: cpt.values.len() });
                    continue;
                }
                for (index, &v) in cpt.values.iter().enumerate() {
                    let v = v.as_f64();
                    if !(v >= -tol && v <= 1.0 + tol) {
                        out.push(Violation::ProbabilityOutOfRange { node: name.clone(), index, value: v });
                    }
                }
                for (row, chunk) in cpt.values.chunks(k).enumerate() {
                    let sum: f64 = chunk.iter().map(|v| v.as_f64()).sum();
                    if (sum - 1.0).abs() > tol {
                        out.push(Violation::RowSum { node: name.clone(), row, sum });
                    }
                }
            }
            NodeKind::Decision => {
                if cpt.is_some() || util.is_some() {
                    out.push(Violation::UnexpectedTable { node: name.clone() });
                }
            }
            NodeKind::Utility => {
                if cpt.is_some() {
                    out.push(Violation::UnexpectedTable { node: name.clone() });
                }
                let Some(util) = util else {
                    out.push(Violation::MissingTable { node: name.clone() });
                    continue;
                };
                if util.values.len() != configs {
                    out.push(Violation::SizeMismatch {
                        node: name.clone(),
                        expected: configs,
                        actual: util.values.len(),
                    });
                }
                for (index, v) in util.values.iter().enumerate() {
                    if !v.is_finite() {
                        out.push(Violation::NonFiniteUtility { node: name.clone(), index });
                    }
                }
            }
        }
    }
    for cpt in diagram.cpts() {
        if cpt.owner.0 >= n {
            out.push(Violation::UnexpectedTable { node: cpt.owner.to_string() });
        }
    }
    for u in diagram.utility_tables() {
        if u.owner.0 >= n {
            out.push(Violation::UnexpectedTable { node: u.owner.to_string() });
        }
    }

    ValidationReport { violations: out }
}
