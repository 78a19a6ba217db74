use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::validate::{validate_diagram, ValidationReport};
use super::ModelError;
use crate::scalar::Scalar;

/// Dense index of a node within its diagram (or the credal network derived
/// from it; translated nodes keep their ids).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Chance,
    Decision,
    Utility,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeKind::Chance => "chance",
            NodeKind::Decision => "decision",
            NodeKind::Utility => "utility",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagramNode {
    pub id: NodeId,
    pub name: String,
    pub kind: NodeKind,
    pub parents: Vec<NodeId>,
    /// Number of categories; `None` for utility nodes.
    pub domain: Option<usize>,
}

/// Conditional probability table. One row per parent configuration, the
/// owner's category varying fastest within a row.
#[derive(Clone, Debug, PartialEq)]
pub struct Cpt<T> {
    pub owner: NodeId,
    pub values: Vec<T>,
}

/// Utility values, one per parent configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct UtilityTable<T> {
    pub owner: NodeId,
    pub values: Vec<T>,
}

/// Number of joint configurations of `cards`; saturates on overflow.
pub fn configuration_count(cards: &[usize]) -> usize {
    cards.iter().try_fold(1usize, |acc, &c| acc.checked_mul(c)).unwrap_or(usize::MAX)
}

/// Row-major index of `values` over `cards`, last position varying fastest.
pub fn encode_configuration(cards: &[usize], values: &[usize]) -> usize {
    debug_assert_eq!(cards.len(), values.len());
    cards.iter().zip(values).fold(0, |acc, (&c, &v)| acc * c + v)
}

/// Inverse of [`encode_configuration`].
pub fn decode_configuration(cards: &[usize], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; cards.len()];
    for (slot, &c) in out.iter_mut().zip(cards).rev() {
        *slot = index % c;
        index /= c;
    }
    out
}

/// A limited memory influence diagram.
///
/// Instances built through [`InfluenceDiagram::new`] or [`DiagramBuilder`]
/// always satisfy every structural invariant; [`InfluenceDiagram::from_parts_unchecked`]
/// exists so that malformed input can still be inspected by
/// [`validate_diagram`].
#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceDiagram<T> {
    nodes: Vec<DiagramNode>,
    cpts: BTreeMap<NodeId, Cpt<T>>,
    utilities: BTreeMap<NodeId, UtilityTable<T>>,
}

impl<T: Scalar> InfluenceDiagram<T> {
    pub fn new(
        nodes: Vec<DiagramNode>,
        cpts: Vec<Cpt<T>>,
        utilities: Vec<UtilityTable<T>>,
    ) -> Result<Self, ModelError> {
        let diagram = Self::from_parts_unchecked(nodes, cpts, utilities);
        let report = validate_diagram(&diagram);
        if report.is_empty() {
            Ok(diagram)
        } else {
            Err(ModelError::Invalid(report))
        }
    }

    pub fn from_parts_unchecked(nodes: Vec<DiagramNode>, cpts: Vec<Cpt<T>>, utilities: Vec<UtilityTable<T>>) -> Self {
        Self {
            nodes,
            cpts: cpts.into_iter().map(|c| (c.owner, c)).collect(),
            utilities: utilities.into_iter().map(|u| (u.owner, u)).collect(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate_diagram(self)
    }

    pub fn nodes(&self) -> &[DiagramNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &DiagramNode {
        &self.nodes[id.0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().find(|n| n.name == name).map(|n| n.id)
    }

    pub fn name_index(&self) -> HashMap<&str, NodeId> {
        self.nodes.iter().map(|n| (n.name.as_str(), n.id)).collect()
    }

    pub fn cpt(&self, id: NodeId) -> Option<&Cpt<T>> {
        self.cpts.get(&id)
    }

    pub fn utility(&self, id: NodeId) -> Option<&UtilityTable<T>> {
        self.utilities.get(&id)
    }

    pub fn cpts(&self) -> impl Iterator<Item = &Cpt<T>> {
        self.cpts.values()
    }

    pub fn utility_tables(&self) -> impl Iterator<Item = &UtilityTable<T>> {
        self.utilities.values()
    }

    pub fn ids_of(&self, kind: NodeKind) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.iter().filter(move |n| n.kind == kind).map(|n| n.id)
    }

    pub fn decisions(&self) -> Vec<NodeId> {
        self.ids_of(NodeKind::Decision).collect()
    }

    pub fn chance_nodes(&self) -> Vec<NodeId> {
        self.ids_of(NodeKind::Chance).collect()
    }

    pub fn utility_nodes(&self) -> Vec<NodeId> {
        self.ids_of(NodeKind::Utility).collect()
    }

    pub fn domain_size(&self, id: NodeId) -> usize {
        self.nodes[id.0].domain.unwrap_or(0)
    }

    pub fn parent_cards(&self, id: NodeId) -> Vec<usize> {
        self.nodes[id.0].parents.iter().map(|&p| self.domain_size(p)).collect()
    }

    /// Number of parent configurations of `id`.
    pub fn parent_configurations(&self, id: NodeId) -> usize {
        configuration_count(&self.parent_cards(id))
    }

    pub fn children(&self, id: NodeId) -> Vec<NodeId> {
        self.nodes.iter().filter(|n| n.parents.contains(&id)).map(|n| n.id).collect()
    }

    /// Global minimum and maximum over every utility entry, `None` when the
    /// diagram has no utility values at all.
    pub fn utility_range(&self) -> Option<(T, T)> {
        self.utilities.values().flat_map(|u| u.values.iter().copied()).fold(None, |acc, v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
    }

    /// Human-readable `parent=value,...` label of a parent configuration.
    pub fn configuration_label(&self, id: NodeId, config: usize) -> String {
        let node = &self.nodes[id.0];
        let values = decode_configuration(&self.parent_cards(id), config);
        node.parents
            .iter()
            .zip(values)
            .map(|(p, v)| format!("{}={}", self.nodes[p.0].name, v))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Same diagram with every utility table passed through `f`.
    pub fn map_utilities(&self, mut f: impl FnMut(T) -> T) -> Self {
        let utilities = self
            .utilities
            .iter()
            .map(|(&id, u)| (id, UtilityTable { owner: u.owner, values: u.values.iter().map(|&v| f(v)).collect() }))
            .collect();
        Self { nodes: self.nodes.clone(), cpts: self.cpts.clone(), utilities }
    }

    /// Converts every table to another scalar type.
    pub fn cast<U: Scalar>(&self) -> InfluenceDiagram<U> {
        let conv = |v: &T| U::of(v.as_f64());
        InfluenceDiagram {
            nodes: self.nodes.clone(),
            cpts: self
                .cpts
                .iter()
                .map(|(&id, c)| (id, Cpt { owner: c.owner, values: c.values.iter().map(conv).collect() }))
                .collect(),
            utilities: self
                .utilities
                .iter()
                .map(|(&id, u)| (id, UtilityTable { owner: u.owner, values: u.values.iter().map(conv).collect() }))
                .collect(),
        }
    }
}

/// Incremental construction of a diagram by name; parents must be added
/// before their children.
#[derive(Debug)]
pub struct DiagramBuilder<T> {
    nodes: Vec<DiagramNode>,
    cpts: Vec<Cpt<T>>,
    utilities: Vec<UtilityTable<T>>,
}

impl<T: Scalar> Default for DiagramBuilder<T> {
    fn default() -> Self {
        Self { nodes: Vec::new(), cpts: Vec::new(), utilities: Vec::new() }
    }
}

impl<T: Scalar> DiagramBuilder<T> {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, name: &str, kind: NodeKind, parents: &[NodeId], domain: Option<usize>) -> NodeId {
        let id = NodeId(self.nodes.len());
        self.nodes.push(DiagramNode { id, name: name.to_owned(), kind, parents: parents.to_vec(), domain });
        id
    }

    pub fn chance(&mut self, name: &str, domain: usize, parents: &[NodeId], cpt: Vec<T>) -> NodeId {
        let id = self.push(name, NodeKind::Chance, parents, Some(domain));
        self.cpts.push(Cpt { owner: id, values: cpt });
        id
    }

    pub fn decision(&mut self, name: &str, domain: usize, parents: &[NodeId]) -> NodeId {
        self.push(name, NodeKind::Decision, parents, Some(domain))
    }

    pub fn utility(&mut self, name: &str, parents: &[NodeId], values: Vec<T>) -> NodeId {
        let id = self.push(name, NodeKind::Utility, parents, None);
        self.utilities.push(UtilityTable { owner: id, values });
        id
    }

    pub fn build(self) -> Result<InfluenceDiagram<T>, ModelError> {
        InfluenceDiagram::new(self.nodes, self.cpts, self.utilities)
    }
}
