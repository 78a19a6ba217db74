//! Credal networks and the translation of a normalized influence diagram into
//! one whose summed utility marginals equal the normalized expected utility.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::factor::{eliminate_all, min_degree_order, Factor};
use crate::graph::{ancestors, topological_order};
use crate::model::{configuration_count, InfluenceDiagram, NodeId, NodeKind, Strategy};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CredalError {
    #[error("utility entry {value} of `{node}` is outside [0, 1]; normalize the diagram first")]
    NotNormalized { node: String, value: f64 },
    #[error("selection does not cover `{0}`")]
    IncompleteSelection(String),
    #[error("invalid credal network: {0}")]
    Invalid(String),
}

/// Local credal set specification of a node.
#[derive(Clone, Debug, PartialEq)]
pub enum CredalSpec<T> {
    /// Ordinary conditional probability table.
    Precise(Vec<T>),
    /// Former decision node: any distribution per parent configuration.
    FreeDecision,
    /// Finitely many vertex distributions per parent configuration.
    VertexList(Vec<Vec<Vec<T>>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CredalNode<T> {
    pub id: NodeId,
    pub name: String,
    pub parents: Vec<NodeId>,
    pub domain: usize,
    pub spec: CredalSpec<T>,
}

/// Objective term: marginal probability of `category` at `node`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Query {
    pub node: NodeId,
    pub category: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CredalNetwork<T> {
    nodes: Vec<CredalNode<T>>,
    queries: Vec<Query>,
}

impl<T: Scalar> CredalNetwork<T> {
    pub fn new(nodes: Vec<CredalNode<T>>, queries: Vec<Query>) -> Result<Self, CredalError> {
        let net = Self { nodes, queries };
        net.check()?;
        Ok(net)
    }

    fn check(&self) -> Result<(), CredalError> {
        let tol = T::tol();
        let n = self.nodes.len();
        if self.nodes.iter().enumerate().any(|(i, node)| node.id.0 != i || node.parents.iter().any(|p| p.0 >= n)) {
            return Err(CredalError::Invalid("node ids must be contiguous and parents known".into()));
        }
        if topological_order(&self.parent_lists()).is_none() {
            return Err(CredalError::Invalid("graph has a cycle".into()));
        }
        for node in &self.nodes {
            let rows = self.parent_configurations(node.id);
            let valid_row = |row: &[T]| {
                row.iter().all(|&v| v >= -tol && v <= T::one() + tol)
                    && (row.iter().copied().sum::<T>() - T::one()).abs() <= tol
            };
            match &node.spec {
                CredalSpec::Precise(values) => {
                    if values.len() != rows * node.domain || !values.chunks(node.domain).all(valid_row) {
                        return Err(CredalError::Invalid(format!("table of `{}` is not a CPT", node.name)));
                    }
                }
                CredalSpec::FreeDecision => {}
                CredalSpec::VertexList(sets) => {
                    let ok = sets.len() == rows
                        && sets
                            .iter()
                            .all(|set| !set.is_empty() && set.iter().all(|v| v.len() == node.domain && valid_row(v)));
                    if !ok {
                        return Err(CredalError::Invalid(format!("vertex list of `{}` is malformed", node.name)));
                    }
                }
            }
        }
        for q in &self.queries {
            if q.node.0 >= n {
                return Err(CredalError::Invalid(format!("query on unknown node {}", q.node)));
            }
            let node = &self.nodes[q.node.0];
            if q.category >= node.domain || !matches!(node.spec, CredalSpec::Precise(_)) {
                return Err(CredalError::Invalid(format!("query on `{}` is not a precise category", node.name)));
            }
            if self.nodes.iter().any(|m| m.parents.contains(&q.node)) {
                return Err(CredalError::Invalid(format!("query node `{}` has children", node.name)));
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> &[CredalNode<T>] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &CredalNode<T> {
        &self.nodes[id.0]
    }

    pub fn queries(&self) -> &[Query] {
        &self.queries
    }

    pub fn parent_lists(&self) -> Vec<Vec<NodeId>> {
        self.nodes.iter().map(|n| n.parents.clone()).collect()
    }

    pub fn parent_cards(&self, id: NodeId) -> Vec<usize> {
        self.nodes[id.0].parents.iter().map(|p| self.nodes[p.0].domain).collect()
    }

    pub fn parent_configurations(&self, id: NodeId) -> usize {
        configuration_count(&self.parent_cards(id))
    }

    /// Replaces the precise table of a non-query node by a finite credal set.
    pub fn with_vertex_list(mut self, id: NodeId, vertices: Vec<Vec<Vec<T>>>) -> Result<Self, CredalError> {
        if id.0 >= self.nodes.len() || self.queries.iter().any(|q| q.node == id) {
            return Err(CredalError::Invalid(format!("cannot attach a vertex list to {id}")));
        }
        if !matches!(self.nodes[id.0].spec, CredalSpec::Precise(_)) {
            return Err(CredalError::Invalid(format!("`{}` is not a precise chance node", self.nodes[id.0].name)));
        }
        self.nodes[id.0].spec = CredalSpec::VertexList(vertices);
        self.check()?;
        Ok(self)
    }
}

/// Concrete choice inside every imprecise local set: a distribution table per
/// former decision and a vertex index per (vertex-list node, parent
/// configuration).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StrategySelection<T> {
    pub decisions: BTreeMap<NodeId, Vec<T>>,
    pub vertices: BTreeMap<NodeId, Vec<usize>>,
}

impl<T: Scalar> StrategySelection<T> {
    pub fn from_strategy(strategy: &Strategy<T>) -> Self {
        Self {
            decisions: strategy.policies().map(|p| (p.decision, p.table.clone())).collect(),
            vertices: BTreeMap::new(),
        }
    }
}

/// Builds the credal network of a normalized diagram: chance nodes keep their
/// tables, each utility node becomes a binary node with p(u | π) equal to the
/// normalized utility, and each decision node becomes a free node.
pub fn limid_to_credal<T: Scalar>(normalized: &InfluenceDiagram<T>) -> Result<CredalNetwork<T>, CredalError> {
    let mut nodes = Vec::with_capacity(normalized.len());
    let mut queries = Vec::new();
    for node in normalized.nodes() {
        let spec = match node.kind {
            NodeKind::Chance => CredalSpec::Precise(normalized.cpt(node.id).expect("validated").values.clone()),
            NodeKind::Decision => CredalSpec::FreeDecision,
            NodeKind::Utility => {
                let table = normalized.utility(node.id).expect("validated");
                let mut rows = Vec::with_capacity(table.values.len() * 2);
                for &f in &table.values {
                    if !(f >= T::zero() && f <= T::one()) {
                        return Err(CredalError::NotNormalized { node: node.name.clone(), value: f.as_f64() });
                    }
                    rows.push(f);
                    rows.push(T::one() - f);
                }
                queries.push(Query { node: node.id, category: 0 });
                CredalSpec::Precise(rows)
            }
        };
        nodes.push(CredalNode {
            id: node.id,
            name: node.name.clone(),
            parents: node.parents.clone(),
            domain: node.domain.unwrap_or(2),
            spec,
        });
    }
    CredalNetwork::new(nodes, queries)
}

/// The query node together with its strict ancestors.
pub fn relevant_ancestors<T: Scalar>(net: &CredalNetwork<T>, query: NodeId) -> BTreeSet<NodeId> {
    let mut set = ancestors(&net.parent_lists(), query);
    set.insert(query);
    set
}

fn local_table<T: Scalar>(
    net: &CredalNetwork<T>,
    selection: &StrategySelection<T>,
    id: NodeId,
) -> Result<Vec<T>, CredalError> {
    let node = net.node(id);
    match &node.spec {
        CredalSpec::Precise(values) => Ok(values.clone()),
        CredalSpec::FreeDecision => {
            let table =
                selection.decisions.get(&id).ok_or_else(|| CredalError::IncompleteSelection(node.name.clone()))?;
            if table.len() != net.parent_configurations(id) * node.domain {
                return Err(CredalError::IncompleteSelection(node.name.clone()));
            }
            Ok(table.clone())
        }
        CredalSpec::VertexList(sets) => {
            let chosen =
                selection.vertices.get(&id).ok_or_else(|| CredalError::IncompleteSelection(node.name.clone()))?;
            if chosen.len() != sets.len() || chosen.iter().zip(sets).any(|(&v, set)| v >= set.len()) {
                return Err(CredalError::IncompleteSelection(node.name.clone()));
            }
            Ok(chosen.iter().zip(sets).flat_map(|(&v, set)| set[v].iter().copied()).collect())
        }
    }
}

/// Marginal probability of every query under the precise network picked by
/// `selection`.
pub fn query_marginals<T: Scalar>(
    net: &CredalNetwork<T>,
    selection: &StrategySelection<T>,
) -> Result<Vec<(Query, T)>, CredalError> {
    let parents = net.parent_lists();
    net.queries()
        .iter()
        .map(|&q| {
            let mut factors = Vec::new();
            let mut scopes = Vec::new();
            for x in ancestors(&parents, q.node) {
                let mut vars: Vec<usize> = net.node(x).parents.iter().map(|p| p.0).collect();
                vars.push(x.0);
                let mut cards = net.parent_cards(x);
                cards.push(net.node(x).domain);
                scopes.push(vars.clone());
                factors.push(Factor::new(vars, cards, local_table(net, selection, x)?));
            }
            let qn = net.node(q.node);
            let mut vars: Vec<usize> = qn.parents.iter().map(|p| p.0).collect();
            vars.push(q.node.0);
            let mut cards = net.parent_cards(q.node);
            cards.push(qn.domain);
            let target = Factor::new(vars, cards, local_table(net, selection, q.node)?).restrict(q.node.0, q.category);
            scopes.push(target.vars().to_vec());
            factors.push(target);
            let order = min_degree_order(&scopes);
            Ok((q, eliminate_all(factors, &order)))
        })
        .collect()
}

/// Sum of query marginals; equals the normalized expected utility of the
/// strategy behind `selection`.
pub fn sum_marginals<T: Scalar>(net: &CredalNetwork<T>, selection: &StrategySelection<T>) -> Result<T, CredalError> {
    Ok(query_marginals(net, selection)?.into_iter().map(|(_, p)| p).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::bridge_attack;
    use crate::model::{expected_utility, normalize_utilities, Strategy};

    fn bridge_net() -> (crate::model::fixtures::BridgeAttack<f64>, InfluenceDiagram<f64>, CredalNetwork<f64>) {
        let f = bridge_attack::<f64>();
        let (norm, _) = normalize_utilities(&f.diagram).unwrap();
        let net = limid_to_credal(&norm).unwrap();
        (f, norm, net)
    }

    #[test]
    fn bridge_attack_translation_shape() {
        let (f, _, net) = bridge_net();
        let qs: Vec<NodeId> = net.queries().iter().map(|q| q.node).collect();
        assert_eq!(qs, vec![f.u1, f.u2, f.u3]);
        assert!(net.queries().iter().all(|q| q.category == 0 && net.node(q.node).domain == 2));
        assert_eq!(net.node(f.d1).spec, CredalSpec::FreeDecision);
        assert_eq!(net.node(f.d2).spec, CredalSpec::FreeDecision);
        for c in [f.c1, f.c2, f.c3] {
            assert!(matches!(net.node(c).spec, CredalSpec::Precise(_)));
        }
    }

    #[test]
    fn utility_rows_use_complement() {
        let (f, norm, net) = bridge_net();
        let CredalSpec::Precise(rows) = &net.node(f.u3).spec else { panic!() };
        // profit_of_goal: 200 is the global max, -60 the global min
        assert_eq!(&rows[0..2], &[1.0, 0.0]);
        let f_prime = norm.utility(f.u3).unwrap().values[1];
        assert_eq!(rows[2], f_prime);
        assert_eq!(rows[3], 1.0 - f_prime);
        for pair in rows.chunks(2) {
            assert_eq!(pair[0] + pair[1], 1.0);
        }
    }

    #[test]
    fn quarter_utility_row() {
        let mut b = crate::model::DiagramBuilder::<f64>::new();
        let d = b.decision("d", 2, &[]);
        b.utility("u", &[d], vec![0.25, 1.0]);
        b.utility("v", &[d], vec![0.0, 0.5]);
        let net = limid_to_credal(&b.build().unwrap()).unwrap();
        let CredalSpec::Precise(rows) = &net.node(NodeId(1)).spec else { panic!() };
        assert_eq!(&rows[0..2], &[0.25, 0.75]);
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        let f = bridge_attack::<f64>();
        assert!(matches!(limid_to_credal(&f.diagram), Err(CredalError::NotNormalized { .. })));
    }

    #[test]
    fn marginal_sum_equals_normalized_eu() {
        let (f, norm, net) = bridge_net();
        for code in 0..4 {
            let s = Strategy::from_encoding(&f.diagram, &[code / 2, code % 2]).unwrap();
            let sel = StrategySelection::from_strategy(&s);
            let got = sum_marginals(&net, &sel).unwrap();
            assert!((got - expected_utility(&norm, &s)).abs() < 1e-9);
            for (_, p) in query_marginals(&net, &sel).unwrap() {
                assert!((0.0..=1.0).contains(&p));
            }
        }
    }

    #[test]
    fn root_query_marginal() {
        let net = CredalNetwork::new(
            vec![CredalNode {
                id: NodeId(0),
                name: "u".into(),
                parents: vec![],
                domain: 2,
                spec: CredalSpec::Precise(vec![0.3, 0.7]),
            }],
            vec![Query { node: NodeId(0), category: 0 }],
        )
        .unwrap();
        assert_eq!(sum_marginals(&net, &StrategySelection::default()).unwrap(), 0.3);
    }

    #[test]
    fn incomplete_selection_names_node() {
        let (_, _, net) = bridge_net();
        let err = sum_marginals(&net, &StrategySelection::default()).unwrap_err();
        assert_eq!(err, CredalError::IncompleteSelection("do_ground_attack".into()));
    }

    #[test]
    fn relevant_sets() {
        let (f, _, net) = bridge_net();
        let expect: BTreeSet<_> = [f.d1, f.d2, f.c1, f.c2, f.c3, f.u3].into();
        assert_eq!(relevant_ancestors(&net, f.u3), expect);
        assert_eq!(relevant_ancestors(&net, f.u1), [f.d1, f.u1].into());
        assert_eq!(relevant_ancestors(&net, f.d2), [f.d2].into());
    }

    #[test]
    fn vertex_lists_select_rows() {
        let (f, _, net) = bridge_net();
        let CredalSpec::Precise(c2) = net.node(f.c2).spec.clone() else { panic!() };
        let vertices = vec![vec![c2[0..2].to_vec(), vec![0.2, 0.8]], vec![c2[2..4].to_vec()]];
        let imprecise = net.clone().with_vertex_list(f.c2, vertices).unwrap();
        let s = Strategy::from_encoding(&f.diagram, &[0, 0]).unwrap();
        let mut sel = StrategySelection::from_strategy(&s);
        assert!(sum_marginals(&imprecise, &sel).is_err());
        sel.vertices.insert(f.c2, vec![0, 0]);
        let same = sum_marginals(&imprecise, &sel).unwrap();
        assert!((same - sum_marginals(&net, &StrategySelection::from_strategy(&s)).unwrap()).abs() < 1e-12);
        sel.vertices.insert(f.c2, vec![1, 0]);
        assert!(sum_marginals(&imprecise, &sel).unwrap() != same);
        assert!(net.clone().with_vertex_list(f.c2, vec![vec![vec![0.5, 0.6]], vec![vec![1.0, 0.0]]]).is_err());
    }
}
