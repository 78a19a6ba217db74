use std::collections::{BTreeMap, HashMap};

use limid::model::{
    configuration_count, encode_configuration, Cpt, DiagramNode, InfluenceDiagram, NodeId, NodeKind, Policy, Strategy,
    UtilityTable,
};
use limid::Diagram;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// On-disk diagram: nodes in id order, tables keyed by node name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDocument {
    pub nodes: Vec<NodeDocument>,
    #[serde(default)]
    pub cpts: BTreeMap<String, Vec<f64>>,
    #[serde(default)]
    pub utilities: BTreeMap<String, Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDocument {
    pub name: String,
    pub kind: NodeKind,
    #[serde(default)]
    pub parents: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<usize>,
}

impl DiagramDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))
    }

    pub fn from_diagram(diagram: &Diagram) -> Self {
        let nodes = diagram
            .nodes()
            .iter()
            .map(|n| NodeDocument {
                name: n.name.clone(),
                kind: n.kind,
                parents: n.parents.iter().map(|&p| diagram.node(p).name.clone()).collect(),
                domain: n.domain,
            })
            .collect();
        let name = |id: NodeId| diagram.node(id).name.clone();
        Self {
            nodes,
            cpts: diagram.cpts().map(|c| (name(c.owner), c.values.clone())).collect(),
            utilities: diagram.utility_tables().map(|u| (name(u.owner), u.values.clone())).collect(),
        }
    }

    /// Builds and validates the diagram; errors name the offending key.
    pub fn to_diagram(&self) -> Result<Diagram, CliError> {
        let mut ids: HashMap<&str, NodeId> = HashMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if ids.insert(n.name.as_str(), NodeId(i)).is_some() {
                return Err(CliError::Format(format!("nodes[{i}].name: duplicate node `{}`", n.name)));
            }
        }
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for (i, n) in self.nodes.iter().enumerate() {
            let parents = n
                .parents
                .iter()
                .map(|p| {
                    ids.get(p.as_str())
                        .copied()
                        .ok_or_else(|| CliError::Format(format!("nodes[{i}].parents: unknown node `{p}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let domain = match (n.kind, n.domain) {
                (NodeKind::Utility, Some(_)) => {
                    return Err(CliError::Format(format!("nodes[{i}].domain: utility node `{}` has no domain", n.name)))
                }
                (NodeKind::Utility, None) => None,
                (_, Some(d)) => Some(d),
                (_, None) => return Err(CliError::Format(format!("nodes[{i}].domain: missing for `{}`", n.name))),
            };
            nodes.push(DiagramNode { id: NodeId(i), name: n.name.clone(), kind: n.kind, parents, domain });
        }
        let owner = |section: &str, key: &str, kind: NodeKind| -> Result<NodeId, CliError> {
            match ids.get(key) {
                Some(&id) if nodes[id.0].kind == kind => Ok(id),
                Some(_) => Err(CliError::Format(format!("{section}.{key}: `{key}` is not a {kind} node"))),
                None => Err(CliError::Format(format!("{section}.{key}: unknown node `{key}`"))),
            }
        };
        let mut cpts = Vec::new();
        for (key, values) in &self.cpts {
            cpts.push(Cpt { owner: owner("cpts", key, NodeKind::Chance)?, values: values.clone() });
        }
        let mut utilities = Vec::new();
        for (key, values) in &self.utilities {
            utilities.push(UtilityTable { owner: owner("utilities", key, NodeKind::Utility)?, values: values.clone() });
        }
        InfluenceDiagram::new(nodes, cpts, utilities).map_err(|e| CliError::Invalid(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }
}

pub fn read_diagram(path: &std::path::Path) -> Result<Diagram, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    DiagramDocument::parse(&text).and_then(|d| d.to_diagram()).map_err(|e| e.in_file(path))
}

/// Chosen alternative per decision and parent configuration label.
pub type StrategyDocument = BTreeMap<String, BTreeMap<String, usize>>;

/// Solver output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub strategy: StrategyDocument,
    pub eu: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_percent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes_evaluated: Option<usize>,
    pub status: String,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes") + "\n"
    }
}

/// Any JSON object with a `strategy` key, such as a [`ResultDocument`].
#[derive(Deserialize)]
struct StrategyHolder {
    strategy: StrategyDocument,
}

/// Labels every row of a pure strategy; mixed rows take their most likely
/// alternative.
pub fn strategy_document(diagram: &Diagram, strategy: &Strategy<f64>) -> StrategyDocument {
    let mut out = BTreeMap::new();
    for d in diagram.decisions() {
        let policy = strategy.policy(d).expect("strategy covers every decision");
        let rows = (0..policy.configurations())
            .map(|j| {
                let row = policy.row(j);
                let best = (0..row.len()).fold(0, |b, a| if row[a] > row[b] { a } else { b });
                (diagram.configuration_label(d, j), best)
            })
            .collect();
        out.insert(diagram.node(d).name.clone(), rows);
    }
    out
}

pub fn parse_strategy(diagram: &Diagram, text: &str) -> Result<Strategy<f64>, CliError> {
    let holder: StrategyHolder = serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))?;
    let doc = holder.strategy;
    let mut policies = Vec::new();
    for d in diagram.decisions() {
        let name = &diagram.node(d).name;
        let rows = doc.get(name).ok_or_else(|| CliError::Format(format!("strategy.{name}: missing decision")))?;
        let cards = diagram.parent_cards(d);
        let mut choices = vec![None; configuration_count(&cards)];
        for (label, &alt) in rows {
            let config = parse_label(diagram, d, label)
                .ok_or_else(|| CliError::Format(format!("strategy.{name}.{label}: not a parent configuration")))?;
            if alt >= diagram.domain_size(d) {
                return Err(CliError::Format(format!("strategy.{name}.{label}: alternative {alt} out of range")));
            }
            choices[encode_configuration(&cards, &config)] = Some(alt);
        }
        let choices = choices
            .into_iter()
            .enumerate()
            .map(|(j, c)| {
                c.ok_or_else(|| {
                    CliError::Format(format!("strategy.{name}: no entry for `{}`", diagram.configuration_label(d, j)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        policies.push(Policy::pure(d, diagram.domain_size(d), &choices));
    }
    if let Some(extra) =
        doc.keys().find(|k| diagram.node_by_name(k).is_none_or(|id| !diagram.decisions().contains(&id)))
    {
        return Err(CliError::Format(format!("strategy.{extra}: not a decision node")));
    }
    Strategy::new(diagram, policies).map_err(|e| CliError::Invalid(e.to_string()))
}

fn parse_label(diagram: &Diagram, decision: NodeId, label: &str) -> Option<Vec<usize>> {
    let parents = &diagram.node(decision).parents;
    let parts: Vec<&str> = if label.is_empty() { Vec::new() } else { label.split(',').collect() };
    if parts.len() != parents.len() {
        return None;
    }
    parents
        .iter()
        .zip(parts)
        .map(|(&p, part)| {
            let (name, value) = part.split_once('=')?;
            let v: usize = value.parse().ok()?;
            (name == diagram.node(p).name && v < diagram.domain_size(p)).then_some(v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use limid::model::expected_utility;
    use limid::model::fixtures::bridge_attack;

    #[test]
    fn round_trip_preserves_diagram() {
        let d = bridge_attack::<f64>().diagram;
        let doc = DiagramDocument::from_diagram(&d);
        let back = DiagramDocument::parse(&doc.to_json()).unwrap().to_diagram().unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn errors_name_the_key() {
        let text = r#"{"nodes": [{"name": "a", "kind": "decision", "domain": 2, "parents": ["zz"]}]}"#;
        let e = DiagramDocument::parse(text).unwrap().to_diagram().unwrap_err();
        assert!(e.to_string().contains("nodes[0].parents"), "{e}");
        let e = DiagramDocument::parse(r#"{"nodes": [], "extra": 1}"#).unwrap_err();
        assert!(e.to_string().contains("extra"), "{e}");
        let text = r#"{"nodes": [{"name": "a", "kind": "decision", "domain": 2}], "cpts": {"a": [0.5, 0.5]}}"#;
        let e = DiagramDocument::parse(text).unwrap().to_diagram().unwrap_err();
        assert!(e.to_string().contains("cpts.a"), "{e}");
    }

    #[test]
    fn strategy_labels_round_trip() {
        let d = bridge_attack::<f64>().diagram;
        let s = Strategy::constant_choice(&d, |k| k - 1);
        let doc = strategy_document(&d, &s);
        let text = serde_json::json!({ "strategy": doc, "eu": 0.0 }).to_string();
        let back = parse_strategy(&d, &text).unwrap();
        assert_eq!(back, s);
        assert_eq!(expected_utility(&d, &back), expected_utility(&d, &s));
        let bad = serde_json::json!({ "strategy": { "nope": {} } }).to_string();
        assert!(parse_strategy(&d, &bad).is_err());
    }
}
