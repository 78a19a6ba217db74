use std::collections::BTreeMap;

use super::diagram::{InfluenceDiagram, NodeId, NodeKind};
use super::ModelError;
use crate::scalar::Scalar;

/// Conditional distribution of a decision over its alternatives, one row per
/// parent configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct Policy<T> {
    pub decision: NodeId,
    pub alternatives: usize,
    pub table: Vec<T>,
}

impl<T: Scalar> Policy<T> {
    /// Pure policy choosing `choices[j]` under parent configuration `j`.
    pub fn pure(decision: NodeId, alternatives: usize, choices: &[usize]) -> Self {
        let mut table = vec![T::zero(); choices.len() * alternatives];
        for (j, &a) in choices.iter().enumerate() {
            table[j * alternatives + a] = T::one();
        }
        Self { decision, alternatives, table }
    }

    pub fn uniform(decision: NodeId, alternatives: usize, configurations: usize) -> Self {
        let p = T::one() / T::of(alternatives as f64);
        Self { decision, alternatives, table: vec![p; configurations * alternatives] }
    }

    pub fn configurations(&self) -> usize {
        self.table.len() / self.alternatives
    }

    pub fn row(&self, config: usize) -> &[T] {
        &self.table[config * self.alternatives..(config + 1) * self.alternatives]
    }

    pub fn set_row(&mut self, config: usize, row: &[T]) {
        self.table[config * self.alternatives..(config + 1) * self.alternatives].copy_from_slice(row);
    }

    pub fn set_choice(&mut self, config: usize, alternative: usize) {
        let k = self.alternatives;
        for (a, slot) in self.table[config * k..(config + 1) * k].iter_mut().enumerate() {
            *slot = if a == alternative { T::one() } else { T::zero() };
        }
    }

    pub fn is_pure(&self) -> bool {
        self.table.iter().all(|&v| v == T::zero() || v == T::one())
    }

    /// Chosen alternative of a pure row.
    pub fn choice(&self, config: usize) -> Option<usize> {
        let row = self.row(config);
        let mut chosen = None;
        for (a, &v) in row.iter().enumerate() {
            if v == T::one() {
                if chosen.is_some() {
                    return None;
                }
                chosen = Some(a);
            } else if v != T::zero() {
                return None;
            }
        }
        chosen
    }

    pub fn choices(&self) -> Option<Vec<usize>> {
        (0..self.configurations()).map(|j| self.choice(j)).collect()
    }
}

/// One policy per decision node.
#[derive(Clone, Debug, PartialEq)]
pub struct Strategy<T> {
    policies: BTreeMap<NodeId, Policy<T>>,
}

impl<T: Scalar> Strategy<T> {
    /// Checks coverage, table shapes and the per-row simplex constraint.
    pub fn new(diagram: &InfluenceDiagram<T>, policies: Vec<Policy<T>>) -> Result<Self, ModelError> {
        let mut map = BTreeMap::new();
        for p in policies {
            let id = p.decision;
            if id.0 >= diagram.len() || diagram.node(id).kind != NodeKind::Decision {
                return Err(ModelError::StrategyMismatch(format!("{id} is not a decision node")));
            }
            if map.insert(id, p).is_some() {
                return Err(ModelError::StrategyMismatch(format!("two policies for `{}`", diagram.node(id).name)));
            }
        }
        for d in diagram.decisions() {
            let name = &diagram.node(d).name;
            let Some(p) = map.get(&d) else {
                return Err(ModelError::StrategyMismatch(format!("no policy for `{name}`")));
            };
            let k = diagram.domain_size(d);
            let configs = diagram.parent_configurations(d);
            if p.alternatives != k || p.table.len() != k * configs {
                return Err(ModelError::StrategyMismatch(format!(
                    "policy for `{name}` has shape {}x{}, expected {configs}x{k}",
                    p.table.len() / p.alternatives.max(1),
                    p.alternatives
                )));
            }
            for j in 0..configs {
                let row = p.row(j);
                if row.iter().any(|&v| v < -T::tol() || v > T::one() + T::tol()) {
                    return Err(ModelError::StrategyMismatch(format!(
                        "policy for `{name}` has entries outside [0, 1]"
                    )));
                }
                let s: T = row.iter().copied().sum();
                if (s - T::one()).abs() > T::tol() {
                    return Err(ModelError::StrategyMismatch(format!("policy row {j} of `{name}` sums to {s}")));
                }
            }
        }
        Ok(Self { policies: map })
    }

    pub(crate) fn from_policies_unchecked(policies: impl IntoIterator<Item = Policy<T>>) -> Self {
        Self { policies: policies.into_iter().map(|p| (p.decision, p)).collect() }
    }

    /// Pure strategy taking the first alternative everywhere.
    pub fn first_alternative(diagram: &InfluenceDiagram<T>) -> Self {
        Self::constant_choice(diagram, |_| 0)
    }

    /// Pure strategy taking `pick(k)` for a decision with `k` alternatives.
    pub fn constant_choice(diagram: &InfluenceDiagram<T>, pick: impl Fn(usize) -> usize) -> Self {
        let policies = diagram
            .decisions()
            .into_iter()
            .map(|d| {
                let k = diagram.domain_size(d);
                let configs = diagram.parent_configurations(d);
                (d, Policy::pure(d, k, &vec![pick(k); configs]))
            })
            .collect();
        Self { policies }
    }

    /// Pure strategy from the flat encoding produced by [`Strategy::encoding`].
    pub fn from_encoding(diagram: &InfluenceDiagram<T>, encoding: &[usize]) -> Result<Self, ModelError> {
        let mut rest = encoding;
        let mut policies = Vec::new();
        for d in diagram.decisions() {
            let configs = diagram.parent_configurations(d);
            if rest.len() < configs {
                return Err(ModelError::StrategyMismatch("encoding too short".into()));
            }
            let (head, tail) = rest.split_at(configs);
            let k = diagram.domain_size(d);
            if head.iter().any(|&a| a >= k) {
                return Err(ModelError::StrategyMismatch(format!(
                    "alternative out of range for `{}`",
                    diagram.node(d).name
                )));
            }
            policies.push(Policy::pure(d, k, head));
            rest = tail;
        }
        if !rest.is_empty() {
            return Err(ModelError::StrategyMismatch("encoding too long".into()));
        }
        Self::new(diagram, policies)
    }

    pub fn policy(&self, decision: NodeId) -> Option<&Policy<T>> {
        self.policies.get(&decision)
    }

    pub fn policy_mut(&mut self, decision: NodeId) -> Option<&mut Policy<T>> {
        self.policies.get_mut(&decision)
    }

    pub fn policies(&self) -> impl Iterator<Item = &Policy<T>> {
        self.policies.values()
    }

    pub fn is_pure(&self) -> bool {
        self.policies.values().all(Policy::is_pure)
    }

    /// Chosen alternatives of a pure strategy, decisions in id order and
    /// parent configurations in row order.
    pub fn encoding(&self) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for p in self.policies.values() {
            out.extend(p.choices()?);
        }
        Some(out)
    }
}
