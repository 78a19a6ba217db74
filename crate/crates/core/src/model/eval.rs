use rayon::prelude::*;

use super::diagram::{configuration_count, decode_configuration, InfluenceDiagram, NodeId, NodeKind};
use super::strategy::Strategy;
use super::ModelError;
use crate::factor::{eliminate_all, min_degree_order, Factor};
use crate::graph::ancestors;
use crate::scalar::Scalar;

/// Default cap on joint configurations enumerated by [`expected_utility_naive`].
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 24;
/// Default cap on pure strategies enumerated by [`brute_force_meu`].
pub const DEFAULT_STRATEGY_CAP: u128 = 1 << 20;

/// Expected utility by direct enumeration of every joint configuration of
/// chance and decision nodes. Exponential; used as the reference oracle.
pub fn expected_utility_naive<T: Scalar>(
    diagram: &InfluenceDiagram<T>,
    strategy: &Strategy<T>,
) -> Result<T, ModelError> {
    expected_utility_naive_capped(diagram, strategy, DEFAULT_ENUMERATION_CAP)
}

pub fn expected_utility_naive_capped<T: Scalar>(
    diagram: &InfluenceDiagram<T>,
    strategy: &Strategy<T>,
    cap: u128,
) -> Result<T, ModelError> {
    let vars: Vec<NodeId> = diagram.nodes().iter().filter(|n| n.kind != NodeKind::Utility).map(|n| n.id).collect();
    let cards: Vec<usize> = vars.iter().map(|&v| diagram.domain_size(v)).collect();
    let total = cards.iter().try_fold(1u128, |acc, &c| acc.checked_mul(c as u128)).unwrap_or(u128::MAX);
    if total > cap {
        return Err(ModelError::TooLarge { what: "joint configurations", size: total, cap });
    }

    let index_of = |assignment: &[usize], node: NodeId| -> usize {
        diagram.node(node).parents.iter().fold(0, |acc, &p| acc * diagram.domain_size(p) + assignment[p.0])
    };
    let mut assignment = vec![0usize; diagram.len()];
    let mut sum = T::zero();
    for code in 0..total as usize {
        for (&v, x) in vars.iter().zip(decode_configuration(&cards, code)) {
            assignment[v.0] = x;
        }
        let mut weight = T::one();
        for &v in &vars {
            let k = diagram.domain_size(v);
            let row = index_of(&assignment, v);
            let p = match diagram.node(v).kind {
                NodeKind::Chance => diagram.cpt(v).expect("validated").values[row * k + assignment[v.0]],
                _ => {
                    let policy = strategy.policy(v).expect("strategy covers decisions");
                    policy.table[row * k + assignment[v.0]]
                }
            };
            weight *= p;
            if weight == T::zero() {
                break;
            }
        }
        if weight == T::zero() {
            continue;
        }
        let utility: T = diagram.utility_tables().map(|u| u.values[index_of(&assignment, u.owner)]).sum();
        sum += weight * utility;
    }
    Ok(sum)
}

/// Per-utility-node elimination plans for a fixed diagram structure.
///
/// Each utility node only depends on its ancestors, so its term is computed
/// by eliminating those variables from the product of their tables and the
/// utility table. Plans are reused across strategies.
#[derive(Debug, Clone)]
pub struct EuEngine<'a, T> {
    diagram: &'a InfluenceDiagram<T>,
    plans: Vec<UtilityPlan>,
}

#[derive(Debug, Clone)]
struct UtilityPlan {
    utility: NodeId,
    relevant: Vec<NodeId>,
    order: Vec<usize>,
}

impl<'a, T: Scalar> EuEngine<'a, T> {
    pub fn new(diagram: &'a InfluenceDiagram<T>) -> Self {
        let parents: Vec<Vec<NodeId>> = diagram.nodes().iter().map(|n| n.parents.clone()).collect();
        let plans = diagram
            .utility_nodes()
            .into_iter()
            .map(|u| {
                let relevant: Vec<NodeId> = ancestors(&parents, u).into_iter().collect();
                let mut scopes: Vec<Vec<usize>> = relevant.iter().map(|&x| family(diagram, x)).collect();
                scopes.push(diagram.node(u).parents.iter().map(|p| p.0).collect());
                let order = min_degree_order(&scopes);
                UtilityPlan { utility: u, relevant, order }
            })
            .collect();
        Self { diagram, plans }
    }

    pub fn diagram(&self) -> &InfluenceDiagram<T> {
        self.diagram
    }

    /// Expected utility contributed by each utility node, in id order.
    pub fn utility_terms(&self, strategy: &Strategy<T>) -> Vec<(NodeId, T)> {
        self.plans
            .iter()
            .map(|plan| {
                let mut factors: Vec<Factor<T>> =
                    plan.relevant.iter().map(|&x| table_factor(self.diagram, strategy, x)).collect();
                let u = self.diagram.node(plan.utility);
                factors.push(Factor::new(
                    u.parents.iter().map(|p| p.0).collect(),
                    self.diagram.parent_cards(plan.utility),
                    self.diagram.utility(plan.utility).expect("validated").values.clone(),
                ));
                (plan.utility, eliminate_all(factors, &plan.order))
            })
            .collect()
    }

    pub fn evaluate(&self, strategy: &Strategy<T>) -> T {
        self.utility_terms(strategy).into_iter().map(|(_, v)| v).sum()
    }
}

fn family<T: Scalar>(diagram: &InfluenceDiagram<T>, x: NodeId) -> Vec<usize> {
    let mut vars: Vec<usize> = diagram.node(x).parents.iter().map(|p| p.0).collect();
    vars.push(x.0);
    vars
}

fn table_factor<T: Scalar>(diagram: &InfluenceDiagram<T>, strategy: &Strategy<T>, x: NodeId) -> Factor<T> {
    let mut cards = diagram.parent_cards(x);
    cards.push(diagram.domain_size(x));
    let values = match diagram.node(x).kind {
        NodeKind::Chance => diagram.cpt(x).expect("validated").values.clone(),
        NodeKind::Decision => strategy.policy(x).expect("strategy covers decisions").table.clone(),
        NodeKind::Utility => unreachable!("utility nodes have no children"),
    };
    Factor::new(family(diagram, x), cards, values)
}

/// Expected utility of `strategy` by variable elimination.
pub fn expected_utility<T: Scalar>(diagram: &InfluenceDiagram<T>, strategy: &Strategy<T>) -> T {
    EuEngine::new(diagram).evaluate(strategy)
}

/// Alternatives per slot of the pure-strategy encoding.
pub fn strategy_slots<T: Scalar>(diagram: &InfluenceDiagram<T>) -> Vec<usize> {
    diagram
        .decisions()
        .into_iter()
        .flat_map(|d| std::iter::repeat_n(diagram.domain_size(d), diagram.parent_configurations(d)))
        .collect()
}

/// Number of pure strategies, `None` if it does not fit in 128 bits.
pub fn pure_strategy_count<T: Scalar>(diagram: &InfluenceDiagram<T>) -> Option<u128> {
    strategy_slots(diagram).into_iter().try_fold(1u128, |acc, k| acc.checked_mul(k as u128))
}

pub fn log2_pure_strategy_count<T: Scalar>(diagram: &InfluenceDiagram<T>) -> f64 {
    strategy_slots(diagram).into_iter().map(|k| (k as f64).log2()).sum()
}

/// Maximum expected utility over all pure strategies. Ties go to the
/// lexicographically smallest encoding.
pub fn brute_force_meu<T: Scalar>(diagram: &InfluenceDiagram<T>) -> Result<(Strategy<T>, T), ModelError> {
    brute_force_meu_capped(diagram, DEFAULT_STRATEGY_CAP)
}

pub fn brute_force_meu_capped<T: Scalar>(
    diagram: &InfluenceDiagram<T>,
    cap: u128,
) -> Result<(Strategy<T>, T), ModelError> {
    let slots = strategy_slots(diagram);
    let total = pure_strategy_count(diagram).unwrap_or(u128::MAX);
    if total > cap {
        return Err(ModelError::TooLarge { what: "pure strategies", size: total, cap });
    }
    let engine = EuEngine::new(diagram);
    let values: Vec<T> = (0..total as usize)
        .into_par_iter()
        .map(|code| {
            let s = Strategy::from_encoding(diagram, &decode_configuration(&slots, code)).expect("in range");
            engine.evaluate(&s)
        })
        .collect();
    let mut best = 0;
    for (code, &v) in values.iter().enumerate().skip(1) {
        let b = values[best];
        if v > b + T::tol() * b.abs().max(T::one()) {
            best = code;
        }
    }
    let strategy = Strategy::from_encoding(diagram, &decode_configuration(&slots, best))?;
    debug_assert_eq!(configuration_count(&slots), total as usize);
    Ok((strategy, values[best]))
}
