use std::collections::BTreeSet;

use super::ReformError;
use crate::credal::{relevant_ancestors, CredalNetwork};
use crate::graph::{children_lists, d_separated};
use crate::model::NodeId;
use crate::scalar::Scalar;

/// Processing order of the relevant ancestors of one query, query last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecedenceOrdering {
    pub query: NodeId,
    pub sequence: Vec<NodeId>,
}

impl PrecedenceOrdering {
    /// Checks that `sequence` lists exactly the relevant ancestors of
    /// `query`, each after all of its parents, with the query last.
    pub fn new<T: Scalar>(net: &CredalNetwork<T>, query: NodeId, sequence: Vec<NodeId>) -> Result<Self, ReformError> {
        let relevant = relevant_ancestors(net, query);
        let listed: BTreeSet<NodeId> = sequence.iter().copied().collect();
        if listed.len() != sequence.len() || listed != relevant {
            return Err(ReformError::Ordering(format!(
                "ordering for `{}` must list each relevant ancestor exactly once",
                net.node(query).name
            )));
        }
        if sequence.last() != Some(&query) {
            return Err(ReformError::Ordering(format!("query `{}` must come last", net.node(query).name)));
        }
        let mut seen = BTreeSet::new();
        for &x in &sequence {
            if let Some(p) = net.node(x).parents.iter().find(|p| !seen.contains(*p)) {
                return Err(ReformError::Ordering(format!(
                    "`{}` precedes its ancestor `{}`",
                    net.node(x).name,
                    net.node(*p).name
                )));
            }
            seen.insert(x);
        }
        Ok(Self { query, sequence })
    }
}

/// Processed nodes that still have an unprocessed relevant child, minus any
/// that are d-separated from the query by the others. Sorted by id.
pub(crate) fn frontier(
    parents: &[Vec<NodeId>],
    children: &[Vec<NodeId>],
    relevant: &BTreeSet<NodeId>,
    processed: &BTreeSet<NodeId>,
    query: NodeId,
) -> Vec<NodeId> {
    let active: BTreeSet<NodeId> = processed
        .iter()
        .copied()
        .filter(|&y| children[y.0].iter().any(|c| relevant.contains(c) && !processed.contains(c)))
        .collect();
    active
        .iter()
        .copied()
        .filter(|&y| {
            let mut rest = active.clone();
            rest.remove(&y);
            !d_separated(parents, y, query, &rest)
        })
        .collect()
}

/// Greedy topological order of the query's relevant ancestors: at each step
/// take the ready node whose processing leaves the smallest frontier, ties to
/// the smallest id.
pub fn choose_precedence_ordering<T: Scalar>(net: &CredalNetwork<T>, query: NodeId) -> PrecedenceOrdering {
    let relevant = relevant_ancestors(net, query);
    let children = children_lists(&net.parent_lists());
    let mut processed = BTreeSet::new();
    let mut sequence = Vec::with_capacity(relevant.len());
    while processed.len() + 1 < relevant.len() {
        let next = relevant
            .iter()
            .copied()
            .filter(|&x| x != query && !processed.contains(&x))
            .filter(|&x| net.node(x).parents.iter().all(|p| processed.contains(p)))
            .min_by_key(|&x| {
                let mut after = processed.clone();
                after.insert(x);
                let width = after
                    .iter()
                    .filter(|y| children[y.0].iter().any(|c| relevant.contains(c) && !after.contains(c)))
                    .count();
                (width, x)
            })
            .expect("a DAG always has a ready node");
        processed.insert(next);
        sequence.push(next);
    }
    sequence.push(query);
    PrecedenceOrdering { query, sequence }
}
