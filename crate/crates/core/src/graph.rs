//! Small DAG helpers over parent lists indexed by node id.

use std::collections::{BTreeSet, VecDeque};

use crate::model::NodeId;

/// Strict ancestors of `start`.
pub fn ancestors(parents: &[Vec<NodeId>], start: NodeId) -> BTreeSet<NodeId> {
    let mut seen = BTreeSet::new();
    let mut stack: Vec<NodeId> = parents[start.0].clone();
    while let Some(p) = stack.pop() {
        if seen.insert(p) {
            stack.extend(parents[p.0].iter().copied());
        }
    }
    seen
}

pub fn children_lists(parents: &[Vec<NodeId>]) -> Vec<Vec<NodeId>> {
    let mut children = vec![Vec::new(); parents.len()];
    for (i, ps) in parents.iter().enumerate() {
        for p in ps {
            children[p.0].push(NodeId(i));
        }
    }
    children
}

/// Kahn order with the smallest ready id first; `None` on a cycle.
pub fn topological_order(parents: &[Vec<NodeId>]) -> Option<Vec<NodeId>> {
    let children = children_lists(parents);
    let mut indegree: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut ready: BTreeSet<NodeId> = (0..parents.len()).filter(|&i| indegree[i] == 0).map(NodeId).collect();
    let mut order = Vec::with_capacity(parents.len());
    while let Some(n) = ready.pop_first() {
        order.push(n);
        for &c in &children[n.0] {
            indegree[c.0] -= 1;
            if indegree[c.0] == 0 {
                ready.insert(c);
            }
        }
    }
    (order.len() == parents.len()).then_some(order)
}

/// Whether `x` and `y` are d-separated given `given` (Bayes-ball reachability).
pub fn d_separated(parents: &[Vec<NodeId>], x: NodeId, y: NodeId, given: &BTreeSet<NodeId>) -> bool {
    let children = children_lists(parents);
    // nodes with a descendant in `given` (including themselves) open colliders
    let mut opens_collider = BTreeSet::new();
    let mut stack: Vec<NodeId> = given.iter().copied().collect();
    while let Some(n) = stack.pop() {
        if opens_collider.insert(n) {
            stack.extend(parents[n.0].iter().copied());
        }
    }
    // (node, arrived_from_child)
    let mut visited = BTreeSet::new();
    let mut queue = VecDeque::from([(x, true)]);
    while let Some((n, from_child)) = queue.pop_front() {
        if !visited.insert((n, from_child)) {
            continue;
        }
        if n == y && !given.contains(&n) {
            return false;
        }
        let observed = given.contains(&n);
        if from_child {
            if !observed {
                queue.extend(parents[n.0].iter().map(|&p| (p, true)));
                queue.extend(children[n.0].iter().map(|&c| (c, false)));
            }
        } else {
            if !observed {
                queue.extend(children[n.0].iter().map(|&c| (c, false)));
            }
            if opens_collider.contains(&n) {
                queue.extend(parents[n.0].iter().map(|&p| (p, true)));
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[usize]) -> Vec<NodeId> {
        v.iter().map(|&i| NodeId(i)).collect()
    }

    #[test]
    fn chain_fork_collider() {
        // 0 -> 1 -> 2, 0 -> 3, 2 -> 4 <- 3
        let parents = vec![ids(&[]), ids(&[0]), ids(&[1]), ids(&[0]), ids(&[2, 3])];
        let none = BTreeSet::new();
        let given1: BTreeSet<_> = [NodeId(1)].into();
        assert!(!d_separated(&parents, NodeId(0), NodeId(2), &none));
        assert!(d_separated(&parents, NodeId(0), NodeId(2), &given1));
        // 2 and 3 meet only at collider 4 or via 0
        let given0: BTreeSet<_> = [NodeId(0)].into();
        assert!(d_separated(&parents, NodeId(2), NodeId(3), &given0));
        let given04: BTreeSet<_> = [NodeId(0), NodeId(4)].into();
        assert!(!d_separated(&parents, NodeId(2), NodeId(3), &given04));
        assert_eq!(ancestors(&parents, NodeId(4)), ids(&[0, 1, 2, 3]).into_iter().collect());
    }
}
