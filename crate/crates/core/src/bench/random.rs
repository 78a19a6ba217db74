use rand::seq::{index::sample, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use super::BenchError;
use crate::model::{configuration_count, DiagramBuilder, InfluenceDiagram, NodeId};
use crate::scalar::Scalar;

/// Size and seed of one random diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub total_nodes: usize,
    pub decision_nodes: usize,
    pub utility_nodes: usize,
    pub max_parents: usize,
    pub domain_size: usize,
    pub seed: u64,
}

impl RandomSpec {
    pub fn new(total_nodes: usize, decision_nodes: usize, utility_nodes: usize, seed: u64) -> Self {
        Self { total_nodes, decision_nodes, utility_nodes, max_parents: 3, domain_size: 2, seed }
    }

    /// Spec with as many utility nodes as decisions.
    pub fn balanced(total_nodes: usize, decision_nodes: usize, seed: u64) -> Self {
        Self::new(total_nodes, decision_nodes, decision_nodes, seed)
    }

    pub fn chance_nodes(&self) -> usize {
        self.total_nodes.saturating_sub(self.decision_nodes + self.utility_nodes)
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    pub fn check(&self) -> Result<(), BenchError> {
        if self.decision_nodes == 0 || self.utility_nodes == 0 {
            return Err(BenchError::Spec("decision and utility counts must be positive".into()));
        }
        if self.decision_nodes + self.utility_nodes > self.total_nodes {
            return Err(BenchError::Spec(format!(
                "{} decisions + {} utilities exceed {} total nodes",
                self.decision_nodes, self.utility_nodes, self.total_nodes
            )));
        }
        if self.domain_size < 2 {
            return Err(BenchError::Spec("domain size must be at least 2".into()));
        }
        Ok(())
    }
}

/// Random LIMID drawn from `spec`; identical seeds give identical diagrams.
///
/// Non-utility nodes are placed in a shuffled order and only draw parents
/// from earlier nodes. Chance nodes get up to `max_parents` parents, decision
/// nodes 0 to 2 chance parents, utility nodes 1 or 2 non-utility parents.
/// CPT rows are uniform on the simplex and utilities uniform in [-100, 100].
pub fn gen_random_diagram<T: Scalar>(spec: &RandomSpec) -> Result<InfluenceDiagram<T>, BenchError> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let k = spec.domain_size;

    let mut is_decision: Vec<bool> =
        std::iter::repeat_n(false, spec.chance_nodes()).chain(std::iter::repeat_n(true, spec.decision_nodes)).collect();
    is_decision.shuffle(&mut rng);

    let mut b = DiagramBuilder::new();
    let mut placed: Vec<(NodeId, bool)> = Vec::new();
    let (mut n_chance, mut n_decision) = (0, 0);
    for decision in is_decision {
        if decision {
            let pool: Vec<NodeId> = placed.iter().filter(|(_, d)| !d).map(|&(id, _)| id).collect();
            let parents = pick_parents(&mut rng, &pool, 0, 2);
            n_decision += 1;
            let id = b.decision(&format!("D{n_decision}"), k, &parents);
            placed.push((id, true));
        } else {
            let pool: Vec<NodeId> = placed.iter().map(|&(id, _)| id).collect();
            let parents = pick_parents(&mut rng, &pool, 0, spec.max_parents);
            let rows = configuration_count(&vec![k; parents.len()]);
            let mut cpt = Vec::with_capacity(rows * k);
            for _ in 0..rows {
                let raw: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
                let s: f64 = raw.iter().sum();
                cpt.extend(raw.iter().map(|x| T::of(x / s)));
            }
            n_chance += 1;
            let id = b.chance(&format!("C{n_chance}"), k, &parents, cpt);
            placed.push((id, false));
        }
    }
    let pool: Vec<NodeId> = placed.iter().map(|&(id, _)| id).collect();
    for u in 1..=spec.utility_nodes {
        let parents = pick_parents(&mut rng, &pool, 1, 2);
        let rows = configuration_count(&vec![k; parents.len()]);
        let values = (0..rows).map(|_| T::of(rng.random_range(-100.0..=100.0))).collect();
        b.utility(&format!("U{u}"), &parents, values);
    }
    b.build().map_err(|e| BenchError::Spec(format!("generated diagram failed validation: {e}")))
}

fn pick_parents(rng: &mut ChaCha8Rng, pool: &[NodeId], min: usize, max: usize) -> Vec<NodeId> {
    let upper = max.min(pool.len());
    let lower = min.min(upper);
    let count = rng.random_range(lower..=upper);
    let mut picked: Vec<NodeId> = sample(rng, pool.len(), count).into_iter().map(|i| pool[i]).collect();
    picked.sort();
    picked
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{log2_pure_strategy_count, pure_strategy_count, NodeKind};

    #[test]
    fn same_seed_same_diagram() {
        let spec = RandomSpec::new(10, 3, 3, 1);
        let a = gen_random_diagram::<f64>(&spec).unwrap();
        let b = gen_random_diagram::<f64>(&spec).unwrap();
        assert_eq!(a, b);
        let c = gen_random_diagram::<f64>(&spec.with_seed(2)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn node_counts_follow_spec() {
        let d = gen_random_diagram::<f64>(&RandomSpec::balanced(20, 6, 5)).unwrap();
        assert_eq!(d.chance_nodes().len(), 8);
        assert_eq!(d.decisions().len(), 6);
        assert_eq!(d.utility_nodes().len(), 6);
        for id in d.decisions() {
            let node = d.node(id);
            assert!(node.parents.len() <= 2);
            assert!(node.parents.iter().all(|&p| d.node(p).kind == NodeKind::Chance));
        }
        for id in d.utility_nodes() {
            assert!((1..=2).contains(&d.node(id).parents.len()));
        }
    }

    #[test]
    fn strategy_count_matches_parent_structure() {
        for seed in 0..10 {
            let d = gen_random_diagram::<f64>(&RandomSpec::balanced(10, 3, seed)).unwrap();
            let expected: u128 = d.decisions().iter().map(|&id| 1u128 << (1u32 << d.node(id).parents.len())).product();
            assert_eq!(pure_strategy_count(&d), Some(expected));
            assert!((log2_pure_strategy_count(&d) - (expected as f64).log2()).abs() < 1e-9);
        }
    }

    #[test]
    fn infeasible_specs_are_rejected() {
        assert!(gen_random_diagram::<f64>(&RandomSpec::new(4, 3, 3, 0)).is_err());
        assert!(gen_random_diagram::<f64>(&RandomSpec::new(4, 0, 3, 0)).is_err());
    }
}
