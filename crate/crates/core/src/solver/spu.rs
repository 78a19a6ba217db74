use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::model::{EuEngine, InfluenceDiagram, ModelError, Policy, Strategy};
use crate::scalar::Scalar;

/// Starting strategy of a single-policy-updating run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpuInit {
    FirstAlternative,
    LastAlternative,
    /// Uniformly random pure strategy from the given seed.
    Random(u64),
}

impl SpuInit {
    pub fn strategy<T: Scalar>(self, diagram: &InfluenceDiagram<T>) -> Strategy<T> {
        match self {
            SpuInit::FirstAlternative => Strategy::first_alternative(diagram),
            SpuInit::LastAlternative => Strategy::constant_choice(diagram, |k| k - 1),
            SpuInit::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let policies = diagram
                    .decisions()
                    .into_iter()
                    .map(|d| {
                        let k = diagram.domain_size(d);
                        let choices: Vec<usize> =
                            (0..diagram.parent_configurations(d)).map(|_| rng.random_range(0..k)).collect();
                        Policy::pure(d, k, &choices)
                    })
                    .collect();
                Strategy::new(diagram, policies).expect("random pure strategy fits the diagram")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpuResult<T> {
    pub strategy: Strategy<T>,
    pub eu: T,
    /// Full sweeps performed, including the final one without changes.
    pub sweeps: usize,
    /// Policy rows whose alternative changed.
    pub updates: usize,
    /// Expected utility of the initial strategy, then after every row visit.
    pub trace: Vec<T>,
    /// Whether a sweep finished without changes before the sweep limit.
    pub converged: bool,
}

/// Single policy updating: sweep the decisions in id order and, for each
/// parent configuration, switch to the alternative with the highest expected
/// utility given everything else. Ties keep the current alternative.
pub fn spu<T: Scalar>(
    diagram: &InfluenceDiagram<T>,
    init: &Strategy<T>,
    max_sweeps: usize,
) -> Result<SpuResult<T>, ModelError> {
    Strategy::new(diagram, init.policies().cloned().collect())?;
    if !init.is_pure() {
        return Err(ModelError::StrategyMismatch("single policy updating needs a pure initial strategy".into()));
    }
    let engine = EuEngine::new(diagram);
    let mut strategy = init.clone();
    let mut current = engine.evaluate(&strategy);
    let mut trace = vec![current];
    let mut sweeps = 0;
    let mut updates = 0;
    let mut converged = false;

    while sweeps < max_sweeps {
        sweeps += 1;
        let mut changed = false;
        for d in diagram.decisions() {
            let k = diagram.domain_size(d);
            for j in 0..diagram.parent_configurations(d) {
                let keep = strategy.policy(d).and_then(|p| p.choice(j)).expect("pure strategy");
                let mut best = (keep, current);
                for a in (0..k).filter(|&a| a != keep) {
                    strategy.policy_mut(d).expect("covered").set_choice(j, a);
                    let v = engine.evaluate(&strategy);
                    if v > best.1 + T::tol() * best.1.abs().max(T::one()) {
                        best = (a, v);
                    }
                }
                strategy.policy_mut(d).expect("covered").set_choice(j, best.0);
                if best.0 != keep {
                    changed = true;
                    updates += 1;
                    current = best.1;
                }
                trace.push(current);
            }
        }
        if !changed {
            converged = true;
            break;
        }
    }
    Ok(SpuResult { strategy, eu: current, sweeps, updates, trace, converged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{coordination, separable};
    use crate::model::{brute_force_meu, expected_utility};

    #[test]
    fn separable_reaches_optimum_in_one_sweep() {
        let d = separable::<f64>();
        let r = spu(&d, &Strategy::first_alternative(&d), 10).unwrap();
        let (_, meu) = brute_force_meu(&d).unwrap();
        assert!((r.eu - meu).abs() < 1e-9);
        assert!(r.converged);
        assert!(r.sweeps <= 2);
        assert!(r.trace.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn coordination_gets_stuck() {
        let d = coordination::<f64>();
        let r = spu(&d, &Strategy::first_alternative(&d), 10).unwrap();
        let (_, meu) = brute_force_meu(&d).unwrap();
        assert!(r.eu < meu - 1.0);
        assert!((expected_utility(&d, &r.strategy) - r.eu).abs() < 1e-9);
    }

    #[test]
    fn rejects_mixed_init_and_honours_sweep_limit() {
        let d = separable::<f64>();
        let mixed = Strategy::new(
            &d,
            d.decisions()
                .into_iter()
                .map(|x| Policy::uniform(x, d.domain_size(x), d.parent_configurations(x)))
                .collect(),
        )
        .unwrap();
        assert!(spu(&d, &mixed, 5).is_err());
        let r = spu(&d, &SpuInit::LastAlternative.strategy(&d), 0).unwrap();
        assert_eq!(r.sweeps, 0);
        assert!(!r.converged);
        let a = SpuInit::Random(3).strategy(&d);
        assert_eq!(a, SpuInit::Random(3).strategy(&d));
    }
}
