//! Influence diagram representation, validation, exact expected-utility
//! evaluation and utility normalization.

mod diagram;
mod eval;
pub mod fixtures;
mod normalize;
mod strategy;
mod validate;

use thiserror::Error;

pub use diagram::{
    configuration_count, decode_configuration, encode_configuration, Cpt, DiagramBuilder, DiagramNode,
    InfluenceDiagram, NodeId, NodeKind, UtilityTable,
};
pub use eval::{
    brute_force_meu, brute_force_meu_capped, expected_utility, expected_utility_naive, expected_utility_naive_capped,
    log2_pure_strategy_count, pure_strategy_count, strategy_slots, EuEngine, DEFAULT_ENUMERATION_CAP,
    DEFAULT_STRATEGY_CAP,
};
pub use normalize::{denormalize_eu, normalize_utilities, NormalizationInfo};
pub use strategy::{Policy, Strategy};
pub use validate::{validate_diagram, ValidationReport, Violation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid diagram: {0}")]
    Invalid(ValidationReport),
    #[error("too many {what}: {size} exceeds the cap of {cap}")]
    TooLarge { what: &'static str, size: u128, cap: u128 },
    /// All utility values are equal; every strategy attains `eu`.
    #[error("trivial diagram: every strategy has expected utility {eu}")]
    TrivialDiagram { eu: f64 },
    #[error("strategy does not match diagram: {0}")]
    StrategyMismatch(String),
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::bench::{gen_random_diagram, RandomSpec};
    use proptest::prelude::{prop_assert, prop_assert_eq, proptest, ProptestConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_strategy(diagram: &InfluenceDiagram<f64>, rng: &mut impl Rng, pure: bool) -> Strategy<f64> {
        let policies = diagram
            .decisions()
            .into_iter()
            .map(|d| {
                let k = diagram.domain_size(d);
                let configs = diagram.parent_configurations(d);
                if pure {
                    let choices: Vec<usize> = (0..configs).map(|_| rng.random_range(0..k)).collect();
                    Policy::pure(d, k, &choices)
                } else {
                    let mut table = Vec::with_capacity(k * configs);
                    for _ in 0..configs {
                        let raw: Vec<f64> = (0..k).map(|_| rng.random::<f64>() + 1e-3).collect();
                        let s: f64 = raw.iter().sum();
                        table.extend(raw.iter().map(|x| x / s));
                    }
                    Policy { decision: d, alternatives: k, table }
                }
            })
            .collect();
        Strategy::new(diagram, policies).unwrap()
    }

    #[test]
    fn trivial_diagram_values() {
        let t = trivial::<f64>();
        let pick_d = Strategy::from_encoding(&t.diagram, &[0]).unwrap();
        assert_eq!(expected_utility_naive(&t.diagram, &pick_d).unwrap(), 5.0);
        assert_eq!(expected_utility(&t.diagram, &pick_d), 5.0);
        let mixed = Strategy::new(&t.diagram, vec![Policy::uniform(t.decision, 2, 1)]).unwrap();
        assert_eq!(expected_utility_naive(&t.diagram, &mixed).unwrap(), 3.5);
        assert_eq!(expected_utility(&t.diagram, &mixed), 3.5);
        let (best, meu) = brute_force_meu(&t.diagram).unwrap();
        assert_eq!(best.encoding(), Some(vec![0]));
        assert_eq!(meu, 5.0);
    }

    #[test]
    fn elimination_matches_enumeration_on_random_diagrams() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for seed in 0..10 {
            let spec = RandomSpec::new(10, 3, 3, seed);
            let diagram = gen_random_diagram::<f64>(&spec).unwrap();
            for _ in 0..10 {
                let s = random_strategy(&diagram, &mut rng, false);
                let naive = expected_utility_naive(&diagram, &s).unwrap();
                let ve = expected_utility(&diagram, &s);
                assert!((naive - ve).abs() < 1e-9, "seed {seed}: {naive} vs {ve}");
            }
        }
    }

    #[test]
    fn brute_force_dominates_mixed_strategies() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..5 {
            let diagram = gen_random_diagram::<f64>(&RandomSpec::new(9, 3, 3, seed)).unwrap();
            let (_, meu) = brute_force_meu(&diagram).unwrap();
            for _ in 0..100 {
                let s = random_strategy(&diagram, &mut rng, false);
                assert!(expected_utility(&diagram, &s) <= meu + 1e-9);
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        let diagram = gen_random_diagram::<f64>(&RandomSpec::new(10, 3, 3, 1)).unwrap();
        let s = Strategy::first_alternative(&diagram);
        assert!(matches!(
            expected_utility_naive_capped(&diagram, &s, 4),
            Err(ModelError::TooLarge { what: "joint configurations", .. })
        ));
        assert!(matches!(brute_force_meu_capped(&diagram, 1), Err(ModelError::TooLarge { .. })));
    }

    #[test]
    fn degenerate_diagrams() {
        // no utility nodes: EU is identically zero
        let mut b = DiagramBuilder::<f64>::new();
        b.decision("d", 2, &[]);
        let diagram = b.build().unwrap();
        let (s, meu) = brute_force_meu(&diagram).unwrap();
        assert_eq!((s.encoding(), meu), (Some(vec![0]), 0.0));

        // no decision nodes: single empty strategy
        let mut b = DiagramBuilder::<f64>::new();
        let c = b.chance("c", 2, &[], vec![0.25, 0.75]);
        b.utility("u", &[c], vec![4.0, 8.0]);
        let diagram = b.build().unwrap();
        let (s, meu) = brute_force_meu(&diagram).unwrap();
        assert_eq!(s.encoding(), Some(vec![]));
        assert_eq!(meu, 7.0);
    }

    #[test]
    fn f32_engine_agrees_with_f64() {
        let f = bridge_attack::<f64>();
        let g = f.diagram.cast::<f32>();
        let s64 = Strategy::from_encoding(&f.diagram, &[0, 1]).unwrap();
        let s32 = Strategy::from_encoding(&g, &[0, 1]).unwrap();
        let a = expected_utility(&f.diagram, &s64);
        let b = expected_utility(&g, &s32) as f64;
        assert!((a - b).abs() < 1e-3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn normalization_preserves_order(seed in 0u64..1000, a in 0u64..1000, b in 0u64..1000) {
            let diagram = gen_random_diagram::<f64>(&RandomSpec::new(8, 2, 3, seed)).unwrap();
            let (norm, info) = normalize_utilities(&diagram).unwrap();
            let s1 = random_strategy(&diagram, &mut ChaCha8Rng::seed_from_u64(a), false);
            let s2 = random_strategy(&diagram, &mut ChaCha8Rng::seed_from_u64(b), false);
            let (e1, e2) = (expected_utility(&diagram, &s1), expected_utility(&diagram, &s2));
            let (n1, n2) = (expected_utility(&norm, &s1), expected_utility(&norm, &s2));
            prop_assert!((denormalize_eu(n1, &info) - e1).abs() < 1e-9);
            prop_assert!(n1 >= -1e-12 && n1 <= info.utility_count as f64 + 1e-12);
            if (e1 - e2).abs() > 1e-9 {
                prop_assert_eq!(e1 < e2, n1 < n2);
            }
        }
    }
}
