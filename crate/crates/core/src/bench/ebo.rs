//! The effects-based-operations planning model: eleven simultaneous actions
//! whose outcomes feed workability nodes, then subgoals, then the main
//! hypothesis.
//!
//! Every node is binary with index 1 meaning "taken" for actions and
//! "achieved" for chance nodes.

use serde::{Deserialize, Serialize};

use crate::model::{decode_configuration, DiagramBuilder, InfluenceDiagram, NodeId};
use crate::scalar::Scalar;

/// Action names with their costs, in decision-id order.
pub const EBO_ACTIONS: [(&str, f64); 11] = [
    ("destroy_C2", 20.0),
    ("destroy_radars", 20.0),
    ("destroy_communications", 20.0),
    ("launch_air_strike", 50.0),
    ("destroy_RD", 20.0),
    ("destroy_storage", 20.0),
    ("destroy_assembly", 20.0),
    ("launch_ground_attack", 150.0),
    ("launch_broadcasting", 20.0),
    ("capture_bodyguard", 80.0),
    ("use_special_force", 100.0),
];

/// How the success probability of a workability node shrinks with the
/// number of unaccomplished parents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WorkabilityRule {
    /// 1, 0.5, then 0 from two misses on.
    HalfThenZero,
    /// 0.5 to the power of the number of misses.
    Multiplicative,
}

impl WorkabilityRule {
    fn success(self, misses: usize) -> f64 {
        match self {
            WorkabilityRule::HalfThenZero => [1.0, 0.5].get(misses).copied().unwrap_or(0.0),
            WorkabilityRule::Multiplicative => 0.5f64.powi(misses as i32),
        }
    }
}

/// Edge mapping and local parameters of the model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EboConfig {
    pub label: String,
    /// Workability nodes with the indices (into [`EBO_ACTIONS`]) of the
    /// outcomes feeding them.
    pub workability: Vec<(String, Vec<usize>)>,
    /// Subgoal nodes with the indices of the workability nodes feeding them.
    pub subgoals: Vec<(String, Vec<usize>)>,
    pub rule: WorkabilityRule,
    /// Success probability of a taken action.
    pub outcome_success: f64,
    /// Subgoal success by number of missing parents.
    pub subgoal_table: Vec<f64>,
    /// Hypothesis success by number of missing subgoals.
    pub hypothesis_table: Vec<f64>,
    pub reward: f64,
    pub penalty: f64,
}

impl Default for EboConfig {
    fn default() -> Self {
        let named = |items: &[(&str, &[usize])]| items.iter().map(|(n, v)| (n.to_string(), v.to_vec())).collect();
        Self {
            label: "default".into(),
            workability: named(&[
                ("IADS", &[0, 1, 2]),
                ("air_force", &[3]),
                ("artillery", &[4, 5, 6]),
                ("ground_force", &[7]),
                ("morale", &[8]),
                ("commander_in_custody", &[9, 10]),
            ]),
            subgoals: named(&[
                ("air_superiority", &[0, 1]),
                ("territory_occupation", &[2, 3]),
                ("commander_surrender", &[4, 5]),
            ]),
            rule: WorkabilityRule::HalfThenZero,
            outcome_success: 0.9,
            subgoal_table: vec![1.0, 0.5, 0.0],
            hypothesis_table: vec![1.0, 0.6, 0.3, 0.0],
            reward: 1000.0,
            penalty: -500.0,
        }
    }
}

/// Alternative readings of the model's edges and tables, default first.
pub fn ebo_mapping_variants() -> Vec<EboConfig> {
    let base = EboConfig::default();
    let mut out = vec![base.clone()];

    let mut multiplicative = base.clone();
    multiplicative.label = "multiplicative-workability".into();
    multiplicative.rule = WorkabilityRule::Multiplicative;
    out.push(multiplicative);

    let mut air_in_iads = base.clone();
    air_in_iads.label = "air-strike-in-IADS".into();
    air_in_iads.workability[0].1 = vec![0, 1, 2, 3];
    air_in_iads.workability[1].1 = vec![3];
    out.push(air_in_iads);

    let mut swapped = base.clone();
    swapped.label = "special-force-to-ground-force".into();
    swapped.workability[3].1 = vec![7, 10];
    swapped.workability[5].1 = vec![9];
    out.push(swapped);

    let mut regrouped = base.clone();
    regrouped.label = "artillery-to-air-superiority".into();
    regrouped.subgoals = vec![
        ("air_superiority".into(), vec![0, 1, 2]),
        ("territory_occupation".into(), vec![3]),
        ("commander_surrender".into(), vec![4, 5]),
    ];
    out.push(regrouped);

    let mut subgoal_strict = base;
    subgoal_strict.label = "subgoal-needs-all-children".into();
    subgoal_strict.subgoal_table = vec![1.0, 0.0, 0.0];
    out.push(subgoal_strict);
    out
}

/// The model under the default mapping.
pub fn build_ebo<T: Scalar>() -> InfluenceDiagram<T> {
    build_ebo_with(&EboConfig::default())
}

fn success_by_misses<T: Scalar>(parents: usize, table: impl Fn(usize) -> f64) -> Vec<T> {
    let cards = vec![2; parents];
    let mut cpt = Vec::with_capacity(2 << parents);
    for code in 0..1usize << parents {
        let misses = decode_configuration(&cards, code).iter().filter(|&&v| v == 0).count();
        let p = table(misses);
        cpt.push(T::of(1.0 - p));
        cpt.push(T::of(p));
    }
    cpt
}

fn from_table(table: &[f64]) -> impl Fn(usize) -> f64 + '_ {
    move |k| table.get(k).copied().unwrap_or(0.0)
}

pub fn build_ebo_with<T: Scalar>(config: &EboConfig) -> InfluenceDiagram<T> {
    let mut b = DiagramBuilder::new();
    let actions: Vec<NodeId> = EBO_ACTIONS.iter().map(|(name, _)| b.decision(name, 2, &[])).collect();
    let outcomes: Vec<NodeId> = EBO_ACTIONS
        .iter()
        .zip(&actions)
        .map(|((name, _), &a)| {
            let p = config.outcome_success;
            b.chance(&format!("{name}_outcome"), 2, &[a], vec![T::one(), T::zero(), T::of(1.0 - p), T::of(p)])
        })
        .collect();
    let workability: Vec<NodeId> = config
        .workability
        .iter()
        .map(|(name, members)| {
            let parents: Vec<NodeId> = members.iter().map(|&i| outcomes[i]).collect();
            b.chance(name, 2, &parents, success_by_misses(parents.len(), |k| config.rule.success(k)))
        })
        .collect();
    let subgoals: Vec<NodeId> = config
        .subgoals
        .iter()
        .map(|(name, members)| {
            let parents: Vec<NodeId> = members.iter().map(|&i| workability[i]).collect();
            b.chance(name, 2, &parents, success_by_misses(parents.len(), from_table(&config.subgoal_table)))
        })
        .collect();
    let hypothesis =
        b.chance("hypothesis", 2, &subgoals, success_by_misses(subgoals.len(), from_table(&config.hypothesis_table)));
    b.utility("win_war", &[hypothesis], vec![T::of(config.penalty), T::of(config.reward)]);
    for ((name, cost), &a) in EBO_ACTIONS.iter().zip(&actions) {
        b.utility(&format!("cost_{name}"), &[a], vec![T::zero(), T::of(-cost)]);
    }
    b.build().expect("EBO model is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{expected_utility, pure_strategy_count, Strategy};

    #[test]
    fn structure() {
        let d = build_ebo::<f64>();
        assert_eq!(d.decisions().len(), 11);
        assert_eq!(d.utility_nodes().len(), 12);
        assert_eq!(d.chance_nodes().len(), 21);
        assert_eq!(d.utility_range(), Some((-500.0, 1000.0)));
        assert_eq!(pure_strategy_count(&d), Some(2048));
        assert!(d.decisions().iter().all(|&x| d.node(x).parents.is_empty()));
        for c in ebo_mapping_variants() {
            assert!(build_ebo_with::<f64>(&c).validate().is_empty(), "{}", c.label);
        }
    }

    #[test]
    fn closed_form_values() {
        let d = build_ebo::<f64>();
        // nothing taken: single-parent workability nodes keep one half, the
        // others fail, so each subgoal holds with probability 1/4
        let none = Strategy::constant_choice(&d, |_| 0);
        let ph_none = 3.0 * 0.25 * 0.75 * 0.75 * 0.3 + 3.0 * 0.25 * 0.25 * 0.75 * 0.6 + 0.25f64.powi(3);
        assert!((expected_utility(&d, &none) - (1500.0 * ph_none - 500.0)).abs() < 1e-9);

        // everything taken: hand-composed chain of the default tables
        let work = |n: i32| {
            let p: f64 = 0.9;
            p.powi(n) + 0.5 * n as f64 * (1.0 - p) * p.powi(n - 1)
        };
        let sub = |a: f64, b: f64| a * b + 0.5 * (a * (1.0 - b) + b * (1.0 - a));
        let s = [sub(work(3), work(1)), sub(work(3), work(1)), sub(work(1), work(2))];
        let mut ph = 0.0;
        for mask in 0..8u32 {
            let mut pr = 1.0;
            for (i, p) in s.iter().enumerate() {
                pr *= if mask & (1 << i) != 0 { *p } else { 1.0 - p };
            }
            ph += pr * [0.0, 0.3, 0.6, 1.0][mask.count_ones() as usize];
        }
        let all = Strategy::constant_choice(&d, |_| 1);
        let costs: f64 = EBO_ACTIONS.iter().map(|(_, c)| c).sum();
        let expect = 1500.0 * ph - 500.0 - costs;
        assert!((expected_utility(&d, &all) - expect).abs() < 1e-9);
        assert!((expect - 318.9249).abs() < 1e-3);
    }
}
