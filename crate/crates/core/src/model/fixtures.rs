//! Small hand-built diagrams used across tests, examples and the CLI.

use super::diagram::{DiagramBuilder, InfluenceDiagram, NodeId};
use crate::scalar::Scalar;

/// One binary decision with a single utility child: f(d) = 5, f(¬d) = 2.
pub struct Trivial<T> {
    pub diagram: InfluenceDiagram<T>,
    pub decision: NodeId,
    pub utility: NodeId,
}

pub fn trivial<T: Scalar>() -> Trivial<T> {
    let mut b = DiagramBuilder::new();
    let decision = b.decision("d", 2, &[]);
    let utility = b.utility("u", &[decision], vec![T::of(5.0), T::of(2.0)]);
    Trivial { diagram: b.build().expect("valid fixture"), decision, utility }
}

/// The two-decision territory-occupation example: ground attack and bridge
/// bombing, each with a cost, feeding a goal with a profit.
///
/// Binary categories are ordered (yes, no) for decisions and (success,
/// failure) for chance nodes.
pub struct BridgeAttack<T> {
    pub diagram: InfluenceDiagram<T>,
    /// do_ground_attack
    pub d1: NodeId,
    /// bomb_bridge
    pub d2: NodeId,
    /// cost_of_attack
    pub u1: NodeId,
    /// cost_of_bombing
    pub u2: NodeId,
    /// ground_attack
    pub c1: NodeId,
    /// bridge_condition
    pub c2: NodeId,
    /// territory_occupation
    pub c3: NodeId,
    /// profit_of_goal
    pub u3: NodeId,
}

pub fn bridge_attack<T: Scalar>() -> BridgeAttack<T> {
    let v = |xs: &[f64]| xs.iter().map(|&x| T::of(x)).collect::<Vec<T>>();
    let mut b = DiagramBuilder::new();
    let d1 = b.decision("do_ground_attack", 2, &[]);
    let d2 = b.decision("bomb_bridge", 2, &[]);
    let u1 = b.utility("cost_of_attack", &[d1], v(&[-60.0, 0.0]));
    let u2 = b.utility("cost_of_bombing", &[d2], v(&[-25.0, 0.0]));
    let c1 = b.chance("ground_attack", 2, &[d1], v(&[0.8, 0.2, 0.05, 0.95]));
    let c2 = b.chance("bridge_condition", 2, &[d2], v(&[0.7, 0.3, 0.1, 0.9]));
    let c3 = b.chance(
        "territory_occupation",
        2,
        &[c1, c2],
        // (attack ok, bridge down), (attack ok, bridge up), ...
        v(&[0.9, 0.1, 0.55, 0.45, 0.3, 0.7, 0.02, 0.98]),
    );
    let u3 = b.utility("profit_of_goal", &[c3], v(&[200.0, -20.0]));
    BridgeAttack { diagram: b.build().expect("valid fixture"), d1, d2, u1, u2, c1, c2, c3, u3 }
}

/// Two decisions whose benefits interact through a shared chance node, so
/// that one-at-a-time policy updates stall in a local optimum.
///
/// Starting from (off, off), switching either decision alone lowers the
/// expected utility; switching both raises it.
pub fn coordination<T: Scalar>() -> InfluenceDiagram<T> {
    let v = |xs: &[f64]| xs.iter().map(|&x| T::of(x)).collect::<Vec<T>>();
    let mut b = DiagramBuilder::new();
    let a = b.decision("a", 2, &[]);
    let c = b.decision("c", 2, &[]);
    // success iff both are switched on (alternative 1)
    let s = b.chance("joint", 2, &[a, c], v(&[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0]));
    b.utility("cost_a", &[a], v(&[0.0, -10.0]));
    b.utility("cost_c", &[c], v(&[0.0, -10.0]));
    b.utility("reward", &[s], v(&[0.0, 50.0]));
    b.build().expect("valid fixture")
}

/// Decisions that each affect only their own utility, so the optimum is
/// reached by optimizing each policy independently.
pub fn separable<T: Scalar>() -> InfluenceDiagram<T> {
    let v = |xs: &[f64]| xs.iter().map(|&x| T::of(x)).collect::<Vec<T>>();
    let mut b = DiagramBuilder::new();
    let w = b.chance("weather", 3, &[], v(&[0.2, 0.5, 0.3]));
    let d1 = b.decision("umbrella", 2, &[w]);
    let d2 = b.decision("route", 3, &[]);
    b.utility("comfort", &[w, d1], v(&[3.0, -1.0, 1.0, 0.5, -2.0, 2.0]));
    b.utility("travel", &[d2], v(&[-4.0, 7.0, 1.5]));
    b.build().expect("valid fixture")
}
