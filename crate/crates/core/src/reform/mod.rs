//! Symbolic generation of the bilinear program behind the summed utility
//! marginals, and its linearization into a 0/1 mixed-integer linear program.

mod extract;
mod generate;
mod linearize;
mod lp_format;
mod ordering;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linear::{LinearConstraint, Relation};
use crate::model::NodeId;
use crate::scalar::Scalar;

pub use extract::{extract_selection, extract_strategy, Rounding};
pub use generate::{generate_bilinear, generate_bilinear_auto, BilinearConstraint, BilinearProgram, Monomial};
pub use linearize::linearize;
pub use lp_format::export_lp;
pub use ordering::{choose_precedence_ordering, PrecedenceOrdering};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReformError {
    #[error("invalid precedence ordering: {0}")]
    Ordering(String),
    #[error("nonlinear monomial survives linearization: {0}")]
    Nonlinear(String),
    #[error("assignment is not a valid strategy: {0}")]
    InvalidAssignment(String),
}

/// Role of an optimization variable. Every variable lives in [0, 1].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VariableKind {
    /// Probability of `alternative` under parent configuration `config` of a
    /// former decision node.
    PolicyBinary { decision: NodeId, config: usize, alternative: usize },
    /// Selects vertex `vertex` of the credal set of `node` under `config`.
    VertexBinary { node: NodeId, config: usize, vertex: usize },
    /// Conditional probability of the query category given `context`.
    Term { query: NodeId, context: Vec<(NodeId, usize)> },
    /// Stands for `binary · term`.
    Product { binary: usize, term: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilpVariable {
    pub index: usize,
    pub name: String,
    pub kind: VariableKind,
}

impl MilpVariable {
    pub fn is_binary(&self) -> bool {
        matches!(self.kind, VariableKind::PolicyBinary { .. } | VariableKind::VertexBinary { .. })
    }
}

/// Why a constraint exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintOrigin {
    /// Defines an artificial term of `query` from deeper terms.
    Definition { query: NodeId },
    /// One of the four inequalities tying a product to its factors.
    Linearization { product: usize },
    /// Probabilities of one local distribution sum to one.
    Simplex { node: NodeId, config: usize },
}

/// Binaries whose values form one distribution (exactly one is 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexGroup {
    pub node: NodeId,
    pub config: usize,
    pub members: Vec<usize>,
    /// Whether members are policy alternatives (else credal-set vertices).
    pub policy: bool,
}

/// 0/1 mixed-integer program maximizing the summed query marginals.
#[derive(Clone, Debug, PartialEq)]
pub struct MilpProblem<T> {
    pub variables: Vec<MilpVariable>,
    pub constraints: Vec<LinearConstraint<T>>,
    pub origins: Vec<ConstraintOrigin>,
    /// Maximized; one unit coefficient per query's top-level marginal.
    pub objective: Vec<(usize, T)>,
    pub groups: Vec<SimplexGroup>,
    /// (parent configurations, alternatives) of every former decision.
    pub decision_shapes: BTreeMap<NodeId, (usize, usize)>,
}

impl<T: Scalar> MilpProblem<T> {
    /// PolicyBinary index → (decision, parent configuration, alternative).
    pub fn strategy_map(&self) -> Vec<(usize, (NodeId, usize, usize))> {
        self.variables
            .iter()
            .filter_map(|v| match v.kind {
                VariableKind::PolicyBinary { decision, config, alternative } => {
                    Some((v.index, (decision, config, alternative)))
                }
                _ => None,
            })
            .collect()
    }

    pub fn binaries(&self) -> Vec<usize> {
        self.variables.iter().filter(|v| v.is_binary()).map(|v| v.index).collect()
    }

    pub fn count_by(&self, pred: impl Fn(&ConstraintOrigin) -> bool) -> usize {
        self.origins.iter().filter(|o| pred(o)).count()
    }

    pub fn objective_value(&self, values: &[T]) -> T {
        self.objective.iter().map(|&(i, c)| c * values[i]).sum()
    }

    /// Largest constraint violation of `values`.
    pub fn max_violation(&self, values: &[T]) -> T {
        self.constraints.iter().map(|c| c.violation(values)).fold(T::zero(), T::max)
    }

    /// Constraints restricted to one product variable.
    pub fn linearization_of(&self, product: usize) -> Vec<&LinearConstraint<T>> {
        self.constraints
            .iter()
            .zip(&self.origins)
            .filter(|(_, o)| **o == ConstraintOrigin::Linearization { product })
            .map(|(c, _)| c)
            .collect()
    }

    pub(crate) fn push(&mut self, constraint: LinearConstraint<T>, origin: ConstraintOrigin) {
        debug_assert!(!constraint.coefficients.is_empty() || constraint.relation != Relation::Eq);
        self.constraints.push(constraint);
        self.origins.push(origin);
    }
}

/// Identifier-safe version of `name` ([A-Za-z0-9_]).
pub(crate) fn sanitize(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' }).collect()
}
