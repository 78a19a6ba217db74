use std::collections::HashMap;

use super::{BilinearProgram, ConstraintOrigin, MilpProblem, MilpVariable, Monomial, ReformError, VariableKind};
use crate::linear::{LinearConstraint, Relation};
use crate::scalar::Scalar;

/// Replaces every product `b · t` by a variable `y` tied to its factors by
///
/// ```text
/// y ≥ 0,  y ≤ b,  y ≥ t − 1 + b,  y ≤ t
/// ```
///
/// then appends one simplex equality per group of binaries. Identical
/// `(b, t)` pairs share one `y`.
pub fn linearize<T: Scalar>(program: &BilinearProgram<T>) -> Result<MilpProblem<T>, ReformError> {
    let mut milp = MilpProblem {
        variables: program.variables.clone(),
        constraints: Vec::new(),
        origins: Vec::new(),
        objective: program.objective.iter().map(|&i| (i, T::one())).collect(),
        groups: program.groups.clone(),
        decision_shapes: program.decision_shapes.clone(),
    };
    let mut products: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pending = Vec::new();

    for constraint in &program.constraints {
        let mut terms = Vec::with_capacity(constraint.monomials.len());
        let mut constant = T::zero();
        for monomial in &constraint.monomials {
            match *monomial {
                Monomial::Linear { var, coef } => terms.push((var, coef)),
                Monomial::Constant(c) => constant += c,
                Monomial::Bilinear { binary, term, coef } => {
                    if !milp.variables[binary].is_binary() {
                        return Err(ReformError::Nonlinear(format!(
                            "{} · {}",
                            milp.variables[binary].name, milp.variables[term].name
                        )));
                    }
                    let y = *products.entry((binary, term)).or_insert_with(|| {
                        let index = milp.variables.len();
                        milp.variables.push(MilpVariable {
                            index,
                            name: format!("y_{index}"),
                            kind: VariableKind::Product { binary, term },
                        });
                        pending.push((index, binary, term));
                        index
                    });
                    terms.push((y, coef));
                }
            }
        }
        milp.push(
            LinearConstraint::new(terms, Relation::Eq, -constant),
            ConstraintOrigin::Definition { query: constraint.query },
        );
    }

    let one = T::one();
    for (y, b, t) in pending {
        let origin = ConstraintOrigin::Linearization { product: y };
        milp.push(LinearConstraint::new([(y, one)], Relation::Ge, T::zero()), origin);
        milp.push(LinearConstraint::new([(y, one), (b, -one)], Relation::Le, T::zero()), origin);
        milp.push(LinearConstraint::new([(y, one), (t, -one), (b, -one)], Relation::Ge, -one), origin);
        milp.push(LinearConstraint::new([(y, one), (t, -one)], Relation::Le, T::zero()), origin);
    }

    for group in &program.groups {
        milp.push(
            LinearConstraint::new(group.members.iter().map(|&m| (m, one)), Relation::Eq, one),
            ConstraintOrigin::Simplex { node: group.node, config: group.config },
        );
    }
    Ok(milp)
}
