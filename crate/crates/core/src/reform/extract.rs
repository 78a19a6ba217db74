use std::collections::BTreeMap;

use super::{MilpProblem, ReformError, SimplexGroup};
use crate::credal::StrategySelection;
use crate::model::{Policy, Strategy};
use crate::scalar::Scalar;

const INTEGRALITY: f64 = 1e-6;

/// How binary values are turned into choices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    /// Every binary must lie within 1e-6 of 0 or 1.
    Strict,
    /// Pick the largest member of each group; used to repair fractional
    /// relaxation points.
    Argmax,
}

fn chosen_members<'a, T: Scalar>(
    milp: &'a MilpProblem<T>,
    values: &[T],
    rounding: Rounding,
) -> Result<Vec<(usize, &'a SimplexGroup)>, ReformError> {
    if values.len() != milp.variables.len() {
        return Err(ReformError::InvalidAssignment(format!(
            "{} values for {} variables",
            values.len(),
            milp.variables.len()
        )));
    }
    let tol = T::of(INTEGRALITY);
    let mut out = Vec::with_capacity(milp.groups.len());
    for group in &milp.groups {
        let pick = match rounding {
            Rounding::Strict => {
                let mut ones = Vec::new();
                for (k, &m) in group.members.iter().enumerate() {
                    let v = values[m];
                    if (v - T::one()).abs() <= tol {
                        ones.push(k);
                    } else if v.abs() > tol {
                        return Err(ReformError::InvalidAssignment(format!(
                            "{} = {v} is not integral",
                            milp.variables[m].name
                        )));
                    }
                }
                if ones.len() != 1 {
                    return Err(ReformError::InvalidAssignment(format!(
                        "group of {} sums to {} after rounding",
                        milp.variables[group.members[0]].name,
                        ones.len()
                    )));
                }
                ones[0]
            }
            Rounding::Argmax => {
                let mut best = 0;
                for (k, &m) in group.members.iter().enumerate() {
                    if values[m] > values[group.members[best]] {
                        best = k;
                    }
                }
                best
            }
        };
        out.push((pick, group));
    }
    Ok(out)
}

/// Pure strategy encoded by the policy binaries of `values`.
pub fn extract_strategy<T: Scalar>(
    milp: &MilpProblem<T>,
    values: &[T],
    rounding: Rounding,
) -> Result<Strategy<T>, ReformError> {
    let mut choices: BTreeMap<_, Vec<usize>> =
        milp.decision_shapes.iter().map(|(&d, &(configs, _))| (d, vec![0; configs])).collect();
    for (pick, group) in chosen_members(milp, values, rounding)? {
        if group.policy {
            choices.get_mut(&group.node).expect("decision shape")[group.config] = pick;
        }
    }
    Ok(Strategy::from_policies_unchecked(
        choices.into_iter().map(|(d, c)| Policy::pure(d, milp.decision_shapes[&d].1, &c)),
    ))
}

/// Strategy plus credal-vertex choices encoded by `values`.
pub fn extract_selection<T: Scalar>(
    milp: &MilpProblem<T>,
    values: &[T],
    rounding: Rounding,
) -> Result<StrategySelection<T>, ReformError> {
    let strategy = extract_strategy(milp, values, rounding)?;
    let mut selection = StrategySelection::from_strategy(&strategy);
    for (pick, group) in chosen_members(milp, values, rounding)? {
        if !group.policy {
            let n = milp.groups.iter().filter(|g| !g.policy && g.node == group.node).count();
            selection.vertices.entry(group.node).or_insert_with(|| vec![0; n])[group.config] = pick;
        }
    }
    Ok(selection)
}
