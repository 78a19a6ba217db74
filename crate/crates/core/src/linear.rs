//! Sparse linear constraints shared by the reformulation and the LP solver.

use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        })
    }
}

/// `Σ coefficients · x  (relation)  rhs`, coefficients sorted by variable
/// index without duplicates or zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearConstraint<T> {
    pub coefficients: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: Scalar> LinearConstraint<T> {
    /// Sums duplicate indices and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (usize, T)>, relation: Relation, rhs: T) -> Self {
        let mut coefficients: Vec<(usize, T)> = terms.into_iter().collect();
        coefficients.sort_by_key(|&(i, _)| i);
        let mut merged: Vec<(usize, T)> = Vec::with_capacity(coefficients.len());
        for (i, c) in coefficients {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => merged.push((i, c)),
            }
        }
        merged.retain(|&(_, c)| c != T::zero());
        Self { coefficients: merged, relation, rhs }
    }

    pub fn activity(&self, values: &[T]) -> T {
        self.coefficients.iter().map(|&(i, c)| c * values[i]).sum()
    }

    /// Amount by which `values` violate the constraint (zero when satisfied).
    pub fn violation(&self, values: &[T]) -> T {
        let lhs = self.activity(values);
        match self.relation {
            Relation::Eq => (lhs - self.rhs).abs(),
            Relation::Le => (lhs - self.rhs).max(T::zero()),
            Relation::Ge => (self.rhs - lhs).max(T::zero()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_measures() {
        let c = LinearConstraint::new([(2, 1.0), (0, 2.0), (2, -1.0), (1, 0.5)], Relation::Le, 1.0);
        assert_eq!(c.coefficients, vec![(0, 2.0), (1, 0.5)]);
        assert_eq!(c.violation(&[1.0, 0.0, 9.0]), 1.0);
        assert_eq!(c.violation(&[0.25, 1.0, 9.0]), 0.0);
        let g = LinearConstraint::new([(0, 1.0)], Relation::Ge, 0.5);
        assert_eq!(g.violation(&[0.25]), 0.25);
    }
}
