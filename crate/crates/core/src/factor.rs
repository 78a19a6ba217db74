//! Table factors and sum-product variable elimination.

use std::collections::{BTreeMap, BTreeSet};

use crate::scalar::Scalar;

/// Non-negative table over a set of discrete variables, stored row-major with
/// the last variable varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor<T> {
    vars: Vec<usize>,
    cards: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> Factor<T> {
    pub fn new(vars: Vec<usize>, cards: Vec<usize>, values: Vec<T>) -> Self {
        debug_assert_eq!(vars.len(), cards.len());
        debug_assert_eq!(values.len(), cards.iter().product::<usize>());
        Self { vars, cards, values }
    }

    pub fn scalar(value: T) -> Self {
        Self { vars: Vec::new(), cards: Vec::new(), values: vec![value] }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = vec![0; self.cards.len()];
        let mut acc = 1;
        for i in (0..self.cards.len()).rev() {
            s[i] = acc;
            acc *= self.cards[i];
        }
        s
    }

    /// Keeps only entries where `var == value`, dropping `var` from the scope.
    pub fn restrict(&self, var: usize, value: usize) -> Self {
        let Some(pos) = self.vars.iter().position(|&v| v == var) else {
            return self.clone();
        };
        let strides = self.strides();
        let mut vars = self.vars.clone();
        let mut cards = self.cards.clone();
        vars.remove(pos);
        cards.remove(pos);
        let outer: usize = self.cards[..pos].iter().product();
        let inner = strides[pos];
        let mut values = Vec::with_capacity(outer * inner);
        for o in 0..outer {
            let base = o * self.cards[pos] * inner + value * inner;
            values.extend_from_slice(&self.values[base..base + inner]);
        }
        Self { vars, cards, values }
    }
}

/// Multiplies `factors` and sums `var` out of the product.
pub fn multiply_and_sum_out<T: Scalar>(factors: &[Factor<T>], var: usize) -> Factor<T> {
    let mut scope: Vec<usize> = Vec::new();
    let mut cards: Vec<usize> = Vec::new();
    let mut var_card = 1;
    for f in factors {
        for (&v, &c) in f.vars.iter().zip(&f.cards) {
            if v == var {
                var_card = c;
            } else if !scope.contains(&v) {
                scope.push(v);
                cards.push(c);
            }
        }
    }
    let mut all = scope.clone();
    all.push(var);
    let mut all_cards = cards.clone();
    all_cards.push(var_card);

    let stride_table: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| {
            let s = f.strides();
            all.iter().map(|v| f.vars.iter().position(|x| x == v).map_or(0, |p| s[p])).collect()
        })
        .collect();

    let out_len: usize = cards.iter().product();
    let mut out = vec![T::zero(); out_len];
    let mut digits = vec![0usize; all.len()];
    let mut idx = vec![0usize; factors.len()];
    let last = all.len() - 1;
    for slot in out.iter_mut() {
        let mut acc = T::zero();
        for x in 0..var_card {
            let mut prod = T::one();
            for (f, &i) in factors.iter().zip(&idx) {
                prod *= f.values[i];
            }
            acc += prod;
            if x + 1 < var_card {
                for (i, st) in idx.iter_mut().zip(&stride_table) {
                    *i += st[last];
                }
            }
        }
        // reset the eliminated digit
        for (i, st) in idx.iter_mut().zip(&stride_table) {
            *i -= st[last] * (var_card - 1);
        }
        *slot = acc;
        // advance the odometer over the kept scope
        let mut p = last;
        while p > 0 {
            p -= 1;
            digits[p] += 1;
            if digits[p] < all_cards[p] {
                for (i, st) in idx.iter_mut().zip(&stride_table) {
                    *i += st[p];
                }
                break;
            }
            digits[p] = 0;
            for (i, st) in idx.iter_mut().zip(&stride_table) {
                *i -= st[p] * (all_cards[p] - 1);
            }
        }
    }
    Factor { vars: scope, cards, values: out }
}

/// Greedy min-degree elimination order over the interaction graph of
/// `scopes`; ties go to the smallest variable id.
pub fn min_degree_order(scopes: &[Vec<usize>]) -> Vec<usize> {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for scope in scopes {
        for &a in scope {
            let entry = adj.entry(a).or_default();
            entry.extend(scope.iter().copied().filter(|&b| b != a));
        }
    }
    let mut order = Vec::with_capacity(adj.len());
    while !adj.is_empty() {
        let (&v, _) = adj.iter().min_by_key(|(&v, n)| (n.len(), v)).expect("non-empty");
        let neighbours = adj.remove(&v).unwrap_or_default();
        for &a in &neighbours {
            if let Some(set) = adj.get_mut(&a) {
                set.remove(&v);
                set.extend(neighbours.iter().copied().filter(|&b| b != a));
            }
        }
        order.push(v);
    }
    order
}

/// Sums every variable out of the product of `factors`, following `order`.
/// Variables missing from `order` are eliminated afterwards in id order.
pub fn eliminate_all<T: Scalar>(mut factors: Vec<Factor<T>>, order: &[usize]) -> T {
    let mut pending: Vec<usize> = order.to_vec();
    let mut leftovers: BTreeSet<usize> = factors.iter().flat_map(|f| f.vars.iter().copied()).collect();
    for v in &pending {
        leftovers.remove(v);
    }
    pending.extend(leftovers);
    for var in pending {
        let (with, without): (Vec<_>, Vec<_>) = factors.into_iter().partition(|f| f.vars.contains(&var));
        factors = without;
        if !with.is_empty() {
            factors.push(multiply_and_sum_out(&with, var));
        }
    }
    factors.iter().fold(T::one(), |acc, f| acc * f.values[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(factors: &[Factor<f64>], cards: &BTreeMap<usize, usize>) -> f64 {
        let vars: Vec<usize> = cards.keys().copied().collect();
        let total: usize = cards.values().product();
        let mut sum = 0.0;
        for code in 0..total {
            let mut rest = code;
            let mut assignment = BTreeMap::new();
            for &v in vars.iter().rev() {
                assignment.insert(v, rest % cards[&v]);
                rest /= cards[&v];
            }
            let mut prod = 1.0;
            for f in factors {
                let mut idx = 0;
                for (&v, &c) in f.vars.iter().zip(&f.cards) {
                    idx = idx * c + assignment[&v];
                }
                prod *= f.values[idx];
            }
            sum += prod;
        }
        sum
    }

    #[test]
    fn elimination_matches_enumeration() {
        let f1 = Factor::new(vec![0, 1], vec![2, 3], vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6]);
        let f2 = Factor::new(vec![2, 1], vec![2, 3], vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let f3 = Factor::new(vec![2], vec![2], vec![0.25, 0.75]);
        let cards: BTreeMap<usize, usize> = [(0, 2), (1, 3), (2, 2)].into_iter().collect();
        let fs = vec![f1, f2, f3];
        let expect = brute(&fs, &cards);
        let order = min_degree_order(&fs.iter().map(|f| f.vars.clone()).collect::<Vec<_>>());
        assert_eq!(order.len(), 3);
        let got = eliminate_all(fs.clone(), &order);
        assert!((got - expect).abs() < 1e-12);
        assert!((eliminate_all(fs, &[]) - expect).abs() < 1e-12);
    }

    #[test]
    fn restrict_picks_slice() {
        let f = Factor::new(vec![0, 1], vec![2, 3], vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6]);
        assert_eq!(f.restrict(0, 1).values(), &[0.4, 0.5, 0.6]);
        assert_eq!(f.restrict(1, 2).values(), &[0.3, 0.6]);
        assert_eq!(f.restrict(7, 0), f);
    }

    #[test]
    fn min_degree_prefers_leaves() {
        // chain 0 - 1 - 2: endpoints have degree one, pick 0 first
        let order = min_degree_order(&[vec![0, 1], vec![1, 2]]);
        assert_eq!(order, vec![0, 1, 2]);
    }
}
