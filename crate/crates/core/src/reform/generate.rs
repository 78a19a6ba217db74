use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::ordering::{choose_precedence_ordering, frontier};
use super::{sanitize, MilpVariable, PrecedenceOrdering, ReformError, SimplexGroup, VariableKind};
use crate::credal::{relevant_ancestors, CredalNetwork, CredalSpec};
use crate::graph::children_lists;
use crate::model::{configuration_count, decode_configuration, encode_configuration, NodeId};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Monomial<T> {
    Linear {
        var: usize,
        coef: T,
    },
    /// `coef · binary · term`
    Bilinear {
        binary: usize,
        term: usize,
        coef: T,
    },
    Constant(T),
}

/// `Σ monomials = 0`, defining one artificial term of `query`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearConstraint<T> {
    pub query: NodeId,
    pub monomials: Vec<Monomial<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BilinearProgram<T> {
    pub variables: Vec<MilpVariable>,
    pub constraints: Vec<BilinearConstraint<T>>,
    /// Top-level marginal term of each query, in query order.
    pub objective: Vec<usize>,
    pub groups: Vec<SimplexGroup>,
    pub decision_shapes: BTreeMap<NodeId, (usize, usize)>,
}

/// Generates with [`choose_precedence_ordering`] for every query.
pub fn generate_bilinear_auto<T: Scalar>(net: &CredalNetwork<T>) -> BilinearProgram<T> {
    let orderings: Vec<_> = net.queries().iter().map(|q| choose_precedence_ordering(net, q.node)).collect();
    generate_bilinear(net, &orderings).expect("heuristic orderings are valid")
}

/// Symbolic top-down pass per query.
///
/// Processing node `X` under frontier context `F` emits, for every
/// configuration `c` of `F`,
///
/// ```text
/// term(c) = Σ_x p(x | π(X)) · term(c')
/// ```
///
/// where `c'` assigns the frontier after `X` is processed. `p(x | π(X))` is a
/// constant, a policy binary, or a vertex-weighted sum of vertex binaries.
/// Once only the query is left, `term(c')` is the stored query row.
pub fn generate_bilinear<T: Scalar>(
    net: &CredalNetwork<T>,
    orderings: &[PrecedenceOrdering],
) -> Result<BilinearProgram<T>, ReformError> {
    let names = identifier_names(net);
    let mut variables = Vec::new();
    let mut groups = Vec::new();
    let mut decision_shapes = BTreeMap::new();
    // (node, config) -> first binary of that local set
    let mut binary_base: HashMap<(NodeId, usize), usize> = HashMap::new();

    for node in net.nodes() {
        let configs = net.parent_configurations(node.id);
        match &node.spec {
            CredalSpec::Precise(_) => {}
            CredalSpec::FreeDecision => {
                decision_shapes.insert(node.id, (configs, node.domain));
                for config in 0..configs {
                    binary_base.insert((node.id, config), variables.len());
                    let mut members = Vec::new();
                    for alternative in 0..node.domain {
                        let index = variables.len();
                        members.push(index);
                        variables.push(MilpVariable {
                            index,
                            name: format!("b_{}_j{config}_a{alternative}", names[node.id.0]),
                            kind: VariableKind::PolicyBinary { decision: node.id, config, alternative },
                        });
                    }
                    groups.push(SimplexGroup { node: node.id, config, members, policy: true });
                }
            }
            CredalSpec::VertexList(sets) => {
                for (config, set) in sets.iter().enumerate() {
                    binary_base.insert((node.id, config), variables.len());
                    let mut members = Vec::new();
                    for vertex in 0..set.len() {
                        let index = variables.len();
                        members.push(index);
                        variables.push(MilpVariable {
                            index,
                            name: format!("v_{}_j{config}_k{vertex}", names[node.id.0]),
                            kind: VariableKind::VertexBinary { node: node.id, config, vertex },
                        });
                    }
                    groups.push(SimplexGroup { node: node.id, config, members, policy: false });
                }
            }
        }
    }

    let parents = net.parent_lists();
    let children = children_lists(&parents);
    let mut constraints = Vec::new();
    let mut objective = Vec::new();

    for query in net.queries() {
        let q = query.node;
        let ordering = orderings
            .iter()
            .find(|o| o.query == q)
            .ok_or_else(|| ReformError::Ordering(format!("no ordering for `{}`", net.node(q).name)))?;
        let ordering = PrecedenceOrdering::new(net, q, ordering.sequence.clone())?;
        let relevant = relevant_ancestors(net, q);
        let query_row = |assignment: &BTreeMap<NodeId, usize>| -> T {
            let node = net.node(q);
            let vals: Vec<usize> = node.parents.iter().map(|p| assignment[p]).collect();
            let j = encode_configuration(&net.parent_cards(q), &vals);
            match &node.spec {
                CredalSpec::Precise(rows) => rows[j * node.domain + query.category],
                _ => unreachable!("queries are precise"),
            }
        };

        let mut term_ids: BTreeMap<Vec<(NodeId, usize)>, usize> = BTreeMap::new();
        let mut new_term = |variables: &mut Vec<MilpVariable>, context: Vec<(NodeId, usize)>| -> usize {
            if let Some(&i) = term_ids.get(&context) {
                return i;
            }
            let index = variables.len();
            variables.push(MilpVariable {
                index,
                name: format!("t_q{}_{}", q.0, term_ids.len()),
                kind: VariableKind::Term { query: q, context: context.clone() },
            });
            term_ids.insert(context, index);
            index
        };

        let root = new_term(&mut variables, Vec::new());
        objective.push(root);
        if ordering.sequence.len() == 1 {
            let c = query_row(&BTreeMap::new());
            constraints.push(BilinearConstraint {
                query: q,
                monomials: vec![Monomial::Linear { var: root, coef: T::one() }, Monomial::Constant(-c)],
            });
            continue;
        }

        let mut processed = BTreeSet::new();
        let mut context: Vec<NodeId> = Vec::new();
        let steps = ordering.sequence.len() - 1;
        for (k, &x) in ordering.sequence[..steps].iter().enumerate() {
            processed.insert(x);
            let next = frontier(&parents, &children, &relevant, &processed, q);
            let terminal = k + 1 == steps;
            let node = net.node(x);
            let cards: Vec<usize> = context.iter().map(|c| net.node(*c).domain).collect();
            let parent_cards = net.parent_cards(x);

            for code in 0..configuration_count(&cards) {
                let values = decode_configuration(&cards, code);
                let mut assignment: BTreeMap<NodeId, usize> = context.iter().copied().zip(values).collect();
                let key: Vec<(NodeId, usize)> = assignment.iter().map(|(&n, &v)| (n, v)).collect();
                let lhs = new_term(&mut variables, key);
                let pvals: Vec<usize> = node.parents.iter().map(|p| assignment[p]).collect();
                let j = encode_configuration(&parent_cards, &pvals);

                let mut monomials = vec![Monomial::Linear { var: lhs, coef: T::one() }];
                for value in 0..node.domain {
                    assignment.insert(x, value);
                    enum Next<T> {
                        Const(T),
                        Term(usize),
                    }
                    let target = if terminal {
                        Next::Const(query_row(&assignment))
                    } else {
                        let key = next.iter().map(|n| (*n, assignment[n])).collect();
                        Next::Term(new_term(&mut variables, key))
                    };
                    match (&node.spec, target) {
                        (CredalSpec::Precise(rows), target) => {
                            let p = rows[j * node.domain + value];
                            if p == T::zero() {
                                continue;
                            }
                            monomials.push(match target {
                                Next::Const(c) => Monomial::Constant(-p * c),
                                Next::Term(t) => Monomial::Linear { var: t, coef: -p },
                            });
                        }
                        (CredalSpec::FreeDecision, target) => {
                            let b = binary_base[&(x, j)] + value;
                            monomials.push(match target {
                                Next::Const(c) => Monomial::Linear { var: b, coef: -c },
                                Next::Term(t) => Monomial::Bilinear { binary: b, term: t, coef: -T::one() },
                            });
                        }
                        (CredalSpec::VertexList(sets), target) => {
                            let base = binary_base[&(x, j)];
                            for (v, vertex) in sets[j].iter().enumerate() {
                                let p = vertex[value];
                                if p == T::zero() {
                                    continue;
                                }
                                monomials.push(match target {
                                    Next::Const(c) => Monomial::Linear { var: base + v, coef: -p * c },
                                    Next::Term(t) => Monomial::Bilinear { binary: base + v, term: t, coef: -p },
                                });
                            }
                        }
                    }
                }
                assignment.remove(&x);
                constraints.push(BilinearConstraint { query: q, monomials });
            }
            context = next;
        }
    }

    Ok(BilinearProgram { variables, constraints, objective, groups, decision_shapes })
}

/// Sanitized node names, suffixed with the id where sanitizing collides.
fn identifier_names<T: Scalar>(net: &CredalNetwork<T>) -> Vec<String> {
    let raw: Vec<String> = net.nodes().iter().map(|n| sanitize(&n.name)).collect();
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for r in &raw {
        *counts.entry(r.as_str()).or_default() += 1;
    }
    raw.iter()
        .enumerate()
        .map(|(i, r)| if counts[r.as_str()] > 1 || r.is_empty() { format!("{r}_n{i}") } else { r.clone() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::credal::limid_to_credal;
    use crate::model::fixtures::bridge_attack;
    use crate::model::normalize_utilities;

    #[test]
    fn bridge_attack_census_with_reference_ordering() {
        let f = bridge_attack::<f64>();
        let net = limid_to_credal(&normalize_utilities(&f.diagram).unwrap().0).unwrap();
        let orderings = vec![
            PrecedenceOrdering::new(&net, f.u1, vec![f.d1, f.u1]).unwrap(),
            PrecedenceOrdering::new(&net, f.u2, vec![f.d2, f.u2]).unwrap(),
            PrecedenceOrdering::new(&net, f.u3, vec![f.d2, f.c2, f.d1, f.c1, f.c3, f.u3]).unwrap(),
        ];
        let prog = generate_bilinear(&net, &orderings).unwrap();
        let per_query = |q| prog.constraints.iter().filter(|c| c.query == q).count();
        assert_eq!((per_query(f.u1), per_query(f.u2), per_query(f.u3)), (1, 1, 13));
        assert_eq!(prog.groups.len(), 2);
        assert_eq!(prog.objective.len(), 3);

        // the u1 definition only involves the two policy binaries of D1
        let u1 = prog.constraints.iter().find(|c| c.query == f.u1).unwrap();
        assert!(u1.monomials.iter().all(|m| !matches!(m, Monomial::Bilinear { .. })));

        // after C1 the artificial terms of u3 condition on C1 and C2 only
        let contexts: BTreeSet<Vec<NodeId>> = prog
            .variables
            .iter()
            .filter_map(|v| match &v.kind {
                VariableKind::Term { query, context } if *query == f.u3 => {
                    Some(context.iter().map(|(n, _)| *n).collect())
                }
                _ => None,
            })
            .collect();
        let expect: BTreeSet<Vec<NodeId>> =
            [vec![], vec![f.d2], vec![f.c2], vec![f.d1, f.c2], vec![f.c1, f.c2]].into_iter().collect();
        assert_eq!(contexts, expect);
    }

    #[test]
    fn missing_ordering_is_an_error() {
        let f = bridge_attack::<f64>();
        let net = limid_to_credal(&normalize_utilities(&f.diagram).unwrap().0).unwrap();
        let orderings = vec![PrecedenceOrdering::new(&net, f.u1, vec![f.d1, f.u1]).unwrap()];
        assert!(matches!(generate_bilinear(&net, &orderings), Err(ReformError::Ordering(_))));
        let bogus = PrecedenceOrdering { query: f.u1, sequence: vec![f.u1, f.d1] };
        assert!(generate_bilinear(&net, &[bogus]).is_err());
    }

    #[test]
    fn names_are_identifier_safe() {
        let f = bridge_attack::<f64>();
        let net = limid_to_credal(&normalize_utilities(&f.diagram).unwrap().0).unwrap();
        let prog = generate_bilinear_auto(&net);
        assert!(prog.variables.iter().all(|v| v.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')));
        assert_eq!(prog.variables[0].name, "b_do_ground_attack_j0_a0");
    }
}
