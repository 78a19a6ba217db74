use std::fmt::Write;

use super::MilpProblem;
use crate::scalar::Scalar;

/// Renders `milp` as a plain-text LP document.
///
/// Sections appear in the order `Maximize`, `Subject To`, `Bounds`,
/// `Binaries`, `End`; constraint `i` is named `c{i}`; every coefficient is
/// written with 17 significant digits.
pub fn export_lp<T: Scalar>(milp: &MilpProblem<T>) -> String {
    let mut out = String::new();
    out.push_str("Maximize\n obj:");
    for &(i, c) in &milp.objective {
        push_term(&mut out, c, &milp.variables[i].name);
    }
    out.push_str("\nSubject To\n");
    for (k, constraint) in milp.constraints.iter().enumerate() {
        let _ = write!(out, " c{k}:");
        for &(i, c) in &constraint.coefficients {
            push_term(&mut out, c, &milp.variables[i].name);
        }
        let _ = writeln!(out, " {} {}", constraint.relation, number(constraint.rhs));
    }
    out.push_str("Bounds\n");
    for v in &milp.variables {
        let _ = writeln!(out, " 0 <= {} <= 1", v.name);
    }
    out.push_str("Binaries\n");
    for v in milp.variables.iter().filter(|v| v.is_binary()) {
        let _ = writeln!(out, " {}", v.name);
    }
    out.push_str("End\n");
    out
}

fn push_term<T: Scalar>(out: &mut String, c: T, name: &str) {
    let v = c.as_f64();
    let sign = if v < 0.0 { '-' } else { '+' };
    let _ = write!(out, " {sign} {:.16e} {name}", v.abs());
}

fn number<T: Scalar>(v: T) -> String {
    let v = v.as_f64();
    format!("{:.16e}", if v == 0.0 { 0.0 } else { v })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::credal::limid_to_credal;
    use crate::model::fixtures::bridge_attack;
    use crate::model::normalize_utilities;
    use crate::reform::{generate_bilinear_auto, linearize};

    fn section<'a>(text: &'a str, name: &str, next: &str) -> Vec<&'a str> {
        let start = text.find(&format!("{name}\n")).unwrap() + name.len() + 1;
        let end = text.find(&format!("{next}\n")).unwrap();
        text[start..end].lines().collect()
    }

    #[test]
    fn empty_problem_has_all_sections() {
        let milp: MilpProblem<f64> = MilpProblem {
            variables: vec![],
            constraints: vec![],
            origins: vec![],
            objective: vec![],
            groups: vec![],
            decision_shapes: BTreeMap::new(),
        };
        assert_eq!(export_lp(&milp), "Maximize\n obj:\nSubject To\nBounds\nBinaries\nEnd\n");
    }

    #[test]
    fn bridge_attack_binaries_and_determinism() {
        let f = bridge_attack::<f64>();
        let net = limid_to_credal(&normalize_utilities(&f.diagram).unwrap().0).unwrap();
        let milp = linearize(&generate_bilinear_auto(&net)).unwrap();
        let text = export_lp(&milp);
        assert_eq!(section(&text, "Binaries", "End").len(), 4);
        assert_eq!(section(&text, "Subject To", "Bounds").len(), milp.constraints.len());
        let again = export_lp(&linearize(&generate_bilinear_auto(&net)).unwrap());
        assert_eq!(text, again);
        assert!(text.contains(" + 1.0000000000000000e0 "));
    }
}
