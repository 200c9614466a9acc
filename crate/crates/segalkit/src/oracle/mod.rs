//! Brute-force verifiers, independent of the constructions they check.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fincat::{SetDiagram, SetMap};

mod adjunction;
mod categories;

pub use adjunction::verify_corepresentation;
pub use categories::{certify_equivalent, certify_isomorphic, find_isomorphism, nontrivial_isomorphism, skeleton};

/// The outcome of an exhaustive check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub log: Vec<String>,
    pub passed: bool,
    pub counterexample: Option<serde_json::Value>,
}

impl Certificate {
    pub fn pass(claim: impl Into<String>, log: Vec<String>) -> Self {
        Self {
            claim: claim.into(),
            log,
            passed: true,
            counterexample: None,
        }
    }

    pub fn fail(claim: impl Into<String>, log: Vec<String>, counterexample: serde_json::Value) -> Self {
        Self {
            claim: claim.into(),
            log,
            passed: false,
            counterexample: Some(counterexample),
        }
    }
}

/// Checks that `legs` form a limit cone over `diagram`.
///
/// Every compatible family is enumerated by plain backtracking in node order,
/// and each must be the image of exactly one apex element.
pub fn verify_limit(legs: &[SetMap], diagram: &SetDiagram<'_>, budget: usize) -> Result<Certificate> {
    let claim = "limit cone";
    let n = diagram.sizes.len();
    if legs.len() != n {
        return Ok(Certificate::fail(
            claim,
            vec![],
            json!({ "reason": "leg count differs from node count", "legs": legs.len(), "nodes": n }),
        ));
    }
    let apex = legs.first().map_or(1, SetMap::domain);
    for (v, leg) in legs.iter().enumerate() {
        if leg.domain() != apex || leg.codomain != diagram.sizes[v] {
            return Ok(Certificate::fail(claim, vec![], json!({ "reason": "ill-typed leg", "node": v })));
        }
    }
    for (i, a) in diagram.arrows.iter().enumerate() {
        for e in 0..apex {
            if diagram.apply(a, legs[a.source].apply(e)) != legs[a.target].apply(e) {
                return Ok(Certificate::fail(
                    claim,
                    vec![format!("legs do not commute with arrow {i}")],
                    json!({ "reason": "not a cone", "apex_element": e, "arrow": i }),
                ));
            }
        }
    }
    let mut factorizations: HashMap<Vec<usize>, usize> = HashMap::new();
    for e in 0..apex {
        let family: Vec<usize> = legs.iter().map(|l| l.apply(e)).collect();
        *factorizations.entry(family).or_default() += 1;
    }
    // arrows to check once both endpoints are assigned
    let mut due = vec![Vec::new(); n];
    for a in &diagram.arrows {
        due[a.source.max(a.target)].push(*a);
    }
    let mut cones = 0usize;
    let mut work = 0usize;
    let mut family = Vec::with_capacity(n);
    let mut failure = None;
    enumerate_cones(diagram, &due, &mut family, &mut work, budget, &mut |family| {
        cones += 1;
        let count = factorizations.get(family).copied().unwrap_or(0);
        if count != 1 && failure.is_none() {
            failure = Some(json!({ "reason": "cone without unique factorization", "cone": family, "factorizations": count }));
        }
    })?;
    let log = vec![format!("apex {apex}"), format!("{cones} cones from the point enumerated"), format!("{work} partial assignments")];
    Ok(match failure {
        Some(c) => Certificate::fail(claim, log, c),
        None if cones != apex => Certificate::fail(
            claim,
            log,
            json!({ "reason": "apex elements share a family", "apex": apex, "cones": cones }),
        ),
        None => Certificate::pass(claim, log),
    })
}

fn enumerate_cones(
    diagram: &SetDiagram<'_>,
    due: &[Vec<crate::fincat::DiagramArrow>],
    family: &mut Vec<usize>,
    work: &mut usize,
    budget: usize,
    found: &mut dyn FnMut(&[usize]),
) -> Result<()> {
    let v = family.len();
    if v == diagram.sizes.len() {
        found(family);
        return Ok(());
    }
    for x in 0..diagram.sizes[v] {
        *work += 1;
        if *work > budget {
            return Err(Error::SearchBudgetExceeded {
                budget,
                during: "enumerating cones".into(),
            });
        }
        family.push(x);
        if due[v].iter().all(|a| diagram.apply(a, family[a.source]) == family[a.target]) {
            enumerate_cones(diagram, due, family, work, budget, found)?;
        }
        family.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{diagram_limit, FinSetBase};

    fn product_diagram() -> SetDiagram<'static> {
        let mut d = SetDiagram::new();
        d.add_node(2);
        d.add_node(3);
        d
    }

    #[test]
    fn identity_cone_passes() {
        let mut d = SetDiagram::new();
        d.add_node(3);
        let cert = verify_limit(&[SetMap::identity(3)], &d, 1000).unwrap();
        assert!(cert.passed);
    }

    #[test]
    fn product_cone_and_swapped_mutant() {
        let d = product_diagram();
        let lim = diagram_limit(&d, &FinSetBase::default(), "product", None).unwrap();
        let legs = vec![lim.leg(0, 2), lim.leg(1, 3)];
        assert!(verify_limit(&legs, &d, 1000).unwrap().passed);
        // swap two values of one projection so that two elements collide
        let mut bad = legs.clone();
        let (x, y) = (bad[1].table[0], bad[1].table[1]);
        bad[1].table[0] = y;
        bad[1].table[1] = x;
        bad[1].table[3] = y;
        let cert = verify_limit(&bad, &d, 1000).unwrap();
        assert!(!cert.passed);
        assert!(cert.counterexample.is_some());
    }

    #[test]
    fn budget_is_hard() {
        let d = product_diagram();
        let lim = diagram_limit(&d, &FinSetBase::default(), "product", None).unwrap();
        let legs = vec![lim.leg(0, 2), lim.leg(1, 3)];
        assert!(matches!(
            verify_limit(&legs, &d, 3),
            Err(Error::SearchBudgetExceeded { .. })
        ));
    }
}
