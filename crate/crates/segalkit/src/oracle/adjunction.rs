use std::collections::HashSet;

use serde_json::json;

use super::Certificate;
use crate::delta::enumerate_monotone;
use crate::error::{Error, Result};
use crate::sset::{HomSet, SimplicialMap, TruncSSet};

/// Checks `Hom(Δ^n ⊗ c(C), Y) ≅ Y_n^C` with `eval` as the candidate bijection.
///
/// Each `g ∈ Y_n^C` is transposed by hand to `(θ, c) ↦ θ^* g(c)`; the transposes must
/// be valid, distinct, exhaust `homs`, and be sent back to `g` by `eval`.
pub fn verify_corepresentation(
    n: usize,
    c: usize,
    y: &TruncSSet,
    homs: &HomSet,
    eval: &dyn Fn(&SimplicialMap) -> Vec<usize>,
    budget: usize,
) -> Result<Certificate> {
    let claim = format!("maps out of Δ^{n} ⊗ c({c}) are {c}-tuples of {n}-simplices");
    let yn = y.level(n);
    let total = u32::try_from(c).ok().and_then(|c| yn.checked_pow(c)).unwrap_or(usize::MAX);
    if total > budget {
        return Err(Error::SearchBudgetExceeded {
            budget,
            during: "transposing tuples".into(),
        });
    }
    let levels = homs.source_levels.len();
    let simplices: Vec<_> = (0..levels).map(|m| enumerate_monotone(m, n)).collect();
    let mut seen = HashSet::new();
    for code in 0..total {
        let g: Vec<usize> = (0..c).rev().map(|i| code / yn.pow(i as u32) % yn).collect();
        let map = SimplicialMap {
            levels: simplices
                .iter()
                .map(|level| level.iter().flat_map(|theta| g.iter().map(move |&s| y.act(theta, s))).collect())
                .collect(),
        };
        let Some(e) = homs.find(&map) else {
            return Ok(Certificate::fail(claim, vec![], json!({ "reason": "transpose is not a map", "tuple": g })));
        };
        if !seen.insert(e) {
            return Ok(Certificate::fail(claim, vec![], json!({ "reason": "transposes collide", "tuple": g })));
        }
        if eval(&map) != g {
            return Ok(Certificate::fail(
                claim,
                vec![],
                json!({ "reason": "evaluation does not invert the transpose", "tuple": g, "image": eval(&map) }),
            ));
        }
    }
    let log = vec![format!("{total} tuples transposed"), format!("{} maps", homs.len())];
    if seen.len() != homs.len() {
        return Ok(Certificate::fail(claim, log, json!({ "reason": "maps not hit", "missed": homs.len() - seen.len() })));
    }
    Ok(Certificate::pass(claim, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::tensor;
    use crate::delta::{monotone_rank, MonotoneMap};
    use crate::fincat::{FinCat, FinSetBase};
    use crate::sset::{nerve, sset_hom};

    fn setup(n: usize, c: usize) -> (TruncSSet, HomSet) {
        let base = FinSetBase::new(1 << 14);
        let y = nerve(&FinCat::chain(2), 3, &base).unwrap();
        let t = tensor(&TruncSSet::standard_simplex(n, 3), &TruncSSet::constant(c, 3), &base).unwrap();
        let h = sset_hom(&t, &y, &base).unwrap();
        (y, h)
    }

    #[test]
    fn evaluation_at_identity_passes() {
        for n in 0..=2 {
            let (y, h) = setup(n, 2);
            let id = monotone_rank(&MonotoneMap::identity(n));
            let eval = |m: &SimplicialMap| (0..2).map(|c| m.apply(n, id * 2 + c)).collect();
            let cert = verify_corepresentation(n, 2, &y, &h, &eval, 100_000).unwrap();
            assert!(cert.passed, "{cert:?}");
        }
    }

    #[test]
    fn mutant_unit_fails() {
        let n = 1;
        let (y, h) = setup(n, 2);
        // evaluate at the last vertex instead of the identity
        let v = monotone_rank(&MonotoneMap::vertex(n, 1));
        let eval = |m: &SimplicialMap| (0..2).map(|c| m.apply(0, v * 2 + c)).collect();
        let cert = verify_corepresentation(n, 2, &y, &h, &eval, 100_000).unwrap();
        assert!(!cert.passed);
    }
}
