use super::*;
use crate::fincat::{FinCat, FinSetBase};
use crate::sset::{nerve, TruncSSet};

fn base() -> FinSetBase {
    FinSetBase::new(4096)
}

fn chain_poset() -> FinCat {
    FinCat::preorder(3, |i, j| i == j || j == 2)
}

#[test]
fn representable_weight_gives_level() {
    let x = nerve(&FinCat::parallel_pair(), 3, &base()).unwrap();
    for n in 0..=3 {
        let lim = weighted_limit(&TruncSSet::standard_simplex(n, n), &x, &base()).unwrap();
        assert_eq!(lim.len(), x.level(n));
    }
}

#[test]
fn boundary_of_edge_is_product() {
    let x = nerve(&FinCat::chain(2), 3, &base()).unwrap();
    let lim = weighted_limit(&TruncSSet::boundary(1, 1), &x, &base()).unwrap();
    assert_eq!(lim.len(), 9);
}

#[test]
fn spine_limit_is_composable_pairs_and_certified() {
    let c = FinCat::cyclic_group(3);
    let x = nerve(&c, 3, &base()).unwrap();
    let s2 = TruncSSet::spine(2, 1);
    let lim = weighted_limit(&s2, &x, &base()).unwrap();
    assert_eq!(lim.len(), c.composable_pairs().count());
    assert!(certify_weighted_limit(&s2, &x, &lim, &base(), 1 << 20).unwrap().passed);
    let full = weighted_limit_via_elements(&TruncSSet::spine(2, 2), &x, &base(), 1 << 20).unwrap();
    assert_eq!(full.apex, lim.len());
    assert!(full.certificate.passed);
}

#[test]
fn segal_maps_of_nerves_and_constants() {
    for x in [
        nerve(&FinCat::parallel_pair(), 3, &base()).unwrap(),
        TruncSSet::constant(3, 3),
    ] {
        assert!(is_segal(&x, &base()).unwrap());
    }
    assert!(!is_segal(&TruncSSet::boundary(2, 3), &base()).unwrap());
}

#[test]
fn restriction_along_spine_inclusion() {
    let x = nerve(&FinCat::chain(2), 2, &base()).unwrap();
    let (spine, inclusion) = TruncSSet::simplex_subobject(2, 2, |f| f.values()[f.source()] <= f.values()[0] + 1).unwrap();
    let full = weighted_limit(&TruncSSet::standard_simplex(2, 2), &x, &base()).unwrap();
    let part = weighted_limit(&spine, &x, &base()).unwrap();
    let r = restrict_limit(&inclusion, &full, &part).unwrap();
    assert!(r.is_bijective());
}

#[test]
fn equiv_of_poset_bg_and_constant() {
    let poset = InternalCategory::from_fincat(&chain_poset(), &base()).unwrap();
    let e = poset.equiv_object(&base()).unwrap();
    assert_eq!(e.len(), 3);
    assert!(poset.is_complete(&base()).unwrap().holds);
    assert!(!poset.is_groupoid(&base()).unwrap().holds);

    let bg = InternalCategory::from_fincat(&FinCat::cyclic_group(2), &base()).unwrap();
    assert_eq!(bg.equiv_object(&base()).unwrap().len(), 2);
    let complete = bg.is_complete(&base()).unwrap();
    assert!(!complete.holds);
    assert!(complete.witness.is_some());
    assert!(bg.is_groupoid(&base()).unwrap().holds);

    let c = InternalCategory::constant(4, &base()).unwrap();
    assert_eq!(c.equiv_object(&base()).unwrap().len(), 4);
    assert!(c.is_complete(&base()).unwrap().holds);
    assert!(c.is_groupoid(&base()).unwrap().holds);
}

#[test]
fn two_truncated_objects_are_accepted_when_coskeletal() {
    let x = nerve(&FinCat::cyclic_group(3), 2, &base()).unwrap();
    let c = InternalCategory::new(x, &base()).unwrap();
    assert!(!c.is_complete(&base()).unwrap().holds);
}

#[test]
fn opposite_of_nerve() {
    let c = chain_poset();
    let x = nerve(&c, 3, &base()).unwrap();
    assert_eq!(opposite(&opposite(&x)), x);
    let op = InternalCategory::from_fincat(&c, &base()).unwrap().opposite(&base()).unwrap();
    assert_eq!(op.sset().levels(), nerve(&c.opposite(), 3, &base()).unwrap().levels());
    let k = TruncSSet::constant(2, 3);
    assert_eq!(opposite(&k), k);
}

#[test]
fn internal_nerve_checks_axioms() {
    let c = FinCat::parallel_pair();
    let head = InternalHead::of(&c);
    let x = internal_nerve(&head, &base()).unwrap();
    assert_eq!(x.underlying().arrow_count(), 4);

    let mut broken = head.clone();
    broken.composition.pop();
    assert!(matches!(internal_nerve(&broken, &base()), Err(crate::Error::AxiomViolation(_))));

    let m = FinCat::monoid(&["1", "a", "b"], &[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]).unwrap();
    let mut nonassoc = InternalHead::of(&m);
    for t in &mut nonassoc.composition {
        if t[0] == 1 && t[1] == 2 {
            t[2] = 0;
        }
    }
    let err = internal_nerve(&nonassoc, &base()).unwrap_err();
    assert!(matches!(err, crate::Error::AxiomViolation(_)));
}

#[test]
fn enlarged_level_two_breaks_segal() {
    let x = nerve(&FinCat::chain(1), 2, &base()).unwrap();
    // a second 2-simplex with the same faces as an existing one
    let t = (0..x.level(2)).find(|&t| !x.is_degenerate(2, t) || x.face(2, 0)[t] != x.face(2, 2)[t]).unwrap();
    let faces: Vec<Vec<Vec<usize>>> = (0..=2)
        .map(|n| {
            (0..if n == 0 { 0 } else { n + 1 })
                .map(|i| {
                    let mut table = x.face(n, i).to_vec();
                    if n == 2 {
                        table.push(table[t]);
                    }
                    table
                })
                .collect()
        })
        .collect();
    let degeneracies = (0..=2)
        .map(|n| (0..if n == 2 { 0 } else { n + 1 }).map(|i| x.degeneracy(n, i).to_vec()).collect())
        .collect();
    let mut levels = x.levels().to_vec();
    levels[2] += 1;
    let mutant = TruncSSet::from_operators(levels, faces, degeneracies, x.extension()).unwrap();
    let maps = segal_maps(&mutant, &base()).unwrap();
    assert!(maps[0].is_bijective() && maps[1].is_bijective());
    assert!(!maps[2].is_injective());
    assert!(!is_segal(&mutant, &base()).unwrap());
}

