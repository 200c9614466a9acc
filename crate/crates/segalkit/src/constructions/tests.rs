use super::*;
use crate::delta::MonotoneMap;
use crate::fincat::{FinCat, FinSetBase};
use crate::internal::InternalCategory;
use crate::sset::TruncSSet;

fn base() -> FinSetBase {
    FinSetBase::new(1 << 14)
}

fn cat(c: &FinCat) -> InternalCategory {
    InternalCategory::from_fincat(c, &base()).unwrap()
}

#[test]
fn tensor_of_arrow_with_point_is_arrow() {
    let t = tensor(&TruncSSet::standard_simplex(1, 2), &TruncSSet::constant(1, 2), &base()).unwrap();
    assert_eq!(t.levels(), &[2, 3, 4]);
    let t = tensor(&TruncSSet::standard_simplex(1, 2), &TruncSSet::constant(3, 2), &base()).unwrap();
    assert_eq!(t.levels(), &[6, 9, 12]);
}

#[test]
fn exponential_of_arrows() {
    let a = cat(&FinCat::chain(1));
    let (p, e) = exponential(&a, &a, &base()).unwrap();
    assert_eq!(p.sset.level(0), 3);
    assert_eq!(e.underlying().arrow_count(), 6);
    assert!(e.is_complete(&base()).unwrap().holds);
}

#[test]
fn exponential_into_group() {
    let g = cat(&FinCat::cyclic_group(3));
    let (_, e) = exponential(&g, &g, &base()).unwrap();
    // Fun(BZ3, BZ3): three endomorphisms, conjugation is trivial
    assert_eq!(e.objects(), 3);
    assert_eq!(e.arrows(), 9);
}

#[test]
fn low_end_is_too_coarse() {
    let g = cat(&FinCat::cyclic_group(3));
    let p1 = power(g.sset(), g.sset(), 0, 1, &base()).unwrap();
    assert_eq!(p1.sset.level(0), 9);
    let (p2, _) = exponential_at(&g, &g, 2, &base()).unwrap();
    let (p3, _) = exponential_at(&g, &g, 3, &base()).unwrap();
    assert_eq!(p2.sset.levels(), p3.sset.levels());
}

#[test]
fn cotensor_with_point_is_identity() {
    let c = cat(&FinCat::parallel_pair());
    let p = cotensor(&c, &TruncSSet::standard_simplex(0, 2), &base()).unwrap();
    assert_eq!(p.sset.levels(), c.sset().levels());
}

#[test]
fn core_of_internal_categories() {
    let c = FinCat::coproduct(&[FinCat::chain(2), FinCat::cyclic_group(2)]);
    let (k, inc) = core(&cat(&c), &base()).unwrap();
    assert_eq!(k.objects(), 4);
    assert_eq!(k.arrows(), 3 + 2);
    assert!(k.is_groupoid(&base()).unwrap().holds);
    inc.validate(k.sset(), cat(&c).sset()).unwrap();
}

#[test]
fn tensor_cotensor_adjunction() {
    let y = cat(&FinCat::chain(1));
    let x = TruncSSet::standard_simplex(1, 2);
    let adj: Vec<_> = (0..=2).map(|n| tensor_adjunction(n, &x, &y, &base()).unwrap()).collect();
    for a in &adj {
        assert!(a.curry.is_bijective(), "n = {}", a.n);
    }
    for theta in [MonotoneMap::face(1, 0), MonotoneMap::face(1, 1), MonotoneMap::degeneracy(0, 0), MonotoneMap::face(2, 1)] {
        let (from, to) = (&adj[theta.target()], &adj[theta.source()]);
        assert!(curry_is_natural(&theta, from, to, &x));
    }
}

#[test]
fn constant_adjunction_counts() {
    let y = cat(&FinCat::parallel_pair());
    for n in 0..=2 {
        let b = constant_adjunction(n, 2, &y, &base()).unwrap();
        assert_eq!(b.right, y.sset().level(n).pow(2));
        assert!(b.is_bijective());
    }
}

#[test]
fn externalization_does_not_preserve_tensors() {
    let d = nonpreservation_demo(2, &base()).unwrap();
    assert_eq!(d.externalized.object_count(), 4);
    assert_eq!(d.externalized.arrow_count(), 9);
    assert_eq!(d.tensored.object_count(), 2);
    assert!(d.is_power_of_arrow);
    assert_eq!(d.non_identity_arrows, 5);
    assert_eq!(d.arrows_between_constants, 1);
    assert!(d.differ());
    assert!(!nonpreservation_demo(1, &base()).unwrap().differ());
}
