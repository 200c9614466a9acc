use super::*;
use crate::fincat::{FinCat, FinSetBase, SetMap};
use crate::internal::InternalCategory;

fn base() -> FinSetBase {
    FinSetBase::new(4096)
}

fn arrow() -> InternalCategory {
    InternalCategory::from_fincat(&FinCat::chain(1), &base()).unwrap()
}

#[test]
fn constant_externalizes_to_discrete() {
    let x = InternalCategory::constant(3, &base()).unwrap();
    let e = externalize(&x, 2, &base()).unwrap();
    for p in 0..=2 {
        let c = e.value(p);
        assert_eq!(c.object_count(), 3usize.pow(p as u32));
        assert_eq!(c.arrow_count(), c.object_count());
    }
    e.validate().unwrap();
}

#[test]
fn externalized_arrow_is_power() {
    let e = externalize(&arrow(), 2, &base()).unwrap();
    assert_eq!(e.value(0).object_count(), 1);
    assert_eq!((e.value(1).object_count(), e.value(1).arrow_count()), (2, 3));
    assert_eq!((e.value(2).object_count(), e.value(2).arrow_count()), (4, 9));
    let swap = SetMap::new(2, vec![1, 0]).unwrap();
    let r = e.restriction(&swap).unwrap();
    assert_eq!(r.then(r), crate::fincat::FinFunctor::identity(e.value(2)));
}

#[test]
fn lazy_and_tabulated_agree() {
    let x = InternalCategory::from_fincat(&FinCat::parallel_pair(), &base()).unwrap();
    let lazy = Externalization::new(&x, &base());
    let table = IndexedCategory::tabulate(&lazy, 2).unwrap();
    assert_eq!(table, externalize(&x, 2, &base()).unwrap());
    for p in 0..=2 {
        assert_eq!(lazy.objects(p).unwrap().len(), table.value(p).object_count());
    }
}

#[test]
fn point_to_point_transformations() {
    let e = externalize(&InternalCategory::constant(1, &base()).unwrap(), 2, &base()).unwrap();
    let t = nat_transformations(&e, &e, 64).unwrap();
    assert_eq!((t.category.object_count(), t.category.arrow_count()), (1, 1));
}

#[test]
fn fully_faithful_on_arrow() {
    let r = fully_faithful_check(&arrow(), &arrow(), 2, &base()).unwrap();
    assert_eq!(r.internal_functors, 3);
    assert_eq!(r.natural_families, 3);
    // Fun([1], [1]) has 3 objects and 6 morphisms
    assert_eq!(r.modifications, 6);
    assert!(r.holds(), "{r:?}");
}

#[test]
fn fully_faithful_from_discrete() {
    let x = InternalCategory::constant(2, &base()).unwrap();
    let r = fully_faithful_check(&x, &arrow(), 2, &base()).unwrap();
    assert_eq!(r.internal_functors, 4);
    assert_eq!(r.modifications, 9);
    assert!(r.holds(), "{r:?}");
}

#[test]
fn fully_faithful_between_groups() {
    let g = InternalCategory::from_fincat(&FinCat::cyclic_group(2), &base()).unwrap();
    let h = InternalCategory::from_fincat(&FinCat::cyclic_group(3), &base()).unwrap();
    let r = fully_faithful_check(&h, &g, 2, &base()).unwrap();
    assert_eq!(r.internal_functors, 1);
    assert!(r.holds(), "{r:?}");
}

#[test]
fn serde_round_trip() {
    let e = externalize(&arrow(), 1, &base()).unwrap();
    let json = serde_json::to_string(&e).unwrap();
    let back: IndexedCategory = serde_json::from_str(&json).unwrap();
    assert_eq!(back.reindex(), e);
}
