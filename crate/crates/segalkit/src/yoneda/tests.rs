use super::*;
use crate::externalize::Externalization;
use crate::fincat::{FinCat, FinSetBase};
use crate::internal::InternalCategory;

fn base() -> FinSetBase {
    FinSetBase::new(1 << 14)
}

fn cat(c: &FinCat) -> InternalCategory {
    InternalCategory::from_fincat(c, &base()).unwrap()
}

#[test]
fn classical_yoneda_for_constants() {
    let (c, d) = (InternalCategory::constant(2, &base()).unwrap(), InternalCategory::constant(3, &base()).unwrap());
    let f = Externalization::new(&d, &base());
    let t = totalization(&f, &c, 3, &base()).unwrap();
    assert_eq!(t.category.object_count(), 9);
    assert_eq!(t.category.arrow_count(), 9);
    let (b, _, _) = yoneda_bijection(&f, &c, 2, 3, &base()).unwrap();
    assert!(b.round_trips());
}

#[test]
fn totalization_is_functor_category() {
    let a = cat(&FinCat::chain(1));
    let f = Externalization::new(&a, &base());
    let t = totalization(&f, &a, 3, &base()).unwrap();
    assert_eq!((t.category.object_count(), t.category.arrow_count()), (3, 6));
    let t4 = totalization(&f, &a, 4, &base()).unwrap();
    assert_eq!(t4.category.arrow_count(), 6);
}

#[test]
fn totalization_into_group() {
    let g = cat(&FinCat::cyclic_group(2));
    let x = cat(&FinCat::chain(1));
    let f = Externalization::new(&g, &base());
    let t = totalization(&f, &x, 3, &base()).unwrap();
    // functors [1] -> BZ2 are the two elements; transformations are the two components
    assert_eq!(t.category.object_count(), 2);
    assert_eq!(t.category.arrow_count(), 8);
}

#[test]
fn identity_goes_to_identities() {
    let x = cat(&FinCat::parallel_pair());
    let f = Externalization::new(&x, &base());
    let (b, nat, tot) = yoneda_bijection(&f, &x, 2, 3, &base()).unwrap();
    assert!(b.round_trips());
    let ext = crate::externalize::externalize(&x, 2, &base()).unwrap();
    let id = nat
        .families
        .iter()
        .position(|a| a.iter().enumerate().all(|(p, c)| *c == crate::fincat::FinFunctor::identity(ext.value(p))))
        .unwrap();
    let (phi0, phi1) = &tot.objects[b.forward_objects[id].unwrap()];
    assert_eq!(phi0, &(0..x.objects()).collect::<Vec<_>>());
    assert_eq!(phi1, &(0..x.arrows()).collect::<Vec<_>>());
}

#[test]
fn bijection_between_nerves() {
    let x = cat(&FinCat::chain(2));
    let y = cat(&FinCat::cyclic_group(2));
    let f = Externalization::new(&y, &base());
    let (b, nat, tot) = yoneda_bijection(&f, &x, 2, 3, &base()).unwrap();
    assert!(b.round_trips());
    assert_eq!(nat.families.len(), tot.objects.len());
    assert_eq!(nat.modifications.len(), tot.morphisms.len());
}

#[test]
fn kan_extension_of_arrow() {
    let a = cat(&FinCat::chain(1));
    let r = left_kan_check(&a, 2, 10_000, &base()).unwrap();
    assert!(r.iter().all(|k| k.agrees));
    assert_eq!((r[1].colimit.object_count(), r[1].colimit.arrow_count()), (2, 3));
    assert_eq!(r[2].colimit.arrow_count(), 9);
}

#[test]
fn kan_extension_of_constants_is_discrete() {
    let c = InternalCategory::constant(3, &base()).unwrap();
    let r = left_kan_check(&c, 2, 10_000, &base()).unwrap();
    for k in &r {
        assert!(k.agrees);
        assert_eq!(k.colimit.arrow_count(), k.colimit.object_count());
    }
}

#[test]
fn kan_extension_of_groups() {
    for c in [FinCat::cyclic_group(3), FinCat::parallel_pair(), FinCat::free_groupoid(2)] {
        let r = left_kan_check(&cat(&c), 2, 10_000, &base()).unwrap();
        assert!(r.iter().all(|k| k.agrees));
    }
}

#[test]
fn colimit_budget_is_reported() {
    let g = cat(&FinCat::cyclic_group(3));
    assert!(matches!(
        comma_colimit(&g, 2, 4, &base()),
        Err(crate::Error::ColimitNotFinite { budget: 4 })
    ));
}
