use super::*;
use crate::delta::{count_monotone, MonotoneMap};
use crate::fincat::{FinCat, FinSetBase};

fn base() -> FinSetBase {
    FinSetBase::new(4096)
}

#[test]
fn standard_simplex_levels() {
    let d2 = TruncSSet::standard_simplex(2, 3);
    assert_eq!(d2.levels(), &[3, 6, 10, 15]);
    assert_eq!(TruncSSet::boundary(2, 2).levels(), &[3, 6, 9]);
    assert_eq!(TruncSSet::spine(2, 2).levels(), &[3, 5, 7]);
    for n in 0..4 {
        assert_eq!(TruncSSet::standard_simplex(n, 2).level(2), count_monotone(2, n));
    }
}

#[test]
fn nondegenerate_simplices_of_spine() {
    let s = TruncSSet::spine(2, 2);
    let nondegenerate: usize = (0..=2)
        .map(|n| (0..s.level(n)).filter(|&x| !s.is_degenerate(n, x)).count())
        .sum();
    assert_eq!(nondegenerate, 5);
}

#[test]
fn nerve_of_chain_is_simplex() {
    for n in 0..4 {
        let nv = nerve(&FinCat::chain(n), 3, &base()).unwrap();
        assert_eq!(nv.levels(), TruncSSet::standard_simplex(n, 3).levels());
    }
    let pt = nerve(&FinCat::terminal(), 2, &base()).unwrap();
    assert_eq!(pt.levels(), &[1, 1, 1]);
}

#[test]
fn nerve_is_two_coskeletal() {
    for c in [FinCat::cyclic_group(3), FinCat::parallel_pair(), FinCat::chain(2)] {
        let n2 = nerve(&c, 2, &base()).unwrap();
        let n3 = nerve(&c, 3, &base()).unwrap();
        let ext = n2.extend(&base()).unwrap();
        assert_eq!(ext.levels(), n3.levels());
        let back = as_nerve(&ext, &base()).unwrap();
        assert_eq!(back.category.arrow_count(), c.arrow_count());
    }
}

#[test]
fn as_nerve_rejects_non_segal() {
    let b = TruncSSet::boundary(2, 2);
    assert!(matches!(as_nerve(&b, &base()), Err(crate::Error::Unrepresentable(_))));
}

#[test]
fn hom_from_simplex_is_level() {
    let c = FinCat::cyclic_group(2);
    let x = nerve(&c, 3, &base()).unwrap();
    for n in 0..=3 {
        let h = sset_hom(&TruncSSet::standard_simplex(n, n), &x, &base()).unwrap();
        assert_eq!(h.len(), x.level(n));
    }
    let h = sset_hom(&TruncSSet::standard_simplex(0, 0), &TruncSSet::standard_simplex(3, 2), &base()).unwrap();
    assert_eq!(h.len(), 4);
}

#[test]
fn hom_from_spine_is_composable_pairs() {
    let c = FinCat::chain(2);
    let x = nerve(&c, 2, &base()).unwrap();
    let h = sset_hom(&TruncSSet::spine(2, 2), &x, &base()).unwrap();
    assert_eq!(h.len(), c.composable_pairs().count());
    for f in h.maps() {
        f.validate(&TruncSSet::spine(2, 2), &x).unwrap();
        assert_eq!(h.find(&f).map(|e| h.map(e)), Some(f));
    }
}

#[test]
fn hom_extends_coskeletal_targets() {
    let x = nerve(&FinCat::chain(1), 2, &base()).unwrap();
    let h = sset_hom(&TruncSSet::standard_simplex(3, 3), &x, &base()).unwrap();
    assert_eq!(h.len(), count_monotone(3, 1));
    let t = TruncSSet::boundary(2, 1).with_extension(Extension::Truncated);
    assert!(matches!(
        sset_hom(&TruncSSet::standard_simplex(2, 2), &t, &base()),
        Err(crate::Error::MissingLimit(_))
    ));
}

#[test]
fn core_of_nerves() {
    let arrow = nerve(&FinCat::chain(1), 2, &base()).unwrap();
    let k = k_core(&arrow, &base()).unwrap();
    assert_eq!(k.levels(), &[2, 2, 2]);
    let bg = nerve(&FinCat::cyclic_group(3), 2, &base()).unwrap();
    assert_eq!(k_core(&bg, &base()).unwrap().levels(), bg.levels());
    let i1 = nerve(&FinCat::free_groupoid(1), 2, &base()).unwrap();
    assert_eq!(k_core(&i1, &base()).unwrap().levels(), i1.levels());
}

#[test]
fn core_matches_core_category() {
    let c = FinCat::monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]]).unwrap();
    let cc = FinCat::coproduct(&[c, FinCat::free_groupoid(1), FinCat::chain(1)]);
    let k = k_core(&nerve(&cc, 2, &base()).unwrap(), &base()).unwrap();
    let expected = nerve(&cc.core().0, 2, &base()).unwrap();
    assert_eq!(k.levels(), expected.levels());
}

#[test]
fn opposite_is_involution() {
    let x = nerve(&FinCat::chain(2), 2, &base()).unwrap();
    assert_eq!(x.opposite().opposite(), x);
    let op = nerve(&FinCat::chain(2).opposite(), 2, &base()).unwrap();
    assert_eq!(x.opposite().levels(), op.levels());
}

#[test]
fn act_agrees_with_composites() {
    let x = nerve(&FinCat::parallel_pair(), 3, &base()).unwrap();
    let f = MonotoneMap::new(2, vec![0, 2]).unwrap();
    let g = MonotoneMap::new(3, vec![1, 3, 3]).unwrap();
    for s in 0..x.level(3) {
        assert_eq!(x.act(&g.after(&f), s), x.act(&f, x.act(&g, s)));
    }
}
