use proptest::prelude::*;

use segalkit::catalog::generated;
use segalkit::delta::{enumerate_monotone, MonotoneMap};
use segalkit::externalize::externalize;
use segalkit::fincat::{finite_coproduct, FinCat, FinFunctor, FinSetBase, SetMap};
use segalkit::internal::InternalCategory;
use segalkit::oracle::find_isomorphism;
use segalkit::sset::{nerve, sset_hom, TruncSSet};

fn base() -> FinSetBase {
    FinSetBase::new(1 << 14)
}

fn monotone(max: usize) -> impl Strategy<Value = MonotoneMap> {
    (0..=max, 0..=max).prop_flat_map(|(m, n)| {
        let all = enumerate_monotone(m, n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn category() -> impl Strategy<Value = FinCat> {
    (0..generated().len()).prop_map(|i| generated()[i].category.clone())
}

/// `c` with its objects listed in another order.
fn relabel(c: &FinCat, perm: &[usize]) -> FinCat {
    let n = c.object_count();
    let mut inverse = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i;
    }
    let objects = (0..n).map(|i| c.object_names()[perm[i]].clone()).collect();
    let arrows = c
        .arrows()
        .iter()
        .map(|a| segalkit::fincat::Arrow::new(a.name.clone(), inverse[a.source], inverse[a.target]))
        .collect();
    let identities = (0..n).map(|i| c.identity(perm[i])).collect();
    let table: Vec<_> = c.composable_pairs().map(|(f, g)| (f, g, c.compose(f, g).unwrap())).collect();
    FinCat::from_parts(objects, arrows, identities, table).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_is_epi_mono(f in monotone(4)) {
        let (surj, inj) = f.factor();
        prop_assert!(surj.is_surjective());
        prop_assert!(inj.is_injective());
        prop_assert_eq!(inj.after(&surj), f.clone());
        // unique: the image of any such factorization is the image of f
        let image = f.image();
        prop_assert_eq!(inj.values(), image.as_slice());
    }

    #[test]
    fn op_is_an_involution(f in monotone(4), c in category()) {
        prop_assert_eq!(f.op().op(), f.clone());
        prop_assert_eq!(c.opposite().opposite(), c.clone());
        let x = nerve(&c, 2, &base()).unwrap();
        prop_assert_eq!(x.opposite().opposite(), x);
    }

    #[test]
    fn nerves_satisfy_simplicial_identities(c in category(), f in monotone(3), g in monotone(3)) {
        let x = nerve(&c, 3, &base()).unwrap();
        x.validate().unwrap();
        // composable when the source of g is the target of f
        if g.source() == f.target() {
            for s in 0..x.level(g.target()) {
                prop_assert_eq!(x.act(&g.after(&f), s), x.act(&f, x.act(&g, s)));
            }
        }
    }

    #[test]
    fn coproduct_copairing_is_unique(parts in prop::collection::vec(0usize..3, 1..4), t in 1usize..4, seed in any::<u64>()) {
        let co = finite_coproduct(&parts, &base()).unwrap();
        let maps: Vec<SetMap> = parts
            .iter()
            .enumerate()
            .map(|(k, &p)| SetMap::new(t, (0..p).map(|x| (seed as usize >> (3 * k + x)) % t).collect()).unwrap())
            .collect();
        let h = co.copair(&maps).unwrap();
        for (inj, m) in co.injections.iter().zip(&maps) {
            prop_assert_eq!(&inj.then(&h), m);
        }
        let agreeing = SetMap::all(co.total, t)
            .filter(|g| co.injections.iter().zip(&maps).all(|(inj, m)| inj.then(g) == *m))
            .count();
        prop_assert_eq!(agreeing, 1);
    }

    #[test]
    fn nerves_are_two_coskeletal(c in category()) {
        let extended = nerve(&c, 2, &base()).unwrap().extend(&base()).unwrap();
        let full = nerve(&c, 3, &base()).unwrap();
        prop_assert_eq!(extended.levels(), full.levels());
    }

    #[test]
    fn maps_from_simplices_are_simplices(c in category(), n in 0usize..=3) {
        let x = nerve(&c, 3, &base()).unwrap();
        let h = sset_hom(&TruncSSet::standard_simplex(n, n), &x, &base()).unwrap();
        prop_assert_eq!(h.len(), x.level(n));
        let top = TruncSSet::simplex_index(&MonotoneMap::identity(n));
        let mut hit: Vec<usize> = (0..h.len()).map(|e| h.value(e, n, top)).collect();
        hit.sort_unstable();
        hit.dedup();
        prop_assert_eq!(hit.len(), x.level(n));
    }

    #[test]
    fn externalization_is_functorial(c in category()) {
        let x = InternalCategory::from_fincat(&c, &base()).unwrap();
        externalize(&x, 2, &base()).unwrap().validate().unwrap();
    }

    #[test]
    fn completeness_is_invariant_under_isomorphism(c in category(), seed in any::<u64>()) {
        let n = c.object_count();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, (seed as usize >> i) % (i + 1));
        }
        let d = relabel(&c, &perm);
        prop_assert!(find_isomorphism(&c, &d, 1 << 16).unwrap().is_some());
        let (x, y) = (InternalCategory::from_fincat(&c, &base()).unwrap(), InternalCategory::from_fincat(&d, &base()).unwrap());
        prop_assert_eq!(x.is_complete(&base()).unwrap().holds, y.is_complete(&base()).unwrap().holds);
        prop_assert_eq!(x.is_groupoid(&base()).unwrap().holds, y.is_groupoid(&base()).unwrap().holds);
    }

    #[test]
    fn identity_functor_is_bijective(c in category()) {
        prop_assert!(FinFunctor::identity(&c).is_bijective(&c));
    }
}
