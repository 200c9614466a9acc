use serde::{Deserialize, Serialize};

use super::power::{determining_truncation, power, tensor, Power};
use crate::delta::{enumerate_monotone, monotone_rank, MonotoneMap};
use crate::error::Result;
use crate::fincat::{is_bijection, FinSetBase};
use crate::internal::InternalCategory;
use crate::sset::{reach, sset_hom, HomSet, SimplicialMap, TruncSSet};

/// The outcome of comparing two hom-sets through an explicit map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomBijection {
    pub left: usize,
    pub right: usize,
    /// `table[h]` is the image of the left element `h`, when it lies in the right set.
    pub table: Vec<Option<usize>>,
}

impl HomBijection {
    pub fn is_bijective(&self) -> bool {
        let table: Vec<usize> = self.table.iter().map(|t| t.unwrap_or(usize::MAX)).collect();
        is_bijection(&table, self.right)
    }
}

/// Both sides of `Hom(Δ^n ⊗ X, Y) ≅ Hom(X, Y^{Δ^n})`.
pub struct TensorAdjunction {
    pub n: usize,
    pub tensor: TruncSSet,
    pub cotensor: Power,
    pub left: HomSet,
    pub right: HomSet,
    pub curry: HomBijection,
}

/// Curries `h: Δ^n ⊗ X -> Y` to `x ↦ ((a, b) ↦ h(a, x·b))`.
fn curry_one(x: &TruncSSet, left: &HomSet, cot: &Power, right: &HomSet, h: usize) -> Option<usize> {
    let k = x.truncation();
    let j = cot.weight_truncation;
    let mut levels = Vec::with_capacity(k + 1);
    for m in 0..=k {
        let simplices: Vec<Vec<MonotoneMap>> = (0..=j).map(|l| enumerate_monotone(l, m)).collect();
        let mut level = Vec::with_capacity(x.level(m));
        for s in 0..x.level(m) {
            let g = cot.hom(m).find_with(|l, w| {
                let size = simplices[l].len();
                let (a, b) = (w / size, w % size);
                let z = x.act(&simplices[l][b], s);
                left.value(h, l, a * x.level(l) + z)
            })?;
            level.push(g);
        }
        levels.push(level);
    }
    right.find(&SimplicialMap { levels })
}

pub fn tensor_adjunction(n: usize, x: &TruncSSet, y: &InternalCategory, base: &FinSetBase) -> Result<TensorAdjunction> {
    let k = x.truncation();
    let t = tensor(&TruncSSet::standard_simplex(n, k), x, base)?;
    let left = sset_hom(&t, y.sset(), base)?;
    let j = determining_truncation(y.sset()).min(k);
    let cot = power(y.sset(), &TruncSSet::standard_simplex(n, k), k, j, base)?;
    let right = sset_hom(x, &cot.sset, base)?;
    let table = (0..left.len()).map(|h| curry_one(x, &left, &cot, &right, h)).collect();
    let curry = HomBijection {
        left: left.len(),
        right: right.len(),
        table,
    };
    Ok(TensorAdjunction {
        n,
        tensor: t,
        cotensor: cot,
        left,
        right,
        curry,
    })
}

/// Commutation of currying with `θ: [n'] -> [n]` acting on both sides.
///
/// Precomposition with `Δ^θ ⊗ X` on the left, postcomposition with `Y^{Δ^θ}` on the right.
pub fn curry_is_natural(theta: &MonotoneMap, from: &TensorAdjunction, to: &TensorAdjunction, x: &TruncSSet) -> bool {
    let (n2, n) = (theta.source(), theta.target());
    assert_eq!((from.n, to.n), (n, n2));
    let k = x.truncation();
    let j = from.cotensor.weight_truncation;
    let lower: Vec<Vec<MonotoneMap>> = (0..=k).map(|l| enumerate_monotone(l, n2)).collect();
    for h in 0..from.left.len() {
        let pulled = to.left.find_with(|l, w| {
            let (a, z) = (w / x.level(l), w % x.level(l));
            let a = theta.after(&lower[l][a]);
            from.left.value(h, l, monotone_rank(&a) * x.level(l) + z)
        });
        let Some(pulled) = pulled else { return false };
        let via_left = to.curry.table[pulled];
        let via_right = from.curry.table[h].and_then(|g| {
            let map = from.right.map(g);
            let levels = (0..=k)
                .map(|m| {
                    let simplices: Vec<Vec<MonotoneMap>> = (0..=j).map(|l| enumerate_monotone(l, m)).collect();
                    (0..x.level(m))
                        .map(|s| {
                            let e = map.apply(m, s);
                            to.cotensor.hom(m).find_with(|l, w| {
                                let size = simplices[l].len();
                                let (a, b) = (w / size, w % size);
                                let a = theta.after(&lower[l][a]);
                                from.cotensor.value(m, e, l, monotone_rank(&a), &simplices[l][b])
                            })
                        })
                        .collect::<Option<Vec<_>>>()
                })
                .collect::<Option<Vec<_>>>()?;
            to.right.find(&SimplicialMap { levels })
        });
        if via_left.is_none() || via_left != via_right {
            return false;
        }
    }
    true
}

/// `Hom(Δ^n ⊗ c(C), Y) ≅ Hom(C, Y_n)` through `h ↦ (c ↦ h_n(id, c))`.
pub fn constant_adjunction(n: usize, c: usize, y: &InternalCategory, base: &FinSetBase) -> Result<HomBijection> {
    let k = y.sset().truncation();
    let t = tensor(&TruncSSet::standard_simplex(n, k.max(n)), &TruncSSet::constant(c, k.max(n)), base)?;
    let left = sset_hom(&t, y.sset(), base)?;
    let yn = reach(y.sset(), n, base)?.level(n);
    let right = u32::try_from(c).ok().and_then(|c| yn.checked_pow(c)).unwrap_or(usize::MAX);
    let id = monotone_rank(&MonotoneMap::identity(n));
    let table = (0..left.len())
        .map(|h| Some((0..c).fold(0, |code, i| code * yn + left.value(h, n, id * c + i))))
        .collect();
    Ok(HomBijection {
        left: left.len(),
        right,
        table,
    })
}
