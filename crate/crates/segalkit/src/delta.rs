//! The simplex category: monotone maps, their factorizations, and truncations.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat};

/// A weakly increasing map `[m] -> [n]`, stored as its value table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    target: usize,
    values: Vec<usize>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]{:?}", self.source(), self.target, self.values)
    }
}

impl MonotoneMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Malformed("monotone map with empty domain".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Malformed(format!("{values:?} is not monotone")));
        }
        if values.iter().any(|&v| v > target) {
            return Err(Error::Malformed(format!(
                "{values:?} leaves [{target}]"
            )));
        }
        Ok(Self { target, values })
    }

    pub(crate) fn new_unchecked(target: usize, values: Vec<usize>) -> Self {
        debug_assert!(Self::new(target, values.clone()).is_ok());
        Self { target, values }
    }

    pub fn identity(n: usize) -> Self {
        Self::new_unchecked(n, (0..=n).collect())
    }

    /// The coface `d^i : [n-1] -> [n]` skipping `i`.
    pub fn face(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n, "no coface d^{i} into [{n}]");
        Self::new_unchecked(n, (0..n).map(|j| if j < i { j } else { j + 1 }).collect())
    }

    /// The codegeneracy `s^i : [n+1] -> [n]` hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n, "no codegeneracy s^{i} onto [{n}]");
        Self::new_unchecked(n, (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect())
    }

    /// The vertex `[0] -> [n]` at `i`.
    pub fn vertex(n: usize, i: usize) -> Self {
        Self::new_unchecked(n, vec![i])
    }

    /// The edge `[1] -> [n]` from `a` to `b`.
    pub fn edge(n: usize, a: usize, b: usize) -> Self {
        Self::new(n, vec![a, b]).expect("edge endpoints out of order")
    }

    /// The constant map `[m] -> [n]` at `v`.
    pub fn constant(m: usize, n: usize, v: usize) -> Self {
        Self::new_unchecked(n, vec![v; m + 1])
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &MonotoneMap) -> MonotoneMap {
        assert_eq!(other.target, self.source(), "non-composable monotone maps");
        Self::new_unchecked(
            self.target,
            other.values.iter().map(|&i| self.values[i]).collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.source()] == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Vertices of the target not hit, in increasing order.
    pub fn missing(&self) -> Vec<usize> {
        (0..=self.target)
            .filter(|v| self.values.binary_search(v).is_err())
            .collect()
    }

    /// Positions `j` with `f(j) = f(j + 1)`, in increasing order.
    pub fn repeats(&self) -> Vec<usize> {
        (0..self.source())
            .filter(|&j| self.values[j] == self.values[j + 1])
            .collect()
    }

    /// The image as a sorted, duplicate-free list.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.values.clone();
        im.dedup();
        im
    }

    /// Epi-mono factorization `self = inj ∘ surj`.
    pub fn factor(&self) -> (MonotoneMap, MonotoneMap) {
        let image = self.image();
        let p = image.len() - 1;
        let surj = self
            .values
            .iter()
            .map(|v| image.binary_search(v).unwrap())
            .collect();
        (
            Self::new_unchecked(p, surj),
            Self::new_unchecked(self.target, image),
        )
    }

    /// Order reversal: `op(f)(i) = n - f(m - i)`.
    pub fn op(&self) -> MonotoneMap {
        let m = self.source();
        Self::new_unchecked(
            self.target,
            (0..=m).map(|i| self.target - self.values[m - i]).collect(),
        )
    }
}

/// All monotone maps `[m] -> [n]` in lexicographic order of value tables.
pub fn enumerate_monotone(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut values = vec![0usize; m + 1];
    loop {
        out.push(MonotoneMap::new_unchecked(n, values.clone()));
        // odometer on non-decreasing sequences
        let Some(pos) = (0..=m).rev().find(|&i| values[i] < n) else {
            break;
        };
        let v = values[pos] + 1;
        for slot in &mut values[pos..] {
            *slot = v;
        }
    }
    out
}

/// The number of monotone maps `[m] -> [n]`, i.e. `C(m + n + 1, m + 1)`.
pub fn count_monotone(m: usize, n: usize) -> usize {
    let (a, b) = (m + n + 1, m + 1);
    (1..=b).fold(1usize, |acc, i| acc * (a - b + i) / i)
}

/// Position of `f` in [`enumerate_monotone`]`(m, n)`.
pub fn monotone_rank(f: &MonotoneMap) -> usize {
    let (m, n) = (f.source(), f.target());
    let mut rank = 0;
    let mut prev = 0;
    for (i, &v) in f.values().iter().enumerate() {
        let rest = m - i;
        for w in prev..v {
            // sequences continuing with value w at position i
            rank += if rest == 0 { 1 } else { count_monotone(rest - 1, n - w) };
        }
        prev = v;
    }
    rank
}

/// The injective monotone map with image `subset`, named `d_J` on simplicial objects.
pub fn face_inclusion(subset: &[usize], n: usize) -> Result<MonotoneMap> {
    if subset.is_empty() {
        return Err(Error::InvalidSubset("empty vertex set".into()));
    }
    let mut values = subset.to_vec();
    values.sort_unstable();
    values.dedup();
    if values.len() != subset.len() {
        return Err(Error::InvalidSubset(format!("{subset:?} repeats a vertex")));
    }
    if values[values.len() - 1] > n {
        return Err(Error::InvalidSubset(format!("{subset:?} is not inside [{n}]")));
    }
    Ok(MonotoneMap::new_unchecked(n, values))
}

pub fn op_reindex(f: &MonotoneMap) -> MonotoneMap {
    f.op()
}

/// `Δ≤k`: every monotone map between ranks at most `k`, with a composition table.
pub struct TruncatedDelta {
    k: usize,
    maps: Vec<MonotoneMap>,
    index: HashMap<MonotoneMap, usize>,
    composition: Vec<usize>,
}

impl TruncatedDelta {
    pub fn new(k: usize) -> Self {
        let mut maps = Vec::new();
        for m in 0..=k {
            for n in 0..=k {
                maps.extend(enumerate_monotone(m, n));
            }
        }
        let index: HashMap<_, _> = maps.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let len = maps.len();
        let mut composition = vec![usize::MAX; len * len];
        for (i, f) in maps.iter().enumerate() {
            for (j, g) in maps.iter().enumerate() {
                if f.target() == g.source() {
                    composition[i * len + j] = index[&g.after(f)];
                }
            }
        }
        Self {
            k,
            maps,
            index,
            composition,
        }
    }

    pub fn truncation(&self) -> usize {
        self.k
    }

    pub fn maps(&self) -> &[MonotoneMap] {
        &self.maps
    }

    pub fn index_of(&self, f: &MonotoneMap) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Index of `g ∘ f`, when `f` then `g` is composable.
    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        let c = self.composition[f * self.maps.len() + g];
        (c != usize::MAX).then_some(c)
    }

    /// `Δ≤k` as a finite category with objects `[0], ..., [k]`.
    pub fn to_fincat(&self) -> FinCat {
        let objects = (0..=self.k).map(|n| format!("[{n}]")).collect();
        let arrows = self
            .maps
            .iter()
            .map(|f| Arrow::new(format!("{:?}", f.values()), f.source(), f.target()))
            .collect();
        let identities = (0..=self.k)
            .map(|n| self.index[&MonotoneMap::identity(n)])
            .collect();
        let len = self.maps.len();
        let mut table = Vec::new();
        for f in 0..len {
            for g in 0..len {
                if let Some(h) = self.then(f, g) {
                    table.push((f, g, h));
                }
            }
        }
        FinCat::from_parts(objects, arrows, identities, table)
            .expect("the truncated simplex category is a category")
    }
}

/// Shared `Δ≤k` for small `k`.
pub fn truncated(k: usize) -> &'static TruncatedDelta {
    const CACHED: usize = 7;
    static CACHE: [OnceLock<TruncatedDelta>; CACHED] = [const { OnceLock::new() }; CACHED];
    assert!(k < CACHED, "truncation {k} is beyond the supported range");
    CACHE[k].get_or_init(|| TruncatedDelta::new(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_counts() {
        assert_eq!(enumerate_monotone(0, 4).len(), 5);
        let maps: Vec<_> = enumerate_monotone(1, 1).into_iter().map(|f| f.values().to_vec()).collect();
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(enumerate_monotone(3, 0).len(), 1);
        for m in 0..5 {
            for n in 0..5 {
                assert_eq!(enumerate_monotone(m, n).len(), count_monotone(m, n));
            }
        }
    }

    #[test]
    fn ranks_match_enumeration() {
        for m in 0..4 {
            for n in 0..4 {
                for (i, f) in enumerate_monotone(m, n).iter().enumerate() {
                    assert_eq!(monotone_rank(f), i);
                }
            }
        }
    }

    #[test]
    fn face_inclusions() {
        assert!(face_inclusion(&[0, 1, 2], 2).unwrap().is_identity());
        assert_eq!(face_inclusion(&[0, 2], 3).unwrap().values(), &[0, 2]);
        assert_eq!(face_inclusion(&[3, 1], 3).unwrap().values(), &[1, 3]);
        assert!(matches!(face_inclusion(&[], 3), Err(Error::InvalidSubset(_))));
        assert!(matches!(face_inclusion(&[4], 3), Err(Error::InvalidSubset(_))));
    }

    #[test]
    fn op_examples() {
        assert!(MonotoneMap::identity(3).op().is_identity());
        assert_eq!(MonotoneMap::face(1, 0).op(), MonotoneMap::face(1, 1));
    }

    #[test]
    fn elementary_maps() {
        assert_eq!(MonotoneMap::face(2, 1).values(), &[0, 2]);
        assert_eq!(MonotoneMap::degeneracy(1, 0).values(), &[0, 0, 1]);
        let f = MonotoneMap::new(3, vec![1, 1, 3]).unwrap();
        assert_eq!(f.missing(), vec![0, 2]);
        assert_eq!(f.repeats(), vec![0]);
    }

    #[test]
    fn truncated_delta_is_a_category() {
        let d = truncated(2);
        assert_eq!(d.maps().len(), 31);
        let c = d.to_fincat();
        c.validate().unwrap();
        assert_eq!(c.object_count(), 3);
    }
}
