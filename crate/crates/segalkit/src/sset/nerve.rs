use std::collections::HashMap;

use super::simplicial::{Extension, TruncSSet};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors, Arrow, FinCat, FinFunctor, FinSetBase};

/// The nerve of a finite category, with its chains.
///
/// Level 0 is indexed by objects and level 1 by morphisms; level `m ≥ 2` lists
/// composable chains `f_1, .., f_m` (`f_i` then `f_{i+1}`).
#[derive(Clone, Debug)]
pub struct Nerve {
    pub category: FinCat,
    pub sset: TruncSSet,
    chains: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Nerve {
    pub fn new(c: &FinCat, k: usize, base: &FinSetBase) -> Result<Self> {
        let mut chains: Vec<Vec<Vec<usize>>> = vec![
            (0..c.object_count()).map(|o| vec![o]).collect(),
            (0..c.arrow_count()).map(|f| vec![f]).collect(),
        ];
        for _ in 2..=k {
            let prev = chains.last().unwrap();
            let mut next = Vec::new();
            for chain in prev {
                let last = *chain.last().unwrap();
                for &g in c.outgoing(c.target(last)) {
                    let mut longer = chain.clone();
                    longer.push(g);
                    next.push(longer);
                }
                base.check("nerve level", next.len())?;
            }
            chains.push(next);
        }
        chains.truncate(k + 1);
        for level in &chains {
            base.check("nerve level", level.len())?;
        }
        let index: Vec<HashMap<Vec<usize>, usize>> = chains
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, ch)| (ch, i)).collect())
            .collect();
        let levels = chains.iter().map(Vec::len).collect();
        let sset = TruncSSet::from_action(levels, Extension::Coskeletal(2), |theta, x| {
            let image = act_on_chain(c, &chains[theta.target()][x], theta);
            index[theta.source()][&image]
        })?;
        Ok(Self {
            category: c.clone(),
            sset,
            chains,
            index,
        })
    }

    /// The chain presented by an element of level `m`; level 0 gives `[object]`.
    pub fn chain(&self, m: usize, x: usize) -> &[usize] {
        &self.chains[m][x]
    }

    pub fn find_chain(&self, m: usize, chain: &[usize]) -> Option<usize> {
        self.index[m].get(chain).copied()
    }
}

/// Vertex `i` of a chain at level `m` (level 0 holds an object).
fn vertex(c: &FinCat, chain: &[usize], m: usize, i: usize) -> usize {
    if m == 0 {
        chain[0]
    } else if i == 0 {
        c.source(chain[0])
    } else {
        c.target(chain[i - 1])
    }
}

fn act_on_chain(c: &FinCat, chain: &[usize], theta: &MonotoneMap) -> Vec<usize> {
    let m = theta.target();
    if theta.source() == 0 {
        return vec![vertex(c, chain, m, theta.apply(0))];
    }
    (1..=theta.source())
        .map(|j| {
            let (a, b) = (theta.apply(j - 1), theta.apply(j));
            let start = c.identity(vertex(c, chain, m, a));
            chain[a..b].iter().fold(start, |acc, &f| c.compose(acc, f).unwrap())
        })
        .collect()
}

pub fn nerve(c: &FinCat, k: usize, base: &FinSetBase) -> Result<TruncSSet> {
    Ok(Nerve::new(c, k, base)?.sset)
}

/// The underlying category of a simplicial set whose Segal maps are bijective,
/// together with the proof that it is the nerve of that category.
pub fn as_nerve(x: &TruncSSet, base: &FinSetBase) -> Result<Nerve> {
    let k = x.truncation();
    if k < 2 {
        return Err(Error::Unrepresentable("a nerve needs levels up to 2".into()));
    }
    let (d0, d1) = (x.face(1, 0), x.face(1, 1));
    let arrows = (0..x.level(1))
        .map(|f| Arrow::new(format!("a{f}"), d1[f], d0[f]))
        .collect();
    let identities = x.degeneracy(0, 0).to_vec();
    let mut spine: HashMap<(usize, usize), usize> = HashMap::new();
    for t in 0..x.level(2) {
        let key = (x.face(2, 2)[t], x.face(2, 0)[t]);
        if spine.insert(key, t).is_some() {
            return Err(Error::Unrepresentable("two 2-simplices share a spine".into()));
        }
    }
    let mut table = Vec::new();
    for f in 0..x.level(1) {
        for g in 0..x.level(1) {
            if d0[f] == d1[g] {
                let Some(&t) = spine.get(&(f, g)) else {
                    return Err(Error::Unrepresentable("a composable pair has no filler".into()));
                };
                table.push((f, g, x.face(2, 1)[t]));
            }
        }
    }
    let objects = (0..x.level(0)).map(|o| format!("o{o}")).collect();
    let category = FinCat::from_parts(objects, arrows, identities, table)
        .map_err(|e| Error::Unrepresentable(format!("underlying data is not a category: {e}")))?;
    category
        .validate()
        .map_err(|e| Error::Unrepresentable(format!("underlying data is not a category: {e}")))?;
    let n = Nerve::new(&category, k, base)?;
    // compare with x level by level through spines
    for m in 0..=k {
        if n.sset.level(m) != x.level(m) {
            return Err(Error::Unrepresentable(format!("level {m} is not the set of {m}-chains")));
        }
    }
    let comparison: Vec<Vec<usize>> = (0..=k)
        .map(|m| {
            (0..x.level(m))
                .map(|s| {
                    let chain: Vec<usize> = if m == 0 {
                        vec![s]
                    } else {
                        (1..=m).map(|j| x.act(&MonotoneMap::edge(m, j - 1, j), s)).collect()
                    };
                    n.find_chain(m, &chain).ok_or_else(|| {
                        Error::Unrepresentable(format!("spine of a {m}-simplex is not a chain"))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let map = super::SimplicialMap { levels: comparison };
    if !map.is_isomorphism(&n.sset) || map.validate(x, &n.sset).is_err() {
        return Err(Error::Unrepresentable("simplices are not determined by their spines".into()));
    }
    Ok(n)
}

/// A finite category in which every morphism is invertible.
#[derive(Clone, Debug)]
pub struct GroupoidPresentation {
    category: FinCat,
}

impl GroupoidPresentation {
    pub fn new(category: FinCat) -> Result<Self> {
        if !category.is_groupoid() {
            return Err(Error::AxiomViolation("a morphism has no inverse".into()));
        }
        Ok(Self { category })
    }

    /// The free groupoid on `[n]`, presenting `IΔ^n`.
    pub fn free_on(n: usize) -> Self {
        Self {
            category: FinCat::free_groupoid(n),
        }
    }

    pub fn category(&self) -> &FinCat {
        &self.category
    }
}

/// Simplicial maps from the nerve of a groupoid into a nerve, computed as functors.
pub fn groupoid_hom(g: &GroupoidPresentation, x: &TruncSSet, base: &FinSetBase) -> Result<Vec<FinFunctor>> {
    let target = as_nerve(x, base)?;
    enumerate_functors(g.category(), &target.category, base.bound)
}

/// The functor `I[m] -> I[n]` induced by a monotone map.
fn free_groupoid_map(theta: &MonotoneMap) -> FinFunctor {
    let (m, n) = (theta.source(), theta.target());
    let src = FinCat::free_groupoid(m);
    let tgt = FinCat::free_groupoid(n);
    let objects: Vec<usize> = (0..=m).map(|i| theta.apply(i)).collect();
    let morphisms = src
        .arrows()
        .iter()
        .map(|a| tgt.hom(objects[a.source], objects[a.target])[0])
        .collect();
    FinFunctor { objects, morphisms }
}

/// `k_!(S)_n = Hom(IΔ^n, S)` for `S` a nerve, as functors out of free groupoids.
pub fn k_core(s: &TruncSSet, base: &FinSetBase) -> Result<TruncSSet> {
    as_nerve(s, base)?;
    let k = s.truncation();
    let levels: Vec<Vec<FinFunctor>> = (0..=k)
        .map(|n| groupoid_hom(&GroupoidPresentation::free_on(n), s, base))
        .collect::<Result<_>>()?;
    let index: Vec<HashMap<&FinFunctor, usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, f)| (f, i)).collect())
        .collect();
    let sizes = levels
        .iter()
        .map(|l| base.check("core level", l.len()))
        .collect::<Result<Vec<_>>>()?;
    TruncSSet::from_action(sizes, Extension::Coskeletal(2), |theta, x| {
        let pulled = free_groupoid_map(theta).then(&levels[theta.target()][x]);
        index[theta.source()][&pulled]
    })
}
