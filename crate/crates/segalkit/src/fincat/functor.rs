use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::category::{Arrow, FinCat};
use crate::error::{Error, Result};

/// A functor between finite categories, as an object map and a morphism map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinFunctor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl FinFunctor {
    pub fn identity(c: &FinCat) -> Self {
        Self {
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.arrow_count()).collect(),
        }
    }

    /// `self` then `next`.
    pub fn then(&self, next: &FinFunctor) -> Self {
        Self {
            objects: self.objects.iter().map(|&o| next.objects[o]).collect(),
            morphisms: self.morphisms.iter().map(|&f| next.morphisms[f]).collect(),
        }
    }

    /// Exhaustive check of the functor laws.
    pub fn validate(&self, src: &FinCat, tgt: &FinCat) -> Result<()> {
        if self.objects.len() != src.object_count() || self.morphisms.len() != src.arrow_count() {
            return Err(Error::NotAFunctor("tables have the wrong length".into()));
        }
        if self.objects.iter().any(|&o| o >= tgt.object_count())
            || self.morphisms.iter().any(|&f| f >= tgt.arrow_count())
        {
            return Err(Error::NotAFunctor("value out of range".into()));
        }
        for (f, a) in src.arrows().iter().enumerate() {
            let image = self.morphisms[f];
            if tgt.source(image) != self.objects[a.source] || tgt.target(image) != self.objects[a.target] {
                return Err(Error::NotAFunctor(format!("{} is sent to an ill-typed arrow", a.name)));
            }
        }
        for o in 0..src.object_count() {
            if self.morphisms[src.identity(o)] != tgt.identity(self.objects[o]) {
                return Err(Error::NotAFunctor(format!(
                    "identity of {} is not preserved",
                    src.object_names()[o]
                )));
            }
        }
        for (f, g) in src.composable_pairs() {
            let h = src.compose(f, g).unwrap();
            if tgt.compose(self.morphisms[f], self.morphisms[g]) != Some(self.morphisms[h]) {
                return Err(Error::NotAFunctor(format!(
                    "composite of {} and {} is not preserved",
                    src.arrow(f).name,
                    src.arrow(g).name
                )));
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self, tgt: &FinCat) -> bool {
        is_bijection(&self.objects, tgt.object_count()) && is_bijection(&self.morphisms, tgt.arrow_count())
    }
}

pub(crate) fn is_bijection(table: &[usize], codomain: usize) -> bool {
    if table.len() != codomain {
        return false;
    }
    let mut seen = vec![false; codomain];
    table.iter().all(|&x| x < codomain && !std::mem::replace(&mut seen[x], true))
}

/// Components of a natural transformation, indexed by source objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NatTrans {
    pub components: Vec<usize>,
}

impl NatTrans {
    pub fn is_natural(&self, src: &FinCat, tgt: &FinCat, f: &FinFunctor, g: &FinFunctor) -> bool {
        self.components.len() == src.object_count()
            && self.components.iter().enumerate().all(|(a, &c)| {
                tgt.source(c) == f.objects[a] && tgt.target(c) == g.objects[a]
            })
            && src.arrows().iter().enumerate().all(|(h, arr)| {
                tgt.compose(self.components[arr.source], g.morphisms[h])
                    == tgt.compose(f.morphisms[h], self.components[arr.target])
            })
    }
}

/// Every functor `src -> tgt`, by backtracking over objects then morphisms.
pub fn enumerate_functors(src: &FinCat, tgt: &FinCat, cap: usize) -> Result<Vec<FinFunctor>> {
    let all: Vec<usize> = (0..tgt.object_count()).collect();
    let candidates = vec![all; src.object_count()];
    enumerate_functors_among(src, tgt, &candidates, &|_, _| true, cap)
}

/// Functors sending each object `a` into `objects[a]` and each arrow `f` to some `g` with `allow(f, g)`.
pub fn enumerate_functors_among(
    src: &FinCat,
    tgt: &FinCat,
    objects: &[Vec<usize>],
    allow: &dyn Fn(usize, usize) -> bool,
    cap: usize,
) -> Result<Vec<FinFunctor>> {
    let mut out = Vec::new();
    let order: Vec<usize> = (0..src.arrow_count()).filter(|&f| !src.is_identity(f)).collect();
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); src.arrow_count()];
    let rank: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let position = |f: usize| if src.is_identity(f) { None } else { Some(rank[&f]) };
    for (f, g) in src.composable_pairs() {
        let h = src.compose(f, g).unwrap();
        if let Some(last) = [f, g, h].into_iter().filter_map(position).max() {
            checks[order[last]].push((f, g, h));
        }
    }
    let search = Search {
        src,
        tgt,
        order: &order,
        checks: &checks,
        allow,
        cap,
    };
    let mut assigned = Vec::with_capacity(src.object_count());
    search.objects(objects, &mut assigned, &mut out)?;
    Ok(out)
}

struct Search<'a> {
    src: &'a FinCat,
    tgt: &'a FinCat,
    order: &'a [usize],
    checks: &'a [Vec<(usize, usize, usize)>],
    allow: &'a dyn Fn(usize, usize) -> bool,
    cap: usize,
}

impl Search<'_> {
    fn objects(&self, candidates: &[Vec<usize>], assigned: &mut Vec<usize>, out: &mut Vec<FinFunctor>) -> Result<()> {
        let a = assigned.len();
        if a == candidates.len() {
            let mut morphisms = vec![usize::MAX; self.src.arrow_count()];
            for (o, &image) in assigned.iter().enumerate() {
                let id = self.src.identity(o);
                morphisms[id] = self.tgt.identity(image);
                if !(self.allow)(id, morphisms[id]) {
                    return Ok(());
                }
            }
            return self.morphisms(assigned, 0, &mut morphisms, out);
        }
        for &c in &candidates[a] {
            assigned.push(c);
            // identities and arrows between assigned objects must have room
            let ok = self
                .src
                .arrows()
                .iter()
                .all(|arr| arr.source.max(arr.target) != a || !self.tgt.hom(assigned[arr.source], assigned[arr.target]).is_empty());
            if ok {
                self.objects(candidates, assigned, out)?;
            }
            assigned.pop();
        }
        Ok(())
    }

    fn morphisms(&self, objects: &[usize], depth: usize, morphisms: &mut Vec<usize>, out: &mut Vec<FinFunctor>) -> Result<()> {
        if depth == self.order.len() {
            if out.len() >= self.cap {
                return Err(Error::bound("functor category", out.len() + 1, self.cap));
            }
            out.push(FinFunctor {
                objects: objects.to_vec(),
                morphisms: morphisms.clone(),
            });
            return Ok(());
        }
        let f = self.order[depth];
        let a = self.src.arrow(f);
        for candidate in self.tgt.hom(objects[a.source], objects[a.target]) {
            if !(self.allow)(f, candidate) {
                continue;
            }
            morphisms[f] = candidate;
            let ok = self.checks[f]
                .iter()
                .all(|&(x, y, z)| self.tgt.compose(morphisms[x], morphisms[y]) == Some(morphisms[z]));
            if ok {
                self.morphisms(objects, depth + 1, morphisms, out)?;
            }
        }
        morphisms[f] = usize::MAX;
        Ok(())
    }
}

/// The natural transformations `f => g`.
pub fn enumerate_transformations(
    src: &FinCat,
    tgt: &FinCat,
    f: &FinFunctor,
    g: &FinFunctor,
) -> Vec<NatTrans> {
    let choices: Vec<Vec<usize>> = (0..src.object_count())
        .map(|a| tgt.hom(f.objects[a], g.objects[a]))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(choices.len());
    fn go(
        src: &FinCat,
        tgt: &FinCat,
        f: &FinFunctor,
        g: &FinFunctor,
        choices: &[Vec<usize>],
        current: &mut Vec<usize>,
        out: &mut Vec<NatTrans>,
    ) {
        let a = current.len();
        if a == choices.len() {
            out.push(NatTrans {
                components: current.clone(),
            });
            return;
        }
        for &c in &choices[a] {
            current.push(c);
            // squares whose endpoints are both decided
            let ok = src.arrows().iter().enumerate().all(|(h, arr)| {
                arr.source > a
                    || arr.target > a
                    || tgt.compose(current[arr.source], g.morphisms[h])
                        == tgt.compose(f.morphisms[h], current[arr.target])
            });
            if ok {
                go(src, tgt, f, g, choices, current, out);
            }
            current.pop();
        }
    }
    go(src, tgt, f, g, &choices, &mut current, &mut out);
    out
}

/// `Fun(A, B)` together with the functors and transformations it indexes.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub category: FinCat,
    pub functors: Vec<FinFunctor>,
    pub transformations: Vec<(usize, usize, NatTrans)>,
}

impl FunctorCategory {
    pub fn functor_index(&self, f: &FinFunctor) -> Option<usize> {
        self.functors.iter().position(|g| g == f)
    }
}

/// The category of functors `a -> b`; `cap` bounds the number of functors.
pub fn functor_category(a: &FinCat, b: &FinCat, cap: usize) -> Result<FunctorCategory> {
    let functors = enumerate_functors(a, b, cap)?;
    let mut transformations = Vec::new();
    let mut index = HashMap::new();
    let mut identities = vec![0; functors.len()];
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for t in enumerate_transformations(a, b, f, g) {
                if i == j && t.components.iter().all(|&c| b.is_identity(c)) {
                    identities[i] = transformations.len();
                }
                index.insert((i, j, t.components.clone()), transformations.len());
                transformations.push((i, j, t));
            }
        }
    }
    let arrows = transformations
        .iter()
        .enumerate()
        .map(|(k, (i, j, _))| Arrow::new(format!("t{k}"), *i, *j))
        .collect();
    let mut table = Vec::new();
    for (x, (i, j, s)) in transformations.iter().enumerate() {
        for (y, (j2, l, t)) in transformations.iter().enumerate() {
            if j != j2 {
                continue;
            }
            let comps: Vec<usize> = s
                .components
                .iter()
                .zip(&t.components)
                .map(|(&p, &q)| b.compose(p, q).unwrap())
                .collect();
            table.push((x, y, index[&(*i, *l, comps)]));
        }
    }
    let objects = (0..functors.len()).map(|i| format!("F{i}")).collect();
    let category = FinCat::from_parts(objects, arrows, identities, table)?;
    Ok(FunctorCategory {
        category,
        functors,
        transformations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functors_between_chains() {
        let one = FinCat::chain(1);
        let fun = functor_category(&one, &one, 100).unwrap();
        assert_eq!(fun.functors.len(), 3);
        // 00 => 01 => 11 plus the composite and identities
        assert_eq!(fun.category.arrow_count(), 6);
        fun.category.validate().unwrap();
        for f in &fun.functors {
            f.validate(&one, &one).unwrap();
        }
    }

    #[test]
    fn exponent_by_terminal_and_discrete() {
        let b = FinCat::parallel_pair();
        let fun = functor_category(&FinCat::terminal(), &b, 100).unwrap();
        assert_eq!(fun.category.object_count(), b.object_count());
        assert_eq!(fun.category.arrow_count(), b.arrow_count());
        let sq = functor_category(&FinCat::discrete(2), &b, 100).unwrap();
        assert_eq!(sq.category.arrow_count(), b.arrow_count() * b.arrow_count());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            functor_category(&FinCat::discrete(3), &FinCat::discrete(5), 10),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn group_homomorphisms() {
        let z4 = FinCat::cyclic_group(4);
        let z2 = FinCat::cyclic_group(2);
        assert_eq!(enumerate_functors(&z4, &z2, 100).unwrap().len(), 2);
        assert_eq!(enumerate_functors(&z2, &z4, 100).unwrap().len(), 2);
    }
}
