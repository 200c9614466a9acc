use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat, FinFunctor, FinSetBase, SetMap};
use crate::internal::InternalCategory;

/// A category indexed by finite sets, contravariant in the index.
///
/// Finite sets are named by their size `p`; `u: q -> p` restricts `F(p)` to `F(q)`.
pub trait Indexed {
    type Obj: Clone + Eq + Hash + std::fmt::Debug;
    type Mor: Clone + Eq + Hash + std::fmt::Debug;

    fn objects(&self, p: usize) -> Result<Vec<Self::Obj>>;
    fn out_morphisms(&self, p: usize, a: &Self::Obj) -> Result<Vec<Self::Mor>>;
    fn hom(&self, p: usize, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>>;
    fn source(&self, p: usize, f: &Self::Mor) -> Self::Obj;
    fn target(&self, p: usize, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, p: usize, a: &Self::Obj) -> Self::Mor;
    /// `f` then `g`.
    fn compose(&self, p: usize, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor>;
    fn restrict_object(&self, u: &SetMap, a: &Self::Obj) -> Result<Self::Obj>;
    fn restrict_morphism(&self, u: &SetMap, f: &Self::Mor) -> Result<Self::Mor>;

    /// The object of `F(n)` whose restrictions to the `n` points are `parts`, when `F` is a sheaf for points.
    fn glue_objects(&self, _parts: &[Self::Obj]) -> Option<Self::Obj> {
        None
    }

    fn glue_morphisms(&self, _parts: &[Self::Mor]) -> Option<Self::Mor> {
        None
    }
}

/// `Ext(X)`, evaluated on demand: objects of `Ext(X)(p)` are functions `p -> X_0`,
/// morphisms are functions `p -> X_1`.
#[derive(Clone, Copy, Debug)]
pub struct Externalization<'a> {
    x: &'a InternalCategory,
    base: FinSetBase,
}

impl<'a> Externalization<'a> {
    pub fn new(x: &'a InternalCategory, base: &FinSetBase) -> Self {
        Self { x, base: *base }
    }

    pub fn internal(&self) -> &'a InternalCategory {
        self.x
    }
}

fn power_count(n: usize, p: usize) -> Option<usize> {
    u32::try_from(p).ok().and_then(|p| n.checked_pow(p))
}

/// Every tuple in the product of `choices`, lexicographically.
fn tuples(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |&v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

impl Indexed for Externalization<'_> {
    type Obj = Vec<usize>;
    type Mor = Vec<usize>;

    fn objects(&self, p: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.x.objects();
        let count = power_count(n, p).unwrap_or(usize::MAX);
        if count > self.base.bound {
            return Err(Error::bound("externalization objects", count, self.base.bound));
        }
        Ok(tuples(&vec![(0..n).collect(); p]))
    }

    fn out_morphisms(&self, _p: usize, a: &Vec<usize>) -> Result<Vec<Vec<usize>>> {
        let c = self.x.underlying();
        let choices: Vec<Vec<usize>> = a.iter().map(|&o| c.outgoing(o).to_vec()).collect();
        let count = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len())).unwrap_or(usize::MAX);
        if count > self.base.bound {
            return Err(Error::bound("externalization out-morphisms", count, self.base.bound));
        }
        Ok(tuples(&choices))
    }

    fn hom(&self, _p: usize, a: &Vec<usize>, b: &Vec<usize>) -> Result<Vec<Vec<usize>>> {
        let c = self.x.underlying();
        let choices: Vec<Vec<usize>> = a.iter().zip(b).map(|(&s, &t)| c.hom(s, t)).collect();
        let count = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len())).unwrap_or(usize::MAX);
        if count > self.base.bound {
            return Err(Error::bound("externalization hom", count, self.base.bound));
        }
        Ok(tuples(&choices))
    }

    fn source(&self, _p: usize, f: &Vec<usize>) -> Vec<usize> {
        f.iter().map(|&g| self.x.source(g)).collect()
    }

    fn target(&self, _p: usize, f: &Vec<usize>) -> Vec<usize> {
        f.iter().map(|&g| self.x.target(g)).collect()
    }

    fn identity(&self, _p: usize, a: &Vec<usize>) -> Vec<usize> {
        a.iter().map(|&o| self.x.identity(o)).collect()
    }

    fn compose(&self, _p: usize, f: &Vec<usize>, g: &Vec<usize>) -> Option<Vec<usize>> {
        f.iter().zip(g).map(|(&a, &b)| self.x.compose(a, b)).collect()
    }

    fn restrict_object(&self, u: &SetMap, a: &Vec<usize>) -> Result<Vec<usize>> {
        Ok(u.table.iter().map(|&i| a[i]).collect())
    }

    fn restrict_morphism(&self, u: &SetMap, f: &Vec<usize>) -> Result<Vec<usize>> {
        Ok(u.table.iter().map(|&i| f[i]).collect())
    }

    fn glue_objects(&self, parts: &[Vec<usize>]) -> Option<Vec<usize>> {
        parts.iter().map(|a| (a.len() == 1).then(|| a[0])).collect()
    }

    fn glue_morphisms(&self, parts: &[Vec<usize>]) -> Option<Vec<usize>> {
        self.glue_objects(parts)
    }
}

/// An indexed category tabulated on the probe of all finite sets of size at most `probe`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IndexedCategory {
    pub probe: usize,
    pub values: Vec<FinCat>,
    /// Every map `u: q -> p` of the probe with the restriction functor `F(p) -> F(q)`.
    pub restrictions: Vec<(SetMap, FinFunctor)>,
    /// For each size, the function table labelling each object.
    pub object_labels: Vec<Vec<Vec<usize>>>,
    pub morphism_labels: Vec<Vec<Vec<usize>>>,
    #[serde(skip)]
    index: HashMap<SetMap, usize>,
}

/// All maps between probe sets, ordered by target size, source size, then table.
pub fn probe_maps(probe: usize) -> Vec<SetMap> {
    let mut out = Vec::new();
    for p in 0..=probe {
        for q in 0..=probe {
            out.extend(SetMap::all(q, p));
        }
    }
    out
}

impl IndexedCategory {
    /// Tabulates an indexed category whose cells are function tables.
    pub fn tabulate<F>(f: &F, probe: usize) -> Result<Self>
    where
        F: Indexed<Obj = Vec<usize>, Mor = Vec<usize>>,
    {
        let mut values = Vec::new();
        let mut object_labels = Vec::new();
        let mut morphism_labels = Vec::new();
        let mut object_index: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
        let mut morphism_index: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
        for p in 0..=probe {
            let objects = f.objects(p)?;
            let oi: HashMap<Vec<usize>, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
            let mut morphisms = Vec::new();
            for a in &objects {
                morphisms.extend(f.out_morphisms(p, a)?);
            }
            let mi: HashMap<Vec<usize>, usize> =
                morphisms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let arrows = morphisms
                .iter()
                .enumerate()
                .map(|(i, m)| Arrow::new(format!("m{i}"), oi[&f.source(p, m)], oi[&f.target(p, m)]))
                .collect();
            let identities = objects.iter().map(|a| mi[&f.identity(p, a)]).collect();
            let mut table = Vec::new();
            for (i, m) in morphisms.iter().enumerate() {
                let t = f.target(p, m);
                for g in f.out_morphisms(p, &t)? {
                    let h = f
                        .compose(p, m, &g)
                        .ok_or_else(|| Error::AxiomViolation("composable cells without a composite".into()))?;
                    table.push((i, mi[&g], mi[&h]));
                }
            }
            let names = (0..objects.len()).map(|i| format!("c{i}")).collect();
            values.push(FinCat::from_parts(names, arrows, identities, table)?);
            object_labels.push(objects);
            morphism_labels.push(morphisms);
            object_index.push(oi);
            morphism_index.push(mi);
        }
        let mut restrictions = Vec::new();
        for u in probe_maps(probe) {
            let (q, p) = (u.domain(), u.codomain);
            let functor = FinFunctor {
                objects: object_labels[p]
                    .iter()
                    .map(|a| Ok(object_index[q][&f.restrict_object(&u, a)?]))
                    .collect::<Result<_>>()?,
                morphisms: morphism_labels[p]
                    .iter()
                    .map(|m| Ok(morphism_index[q][&f.restrict_morphism(&u, m)?]))
                    .collect::<Result<_>>()?,
            };
            restrictions.push((u, functor));
        }
        Ok(Self::assemble(probe, values, restrictions, object_labels, morphism_labels))
    }

    pub fn assemble(
        probe: usize,
        values: Vec<FinCat>,
        restrictions: Vec<(SetMap, FinFunctor)>,
        object_labels: Vec<Vec<Vec<usize>>>,
        morphism_labels: Vec<Vec<Vec<usize>>>,
    ) -> Self {
        let index = restrictions.iter().enumerate().map(|(i, (u, _))| (u.clone(), i)).collect();
        Self {
            probe,
            values,
            restrictions,
            object_labels,
            morphism_labels,
            index,
        }
    }

    /// Rebuilds the lookup table after deserialization.
    pub fn reindex(mut self) -> Self {
        self.index = self.restrictions.iter().enumerate().map(|(i, (u, _))| (u.clone(), i)).collect();
        self
    }

    pub fn value(&self, p: usize) -> &FinCat {
        &self.values[p]
    }

    /// `F(u): F(p) -> F(q)` for `u: q -> p` in the probe.
    pub fn restriction(&self, u: &SetMap) -> Result<&FinFunctor> {
        self.index
            .get(u)
            .map(|&i| &self.restrictions[i].1)
            .ok_or_else(|| Error::ProbeTooSmall(format!("no map {} -> {} in the probe", u.domain(), u.codomain)))
    }

    /// The probe maps `u: q -> p` as indices into `restrictions`.
    pub fn maps_into(&self, p: usize) -> impl Iterator<Item = &(SetMap, FinFunctor)> {
        self.restrictions.iter().filter(move |(u, _)| u.codomain == p)
    }

    /// Functoriality of restriction, exhaustively over the probe.
    pub fn validate(&self) -> Result<()> {
        for (u, f) in &self.restrictions {
            f.validate(&self.values[u.codomain], &self.values[u.domain()])?;
        }
        for p in 0..=self.probe {
            if *self.restriction(&SetMap::identity(p))? != FinFunctor::identity(&self.values[p]) {
                return Err(Error::NotAFunctor(format!("identity of {p} does not restrict trivially")));
            }
        }
        for (u, fu) in &self.restrictions {
            for (v, fv) in self.restrictions.iter().filter(|(v, _)| v.codomain == u.domain()) {
                if *self.restriction(&v.then(u))? != fu.then(fv) {
                    return Err(Error::NotAFunctor("restriction does not respect composition".into()));
                }
            }
        }
        Ok(())
    }

    fn check_size(&self, p: usize) -> Result<()> {
        if p > self.probe {
            return Err(Error::ProbeTooSmall(format!("a set of size {p} is outside the probe {}", self.probe)));
        }
        Ok(())
    }
}

impl PartialEq for IndexedCategory {
    fn eq(&self, other: &Self) -> bool {
        self.probe == other.probe
            && self.values == other.values
            && self.restrictions == other.restrictions
            && self.object_labels == other.object_labels
            && self.morphism_labels == other.morphism_labels
    }
}

impl Indexed for IndexedCategory {
    type Obj = usize;
    type Mor = usize;

    fn objects(&self, p: usize) -> Result<Vec<usize>> {
        self.check_size(p)?;
        Ok((0..self.values[p].object_count()).collect())
    }

    fn out_morphisms(&self, p: usize, a: &usize) -> Result<Vec<usize>> {
        self.check_size(p)?;
        Ok(self.values[p].outgoing(*a).to_vec())
    }

    fn hom(&self, p: usize, a: &usize, b: &usize) -> Result<Vec<usize>> {
        self.check_size(p)?;
        Ok(self.values[p].hom(*a, *b))
    }

    fn source(&self, p: usize, f: &usize) -> usize {
        self.values[p].source(*f)
    }

    fn target(&self, p: usize, f: &usize) -> usize {
        self.values[p].target(*f)
    }

    fn identity(&self, p: usize, a: &usize) -> usize {
        self.values[p].identity(*a)
    }

    fn compose(&self, p: usize, f: &usize, g: &usize) -> Option<usize> {
        self.values[p].compose(*f, *g)
    }

    fn restrict_object(&self, u: &SetMap, a: &usize) -> Result<usize> {
        Ok(self.restriction(u)?.objects[*a])
    }

    fn restrict_morphism(&self, u: &SetMap, f: &usize) -> Result<usize> {
        Ok(self.restriction(u)?.morphisms[*f])
    }

    fn glue_objects(&self, parts: &[usize]) -> Option<usize> {
        glue(self, parts, |f| &f.objects, self.values.get(parts.len())?.object_count())
    }

    fn glue_morphisms(&self, parts: &[usize]) -> Option<usize> {
        glue(self, parts, |f| &f.morphisms, self.values.get(parts.len())?.arrow_count())
    }
}

/// The unique cell of `F(n)` restricting to `parts` at the points, if there is exactly one.
fn glue(f: &IndexedCategory, parts: &[usize], table: impl Fn(&FinFunctor) -> &Vec<usize>, count: usize) -> Option<usize> {
    let n = parts.len();
    let points: Vec<&FinFunctor> = (0..n)
        .map(|i| f.restriction(&SetMap::constant(1, n, i)).ok())
        .collect::<Option<_>>()?;
    let mut found = (0..count).filter(|&c| points.iter().zip(parts).all(|(r, &x)| table(r)[c] == x));
    let first = found.next()?;
    found.next().is_none().then_some(first)
}

/// `Ext(X)` tabulated on the probe.
pub fn externalize(x: &InternalCategory, probe: usize, base: &FinSetBase) -> Result<IndexedCategory> {
    IndexedCategory::tabulate(&Externalization::new(x, base), probe)
}
