use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::limits::{equiv_object, segal_maps, EquivObject, SimplicialObject};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat, FinSetBase, SetMap};
use crate::sset::{nerve, Extension, TruncSSet};

/// A simplicial object in finite sets whose Segal maps are bijections.
#[derive(Clone, Debug)]
pub struct InternalCategory {
    sset: TruncSSet,
    category: FinCat,
    filler: HashMap<(usize, usize), usize>,
}

/// The outcome of a completeness or groupoid check, with an offending element of `Equiv(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<usize>,
}

impl InternalCategory {
    /// Validates the Segal condition at every stored level.
    ///
    /// An object stopping at level 2 must be 2-coskeletal; its level 3 is then
    /// Segal exactly when composition is associative, which is checked directly.
    pub fn new(x: SimplicialObject, base: &FinSetBase) -> Result<Self> {
        let k = x.truncation();
        if k < 2 {
            return Err(Error::AxiomViolation("an internal category needs levels up to 2".into()));
        }
        if k == 2 && !matches!(x.extension(), Extension::Coskeletal(c) if c <= 2) {
            return Err(Error::AxiomViolation("a 2-truncated internal category must be 2-coskeletal".into()));
        }
        for (n, map) in segal_maps(&x, base)?.iter().enumerate() {
            if !map.is_bijective() {
                return Err(Error::AxiomViolation(format!("Segal map at level {n} is not a bijection")));
            }
        }
        let mut filler = HashMap::new();
        for t in 0..x.level(2) {
            filler.insert((x.face(2, 2)[t], x.face(2, 0)[t]), t);
        }
        let arrows = (0..x.level(1))
            .map(|f| Arrow::new(format!("a{f}"), x.face(1, 1)[f], x.face(1, 0)[f]))
            .collect();
        let table: Vec<_> = filler.iter().map(|(&(f, g), &t)| (f, g, x.face(2, 1)[t])).collect();
        let objects = (0..x.level(0)).map(|o| format!("o{o}")).collect();
        let category = FinCat::from_parts(objects, arrows, x.degeneracy(0, 0).to_vec(), table)?;
        category.validate()?;
        Ok(Self { sset: x, category, filler })
    }

    /// The internal category given by the nerve of a finite category, stored to level 3.
    pub fn from_fincat(c: &FinCat, base: &FinSetBase) -> Result<Self> {
        Self::new(nerve(c, 3, base)?, base)
    }

    /// The constant internal category `c(S)`.
    pub fn constant(size: usize, base: &FinSetBase) -> Result<Self> {
        Self::new(TruncSSet::constant(size, 3), base)
    }

    pub fn sset(&self) -> &TruncSSet {
        &self.sset
    }

    pub fn into_sset(self) -> TruncSSet {
        self.sset
    }

    /// The category of global points.
    pub fn underlying(&self) -> &FinCat {
        &self.category
    }

    pub fn objects(&self) -> usize {
        self.sset.level(0)
    }

    pub fn arrows(&self) -> usize {
        self.sset.level(1)
    }

    pub fn source(&self, f: usize) -> usize {
        self.sset.face(1, 1)[f]
    }

    pub fn target(&self, f: usize) -> usize {
        self.sset.face(1, 0)[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.sset.degeneracy(0, 0)[o]
    }

    /// `f` then `g`, through the inverse of the Segal map at level 2.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.filler.get(&(f, g)).map(|&t| self.sset.face(2, 1)[t])
    }

    /// The 2-simplex with spine `(f, g)`.
    pub fn filler(&self, f: usize, g: usize) -> Option<usize> {
        self.filler.get(&(f, g)).copied()
    }

    pub fn equiv_object(&self, base: &FinSetBase) -> Result<EquivObject> {
        equiv_object(&self.sset, base)
    }

    /// Whether `s0: X_0 -> Equiv(X)` is a bijection.
    pub fn is_complete(&self, base: &FinSetBase) -> Result<Check> {
        let e = self.equiv_object(base)?;
        Ok(bijection_check(&e.s0))
    }

    /// Whether `d_{1,2}: Equiv(X) -> X_1` is a bijection.
    pub fn is_groupoid(&self, base: &FinSetBase) -> Result<Check> {
        let e = self.equiv_object(base)?;
        Ok(bijection_check(&e.d12))
    }

    pub fn opposite(&self, base: &FinSetBase) -> Result<Self> {
        Self::new(self.sset.opposite(), base)
    }
}

/// The witness is a codomain element hit twice or not at all.
fn bijection_check(map: &SetMap) -> Check {
    let mut seen = vec![false; map.codomain];
    for &y in &map.table {
        if std::mem::replace(&mut seen[y], true) {
            return Check {
                holds: false,
                witness: Some(y),
            };
        }
    }
    match seen.iter().position(|s| !s) {
        Some(y) => Check {
            holds: false,
            witness: Some(y),
        },
        None => Check {
            holds: true,
            witness: None,
        },
    }
}

/// Objects, arrows and structure maps of a category in finite sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InternalHead {
    pub objects: usize,
    pub arrows: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub identity: Vec<usize>,
    /// `[f, g, h]` with `h` the composite of `f` then `g`.
    pub composition: Vec<[usize; 3]>,
}

/// Checks the category axioms on `head` and builds its nerve.
pub fn internal_nerve(head: &InternalHead, base: &FinSetBase) -> Result<InternalCategory> {
    let fail = |what: String| Err(Error::AxiomViolation(what));
    let (n, m) = (head.objects, head.arrows);
    if head.source.len() != m || head.target.len() != m || head.identity.len() != n {
        return fail("structure maps have the wrong domain".into());
    }
    if head.source.iter().chain(&head.target).any(|&o| o >= n) || head.identity.iter().any(|&f| f >= m) {
        return fail("structure maps leave their codomain".into());
    }
    for (o, &i) in head.identity.iter().enumerate() {
        if head.source[i] != o || head.target[i] != o {
            return fail(format!("s(e({o})) = t(e({o})) = {o} fails"));
        }
    }
    let mut comp = HashMap::new();
    for &[f, g, h] in &head.composition {
        if f >= m || g >= m || h >= m {
            return fail("composition leaves the arrows".into());
        }
        if head.target[f] != head.source[g] {
            return fail(format!("composite of non-composable {f}, {g}"));
        }
        if head.source[h] != head.source[f] || head.target[h] != head.target[g] {
            return fail(format!("s({h}) = s({f}) and t({h}) = t({g}) fail"));
        }
        if comp.insert((f, g), h).is_some() {
            return fail(format!("two composites for {f}, {g}"));
        }
    }
    for f in 0..m {
        for g in 0..m {
            if head.target[f] == head.source[g] && !comp.contains_key(&(f, g)) {
                return fail(format!("missing composite for {f}, {g}"));
            }
        }
    }
    for f in 0..m {
        if comp[&(head.identity[head.source[f]], f)] != f || comp[&(f, head.identity[head.target[f]])] != f {
            return fail(format!("e(s({f})) ; {f} = {f} ; e(t({f})) = {f} fails"));
        }
    }
    for (&(f, g), &fg) in &comp {
        for h in (0..m).filter(|&h| head.source[h] == head.target[g]) {
            if comp[&(fg, h)] != comp[&(f, comp[&(g, h)])] {
                return fail(format!("({f} ; {g}) ; {h} = {f} ; ({g} ; {h}) fails"));
            }
        }
    }
    let objects = (0..n).map(|o| format!("o{o}")).collect();
    let arrows = (0..m)
        .map(|f| Arrow::new(format!("a{f}"), head.source[f], head.target[f]))
        .collect();
    let table = comp.iter().map(|(&(f, g), &h)| (f, g, h)).collect::<Vec<_>>();
    let c = FinCat::from_parts(objects, arrows, head.identity.clone(), table)?;
    InternalCategory::from_fincat(&c, base)
}

impl InternalHead {
    pub fn of(c: &FinCat) -> Self {
        Self {
            objects: c.object_count(),
            arrows: c.arrow_count(),
            source: (0..c.arrow_count()).map(|f| c.source(f)).collect(),
            target: (0..c.arrow_count()).map(|f| c.target(f)).collect(),
            identity: c.identities().to_vec(),
            composition: c
                .composable_pairs()
                .map(|(f, g)| [f, g, c.compose(f, g).unwrap()])
                .collect(),
        }
    }
}
