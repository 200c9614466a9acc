use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::externalize::externalize;
use crate::fincat::{Arrow, FinCat, FinFunctor, FinSetBase};
use crate::internal::InternalCategory;
use crate::sset::{reach, TruncSSet};

/// `S = Hom(C, X_•)` for a finite set `C` of size `p`, up to level 2.
///
/// A simplex of `S_n` is a `p`-tuple of `n`-simplices, indexed in base `|X_n|`.
struct Probed<'a> {
    x: &'a TruncSSet,
    p: usize,
}

impl Probed<'_> {
    fn level(&self, n: usize) -> usize {
        self.x.level(n).pow(self.p as u32)
    }

    fn digits(&self, n: usize, mut s: usize) -> Vec<usize> {
        let base = self.x.level(n);
        let mut out = vec![0; self.p];
        for d in out.iter_mut().rev() {
            *d = s % base;
            s /= base;
        }
        out
    }

    fn encode(&self, n: usize, digits: impl Iterator<Item = usize>) -> usize {
        let base = self.x.level(n);
        digits.fold(0, |acc, d| acc * base + d)
    }

    fn face(&self, n: usize, i: usize, s: usize) -> usize {
        let f = self.x.face(n, i);
        self.encode(n - 1, self.digits(n, s).into_iter().map(|d| f[d]))
    }

    fn degeneracy(&self, n: usize, i: usize, s: usize) -> usize {
        let f = self.x.degeneracy(n, i);
        self.encode(n + 1, self.digits(n, s).into_iter().map(|d| f[d]))
    }
}

/// Todd–Coxeter enumeration of the path category on `S_1` modulo
/// `s_0 x = 1_x` and `d_2 t ; d_0 t = d_1 t`.
struct Enumeration {
    parent: Vec<usize>,
    act: Vec<HashMap<usize, usize>>,
    start: Vec<usize>,
    end: Vec<usize>,
    defined_by: Vec<Option<(usize, usize)>>,
    budget: usize,
}

impl Enumeration {
    fn new(objects: usize, budget: usize) -> Self {
        Self {
            parent: (0..objects).collect(),
            act: vec![HashMap::new(); objects],
            start: (0..objects).collect(),
            end: (0..objects).collect(),
            defined_by: vec![None; objects],
            budget,
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn follow(&mut self, a: usize, e: usize, target: usize) -> Result<usize> {
        let a = self.find(a);
        if let Some(&t) = self.act[a].get(&e) {
            return Ok(self.find(t));
        }
        if self.parent.len() >= self.budget {
            return Err(Error::ColimitNotFinite { budget: self.budget });
        }
        let c = self.parent.len();
        self.parent.push(c);
        self.act.push(HashMap::new());
        self.start.push(self.start[a]);
        self.end.push(target);
        self.defined_by.push(Some((a, e)));
        self.act[a].insert(e, c);
        Ok(c)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, lose) = (a.min(b), a.max(b));
            self.parent[lose] = keep;
            for (e, t) in std::mem::take(&mut self.act[lose]) {
                match self.act[keep].get(&e) {
                    Some(&t2) => queue.push((t, t2)),
                    None => {
                        self.act[keep].insert(e, t);
                    }
                }
            }
        }
    }

    fn word(&self, mut c: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some((prev, e)) = self.defined_by[c] {
            out.push(e);
            c = prev;
        }
        out.reverse();
        out
    }
}

/// The pointwise colimit `∫^n Hom(C, X_n) · [n]` at one finite set, with its comparison to `Ext(X)(C)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KanComparison {
    pub size: usize,
    pub colimit: FinCat,
    pub classes_defined: usize,
    /// The canonical functor from the colimit to `Ext(X)(C)`.
    pub comparison: FinFunctor,
    pub agrees: bool,
}

/// The colimit over the comma category, i.e. over the simplices of `Hom(C, X_•)`,
/// presented by generators `S_1` and relations from `S_2`.
pub fn comma_colimit(x: &InternalCategory, p: usize, budget: usize, base: &FinSetBase) -> Result<(FinCat, Vec<Vec<usize>>, usize)> {
    let xs = reach(x.sset(), 2, base)?;
    let s = Probed { x: &xs, p };
    let objects = base.check("comma colimit objects", s.level(0))?;
    let edges = base.check("comma colimit generators", s.level(1))?;
    let triangles = base.check("comma colimit relations", s.level(2))?;
    let (src, tgt): (Vec<usize>, Vec<usize>) = (0..edges).map(|e| (s.face(1, 1, e), s.face(1, 0, e))).unzip();
    let mut outgoing = vec![Vec::new(); objects];
    for e in 0..edges {
        outgoing[src[e]].push(e);
    }
    let mut from_vertex = vec![Vec::new(); objects];
    for t in 0..triangles {
        let (f, g, h) = (s.face(2, 2, t), s.face(2, 0, t), s.face(2, 1, t));
        from_vertex[src[f]].push((f, g, h));
    }
    let mut en = Enumeration::new(objects, budget);
    let mut i = 0;
    while i < en.parent.len() {
        if en.find(i) != i {
            i += 1;
            continue;
        }
        let o = en.end[i];
        let id = s.degeneracy(0, 0, o);
        let c = en.follow(i, id, o)?;
        en.merge(c, i);
        for &(f, g, h) in &from_vertex[o] {
            let b = en.follow(i, f, tgt[f])?;
            let c = en.follow(b, g, tgt[g])?;
            let d = en.follow(i, h, tgt[h])?;
            en.merge(c, d);
        }
        for &e in &outgoing[o] {
            en.follow(i, e, tgt[e])?;
        }
        i += 1;
    }
    let classes_defined = en.parent.len();
    let roots: Vec<usize> = (0..en.parent.len()).filter(|&c| en.find(c) == c).collect();
    let position: HashMap<usize, usize> = roots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let words: Vec<Vec<usize>> = roots.iter().map(|&c| en.word(c)).collect();
    let mut by_start: Vec<Vec<usize>> = vec![Vec::new(); objects];
    for (i, &c) in roots.iter().enumerate() {
        by_start[en.start[c]].push(i);
    }
    let mut table = Vec::new();
    for (i, &c) in roots.iter().enumerate() {
        for &j in &by_start[en.end[c]] {
            let mut cur = c;
            for &e in &words[j] {
                let r = en.find(cur);
                cur = *en.act[r]
                    .get(&e)
                    .ok_or_else(|| Error::AxiomViolation("incomplete path enumeration".into()))?;
            }
            table.push((i, j, position[&en.find(cur)]));
        }
    }
    let names = (0..objects).map(|o| format!("s{o}")).collect();
    let arrows = roots
        .iter()
        .enumerate()
        .map(|(i, &c)| Arrow::new(format!("q{i}"), en.start[c], en.end[c]))
        .collect();
    let identities = (0..objects).map(|o| position[&en.find(o)]).collect();
    let colimit = FinCat::from_parts(names, arrows, identities, table)?;
    colimit.validate()?;
    Ok((colimit, words, classes_defined))
}

/// Compares the comma colimit with `Ext(X)` at every set of the probe.
pub fn left_kan_check(x: &InternalCategory, probe: usize, budget: usize, base: &FinSetBase) -> Result<Vec<KanComparison>> {
    let ext = externalize(x, probe, base)?;
    let xs = reach(x.sset(), 2, base)?;
    (0..=probe)
        .map(|p| {
            let (colimit, words, classes_defined) = comma_colimit(x, p, budget, base)?;
            let s = Probed { x: &xs, p };
            let target = ext.value(p);
            let labels: HashMap<&[usize], usize> = ext.morphism_labels[p]
                .iter()
                .enumerate()
                .map(|(i, l)| (l.as_slice(), i))
                .collect();
            let generator = |e: usize| labels[s.digits(1, e).as_slice()];
            let comparison = FinFunctor {
                objects: (0..colimit.object_count()).collect(),
                morphisms: (0..colimit.arrow_count())
                    .map(|i| {
                        let o = colimit.source(i);
                        words[i]
                            .iter()
                            .try_fold(target.identity(o), |acc, &e| target.compose(acc, generator(e)))
                            .ok_or_else(|| Error::AxiomViolation("a path does not compose in the externalization".into()))
                    })
                    .collect::<Result<_>>()?,
            };
            let agrees = colimit.object_count() == target.object_count()
                && comparison.validate(&colimit, target).is_ok()
                && comparison.is_bijective(target);
            Ok(KanComparison {
                size: p,
                colimit,
                classes_defined,
                comparison,
                agrees,
            })
        })
        .collect()
}
