use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named morphism with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(name: impl Into<String>, source: usize, target: usize) -> Self {
        Self {
            name: name.into(),
            source,
            target,
        }
    }
}

const DENSE_LIMIT: usize = 512;

#[derive(Clone, Debug)]
enum Table {
    Dense(Vec<u32>),
    Sparse(HashMap<(u32, u32), u32>),
}

/// A finite category given by explicit tables.
///
/// Composition is stored in diagrammatic order: `compose(f, g)` is `g ∘ f`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "FinCatData", try_from = "FinCatData")]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    table: Table,
    outgoing: Vec<Vec<usize>>,
}

/// The serialized form: composites of non-identity pairs as `[f, g, f then g]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCatData {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub identities: Vec<usize>,
    #[serde(default)]
    pub composition: Vec<[usize; 3]>,
}

impl From<FinCat> for FinCatData {
    fn from(c: FinCat) -> Self {
        let composition = c
            .composable_pairs()
            .filter(|&(f, g)| !c.is_identity(f) && !c.is_identity(g))
            .map(|(f, g)| [f, g, c.compose(f, g).unwrap()])
            .collect();
        Self {
            objects: c.objects,
            arrows: c.arrows,
            identities: c.identities,
            composition,
        }
    }
}

impl TryFrom<FinCatData> for FinCat {
    type Error = Error;

    fn try_from(d: FinCatData) -> Result<Self> {
        let table = d.composition.iter().map(|&[f, g, h]| (f, g, h)).collect::<Vec<_>>();
        let c = FinCat::from_parts(d.objects, d.arrows, d.identities, table)?;
        c.validate()?;
        Ok(c)
    }
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.arrows == other.arrows
            && self.identities == other.identities
            && self.composable_pairs().all(|(f, g)| self.compose(f, g) == other.compose(f, g))
    }
}

impl FinCat {
    /// Builds a category from tables. Composites with identities may be omitted.
    ///
    /// Checks that indices are in range, identities are endomorphisms, every
    /// table entry is well typed and every composable pair has a composite.
    /// Associativity and unit laws are left to [`FinCat::validate`].
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        table: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let n = objects.len();
        let m = arrows.len();
        if identities.len() != n {
            return Err(Error::Malformed(format!(
                "{} identities for {n} objects",
                identities.len()
            )));
        }
        for a in &arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::Malformed(format!("arrow {} has an unknown endpoint", a.name)));
            }
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= m || arrows[id].source != o || arrows[id].target != o {
                return Err(Error::Malformed(format!("identity of {} is not an endomorphism", objects[o])));
            }
        }
        let mut outgoing = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            outgoing[a.source].push(i);
        }
        let mut cat = Self {
            objects,
            arrows,
            identities,
            table: if m <= DENSE_LIMIT {
                Table::Dense(vec![u32::MAX; m * m])
            } else {
                Table::Sparse(HashMap::new())
            },
            outgoing,
        };
        for (f, g, h) in table {
            if f >= m || g >= m || h >= m {
                return Err(Error::Malformed("composition entry out of range".into()));
            }
            let (af, ag, ah) = (&cat.arrows[f], &cat.arrows[g], &cat.arrows[h]);
            if af.target != ag.source || ah.source != af.source || ah.target != ag.target {
                return Err(Error::Malformed(format!(
                    "composite of {} and {} given as ill-typed {}",
                    af.name, ag.name, ah.name
                )));
            }
            if let Some(old) = cat.compose(f, g) {
                if old != h {
                    return Err(Error::AxiomViolation(format!(
                        "two composites given for {} then {}",
                        af.name, ag.name
                    )));
                }
            }
            cat.set(f, g, h);
        }
        for f in 0..m {
            let (s, t) = (cat.arrows[f].source, cat.arrows[f].target);
            let (is, it) = (cat.identities[s], cat.identities[t]);
            if cat.compose(is, f).is_none() {
                cat.set(is, f, f);
            }
            if cat.compose(f, it).is_none() {
                cat.set(f, it, f);
            }
        }
        if let Some((f, g)) = cat.composable_pairs().find(|&(f, g)| cat.compose(f, g).is_none()) {
            return Err(Error::AxiomViolation(format!(
                "no composite for {} then {}",
                cat.arrows[f].name, cat.arrows[g].name
            )));
        }
        Ok(cat)
    }

    fn set(&mut self, f: usize, g: usize, h: usize) {
        let m = self.arrows.len();
        match &mut self.table {
            Table::Dense(t) => t[f * m + g] = h as u32,
            Table::Sparse(t) => {
                t.insert((f as u32, g as u32), h as u32);
            }
        }
    }

    /// Exhaustive check of unit and associativity laws.
    pub fn validate(&self) -> Result<()> {
        for f in 0..self.arrow_count() {
            let a = &self.arrows[f];
            if self.compose(self.identities[a.source], f) != Some(f)
                || self.compose(f, self.identities[a.target]) != Some(f)
            {
                return Err(Error::AxiomViolation(format!("unit law fails at {}", a.name)));
            }
        }
        for (f, g) in self.composable_pairs() {
            let fg = self.compose(f, g).unwrap();
            for &h in &self.outgoing[self.arrows[g].target] {
                let left = self.compose(fg, h);
                let right = self.compose(g, h).and_then(|gh| self.compose(f, gh));
                if left != right {
                    return Err(Error::AxiomViolation(format!(
                        "associativity fails at {}, {}, {}",
                        self.arrows[f].name, self.arrows[g].name, self.arrows[h].name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn source(&self, f: usize) -> usize {
        self.arrows[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.arrows[f].target
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].source] == f
    }

    /// `f` then `g`, if composable.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        let h = match &self.table {
            Table::Dense(t) => t[f * self.arrows.len() + g],
            Table::Sparse(t) => *t.get(&(f as u32, g as u32))?,
        };
        (h != u32::MAX).then_some(h as usize)
    }

    pub fn outgoing(&self, object: usize) -> &[usize] {
        &self.outgoing[object]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.outgoing[a]
            .iter()
            .copied()
            .filter(|&f| self.arrows[f].target == b)
            .collect()
    }

    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.arrows.len()).flat_map(move |f| {
            self.outgoing[self.arrows[f].target]
                .iter()
                .map(move |&g| (f, g))
        })
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let a = &self.arrows[f];
        self.hom(a.target, a.source).into_iter().find(|&g| {
            self.compose(f, g) == Some(self.identities[a.source])
                && self.compose(g, f) == Some(self.identities[a.target])
        })
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    /// A category whose only isomorphisms are identities.
    pub fn is_gaunt(&self) -> bool {
        (0..self.arrow_count()).all(|f| self.is_identity(f) || !self.is_iso(f))
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.arrow_count()).all(|f| self.is_iso(f))
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn find_arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    /// Objects `0..n` and identities only.
    pub fn discrete(n: usize) -> Self {
        Self::from_parts(
            (0..n).map(|i| i.to_string()).collect(),
            (0..n).map(|i| Arrow::new(format!("id{i}"), i, i)).collect(),
            (0..n).collect(),
            [],
        )
        .expect("discrete category")
    }

    /// A finite preorder on `0..n`; `leq(i, j)` need not be transitively closed.
    pub fn preorder(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = i == j || leq(i, j);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for (i, row) in rel.iter().enumerate() {
            for (j, &le) in row.iter().enumerate() {
                if le {
                    index.insert((i, j), arrows.len());
                    let name = if i == j { format!("id{i}") } else { format!("{i}<={j}") };
                    arrows.push(Arrow::new(name, i, j));
                }
            }
        }
        let identities = (0..n).map(|i| index[&(i, i)]).collect();
        let mut table = Vec::new();
        for (&(i, j), &f) in &index {
            for k in 0..n {
                if let Some(&g) = index.get(&(j, k)) {
                    table.push((f, g, index[&(i, k)]));
                }
            }
        }
        Self::from_parts((0..n).map(|i| i.to_string()).collect(), arrows, identities, table)
            .expect("preorder category")
    }

    /// The ordinal `[n] = {0 < 1 < ... < n}`.
    pub fn chain(n: usize) -> Self {
        Self::preorder(n + 1, |i, j| i <= j)
    }

    /// The indiscrete (chaotic) groupoid on `n` objects.
    pub fn indiscrete(n: usize) -> Self {
        Self::preorder(n, |_, _| true)
    }

    /// The free groupoid on `[n]`, i.e. the indiscrete groupoid on `n + 1` objects.
    pub fn free_groupoid(n: usize) -> Self {
        Self::indiscrete(n + 1)
    }

    /// The one-object category of a finite monoid; element 0 must be the unit.
    ///
    /// `mul[a][b]` is the product `a·b`, read as "`b` then `a`".
    pub fn monoid(names: &[&str], mul: &[Vec<usize>]) -> Result<Self> {
        let m = names.len();
        if mul.len() != m || mul.iter().any(|row| row.len() != m) {
            return Err(Error::Malformed("multiplication table has the wrong shape".into()));
        }
        let arrows = names.iter().map(|n| Arrow::new(*n, 0, 0)).collect();
        let mut table = Vec::new();
        for (a, row) in mul.iter().enumerate() {
            for (b, &ab) in row.iter().enumerate() {
                table.push((b, a, ab));
            }
        }
        let cat = Self::from_parts(vec!["*".into()], arrows, vec![0], table)?;
        cat.validate()?;
        Ok(cat)
    }

    /// The delooping of the cyclic group of order `n`.
    pub fn cyclic_group(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::monoid(&refs, &mul).expect("cyclic group")
    }

    /// Two parallel arrows `0 ⇉ 1`.
    pub fn parallel_pair() -> Self {
        Self::from_parts(
            vec!["0".into(), "1".into()],
            vec![
                Arrow::new("id0", 0, 0),
                Arrow::new("id1", 1, 1),
                Arrow::new("u", 0, 1),
                Arrow::new("v", 0, 1),
            ],
            vec![0, 1],
            [],
        )
        .expect("parallel pair")
    }

    pub fn opposite(&self) -> Self {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow::new(a.name.clone(), a.target, a.source))
            .collect();
        let table: Vec<_> = self
            .composable_pairs()
            .map(|(f, g)| (g, f, self.compose(f, g).unwrap()))
            .collect();
        Self::from_parts(self.objects.clone(), arrows, self.identities.clone(), table)
            .expect("opposite of a category")
    }

    /// Cartesian product; pair `(a, b)` has index `a * |B| + b`.
    pub fn product(&self, other: &FinCat) -> Self {
        let (n2, m2) = (other.object_count(), other.arrow_count());
        let mut objects = Vec::new();
        for a in &self.objects {
            for b in &other.objects {
                objects.push(format!("({a},{b})"));
            }
        }
        let mut arrows = Vec::new();
        for f in &self.arrows {
            for g in &other.arrows {
                arrows.push(Arrow::new(
                    format!("({},{})", f.name, g.name),
                    f.source * n2 + g.source,
                    f.target * n2 + g.target,
                ));
            }
        }
        let identities = (0..self.object_count())
            .flat_map(|a| (0..n2).map(move |b| (a, b)))
            .map(|(a, b)| self.identities[a] * m2 + other.identities[b])
            .collect();
        let mut table = Vec::new();
        for (f1, f2) in self.composable_pairs() {
            let f = self.compose(f1, f2).unwrap();
            for (g1, g2) in other.composable_pairs() {
                let g = other.compose(g1, g2).unwrap();
                table.push((f1 * m2 + g1, f2 * m2 + g2, f * m2 + g));
            }
        }
        Self::from_parts(objects, arrows, identities, table).expect("product of categories")
    }

    /// Disjoint union, summands laid out consecutively.
    pub fn coproduct(parts: &[FinCat]) -> Self {
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut identities = Vec::new();
        let mut table = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            let (o, a) = (objects.len(), arrows.len());
            objects.extend(part.objects.iter().map(|x| format!("{k}.{x}")));
            arrows.extend(
                part.arrows
                    .iter()
                    .map(|f| Arrow::new(format!("{k}.{}", f.name), f.source + o, f.target + o)),
            );
            identities.extend(part.identities.iter().map(|&i| i + a));
            table.extend(
                part.composable_pairs()
                    .map(|(f, g)| (f + a, g + a, part.compose(f, g).unwrap() + a)),
            );
        }
        Self::from_parts(objects, arrows, identities, table).expect("coproduct of categories")
    }

    /// The wide subcategory of isomorphisms, with the inclusion on morphisms.
    pub fn core(&self) -> (Self, Vec<usize>) {
        let keep: Vec<usize> = (0..self.arrow_count()).filter(|&f| self.is_iso(f)).collect();
        let mut position = vec![usize::MAX; self.arrow_count()];
        for (i, &f) in keep.iter().enumerate() {
            position[f] = i;
        }
        let arrows = keep.iter().map(|&f| self.arrows[f].clone()).collect();
        let identities = self.identities.iter().map(|&i| position[i]).collect();
        let mut table = Vec::new();
        for (i, &f) in keep.iter().enumerate() {
            for &g in &self.outgoing[self.arrows[f].target] {
                if position[g] != usize::MAX {
                    table.push((i, position[g], position[self.compose(f, g).unwrap()]));
                }
            }
        }
        let core = Self::from_parts(self.objects.clone(), arrows, identities, table)
            .expect("isomorphisms form a subcategory");
        (core, keep)
    }

    /// The full subcategory on `objects`, with the morphism inclusion.
    pub fn full_subcategory(&self, objects: &[usize]) -> (Self, Vec<usize>) {
        let mut position = vec![usize::MAX; self.object_count()];
        for (i, &o) in objects.iter().enumerate() {
            position[o] = i;
        }
        let keep: Vec<usize> = (0..self.arrow_count())
            .filter(|&f| position[self.source(f)] != usize::MAX && position[self.target(f)] != usize::MAX)
            .collect();
        let mut arrow_pos = vec![usize::MAX; self.arrow_count()];
        for (i, &f) in keep.iter().enumerate() {
            arrow_pos[f] = i;
        }
        let arrows = keep
            .iter()
            .map(|&f| {
                let a = &self.arrows[f];
                Arrow::new(a.name.clone(), position[a.source], position[a.target])
            })
            .collect();
        let identities = objects.iter().map(|&o| arrow_pos[self.identities[o]]).collect();
        let mut table = Vec::new();
        for (i, &f) in keep.iter().enumerate() {
            for &g in &self.outgoing[self.target(f)] {
                if arrow_pos[g] != usize::MAX {
                    table.push((i, arrow_pos[g], arrow_pos[self.compose(f, g).unwrap()]));
                }
            }
        }
        let names = objects.iter().map(|&o| self.objects[o].clone()).collect();
        let sub = Self::from_parts(names, arrows, identities, table).expect("full subcategory");
        (sub, keep)
    }
}
