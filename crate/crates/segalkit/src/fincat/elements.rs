use std::collections::HashMap;

use super::category::{Arrow, FinCat};
use super::finset::SetMap;
use super::functor::FinFunctor;
use crate::error::{Error, Result};

/// A presheaf on a finite category: `maps[f]` sends `P(target f)` to `P(source f)`.
#[derive(Clone, Debug)]
pub struct Presheaf {
    pub shape: FinCat,
    pub sets: Vec<usize>,
    pub maps: Vec<SetMap>,
}

impl Presheaf {
    /// The constant presheaf at the one-point set.
    pub fn terminal(shape: FinCat) -> Self {
        let sets = vec![1; shape.object_count()];
        let maps = vec![SetMap::identity(1); shape.arrow_count()];
        Self { shape, sets, maps }
    }

    /// The representable presheaf `Hom(-, c)`.
    pub fn representable(shape: FinCat, c: usize) -> Self {
        let homs: Vec<Vec<usize>> = (0..shape.object_count()).map(|a| shape.hom(a, c)).collect();
        let maps = (0..shape.arrow_count())
            .map(|f| {
                let (s, t) = (shape.source(f), shape.target(f));
                let table = homs[t]
                    .iter()
                    .map(|&g| {
                        let fg = shape.compose(f, g).unwrap();
                        homs[s].iter().position(|&h| h == fg).unwrap()
                    })
                    .collect();
                SetMap {
                    codomain: homs[s].len(),
                    table,
                }
            })
            .collect();
        let sets = homs.iter().map(Vec::len).collect();
        Self { shape, sets, maps }
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.shape;
        if self.sets.len() != c.object_count() || self.maps.len() != c.arrow_count() {
            return Err(Error::NotAFunctor("presheaf tables do not match the shape".into()));
        }
        for (f, a) in c.arrows().iter().enumerate() {
            let m = &self.maps[f];
            if m.domain() != self.sets[a.target] || m.codomain != self.sets[a.source] {
                return Err(Error::NotAFunctor(format!("{} acts with the wrong type", a.name)));
            }
        }
        for o in 0..c.object_count() {
            if self.maps[c.identity(o)] != SetMap::identity(self.sets[o]) {
                return Err(Error::NotAFunctor("identity does not act trivially".into()));
            }
        }
        for (f, g) in c.composable_pairs() {
            let h = c.compose(f, g).unwrap();
            if self.maps[g].then(&self.maps[f]) != self.maps[h] {
                return Err(Error::NotAFunctor("action does not respect composition".into()));
            }
        }
        Ok(())
    }
}

/// `El(P)` with its projection to the indexing category.
#[derive(Clone, Debug)]
pub struct Elements {
    pub category: FinCat,
    pub projection: FinFunctor,
    /// Object `i` of `category` is the element `elements[i] = (c, x)` with `x ∈ P(c)`.
    pub elements: Vec<(usize, usize)>,
}

impl Elements {
    /// Objects from which every other object has exactly one arrow in.
    pub fn terminal_objects(&self) -> Vec<usize> {
        let c = &self.category;
        (0..c.object_count())
            .filter(|&t| (0..c.object_count()).all(|a| c.hom(a, t).len() == 1))
            .collect()
    }
}

/// The category of elements: objects `(c, x)`, arrows `f: (c, P(f)y) -> (d, y)`.
pub fn category_of_elements(p: &Presheaf) -> Result<Elements> {
    p.validate()?;
    let c = &p.shape;
    let mut elements = Vec::new();
    let mut object_index = HashMap::new();
    for (o, &size) in p.sets.iter().enumerate() {
        for x in 0..size {
            object_index.insert((o, x), elements.len());
            elements.push((o, x));
        }
    }
    let mut arrows = Vec::new();
    let mut arrow_index = HashMap::new();
    let mut under = Vec::new();
    for (f, a) in c.arrows().iter().enumerate() {
        for y in 0..p.sets[a.target] {
            let x = p.maps[f].apply(y);
            arrow_index.insert((f, y), arrows.len());
            under.push(f);
            arrows.push(Arrow::new(
                format!("{}@{y}", a.name),
                object_index[&(a.source, x)],
                object_index[&(a.target, y)],
            ));
        }
    }
    let identities = elements
        .iter()
        .map(|&(o, x)| arrow_index[&(c.identity(o), x)])
        .collect();
    let mut table = Vec::new();
    for (f, g) in c.composable_pairs() {
        let h = c.compose(f, g).unwrap();
        for z in 0..p.sets[c.target(g)] {
            let y = p.maps[g].apply(z);
            table.push((arrow_index[&(f, y)], arrow_index[&(g, z)], arrow_index[&(h, z)]));
        }
    }
    let names = elements
        .iter()
        .map(|&(o, x)| format!("({},{x})", c.object_names()[o]))
        .collect();
    let category = FinCat::from_parts(names, arrows, identities, table)?;
    let projection = FinFunctor {
        objects: elements.iter().map(|&(o, _)| o).collect(),
        morphisms: under,
    };
    Ok(Elements {
        category,
        projection,
        elements,
    })
}
