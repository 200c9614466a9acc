use serde_json::json;

use super::Certificate;
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor};

struct IsoSearch<'a> {
    a: &'a FinCat,
    b: &'a FinCat,
    objects: Vec<usize>,
    used_objects: Vec<bool>,
    arrows: Vec<usize>,
    used_arrows: Vec<bool>,
    /// Triples `(f, g, f;g)` of `a`, filed under their largest arrow.
    due: Vec<Vec<(usize, usize, usize)>>,
    work: usize,
    budget: usize,
}

impl IsoSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.work += 1;
        if self.work > self.budget {
            return Err(Error::SearchBudgetExceeded {
                budget: self.budget,
                during: "isomorphism search".into(),
            });
        }
        Ok(())
    }

    fn hom_count(c: &FinCat, x: usize, y: usize) -> usize {
        c.arrows().iter().filter(|f| f.source == x && f.target == y).count()
    }

    fn objects_from(&mut self, i: usize) -> Result<bool> {
        if i == self.a.object_count() {
            return self.arrows_from(0);
        }
        for j in 0..self.b.object_count() {
            if self.used_objects[j] {
                continue;
            }
            self.tick()?;
            self.objects.push(j);
            let consistent = (0..=i).all(|k| {
                Self::hom_count(self.a, i, k) == Self::hom_count(self.b, j, self.objects[k])
                    && Self::hom_count(self.a, k, i) == Self::hom_count(self.b, self.objects[k], j)
            });
            if consistent {
                self.used_objects[j] = true;
                if self.objects_from(i + 1)? {
                    return Ok(true);
                }
                self.used_objects[j] = false;
            }
            self.objects.pop();
        }
        Ok(false)
    }

    fn arrows_from(&mut self, f: usize) -> Result<bool> {
        if f == self.a.arrow_count() {
            return Ok(true);
        }
        let arrow = self.a.arrow(f);
        let (s, t) = (self.objects[arrow.source], self.objects[arrow.target]);
        let identity = self.a.is_identity(f);
        for g in 0..self.b.arrow_count() {
            let candidate = self.b.arrow(g);
            if self.used_arrows[g] || candidate.source != s || candidate.target != t || self.b.is_identity(g) != identity {
                continue;
            }
            self.tick()?;
            self.arrows.push(g);
            let compatible = self.due[f]
                .iter()
                .all(|&(x, y, z)| self.b.compose(self.arrows[x], self.arrows[y]) == Some(self.arrows[z]));
            if compatible {
                self.used_arrows[g] = true;
                if self.arrows_from(f + 1)? {
                    return Ok(true);
                }
                self.used_arrows[g] = false;
            }
            self.arrows.pop();
        }
        Ok(false)
    }
}

/// An isomorphism `a -> b`, by backtracking over object and arrow bijections.
pub fn find_isomorphism(a: &FinCat, b: &FinCat, budget: usize) -> Result<Option<FinFunctor>> {
    if a.object_count() != b.object_count() || a.arrow_count() != b.arrow_count() {
        return Ok(None);
    }
    let mut due = vec![Vec::new(); a.arrow_count()];
    for f in 0..a.arrow_count() {
        for g in 0..a.arrow_count() {
            if let Some(h) = a.compose(f, g) {
                due[f.max(g).max(h)].push((f, g, h));
            }
        }
    }
    let mut search = IsoSearch {
        a,
        b,
        objects: Vec::new(),
        used_objects: vec![false; b.object_count()],
        arrows: Vec::new(),
        used_arrows: vec![false; b.arrow_count()],
        due,
        work: 0,
        budget,
    };
    Ok(search.objects_from(0)?.then(|| FinFunctor {
        objects: search.objects,
        morphisms: search.arrows,
    }))
}

/// A non-identity morphism with a two-sided inverse, found by trying every candidate.
pub fn nontrivial_isomorphism(c: &FinCat) -> Option<usize> {
    (0..c.arrow_count()).filter(|&f| !c.is_identity(f)).find(|&f| {
        (0..c.arrow_count()).any(|g| {
            c.compose(f, g) == Some(c.identity(c.source(f))) && c.compose(g, f) == Some(c.identity(c.target(f)))
        })
    })
}

/// One object from each isomorphism class, with the full subcategory on them.
pub fn skeleton(c: &FinCat) -> FinCat {
    let iso = |x: usize, y: usize| {
        (0..c.arrow_count()).any(|f| {
            c.arrow(f).source == x
                && c.arrow(f).target == y
                && (0..c.arrow_count()).any(|g| {
                    c.compose(f, g) == Some(c.identity(x)) && c.compose(g, f) == Some(c.identity(y))
                })
        })
    };
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..c.object_count() {
        if !reps.iter().any(|&r| iso(r, x)) {
            reps.push(x);
        }
    }
    c.full_subcategory(&reps).0
}

pub fn certify_isomorphic(a: &FinCat, b: &FinCat, budget: usize) -> Result<Certificate> {
    let claim = "isomorphic categories";
    let log = vec![
        format!("{} objects, {} arrows", a.object_count(), a.arrow_count()),
        format!("{} objects, {} arrows", b.object_count(), b.arrow_count()),
    ];
    Ok(match find_isomorphism(a, b, budget)? {
        Some(f) => {
            let mut log = log;
            log.push(format!("witness on objects {:?}", f.objects));
            Certificate::pass(claim, log)
        }
        None => Certificate::fail(
            claim,
            log,
            json!({ "left": [a.object_count(), a.arrow_count()], "right": [b.object_count(), b.arrow_count()] }),
        ),
    })
}

/// Equivalence, as isomorphism of skeleta.
pub fn certify_equivalent(a: &FinCat, b: &FinCat, budget: usize) -> Result<Certificate> {
    let (sa, sb) = (skeleton(a), skeleton(b));
    let mut cert = certify_isomorphic(&sa, &sb, budget)?;
    cert.claim = "equivalent categories".into();
    cert.log.insert(0, "compared skeleta".into());
    Ok(cert)
}
