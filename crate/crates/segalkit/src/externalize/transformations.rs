use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::indexed::{externalize, IndexedCategory};
use crate::delta::{count_monotone, monotone_rank, MonotoneMap};
use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors_among, Arrow, FinCat, FinFunctor, FinSetBase, NatTrans, SetMap};
use crate::internal::InternalCategory;
use crate::constructions::{determining_truncation, power};
use crate::sset::{sset_hom, SimplicialMap, TruncSSet};

/// Natural families of functors between two indexed categories on a shared probe,
/// with the modifications between them.
#[derive(Clone, Debug)]
pub struct Transformations {
    pub category: FinCat,
    /// `families[i][p]` is the component at the set of size `p`.
    pub families: Vec<Vec<FinFunctor>>,
    pub modifications: Vec<(usize, usize, Vec<NatTrans>)>,
}

impl Transformations {
    pub fn family_index(&self, family: &[FinFunctor]) -> Option<usize> {
        self.families.iter().position(|f| f == family)
    }

    pub fn modification_index(&self, from: usize, to: usize, m: &[NatTrans]) -> Option<usize> {
        self.modifications
            .iter()
            .position(|(i, j, c)| *i == from && *j == to && c == m)
    }
}

/// Restriction maps into `p` from strictly smaller sets, and the endomaps of `p`.
fn probe_structure(e: &IndexedCategory, p: usize) -> (Vec<&(SetMap, FinFunctor)>, Vec<&(SetMap, FinFunctor)>) {
    let lower = e.maps_into(p).filter(|(u, _)| u.domain() < p).collect();
    let endo = e.maps_into(p).filter(|(u, _)| u.domain() == p).collect();
    (lower, endo)
}

fn check_shared_probe(e1: &IndexedCategory, e2: &IndexedCategory) -> Result<()> {
    if e1.probe != e2.probe {
        return Err(Error::ProbeTooSmall(format!("probes {} and {} differ", e1.probe, e2.probe)));
    }
    Ok(())
}

/// All natural families `E1 -> E2`, solved size by size: restrictions to smaller
/// sets narrow the candidates, endomaps are checked once a component is chosen.
fn natural_families(e1: &IndexedCategory, e2: &IndexedCategory, cap: usize) -> Result<Vec<Vec<FinFunctor>>> {
    let mut out = Vec::new();
    let mut partial = Vec::new();
    families_from(e1, e2, 0, &mut partial, &mut out, cap)?;
    Ok(out)
}

fn families_from(
    e1: &IndexedCategory,
    e2: &IndexedCategory,
    p: usize,
    partial: &mut Vec<FinFunctor>,
    out: &mut Vec<Vec<FinFunctor>>,
    cap: usize,
) -> Result<()> {
    if p > e1.probe {
        if out.len() >= cap {
            return Err(Error::bound("natural families", out.len() + 1, cap));
        }
        out.push(partial.clone());
        return Ok(());
    }
    let (lower, endo) = probe_structure(e1, p);
    let (lower2, endo2) = probe_structure(e2, p);
    let (src, tgt) = (e1.value(p), e2.value(p));
    let object_signature = |b: usize| -> Vec<usize> { lower2.iter().map(|(_, r)| r.objects[b]).collect() };
    let mut by_signature: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for b in 0..tgt.object_count() {
        by_signature.entry(object_signature(b)).or_default().push(b);
    }
    let candidates: Vec<Vec<usize>> = (0..src.object_count())
        .map(|a| {
            let required: Vec<usize> = lower
                .iter()
                .map(|(u, r)| partial[u.domain()].objects[r.objects[a]])
                .collect();
            by_signature.get(&required).cloned().unwrap_or_default()
        })
        .collect();
    let required: Vec<Vec<usize>> = (0..src.arrow_count())
        .map(|f| {
            lower
                .iter()
                .map(|(u, r)| partial[u.domain()].morphisms[r.morphisms[f]])
                .collect()
        })
        .collect();
    let allow = |f: usize, g: usize| lower2.iter().zip(&required[f]).all(|((_, r), &want)| r.morphisms[g] == want);
    for alpha in enumerate_functors_among(src, tgt, &candidates, &allow, cap)? {
        let natural = endo
            .iter()
            .zip(&endo2)
            .all(|((_, r1), (_, r2))| r1.then(&alpha) == alpha.then(r2));
        if natural {
            partial.push(alpha);
            families_from(e1, e2, p + 1, partial, out, cap)?;
            partial.pop();
        }
    }
    Ok(())
}

/// Component families starting at `alpha`, chosen among out-morphisms and compatible with restriction.
#[allow(clippy::too_many_arguments)]
fn modifications_from(
    e1: &IndexedCategory,
    e2: &IndexedCategory,
    alpha: &[FinFunctor],
    p: usize,
    partial: &mut Vec<Vec<usize>>,
    found: &mut Vec<Vec<Vec<usize>>>,
    cap: usize,
) -> Result<()> {
    if p > e1.probe {
        if found.len() >= cap {
            return Err(Error::bound("modifications", found.len() + 1, cap));
        }
        found.push(partial.clone());
        return Ok(());
    }
    let (lower, endo) = probe_structure(e1, p);
    let (lower2, endo2) = probe_structure(e2, p);
    let (src, tgt) = (e1.value(p), e2.value(p));
    let choices: Vec<Vec<usize>> = (0..src.object_count())
        .map(|a| {
            tgt.outgoing(alpha[p].objects[a])
                .iter()
                .copied()
                .filter(|&c| {
                    lower
                        .iter()
                        .zip(&lower2)
                        .all(|((u, r1), (_, r2))| r2.morphisms[c] == partial[u.domain()][r1.objects[a]])
                })
                .collect()
        })
        .collect();
    let mut current = Vec::with_capacity(choices.len());
    let mut result = Ok(());
    product(&choices, &mut current, &mut |m| {
        if result.is_err() {
            return;
        }
        let compatible = endo
            .iter()
            .zip(&endo2)
            .all(|((_, r1), (_, r2))| (0..m.len()).all(|a| r2.morphisms[m[a]] == m[r1.objects[a]]));
        if compatible {
            partial.push(m.to_vec());
            result = modifications_from(e1, e2, alpha, p + 1, partial, found, cap);
            partial.pop();
        }
    });
    result
}

fn product(choices: &[Vec<usize>], current: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if current.len() == choices.len() {
        emit(current);
        return;
    }
    for &c in &choices[current.len()] {
        current.push(c);
        product(choices, current, emit);
        current.pop();
    }
}

/// The category of natural families `E1 -> E2` and modifications, over the shared probe.
pub fn nat_transformations(e1: &IndexedCategory, e2: &IndexedCategory, cap: usize) -> Result<Transformations> {
    check_shared_probe(e1, e2)?;
    let families = natural_families(e1, e2, cap)?;
    let mut by_objects: HashMap<Vec<&[usize]>, Vec<usize>> = HashMap::new();
    for (i, f) in families.iter().enumerate() {
        by_objects
            .entry(f.iter().map(|c| c.objects.as_slice()).collect())
            .or_default()
            .push(i);
    }
    let mut modifications = Vec::new();
    for (i, alpha) in families.iter().enumerate() {
        let mut found = Vec::new();
        modifications_from(e1, e2, alpha, 0, &mut Vec::new(), &mut found, cap)?;
        for m in found {
            let targets: Vec<Vec<usize>> = (0..=e1.probe)
                .map(|p| m[p].iter().map(|&c| e2.value(p).target(c)).collect())
                .collect();
            let key: Vec<&[usize]> = targets.iter().map(Vec::as_slice).collect();
            for &j in by_objects.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
                let components: Vec<NatTrans> = m.iter().map(|c| NatTrans { components: c.clone() }).collect();
                let natural = (0..=e1.probe).all(|p| {
                    components[p].is_natural(e1.value(p), e2.value(p), &alpha[p], &families[j][p])
                });
                if natural {
                    if modifications.len() >= cap {
                        return Err(Error::bound("modifications", modifications.len() + 1, cap));
                    }
                    modifications.push((i, j, components));
                }
            }
        }
    }
    let category = assemble(e2, &families, &modifications)?;
    Ok(Transformations {
        category,
        families,
        modifications,
    })
}

fn assemble(
    e2: &IndexedCategory,
    families: &[Vec<FinFunctor>],
    modifications: &[(usize, usize, Vec<NatTrans>)],
) -> Result<FinCat> {
    let index: HashMap<(usize, usize, &[NatTrans]), usize> = modifications
        .iter()
        .enumerate()
        .map(|(k, (i, j, m))| ((*i, *j, m.as_slice()), k))
        .collect();
    let identities = families
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let id: Vec<NatTrans> = f
                .iter()
                .enumerate()
                .map(|(p, c)| NatTrans {
                    components: c.objects.iter().map(|&o| e2.value(p).identity(o)).collect(),
                })
                .collect();
            index
                .get(&(i, i, id.as_slice()))
                .copied()
                .ok_or_else(|| Error::AxiomViolation("identity modification missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); families.len()];
    for (k, (i, _, _)) in modifications.iter().enumerate() {
        outgoing[*i].push(k);
    }
    let mut table = Vec::new();
    for (k, (i, j, m)) in modifications.iter().enumerate() {
        for &l in &outgoing[*j] {
            let (_, t, n) = &modifications[l];
            let composite: Vec<NatTrans> = m
                .iter()
                .zip(n)
                .enumerate()
                .map(|(p, (a, b))| NatTrans {
                    components: a
                        .components
                        .iter()
                        .zip(&b.components)
                        .map(|(&x, &y)| e2.value(p).compose(x, y).expect("components compose"))
                        .collect(),
                })
                .collect();
            let h = index
                .get(&(*i, *t, composite.as_slice()))
                .copied()
                .ok_or_else(|| Error::AxiomViolation("modifications are not closed under composition".into()))?;
            table.push((k, l, h));
        }
    }
    let objects = (0..families.len()).map(|i| format!("alpha{i}")).collect();
    let arrows = modifications
        .iter()
        .enumerate()
        .map(|(k, (i, j, _))| Arrow::new(format!("m{k}"), *i, *j))
        .collect();
    FinCat::from_parts(objects, arrows, identities, table)
}

fn label_index(labels: &[Vec<usize>]) -> HashMap<&[usize], usize> {
    labels.iter().enumerate().map(|(i, l)| (l.as_slice(), i)).collect()
}

/// The family `Ext(f)` of postcomposition functors on the probe of `ext_x`, `ext_y`.
pub fn ext_on_functor(
    f: &SimplicialMap,
    x: &InternalCategory,
    y: &InternalCategory,
    ext_x: &IndexedCategory,
    ext_y: &IndexedCategory,
) -> Result<Vec<FinFunctor>> {
    check_shared_probe(ext_x, ext_y)?;
    let t = f.levels.len().saturating_sub(1);
    f.validate(&x.sset().truncate(t), &y.sset().truncate(t))?;
    let family: Vec<FinFunctor> = (0..=ext_x.probe)
        .map(|p| {
            let objects = label_index(&ext_y.object_labels[p]);
            let morphisms = label_index(&ext_y.morphism_labels[p]);
            let post = |labels: &[Vec<usize>], level: usize, index: &HashMap<&[usize], usize>| -> Vec<usize> {
                labels
                    .iter()
                    .map(|a| {
                        let image: Vec<usize> = a.iter().map(|&v| f.apply(level, v)).collect();
                        index[image.as_slice()]
                    })
                    .collect()
            };
            FinFunctor {
                objects: post(&ext_x.object_labels[p], 0, &objects),
                morphisms: post(&ext_x.morphism_labels[p], 1, &morphisms),
            }
        })
        .collect();
    for (p, alpha) in family.iter().enumerate() {
        alpha.validate(ext_x.value(p), ext_y.value(p))?;
    }
    for ((u, r1), (_, r2)) in ext_x.restrictions.iter().zip(&ext_y.restrictions) {
        if r1.then(&family[u.domain()]) != family[u.codomain].then(r2) {
            return Err(Error::NotAFunctor("postcomposition is not natural over the probe".into()));
        }
    }
    Ok(family)
}

/// The three counts compared by the fully faithfulness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullyFaithful {
    pub probe: usize,
    pub internal_functors: usize,
    pub natural_families: usize,
    pub internal_transformations: usize,
    pub modifications: usize,
    pub functors_bijective: bool,
    pub transformations_bijective: bool,
}

impl FullyFaithful {
    pub fn holds(&self) -> bool {
        self.functors_bijective && self.transformations_bijective
    }
}

/// Compares internal functors and transformations `X -> Y` with natural families and
/// modifications `Ext X -> Ext Y`, and checks that the counts are unchanged on a larger probe.
pub fn fully_faithful_check(
    x: &InternalCategory,
    y: &InternalCategory,
    probe: usize,
    base: &FinSetBase,
) -> Result<FullyFaithful> {
    let result = fully_faithful_at(x, y, probe, base)?;
    let larger = fully_faithful_at(x, y, probe + 1, base)?;
    if (larger.natural_families, larger.modifications) != (result.natural_families, result.modifications) {
        return Err(Error::ProbeTooSmall(format!(
            "probe {probe} gives {} families and {} modifications, probe {} gives {} and {}",
            result.natural_families,
            result.modifications,
            probe + 1,
            larger.natural_families,
            larger.modifications
        )));
    }
    Ok(result)
}

/// The value at the simplex `(a, id)` of `Δ^1 × Δ^n`, for a map out of that weight.
fn product_simplex(n: usize, a: &MonotoneMap) -> usize {
    monotone_rank(a) * count_monotone(n, n) + monotone_rank(&MonotoneMap::identity(n))
}

pub fn fully_faithful_at(
    x: &InternalCategory,
    y: &InternalCategory,
    probe: usize,
    base: &FinSetBase,
) -> Result<FullyFaithful> {
    let ext_x = externalize(x, probe, base)?;
    let ext_y = externalize(y, probe, base)?;
    let nat = nat_transformations(&ext_x, &ext_y, base.bound)?;
    fully_faithful_with(x, y, &ext_x, &ext_y, &nat, base)
}

/// As [`fully_faithful_at`], reusing both externalizations and the transformations between them.
pub fn fully_faithful_with(
    x: &InternalCategory,
    y: &InternalCategory,
    ext_x: &IndexedCategory,
    ext_y: &IndexedCategory,
    nat: &Transformations,
    base: &FinSetBase,
) -> Result<FullyFaithful> {
    let probe = ext_x.object_labels.len() - 1;
    // maps into a c-coskeletal target are determined below level max(c, 2)
    let t = determining_truncation(y.sset()).max(2).min(x.sset().truncation());
    let xs = x.sset().truncate(t);
    let functors = sset_hom(&xs, y.sset(), base)?;
    let mut hit = vec![false; nat.families.len()];
    let mut functors_bijective = functors.len() == nat.families.len();
    for f in functors.maps() {
        let family = ext_on_functor(&f, x, y, ext_x, ext_y)?;
        match nat.family_index(&family) {
            Some(i) if !std::mem::replace(&mut hit[i], true) => {}
            _ => functors_bijective = false,
        }
    }
    let arrow = power(y.sset(), &TruncSSet::standard_simplex(1, 2), t, determining_truncation(y.sset()), base)?;
    let transformations = sset_hom(&xs, &arrow.sset, base)?;
    let by_level_one: HashMap<&FinFunctor, usize> =
        nat.families.iter().enumerate().map(|(i, f)| (&f[1.min(probe)], i)).collect();
    let mut hit = vec![false; nat.modifications.len()];
    let mut transformations_bijective = transformations.len() == nat.modifications.len() && probe >= 1;
    let c = x.underlying();
    let p1 = 1.min(probe);
    let (y_objects, y_morphisms) = (label_index(&ext_y.object_labels[p1]), label_index(&ext_y.morphism_labels[p1]));
    for e in 0..transformations.len() {
        let cell = |level: usize, s: usize, a: &MonotoneMap| {
            let h = transformations.value(e, level, s);
            arrow_hom_value(&arrow, level, h, product_simplex(level, a))
        };
        let (v0, v1) = (MonotoneMap::constant(0, 1, 0), MonotoneMap::constant(0, 1, 1));
        let (w0, w1) = (MonotoneMap::constant(1, 1, 0), MonotoneMap::constant(1, 1, 1));
        let endpoint = |v: &MonotoneMap, w: &MonotoneMap| -> Option<FinFunctor> {
            let objects = ext_x.object_labels[p1]
                .iter()
                .map(|a| {
                    let image: Vec<usize> = a.iter().map(|&o| cell(0, o, v)).collect();
                    y_objects.get(image.as_slice()).copied()
                })
                .collect::<Option<_>>()?;
            let morphisms = ext_x.morphism_labels[p1]
                .iter()
                .map(|a| {
                    let image: Vec<usize> = a.iter().map(|&f| cell(1, f, w)).collect();
                    y_morphisms.get(image.as_slice()).copied()
                })
                .collect::<Option<_>>()?;
            Some(FinFunctor { objects, morphisms })
        };
        let (source, target) = (endpoint(&v0, &w0), endpoint(&v1, &w1));
        let components: Vec<usize> = (0..c.object_count())
            .map(|o| cell_edge(&arrow, transformations.value(e, 0, o)))
            .collect();
        let decoded = match (source.and_then(|f| by_level_one.get(&f).copied()), target.and_then(|f| by_level_one.get(&f).copied())) {
            (Some(i), Some(j)) => {
                let m: Vec<NatTrans> = (0..=probe)
                    .map(|p| {
                        let index = label_index(&ext_y.morphism_labels[p]);
                        NatTrans {
                            components: ext_x.object_labels[p]
                                .iter()
                                .map(|a| {
                                    let image: Vec<usize> = a.iter().map(|&o| components[o]).collect();
                                    index[image.as_slice()]
                                })
                                .collect(),
                        }
                    })
                    .collect();
                nat.modification_index(i, j, &m)
            }
            _ => None,
        };
        match decoded {
            Some(k) if !std::mem::replace(&mut hit[k], true) => {}
            _ => transformations_bijective = false,
        }
    }
    Ok(FullyFaithful {
        probe,
        internal_functors: functors.len(),
        natural_families: nat.families.len(),
        internal_transformations: transformations.len(),
        modifications: nat.modifications.len(),
        functors_bijective,
        transformations_bijective,
    })
}

/// The value of the `h`-th simplex of `Y^{Δ^1}` at level `n` on the weight simplex `w`.
fn arrow_hom_value(arrow: &crate::constructions::Power, n: usize, h: usize, w: usize) -> usize {
    arrow.hom(n).value(h, n, w)
}

/// The edge `Δ^1 × Δ^0 -> Y` named by a vertex of `Y^{Δ^1}`.
fn cell_edge(arrow: &crate::constructions::Power, h: usize) -> usize {
    let id = MonotoneMap::identity(1);
    arrow.hom(0).value(h, 1, monotone_rank(&id) * count_monotone(1, 0))
}
