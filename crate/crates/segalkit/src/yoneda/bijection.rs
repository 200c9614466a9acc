use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::totalization::{totalization, Totalization};
use crate::error::{Error, Result};
use crate::externalize::{externalize, nat_transformations, Indexed, IndexedCategory, Transformations};
use crate::fincat::{FinFunctor, FinSetBase, NatTrans, SetMap};
use crate::internal::InternalCategory;

/// `Nat(Ext X, F) ≅ ∫_n F(X_n)^{Δ^n}` on objects and morphisms, with both directions tabulated.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct YonedaBijection {
    pub probe: usize,
    pub truncation: usize,
    /// Natural family `i` goes to wedge `forward_objects[i]`.
    pub forward_objects: Vec<Option<usize>>,
    pub backward_objects: Vec<Option<usize>>,
    pub forward_morphisms: Vec<Option<usize>>,
    pub backward_morphisms: Vec<Option<usize>>,
}

fn round_trip(there: &[Option<usize>], back: &[Option<usize>]) -> bool {
    there.len() == back.len()
        && there
            .iter()
            .enumerate()
            .all(|(i, t)| t.and_then(|t| back.get(t).copied().flatten()) == Some(i))
}

impl YonedaBijection {
    /// Both composites are identities, element by element.
    pub fn round_trips(&self) -> bool {
        round_trip(&self.forward_objects, &self.backward_objects)
            && round_trip(&self.backward_objects, &self.forward_objects)
            && round_trip(&self.forward_morphisms, &self.backward_morphisms)
            && round_trip(&self.backward_morphisms, &self.forward_morphisms)
    }
}

fn label_index(labels: &[Vec<usize>]) -> HashMap<&[usize], usize> {
    labels.iter().enumerate().map(|(i, l)| (l.as_slice(), i)).collect()
}

/// The cells `α_1(x)` at the points of a level, glued into one cell of `F(X_n)`.
fn glue_points<F>(
    f: &F,
    size: usize,
    from: &HashMap<&[usize], usize>,
    image: impl Fn(usize) -> usize,
    labels: &[Vec<usize>],
    objects: bool,
) -> Result<Vec<usize>>
where
    F: Indexed<Obj = Vec<usize>, Mor = Vec<usize>>,
{
    let parts: Vec<Vec<usize>> = (0..size).map(|x| labels[image(from[[x].as_slice()])].clone()).collect();
    let glued = if objects { f.glue_objects(&parts) } else { f.glue_morphisms(&parts) };
    glued.ok_or_else(|| Error::Unrepresentable("the indexed category does not glue along points".into()))
}

/// The family `a ↦ F(a)(φ)` on the probe, in label indices of the tabulation of `F`.
fn restrict_along<F>(f: &F, labels: &[Vec<usize>], size: usize, target: &HashMap<&[usize], usize>, cell: &[usize], objects: bool) -> Result<Vec<usize>>
where
    F: Indexed<Obj = Vec<usize>, Mor = Vec<usize>>,
{
    labels
        .iter()
        .map(|a| {
            let u = SetMap::new(size, a.clone())?;
            let image = if objects {
                f.restrict_object(&u, &cell.to_vec())?
            } else {
                f.restrict_morphism(&u, &cell.to_vec())?
            };
            target
                .get(image.as_slice())
                .copied()
                .ok_or_else(|| Error::ProbeTooSmall("a restricted cell is not tabulated".into()))
        })
        .collect()
}

/// The map `α ↦ (α_{X_n}(1_{X_n}))_n` and its inverse `φ ↦ (a ↦ F(a)(φ))`.
///
/// `α_{X_n}(1_{X_n})` is recovered from the points of `X_n` by naturality, so the
/// probe must contain the singleton.
pub fn yoneda_bijection<F>(
    f: &F,
    x: &InternalCategory,
    probe: usize,
    k: usize,
    base: &FinSetBase,
) -> Result<(YonedaBijection, Transformations, Totalization<Vec<usize>, Vec<usize>>)>
where
    F: Indexed<Obj = Vec<usize>, Mor = Vec<usize>>,
{
    if probe == 0 {
        return Err(Error::ProbeTooSmall("the probe must contain a point".into()));
    }
    let ext = externalize(x, probe, base)?;
    let tab = IndexedCategory::tabulate(f, probe)?;
    let nat = nat_transformations(&ext, &tab, base.bound)?;
    let tot = totalization(f, x, k, base)?;
    let bijection = yoneda_bijection_with(f, x, &ext, &tab, &nat, &tot)?;
    Ok((bijection, nat, tot))
}

/// As [`yoneda_bijection`], given `Ext X` and the tabulation of `F` on the same probe.
pub fn yoneda_bijection_with<F>(
    f: &F,
    x: &InternalCategory,
    ext: &IndexedCategory,
    tab: &IndexedCategory,
    nat: &Transformations,
    tot: &Totalization<Vec<usize>, Vec<usize>>,
) -> Result<YonedaBijection>
where
    F: Indexed<Obj = Vec<usize>, Mor = Vec<usize>>,
{
    let probe = ext.object_labels.len() - 1;
    if probe == 0 {
        return Err(Error::ProbeTooSmall("the probe must contain a point".into()));
    }
    let (n0, n1) = (x.objects(), x.arrows());
    let (points0, points1) = (label_index(&ext.object_labels[1]), label_index(&ext.morphism_labels[1]));

    let forward_objects = nat
        .families
        .iter()
        .map(|alpha| {
            let a = &alpha[1];
            let phi0 = glue_points(f, n0, &points0, |i| a.objects[i], &tab.object_labels[1], true)?;
            let phi1 = glue_points(f, n1, &points1, |i| a.morphisms[i], &tab.morphism_labels[1], false)?;
            Ok(tot.find_object(&phi0, &phi1))
        })
        .collect::<Result<Vec<_>>>()?;

    let targets: Vec<(HashMap<&[usize], usize>, HashMap<&[usize], usize>)> = (0..=probe)
        .map(|p| (label_index(&tab.object_labels[p]), label_index(&tab.morphism_labels[p])))
        .collect();
    let backward_objects = tot
        .objects
        .iter()
        .map(|(phi0, phi1)| {
            let family = (0..=probe)
                .map(|p| {
                    Ok(FinFunctor {
                        objects: restrict_along(f, &ext.object_labels[p], n0, &targets[p].0, phi0, true)?,
                        morphisms: restrict_along(f, &ext.morphism_labels[p], n1, &targets[p].1, phi1, false)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(nat.family_index(&family))
        })
        .collect::<Result<Vec<_>>>()?;

    let forward_morphisms = nat
        .modifications
        .iter()
        .map(|(i, j, m)| {
            let c = &m[1].components;
            let eta = glue_points(f, n0, &points0, |o| c[o], &tab.morphism_labels[1], false)?;
            Ok(match (forward_objects[*i], forward_objects[*j]) {
                (Some(a), Some(b)) => tot.find_morphism(a, b, &eta),
                _ => None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let backward_morphisms = tot
        .morphisms
        .iter()
        .map(|(a, b, eta)| {
            let components = (0..=probe)
                .map(|p| {
                    Ok(NatTrans {
                        components: restrict_along(f, &ext.object_labels[p], n0, &targets[p].1, eta, false)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(match (backward_objects[*a], backward_objects[*b]) {
                (Some(i), Some(j)) => nat.modification_index(i, j, &components),
                _ => None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(YonedaBijection {
        probe,
        truncation: tot.truncation,
        forward_objects,
        backward_objects,
        forward_morphisms,
        backward_morphisms,
    })
}
