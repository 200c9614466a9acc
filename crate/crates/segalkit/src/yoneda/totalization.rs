use std::collections::HashMap;

use crate::delta::{enumerate_monotone, MonotoneMap};
use crate::error::{Error, Result};
use crate::externalize::Indexed;
use crate::fincat::{Arrow, FinCat, FinSetBase, SetMap};
use crate::internal::InternalCategory;
use crate::sset::{reach, TruncSSet};

/// The end of `n ↦ Fun([n], F(X_n))` over `Δ≤k`.
///
/// An object is a wedge `(φ_n)`; it is stored through `φ_0 ∈ F(X_0)` and the edge
/// `φ_1 ∈ F(X_1)`, from which every `φ_n` is recovered. A morphism is stored
/// through its component `η_0` in `F(X_0)`.
#[derive(Clone, Debug)]
pub struct Totalization<O, M> {
    pub category: FinCat,
    pub truncation: usize,
    pub objects: Vec<(O, M)>,
    pub morphisms: Vec<(usize, usize, M)>,
}

impl<O: PartialEq, M: PartialEq> Totalization<O, M> {
    pub fn find_object(&self, phi0: &O, phi1: &M) -> Option<usize> {
        self.objects.iter().position(|(a, f)| a == phi0 && f == phi1)
    }

    pub fn find_morphism(&self, i: usize, j: usize, eta: &M) -> Option<usize> {
        self.morphisms
            .iter()
            .position(|(a, b, e)| *a == i && *b == j && e == eta)
    }
}

/// `X(θ)` for every `θ: [m] -> [n]` with `m, n ≤ k`.
struct Operators {
    tables: HashMap<MonotoneMap, SetMap>,
}

impl Operators {
    fn new(x: &TruncSSet, k: usize) -> Self {
        let mut tables = HashMap::new();
        for n in 0..=k {
            for m in 0..=k {
                for theta in enumerate_monotone(m, n) {
                    let t = x.action_table(&theta);
                    tables.insert(theta, t);
                }
            }
        }
        Self { tables }
    }

    fn get(&self, theta: &MonotoneMap) -> &SetMap {
        &self.tables[theta]
    }
}

/// The functors `φ_n: [n] -> F(X_n)` of a wedge, as the morphisms `φ_n(a ≤ b)`.
struct Wedge<M> {
    edges: Vec<HashMap<(usize, usize), M>>,
}

fn wedge<F: Indexed>(f: &F, ops: &Operators, k: usize, phi1: &F::Mor) -> Result<Wedge<F::Mor>> {
    let edges = (0..=k)
        .map(|n| {
            let mut level = HashMap::new();
            for a in 0..=n {
                for b in a..=n {
                    let e = MonotoneMap::edge(n, a, b);
                    level.insert((a, b), f.restrict_morphism(ops.get(&e), phi1)?);
                }
            }
            Ok(level)
        })
        .collect::<Result<_>>()?;
    Ok(Wedge { edges })
}

/// Functoriality of each `φ_n` and the wedge equations `F(X θ) ∘ φ_m = φ_n ∘ θ`.
fn is_wedge<F: Indexed>(f: &F, x: &TruncSSet, ops: &Operators, k: usize, w: &Wedge<F::Mor>) -> Result<bool> {
    for n in 0..=k {
        let p = x.level(n);
        let e = &w.edges[n];
        for a in 0..=n {
            if e[&(a, a)] != f.identity(p, &f.source(p, &e[&(a, a)])) {
                return Ok(false);
            }
            for b in a..=n {
                for c in b..=n {
                    if f.compose(p, &e[&(a, b)], &e[&(b, c)]).as_ref() != Some(&e[&(a, c)]) {
                        return Ok(false);
                    }
                }
            }
        }
        for m in 0..=k {
            for theta in enumerate_monotone(m, n) {
                let u = ops.get(&theta);
                for a in 0..=m {
                    for b in a..=m {
                        let moved = f.restrict_morphism(u, &w.edges[m][&(a, b)])?;
                        if moved != e[&(theta.apply(a), theta.apply(b))] {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Naturality of `η_n(a) = F(X v_a)(η_0)` between two wedges, at every level.
fn is_modification<F: Indexed>(
    f: &F,
    x: &TruncSSet,
    ops: &Operators,
    k: usize,
    from: &Wedge<F::Mor>,
    to: &Wedge<F::Mor>,
    eta0: &F::Mor,
) -> Result<bool> {
    for n in 0..=k {
        let p = x.level(n);
        let eta: Vec<F::Mor> = (0..=n)
            .map(|a| f.restrict_morphism(ops.get(&MonotoneMap::vertex(n, a)), eta0))
            .collect::<Result<_>>()?;
        for a in 0..=n {
            for b in a..=n {
                let left = f.compose(p, &from.edges[n][&(a, b)], &eta[b]);
                let right = f.compose(p, &eta[a], &to.edges[n][&(a, b)]);
                if left.is_none() || left != right {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `∫_{n ≤ k} F(X_n)^{Δ^n}`, an equalizer inside `∏_n Fun([n], F(X_n))`.
///
/// Candidates for `φ_1` range over `F(X_1)(F(d_1)φ_0, F(d_0)φ_0)`; every wedge
/// equation up to `k` is then checked.
pub fn totalization<F: Indexed>(
    f: &F,
    x: &InternalCategory,
    k: usize,
    base: &FinSetBase,
) -> Result<Totalization<F::Obj, F::Mor>> {
    let k = k.max(1);
    let xs = reach(x.sset(), k, base)?;
    let xs = xs.truncate(k);
    let ops = Operators::new(&xs, k);
    let (p0, p1) = (xs.level(0), xs.level(1));
    let s0 = ops.get(&MonotoneMap::degeneracy(0, 0));
    let (d1, d0) = (ops.get(&MonotoneMap::vertex(1, 0)), ops.get(&MonotoneMap::vertex(1, 1)));
    let mut objects = Vec::new();
    let mut wedges = Vec::new();
    for phi0 in f.objects(p0)? {
        let (a, b) = (f.restrict_object(d1, &phi0)?, f.restrict_object(d0, &phi0)?);
        let id = f.identity(p0, &phi0);
        for phi1 in f.hom(p1, &a, &b)? {
            if f.restrict_morphism(s0, &phi1)? != id {
                continue;
            }
            let w = wedge(f, &ops, k, &phi1)?;
            if is_wedge(f, &xs, &ops, k, &w)? {
                base.check("totalization objects", objects.len() + 1)?;
                objects.push((phi0.clone(), phi1));
                wedges.push(w);
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut index: HashMap<(usize, usize, F::Mor), usize> = HashMap::new();
    for (i, (a, _)) in objects.iter().enumerate() {
        for (j, (b, _)) in objects.iter().enumerate() {
            for eta in f.hom(p0, a, b)? {
                if is_modification(f, &xs, &ops, k, &wedges[i], &wedges[j], &eta)? {
                    base.check("totalization morphisms", morphisms.len() + 1)?;
                    index.insert((i, j, eta.clone()), morphisms.len());
                    morphisms.push((i, j, eta));
                }
            }
        }
    }
    let identities = objects
        .iter()
        .enumerate()
        .map(|(i, (a, _))| {
            index
                .get(&(i, i, f.identity(p0, a)))
                .copied()
                .ok_or_else(|| Error::AxiomViolation("identity of a wedge is not a modification".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
    for (m, (i, _, _)) in morphisms.iter().enumerate() {
        outgoing[*i].push(m);
    }
    let mut table = Vec::new();
    for (m, (i, j, eta)) in morphisms.iter().enumerate() {
        for &n in &outgoing[*j] {
            let (_, l, theta) = &morphisms[n];
            let composite = f
                .compose(p0, eta, theta)
                .and_then(|c| index.get(&(*i, *l, c)).copied())
                .ok_or_else(|| Error::AxiomViolation("modifications do not compose".into()))?;
            table.push((m, n, composite));
        }
    }
    let names = (0..objects.len()).map(|i| format!("w{i}")).collect();
    let arrows = morphisms
        .iter()
        .enumerate()
        .map(|(m, (i, j, _))| Arrow::new(format!("eta{m}"), *i, *j))
        .collect();
    let category = FinCat::from_parts(names, arrows, identities, table)?;
    Ok(Totalization {
        category,
        truncation: k,
        objects,
        morphisms,
    })
}
