use crate::delta::{enumerate_monotone, MonotoneMap};
use crate::error::{Error, Result};
use crate::fincat::{
    category_of_elements, diagram_limit, finite_limit, FinSetBase, LimitCone, SetDiagram, SetFunctor, SetMap,
};
use crate::oracle::{verify_limit, Certificate};
use crate::sset::{elements_diagram, reach, sset_hom, HomSet, SimplicialMap, TruncSSet};

/// A simplicial object in the base of finite sets.
pub type SimplicialObject = TruncSSet;
/// A finite weight `Δ≤k^op -> FinSet`.
pub type Weight = TruncSSet;
/// `{W, X}` as the set of cones over the elements diagram of `W`.
pub type WeightedLimit = HomSet;

/// `{W, X}`, computed as a conical limit over the generating arrows of `El(W)`.
pub fn weighted_limit(w: &Weight, x: &SimplicialObject, base: &FinSetBase) -> Result<WeightedLimit> {
    sset_hom(w, x, base)
}

/// Checks the limit cone of `{W, X}` with the independent cone enumeration.
pub fn certify_weighted_limit(
    w: &Weight,
    x: &SimplicialObject,
    limit: &WeightedLimit,
    base: &FinSetBase,
    budget: usize,
) -> Result<Certificate> {
    let x = reach(x, w.truncation(), base)?;
    let el = elements_diagram(w, &x);
    let legs: Vec<SetMap> = (0..el.diagram.sizes.len())
        .map(|v| limit.limit.leg(v, el.diagram.sizes[v]))
        .collect();
    verify_limit(&legs, &el.diagram, budget)
}

/// `{W, X}` through the full category of elements `El(W)^op -> Δ≤k^op -> Set`.
pub fn weighted_limit_via_elements(
    w: &Weight,
    x: &SimplicialObject,
    base: &FinSetBase,
    budget: usize,
) -> Result<LimitCone> {
    let x = reach(x, w.truncation(), base)?;
    let el = category_of_elements(&w.as_presheaf())?;
    let shape = el.category.opposite();
    let d = crate::delta::truncated(w.truncation());
    let maps = (0..shape.arrow_count())
        .map(|f| x.action_table(&d.maps()[el.projection.morphisms[f]]))
        .collect();
    let functor = SetFunctor {
        shape,
        sets: el.elements.iter().map(|&(n, _)| x.level(n)).collect(),
        maps,
    };
    finite_limit(&functor, base, budget)
}

/// The map `{W, X} -> {W', X}` induced by `u: W' -> W`.
pub fn restrict_limit(u: &SimplicialMap, from: &WeightedLimit, to: &WeightedLimit) -> Result<SetMap> {
    let table = (0..from.len())
        .map(|e| {
            to.find_with(|n, w| from.value(e, n, u.apply(n, w)))
                .ok_or_else(|| Error::MissingLimit("restricted family is not a cone".into()))
        })
        .collect::<Result<_>>()?;
    Ok(SetMap {
        codomain: to.len(),
        table,
    })
}

/// The simplices of a subobject of `Δ^n`, level by level, as monotone maps.
pub(crate) fn simplices_of(n: usize, k: usize, keep: impl Fn(&MonotoneMap) -> bool) -> Vec<Vec<MonotoneMap>> {
    (0..=k)
        .map(|m| enumerate_monotone(m, n).into_iter().filter(|f| keep(f)).collect())
        .collect()
}

fn on_spine(f: &MonotoneMap) -> bool {
    f.values()[f.source()] <= f.values()[0] + 1
}

/// The map `X_n -> {W, X}` restricting along a subobject `W ⊂ Δ^n` with simplices `simplices`.
pub(crate) fn restriction_map(
    x: &TruncSSet,
    n: usize,
    simplices: &[Vec<MonotoneMap>],
    limit: &WeightedLimit,
) -> Result<SetMap> {
    let table = (0..x.level(n))
        .map(|s| {
            limit
                .find_with(|m, w| x.act(&simplices[m][w], s))
                .ok_or_else(|| Error::MissingLimit("restriction is not a cone".into()))
        })
        .collect::<Result<_>>()?;
    Ok(SetMap {
        codomain: limit.len(),
        table,
    })
}

/// The Segal maps `X_n -> {S_n, X}` for `n` up to the truncation.
pub fn segal_maps(x: &SimplicialObject, base: &FinSetBase) -> Result<Vec<SetMap>> {
    (0..=x.truncation())
        .map(|n| {
            let k = n.min(1);
            let spine = TruncSSet::spine(n, k);
            let limit = weighted_limit(&spine, x, base)?;
            restriction_map(x, n, &simplices_of(n, k, on_spine), &limit)
        })
        .collect()
}

pub fn is_segal(x: &SimplicialObject, base: &FinSetBase) -> Result<bool> {
    Ok(segal_maps(x, base)?.iter().all(SetMap::is_bijective))
}

/// `Equiv(X)` as the pullback of `X_3 -> {Zig-zag, X} <- X_1`.
#[derive(Debug)]
pub struct EquivObject {
    pub zigzag: WeightedLimit,
    /// Elements are pairs `(h, f)` with `h ∈ X_3` and `f ∈ X_1`.
    pub elements: Vec<(usize, usize)>,
    pub s0: SetMap,
    pub d12: SetMap,
}

impl EquivObject {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn on_zigzag(f: &MonotoneMap) -> bool {
    let image = f.image();
    [[0, 2], [1, 2], [1, 3]]
        .iter()
        .any(|edge| image.iter().all(|v| edge.contains(v)))
}

/// The zig-zag `0 -> 2 <- 1 -> 3` inside `Δ^3`, with its simplices.
pub fn zigzag_weight() -> (Weight, Vec<Vec<MonotoneMap>>) {
    let simplices = simplices_of(3, 1, on_zigzag);
    let (w, _) = TruncSSet::simplex_subobject(3, 1, on_zigzag).expect("zig-zag is a subobject");
    (w, simplices)
}

pub fn equiv_object(x: &SimplicialObject, base: &FinSetBase) -> Result<EquivObject> {
    let x = reach(x, 3, base)?;
    let (zz, simplices) = zigzag_weight();
    let zigzag = weighted_limit(&zz, &x, base)?;
    let from_three = restriction_map(&x, 3, &simplices, &zigzag)?;
    // f ↦ (s0 d0 f, f, s0 d1 f) through the vertex map 0,1,2,3 ↦ 1,0,1,0
    let fold = [1, 0, 1, 0];
    let folded: Vec<Vec<MonotoneMap>> = simplices
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|w| MonotoneMap::new(1, w.values().iter().map(|&v| fold[v]).collect()).expect("edge folds"))
                .collect()
        })
        .collect();
    let from_one = (0..x.level(1))
        .map(|f| {
            zigzag
                .find_with(|m, w| x.act(&folded[m][w], f))
                .ok_or_else(|| Error::MissingLimit("identities do not form a zig-zag".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut d = SetDiagram::new();
    let h = d.add_node(x.level(3));
    let f = d.add_node(x.level(1));
    let z = d.add_node(zigzag.len());
    let a = d.add_map(from_three.table.as_slice());
    let b = d.add_map(from_one.as_slice());
    d.add_arrow(h, z, a);
    d.add_arrow(f, z, b);
    let pullback = diagram_limit(&d, base, "Equiv", None)?;
    let elements: Vec<(usize, usize)> = (0..pullback.len())
        .map(|e| (pullback.value(e, h), pullback.value(e, f)))
        .collect();
    let collapse = MonotoneMap::constant(3, 0, 0);
    let s0 = (0..x.level(0))
        .map(|o| {
            let id = x.degeneracy(0, 0)[o];
            pullback
                .find(&[x.act(&collapse, o), id, from_one[id]])
                .ok_or_else(|| Error::MissingLimit("degenerate simplex is not an equivalence".into()))
        })
        .collect::<Result<_>>()?;
    Ok(EquivObject {
        s0: SetMap {
            codomain: elements.len(),
            table: s0,
        },
        d12: SetMap {
            codomain: x.level(1),
            table: elements.iter().map(|&(_, f)| f).collect(),
        },
        zigzag,
        elements,
    })
}

/// Precomposition with order reversal.
pub fn opposite(x: &SimplicialObject) -> SimplicialObject {
    x.opposite()
}
