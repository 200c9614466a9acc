use super::simplicial::{SimplicialMap, TruncSSet};
use crate::error::{Error, Result};
use crate::fincat::{connected_order, diagram_limit, FinSetBase, Limit, SetDiagram};

/// The diagram `El(W) -> Δ^op -> Set` whose limit is `{W, X}`.
///
/// Node `offsets[n] + w` carries `X_n` for the simplex `w ∈ W_n`; arrows are the
/// elementary faces and degeneracies of `W`.
pub struct ElementsDiagram<'a> {
    pub diagram: SetDiagram<'a>,
    pub offsets: Vec<usize>,
}

impl ElementsDiagram<'_> {
    pub fn node(&self, n: usize, w: usize) -> usize {
        self.offsets[n] + w
    }
}

/// Brings `x` up to the truncation of `w`, or fails if that is not determined.
pub fn reach<'x>(x: &'x TruncSSet, k: usize, base: &FinSetBase) -> Result<std::borrow::Cow<'x, TruncSSet>> {
    if x.truncation() >= k {
        return Ok(std::borrow::Cow::Borrowed(x));
    }
    x.extend_to(k, base).map(std::borrow::Cow::Owned).map_err(|e| match e {
        Error::Unrepresentable(_) => Error::MissingLimit(format!(
            "weight reaches level {k} but the object stops at {}",
            x.truncation()
        )),
        other => other,
    })
}

/// `x` must already reach the truncation of `w`.
pub fn elements_diagram<'a>(w: &TruncSSet, x: &'a TruncSSet) -> ElementsDiagram<'a> {
    let k = w.truncation();
    assert!(x.truncation() >= k, "object does not reach the weight");
    let mut diagram = SetDiagram::new();
    let mut offsets = Vec::with_capacity(k + 1);
    for n in 0..=k {
        offsets.push(diagram.sizes.len());
        for _ in 0..w.level(n) {
            diagram.add_node(x.level(n));
        }
    }
    for n in 0..=k {
        if n > 0 {
            for i in 0..=n {
                let m = diagram.add_map(x.face(n, i));
                for s in 0..w.level(n) {
                    diagram.add_arrow(offsets[n] + s, offsets[n - 1] + w.face(n, i)[s], m);
                }
            }
        }
        if n < k {
            for i in 0..=n {
                let m = diagram.add_map(x.degeneracy(n, i));
                for s in 0..w.level(n) {
                    diagram.add_arrow(offsets[n] + s, offsets[n + 1] + w.degeneracy(n, i)[s], m);
                }
            }
        }
    }
    ElementsDiagram { diagram, offsets }
}

/// All simplicial maps `W -> X`, through the limit of the elements diagram.
#[derive(Clone, Debug)]
pub struct HomSet {
    pub limit: Limit,
    pub offsets: Vec<usize>,
    pub source_levels: Vec<usize>,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.limit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.limit.is_empty()
    }

    /// The image of `w ∈ W_n` under map `e`.
    pub fn value(&self, e: usize, n: usize, w: usize) -> usize {
        self.limit.value(e, self.offsets[n] + w)
    }

    pub fn map(&self, e: usize) -> SimplicialMap {
        SimplicialMap {
            levels: self
                .source_levels
                .iter()
                .enumerate()
                .map(|(n, &l)| (0..l).map(|w| self.value(e, n, w)).collect())
                .collect(),
        }
    }

    pub fn maps(&self) -> impl Iterator<Item = SimplicialMap> + '_ {
        (0..self.len()).map(|e| self.map(e))
    }

    /// Looks up a map from its values; only the values on free simplices are read.
    pub fn find_with(&self, mut value: impl FnMut(usize, usize) -> usize) -> Option<usize> {
        self.limit.find_by(|v| {
            let n = self.offsets.partition_point(|&o| o <= v) - 1;
            value(n, v - self.offsets[n])
        })
    }

    /// The index of a given map.
    pub fn find(&self, f: &SimplicialMap) -> Option<usize> {
        let e = self.find_with(|n, w| f.levels[n][w])?;
        (self.map(e) == *f).then_some(e)
    }
}

/// `Hom(W, X)` for truncated simplicial sets; `X` is extended if it stops below `W`.
pub fn sset_hom(w: &TruncSSet, x: &TruncSSet, base: &FinSetBase) -> Result<HomSet> {
    let x = reach(x, w.truncation(), base)?;
    let el = elements_diagram(w, &x);
    // top simplices first, each sharing as many faces as possible with earlier ones
    let k = w.truncation();
    let top: Vec<usize> = (0..w.level(k)).map(|s| el.node(k, s)).collect();
    let order = connected_order(&el.diagram, &top);
    let limit = diagram_limit(&el.diagram, base, "simplicial hom", Some(&order))?;
    Ok(HomSet {
        limit,
        offsets: el.offsets,
        source_levels: w.levels().to_vec(),
    })
}
