//! Powers, tensors, cotensors, exponentials and cores of internal categories.

mod adjunction;
mod power;
#[cfg(test)]
mod tests;

pub use adjunction::{constant_adjunction, curry_is_natural, tensor_adjunction, HomBijection, TensorAdjunction};
pub use power::{copower, cotensor, determining_truncation, exponential, exponential_at, power, tensor, Power};

use serde::{Deserialize, Serialize};

use crate::delta::MonotoneMap;
use crate::error::Result;
use crate::externalize::externalize;
use crate::fincat::{enumerate_functors, FinCat, FinSetBase};
use crate::internal::InternalCategory;
use crate::sset::{SimplicialMap, TruncSSet};

/// The simplices all of whose edges are invertible, with the inclusion.
pub fn core(x: &InternalCategory, base: &FinSetBase) -> Result<(InternalCategory, SimplicialMap)> {
    let s = x.sset();
    let c = x.underlying();
    let (sub, inclusion) = s.subobject(|n, w| {
        (0..n).all(|a| (a + 1..=n).all(|b| c.is_iso(s.act(&MonotoneMap::edge(n, a, b), w))))
    })?;
    let sub = sub.with_extension(s.extension());
    Ok((InternalCategory::new(sub, base)?, inclusion))
}

/// `Ext(Δ^1 ⊗ c(1))` and `Δ^1 ⊗ Ext(c(1))` evaluated at a finite set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Nonpreservation {
    pub size: usize,
    pub externalized: FinCat,
    pub tensored: FinCat,
    /// Whether the externalization is `[1]^size`.
    pub is_power_of_arrow: bool,
    pub non_identity_arrows: usize,
    /// Morphisms from the family constant at vertex 0 to the family constant at vertex 1.
    pub arrows_between_constants: usize,
}

impl Nonpreservation {
    pub fn differ(&self) -> bool {
        self.externalized.object_count() != self.tensored.object_count()
    }
}

fn isomorphic(a: &FinCat, b: &FinCat, cap: usize) -> Result<bool> {
    if a.object_count() != b.object_count() || a.arrow_count() != b.arrow_count() {
        return Ok(false);
    }
    Ok(enumerate_functors(a, b, cap)?.iter().any(|f| f.is_bijective(b)))
}

pub fn nonpreservation_demo(size: usize, base: &FinSetBase) -> Result<Nonpreservation> {
    let k = 2;
    let t = tensor(&TruncSSet::standard_simplex(1, k), &TruncSSet::constant(1, k), base)?;
    let x = InternalCategory::new(t, base)?;
    let ext = externalize(&x, size, base)?;
    let externalized = ext.value(size).clone();
    let point = InternalCategory::constant(1, base)?;
    let ext_point = externalize(&point, size, base)?;
    // Δ^1 ⊗ C is [1] × C
    let tensored = FinCat::chain(1).product(ext_point.value(size));
    let power = (0..size).fold(FinCat::terminal(), |acc, _| acc.product(&FinCat::chain(1)));
    let constant = |v: usize| ext.object_labels[size].iter().position(|l| l.iter().all(|&o| o == v));
    let arrows_between_constants = match (constant(0), constant(1)) {
        (Some(a), Some(b)) => externalized.hom(a, b).len(),
        _ => 0,
    };
    Ok(Nonpreservation {
        size,
        non_identity_arrows: externalized.arrow_count() - externalized.object_count(),
        arrows_between_constants,
        is_power_of_arrow: isomorphic(&externalized, &power, base.bound)?,
        externalized,
        tensored,
    })
}
