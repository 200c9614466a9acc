//! The Segal–Yoneda totalization and the left Kan extension description of `Ext`.

mod bijection;
mod kan;
mod totalization;
#[cfg(test)]
mod tests;

pub use bijection::{yoneda_bijection, yoneda_bijection_with, YonedaBijection};
pub use kan::{comma_colimit, left_kan_check, KanComparison};
pub use totalization::{totalization, Totalization};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::externalize::{externalize, fully_faithful_with, nat_transformations, Externalization};
use crate::fincat::FinSetBase;
use crate::internal::InternalCategory;

/// Counts of functors and transformations `X -> Y` computed three ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomAgreement {
    pub internal_functors: usize,
    pub internal_transformations: usize,
    pub natural_families: usize,
    pub modifications: usize,
    pub wedges: usize,
    pub wedge_morphisms: usize,
    /// The comparison maps of the fully faithfulness check are bijections.
    pub bijective: bool,
    /// The Yoneda maps between natural families and wedges are mutually inverse.
    pub round_trips: bool,
}

impl HomAgreement {
    pub fn agrees(&self) -> bool {
        self.bijective
            && self.round_trips
            && self.internal_functors == self.natural_families
            && self.natural_families == self.wedges
            && self.internal_transformations == self.modifications
            && self.modifications == self.wedge_morphisms
    }
}

pub fn hom_agreement(x: &InternalCategory, y: &InternalCategory, probe: usize, k: usize, base: &FinSetBase) -> Result<HomAgreement> {
    let ext_x = externalize(x, probe, base)?;
    let ext_y = externalize(y, probe, base)?;
    let nat = nat_transformations(&ext_x, &ext_y, base.bound)?;
    let ff = fully_faithful_with(x, y, &ext_x, &ext_y, &nat, base)?;
    let f = Externalization::new(y, base);
    let tot = totalization(&f, x, k, base)?;
    let yoneda = yoneda_bijection_with(&f, x, &ext_x, &ext_y, &nat, &tot)?;
    Ok(HomAgreement {
        internal_functors: ff.internal_functors,
        internal_transformations: ff.internal_transformations,
        natural_families: ff.natural_families,
        modifications: ff.modifications,
        wedges: tot.category.object_count(),
        wedge_morphisms: tot.category.arrow_count(),
        bijective: ff.holds(),
        round_trips: yoneda.round_trips(),
    })
}
