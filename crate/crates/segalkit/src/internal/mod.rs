//! Simplicial objects in finite sets, weighted limits, and the Segal, completeness
//! and groupoid conditions.

mod category;
mod limits;

pub use category::{internal_nerve, Check, InternalCategory, InternalHead};
#[allow(unused_imports)]
pub(crate) use limits::{restriction_map, simplices_of};
pub use limits::{
    certify_weighted_limit, equiv_object, is_segal, opposite, restrict_limit, segal_maps, weighted_limit,
    weighted_limit_via_elements, zigzag_weight, EquivObject, SimplicialObject, Weight, WeightedLimit,
};

#[cfg(test)]
mod tests;
