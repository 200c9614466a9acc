//! Truncated simplicial sets, nerves and simplicial hom-sets.

mod hom;
mod nerve;
mod simplicial;

pub use hom::{elements_diagram, reach, sset_hom, ElementsDiagram, HomSet};
pub use nerve::{as_nerve, groupoid_hom, k_core, nerve, GroupoidPresentation, Nerve};
pub use simplicial::{Extension, SimplicialMap, TruncSSet, TruncSSetData};

#[cfg(test)]
mod tests;
