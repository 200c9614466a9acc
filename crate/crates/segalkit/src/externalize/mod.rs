//! Externalization of internal categories to categories indexed by finite sets.

mod indexed;
mod transformations;

pub use indexed::{externalize, probe_maps, Externalization, Indexed, IndexedCategory};
pub use transformations::{
    ext_on_functor, fully_faithful_at, fully_faithful_check, fully_faithful_with, nat_transformations, FullyFaithful, Transformations,
};

#[cfg(test)]
mod tests;
