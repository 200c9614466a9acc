//! Finite, exhaustively checked models of internal categories.
//!
//! Simplicial objects in a base of finite sets are tested for the Segal,
//! completeness and groupoid conditions through weighted limits. Internal
//! categories are externalized to indexed categories, and exponentials,
//! tensors, cotensors and cores are computed together with the adjunctions
//! relating them. Every universal property is backed by a brute-force
//! [`oracle`].

pub mod catalog;
pub mod constructions;
pub mod delta;
pub mod error;
pub mod externalize;
pub mod fincat;
pub mod internal;
pub mod oracle;
pub mod schema;
pub mod sset;
pub mod yoneda;

pub use error::{Error, Result};
