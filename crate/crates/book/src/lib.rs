//! The guide in `book/`, compiled so that its examples run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/fincat.md")]
pub mod fincat {}
#[doc = include_str!("../../../book/src/sset.md")]
pub mod sset {}
#[doc = include_str!("../../../book/src/internal.md")]
pub mod internal {}
#[doc = include_str!("../../../book/src/externalize.md")]
pub mod externalize {}
#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}
#[doc = include_str!("../../../book/src/yoneda.md")]
pub mod yoneda {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
