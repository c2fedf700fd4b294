//! The guide's chapters, compiled so that `cargo test` runs every listing.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/relations.md")]
pub mod relations {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/metric.md")]
pub mod metric {}
#[doc = include_str!("../../../book/src/surgery.md")]
pub mod surgery {}
#[doc = include_str!("../../../book/src/operations.md")]
pub mod operations {}
#[doc = include_str!("../../../book/src/functions.md")]
pub mod functions {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
