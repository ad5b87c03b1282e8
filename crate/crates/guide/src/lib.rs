//! The bedom guide. Each module holds one chapter of `book/src`, so every
//! code block in the book runs as a doctest of this crate.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/orders.md")]
pub mod orders {}
#[doc = include_str!("../../../book/src/covers.md")]
pub mod covers {}
#[doc = include_str!("../../../book/src/dominating-sets.md")]
pub mod dominating_sets {}
#[doc = include_str!("../../../book/src/connecting.md")]
pub mod connecting {}
#[doc = include_str!("../../../book/src/simulator.md")]
pub mod simulator {}
#[doc = include_str!("../../../book/src/protocols.md")]
pub mod protocols {}
#[doc = include_str!("../../../book/src/checking.md")]
pub mod checking {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
