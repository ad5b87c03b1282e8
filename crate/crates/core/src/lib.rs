//! Distance-r dominating sets on sparse graphs.
//!
//! The sequential pipeline picks a linear order of the vertices, computes
//! weakly reachable sets ([`ordering`]), and derives from them a sparse
//! neighbourhood cover ([`cover`]), a dominating set whose size is within a
//! certified factor of the optimum ([`domset`]), and connected dominating
//! sets ([`connect`]). The same results are computed by message passing on a
//! synchronous round simulator ([`sim`], [`protocols`]) and checked against
//! exhaustive search on small graphs ([`oracle`]).
//!
//! ```
//! use bedom::generate::{generate, Family};
//! use bedom::domset::domset;
//!
//! let g = generate(&Family::Grid { rows: 4, cols: 4 }, 0).unwrap();
//! let (_, order) = g.degeneracy_order();
//! let d = domset(&g, &order, 1);
//! assert!(g.is_dominating(&d.dominators, 1));
//! ```

pub mod battery;
pub mod cli;
pub mod connect;
pub mod cover;
pub mod domset;
pub mod error;
pub mod export;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod ordering;
pub mod protocols;
pub mod sim;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use ordering::LinearOrder;
