//! Exact construction and analysis of rainbow-colorability gadgets.
//!
//! The crate provides, at desk scale and with exact search throughout:
//!
//! - a hypergraph + coloring data model with proper/rainbow coloring
//!   predicates and an exact maximum-independent-set solver ([`hypergraph`]),
//! - generators for two families of string-based gadget hypergraphs whose
//!   edges are matrices that are nearly column-permutations ([`gadgets`]),
//! - exact colorability and chromatic number by backtracking ([`chromatic`]),
//! - the monochromatic covering number of colored subset systems, with an
//!   exhaustive oracle, extremal constructions and a constructive two-color
//!   cover ([`covering`]),
//! - layered label cover instances with planted satisfying assignments and
//!   exact rational scoring ([`labelcover`]),
//! - three label-cover-to-hypergraph reductions together with their
//!   completeness colorings and soundness decoders ([`reductions`]),
//! - text formats for all of the above ([`io`]).
//!
//! Everything is deterministic: searches are exhaustive, randomized
//! procedures are driven by explicit seeds, and all fractions are exact
//! rationals.

pub mod caps;
pub mod chromatic;
pub mod covering;
pub mod error;
pub mod gadgets;
pub mod hypergraph;
pub mod io;
pub mod labelcover;
pub mod reductions;
pub mod subsets;

pub use caps::Caps;
pub use error::{Error, Result};
pub use hypergraph::{Coloring, Edge, Hypergraph};
