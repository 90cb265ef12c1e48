//! Exact-arithmetic lattice structure on order complexes of finite lattices.
//!
//! The geometric realization of the order complex of a finite lattice `L`
//! carries a lattice structure of its own: its points are the `[0,1]`-valued
//! maps on `L` whose positive level sets are principal ideals, ordered
//! pointwise. This crate realizes that structure with exact rational
//! arithmetic, together with the surrounding constructions:
//!
//! - finite posets and lattices with full meet/join tables, identity
//!   checking, diamond/pentagon sublattice search, breadth ([`poset`],
//!   [`lattice`], [`presets`]);
//! - order-complex points, their meet/join, chain forms, sampling, breadth
//!   families and chain extraction ([`delta`]);
//! - closure-system presentations, the cube retraction, and thickened cubes
//!   ([`closure`], [`thicken`]);
//! - subcomplexes cut out by bounded pairs ([`pairs`]);
//! - interval-constrained pair lattices over computable base lattices and
//!   their pentagon witnesses ([`edmondson`], [`clat`]);
//! - stitching posets along a shared chain ([`stitch`]);
//! - product and functorial maps of complexes ([`funct`]);
//! - the metric lattice of lattice-valued step functions on `[0,1]` with a
//!   cost-weighted disagreement distance and its unboundedness witnesses
//!   ([`gamma`]);
//! - text/JSON formats, DOT and OFF exports, and samples-based check suites
//!   ([`io`], [`export`], [`checks`]).
//!
//! Everything numeric is a `BigRational`; there is no floating point on any
//! value-carrying path.

pub mod checks;
pub mod clat;
pub mod closure;
pub mod delta;
pub mod edmondson;
pub mod export;
pub mod funct;
pub mod gamma;
pub mod generate;
pub mod io;
pub mod lattice;
pub mod pairs;
pub mod poset;
pub mod presets;
pub mod rat;
pub mod stitch;
pub mod thicken;

pub use delta::{ChainForm, DeltaError, DeltaPoint};
pub use lattice::{ClassificationReport, Lattice, LatticeError};
pub use poset::{ElemId, Poset, PosetError, PosetMap, ProductPoset};
pub use rat::Rat;
