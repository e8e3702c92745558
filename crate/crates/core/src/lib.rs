//! `(α, β)`-regular subgroups of Cayley sum graphs.
//!
//! A Cayley sum graph `CayS(G, S)` joins `x` and `y` when `xy ∈ S`, for a normal
//! square-free connection set `S`. A subgroup `H` is `(α, β)`-regular when every
//! vertex of `H` has `α` neighbours in `H` and every other vertex has `β`.
//!
//! - [`group`], [`subgroup`], [`elements`]: finite groups (abelian, dihedral, tables).
//! - [`cayley`]: graphs, regularity checks, perfect-code conditions, DOT export.
//! - [`abelian`], [`dihedral`]: closed-form feasible pairs and explicit witnesses.
//! - [`oracle`]: brute-force enumeration used as ground truth.
//! - [`sweep`], [`discrepancy`]: theory-versus-oracle comparisons.

pub mod abelian;
pub mod cayley;
pub mod dihedral;
pub mod discrepancy;
pub mod elements;
pub mod error;
pub mod exec;
pub mod group;
pub mod oracle;
pub mod subgroup;
pub mod sweep;

pub use elements::ElementSet;
pub use error::{Error, Result};
pub use exec::Execution;
pub use group::{Group, GroupSpec};
pub use subgroup::{DihedralFamily, Subgroup};
