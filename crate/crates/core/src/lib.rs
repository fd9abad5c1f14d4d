//! Homological invariants of finite groups and untwisted discrete torsion.
//!
//! The crate computes, for a finite group `G` given by permutation
//! generators or a named family:
//!
//! * integral homology `H_n(G, Z)` from the normalized bar complex,
//! * the quotient `H_{0n}(G, Z)` by alternating sums over commuting tuples,
//!   and the abelian-subgroup quotient `Sha_n(G)`,
//! * explicit cocycles with `Z/m` coefficients, the untwisted subgroup
//!   `Br^n(G, Z/m)`, and exact Dijkgraaf-Witten partition functions on the
//!   `n`-torus.
//!
//! All linear algebra is exact: Smith normal form over `Z` with
//! arbitrary-precision entries, and Howell-style echelon forms over `Z/m`.

pub mod bar;
pub mod budget;
pub mod error;
pub mod group;
pub mod oracle;
pub mod par;
pub mod torsion;
pub mod tuples;
pub mod zmatrix;

pub use bar::{boundary_matrix, h0n, homology, sha_n, z0n_generators, BarBasis, ChainVector, Quotient, Z0nMode};
pub use budget::{Budgets, Config};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupSpec, Subgroup};
pub use par::Exec;
pub use torsion::{br_n_mod_m, cohomology_mod_m, dw_partition, dw_weight, CochainVector, CohomologyClassSet};
pub use tuples::{commuting_tuple_count, orbit_representatives, TupleOrbit};
pub use zmatrix::{AbelianInvariants, Int, IntMatrix, SmithForm};
