//! Explicit cocycles mod `m`, the untwisted subgroup `Br^n`, Ext bookkeeping
//! and Dijkgraaf-Witten torus partition functions.

mod classes;
mod cochain;
mod dw;
mod ext;

pub use classes::{br_n_mod_m, cohomology_mod_m, CohomologyClassSet};
pub use cochain::{coboundary, is_cocycle, CochainVector};
pub use dw::{dw_partition, dw_weight, omega_regular_elements, orbifold_partition, phase, Partition, PhaseHistogram};
pub use ext::{ext_invariants, homology_exponent, subtract_ext};
