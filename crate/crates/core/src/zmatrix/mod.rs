//! Exact linear algebra over `Z` and `Z/m`.

mod engine;
mod int;
mod invariants;
mod kernel;
mod matrix;
mod modm;
mod ring;
mod snf;

pub use engine::Transforms;
pub use int::{abs_saturating, gcd, int, rem_u64, to_i64, to_u64, xgcd, Int};
pub use invariants::{quotient_invariants, AbelianInvariants};
pub use kernel::{kernel_basis, kernel_coordinates, KernelMap};
pub use matrix::IntMatrix;
pub use modm::{module_quotient_mod_m, nullspace_mod_m, ModQuotient, ModSpan};
pub use snf::{elementary_divisors, smith_normal_form, smith_normal_form_with, SmithForm};


