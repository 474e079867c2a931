//! Exact verification toolkit for stable maps to P^1 with `n` marked points:
//! S_n-invariant divisor classes and curve pairings, exact cone duality and
//! Kodaira energies, the blown-up fiber model, binary forms under SL_2(Z),
//! and orbit point counts.

pub mod binary_forms;
pub mod cone_engine;
pub mod error;
pub mod fiber_picard;
pub mod invariant_picard;
pub mod point_counter;
pub mod rational;
pub mod terms;

pub use error::{Error, Result};
pub use rational::{Rational, RationalMatrix, RationalVector};

use cone_engine::{kodaira_energy, KodairaEnergy};
use invariant_picard::{reduce_to_b, standard_class, StandardDivisor};

/// Kodaira energy of `L` with respect to `K + B` on the full space, computed
/// in the B-basis against the orthant spanned by `B[2], ..., B[n]`.
pub fn kodaira_full(n: usize) -> Result<KodairaEnergy> {
    let k = standard_class(n, StandardDivisor::Canonical)?;
    let b = standard_class(n, StandardDivisor::Boundary)?;
    let l = standard_class(n, StandardDivisor::Hyperplane)?;
    let base = reduce_to_b(&k.checked_add(&b)?);
    let direction = reduce_to_b(&l);
    kodaira_energy(base.b_coords(), direction.b_coords())
}
