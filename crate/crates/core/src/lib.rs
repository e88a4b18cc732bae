//! Exact computations with the semigroup of ordered G-partitions, its
//! symmetric-group invariants, the wreath product G≀Sₙ and its generalized
//! descent algebra.
//!
//! The pieces, bottom up:
//!
//! * [`group`]: finite groups by Cayley table, the source of every color.
//! * [`combinatorics`]: G-compositions, ordered G-partitions, the refinement
//!   order and exhaustive enumerators.
//! * [`semigroup`]: the product of ordered G-partitions and the identities
//!   `x^{|G|+1} = x`, `x·y·x^{|G|} = x·y`.
//! * [`wreath`]: colored permutations, descent compositions and chambers.
//! * [`linear`]: sparse linear combinations with arbitrary-precision coefficients.
//! * [`invariant`]: the `σ_α` basis and its product rule by compatible matrices.
//! * [`descent`]: the `Y_α` and `X_α` bases, the map `f(σ_α) = X_α` and the
//!   anti-homomorphism sweep `f(σ_α σ_β) = X_β * X_α`.
//! * [`verify`]: suites that tie the above together into pass/fail reports.
//!
//! Every color product is `FiniteGroup::mul(a, b) = a·b` in that order. In a
//! semigroup product `P·Q` the color of `Q`'s block multiplies on the left;
//! in a wreath product `u * v` the color of `u` multiplies on the left.

pub mod combinatorics;
pub mod descent;
pub mod error;
pub mod group;
pub mod guard;
pub mod invariant;
pub mod linear;
pub mod semigroup;
pub mod text;
pub mod verify;
pub mod wreath;

pub use combinatorics::{GComposition, OrderedGPartition, Part, Permutation};
pub use descent::{DescentAlgebra, GroupAlgebraElement, SweepMode};
pub use error::{Error, Result};
pub use group::{Color, FiniteGroup};
pub use guard::SizeGuard;
pub use invariant::{CompatibleMatrix, SigmaElement};
pub use linear::LinearCombination;
pub use wreath::ColoredPermutation;
