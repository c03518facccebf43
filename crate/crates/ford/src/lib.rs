//! Exact arithmetic for Ford circles and Ford spheres.
//!
//! A Ford sphere is the sphere of radius `1/(2|β|²)` resting on the complex
//! plane at `α/β`, for a coprime pair `(α, β)` from one of the nine imaginary
//! quadratic rings with class number one (`D ∈ {1,2,3,7,11,19,43,67,163}`).
//! The crate builds those configurations three independent ways — from ring
//! pairs, by recursive tangency geometry, and from integer solutions of a
//! barycentric quadric — and checks that the three agree in exact arithmetic.
//!
//! * [`quadint`] — the rings `Z[σ]`, norms, units, the slow Euclidean
//!   algorithm, coprimality and lattice approximation.
//! * [`circles`] — the rational case: Ford circles, mediants, parents, and
//!   the barycentric triple correspondence.
//! * [`spheres`] — normal spheres, exact tangency, Möbius action, the
//!   four-variable quadric and the shared generators.
//! * [`eisenstein`] — the `D = 3` quadruple world: the greedy reduction on
//!   quadruples, ranks, parents, and the tetrahedral recursion.
//! * [`gaussian`] — the `D = 1` world: Descartes triples and quadruples,
//!   Möbius octahedra and the cross-ratio distance identity.
//! * [`general`] — all nine rings: the `σ`-barycentric solutions, the secant
//!   addition group and its enumeration.
//! * [`verify`] — the equality/tangency/corollary sweeps used by the test
//!   suite and the command line `verify` subcommand.

pub mod circles;
pub mod eisenstein;
mod error;
pub mod gaussian;
pub mod general;
pub mod quadint;
pub mod spheres;
pub mod verify;

pub use error::{Error, Result};
