//! Heyting algebras of divisibility, and the contextuality of finite quantum
//! subsystems.
//!
//! The crate has four layers, each usable on its own:
//!
//! - [`supernatural`]: exact arithmetic on supernatural (Steinitz) numbers
//!   `∏ p^e` with exponents in `ℕ ∪ {∞}`, the Heyting connectives
//!   (meet, join, implication, pseudocomplement, equivalence) on them, and
//!   symbolic rendering of the cyclic / Prüfer / p-adic groups they label.
//! - [`divisor`]: the finite Heyting algebra of divisors of a fixed modulus
//!   `n`: the same connectives in closed form, Hall divisors (the Boolean
//!   core), maximal chains, Hasse diagrams, and CSV/DOT export.
//! - [`quantum`]: finite quantum systems with positions in `Z(n)`: the
//!   discrete Fourier transform, compatible embeddings of states and density
//!   matrices between subsystem spaces, the totient-sized sector
//!   decomposition, the commuting projector family onto subsystem spaces,
//!   and the probability functionals attached to them.
//! - [`contextuality`]: chains of divisors as contexts, Heyting factors,
//!   the logical Bell inequality they enter, a seeded violation search, and
//!   the chain pseudo-distance.
//!
//! All values are immutable; every operation is pure and safe to call from
//! multiple threads.

pub mod arith;
pub mod contextuality;
pub mod divisor;
pub mod quantum;
pub mod supernatural;

pub use contextuality::{bell_check, BellReport};
pub use divisor::{DivisorElement, Modulus};
pub use supernatural::{PrimeSet, SupernaturalNumber};
