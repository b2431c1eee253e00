//! Exact algebraic invariants of extensions of Cantor minimal systems.
//!
//! Everything in this crate is pure computation over arbitrary-precision
//! integers and needs only `alloc`:
//!
//! * [`exactla`]: integer matrices, Smith and Hermite normal forms, kernels,
//!   cokernels and integer solving, with a sparse elimination engine for the
//!   large differentials.
//! * [`abelian`]: finitely generated abelian groups in invariant-factor form,
//!   homomorphisms, Hom/Tor/Ext over finite groups and direct limits under an
//!   endomorphism.
//! * [`groups`]: finite groups given by tables or permutations, coset spaces
//!   and diagonal orbits.
//! * [`cochain`]: the invariant cochain complex over `K = G/H`, group
//!   cohomology and relative cohomology of finite isometric extensions.
//! * [`dimlim`]: stationary dimension groups and the Morse system.
//! * [`toeplitz`]: the Toeplitz sequence over a finite group whose skew
//!   product realizes a group extension.
//!
//! File formats and the command-line front end live in the `cantorext` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod abelian;
pub mod cochain;
pub mod dimlim;
mod error;
pub mod exactla;
pub mod groups;
pub mod toeplitz;

pub use error::{Error, Refusal, Result};
