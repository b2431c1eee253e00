//! Finite groups, coset spaces `G/H` and diagonal orbits on `(G/H)^n`.

mod coset;
mod finite;

pub use coset::{CosetSpace, DiagonalOrbits, DEFAULT_TUPLE_CAP};
pub(crate) use coset::{decode, encode};
pub use finite::{FiniteGroup, PermRep, DEFAULT_ORDER_CAP};
