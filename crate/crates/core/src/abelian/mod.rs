//! Finitely generated abelian groups, homomorphisms between presented groups,
//! the Hom/Tor/Ext functors over finite groups, and direct limits of a group
//! under an endomorphism.
//!
//! The functors are computed from the diagonal free resolution
//! `0 -> Z^t -> Z^t -> G -> 0` of a finite group in canonical form.

mod functors;
mod group;
mod hom;
mod limit;

pub use functors::{count_cyclic_homs, dual_finite, ext_z, hom_structure, ker_tensor, resolution, tor, torsion_part};
pub use group::FgAbGroup;
pub use hom::{AbHom, Presentation};
pub use limit::{direct_limit_endo, LimitOutcome};
