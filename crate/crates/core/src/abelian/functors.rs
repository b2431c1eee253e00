use super::{AbHom, FgAbGroup, Presentation};
use crate::exactla::{cokernel_structure, ExactMatrix};
use crate::{Error, Result};

/// The torsion subgroup.
pub fn torsion_part(g: &FgAbGroup) -> FgAbGroup {
    FgAbGroup::from_canonical(g.factors().to_vec(), 0)
}

/// The inclusion `i: A -> B` of the diagonal free resolution
/// `0 -> Z^t -> Z^t -> g -> 0` of a finite group.
pub fn resolution(g: &FgAbGroup) -> Result<AbHom> {
    if !g.is_finite() {
        return Err(Error::NotFinite);
    }
    let t = g.factors().len();
    let diag = ExactMatrix::diagonal(t, t, g.factors());
    AbHom::new(Presentation::free(t), Presentation::free(t), diag)
}

/// `Hom(a, b)` for finite `a`, as the kernel of `i*: Hom(B, b) -> Hom(A, b)`.
pub fn hom_structure(a: &FgAbGroup, b: &FgAbGroup) -> Result<FgAbGroup> {
    let i = resolution(a)?;
    // Hom(Z^t, b) = b^t and i* acts through the transpose.
    let pullback = AbHom::new(i.target().clone(), i.source().clone(), i.matrix().transpose())?;
    Ok(pullback.tensor_identity(&b.presentation()).kernel())
}

/// Pontryagin dual `Hom(g, Q/Z)`, computed as `Hom(g, Z/e)` for the exponent `e`.
pub fn dual_finite(g: &FgAbGroup) -> Result<FgAbGroup> {
    let e = g.exponent().ok_or(Error::NotFinite)?;
    hom_structure(g, &FgAbGroup::cyclic(e))
}

/// `Ext(g, Z)` as the cokernel of `i*: Hom(B, Z) -> Hom(A, Z)`.
pub fn ext_z(g: &FgAbGroup) -> Result<FgAbGroup> {
    let i = resolution(g)?;
    Ok(cokernel_structure(&i.matrix().transpose()))
}

/// `Tor(m, g)` for finite `g`, as the kernel of `i (x) id_m: A (x) m -> B (x) m`.
pub fn tor(m: &FgAbGroup, g: &FgAbGroup) -> Result<FgAbGroup> {
    let i = resolution(g)?;
    Ok(i.tensor_identity(&m.presentation()).kernel())
}

/// `ker(j (x) id_g)` for a homomorphism `j` between torsion-free groups.
pub fn ker_tensor(j: &AbHom, g: &FgAbGroup) -> Result<FgAbGroup> {
    if !g.is_finite() {
        return Err(Error::NotFinite);
    }
    if !j.source().structure().factors().is_empty() || !j.target().structure().factors().is_empty() {
        return Err(Error::NotTorsionFree);
    }
    Ok(j.tensor_identity(&g.presentation()).kernel())
}

/// Number of homomorphisms `Z/a -> Z/b_1 + ... + Z/b_k (+ Z^r)`, by counting
/// target elements killed by `a`. Test and cross-check helper.
pub fn count_cyclic_homs(a: u64, target_orders: &[u64]) -> u64 {
    fn rec(a: u64, orders: &[u64], acc: u64) -> u64 {
        match orders.split_first() {
            None => acc,
            Some((&b, rest)) => {
                let killed = (0..b).filter(|x| (a * x).is_multiple_of(b)).count() as u64;
                rec(a, rest, acc * killed)
            }
        }
    }
    rec(a, target_orders, 1)
}
