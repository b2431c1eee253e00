use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::FgAbGroup;
use crate::exactla::{cokernel_structure, hermite_rows, kernel_basis, solve_integer, ExactMatrix};
use crate::{Error, Result};

/// The group `Z^generators / relations * Z^k`; relation vectors are columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: usize,
    relations: ExactMatrix,
}

impl Presentation {
    pub fn new(generators: usize, relations: ExactMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::Dimension(alloc::format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        Ok(Presentation { generators, relations })
    }

    pub fn free(generators: usize) -> Self {
        Presentation { generators, relations: ExactMatrix::zeros(generators, 0) }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &ExactMatrix {
        &self.relations
    }

    pub fn structure(&self) -> FgAbGroup {
        cokernel_structure(&self.relations)
    }

    /// `self (x) other` on generators `e_i (x) f_k`, indexed `i * other.generators + k`.
    pub fn tensor(&self, other: &Presentation) -> Presentation {
        let (p, s) = (self.generators, other.generators);
        let mut columns: Vec<Vec<(usize, BigInt)>> = Vec::new();
        for c in 0..self.relations.cols() {
            let col: Vec<(usize, BigInt)> = (0..p)
                .map(|i| (i, self.relations.get(i, c)))
                .filter(|(_, v)| *v != BigInt::from(0))
                .collect();
            for k in 0..s {
                columns.push(col.iter().map(|(i, v)| (i * s + k, v.clone())).collect());
            }
        }
        let other_t = other.relations.transpose();
        for i in 0..p {
            for d in 0..other.relations.cols() {
                columns.push(other_t.row_nonzeros(d).map(|(k, v)| (i * s + k, v.clone())).collect());
            }
        }
        let relations = ExactMatrix::from_row_entries(columns.len(), p * s, columns).transpose();
        Presentation { generators: p * s, relations }
    }
}

impl From<&FgAbGroup> for Presentation {
    fn from(g: &FgAbGroup) -> Self {
        g.presentation()
    }
}

/// Homomorphism between presented groups; column `i` of `matrix` is the
/// image of source generator `i` in target generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    source: Presentation,
    target: Presentation,
    matrix: ExactMatrix,
}

impl AbHom {
    /// Checks the shape and that every source relation maps into the target
    /// relation lattice.
    pub fn new(source: Presentation, target: Presentation, matrix: ExactMatrix) -> Result<Self> {
        if matrix.rows() != target.generators || matrix.cols() != source.generators {
            return Err(Error::Dimension(alloc::format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators,
                source.generators
            )));
        }
        let images = matrix.mul(&source.relations)?;
        for c in 0..images.cols() {
            if solve_integer(&target.relations, &images.column_vector(c))?.is_none() {
                return Err(Error::InvalidHom(alloc::format!(
                    "source relation {c} does not map into the target relations"
                )));
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    /// Homomorphism between canonical presentations of two groups.
    pub fn between(source: &FgAbGroup, target: &FgAbGroup, matrix: ExactMatrix) -> Result<Self> {
        Self::new(source.presentation(), target.presentation(), matrix)
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// `ker(self)`: classes of `x` with `M x` in the target relation lattice.
    pub fn kernel(&self) -> FgAbGroup {
        let n = self.source.generators;
        // {x : M x in span(L_t)} is the projection of ker [M | -L_t].
        let stacked = self.matrix.hstack(&self.target.relations.neg()).expect("same row count");
        let gens: Vec<Vec<BigInt>> = kernel_basis(&stacked).into_iter().map(|v| v[..n].to_vec()).collect();
        let basis = hermite_rows(&gens, n);
        if basis.is_empty() {
            return FgAbGroup::trivial();
        }
        // Coordinates of the source relations in that basis.
        let basis_t = ExactMatrix::from_columns(n, &basis);
        let coords: Vec<Vec<BigInt>> = (0..self.source.relations.cols())
            .map(|c| {
                solve_integer(&basis_t, &self.source.relations.column_vector(c))
                    .expect("dimensions agree")
                    .expect("source relations lie in the kernel lattice")
            })
            .collect();
        cokernel_structure(&ExactMatrix::from_columns(basis.len(), &coords))
    }

    pub fn cokernel(&self) -> FgAbGroup {
        cokernel_structure(&self.matrix.hstack(&self.target.relations).expect("same row count"))
    }

    /// `self (x) id_g`.
    pub fn tensor_identity(&self, g: &Presentation) -> AbHom {
        let s = g.generators;
        let mut entries = vec![Vec::new(); self.target.generators * s];
        for j in 0..self.matrix.rows() {
            for (i, v) in self.matrix.row_nonzeros(j) {
                for k in 0..s {
                    entries[j * s + k].push((i * s + k, v.clone()));
                }
            }
        }
        AbHom {
            source: self.source.tensor(g),
            target: self.target.tensor(g),
            matrix: ExactMatrix::from_row_entries(self.target.generators * s, self.source.generators * s, entries),
        }
    }
}
