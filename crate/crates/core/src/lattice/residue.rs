//! The endomorphism algebra of a lattice reduced to the residue field.

use crate::error::{Error, Result};
use crate::fp::{reduce_vec, FpAlgebra, FpVec};
use crate::matrix::Matrix;
use crate::order::Order;
use crate::scalar::Scalar;

use super::{hom_lattice, HomLattice, Lattice};

/// Largest residue dimension for which the radical is searched exhaustively.
pub const DEFAULT_RADICAL_DIM: usize = 6;

#[derive(Clone, Debug)]
pub struct ResidueAnalysis {
    pub end: HomLattice,
    pub algebra: FpAlgebra,
    /// Basis of the radical, in coordinates of the `End` basis mod p.
    pub radical: Vec<FpVec>,
    /// Integral endomorphisms reducing to the radical basis.
    pub radical_lifts: Vec<Matrix>,
    pub split_local: bool,
}

impl ResidueAnalysis {
    pub fn dim(&self) -> usize {
        self.algebra.dim
    }
}

/// Reduces `End_A(U)` modulo `p`, finds its radical and decides whether the
/// semisimple quotient is the residue field itself.
pub fn residue_endo_analysis(order: &Order, u: &Lattice, max_dim: usize) -> Result<ResidueAnalysis> {
    let p = order.prime();
    let end = hom_lattice(order, u, u);
    let m = end.rank();
    if m > max_dim {
        return Err(Error::ResourceBound(format!(
            "residue algebra too large for radical computation: dimension {m} exceeds {max_dim}"
        )));
    }
    let mut c = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let prod = end.basis[i].mul(&end.basis[j]);
            let coords = end.coordinates(&prod).ok_or(Error::NotSublattice)?;
            c[i][j] = reduce_vec(&coords, p).ok_or_else(|| Error::NonIntegral("endomorphism product".into()))?;
        }
    }
    let algebra = FpAlgebra { p, dim: m, c };
    let radical = algebra.radical_exhaustive();
    debug_assert!(algebra.is_two_sided_ideal(&radical) && algebra.is_nilpotent_subspace(&radical));
    let radical_lifts = radical
        .iter()
        .map(|v| end.combine(&v.iter().map(|&x| Scalar::from(x as i64)).collect::<Vec<_>>()))
        .collect();
    let split_local = m - radical.len() == 1;
    Ok(ResidueAnalysis { end, algebra, radical, radical_lifts, split_local })
}
