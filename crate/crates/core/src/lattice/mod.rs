//! Lattices over an order and their Hom-lattices.

mod knorr;
mod residue;
mod stable;

pub use knorr::{
    constant_value_check, knorr_check, knorr_exponent_equivalence, knorr_projective_check, stable_exponent_check,
    ConstantValueReport, EquivalenceClause, EquivalenceReport, KnorrReport, Limits, SocleOracle, StableExponentReport,
};
pub use residue::{residue_endo_analysis, ResidueAnalysis, DEFAULT_RADICAL_DIM};
pub use stable::tate_value;
pub use stable::{
    adjunction_check, adjunction_check_dual, exponent, stable_hom, tate_pair, verify_tate_duality, StableHom,
    TateDualityReport,
};

use crate::error::{Error, Result};
use crate::forms::DualBasis;
use crate::integral::{coordinates, integral_kernel, span_basis};
use crate::matrix::Matrix;
use crate::order::{Element, Order};
use crate::scalar::{Prime, Scalar};

/// A left `A`-module, free of finite rank over `Z_(p)`, by the action of each basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    rank: usize,
    action: Vec<Matrix>,
}

impl Lattice {
    /// Validates integrality and the module axioms on all basis pairs.
    pub fn new(order: &Order, action: Vec<Matrix>) -> Result<Self> {
        let d = order.dim();
        if action.len() != d {
            return Err(Error::Shape(format!("need {d} action matrices, got {}", action.len())));
        }
        let rank = action[0].rows();
        if rank == 0 || action.iter().any(|m| m.rows() != rank || m.cols() != rank) {
            return Err(Error::Shape("action matrices must be square of one positive size".into()));
        }
        if let Some(i) = action.iter().position(|m| !m.is_integral(order.prime())) {
            return Err(Error::NonIntegral(format!("action matrix {i}")));
        }
        let lattice = Lattice { rank, action };
        if lattice.act(order.one()) != Matrix::identity(rank) {
            return Err(Error::UnitActsNontrivially);
        }
        for i in 0..d {
            for j in 0..d {
                if lattice.action[i].mul(&lattice.action[j]) != lattice.act(&order.basis_product(i, j)) {
                    return Err(Error::ModuleAxiom { i, j });
                }
            }
        }
        Ok(lattice)
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(order: &Order) -> Lattice {
        let action = (0..order.dim()).map(|i| order.left_regular_matrix(&order.basis_element(i))).collect();
        Lattice { rank: order.dim(), action }
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let action = self.action.iter().zip(&other.action).map(|(a, b)| Matrix::block_diagonal(a, b)).collect();
        Lattice { rank: self.rank + other.rank, action }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// The matrix by which an element of `K ⊗ A` acts on `K ⊗ U`.
    pub fn act(&self, a: &Element) -> Matrix {
        let mut m = Matrix::zeros(self.rank, self.rank);
        for (c, b) in a.coords.iter().zip(&self.action) {
            if !c.is_zero() {
                m.add_scaled(b, c);
            }
        }
        m
    }
}

/// A saturated basis of `Hom_A(U, V)`, as `rank V × rank U` matrices.
#[derive(Clone, Debug)]
pub struct HomLattice {
    pub rows: usize,
    pub cols: usize,
    pub basis: Vec<Matrix>,
}

impl HomLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn flat_basis(&self) -> Vec<Vec<Scalar>> {
        self.basis.iter().map(Matrix::flatten).collect()
    }

    /// Coordinates of `phi` on the basis, if it lies in the rational span.
    pub fn coordinates(&self, phi: &Matrix) -> Option<Vec<Scalar>> {
        coordinates(&phi.flatten(), &self.flat_basis())
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                m.add_scaled(b, c);
            }
        }
        m
    }

    pub fn contains(&self, phi: &Matrix, p: Prime) -> bool {
        self.coordinates(phi).is_some_and(|c| c.iter().all(|x| x.is_integral(p)))
    }
}

/// Saturated basis of the intertwiners `φ` with `φ U(b_i) = V(b_i) φ`.
pub fn hom_lattice(order: &Order, u: &Lattice, v: &Lattice) -> HomLattice {
    let (ru, rv) = (u.rank, v.rank);
    let n = rv * ru;
    let d = order.dim();
    let mut m = Matrix::zeros(d * n, n);
    for i in 0..d {
        let (a, b) = (&u.action[i], &v.action[i]);
        for r in 0..rv {
            for c in 0..ru {
                let row = i * n + r * ru + c;
                // (φ a)[r][c] = Σ_k φ[r][k] a[k][c]
                for k in 0..ru {
                    let x = &a[(k, c)];
                    if !x.is_zero() {
                        let col = r * ru + k;
                        m[(row, col)] = &m[(row, col)] + x;
                    }
                }
                // (b φ)[r][c] = Σ_k b[r][k] φ[k][c]
                for k in 0..rv {
                    let x = &b[(r, k)];
                    if !x.is_zero() {
                        let col = k * ru + c;
                        m[(row, col)] = &m[(row, col)] - x;
                    }
                }
            }
        }
    }
    let basis = integral_kernel(&m, order.prime()).into_iter().map(|v| Matrix::from_flat(rv, ru, v)).collect();
    HomLattice { rows: rv, cols: ru, basis }
}

/// `Σ_i V(b_i) φ U(b_i^∨)` for a `Z_(p)`-linear `φ: U → V`.
pub fn relative_trace_map(dual: &DualBasis, u: &Lattice, v: &Lattice, phi: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(v.rank, u.rank);
    for (i, x) in dual.dual.iter().enumerate() {
        let term = v.action[i].mul(phi).mul(&u.act(x));
        out = out.add(&term);
    }
    out
}

/// Basis of the span of relative traces of elementary matrices; these are
/// the homomorphisms factoring through a projective module.
pub fn projective_hom_lattice(order: &Order, dual: &DualBasis, u: &Lattice, v: &Lattice) -> Result<HomLattice> {
    let (ru, rv) = (u.rank, v.rank);
    let mut gens = Vec::with_capacity(ru * rv);
    for r in 0..rv {
        for c in 0..ru {
            let mut e = Matrix::zeros(rv, ru);
            e[(r, c)] = Scalar::one();
            gens.push(relative_trace_map(dual, u, v, &e).flatten());
        }
    }
    let basis = span_basis(&gens, rv * ru, order.prime())?;
    Ok(HomLattice { rows: rv, cols: ru, basis: basis.into_iter().map(|v| Matrix::from_flat(rv, ru, v)).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_over_one_dim() {
        let p = Prime::new(3).unwrap();
        let a = Order::new(p, 1, vec![vec![vec![Scalar::one()]]], vec![Scalar::one()]).unwrap();
        let u = Lattice::new(&a, vec![Matrix::identity(1)]).unwrap();
        let h = hom_lattice(&a, &u, &u);
        assert_eq!(h.basis, vec![Matrix::identity(1)]);
        assert_eq!(Lattice::new(&a, vec![Matrix::from_ints(&[&[2]])]), Err(Error::UnitActsNontrivially));
    }
}
