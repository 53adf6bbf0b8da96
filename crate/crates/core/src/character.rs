//! Rational character tables and decomposition matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::LinearForm;
use crate::matrix::Matrix;
use crate::order::Order;
use crate::scalar::Scalar;

/// Irreducible characters as functionals on the order's basis, with their degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub names: Vec<String>,
    pub characters: Vec<LinearForm>,
    pub degrees: Vec<Scalar>,
}

impl CharacterTable {
    /// Degrees are read off as `χ(1)`.
    pub fn new(order: &Order, names: Vec<String>, characters: Vec<LinearForm>) -> Result<Self> {
        let degrees = characters.iter().map(|c| c.eval(order.one())).collect();
        let t = CharacterTable { names, characters, degrees };
        t.validate(order)?;
        Ok(t)
    }

    /// Degree data without an order, e.g. for a Morita-equivalent algebra known only by its table.
    pub fn degrees_only(names: Vec<String>, degrees: Vec<Scalar>) -> Self {
        CharacterTable { names, characters: Vec::new(), degrees }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn has_values(&self) -> bool {
        !self.characters.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Linear independence, degrees equal to `χ(1)`, and `Σ χ(1) χ = ρ`.
    pub fn validate(&self, order: &Order) -> Result<()> {
        let d = order.dim();
        let r = self.characters.len();
        if self.names.len() != r || self.degrees.len() != r {
            return Err(Error::InvalidCharacters("names, values and degrees differ in length".into()));
        }
        if r == 0 {
            return Err(Error::InvalidCharacters("empty table".into()));
        }
        if let Some(i) = self.characters.iter().position(|c| c.dim() != d) {
            return Err(Error::InvalidCharacters(format!("character {} has the wrong length", self.names[i])));
        }
        for (i, c) in self.characters.iter().enumerate() {
            if c.eval(order.one()) != self.degrees[i] {
                return Err(Error::InvalidCharacters(format!("degree of {} is not its value at 1", self.names[i])));
            }
        }
        let m = Matrix::from_rows(self.characters.iter().map(|c| c.values.clone()).collect());
        if m.rank() != r {
            return Err(Error::InvalidCharacters("characters are linearly dependent".into()));
        }
        let sum = LinearForm::combination(&self.degrees, &self.characters, d);
        if sum != LinearForm::regular(order) {
            return Err(Error::InvalidCharacters("Σ χ(1)·χ differs from the regular character".into()));
        }
        Ok(())
    }

    pub fn combination(&self, coeffs: &[Scalar], dim: usize) -> LinearForm {
        LinearForm::combination(coeffs, &self.characters, dim)
    }
}

/// Multiplicities `d_{χ,φ}` of modular simples in reductions of ordinary
/// irreducibles, with the simple dimensions `n_φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionMatrix {
    pub rows: Vec<Vec<u32>>,
    pub modular_dims: Vec<u32>,
}

impl DecompositionMatrix {
    pub fn new(rows: Vec<Vec<u32>>, modular_dims: Vec<u32>) -> Self {
        DecompositionMatrix { rows, modular_dims }
    }

    pub fn columns(&self) -> usize {
        self.modular_dims.len()
    }

    /// `χ(1) = Σ_φ d_{χ,φ} n_φ` for every row.
    pub fn validate(&self, degrees: &[Scalar]) -> Result<()> {
        if self.rows.len() != degrees.len() {
            return Err(Error::InvalidDecomposition(format!(
                "{} rows for {} characters",
                self.rows.len(),
                degrees.len()
            )));
        }
        if self.modular_dims.contains(&0) {
            return Err(Error::InvalidDecomposition("modular dimensions must be positive".into()));
        }
        for (i, (row, deg)) in self.rows.iter().zip(degrees).enumerate() {
            if row.len() != self.columns() {
                return Err(Error::InvalidDecomposition(format!("row {i} has the wrong length")));
            }
            let s: i64 = row.iter().zip(&self.modular_dims).map(|(&d, &n)| d as i64 * n as i64).sum();
            if Scalar::from(s) != *deg {
                return Err(Error::InvalidDecomposition(format!("row {i}: Σ d·n = {s} but χ(1) = {deg}")));
            }
        }
        Ok(())
    }

    /// `a = D m`.
    pub fn apply(&self, m: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().zip(m).map(|(&d, &x)| d as i64 * x).sum()).collect()
    }

    /// Block-diagonal matrix for a direct product of algebras.
    pub fn direct_sum(&self, other: &DecompositionMatrix) -> DecompositionMatrix {
        let (a, b) = (self.columns(), other.columns());
        let mut rows: Vec<Vec<u32>> = self.rows.iter().map(|r| r.iter().copied().chain(std::iter::repeat_n(0, b)).collect()).collect();
        rows.extend(other.rows.iter().map(|r| std::iter::repeat_n(0, a).chain(r.iter().copied()).collect()));
        DecompositionMatrix { rows, modular_dims: self.modular_dims.iter().chain(&other.modular_dims).copied().collect() }
    }

    /// Kronecker product, matching the tensor product of split algebras
    /// whose modular simples stay simple.
    pub fn kronecker(&self, other: &DecompositionMatrix) -> DecompositionMatrix {
        let mut rows = Vec::new();
        for r1 in &self.rows {
            for r2 in &other.rows {
                rows.push(r1.iter().flat_map(|&x| r2.iter().map(move |&y| x * y)).collect());
            }
        }
        let modular_dims = self.modular_dims.iter().flat_map(|&x| other.modular_dims.iter().map(move |&y| x * y)).collect();
        DecompositionMatrix { rows, modular_dims }
    }
}

impl CharacterTable {
    /// Table of a direct product: characters extended by zero.
    pub fn direct_sum(&self, other: &CharacterTable) -> CharacterTable {
        let (a, b) = (
            self.characters.first().map_or(0, LinearForm::dim),
            other.characters.first().map_or(0, LinearForm::dim),
        );
        let mut characters: Vec<LinearForm> = self
            .characters
            .iter()
            .map(|c| LinearForm::new(c.values.iter().cloned().chain(std::iter::repeat_n(Scalar::zero(), b)).collect()))
            .collect();
        characters.extend(
            other
                .characters
                .iter()
                .map(|c| LinearForm::new(std::iter::repeat_n(Scalar::zero(), a).chain(c.values.iter().cloned()).collect())),
        );
        CharacterTable {
            names: self.names.iter().chain(&other.names).cloned().collect(),
            characters,
            degrees: self.degrees.iter().chain(&other.degrees).cloned().collect(),
        }
    }

    /// Table of a tensor product, matching [`Order::tensor_product`]'s basis order.
    pub fn tensor(&self, other: &CharacterTable) -> CharacterTable {
        let mut names = Vec::new();
        let mut characters = Vec::new();
        let mut degrees = Vec::new();
        for (i, c1) in self.characters.iter().enumerate() {
            for (j, c2) in other.characters.iter().enumerate() {
                names.push(format!("{}⊗{}", self.names[i], other.names[j]));
                characters.push(LinearForm::new(
                    c1.values.iter().flat_map(|x| c2.values.iter().map(move |y| x * y)).collect(),
                ));
                degrees.push(&self.degrees[i] * &other.degrees[j]);
            }
        }
        CharacterTable { names, characters, degrees }
    }
}
