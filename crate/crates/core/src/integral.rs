//! Linear algebra over the valuation ring: Smith normal form, saturation,
//! lattice spans and quotient invariants.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Prime, Scalar, Valuation};

/// `left · M · right = diagonal`, with both transforms invertible over the
/// valuation ring and `diagonal[i][i] = p^{e_i}` for `i < rank`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Invariant factor exponents `e_1 <= ... <= e_r` of the nonzero diagonal.
    pub exponents: Vec<u32>,
    pub rank: usize,
    pub left: Matrix,
    pub right: Matrix,
    pub diagonal: Matrix,
}

impl SmithForm {
    /// Exponents that are strictly positive.
    pub fn torsion_exponents(&self) -> Vec<u32> {
        self.exponents.iter().copied().filter(|&e| e > 0).collect()
    }
}

/// Pivots on an entry of minimal valuation, ties broken by the lowest
/// `(row, col)` index.
pub fn smith_normal_form(m: &Matrix, p: Prime) -> Result<SmithForm> {
    if let Some(bad) = m.entries().iter().find(|x| !x.is_integral(p)) {
        return Err(Error::NonIntegral(format!("{bad} in Smith normal form input")));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut left = Matrix::identity(rows);
    let mut right = Matrix::identity(cols);
    let mut exponents = Vec::new();

    for k in 0..rows.min(cols) {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if let Valuation::Finite(v) = d[(i, j)].val(p) {
                    if best.is_none_or(|(b, _, _)| v < b) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((e, pi, pj)) = best else { break };
        d.swap_rows(k, pi);
        left.swap_rows(k, pi);
        d.swap_cols(k, pj);
        right.swap_cols(k, pj);

        let pivot = d[(k, k)].clone();
        let inv = pivot.recip().expect("nonzero pivot");
        for i in k + 1..rows {
            if !d[(i, k)].is_zero() {
                let f = &d[(i, k)] * &inv;
                d.row_axpy(i, k, &f);
                left.row_axpy(i, k, &f);
            }
        }
        for j in k + 1..cols {
            if !d[(k, j)].is_zero() {
                let f = &d[(k, j)] * &inv;
                d.col_axpy(j, k, &f);
                right.col_axpy(j, k, &f);
            }
        }
        // normalise the pivot to p^e
        let unit_inv = &p.power(e) * &inv;
        d.scale_row(k, &unit_inv);
        left.scale_row(k, &unit_inv);
        exponents.push(e as u32);
    }
    let rank = exponents.len();
    Ok(SmithForm { exponents, rank, left, right, diagonal: d })
}

/// Multiplies a rational vector by the smallest positive integer making it
/// integral everywhere (not only at `p`).
fn clear_denominators(v: &[Scalar]) -> Vec<Scalar> {
    use num_integer::Integer;
    let l = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let l = Scalar::from(l);
    v.iter().map(|x| x * &l).collect()
}

/// A basis of `Z_(p)^n ∩ span_Q(vectors)`.
pub fn saturate(vectors: &[Vec<Scalar>], n: usize, p: Prime) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let cols: Vec<Vec<Scalar>> = vectors.iter().map(|v| clear_denominators(v)).collect();
    let g = Matrix::from_columns(&cols, n);
    let snf = smith_normal_form(&g, p).expect("cleared vectors are integral");
    let linv = snf.left.inverse().expect("Smith transform is invertible");
    (0..snf.rank).map(|i| linv.column(i)).collect()
}

/// A basis of the saturated lattice `{v integral : Mv = 0}`.
pub fn integral_kernel(m: &Matrix, p: Prime) -> Vec<Vec<Scalar>> {
    let k = m.kernel();
    saturate(&k, m.cols(), p)
}

/// A basis of the `Z_(p)`-span of integral generators.
pub fn span_basis(gens: &[Vec<Scalar>], n: usize, p: Prime) -> Result<Vec<Vec<Scalar>>> {
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let g = Matrix::from_columns(gens, n);
    let snf = smith_normal_form(&g, p)?;
    let linv = snf.left.inverse().expect("Smith transform is invertible");
    Ok((0..snf.rank)
        .map(|i| {
            let s = p.power(snf.exponents[i] as i64);
            linv.column(i).into_iter().map(|x| x * &s).collect()
        })
        .collect())
}

/// Rational coordinates of `v` in a linearly independent family.
pub fn coordinates(v: &[Scalar], basis: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return v.iter().all(Scalar::is_zero).then(Vec::new);
    }
    let b = Matrix::from_columns(basis, v.len());
    b.solve_unique(v)
}

/// Whether `v` is a `Z_(p)`-combination of `basis`.
pub fn in_lattice(v: &[Scalar], basis: &[Vec<Scalar>], p: Prime) -> bool {
    coordinates(v, basis).is_some_and(|c| c.iter().all(|x| x.is_integral(p)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInvariants {
    /// Positive exponents `d_i` of the finite part `⊕ O/p^{d_i}`.
    pub exponents: Vec<u32>,
    pub free_rank: usize,
}

/// Presentation of `sup / ⟨sub⟩` in the coordinates of `sup`.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub invariants: QuotientInvariants,
    /// Maps `sup`-coordinates to coordinates adapted to the quotient.
    pub reduction: Matrix,
    /// Adapted basis of `sup`, in `sup`-coordinates (columns of the inverse reduction).
    pub adapted: Matrix,
    /// Exponent per adapted coordinate; `None` for free coordinates.
    pub coordinate_exponents: Vec<Option<u32>>,
}

pub fn quotient_presentation(sub: &[Vec<Scalar>], sup: &[Vec<Scalar>], p: Prime) -> Result<QuotientPresentation> {
    let m = sup.len();
    let mut coord_cols = Vec::with_capacity(sub.len());
    for g in sub {
        let c = coordinates(g, sup).ok_or(Error::NotSublattice)?;
        if c.iter().any(|x| !x.is_integral(p)) {
            return Err(Error::NotSublattice);
        }
        coord_cols.push(c);
    }
    let (reduction, exps) = if coord_cols.is_empty() {
        (Matrix::identity(m), Vec::new())
    } else {
        let c = Matrix::from_columns(&coord_cols, m);
        let snf = smith_normal_form(&c, p)?;
        (snf.left, snf.exponents)
    };
    let adapted = reduction.inverse().expect("Smith transform is invertible");
    let coordinate_exponents: Vec<Option<u32>> = (0..m).map(|i| exps.get(i).copied()).collect();
    let invariants = QuotientInvariants {
        exponents: exps.iter().copied().filter(|&e| e > 0).collect(),
        free_rank: m - exps.len(),
    };
    Ok(QuotientPresentation { invariants, reduction, adapted, coordinate_exponents })
}

/// Invariant factors of `sup / ⟨sub⟩`.
pub fn lattice_quotient_invariants(sub: &[Vec<Scalar>], sup: &[Vec<Scalar>], p: Prime) -> Result<QuotientInvariants> {
    Ok(quotient_presentation(sub, sup, p)?.invariants)
}
