//! Small dense linear algebra over the residue field `F_p`.

use crate::matrix::Matrix;
use crate::scalar::{Prime, Scalar};

pub type FpVec = Vec<u64>;

pub fn reduce_vec(v: &[Scalar], p: Prime) -> Option<FpVec> {
    v.iter().map(|x| x.residue(p)).collect()
}

pub fn reduce_matrix(m: &Matrix, p: Prime) -> Option<Vec<FpVec>> {
    (0..m.rows()).map(|i| reduce_vec(m.row(i), p)).collect()
}

fn mm(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn inv(a: u64, p: u64) -> u64 {
    // Fermat
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mm(r, b, p);
        }
        b = mm(b, b, p);
        e >>= 1;
    }
    r
}

/// Row echelon basis of the span of `rows`, in reduced form.
pub fn row_basis(rows: &[FpVec], p: Prime) -> Vec<FpVec> {
    let p = p.get();
    let mut basis: Vec<FpVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for (b, &c) in basis.iter().zip(&pivots) {
            let f = v[c];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + mm(p - f, *y, p)) % p;
                }
            }
        }
        if let Some(c) = v.iter().position(|&x| x != 0) {
            let s = inv(v[c], p);
            for x in v.iter_mut() {
                *x = mm(*x, s, p);
            }
            for b in basis.iter_mut() {
                let f = b[c];
                if f != 0 {
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = (*x + mm(p - f, *y, p)) % p;
                    }
                }
            }
            basis.push(v);
            pivots.push(c);
        }
    }
    basis
}

pub fn rank(rows: &[FpVec], p: Prime) -> usize {
    row_basis(rows, p).len()
}

pub fn in_span(v: &FpVec, basis: &[FpVec], p: Prime) -> bool {
    let mut all = basis.to_vec();
    let r = rank(&all, p);
    all.push(v.clone());
    rank(&all, p) == r
}

/// All vectors of `F_p^n`, in lexicographic order with the last coordinate fastest.
pub fn all_vectors(n: usize, p: Prime) -> impl Iterator<Item = FpVec> {
    let p = p.get();
    let total = p.checked_pow(n as u32).unwrap_or(u64::MAX);
    (0..total).map(move |mut k| {
        let mut v = vec![0; n];
        for x in v.iter_mut().rev() {
            *x = k % p;
            k /= p;
        }
        v
    })
}

pub fn mat_vec(m: &[FpVec], v: &[u64], p: Prime) -> FpVec {
    let p = p.get();
    m.iter().map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + mm(*a, *b, p)) % p)).collect()
}

/// A finite-dimensional `F_p`-algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct FpAlgebra {
    pub p: Prime,
    pub dim: usize,
    /// `e_i e_j = Σ_k c[i][j][k] e_k`.
    pub c: Vec<Vec<FpVec>>,
}

impl FpAlgebra {
    pub fn mul(&self, a: &[u64], b: &[u64]) -> FpVec {
        let p = self.p.get();
        let mut out = vec![0u64; self.dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = mm(x, y, p);
                for (o, &c) in out.iter_mut().zip(&self.c[i][j]) {
                    *o = (*o + mm(xy, c, p)) % p;
                }
            }
        }
        out
    }

    fn basis_vec(&self, i: usize) -> FpVec {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Span of `E·x`, which contains `x` because `E` is unital.
    pub fn left_ideal(&self, x: &[u64]) -> Vec<FpVec> {
        let gens: Vec<FpVec> = (0..self.dim).map(|i| self.mul(&self.basis_vec(i), x)).collect();
        row_basis(&gens, self.p)
    }

    /// Whether a subspace `I` with `I·I ⊆ I` satisfies `I^k = 0` for some `k`.
    pub fn is_nilpotent_subspace(&self, ideal: &[FpVec]) -> bool {
        let mut power = ideal.to_vec();
        for _ in 0..=self.dim {
            if power.is_empty() {
                return true;
            }
            let prods: Vec<FpVec> = power.iter().flat_map(|a| ideal.iter().map(move |b| (a, b))).map(|(a, b)| self.mul(a, b)).collect();
            let next = row_basis(&prods, self.p);
            if next.len() == power.len() {
                return false;
            }
            power = next;
        }
        power.is_empty()
    }

    pub fn is_two_sided_ideal(&self, ideal: &[FpVec]) -> bool {
        (0..self.dim).all(|i| {
            let b = self.basis_vec(i);
            ideal.iter().all(|x| in_span(&self.mul(&b, x), ideal, self.p) && in_span(&self.mul(x, &b), ideal, self.p))
        })
    }

    /// The Jacobson radical by exhaustive search: `x ∈ J` iff `E·x` is nilpotent.
    pub fn radical_exhaustive(&self) -> Vec<FpVec> {
        let members: Vec<FpVec> = all_vectors(self.dim, self.p)
            .filter(|x| x.iter().any(|&c| c != 0))
            .filter(|x| self.is_nilpotent_subspace(&self.left_ideal(x)))
            .collect();
        row_basis(&members, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_rank() {
        let p = Prime::new(3).unwrap();
        let rows = vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]];
        assert_eq!(rank(&rows, p), 2);
        assert!(in_span(&vec![1, 2, 1], &rows, p));
        assert!(!in_span(&vec![1, 0, 0], &rows, p));
        assert_eq!(all_vectors(2, p).count(), 9);
    }

    #[test]
    fn radical_of_dual_numbers_and_product() {
        let p = Prime::new(2).unwrap();
        // F_2[t]/(t^2)
        let a = FpAlgebra { p, dim: 2, c: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]] };
        assert_eq!(a.radical_exhaustive(), vec![vec![0, 1]]);
        // F_2 × F_2
        let b = FpAlgebra { p, dim: 2, c: vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 1]]] };
        assert!(b.radical_exhaustive().is_empty());
    }
}
