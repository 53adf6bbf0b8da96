//! Stable Hom groups, exponents and the Tate duality pairing.

use crate::error::{Error, Result};
use crate::forms::SymmetricData;
use crate::integral::{quotient_presentation, smith_normal_form, QuotientPresentation};
use crate::matrix::Matrix;
use crate::order::{Element, Order};
use crate::scalar::{residue_mod_ring, Prime, ResidueClass, Scalar, Valuation};

use super::{hom_lattice, projective_hom_lattice, relative_trace_map, HomLattice, Lattice};

/// `Hom_A(U, V)` modulo the homomorphisms factoring through a projective.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub hom: HomLattice,
    pub projective: HomLattice,
    presentation: QuotientPresentation,
    /// Indices of adapted coordinates carrying a nontrivial cyclic summand.
    torsion: Vec<(usize, u32)>,
    prime: Prime,
}

impl StableHom {
    /// Invariant exponents `d_1 ≤ … ≤ d_k`, all positive.
    pub fn exponents(&self) -> Vec<u32> {
        self.torsion.iter().map(|&(_, e)| e).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.torsion.is_empty()
    }

    /// `p^{d_k}` is the exponent of the group; 0 when stably zero.
    pub fn exponent(&self) -> u32 {
        self.torsion.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }

    /// Homomorphisms whose classes generate the cyclic summands, in order.
    pub fn generators(&self) -> Vec<Matrix> {
        self.torsion.iter().map(|&(i, _)| self.hom.combine(&self.presentation.adapted.column(i))).collect()
    }

    /// Class of `phi` as residues `c_i mod p^{d_i}`, each reduced into `[0, p^{d_i})`.
    pub fn class_of(&self, phi: &Matrix) -> Result<Vec<Scalar>> {
        let coords = self.hom.coordinates(phi).ok_or(Error::NotSublattice)?;
        if coords.iter().any(|x| !x.is_integral(self.prime)) {
            return Err(Error::NotSublattice);
        }
        let adapted = self.presentation.reduction.mul_vec(&coords);
        Ok(self.torsion.iter().map(|&(i, e)| reduce_mod_power(&adapted[i], e, self.prime)).collect())
    }

    pub fn is_zero_class(&self, phi: &Matrix) -> Result<bool> {
        Ok(self.class_of(phi)?.iter().all(Scalar::is_zero))
    }

    /// The homomorphism `Σ c_i g_i` for a class vector.
    pub fn lift(&self, class: &[Scalar]) -> Matrix {
        let gens = self.generators();
        let mut m = Matrix::zeros(self.hom.rows, self.hom.cols);
        for (c, g) in class.iter().zip(&gens) {
            m.add_scaled(g, c);
        }
        m
    }

    /// Number of elements, when it fits.
    pub fn order(&self) -> Option<u64> {
        let p = self.prime.get();
        self.torsion.iter().try_fold(1u64, |acc, &(_, e)| acc.checked_mul(p.checked_pow(e)?))
    }
}

/// The integer in `[0, p^e)` congruent to a `Z_(p)`-integral `x` modulo `p^e`.
pub(crate) fn reduce_mod_power(x: &Scalar, e: u32, p: Prime) -> Scalar {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let m = num_traits::pow::pow(p.as_bigint(), e as usize);
    let inv = crate::scalar::mod_inverse(x.denom(), &m).expect("integral scalar has denominator prime to p");
    let r: BigInt = (x.numer() * inv).mod_floor(&m);
    Scalar::from(r)
}

pub fn stable_hom(order: &Order, data: &SymmetricData, u: &Lattice, v: &Lattice) -> Result<StableHom> {
    let p = order.prime();
    let hom = hom_lattice(order, u, v);
    let projective = projective_hom_lattice(order, &data.dual, u, v)?;
    let presentation = quotient_presentation(&projective.flat_basis(), &hom.flat_basis(), p)?;
    if presentation.invariants.free_rank > 0 {
        return Err(Error::FreePartNonzero);
    }
    let torsion: Vec<(usize, u32)> = presentation
        .coordinate_exponents
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.filter(|&e| e > 0).map(|e| (i, e)))
        .collect();
    Ok(StableHom { hom, projective, presentation, torsion, prime: p })
}

/// `a(U)`: the least `a` with `p^a` annihilating the stable endomorphisms.
pub fn exponent(order: &Order, data: &SymmetricData, u: &Lattice) -> Result<u32> {
    Ok(stable_hom(order, data, u, u)?.exponent())
}

fn casimir_inverse(data: &SymmetricData) -> Result<&Element> {
    data.casimir_inverse.as_ref().ok_or(Error::NotInvertible)
}

/// `tr_{K⊗U}(z^{-1} β α)` as an exact rational.
pub fn tate_value(data: &SymmetricData, u: &Lattice, alpha: &Matrix, beta: &Matrix) -> Result<Scalar> {
    let zinv = casimir_inverse(data)?;
    Ok(u.act(zinv).mul(beta).mul(alpha).trace())
}

/// The Tate pairing of `α: U → V` and `β: V → U`, in `K / Z_(p)`.
pub fn tate_pair(order: &Order, data: &SymmetricData, u: &Lattice, alpha: &Matrix, beta: &Matrix) -> Result<ResidueClass> {
    Ok(residue_mod_ring(&tate_value(data, u, alpha, beta)?, order.prime()))
}

#[derive(Clone, Debug)]
pub struct TateDualityReport {
    pub exponents_uv: Vec<u32>,
    pub exponents_vu: Vec<u32>,
    /// Pairing values on generator pairs, `values[i][j] = ⟨g_i, h_j⟩`.
    pub values: Vec<Vec<ResidueClass>>,
    pub perfect: bool,
}

/// Checks that the pairing between the two stable Hom groups is perfect:
/// equal invariants and an injective induced map.
pub fn verify_tate_duality(order: &Order, data: &SymmetricData, u: &Lattice, v: &Lattice) -> Result<TateDualityReport> {
    let p = order.prime();
    let s_uv = stable_hom(order, data, u, v)?;
    let s_vu = stable_hom(order, data, v, u)?;
    let exponents_uv = s_uv.exponents();
    let exponents_vu = s_vu.exponents();
    let (g, h) = (s_uv.generators(), s_vu.generators());
    let mut raw = vec![vec![Scalar::zero(); h.len()]; g.len()];
    for (i, a) in g.iter().enumerate() {
        for (j, b) in h.iter().enumerate() {
            raw[i][j] = tate_value(data, u, a, b)?;
        }
    }
    let values: Vec<Vec<ResidueClass>> = raw.iter().map(|r| r.iter().map(|x| residue_mod_ring(x, p)).collect()).collect();
    let mut sorted_uv = exponents_uv.clone();
    let mut sorted_vu = exponents_vu.clone();
    sorted_uv.sort_unstable();
    sorted_vu.sort_unstable();
    if sorted_uv != sorted_vu {
        return Err(Error::PairingDegenerate(format!("invariants differ: {exponents_uv:?} vs {exponents_vu:?}")));
    }
    if let Some(witness) = pairing_kernel_witness(&raw, &exponents_uv, p)? {
        let shown: Vec<String> = witness.iter().map(ToString::to_string).collect();
        return Err(Error::PairingDegenerate(format!("[{}]", shown.join(", "))));
    }
    Ok(TateDualityReport { exponents_uv, exponents_vu, values, perfect: true })
}

/// A nonzero class `c ∈ ⊕ Z/p^{d_i}` with `Σ_i c_i Q_ij ∈ Z_(p)` for all `j`, if one exists.
fn pairing_kernel_witness(q: &[Vec<Scalar>], orders: &[u32], p: Prime) -> Result<Option<Vec<Scalar>>> {
    let k = orders.len();
    if k == 0 {
        return Ok(None);
    }
    let l = q[0].len();
    if l == 0 {
        let mut c = vec![Scalar::zero(); k];
        c[0] = Scalar::one();
        return Ok(Some(c));
    }
    // scale so that the congruence lives modulo p^N with integral coefficients
    let mut n: i64 = *orders.iter().max().unwrap() as i64;
    for x in q.iter().flatten() {
        if let Valuation::Finite(v) = x.val(p) {
            n = n.max(-v);
        }
    }
    let scale = p.power(n);
    let m = Matrix::from_rows(q.iter().map(|r| r.iter().map(|x| x * &scale).collect()).collect());
    let snf = smith_normal_form(&m, p)?;
    // c^T M ≡ 0 (mod p^N)  ⇔  w = left^{-T} c has w_i p^{e_i} ≡ 0 for i < rank
    let lt = snf.left.transpose();
    for i in 0..k {
        let mult = if i < snf.rank { (n - snf.exponents[i] as i64).max(0) } else { 0 };
        let c: Vec<Scalar> = lt.column(i).into_iter().map(|x| x * &p.power(mult)).collect();
        let class: Vec<Scalar> = c.iter().zip(orders).map(|(x, &d)| reduce_mod_power(x, d, p)).collect();
        if class.iter().any(|x| !x.is_zero()) {
            return Ok(Some(class));
        }
    }
    Ok(None)
}

/// `tr(z^{-1} β Tr(α)) = tr(β α)` for `Z_(p)`-linear `α: U → V` and `β ∈ Hom_A(V, U)`.
pub fn adjunction_check(data: &SymmetricData, u: &Lattice, v: &Lattice, alpha: &Matrix, beta: &Matrix) -> Result<bool> {
    let lhs = tate_value(data, u, &relative_trace_map(&data.dual, u, v, alpha), beta)?;
    Ok(lhs == beta.mul(alpha).trace())
}

/// `tr(z^{-1} Tr(δ) γ) = tr(δ γ)` for `γ ∈ Hom_A(U, V)` and `Z_(p)`-linear `δ: V → U`.
pub fn adjunction_check_dual(data: &SymmetricData, u: &Lattice, v: &Lattice, gamma: &Matrix, delta: &Matrix) -> Result<bool> {
    let zinv = casimir_inverse(data)?;
    let lhs = u.act(zinv).mul(&relative_trace_map(&data.dual, v, u, delta)).mul(gamma).trace();
    Ok(lhs == delta.mul(gamma).trace())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_mod_powers() {
        let p = Prime::new(3).unwrap();
        assert_eq!(reduce_mod_power(&Scalar::from(-1), 2, p), Scalar::from(8));
        assert_eq!(reduce_mod_power(&Scalar::new(1, 2), 1, p), Scalar::from(2));
        assert_eq!(reduce_mod_power(&Scalar::from(9), 2, p), Scalar::zero());
    }

    #[test]
    fn kernel_witness() {
        let p = Prime::new(2).unwrap();
        // Z/2 × Z/2 paired by the zero matrix: degenerate
        let q = vec![vec![Scalar::zero()]];
        assert!(pairing_kernel_witness(&q, &[1], p).unwrap().is_some());
        let q = vec![vec![Scalar::new(1, 2)]];
        assert!(pairing_kernel_witness(&q, &[1], p).unwrap().is_none());
        // Z/4 paired by 1/2: 2 pairs to zero
        let q = vec![vec![Scalar::new(1, 2)]];
        assert_eq!(pairing_kernel_witness(&q, &[2], p).unwrap(), Some(vec![Scalar::from(2)]));
    }
}
