//! Decomposition-matrix analysis: Morita-class searches, the rational centre,
//! rational symmetry, and heights of degrees.

use serde::Serialize;

use crate::character::{CharacterTable, DecompositionMatrix};
use crate::error::{Error, Result};
use crate::forms::{central_idempotents, is_symmetrising, schur_coefficients, uniform_gram_exponent, LinearForm};
use crate::fp::{all_vectors, reduce_vec, row_basis, FpAlgebra, FpVec};
use crate::integral::{coordinates, in_lattice, integral_kernel, span_basis};
use crate::matrix::Matrix;
use crate::order::{Element, Order};
use crate::scalar::{Prime, Scalar, Valuation};

/// Largest rational-centre dimension whose residue algebra is searched for idempotents.
pub const DEFAULT_IDEAL_DIM: usize = 8;

/// Replay data for a form `p^{-n} Σ a_χ χ` with `a = D m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoritaWitness {
    pub m: Vec<i64>,
    pub a: Vec<i64>,
    pub n: u32,
    pub form: LinearForm,
}

fn try_coefficients(order: &Order, table: &CharacterTable, d: &DecompositionMatrix, m: &[i64]) -> Option<MoritaWitness> {
    let a = d.apply(m);
    if a.iter().all(|&x| x == 0) {
        return None;
    }
    let coeffs: Vec<Scalar> = a.iter().map(|&x| Scalar::from(x)).collect();
    let f = table.combination(&coeffs, order.dim());
    let n = uniform_gram_exponent(order, &f)?;
    let form = f.scale(&order.prime().power(-(n as i64)));
    is_symmetrising(order, &form).then(|| MoritaWitness { m: m.to_vec(), a, n, form })
}

/// Lexicographic walk over `[lo, hi]^len`.
fn boxed(len: usize, lo: i64, hi: i64) -> impl Iterator<Item = Vec<i64>> {
    let width = (hi - lo + 1).max(0) as u64;
    let total = if len == 0 { 0 } else { width.checked_pow(len as u32).unwrap_or(u64::MAX) };
    (0..total).map(move |mut k| {
        let mut v = vec![0i64; len];
        for x in v.iter_mut().rev() {
            *x = lo + (k % width) as i64;
            k /= width;
        }
        v
    })
}

/// First positive vector `m` in `[1, bound]^f` giving a symmetrising `p^{-n} Σ (Dm)_χ χ`.
pub fn morita_psp_search(order: &Order, table: &CharacterTable, d: &DecompositionMatrix, bound: i64) -> Option<MoritaWitness> {
    boxed(d.columns(), 1, bound).find_map(|m| try_coefficients(order, table, d, &m))
}

/// As [`morita_psp_search`] over sign-unrestricted vectors in `[-bound, bound]^f`.
pub fn morita_psp_search_integers(order: &Order, table: &CharacterTable, d: &DecompositionMatrix, bound: i64) -> Option<MoritaWitness> {
    boxed(d.columns(), -bound, bound).find_map(|m| try_coefficients(order, table, d, &m))
}

/// Shifts an integer witness to a positive one, `m'_φ = m_φ + p^t`, with `t`
/// large enough that the added form vanishes modulo `p` on Gram entries.
/// Returns the shifted witness when it still certifies.
pub fn shift_to_positive(order: &Order, table: &CharacterTable, d: &DecompositionMatrix, w: &MoritaWitness) -> Option<MoritaWitness> {
    let p = order.prime();
    let min_val = table
        .characters
        .iter()
        .flat_map(|c| c.values.iter())
        .filter_map(|x| x.val(p).finite())
        .min()
        .unwrap_or(0);
    let mut t = (1 + w.n as i64 - min_val).max(0);
    let min_m = w.m.iter().copied().min().unwrap_or(0);
    while p.power(t) <= Scalar::from(-min_m) {
        t += 1;
    }
    let shift = p.power(t).to_i64()?;
    let m: Vec<i64> = w.m.iter().map(|x| x + shift).collect();
    let shifted = try_coefficients(order, table, d, &m)?;
    (shifted.n == w.n).then_some(shifted)
}

/// `Z(A) ∩ Z^rat(KA)` with the eigenvalues `ω_χ(z) = χ(z)/χ(1)` of each basis element.
#[derive(Clone, Debug)]
pub struct RationalCentre {
    pub basis: Vec<Element>,
    /// `omega[j][χ]` for basis element `j`.
    pub omega: Vec<Vec<Scalar>>,
    pub idempotents: Vec<Element>,
}

/// With rational characters every central idempotent is rational, so the
/// rational centre is all of `Z(A)`; the expansion on idempotents is verified.
pub fn rational_centre(order: &Order, table: &CharacterTable) -> Result<RationalCentre> {
    let idempotents = central_idempotents(order, &table.characters)?;
    let basis = order.center_basis();
    let mut omega = Vec::with_capacity(basis.len());
    for z in &basis {
        let w: Vec<Scalar> = table.characters.iter().zip(&table.degrees).map(|(c, deg)| &c.eval(z) / deg).collect();
        let mut expanded = Element::zero(order.dim());
        for (x, e) in w.iter().zip(&idempotents) {
            expanded = &expanded + &e.scale(x);
        }
        if &expanded != z {
            return Err(Error::SystemInconsistent("central element not spanned by the idempotents".into()));
        }
        omega.push(w);
    }
    Ok(RationalCentre { basis, omega, idempotents })
}

/// `σ̃ ∈ Z^rat(A)` and `n` with `p^{-n} Σ σ̃_χ χ` symmetrising.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalWitness {
    /// Coefficients of `σ̃` on the rational-centre basis.
    pub coefficients: Vec<i64>,
    pub sigma: Vec<Scalar>,
    pub n: u32,
    pub form: LinearForm,
}

/// One congruence `Σ c_χ ū_χ ≡ 0 (mod p)` on the residues of the unit parts of
/// the Schur coefficients, forced by integrality on one basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub basis_index: usize,
    /// `(character index, coefficient mod p)`.
    pub terms: Vec<(usize, u64)>,
    /// For two terms `a, b`: the forced residue of `-u_a/u_b`.
    pub ratio: Option<(usize, usize, u64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalSymmetryReport {
    pub witness: Option<RationalWitness>,
    pub schur_valuations: Vec<i64>,
    pub congruences: Vec<Congruence>,
    /// Whether some choice of nonzero residues in `F_p` meets every congruence;
    /// `None` when the enumeration was too large.
    pub satisfiable_in_prime_field: Option<bool>,
}

/// Bounded search for a rational symmetrising form, alongside the congruences
/// on Schur coefficients that any symmetrising form must satisfy.
pub fn rational_symmetry_search(order: &Order, table: &CharacterTable, reference: &LinearForm, bound: i64) -> Result<RationalSymmetryReport> {
    let p = order.prime();
    let centre = rational_centre(order, table)?;
    let mut witness = None;
    // shells of increasing sup norm, so small witnesses come first
    let shells = (1..=bound).flat_map(|r| boxed(centre.basis.len(), -r, r).filter(move |c| c.iter().any(|x| x.abs() == r)));
    for c in shells {
        if let Some(w) = rational_candidate(order, table, &centre, &c) {
            witness = Some(w);
            break;
        }
    }
    let sigma = schur_coefficients(order, reference, &table.characters)?;
    if witness.is_none() && is_symmetrising(order, reference) {
        witness = reference_witness(order, table, &centre, &sigma);
    }
    let mut schur_valuations = Vec::with_capacity(sigma.len());
    for (i, s) in sigma.iter().enumerate() {
        schur_valuations.push(s.val(p).finite().ok_or(Error::ZeroSchurCoefficient(i))?);
    }
    let congruences = schur_congruences(order, table, &schur_valuations);
    let satisfiable_in_prime_field = congruences_satisfiable(&congruences, table.len(), p);
    Ok(RationalSymmetryReport { witness, schur_valuations, congruences, satisfiable_in_prime_field })
}

/// `σ̃ = p^N Σ σ_χ e_χ` for the reference form's Schur coefficients, with `N`
/// least such that `σ̃` lies in the order. Needed when every witness has
/// coefficients outside the search box.
fn reference_witness(order: &Order, table: &CharacterTable, centre: &RationalCentre, sigma: &[Scalar]) -> Option<RationalWitness> {
    let p = order.prime();
    let mut z = Element::zero(order.dim());
    for (x, e) in sigma.iter().zip(&centre.idempotents) {
        z = &z + &e.scale(x);
    }
    let flat: Vec<Vec<Scalar>> = centre.basis.iter().map(|e| e.coords.clone()).collect();
    let coords = coordinates(&z.coords, &flat)?;
    let lowest = coords.iter().filter_map(|c| c.val(p).finite()).min()?;
    let scale = p.power((-lowest).max(0));
    let c: Option<Vec<i64>> = coords.iter().map(|x| (x * &scale).to_i64()).collect();
    rational_candidate(order, table, centre, &c?)
}

fn rational_candidate(order: &Order, table: &CharacterTable, centre: &RationalCentre, c: &[i64]) -> Option<RationalWitness> {
    let r = table.len();
    let mut sigma = vec![Scalar::zero(); r];
    for (x, w) in c.iter().zip(&centre.omega) {
        for (s, o) in sigma.iter_mut().zip(w) {
            *s += &(o * &Scalar::from(*x));
        }
    }
    // σ̃ = Σ σ̃_χ e_χ, so σ̃_χ is the eigenvalue ω_χ(σ̃)
    if sigma.iter().any(Scalar::is_zero) {
        return None;
    }
    let f = table.combination(&sigma, order.dim());
    let n = uniform_gram_exponent(order, &f)?;
    let form = f.scale(&order.prime().power(-(n as i64)));
    is_symmetrising(order, &form).then(|| RationalWitness { coefficients: c.to_vec(), sigma, n, form })
}

/// Writing any symmetrising form's Schur coefficients as `p^{k_χ} u_χ` with
/// units `u_χ`, integrality on `b` forces the lowest-valuation terms to cancel.
fn schur_congruences(order: &Order, table: &CharacterTable, k: &[i64]) -> Vec<Congruence> {
    let p = order.prime();
    let mut out = Vec::new();
    for b in 0..order.dim() {
        let terms: Vec<(usize, Scalar)> = table
            .characters
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.values[b].is_zero())
            .map(|(i, c)| (i, &c.values[b] * &p.power(k[i])))
            .collect();
        let lowest = terms.iter().filter_map(|(_, x)| x.val(p).finite()).min();
        let Some(m) = lowest else { continue };
        if m >= 0 {
            continue;
        }
        let scale = p.power(-m);
        let reduced: Vec<(usize, u64)> = terms
            .iter()
            .filter(|(_, x)| x.val(p) == Valuation::Finite(m))
            .map(|(i, x)| (*i, (x * &scale).residue(p).expect("scaled to a unit")))
            .collect();
        let ratio = match reduced.as_slice() {
            // c_a u_a + c_b u_b ≡ 0  ⇒  -u_a/u_b ≡ c_b / c_a
            [(a, ca), (b2, cb)] => {
                let inv = Scalar::from(*ca as i64).recip().expect("unit residue");
                Some((*a, *b2, (&Scalar::from(*cb as i64) * &inv).residue(p).expect("integral")))
            }
            _ => None,
        };
        out.push(Congruence { basis_index: b, terms: reduced, ratio });
    }
    out
}

fn congruences_satisfiable(congruences: &[Congruence], r: usize, p: Prime) -> Option<bool> {
    let units = p.get() - 1;
    if units.checked_pow(r as u32)? > 1_000_000 {
        return None;
    }
    let pp = p.get();
    let ok = all_vectors(r, p).filter(|u| u.iter().all(|&x| x != 0)).any(|u| {
        congruences.iter().all(|c| c.terms.iter().fold(0u64, |acc, &(i, coef)| (acc + coef * u[i]) % pp) == 0)
    });
    Some(ok)
}

/// A maximal ideal of the rational centre, as a lattice basis of central elements.
#[derive(Clone, Debug)]
pub struct MaximalIdeal {
    pub basis: Vec<Element>,
}

/// Maximal ideals of `Z^rat(A)`: preimages of `J + (1-ε)R` for the primitive
/// idempotents `ε` of the residue algebra `R = Z^rat(A)/p`.
pub fn maximal_ideals(order: &Order, centre: &RationalCentre, max_dim: usize) -> Result<Vec<MaximalIdeal>> {
    let p = order.prime();
    let k = centre.basis.len();
    if k > max_dim {
        return Err(Error::ResourceBound(format!("maximal ideal enumeration bound exceeded: dimension {k} exceeds {max_dim}")));
    }
    let flat: Vec<Vec<Scalar>> = centre.basis.iter().map(|e| e.coords.clone()).collect();
    let mut c = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let prod = order.multiply(&centre.basis[i], &centre.basis[j]);
            let coords = coordinates(&prod.coords, &flat).ok_or(Error::NotSublattice)?;
            c[i][j] = reduce_vec(&coords, p).ok_or_else(|| Error::NonIntegral("rational centre product".into()))?;
        }
    }
    let alg = FpAlgebra { p, dim: k, c };
    let one = reduce_vec(&coordinates(&order.one().coords, &flat).ok_or(Error::NotSublattice)?, p)
        .ok_or_else(|| Error::NonIntegral("unit".into()))?;
    let radical = alg.radical_exhaustive();
    let idempotents: Vec<FpVec> = all_vectors(k, p).filter(|x| x.iter().any(|&v| v != 0) && alg.mul(x, x) == *x).collect();
    let primitive: Vec<&FpVec> = idempotents
        .iter()
        .filter(|e| !idempotents.iter().any(|f| f != *e && alg.mul(f, e) == *f))
        .collect();
    let pp = p.get();
    let mut out = Vec::with_capacity(primitive.len());
    for e in primitive {
        let complement: FpVec = one.iter().zip(e).map(|(a, b)| (a + pp - b) % pp).collect();
        let mut gens: Vec<FpVec> = radical.clone();
        gens.extend((0..k).map(|i| {
            let mut b = vec![0; k];
            b[i] = 1;
            alg.mul(&complement, &b)
        }));
        let ideal = row_basis(&gens, p);
        let mut lifts: Vec<Vec<Scalar>> = ideal.iter().map(|v| v.iter().map(|&x| Scalar::from(x as i64)).collect()).collect();
        lifts.extend((0..k).map(|i| {
            let mut v = vec![Scalar::zero(); k];
            v[i] = Scalar::from(pp as i64);
            v
        }));
        let coords = span_basis(&lifts, k, p)?;
        let basis = coords
            .iter()
            .map(|c| {
                let mut e = Element::zero(order.dim());
                for (x, b) in c.iter().zip(&centre.basis) {
                    e = &e + &b.scale(x);
                }
                e
            })
            .collect();
        out.push(MaximalIdeal { basis });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub sigma: Vec<Scalar>,
    pub maximal_ideals: usize,
    /// Per maximal ideal, whether the intersection drops.
    pub proper: Vec<bool>,
    pub verdict: bool,
}

/// `V ∩ L(S)` where `V` is the rational span of the decomposition-column
/// functionals and `L(S) = {Σ σ̃_χ ω_χ(z) χ : z ∈ S}`, in character coordinates.
fn intersection(d: &DecompositionMatrix, sigma: &[Scalar], omega: &[Vec<Scalar>], p: Prime) -> Vec<Vec<Scalar>> {
    let r = sigma.len();
    let gens: Vec<Vec<Scalar>> = omega.iter().map(|w| w.iter().zip(sigma).map(|(a, b)| a * b).collect()).collect();
    let columns: Vec<Vec<Scalar>> =
        (0..d.columns()).map(|j| d.rows.iter().map(|row| Scalar::from(row[j] as i64)).collect()).collect();
    // rows of `ann` span the annihilator of V
    let ann = Matrix::from_rows(columns.clone()).kernel();
    let w = Matrix::from_columns(&gens, r);
    let kernel = if ann.is_empty() {
        (0..gens.len())
            .map(|i| {
                let mut v = vec![Scalar::zero(); gens.len()];
                v[i] = Scalar::one();
                v
            })
            .collect()
    } else {
        integral_kernel(&Matrix::from_rows(ann).mul(&w), p)
    };
    kernel.iter().map(|c| w.mul_vec(c)).collect()
}

/// Decides the projective scalar property of a rationally symmetric order by
/// comparing the intersection for the rational centre with those for its
/// maximal ideals.
pub fn rational_intersection_criterion(
    order: &Order,
    table: &CharacterTable,
    d: &DecompositionMatrix,
    witness: &RationalWitness,
    max_dim: usize,
) -> Result<IntersectionReport> {
    let p = order.prime();
    let centre = rational_centre(order, table)?;
    let ideals = maximal_ideals(order, &centre, max_dim)?;
    let omega_of = |z: &Element| -> Vec<Scalar> {
        table.characters.iter().zip(&table.degrees).map(|(c, deg)| &c.eval(z) / deg).collect()
    };
    let full = intersection(d, &witness.sigma, &centre.omega, p);
    let mut proper = Vec::with_capacity(ideals.len());
    for ideal in &ideals {
        let omega: Vec<Vec<Scalar>> = ideal.basis.iter().map(&omega_of).collect();
        let sub = intersection(d, &witness.sigma, &omega, p);
        proper.push(full.iter().any(|v| !in_lattice(v, &sub, p)));
    }
    let verdict = proper.iter().all(|&x| x);
    Ok(IntersectionReport { sigma: witness.sigma.clone(), maximal_ideals: ideals.len(), proper, verdict })
}

/// `h = ν(rank) − min_χ ν(χ(1))`.
pub fn height(rank: &Scalar, degrees: &[Scalar], p: Prime) -> Result<i64> {
    let min = degrees
        .iter()
        .filter_map(|d| d.val(p).finite())
        .min()
        .ok_or_else(|| Error::InvalidCharacters("no nonzero degrees".into()))?;
    let v = rank.val(p).finite().ok_or(Error::NegativeHeight)?;
    let h = v - min;
    if h < 0 {
        return Err(Error::NegativeHeight);
    }
    Ok(h)
}

/// Rank data and verdicts for one lattice, as consumed by the degree checks.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeFacts {
    pub name: String,
    pub rank: u64,
    pub knorr: bool,
    pub projective: bool,
    pub exponent: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityReport {
    /// `(lattice, ν(rank), bound)` for each Knörr lattice: `ν(rank) ≤ n`.
    pub knorr: Vec<(String, i64, u32)>,
    /// Projective lattices: `ν(rank) ≥ n`.
    pub projective: Vec<(String, i64, u32)>,
}

/// Knörr ranks divide `p^n`, projective ranks are divisible by it.
pub fn degree_divisibility_checks(n: u32, lattices: &[LatticeFacts], p: Prime) -> Result<DivisibilityReport> {
    let mut report = DivisibilityReport { knorr: Vec::new(), projective: Vec::new() };
    for l in lattices {
        let v = Scalar::from(l.rank as i64).val(p).finite().expect("positive rank");
        if l.knorr {
            if v > n as i64 {
                return Err(Error::Violation(format!("Knörr lattice {} has rank valuation {v} > {n}", l.name)));
            }
            report.knorr.push((l.name.clone(), v, n));
        }
        if l.projective {
            if v < n as i64 {
                return Err(Error::Violation(format!("projective lattice {} has rank valuation {v} < {n}", l.name)));
            }
            report.projective.push((l.name.clone(), v, n));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MinDegreeVerdict {
    /// Index of a character with `ν(χ(1)) = n − a₀`.
    Found(usize),
    /// No such character; the lattice list may miss the extremal lattice.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinDegreeReport {
    pub a0: u32,
    pub target: i64,
    pub verdict: MinDegreeVerdict,
}

/// Looks for a character of degree valuation `n − a₀`, with `a₀` the largest
/// exponent in the supplied list.
pub fn min_degree_check(degrees: &[Scalar], n: u32, lattices: &[LatticeFacts], p: Prime) -> MinDegreeReport {
    let a0 = lattices.iter().map(|l| l.exponent).max().unwrap_or(0);
    let target = n as i64 - a0 as i64;
    let verdict = degrees
        .iter()
        .position(|d| d.val(p) == Valuation::Finite(target))
        .map_or(MinDegreeVerdict::Inconclusive, MinDegreeVerdict::Found);
    MinDegreeReport { a0, target, verdict }
}

/// Heights of Morita-paired ranks, each measured in its own table.
pub fn height_invariance_check(
    degrees_a: &[Scalar],
    degrees_b: &[Scalar],
    pairs: &[(Scalar, Scalar)],
    p: Prime,
) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(pairs.len());
    for (ra, rb) in pairs {
        let (ha, hb) = (height(ra, degrees_a, p)?, height(rb, degrees_b, p)?);
        if ha != hb {
            return Err(Error::HeightMismatch(format!("rank {ra} has height {ha}, rank {rb} has height {hb}")));
        }
        out.push(ha);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_box() {
        let v: Vec<Vec<i64>> = boxed(2, 1, 2).collect();
        assert_eq!(v, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert_eq!(boxed(2, 1, 0).count(), 0);
    }

    #[test]
    fn heights() {
        let p = Prime::new(3).unwrap();
        let deg: Vec<Scalar> = [1, 3, 2].iter().map(|&x| Scalar::from(x)).collect();
        assert_eq!(height(&Scalar::from(3), &deg, p), Ok(1));
        assert_eq!(height(&Scalar::from(2), &deg, p), Ok(0));
        let deg3: Vec<Scalar> = [3, 9].iter().map(|&x| Scalar::from(x)).collect();
        assert_eq!(height(&Scalar::from(1), &deg3, p), Err(Error::NegativeHeight));
    }
}
