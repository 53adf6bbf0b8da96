//! Symmetrising forms, dual bases, Casimir elements and the projective
//! scalar property.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integral::smith_normal_form;
use crate::matrix::Matrix;
use crate::order::{Element, Order};
use crate::scalar::{Scalar, Valuation};

/// A `K`-linear functional, by its values on the order's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm {
    pub values: Vec<Scalar>,
}

impl LinearForm {
    pub fn new(values: Vec<Scalar>) -> Self {
        LinearForm { values }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        LinearForm { values: xs.iter().map(|&x| Scalar::from(x)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn eval(&self, a: &Element) -> Scalar {
        self.values.iter().zip(&a.coords).filter(|(_, x)| !x.is_zero()).map(|(v, x)| v * x).sum()
    }

    pub fn scale(&self, c: &Scalar) -> LinearForm {
        LinearForm { values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    /// `Σ c_i f_i`.
    pub fn combination(coeffs: &[Scalar], forms: &[LinearForm], dim: usize) -> LinearForm {
        let mut out = vec![Scalar::zero(); dim];
        for (c, f) in coeffs.iter().zip(forms) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(&f.values) {
                *o += &(c * v);
            }
        }
        LinearForm::new(out)
    }

    /// The regular character of `A` as a form.
    pub fn regular(order: &Order) -> LinearForm {
        LinearForm::new((0..order.dim()).map(|i| order.regular_character(&order.basis_element(i))).collect())
    }
}

/// `G_ij = s(b_i b_j)`.
pub fn gram_matrix(order: &Order, s: &LinearForm) -> Matrix {
    let d = order.dim();
    let mut g = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            g[(i, j)] = s.eval(&order.basis_product(i, j));
        }
    }
    g
}

pub fn is_trace_form(order: &Order, s: &LinearForm) -> bool {
    let g = gram_matrix(order, s);
    g == g.transpose()
}

/// Trace property on basis pairs, and an integral Gram matrix of unit determinant.
pub fn is_symmetrising(order: &Order, s: &LinearForm) -> bool {
    if s.dim() != order.dim() {
        return false;
    }
    let g = gram_matrix(order, s);
    g == g.transpose() && g.is_integral(order.prime()) && g.determinant().is_unit(order.prime())
}

/// A symmetrising form with its dual basis: `s(b_i · dual_j) = δ_ij`.
#[derive(Clone, Debug)]
pub struct DualBasis {
    pub form: LinearForm,
    pub dual: Vec<Element>,
}

pub fn dual_basis(order: &Order, s: &LinearForm) -> Result<DualBasis> {
    if !is_symmetrising(order, s) {
        return Err(Error::FormNotSymmetrising);
    }
    let d = order.dim();
    let ginv = gram_matrix(order, s).inverse().ok_or(Error::FormNotSymmetrising)?;
    let dual: Vec<Element> = (0..d).map(|j| Element::new(ginv.column(j))).collect();
    for i in 0..d {
        for (j, x) in dual.iter().enumerate() {
            let v = s.eval(&order.multiply(&order.basis_element(i), x));
            let expected = if i == j { Scalar::one() } else { Scalar::zero() };
            if v != expected {
                return Err(Error::FormNotSymmetrising);
            }
        }
    }
    Ok(DualBasis { form: s.clone(), dual })
}

impl DualBasis {
    /// `Σ b_i · a · b_i^∨`.
    pub fn relative_trace(&self, order: &Order, a: &Element) -> Element {
        let mut out = Element::zero(order.dim());
        for (i, x) in self.dual.iter().enumerate() {
            let ba = order.multiply(&order.basis_element(i), a);
            out = &out + &order.multiply(&ba, x);
        }
        out
    }

    pub fn casimir(&self, order: &Order) -> Element {
        self.relative_trace(order, order.one())
    }
}

/// `Σ b_i b_i^∨`, checked against `Σ b_i^∨ b_i` and for centrality.
pub fn casimir(order: &Order, s: &LinearForm) -> Result<Element> {
    let db = dual_basis(order, s)?;
    let z = db.casimir(order);
    let mut other = Element::zero(order.dim());
    for (i, x) in db.dual.iter().enumerate() {
        other = &other + &order.multiply(x, &order.basis_element(i));
    }
    if other != z || !order.is_central(&z) || !z.is_integral(order.prime()) {
        return Err(Error::FormNotSymmetrising);
    }
    Ok(z)
}

pub fn relative_trace(order: &Order, s: &LinearForm, a: &Element) -> Result<Element> {
    Ok(dual_basis(order, s)?.relative_trace(order, a))
}

/// `s_z(a) = s(z a)` for a central unit `z`.
pub fn twist_form(order: &Order, s: &LinearForm, z: &Element) -> Result<LinearForm> {
    if !order.is_central(z) || !order.is_unit(z) {
        return Err(Error::NotCentralUnit);
    }
    Ok(LinearForm::new((0..order.dim()).map(|i| s.eval(&order.multiply(z, &order.basis_element(i)))).collect()))
}

/// The Casimir element of `s` is invertible in `K ⊗ A`.
pub fn separability_check(order: &Order, s: &LinearForm) -> Result<bool> {
    let z = casimir(order, s)?;
    Ok(order.invert(&z).is_ok())
}

/// A symmetrising form whose Casimir element is `p^n · 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PspCertificate {
    pub n: u32,
    pub witness: LinearForm,
    pub scalar: Scalar,
}

impl PspCertificate {
    /// Re-checks the certificate from scratch.
    pub fn verify(&self, order: &Order) -> bool {
        is_symmetrising(order, &self.witness)
            && self.scalar == order.prime().power(self.n as i64)
            && casimir(order, &self.witness).map(|z| z == order.scalar(&self.scalar)).unwrap_or(false)
    }
}

/// Decides the projective scalar property through the orbit of the Casimir
/// element under central units: some `p^{-t} z` is a unit of `A`.
pub fn psp_direct(order: &Order, s: &LinearForm) -> Result<Option<PspCertificate>> {
    let p = order.prime();
    let z = casimir(order, s)?;
    let zinv = order.invert(&z)?;
    // p^{-t} z integral forces t ≤ min valuation of the coordinates of z
    let bound = match z.coords.iter().map(|c| c.val(p)).min() {
        Some(Valuation::Finite(v)) => v,
        _ => return Err(Error::NotInvertible),
    };
    for t in 0..=bound {
        let u = z.scale(&p.power(-t));
        let uinv = zinv.scale(&p.power(t));
        if u.is_integral(p) && uinv.is_integral(p) {
            let witness = twist_form(order, s, &u)?;
            let scalar = p.power(t);
            let cert = PspCertificate { n: t as u32, witness, scalar };
            debug_assert!(cert.verify(order));
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Smith exponents of the regular Gram matrix, with the certificate for
/// `p^{-n} ρ` when they all equal `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularGramReport {
    pub exponents: Vec<u32>,
    pub certificate: Option<PspCertificate>,
}

/// Decides the projective scalar property from the regular character alone.
/// Assumes `K ⊗ A` split semisimple.
pub fn psp_regular_gram(order: &Order) -> Result<RegularGramReport> {
    let p = order.prime();
    let rho = LinearForm::regular(order);
    let g = gram_matrix(order, &rho);
    if g.determinant().is_zero() {
        return Err(Error::RegularGramSingular);
    }
    let snf = smith_normal_form(&g, p)?;
    let exponents = snf.exponents.clone();
    let n = exponents[0];
    if exponents.iter().any(|&e| e != n) {
        return Ok(RegularGramReport { exponents, certificate: None });
    }
    let witness = rho.scale(&p.power(-(n as i64)));
    let scalar = p.power(n as i64);
    let cert = PspCertificate { n, witness, scalar };
    if !cert.verify(order) {
        return Err(Error::Precondition(format!(
            "regular Gram exponents all equal {n} but the Casimir of p^-{n}ρ is not p^{n}·1; K⊗A is not split"
        )));
    }
    Ok(RegularGramReport { exponents, certificate: Some(cert) })
}

/// `σ` with `s = Σ σ_χ χ`.
pub fn schur_coefficients(order: &Order, s: &LinearForm, characters: &[LinearForm]) -> Result<Vec<Scalar>> {
    let d = order.dim();
    if characters.iter().any(|c| c.dim() != d) || s.dim() != d {
        return Err(Error::Shape("character and form lengths must equal the order dimension".into()));
    }
    let cols: Vec<Vec<Scalar>> = characters.iter().map(|c| c.values.clone()).collect();
    let m = Matrix::from_columns(&cols, d);
    if m.rank() != characters.len() {
        return Err(Error::CharactersDoNotSpan);
    }
    m.solve(&s.values).ok_or(Error::CharactersDoNotSpan)
}

/// `σ_χ^{-1} χ(1)`, the coefficient of the Casimir element on each central idempotent.
pub fn spectrum_from_schur(sigma: &[Scalar], degrees: &[Scalar]) -> Result<Vec<Scalar>> {
    sigma
        .iter()
        .zip(degrees)
        .enumerate()
        .map(|(i, (s, d))| s.recip().map(|r| &r * d).ok_or(Error::ZeroSchurCoefficient(i)))
        .collect()
}

/// Whether some central unit rescales a Casimir element with this spectrum
/// to a scalar: unit twists leave the valuation of each coordinate unchanged.
pub fn spectrum_is_scalarizable(spectrum: &[Scalar], p: crate::scalar::Prime) -> bool {
    let mut vals = spectrum.iter().map(|x| x.val(p));
    match vals.next() {
        Some(Valuation::Finite(v)) => vals.all(|w| w == Valuation::Finite(v)),
        _ => false,
    }
}

pub fn casimir_spectrum(order: &Order, s: &LinearForm, characters: &[LinearForm]) -> Result<Vec<Scalar>> {
    let sigma = schur_coefficients(order, s, characters)?;
    let degrees: Vec<Scalar> = characters.iter().map(|c| c.eval(order.one())).collect();
    let spectrum = spectrum_from_schur(&sigma, &degrees)?;
    if let (Ok(z), Ok(idem)) = (casimir(order, s), central_idempotents(order, characters)) {
        let mut expanded = Element::zero(order.dim());
        for (c, e) in spectrum.iter().zip(&idem) {
            expanded = &expanded + &e.scale(c);
        }
        if expanded != z {
            return Err(Error::SystemInconsistent("Casimir spectrum disagrees with the Casimir element".into()));
        }
    }
    Ok(spectrum)
}

/// Central idempotents `e(χ)` with `χ(e(χ)) = χ(1)` and `χ'(e(χ)) = 0`.
pub fn central_idempotents(order: &Order, characters: &[LinearForm]) -> Result<Vec<Element>> {
    let d = order.dim();
    let r = characters.len();
    // commutator rows, then one row per character
    let mut m = Matrix::zeros(d * d + r, d);
    for i in 0..d {
        for k in 0..d {
            for j in 0..d {
                m[(i * d + k, j)] = order.c(j, i, k) - order.c(i, j, k);
            }
        }
    }
    for (c, chi) in characters.iter().enumerate() {
        for j in 0..d {
            m[(d * d + c, j)] = chi.values[j].clone();
        }
    }
    if m.rank() != d {
        return Err(Error::SystemInconsistent("characters do not separate the centre".into()));
    }
    let mut out = Vec::with_capacity(r);
    for c in 0..r {
        let mut rhs = vec![Scalar::zero(); d * d + r];
        rhs[d * d + c] = characters[c].eval(order.one());
        let e = m
            .solve(&rhs)
            .map(Element::new)
            .ok_or_else(|| Error::SystemInconsistent(format!("no central idempotent for character {c}")))?;
        if !order.is_idempotent(&e) || e.is_zero() {
            return Err(Error::SystemInconsistent(format!("solution for character {c} is not idempotent")));
        }
        out.push(e);
    }
    Ok(out)
}

/// `n` when `z = p^n · 1`.
pub fn scalar_exponent(order: &Order, z: &Element) -> Option<u32> {
    let i = order.one().coords.iter().position(|c| !c.is_zero())?;
    let c = &z.coords[i] / &order.one().coords[i];
    if z != &order.scalar(&c) {
        return None;
    }
    match c.split_unit(order.prime())? {
        (n, u) if n >= 0 && u.is_one() => Some(n as u32),
        _ => None,
    }
}

/// Convenience bundle of the data attached to a symmetrising form.
#[derive(Clone, Debug)]
pub struct SymmetricData {
    pub form: LinearForm,
    pub dual: DualBasis,
    pub casimir: Element,
    pub casimir_inverse: Option<Element>,
}

impl SymmetricData {
    pub fn new(order: &Order, s: &LinearForm) -> Result<Self> {
        let dual = dual_basis(order, s)?;
        let casimir = casimir(order, s)?;
        let casimir_inverse = order.invert(&casimir).ok();
        Ok(SymmetricData { form: s.clone(), dual, casimir, casimir_inverse })
    }
}

/// Smith exponents of a form's Gram matrix, when integral and nondegenerate.
pub fn gram_exponents(order: &Order, s: &LinearForm) -> Option<Vec<u32>> {
    let g = gram_matrix(order, s);
    if g.determinant().is_zero() {
        return None;
    }
    smith_normal_form(&g, order.prime()).ok().map(|f| f.exponents)
}

/// Common Smith exponent `n` of an integral nondegenerate form, if all agree.
pub fn uniform_gram_exponent(order: &Order, s: &LinearForm) -> Option<u32> {
    let e = gram_exponents(order, s)?;
    let n = *e.first()?;
    e.iter().all(|&x| x == n).then_some(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Prime;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    /// `O[t]/(t²)`.
    fn dual_numbers(prime: Prime) -> Order {
        let z = Scalar::zero;
        let o = Scalar::one;
        let s = vec![vec![vec![o(), z()], vec![z(), o()]], vec![vec![z(), o()], vec![z(), z()]]];
        Order::new(prime, 2, s, vec![o(), z()]).unwrap()
    }

    #[test]
    fn dual_numbers_are_not_separable() {
        let a = dual_numbers(p(2));
        let s = LinearForm::from_ints(&[0, 1]);
        assert!(is_symmetrising(&a, &s));
        assert_eq!(casimir(&a, &s).unwrap(), Element::from_ints(&[0, 2]));
        assert!(!separability_check(&a, &s).unwrap());
        assert_eq!(psp_regular_gram(&a), Err(Error::RegularGramSingular));
    }

    #[test]
    fn one_dimensional() {
        let a = Order::new(p(5), 1, vec![vec![vec![Scalar::one()]]], vec![Scalar::one()]).unwrap();
        let s = LinearForm::from_ints(&[1]);
        assert_eq!(dual_basis(&a, &s).unwrap().dual, vec![Element::from_ints(&[1])]);
        let cert = psp_direct(&a, &s).unwrap().unwrap();
        assert_eq!(cert.n, 0);
        assert!(!is_symmetrising(&a, &LinearForm::from_ints(&[5])));
        assert_eq!(twist_form(&a, &s, &Element::from_ints(&[5])), Err(Error::NotCentralUnit));
        assert_eq!(central_idempotents(&a, std::slice::from_ref(&s)).unwrap(), vec![Element::from_ints(&[1])]);
        assert_eq!(schur_coefficients(&a, &s, std::slice::from_ref(&s)).unwrap(), vec![Scalar::one()]);
    }

    #[test]
    fn zero_schur_coefficient() {
        let r = spectrum_from_schur(&[Scalar::one(), Scalar::zero()], &[Scalar::one(), Scalar::one()]);
        assert_eq!(r, Err(Error::ZeroSchurCoefficient(1)));
    }
}
