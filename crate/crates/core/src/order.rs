//! Orders given by integral structure constants.

use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::integral::{coordinates, integral_kernel, saturate};
use crate::matrix::Matrix;
use crate::scalar::{Prime, Scalar};

/// An element of `K ⊗ A`, by coordinates on the order's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element { coords }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Element { coords: xs.iter().map(|&x| Scalar::from(x)).collect() }
    }

    pub fn zero(dim: usize) -> Self {
        Element { coords: vec![Scalar::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Element::zero(dim);
        e.coords[i] = Scalar::one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Coordinates in the valuation ring, i.e. the element lies in `A`.
    pub fn is_integral(&self, p: Prime) -> bool {
        self.coords.iter().all(|x| x.is_integral(p))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element { coords: self.coords.iter().map(|x| x * c).collect() }
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        Element { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

/// A unital associative algebra, free of finite rank over `Z_(p)`, with
/// `b_i · b_j = Σ_k structure[i][j][k] · b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order {
    prime: Prime,
    dim: usize,
    structure: Vec<Scalar>,
    one: Element,
}

impl Order {
    /// Validates integrality, the unit law and associativity on all basis triples.
    pub fn new(prime: Prime, dim: usize, structure: Vec<Vec<Vec<Scalar>>>, one: Vec<Scalar>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Shape("order dimension must be positive".into()));
        }
        if structure.len() != dim
            || structure.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim))
            || one.len() != dim
        {
            return Err(Error::Shape(format!("structure constants must be {dim}×{dim}×{dim}")));
        }
        let flat: Vec<Scalar> = structure.into_iter().flatten().flatten().collect();
        Order::from_flat(prime, dim, flat, one)
    }

    pub fn from_flat(prime: Prime, dim: usize, structure: Vec<Scalar>, one: Vec<Scalar>) -> Result<Self> {
        if structure.len() != dim * dim * dim || one.len() != dim {
            return Err(Error::Shape(format!("structure constants must have {} entries", dim * dim * dim)));
        }
        let order = Order { prime, dim, structure, one: Element::new(one) };
        order.validate()?;
        Ok(order)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if !self.c(i, j, k).is_integral(self.prime) {
                        return Err(Error::NonIntegralStructure { i, j, k });
                    }
                }
            }
        }
        for i in 0..d {
            let b = Element::basis(d, i);
            if self.multiply(&self.one, &b) != b || self.multiply(&b, &self.one) != b {
                return Err(Error::UnitFails(i));
            }
        }
        // (b_i b_j) b_k = b_i (b_j b_k), coefficientwise
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for m in 0..d {
                        let mut lhs = Scalar::zero();
                        let mut rhs = Scalar::zero();
                        for l in 0..d {
                            let a = self.c(i, j, l);
                            if !a.is_zero() {
                                let b = self.c(l, k, m);
                                if !b.is_zero() {
                                    lhs += &(a * b);
                                }
                            }
                            let a = self.c(j, k, l);
                            if !a.is_zero() {
                                let b = self.c(i, l, m);
                                if !b.is_zero() {
                                    rhs += &(a * b);
                                }
                            }
                        }
                        if lhs != rhs {
                            return Err(Error::NotAssociative { i, j, k });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &Element {
        &self.one
    }

    /// Structure constant `c_{ijk}`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_nested(&self) -> Vec<Vec<Vec<Scalar>>> {
        let d = self.dim;
        (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| self.c(i, j, k).clone()).collect()).collect()).collect()
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.dim, i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        Element::new((0..self.dim).map(|k| self.c(i, j, k).clone()).collect())
    }

    pub fn scalar(&self, c: &Scalar) -> Element {
        self.one.scale(c)
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let d = self.dim;
        let mut out = vec![Scalar::zero(); d];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &(&xy * c);
                    }
                }
            }
        }
        Element::new(out)
    }

    /// Matrix of `x ↦ a·x`; column `j` holds the coordinates of `a·b_j`.
    pub fn left_regular_matrix(&self, a: &Element) -> Matrix {
        let d = self.dim;
        Matrix::from_columns(&(0..d).map(|j| self.multiply(a, &self.basis_element(j)).coords).collect::<Vec<_>>(), d)
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_regular_matrix(&self, a: &Element) -> Matrix {
        let d = self.dim;
        Matrix::from_columns(&(0..d).map(|j| self.multiply(&self.basis_element(j), a).coords).collect::<Vec<_>>(), d)
    }

    /// The regular character: trace of left multiplication.
    pub fn regular_character(&self, a: &Element) -> Scalar {
        self.left_regular_matrix(a).trace()
    }

    /// Saturated basis of `Z(A)`.
    pub fn center_basis(&self) -> Vec<Element> {
        let d = self.dim;
        // row (i, k): Σ_j z_j (c_jik − c_ijk) = 0
        let mut m = Matrix::zeros(d * d, d);
        for i in 0..d {
            for k in 0..d {
                for j in 0..d {
                    m[(i * d + k, j)] = self.c(j, i, k) - self.c(i, j, k);
                }
            }
        }
        integral_kernel(&m, self.prime).into_iter().map(Element::new).collect()
    }

    /// The inverse of `a` in `K ⊗ A`.
    pub fn invert(&self, a: &Element) -> Result<Element> {
        let l = self.left_regular_matrix(a);
        let inv = l.inverse().ok_or(Error::NotInvertible)?;
        let b = Element::new(inv.mul_vec(&self.one.coords));
        if self.multiply(&b, a) != self.one {
            return Err(Error::NotInvertible);
        }
        Ok(b)
    }

    /// Unit of `A`: integral with unit determinant of left multiplication.
    pub fn is_unit(&self, a: &Element) -> bool {
        a.is_integral(self.prime) && self.left_regular_matrix(a).determinant().is_unit(self.prime)
    }

    pub fn is_idempotent(&self, a: &Element) -> bool {
        &self.multiply(a, a) == a
    }

    pub fn is_central(&self, a: &Element) -> bool {
        (0..self.dim).all(|i| {
            let b = self.basis_element(i);
            self.multiply(a, &b) == self.multiply(&b, a)
        })
    }

    /// Coordinates of a `K`-multiple-free element in this order's basis; used
    /// by tests and builders that describe elements by an ambient embedding.
    pub fn coordinates_in(&self, v: &[Scalar], embedding: &Matrix) -> Option<Element> {
        embedding.solve_unique(v).map(Element::new)
    }

    /// The order `eAe` on a saturated basis of `e·A·e`, with its unit `e`.
    pub fn condense(&self, e: &Element) -> Result<Condensation> {
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        if e.is_zero() {
            return Err(Error::Precondition("condensing idempotent must be nonzero".into()));
        }
        if !e.is_integral(self.prime) {
            return Err(Error::NonIntegral("condensing idempotent".into()));
        }
        let d = self.dim;
        let spanning: Vec<Vec<Scalar>> =
            (0..d).map(|i| self.multiply(&self.multiply(e, &self.basis_element(i)), e).coords).collect();
        let basis = saturate(&spanning, d, self.prime);
        let r = basis.len();
        let mut structure = vec![Scalar::zero(); r * r * r];
        for i in 0..r {
            for j in 0..r {
                let prod = self.multiply(&Element::new(basis[i].clone()), &Element::new(basis[j].clone()));
                let c = coordinates(&prod.coords, &basis).expect("eAe is closed under multiplication");
                for (k, x) in c.into_iter().enumerate() {
                    structure[(i * r + j) * r + k] = x;
                }
            }
        }
        let one = coordinates(&e.coords, &basis).expect("e lies in eAe");
        let order = Order::from_flat(self.prime, r, structure, one)?;
        Ok(Condensation { order, embedding: Matrix::from_columns(&basis, d) })
    }

    pub fn direct_product(&self, other: &Order) -> Result<Order> {
        if self.prime != other.prime {
            return Err(Error::Shape("orders over different primes".into()));
        }
        let (a, b) = (self.dim, other.dim);
        let n = a + b;
        let mut s = vec![Scalar::zero(); n * n * n];
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    s[(i * n + j) * n + k] = self.c(i, j, k).clone();
                }
            }
        }
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    s[((a + i) * n + a + j) * n + a + k] = other.c(i, j, k).clone();
                }
            }
        }
        let one = self.one.coords.iter().chain(&other.one.coords).cloned().collect();
        Order::from_flat(self.prime, n, s, one)
    }

    /// Basis `b_i ⊗ b'_j` at index `i·dim(B) + j`.
    pub fn tensor_product(&self, other: &Order) -> Result<Order> {
        if self.prime != other.prime {
            return Err(Error::Shape("orders over different primes".into()));
        }
        let (a, b) = (self.dim, other.dim);
        let n = a * b;
        let mut s = vec![Scalar::zero(); n * n * n];
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    let x = self.c(i, j, k);
                    if x.is_zero() {
                        continue;
                    }
                    for i2 in 0..b {
                        for j2 in 0..b {
                            for k2 in 0..b {
                                let y = other.c(i2, j2, k2);
                                if !y.is_zero() {
                                    s[((i * b + i2) * n + j * b + j2) * n + k * b + k2] = x * y;
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut one = vec![Scalar::zero(); n];
        for i in 0..a {
            for j in 0..b {
                one[i * b + j] = &self.one.coords[i] * &other.one.coords[j];
            }
        }
        Order::from_flat(self.prime, n, s, one)
    }
}

/// Result of [`Order::condense`].
#[derive(Clone, Debug)]
pub struct Condensation {
    pub order: Order,
    /// Columns are the `eAe` basis vectors in coordinates of `A`.
    pub embedding: Matrix,
}

impl Condensation {
    pub fn to_ambient(&self, x: &Element) -> Element {
        Element::new(self.embedding.mul_vec(&x.coords))
    }
}
