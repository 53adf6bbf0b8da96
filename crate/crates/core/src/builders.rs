//! Example orders with their forms, characters, decomposition data and lattices.

use crate::character::{CharacterTable, DecompositionMatrix};
use crate::error::{Error, Result};
use crate::forms::LinearForm;
use crate::integral::coordinates;
use crate::lattice::Lattice;
use crate::matrix::Matrix;
use crate::order::{Element, Order};
use crate::scalar::{Prime, Scalar};

/// An order with a symmetrising form and whatever representation data is known.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub order: Order,
    pub form: LinearForm,
    pub characters: Option<CharacterTable>,
    pub decomposition: Option<DecompositionMatrix>,
    pub lattices: Vec<(String, Lattice)>,
    pub notes: Vec<String>,
}

impl Fixture {
    pub fn prime(&self) -> Prime {
        self.order.prime()
    }

    pub fn lattice(&self, name: &str) -> Option<&Lattice> {
        self.lattices.iter().find(|(n, _)| n == name).map(|(_, l)| l)
    }

    /// `A × B` with the sum of the forms; lattices of each factor are
    /// inflated by letting the other factor act as zero.
    pub fn direct_product(&self, other: &Fixture) -> Result<Fixture> {
        let order = self.order.direct_product(&other.order)?;
        let form = LinearForm::new(self.form.values.iter().chain(&other.form.values).cloned().collect());
        let characters = match (&self.characters, &other.characters) {
            (Some(a), Some(b)) => Some(a.direct_sum(b)),
            _ => None,
        };
        let decomposition = match (&self.decomposition, &other.decomposition) {
            (Some(a), Some(b)) => Some(a.direct_sum(b)),
            _ => None,
        };
        let (da, db) = (self.order.dim(), other.order.dim());
        let mut lattices = Vec::new();
        for (n, l) in &self.lattices {
            let mut action: Vec<Matrix> = l.action().to_vec();
            action.extend((0..db).map(|_| Matrix::zeros(l.rank(), l.rank())));
            lattices.push((format!("{n}×0"), Lattice::new(&order, action)?));
        }
        for (n, l) in &other.lattices {
            let mut action: Vec<Matrix> = (0..da).map(|_| Matrix::zeros(l.rank(), l.rank())).collect();
            action.extend(l.action().iter().cloned());
            lattices.push((format!("0×{n}"), Lattice::new(&order, action)?));
        }
        Ok(Fixture {
            name: format!("{} × {}", self.name, other.name),
            order,
            form,
            characters,
            decomposition,
            lattices,
            notes: Vec::new(),
        })
    }

    /// `A ⊗ B` with the product form; lattices are tensor products of pairs.
    pub fn tensor_product(&self, other: &Fixture) -> Result<Fixture> {
        let order = self.order.tensor_product(&other.order)?;
        let form =
            LinearForm::new(self.form.values.iter().flat_map(|x| other.form.values.iter().map(move |y| x * y)).collect());
        let characters = match (&self.characters, &other.characters) {
            (Some(a), Some(b)) => Some(a.tensor(b)),
            _ => None,
        };
        let decomposition = match (&self.decomposition, &other.decomposition) {
            (Some(a), Some(b)) => Some(a.kronecker(b)),
            _ => None,
        };
        let mut lattices = Vec::new();
        for (n1, l1) in &self.lattices {
            for (n2, l2) in &other.lattices {
                let action = l1.action().iter().flat_map(|a| l2.action().iter().map(move |b| a.kronecker(b))).collect();
                lattices.push((format!("{n1}⊗{n2}"), Lattice::new(&order, action)?));
            }
        }
        Ok(Fixture {
            name: format!("{} ⊗ {}", self.name, other.name),
            order,
            form,
            characters,
            decomposition,
            lattices,
            notes: Vec::new(),
        })
    }
}

fn ints(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| Scalar::from(x)).collect()
}

/// A finite group by its multiplication table, `table[g][h] = gh`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub table: Vec<Vec<usize>>,
}

impl GroupTable {
    /// Checks closure, associativity, a two-sided identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("table must be square with entries in range".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        for g in 0..n {
            if !(0..n).any(|h| table[g][h] == e && table[h][g] == e) {
                return Err(Error::NotAGroup(format!("element {g} has no inverse")));
            }
        }
        Ok(GroupTable { table })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        (0..self.order()).find(|&e| (0..self.order()).all(|g| self.table[e][g] == g)).expect("validated")
    }

    pub fn inverse(&self, g: usize) -> usize {
        let e = self.identity();
        (0..self.order()).find(|&h| self.table[g][h] == e).expect("validated")
    }

    pub fn cyclic(n: usize) -> GroupTable {
        GroupTable { table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect() }
    }

    /// `G × H` with `(g, h)` at index `g·|H| + h`.
    pub fn product(&self, other: &GroupTable) -> GroupTable {
        let (a, b) = (self.order(), other.order());
        let mut table = vec![vec![0; a * b]; a * b];
        for g1 in 0..a {
            for h1 in 0..b {
                for g2 in 0..a {
                    for h2 in 0..b {
                        table[g1 * b + h1][g2 * b + h2] = self.table[g1][g2] * b + other.table[h1][h2];
                    }
                }
            }
        }
        GroupTable { table }
    }
}

/// Permutations of `0..n` in lexicographic order; the identity comes first.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The symmetric group on `n` points, composing right to left.
pub fn symmetric_group(n: usize) -> (GroupTable, Vec<Vec<usize>>) {
    let perms = permutations(n);
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
    let table = perms
        .iter()
        .map(|s| perms.iter().map(|t| index(&t.iter().map(|&i| s[i]).collect())).collect())
        .collect();
    (GroupTable { table }, perms)
}

fn sign(perm: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                s = -s;
            }
        }
    }
    s
}

fn fixed_points(perm: &[usize]) -> i64 {
    perm.iter().enumerate().filter(|(i, &x)| *i == x).count() as i64
}

/// `OG` with the form sending `1_G` to 1, the regular and trivial lattices.
pub fn group_algebra(name: &str, g: &GroupTable, p: Prime) -> Result<Fixture> {
    let g = GroupTable::new(g.table.clone())?;
    let n = g.order();
    let mut s = vec![Scalar::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            s[(a * n + b) * n + g.table[a][b]] = Scalar::one();
        }
    }
    let e = g.identity();
    let mut one = vec![Scalar::zero(); n];
    one[e] = Scalar::one();
    let order = Order::from_flat(p, n, s, one.clone())?;
    let form = LinearForm::new(one);
    let trivial = Lattice::new(&order, vec![Matrix::identity(1); n])?;
    Ok(Fixture {
        name: name.to_string(),
        lattices: vec![("regular".into(), Lattice::regular(&order)), ("trivial".into(), trivial)],
        order,
        form,
        characters: None,
        decomposition: None,
        notes: Vec::new(),
    })
}

/// `O S_3`, with the rational character table `χ_(3), χ_(2,1), χ_(1³)` and the
/// trivial, sign, standard and permutation lattices; decomposition data at `p = 3`.
pub fn symmetric_group_s3(p: Prime) -> Result<Fixture> {
    let (g, perms) = symmetric_group(3);
    let mut f = group_algebra("S3", &g, p)?;
    let order = &f.order;
    let chars = vec![
        LinearForm::new(perms.iter().map(|_| Scalar::one()).collect()),
        LinearForm::new(perms.iter().map(|s| Scalar::from(fixed_points(s) - 1)).collect()),
        LinearForm::new(perms.iter().map(|s| Scalar::from(sign(s))).collect()),
    ];
    f.characters = Some(CharacterTable::new(order, vec!["(3)".into(), "(2,1)".into(), "(1^3)".into()], chars)?);
    let sign_lattice = Lattice::new(order, perms.iter().map(|s| Matrix::from_ints(&[&[sign(s)]])).collect())?;
    let perm_mats: Vec<Matrix> = perms.iter().map(|s| permutation_matrix(s)).collect();
    let standard = restrict(&perm_mats, &[ints(&[1, -1, 0]), ints(&[0, 1, -1])]);
    f.lattices.push(("sign".into(), sign_lattice));
    f.lattices.push(("standard".into(), Lattice::new(order, standard)?));
    f.lattices.push(("permutation".into(), Lattice::new(order, perm_mats)?));
    if p.get() == 3 {
        f.decomposition = Some(DecompositionMatrix::new(vec![vec![1, 0], vec![1, 1], vec![0, 1]], vec![1, 1]));
    }
    Ok(f)
}

/// Degrees `(1, 3, 2)` of an order Morita equivalent to `O S_3` at `p = 3`,
/// with Schur coefficients `(1/3, 2/3, 1/3)`.
pub fn condensed_s3_data() -> (CharacterTable, Vec<Scalar>) {
    let table = CharacterTable::degrees_only(
        vec!["(3)".into(), "(2,1)".into(), "(1^3)".into()],
        ints(&[1, 3, 2]),
    );
    (table, vec![Scalar::new(1, 3), Scalar::new(2, 3), Scalar::new(1, 3)])
}

fn permutation_matrix(s: &[usize]) -> Matrix {
    let n = s.len();
    let mut m = Matrix::zeros(n, n);
    for (i, &j) in s.iter().enumerate() {
        m[(j, i)] = Scalar::one();
    }
    m
}

/// Action on an invariant sublattice with the given basis.
fn restrict(action: &[Matrix], basis: &[Vec<Scalar>]) -> Vec<Matrix> {
    action
        .iter()
        .map(|m| {
            let cols: Vec<Vec<Scalar>> =
                basis.iter().map(|b| coordinates(&m.mul_vec(b), basis).expect("invariant sublattice")).collect();
            Matrix::from_columns(&cols, basis.len())
        })
        .collect()
}

/// The order spanned by the given vectors inside `K^k` with componentwise
/// product; coordinate projections are its characters.
pub fn split_commutative(p: Prime, basis: &[Vec<Scalar>]) -> Result<(Order, CharacterTable)> {
    let d = basis.len();
    let k = basis[0].len();
    let mut s = vec![Scalar::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            let prod: Vec<Scalar> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a * b).collect();
            let c = coordinates(&prod, basis).ok_or_else(|| Error::Shape("basis does not span a subalgebra".into()))?;
            for (t, x) in c.into_iter().enumerate() {
                s[(i * d + j) * d + t] = x;
            }
        }
    }
    let one = coordinates(&vec![Scalar::one(); k], basis).ok_or(Error::UnitFails(0))?;
    let order = Order::from_flat(p, d, s, one)?;
    let chars = (0..k).map(|c| LinearForm::new(basis.iter().map(|b| b[c].clone()).collect())).collect();
    let table = CharacterTable::new(&order, (1..=k).map(|i| format!("χ{i}")).collect(), chars)?;
    Ok((order, table))
}

/// `{(α, β) ∈ O × O : β − α ∈ p^m O}` with basis `(1,1), (0,p^m)` and the form
/// `(α, α + β) ↦ p^{-m} β`.
pub fn rank2_order(m: u32, p: Prime) -> Result<Fixture> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let pm = p.power(m as i64);
    let (order, table) = split_commutative(p, &[ints(&[1, 1]), vec![Scalar::zero(), pm.clone()]])?;
    let first = Lattice::new(&order, vec![Matrix::identity(1), Matrix::zeros(1, 1)])?;
    let second = Lattice::new(&order, vec![Matrix::identity(1), Matrix::diagonal(&[pm])])?;
    Ok(Fixture {
        name: format!("rank2(m={m}, p={})", p.get()),
        lattices: vec![("regular".into(), Lattice::regular(&order)), ("first".into(), first), ("second".into(), second)],
        order,
        form: LinearForm::from_ints(&[0, 1]),
        characters: Some(table),
        decomposition: Some(DecompositionMatrix::new(vec![vec![1], vec![1]], vec![1])),
        notes: Vec::new(),
    })
}

/// Discrepancy recorded on every rank-one Hecke fixture.
pub const HECKE_NOTE: &str = "The published congruence for this family is q ≡ 3 mod 4. With characters T_s ↦ 1 and \
T_s ↦ −q the algebra is the rank-2 order with gap ν_2(1+q), which has the projective scalar property exactly when \
ν_2(1+q) = 1, i.e. q ≡ 1 mod 4. The published embedding T_1 ↦ (1,0) does not preserve the unit. The verdicts \
reported here are computed, not asserted.";

/// `O⟨T_1, T_s⟩` with `T_s² = q T_1 + (1 − q) T_s` and the form `T_1 ↦ 1, T_s ↦ 0`.
pub fn hecke_rank1(q: i64, p: Prime) -> Result<Fixture> {
    let qs = Scalar::from(q);
    if !qs.is_unit(p) {
        return Err(Error::QNotUnit);
    }
    let z = Scalar::zero;
    let o = Scalar::one;
    let s = vec![vec![vec![o(), z()], vec![z(), o()]], vec![vec![z(), o()], vec![qs.clone(), Scalar::from(1 - q)]]];
    let order = Order::new(p, 2, s, vec![o(), z()])?;
    let table = CharacterTable::new(
        &order,
        vec!["index".into(), "sign".into()],
        vec![LinearForm::from_ints(&[1, 1]), LinearForm::from_ints(&[1, -q])],
    )?;
    let one_dim = |x: i64| Lattice::new(&order, vec![Matrix::identity(1), Matrix::from_ints(&[&[x]])]);
    let lattices = vec![("regular".into(), Lattice::regular(&order)), ("index".into(), one_dim(1)?), ("sign".into(), one_dim(-q)?)];
    let gap = Scalar::from(1 + q).val(p).finite().unwrap_or(0);
    let decomposition = (gap > 0).then(|| DecompositionMatrix::new(vec![vec![1], vec![1]], vec![1]));
    let mut notes = vec![HECKE_NOTE.to_string()];
    notes.push(format!("q = {q}: ν_{}(1+q) = {gap}, q mod 4 = {}", p.get(), q.rem_euclid(4)));
    Ok(Fixture {
        name: format!("hecke(q={q}, p={})", p.get()),
        order,
        form: LinearForm::from_ints(&[1, 0]),
        characters: Some(table),
        decomposition,
        lattices,
        notes,
    })
}

/// Rational class data: class sizes and irreducible character values per class.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub sizes: Vec<i64>,
    /// `values[χ][class]`; the trivial character must come first.
    pub values: Vec<Vec<i64>>,
}

impl ClassData {
    pub fn s3() -> ClassData {
        ClassData { sizes: vec![1, 3, 2], values: vec![vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]] }
    }

    pub fn c2() -> ClassData {
        ClassData { sizes: vec![1, 1], values: vec![vec![1, 1], vec![1, -1]] }
    }

    fn group_order(&self) -> i64 {
        self.sizes.iter().sum()
    }

    /// `[α, β] = (1/|G|) Σ |C| α(g) β(g)` for real-valued class functions.
    fn inner(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        let s: Scalar = self.sizes.iter().zip(a.iter().zip(b)).map(|(&n, (x, y))| &(x * y) * &Scalar::from(n)).sum();
        &s / &Scalar::from(self.group_order())
    }
}

/// The character ring `O[Irr(G)]`, with the form taking the coefficient of the
/// trivial character; its characters are evaluations at the classes.
pub fn character_ring(data: &ClassData, p: Prime) -> Result<Fixture> {
    let r = data.values.len();
    if r == 0 || data.values.iter().any(|v| v.len() != data.sizes.len()) || data.sizes.len() != r {
        return Err(Error::OrthogonalityFails("table must be square".into()));
    }
    if data.values[0].iter().any(|&x| x != 1) {
        return Err(Error::OrthogonalityFails("the first character must be trivial".into()));
    }
    let vals: Vec<Vec<Scalar>> = data.values.iter().map(|v| ints(v)).collect();
    for i in 0..r {
        for j in 0..r {
            let expected = if i == j { Scalar::one() } else { Scalar::zero() };
            if data.inner(&vals[i], &vals[j]) != expected {
                return Err(Error::OrthogonalityFails(format!("[χ{i}, χ{j}] ≠ δ")));
            }
        }
    }
    let mut s = vec![Scalar::zero(); r * r * r];
    for i in 0..r {
        for j in 0..r {
            let prod: Vec<Scalar> = vals[i].iter().zip(&vals[j]).map(|(a, b)| a * b).collect();
            for k in 0..r {
                let c = data.inner(&prod, &vals[k]);
                if !c.is_integer() || c < Scalar::zero() {
                    return Err(Error::OrthogonalityFails(format!("multiplicity [χ{i}χ{j}, χ{k}] = {c}")));
                }
                s[(i * r + j) * r + k] = c;
            }
        }
    }
    let mut one = vec![Scalar::zero(); r];
    one[0] = Scalar::one();
    let order = Order::from_flat(p, r, s, one.clone())?;
    let evaluations: Vec<LinearForm> = (0..r).map(|c| LinearForm::new(vals.iter().map(|v| v[c].clone()).collect())).collect();
    let table = CharacterTable::new(&order, (0..r).map(|c| format!("class{c}")).collect(), evaluations)?;
    Ok(Fixture {
        name: format!("character ring (|G|={}, p={})", data.group_order(), p.get()),
        lattices: vec![("regular".into(), Lattice::regular(&order))],
        order,
        form: LinearForm::new(one),
        characters: Some(table),
        decomposition: None,
        notes: Vec::new(),
    })
}

/// The commutative order of rank 4 in `K^4` spanned by `(1,1,1,1), (0,2,0,2x),
/// (0,0,2,2x), (0,0,0,4x)` with the form `((2−x⁻¹)/4, 1/4, 1/4, x⁻¹/4)`.
pub fn four_dim_nonrational(x: i64) -> Result<Fixture> {
    if x % 2 == 0 {
        return Err(Error::Precondition("x must be odd".into()));
    }
    let p = Prime::new(2)?;
    let basis = vec![ints(&[1, 1, 1, 1]), ints(&[0, 2, 0, 2 * x]), ints(&[0, 0, 2, 2 * x]), ints(&[0, 0, 0, 4 * x])];
    let (order, table) = split_commutative(p, &basis)?;
    let xi = Scalar::new(1, x);
    let quarter = Scalar::new(1, 4);
    let weights = vec![&(&Scalar::from(2) - &xi) * &quarter, quarter.clone(), quarter.clone(), &xi * &quarter];
    let form = LinearForm::new(basis.iter().map(|b| b.iter().zip(&weights).map(|(a, w)| a * w).sum()).collect());
    Ok(Fixture {
        name: format!("four-dimensional (x={x})"),
        lattices: vec![("regular".into(), Lattice::regular(&order))],
        order,
        form,
        characters: Some(table),
        decomposition: Some(DecompositionMatrix::new(vec![vec![1]; 4], vec![1])),
        notes: Vec::new(),
    })
}

/// `Mat_n(O)` on the basis `E_ij` (index `i·n + j`) with the trace form.
pub fn matrix_order(n: usize, p: Prime) -> Result<Fixture> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let d = n * n;
    let mut s = vec![Scalar::zero(); d * d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                s[((i * n + j) * d + j * n + l) * d + i * n + l] = Scalar::one();
            }
        }
    }
    let trace: Vec<Scalar> = (0..d).map(|k| if k / n == k % n { Scalar::one() } else { Scalar::zero() }).collect();
    let order = Order::from_flat(p, d, s, trace.clone())?;
    let form = LinearForm::new(trace);
    let column = Lattice::new(
        &order,
        (0..d)
            .map(|k| {
                let mut m = Matrix::zeros(n, n);
                m[(k / n, k % n)] = Scalar::one();
                m
            })
            .collect(),
    )?;
    let table = CharacterTable::new(&order, vec!["trace".into()], vec![form.clone()])?;
    Ok(Fixture {
        name: format!("Mat_{n}(p={})", p.get()),
        lattices: vec![("regular".into(), Lattice::regular(&order)), ("column".into(), column)],
        order,
        form,
        characters: Some(table),
        decomposition: Some(DecompositionMatrix::new(vec![vec![1]], vec![n as u32])),
        notes: Vec::new(),
    })
}

/// `trivial ⊕ sign` over `O S_3`: not indecomposable.
pub fn decomposable_s3(p: Prime) -> Result<(Fixture, Lattice)> {
    let f = symmetric_group_s3(p)?;
    let u = f.lattice("trivial").expect("built").direct_sum(f.lattice("sign").expect("built"));
    Ok((f, u))
}

/// `e = (1 + (0 1))/2` in `O S_3`; needs `p` odd.
pub fn s3_transposition_idempotent(f: &Fixture) -> Element {
    let perms = permutations(3);
    let mut e = Element::zero(6);
    e.coords[0] = Scalar::new(1, 2);
    e.coords[perms.iter().position(|q| q == &vec![1, 0, 2]).expect("present")] = Scalar::new(1, 2);
    debug_assert!(f.order.is_idempotent(&e));
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_tables() {
        let (g, perms) = symmetric_group(3);
        assert_eq!(perms[0], vec![0, 1, 2]);
        assert!(GroupTable::new(g.table.clone()).is_ok());
        assert_eq!(GroupTable::cyclic(4).product(&GroupTable::cyclic(2)).order(), 8);
        assert!(matches!(GroupTable::new(vec![vec![0, 0], vec![0, 0]]), Err(Error::NotAGroup(_))));
    }
}
