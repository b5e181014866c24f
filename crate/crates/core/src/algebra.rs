//! Semi-simple algebras `M_{d_1} + ... + M_{d_k}` through matrix units,
//! tensors over them and explicit double derivations.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{Rational, Ring, SparseMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("an algebra needs at least one component and all dimensions must be positive")]
    InvalidDims,
    #[error("invalid Bratteli diagram: {0}")]
    InvalidBratteli(String),
}

/// Basis element `e^comp_{row,col}`. All three indices start at 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct MatrixUnit {
    pub comp: usize,
    pub row: usize,
    pub col: usize,
}

impl MatrixUnit {
    pub const fn new(comp: usize, row: usize, col: usize) -> MatrixUnit {
        MatrixUnit { comp, row, col }
    }

    /// Product of two matrix units, `None` when it vanishes.
    pub fn mul(self, other: MatrixUnit) -> Option<MatrixUnit> {
        (self.comp == other.comp && self.col == other.row)
            .then(|| MatrixUnit::new(self.comp, self.row, other.col))
    }
}

impl fmt::Display for MatrixUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^{}_({},{})", self.comp, self.row, self.col)
    }
}

/// Sparse element of `S^{(x) N}` with coefficients in `C`.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor<C, const N: usize> {
    terms: BTreeMap<[MatrixUnit; N], C>,
}

pub type Element<C = Rational> = Tensor<C, 1>;
pub type Tensor2<C = Rational> = Tensor<C, 2>;
pub type Tensor3<C = Rational> = Tensor<C, 3>;

impl<C: Ring, const N: usize> Default for Tensor<C, N> {
    fn default() -> Self {
        Tensor { terms: BTreeMap::new() }
    }
}

impl<C: Ring, const N: usize> Tensor<C, N> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: [MatrixUnit; N], c: C) -> Self {
        let mut t = Self::zero();
        t.add_term(key, c);
        t
    }

    pub fn add_term(&mut self, key: [MatrixUnit; N], c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (k, v) in &other.terms {
            self.add_term(*k, v.clone() * c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &[MatrixUnit; N]) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[MatrixUnit; N], &C)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut t = Self::zero();
        t.add_scaled(self, c);
        t
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut t = self.clone();
        t.add_scaled(other, &C::one());
        t
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut t = self.clone();
        t.add_scaled(other, &-C::one());
        t
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Tensor<D, N> {
        let mut t = Tensor::zero();
        for (k, v) in &self.terms {
            t.add_term(*k, f(v));
        }
        t
    }

    /// Rebuilds the tensor with every key transformed; colliding keys add up.
    pub fn map_keys<const M: usize>(&self, f: impl Fn(&[MatrixUnit; N]) -> [MatrixUnit; M]) -> Tensor<C, M> {
        let mut t = Tensor::zero();
        for (k, v) in &self.terms {
            t.add_term(f(k), v.clone());
        }
        t
    }

    /// Multiplies slot `k` by `el` from the left (`left = true`) or right.
    pub fn mul_slot(&self, k: usize, el: &Element<C>, left: bool) -> Self {
        let mut t = Self::zero();
        for (key, c) in &self.terms {
            for ([b], cb) in &el.terms {
                let m = if left { b.mul(key[k]) } else { key[k].mul(*b) };
                if let Some(m) = m {
                    let mut nk = *key;
                    nk[k] = m;
                    t.add_term(nk, c.clone() * cb.clone());
                }
            }
        }
        t
    }
}

impl<C: Ring> Element<C> {
    pub fn unit(u: MatrixUnit) -> Self {
        Self::single([u], C::one())
    }
}

impl<C: Ring> Tensor2<C> {
    /// `a (x) b`.
    pub fn outer(a: &Element<C>, b: &Element<C>) -> Self {
        let mut t = Self::zero();
        for ([x], cx) in &a.terms {
            for ([y], cy) in &b.terms {
                t.add_term([*x, *y], cx.clone() * cy.clone());
            }
        }
        t
    }

    /// The flip `x' (x) x'' -> x'' (x) x'`.
    pub fn opposite(&self) -> Self {
        self.map_keys(|[a, b]| [*b, *a])
    }
}

impl<C: Ring + fmt::Display, const N: usize> fmt::Display for Tensor<C, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let parts: Vec<String> = k.iter().map(|u| u.to_string()).collect();
            write!(f, "({})*{}", c, parts.join(" ⊗ "))?;
        }
        Ok(())
    }
}

/// `S = M_{d_1} + ... + M_{d_k}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SemiSimpleAlgebra {
    dims: Vec<usize>,
}

impl SemiSimpleAlgebra {
    pub fn new(dims: &[usize]) -> Result<SemiSimpleAlgebra, AlgebraError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(AlgebraError::InvalidDims);
        }
        Ok(SemiSimpleAlgebra { dims: dims.to_vec() })
    }

    /// `C^{+n}`.
    pub fn commutative(n: usize) -> Result<SemiSimpleAlgebra, AlgebraError> {
        SemiSimpleAlgebra::new(&vec![1; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension of component `i` (1-based).
    pub fn d(&self, i: usize) -> usize {
        self.dims[i - 1]
    }

    pub fn k(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().map(|d| d * d).sum()
    }

    pub fn is_commutative(&self) -> bool {
        self.dims.iter().all(|&d| d == 1)
    }

    pub fn basis(&self) -> Vec<MatrixUnit> {
        let mut out = Vec::with_capacity(self.dim());
        for (i, &d) in self.dims.iter().enumerate() {
            for p in 1..=d {
                for q in 1..=d {
                    out.push(MatrixUnit::new(i + 1, p, q));
                }
            }
        }
        out
    }

    /// Position of `u` in [`SemiSimpleAlgebra::basis`].
    pub fn index_of(&self, u: MatrixUnit) -> usize {
        let off: usize = self.dims[..u.comp - 1].iter().map(|d| d * d).sum();
        let d = self.d(u.comp);
        off + (u.row - 1) * d + (u.col - 1)
    }

    pub fn contains(&self, u: MatrixUnit) -> bool {
        (1..=self.k()).contains(&u.comp)
            && (1..=self.d(u.comp)).contains(&u.row)
            && (1..=self.d(u.comp)).contains(&u.col)
    }

    pub fn one<C: Ring>(&self) -> Element<C> {
        let mut t = Element::zero();
        for (i, &d) in self.dims.iter().enumerate() {
            for p in 1..=d {
                t.add_term([MatrixUnit::new(i + 1, p, p)], C::one());
            }
        }
        t
    }

    /// The central idempotent of component `i`.
    pub fn idempotent<C: Ring>(&self, i: usize) -> Element<C> {
        let mut t = Element::zero();
        for p in 1..=self.d(i) {
            t.add_term([MatrixUnit::new(i, p, p)], C::one());
        }
        t
    }

    pub fn mul<C: Ring>(&self, a: &Element<C>, b: &Element<C>) -> Element<C> {
        a.mul_slot(0, b, false)
    }
}

/// A double derivation `S -> S (x) S` stored by its values on matrix units.
#[derive(Clone, PartialEq, Debug)]
pub struct ExplicitDoubleDerivation<C = Rational> {
    values: BTreeMap<MatrixUnit, Tensor2<C>>,
}

impl<C: Ring> Default for ExplicitDoubleDerivation<C> {
    fn default() -> Self {
        ExplicitDoubleDerivation { values: BTreeMap::new() }
    }
}

impl<C: Ring> ExplicitDoubleDerivation<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_values(values: BTreeMap<MatrixUnit, Tensor2<C>>) -> Self {
        let values = values.into_iter().filter(|(_, t)| !t.is_zero()).collect();
        ExplicitDoubleDerivation { values }
    }

    pub fn value(&self, u: MatrixUnit) -> Tensor2<C> {
        self.values.get(&u).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn apply(&self, el: &Element<C>) -> Tensor2<C> {
        let mut t = Tensor2::zero();
        for ([u], c) in el.iter() {
            if let Some(v) = self.values.get(u) {
                t.add_scaled(v, c);
            }
        }
        t
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (u, v) in &other.values {
            let e = self.values.entry(*u).or_default();
            e.add_scaled(v, c);
            if e.is_zero() {
                self.values.remove(u);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut d = Self::zero();
        d.add_scaled(self, c);
        d
    }

    /// Inner bimodule action `(s.phi.t)(u) = phi(u)' t (x) s phi(u)''`.
    pub fn inner_act(&self, s: Option<&Element<C>>, t: Option<&Element<C>>) -> Self {
        let mut values = BTreeMap::new();
        for (u, v) in &self.values {
            let mut w = v.clone();
            if let Some(t) = t {
                w = w.mul_slot(0, t, false);
            }
            if let Some(s) = s {
                w = w.mul_slot(1, s, true);
            }
            values.insert(*u, w);
        }
        Self::from_values(values)
    }

    /// Applies the derivation to slot `k` of a two-tensor, giving a three-tensor.
    pub fn apply_in_slot(&self, t: &Tensor2<C>, k: usize) -> Tensor3<C> {
        let mut out = Tensor3::zero();
        for (key, c) in t.iter() {
            if let Some(img) = self.values.get(&key[k]) {
                for ([a, b], ic) in img.iter() {
                    let nk = if k == 0 { [*a, *b, key[1]] } else { [key[0], *a, *b] };
                    out.add_term(nk, c.clone() * ic.clone());
                }
            }
        }
        out
    }

    /// Checks `delta(ab) = a delta(b) + delta(a) b` (outer structure) on all
    /// pairs of matrix units. Returns the first failing pair.
    pub fn leibniz_violation(&self, alg: &SemiSimpleAlgebra) -> Option<(MatrixUnit, MatrixUnit)> {
        let basis = alg.basis();
        for &a in &basis {
            for &b in &basis {
                let lhs = match a.mul(b) {
                    Some(m) => self.value(m),
                    None => Tensor2::zero(),
                };
                let rhs = self
                    .value(b)
                    .mul_slot(0, &Element::unit(a), true)
                    .plus(&self.value(a).mul_slot(1, &Element::unit(b), false));
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// `d_x(y) = x' (x) x''y - yx' (x) x''`.
pub fn inner_derivation<C: Ring>(alg: &SemiSimpleAlgebra, x: &Tensor2<C>) -> ExplicitDoubleDerivation<C> {
    let mut values = BTreeMap::new();
    for y in alg.basis() {
        let ye = Element::unit(y);
        let t = x.mul_slot(1, &ye, false).minus(&x.mul_slot(0, &ye, true));
        values.insert(y, t);
    }
    ExplicitDoubleDerivation::from_values(values)
}

/// The gauge element `E(a) = 1 (x) a - a (x) 1`.
pub fn gauge_element<C: Ring>(alg: &SemiSimpleAlgebra) -> ExplicitDoubleDerivation<C> {
    let one = alg.one::<C>();
    inner_derivation(alg, &Tensor2::outer(&one, &one))
}

/// Multiplicities in the decomposition of the double derivations.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DerivationDimension {
    /// `dim S (x) S - dim Ker(D)`, computed by elimination.
    pub dimension: usize,
    /// `sum_i d_i^2 (d_i^2 - 1) + sum_{i != j} (d_i d_j)^2`.
    pub formula: usize,
    pub kernel_dim: usize,
    /// `(i, d_i^2 - 1)`: copies of `M_{d_i}` (loops at `i`).
    pub loops: Vec<(usize, usize)>,
    /// `(head, tail, d_i d_j)`: copies of `M_{d_i x d_j}` (arrows `j -> i`).
    pub arrows: Vec<(usize, usize, usize)>,
}

/// Matrix of `D : S (x) S -> Hom(S, S (x) S)`, `x -> d_x`.
pub fn derivation_matrix(alg: &SemiSimpleAlgebra) -> SparseMatrix {
    let basis = alg.basis();
    let n = basis.len();
    let mut m = SparseMatrix::new(n * n * n, n * n);
    for (ia, &a) in basis.iter().enumerate() {
        for (ib, &b) in basis.iter().enumerate() {
            let col = ia * n + ib;
            let d = inner_derivation::<Rational>(alg, &Tensor2::single([a, b], crate::exactmath::int(1)));
            for y in &basis {
                for ([u, v], c) in d.value(*y).iter() {
                    let row = (alg.index_of(*y) * n + alg.index_of(*u)) * n + alg.index_of(*v);
                    m.add(row, col, c);
                }
            }
        }
    }
    m
}

pub fn derivation_module_dimension(alg: &SemiSimpleAlgebra) -> DerivationDimension {
    let n = alg.dim();
    let rank = derivation_matrix(alg).rank();
    let dims = alg.dims();
    let mut formula = 0;
    let mut loops = vec![];
    let mut arrows = vec![];
    for (i, &di) in dims.iter().enumerate() {
        formula += di * di * (di * di - 1);
        loops.push((i + 1, di * di - 1));
        for (j, &dj) in dims.iter().enumerate() {
            if i != j {
                formula += (di * dj) * (di * dj);
                arrows.push((i + 1, j + 1, di * dj));
            }
        }
    }
    DerivationDimension { dimension: rank, formula, kernel_dim: n * n - rank, loops, arrows }
}

/// Embedding data for a semi-simple subalgebra `T = M_{e_1} + ... + M_{e_l}` of `S`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BratteliDiagram {
    pub sub_dims: Vec<usize>,
    /// `a[i][u]`: copies of `M_{e_u}` inside `M_{d_i}`.
    pub multiplicities: Vec<Vec<usize>>,
}

impl BratteliDiagram {
    pub fn new(sub_dims: &[usize], multiplicities: Vec<Vec<usize>>) -> BratteliDiagram {
        BratteliDiagram { sub_dims: sub_dims.to_vec(), multiplicities }
    }

    pub fn validate(&self, alg: &SemiSimpleAlgebra) -> Result<(), AlgebraError> {
        let bad = |m: String| Err(AlgebraError::InvalidBratteli(m));
        if self.sub_dims.is_empty() || self.sub_dims.contains(&0) {
            return bad("subalgebra dimensions must be positive".into());
        }
        if self.multiplicities.len() != alg.k() {
            return bad(format!("expected {} rows, got {}", alg.k(), self.multiplicities.len()));
        }
        for (i, row) in self.multiplicities.iter().enumerate() {
            if row.len() != self.sub_dims.len() {
                return bad(format!("row {} has {} entries, expected {}", i + 1, row.len(), self.sub_dims.len()));
            }
            let s: usize = row.iter().zip(&self.sub_dims).map(|(a, e)| a * e).sum();
            if s != alg.d(i + 1) {
                return bad(format!("row {} gives dimension {}, component has {}", i + 1, s, alg.d(i + 1)));
            }
        }
        for u in 0..self.sub_dims.len() {
            if self.multiplicities.iter().all(|r| r[u] == 0) {
                return bad(format!("block {} of the subalgebra is not embedded", u + 1));
            }
        }
        Ok(())
    }

    /// Offset `n_{iu}` of the first copy of block `u` inside component `i` (0-based rows).
    pub fn offset(&self, i: usize, u: usize) -> usize {
        (0..u).map(|v| self.multiplicities[i - 1][v] * self.sub_dims[v]).sum()
    }

    /// Images of the matrix units `y^u_{vw}` of `T` in `S`.
    pub fn embedded_units(&self, alg: &SemiSimpleAlgebra) -> Vec<Element> {
        let mut out = vec![];
        for (u, &e) in self.sub_dims.iter().enumerate() {
            for v in 1..=e {
                for w in 1..=e {
                    let mut el = Element::zero();
                    for i in 1..=alg.k() {
                        let base = self.offset(i, u);
                        for c in 0..self.multiplicities[i - 1][u] {
                            let o = base + c * e;
                            el.add_term([MatrixUnit::new(i, o + v, o + w)], crate::exactmath::int(1));
                        }
                    }
                    out.push(el);
                }
            }
        }
        out
    }
}

/// Loop and arrow multiplicities `r_i`, `r_{ij}` of the relative quiver.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RelativeMultiplicities {
    pub loops: Vec<usize>,
    /// `arrows[i][j]` for `i != j` counts arrows `j -> i`; the diagonal is 0.
    pub arrows: Vec<Vec<usize>>,
}

impl RelativeMultiplicities {
    /// `sum_i r_i d_i^2 + sum_{i != j} r_{ij} d_i d_j`.
    pub fn dimension(&self, alg: &SemiSimpleAlgebra) -> usize {
        let mut s = 0;
        for i in 1..=alg.k() {
            s += self.loops[i - 1] * alg.d(i) * alg.d(i);
            for j in 1..=alg.k() {
                s += self.arrows[i - 1][j - 1] * alg.d(i) * alg.d(j);
            }
        }
        s
    }
}

pub fn relative_multiplicities(
    alg: &SemiSimpleAlgebra,
    b: &BratteliDiagram,
) -> Result<RelativeMultiplicities, AlgebraError> {
    b.validate(alg)?;
    let a = &b.multiplicities;
    let k = alg.k();
    let loops = (0..k).map(|i| a[i].iter().map(|x| x * x).sum::<usize>() - 1).collect();
    let mut arrows = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                arrows[i][j] = a[i].iter().zip(&a[j]).map(|(x, y)| x * y).sum();
            }
        }
    }
    Ok(RelativeMultiplicities { loops, arrows })
}

/// Dimension of the `T`-relative double derivations by direct elimination:
/// `dim {x : d_x(y) = 0 for y in T} - dim Ker(D)`.
pub fn relative_derivation_oracle(alg: &SemiSimpleAlgebra, b: &BratteliDiagram) -> Result<usize, AlgebraError> {
    b.validate(alg)?;
    let basis = alg.basis();
    let n = basis.len();
    let ys = b.embedded_units(alg);
    let mut m = SparseMatrix::new(ys.len() * n * n, n * n);
    for (ia, &a) in basis.iter().enumerate() {
        for (ib, &bb) in basis.iter().enumerate() {
            let col = ia * n + ib;
            let d = inner_derivation::<Rational>(alg, &Tensor2::single([a, bb], crate::exactmath::int(1)));
            for (iy, y) in ys.iter().enumerate() {
                for ([u, v], c) in d.apply(y).iter() {
                    m.add((iy * n + alg.index_of(*u)) * n + alg.index_of(*v), col, c);
                }
            }
        }
    }
    let constrained_kernel = n * n - m.rank();
    let kernel_d = n * n - derivation_matrix(alg).rank();
    Ok(constrained_kernel - kernel_d)
}

/// Block-by-block form of [`relative_derivation_oracle`]. Both the
/// constraint `d_x(y) = 0` and `Ker(D)` respect the components of the two
/// tensor factors of `x`, so each block `(head, tail)` is solved on its own
/// and divided by `d_head d_tail` to recover `r_i` and `r_{ij}`.
pub fn relative_multiplicities_oracle(
    alg: &SemiSimpleAlgebra,
    b: &BratteliDiagram,
) -> Result<RelativeMultiplicities, AlgebraError> {
    b.validate(alg)?;
    let basis = alg.basis();
    let n = basis.len();
    let ys = b.embedded_units(alg);
    let k = alg.k();
    let mut loops = vec![0; k];
    let mut arrows = vec![vec![0; k]; k];
    for h in 1..=k {
        for t in 1..=k {
            let cols: Vec<(MatrixUnit, MatrixUnit)> = basis
                .iter()
                .filter(|a| a.comp == h)
                .flat_map(|&a| basis.iter().filter(|c| c.comp == t).map(move |&c| (a, c)))
                .collect();
            let mut constraint = SparseMatrix::new(ys.len() * n * n, cols.len());
            let mut full = SparseMatrix::new(n * n * n, cols.len());
            for (col, &(a, c)) in cols.iter().enumerate() {
                let d = inner_derivation::<Rational>(alg, &Tensor2::single([a, c], crate::exactmath::int(1)));
                for (iy, y) in ys.iter().enumerate() {
                    for ([u, v], x) in d.apply(y).iter() {
                        constraint.add((iy * n + alg.index_of(*u)) * n + alg.index_of(*v), col, x);
                    }
                }
                for y in &basis {
                    for ([u, v], x) in d.value(*y).iter() {
                        full.add((alg.index_of(*y) * n + alg.index_of(*u)) * n + alg.index_of(*v), col, x);
                    }
                }
            }
            let dim = full.rank() - constraint.rank();
            let size = alg.d(h) * alg.d(t);
            if dim % size != 0 {
                return Err(AlgebraError::InvalidBratteli(format!("block ({h},{t}) has dimension {dim}")));
            }
            if h == t {
                loops[h - 1] = dim / size;
            } else {
                arrows[h - 1][t - 1] = dim / size;
            }
        }
    }
    Ok(RelativeMultiplicities { loops, arrows })
}
