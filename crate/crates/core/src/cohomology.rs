//! The complex `d_P = {P, -}` on necklaces and its Betti numbers.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::SemiSimpleAlgebra;
use crate::exactmath::{Poly, Rational, SparseMatrix};
use crate::necklace::{necklace_basis, necklace_bracket, GradedElement, Necklace};
use crate::quiver::Arrow;
use crate::tensors::{check_tensor, DoubleTensor};

/// Refuse to enumerate a degree with more necklaces than this.
pub const MAX_BASIS: usize = 50_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("the tensor is not Poisson")]
    NotPoisson,
    #[error("coefficients must be numeric")]
    SymbolicCoefficients,
    #[error("degree {degree} has {size} necklaces, above the limit {MAX_BASIS}")]
    BasisTooLarge { degree: usize, size: usize },
    #[error("degree {0} needs a complex built up to degree {0}")]
    DegreeOutOfRange(usize),
    #[error("d_P squared is nonzero in degree {0}")]
    SquareNonzero(usize),
    #[error("generators are only listed for a single monomial y y between two vertices")]
    UnsupportedTensorShape,
}

/// The complex truncated at degree `max_degree + 1`.
#[derive(Clone, Debug)]
pub struct Complex {
    pub p: DoubleTensor,
    pub max_degree: usize,
    /// `bases[n]` spans degree `n`, for `n <= max_degree + 1`.
    pub bases: Vec<Vec<Necklace>>,
    /// `differentials[n]` maps degree `n` to `n + 1`; columns index `bases[n]`.
    pub differentials: Vec<SparseMatrix>,
}

fn index_of(basis: &[Necklace]) -> BTreeMap<&Necklace, usize> {
    basis.iter().enumerate().map(|(i, n)| (n, i)).collect()
}

fn to_column(g: &GradedElement, index: &BTreeMap<&Necklace, usize>) -> Vec<(usize, Rational)> {
    g.terms()
        .iter()
        .map(|(nk, c)| (index[nk], c.as_constant().expect("numeric tensor")))
        .collect()
}

/// Assembles `d_P` in degrees `0..=max_degree` and checks `d_P^2 = 0`.
pub fn build_complex(alg: &SemiSimpleAlgebra, p: &DoubleTensor, max_degree: usize) -> Result<Complex, CohomologyError> {
    if !p.is_numeric() {
        return Err(CohomologyError::SymbolicCoefficients);
    }
    if !check_tensor(alg, p).poisson {
        return Err(CohomologyError::NotPoisson);
    }
    let mut bases = vec![];
    for degree in 0..=max_degree + 1 {
        let b = necklace_basis(alg, degree);
        if b.len() > MAX_BASIS {
            return Err(CohomologyError::BasisTooLarge { degree, size: b.len() });
        }
        bases.push(b);
    }
    let pg = p.to_graded(alg);
    let mut differentials = vec![];
    for n in 0..=max_degree {
        let target = index_of(&bases[n + 1]);
        let mut m = SparseMatrix::new(bases[n + 1].len(), bases[n].len());
        for (col, nk) in bases[n].iter().enumerate() {
            let img = necklace_bracket(alg, &pg, &GradedElement::from_sum(&[(nk.clone(), 1)].into()));
            for (row, v) in to_column(&img, &target) {
                m.add(row, col, &v);
            }
        }
        differentials.push(m);
    }
    let c = Complex { p: p.clone(), max_degree, bases, differentials };
    if let Some(n) = c.square_violation() {
        return Err(CohomologyError::SquareNonzero(n));
    }
    Ok(c)
}

impl Complex {
    /// First degree `n` with `d_{n+1} d_n != 0`.
    pub fn square_violation(&self) -> Option<usize> {
        (0..self.max_degree).find(|&n| {
            !self.differentials[n + 1].mul(&self.differentials[n]).expect("composable").is_zero()
        })
    }

    pub fn dimension(&self, n: usize) -> usize {
        self.bases[n].len()
    }

    fn rank(&self, n: usize) -> usize {
        self.differentials[n].rank()
    }

    /// `dim ker d_n - rank d_{n-1}`.
    pub fn betti(&self, n: usize) -> Result<usize, CohomologyError> {
        if n > self.max_degree {
            return Err(CohomologyError::DegreeOutOfRange(n));
        }
        let incoming = if n == 0 { 0 } else { self.rank(n - 1) };
        Ok(self.dimension(n) - self.rank(n) - incoming)
    }

    /// The same number with every rank taken from the transposed matrix.
    pub fn betti_transposed(&self, n: usize) -> Result<usize, CohomologyError> {
        if n > self.max_degree {
            return Err(CohomologyError::DegreeOutOfRange(n));
        }
        let rk = |k: usize| self.differentials[k].transpose().rank();
        let incoming = if n == 0 { 0 } else { rk(n - 1) };
        Ok(self.dimension(n) - rk(n) - incoming)
    }

    /// Coordinates of a degree-`n` element in `bases[n]`.
    pub fn coordinates(&self, n: usize, g: &GradedElement) -> Vec<Rational> {
        let idx = index_of(&self.bases[n]);
        let mut v = vec![Rational::zero(); self.bases[n].len()];
        for (i, c) in to_column(g, &idx) {
            v[i] = c;
        }
        v
    }

    pub fn is_cocycle(&self, n: usize, g: &GradedElement) -> bool {
        self.differentials[n].apply(&self.coordinates(n, g)).iter().all(Zero::is_zero)
    }
}

/// All Betti numbers `0..=max_degree`.
pub fn betti_numbers(alg: &SemiSimpleAlgebra, p: &DoubleTensor, max_degree: usize) -> Result<Vec<usize>, CohomologyError> {
    let c = build_complex(alg, p, max_degree)?;
    (0..=max_degree).map(|n| c.betti(n)).collect()
}

pub fn betti(alg: &SemiSimpleAlgebra, p: &DoubleTensor, n: usize) -> Result<usize, CohomologyError> {
    build_complex(alg, p, n)?.betti(n)
}

/// Shape `P = c * a b` with `a: i -> j` coloured `(p,q)` and `b: j -> i`
/// coloured `(r,s)`. The cohomology statements need `q != r` and `p != s`;
/// see [`TwoVertexShape::admissible`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwoVertexShape {
    pub i: usize,
    pub j: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
}

pub fn two_vertex_shape(p: &DoubleTensor) -> Option<TwoVertexShape> {
    if p.terms().len() != 1 {
        return None;
    }
    let (&(a, b), _) = p.terms().iter().next()?;
    if a.is_loop() {
        return None;
    }
    let shape = TwoVertexShape { i: a.tail, j: a.head, p: a.primary, q: a.secondary, r: b.primary, s: b.secondary };
    Some(shape)
}

impl TwoVertexShape {
    pub fn admissible(&self) -> bool {
        self.q != self.r && self.p != self.s
    }
}

/// The printed count `sum_{k != i,j}(n_k^2 - 1) + (n_i - 1)^2 + (n_j - 1)^2`.
pub fn printed_h1_formula(alg: &SemiSimpleAlgebra, i: usize, j: usize) -> usize {
    let mut total = 0;
    for k in 1..=alg.k() {
        let n = alg.d(k);
        total += if k == i || k == j { (n - 1) * (n - 1) } else { n * n - 1 };
    }
    total
}

/// Cocycles spanning `H^1` for the two-vertex shape: every loop away from
/// `i, j`, loops at `i` avoiding primary `q` and secondary `r`, loops at `j`
/// avoiding primary `s` and secondary `p`, and the sums `x_i(r,r) + x_j(s,s)`
/// and `x_i(q,q) + x_j(p,p)`. Dependent candidates are dropped, so the result
/// is a basis when the shape is admissible and an independent set otherwise.
pub fn h1_generators(alg: &SemiSimpleAlgebra, p: &DoubleTensor) -> Result<Vec<GradedElement>, CohomologyError> {
    let sh = two_vertex_shape(p).ok_or(CohomologyError::UnsupportedTensorShape)?;
    let complex = build_complex(alg, p, 1)?;
    let loop_el = |k: usize, a: usize, b: usize| {
        GradedElement::from_word(alg, &[Arrow::x(k, a, b)], Poly::from_int(1)).expect("loop")
    };
    let mut candidates = vec![];
    for k in 1..=alg.k() {
        for a in 1..=alg.d(k) {
            for b in 1..=alg.d(k) {
                let keep = if k == sh.i {
                    a != sh.q && b != sh.r
                } else if k == sh.j {
                    a != sh.s && b != sh.p
                } else {
                    (a, b) != (1, 1)
                };
                if keep {
                    candidates.push(loop_el(k, a, b));
                }
            }
        }
    }
    candidates.push(loop_el(sh.i, sh.r, sh.r).plus(&loop_el(sh.j, sh.s, sh.s)));
    candidates.push(loop_el(sh.i, sh.q, sh.q).plus(&loop_el(sh.j, sh.p, sh.p)));

    let mut chosen: Vec<GradedElement> = vec![];
    let mut m = SparseMatrix::new(0, complex.dimension(1));
    for g in candidates {
        if g.is_zero() || !complex.is_cocycle(1, &g) {
            continue;
        }
        let mut trial = SparseMatrix::new(chosen.len() + 1, complex.dimension(1));
        for r in 0..chosen.len() {
            for (c, v) in m.row(r) {
                trial.add(r, *c, v);
            }
        }
        for (c, v) in complex.coordinates(1, &g).iter().enumerate() {
            trial.add(chosen.len(), c, v);
        }
        if trial.rank() == chosen.len() + 1 {
            chosen.push(g);
            m = trial;
        }
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(d: &[usize]) -> SemiSimpleAlgebra {
        SemiSimpleAlgebra::new(d).unwrap()
    }

    #[test]
    fn c_plus_c_pattern() {
        let a = alg(&[1, 1]);
        let p = DoubleTensor::monomial(&a, Arrow::y(2, 1, 1, 1), Arrow::y(1, 2, 1, 1)).unwrap();
        assert_eq!(betti_numbers(&a, &p, 4).unwrap(), vec![2, 0, 1, 0, 1]);
        assert!(h1_generators(&a, &p).unwrap().is_empty());
    }

    #[test]
    fn m2_plus_m2() {
        let a = alg(&[2, 2]);
        let p = DoubleTensor::monomial(&a, Arrow::y(2, 1, 1, 1), Arrow::y(1, 2, 2, 2)).unwrap();
        let c = build_complex(&a, &p, 1).unwrap();
        assert_eq!(c.dimension(1), 6);
        let b1 = c.betti(1).unwrap();
        assert_eq!(b1, printed_h1_formula(&a, 1, 2) + 1);
        assert_eq!(c.betti_transposed(1).unwrap(), b1);
        assert_eq!(h1_generators(&a, &p).unwrap().len(), b1);
    }

    #[test]
    fn rejects_non_poisson() {
        let a = alg(&[2, 2]);
        let p = DoubleTensor::monomial(&a, Arrow::y(2, 1, 1, 1), Arrow::y(1, 2, 1, 1)).unwrap();
        assert_eq!(build_complex(&a, &p, 1).unwrap_err(), CohomologyError::NotPoisson);
    }
}
