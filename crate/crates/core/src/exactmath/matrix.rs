use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rational::{common_denominator, Rational};
use super::MathError;

/// Dense matrix of polynomial (usually constant) entries.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn from_rationals(rows: Vec<Vec<Rational>>) -> Result<ExactMatrix, MathError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(MathError::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows.into_iter().flatten().map(Poly::constant).collect();
        Ok(ExactMatrix { rows: r, cols: c, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Poly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn to_sparse(&self) -> Result<SparseMatrix, MathError> {
        let mut s = SparseMatrix::new(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self
                    .get(r, c)
                    .as_constant()
                    .ok_or(MathError::PolynomialEntries { row: r, col: c })?;
                s.add(r, c, &v);
            }
        }
        Ok(s)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel: Vec<Vec<Rational>>,
}

/// Rank and a kernel basis of a constant matrix, by dense Bareiss elimination.
pub fn rank_and_kernel(m: &ExactMatrix) -> Result<RankKernel, MathError> {
    let mut rows = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut vals = Vec::with_capacity(m.cols());
        for c in 0..m.cols() {
            vals.push(
                m.get(r, c)
                    .as_constant()
                    .ok_or(MathError::PolynomialEntries { row: r, col: c })?,
            );
        }
        let l = common_denominator(vals.iter());
        let scale = Rational::from_integer(l);
        rows.push(vals.iter().map(|x| (x * &scale).to_integer()).collect());
    }
    let ech = bareiss_echelon(rows, m.cols());
    Ok(RankKernel { rank: ech.pivots.len(), kernel: ech.kernel(m.cols()) })
}

/// Sparse rational matrix stored by rows.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Rational>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn add(&mut self, r: usize, c: usize, v: &Rational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            return;
        }
        let e = self.data[r].entry(c).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.data[r].remove(&c);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Rational> {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                t.data[*c].insert(r, v.clone());
            }
        }
        t
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, MathError> {
        if self.cols != other.rows {
            return Err(MathError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = SparseMatrix::new(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    out.add(r, *c, &(a * b));
                }
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, Poly::constant(v.clone()));
            }
        }
        m
    }

    /// Rank by incremental sparse elimination.
    pub fn rank(&self) -> usize {
        self.echelon().len()
    }

    /// Rank and kernel basis. Each kernel vector has a single 1 in a
    /// non-pivot column; vectors are ordered by that column.
    pub fn rank_and_kernel(&self) -> Result<RankKernel, MathError> {
        let ech = self.echelon();
        let rank = ech.len();
        let mut kernel = vec![];
        for free in (0..self.cols).filter(|c| !ech.contains_key(c)) {
            let mut x: BTreeMap<usize, Rational> = BTreeMap::new();
            x.insert(free, Rational::one());
            // Pivot rows only involve columns at or after their lead, so
            // solving from the last pivot backwards is well defined.
            for (&lead, row) in ech.iter().rev() {
                let mut s = Rational::zero();
                for (c, v) in row.iter().skip(1) {
                    if let Some(xc) = x.get(c) {
                        s += Rational::from_integer(v.clone()) * xc;
                    }
                }
                if !s.is_zero() {
                    x.insert(lead, -s / Rational::from_integer(row[0].1.clone()));
                }
            }
            let mut full = vec![Rational::zero(); self.cols];
            for (c, v) in x {
                full[c] = v;
            }
            kernel.push(full);
        }
        Ok(RankKernel { rank, kernel })
    }

    /// Integer echelon form keyed by leading column. Rows are scaled to
    /// primitive integer vectors, so no fractions appear during elimination.
    fn echelon(&self) -> BTreeMap<usize, Vec<(usize, BigInt)>> {
        let mut order: Vec<usize> = (0..self.rows).filter(|&r| !self.data[r].is_empty()).collect();
        order.sort_by_key(|&r| (self.data[r].len(), r));
        let mut piv: BTreeMap<usize, Vec<(usize, BigInt)>> = BTreeMap::new();
        for r in order {
            let row = &self.data[r];
            let l = common_denominator(row.values());
            let mut v: Vec<(usize, BigInt)> = row
                .iter()
                .map(|(c, x)| (*c, (x * Rational::from_integer(l.clone())).to_integer()))
                .collect();
            let mut k = 0;
            while k < v.len() {
                let c = v[k].0;
                let Some(p) = piv.get(&c) else {
                    k += 1;
                    continue;
                };
                v = eliminate(&v, p, &v[k].1.clone());
                // entries before position k are untouched and pivot-free
            }
            if !v.is_empty() {
                make_primitive(&mut v);
                piv.insert(v[0].0, v);
            }
        }
        piv
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.data
            .iter()
            .map(|row| row.iter().fold(Rational::zero(), |acc, (c, x)| acc + x * &v[*c]))
            .collect()
    }
}

/// `a * row - f * pivot` where `a` is the pivot's leading entry.
fn eliminate(row: &[(usize, BigInt)], pivot: &[(usize, BigInt)], f: &BigInt) -> Vec<(usize, BigInt)> {
    let a = &pivot[0].1;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(f * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &row[i - 1].1 - f * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    make_primitive(&mut out);
    out
}

fn make_primitive(v: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, x) in v.iter() {
        g = num_integer::Integer::gcd(&g, x);
        if g.is_one() {
            break;
        }
    }
    if v.first().is_some_and(|e| e.1.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

/// Fraction-free elimination; every division is exact.
fn bareiss_echelon(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let piv = &head[r];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..ncols {
                let v = &piv[c] * &row[j] - &f * &piv[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon { rows: m, pivots }
}

impl Echelon {
    fn kernel(&self, ncols: usize) -> Vec<Vec<Rational>> {
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; ncols];
            for &p in &self.pivots {
                v[p] = true;
            }
            v
        };
        let mut out = vec![];
        for free in (0..ncols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Rational::zero(); ncols];
            x[free] = Rational::one();
            for (k, &pc) in self.pivots.iter().enumerate().rev() {
                let row = &self.rows[k];
                let mut s = Rational::zero();
                for j in pc + 1..ncols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s += Rational::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[pc] = -s / Rational::from_integer(row[pc].clone());
            }
            out.push(x);
        }
        out
    }
}
