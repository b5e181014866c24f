//! Trace words on the free product `C^p * C^q` and the brackets induced there
//! by double Poisson tensors on the two factors.
//!
//! Words alternate `e_{i_1} f_{i_1'} e_{i_2} f_{i_2'} ...` and are written as
//! lists of index pairs `(i, i')`, 1-based.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactmath::{int, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeProductError {
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("coefficients must be numeric for evaluation")]
    SymbolicCoefficients,
    #[error("block sizes {0:?} do not sum to n")]
    BlockMismatch(Vec<usize>),
    #[error("no invertible conjugator found")]
    SingularConjugator,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    E(usize),
    F(usize),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(i) => write!(f, "e{i}"),
            Letter::F(i) => write!(f, "f{i}"),
        }
    }
}

/// Letters `e_{i_1} f_{i_1'} ...` of a word given by index pairs.
pub fn letters(pairs: &[(usize, usize)]) -> Vec<Letter> {
    pairs.iter().flat_map(|&(e, f)| [Letter::E(e), Letter::F(f)]).collect()
}

fn show_letters(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(Letter::to_string).collect::<Vec<_>>().join("*")
}

/// Product of open words: `e_a e_b = delta_ab e_a`, likewise for `f`.
pub fn multiply(a: &[Letter], b: &[Letter]) -> Option<Vec<Letter>> {
    let mut out = a.to_vec();
    for &l in b {
        match (out.last(), l) {
            (Some(&Letter::E(x)), Letter::E(y)) | (Some(&Letter::F(x)), Letter::F(y)) => {
                if x != y {
                    return None;
                }
            }
            _ => out.push(l),
        }
    }
    Some(out)
}

/// `tr(w)` in canonical form: the least rotation by whole `(e, f)` pairs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TraceWord {
    pairs: Vec<(usize, usize)>,
}

impl TraceWord {
    pub fn new(pairs: &[(usize, usize)]) -> Result<TraceWord, FreeProductError> {
        if pairs.is_empty() {
            return Err(FreeProductError::MalformedWord("empty word".into()));
        }
        let n = pairs.len();
        let best = (0..n)
            .map(|s| pairs[s..].iter().chain(&pairs[..s]).copied().collect::<Vec<_>>())
            .min()
            .expect("nonempty");
        Ok(TraceWord { pairs: best })
    }

    /// Trace of a cyclically alternating letter sequence of even length.
    pub fn from_letters(w: &[Letter]) -> Result<TraceWord, FreeProductError> {
        let bad = || FreeProductError::MalformedWord(show_letters(w));
        if w.is_empty() || w.len() % 2 == 1 {
            return Err(bad());
        }
        let start = usize::from(matches!(w[0], Letter::F(_)));
        let mut pairs = vec![];
        for t in (0..w.len()).step_by(2) {
            match (w[(start + t) % w.len()], w[(start + t + 1) % w.len()]) {
                (Letter::E(a), Letter::F(b)) => pairs.push((a, b)),
                _ => return Err(bad()),
            }
        }
        TraceWord::new(&pairs)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn letters(&self) -> Vec<Letter> {
        letters(&self.pairs)
    }
}

impl fmt::Display for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tr({})", show_letters(&self.letters()))
    }
}

impl Serialize for TraceWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Formal linear combination of trace words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TraceSum {
    terms: BTreeMap<TraceWord, Poly>,
}

impl TraceSum {
    pub fn zero() -> TraceSum {
        TraceSum::default()
    }

    pub fn word(w: TraceWord) -> TraceSum {
        let mut s = TraceSum::zero();
        s.add(w, Poly::one());
        s
    }

    pub fn add(&mut self, w: TraceWord, c: Poly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Poly::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &TraceSum, c: &Poly) {
        for (w, v) in &other.terms {
            self.add(w.clone(), v * c);
        }
    }

    pub fn plus(&self, other: &TraceSum) -> TraceSum {
        let mut s = self.clone();
        s.add_scaled(other, &Poly::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<TraceWord, Poly> {
        &self.terms
    }

    pub fn eval(&self, values: &BTreeMap<String, Rational>) -> TraceSum {
        let mut s = TraceSum::zero();
        for (w, c) in &self.terms {
            s.add(w.clone(), c.eval(values));
        }
        s
    }
}

impl fmt::Display for TraceSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TraceTerm<'a> {
    word: &'a TraceWord,
    coeff: &'a Poly,
}

impl Serialize for TraceSum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TraceTerm> = self.terms.iter().map(|(word, coeff)| TraceTerm { word, coeff }).collect();
        v.serialize(s)
    }
}

/// Element of `(S*T) (x) (S*T)` spanned by pairs of open words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WordTensor {
    terms: BTreeMap<(Vec<Letter>, Vec<Letter>), Poly>,
}

impl WordTensor {
    pub fn zero() -> WordTensor {
        WordTensor::default()
    }

    pub fn add(&mut self, a: Vec<Letter>, b: Vec<Letter>, c: Poly) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let e = self.terms.entry(key.clone()).or_insert_with(Poly::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(Vec<Letter>, Vec<Letter>), Poly> {
        &self.terms
    }

    pub fn plus(&self, other: &WordTensor) -> WordTensor {
        let mut s = self.clone();
        for ((a, b), c) in &other.terms {
            s.add(a.clone(), b.clone(), c.clone());
        }
        s
    }

    pub fn minus(&self, other: &WordTensor) -> WordTensor {
        let mut s = self.clone();
        for ((a, b), c) in &other.terms {
            s.add(a.clone(), b.clone(), -c.clone());
        }
        s
    }

    /// `u' (x) u'' -> u'' (x) u'`.
    pub fn flip(&self) -> WordTensor {
        let mut s = WordTensor::zero();
        for ((a, b), c) in &self.terms {
            s.add(b.clone(), a.clone(), c.clone());
        }
        s
    }

    /// `sum tr(u' u'')`, the pairing that turns a double bracket into a
    /// bracket of traces.
    pub fn trace_pairing(&self) -> Result<TraceSum, FreeProductError> {
        let mut s = TraceSum::zero();
        for ((a, b), c) in &self.terms {
            let Some(w) = multiply(a, b) else { continue };
            let w = cyclic_reduce(w);
            if w.is_empty() {
                continue;
            }
            s.add(TraceWord::from_letters(&w)?, c.clone());
        }
        Ok(s)
    }
}

/// Merges a matching first and last letter, which trace invariance allows.
fn cyclic_reduce(mut w: Vec<Letter>) -> Vec<Letter> {
    while w.len() > 1 && std::mem::discriminant(&w[0]) == std::mem::discriminant(&w[w.len() - 1]) {
        if w[0] != w[w.len() - 1] {
            return vec![];
        }
        w.pop();
    }
    w
}

impl fmt::Display for WordTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("({c})*{} ⊗ {}", show_letters(a), show_letters(b)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Pair coefficients `c_{ij}` of `P = sum c_ij a_ij a_ji` on `C^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairCoefficients {
    pub n: usize,
    pub values: BTreeMap<(usize, usize), Poly>,
}

impl PairCoefficients {
    pub fn new(n: usize, values: BTreeMap<(usize, usize), Poly>) -> Result<PairCoefficients, FreeProductError> {
        for &(i, j) in values.keys() {
            for x in [i, j] {
                if x == 0 || x > n {
                    return Err(FreeProductError::IndexOutOfRange { index: x, bound: n });
                }
            }
        }
        Ok(PairCoefficients { n, values })
    }

    pub fn get(&self, i: usize, j: usize) -> Poly {
        self.values.get(&(i, j)).cloned().unwrap_or_else(Poly::zero)
    }

    /// `c_ij - c_ji`.
    pub fn bar(&self, i: usize, j: usize) -> Poly {
        &self.get(i, j) - &self.get(j, i)
    }

    /// `c_ij = 1/(mu_i - mu_j)` for `i < j`. With distinct `mu` every triple
    /// relation `c_ij c_ik + c_ik c_jk - c_ij c_jk = 0` holds.
    pub fn from_points(mu: &[Rational]) -> PairCoefficients {
        let mut values = BTreeMap::new();
        for i in 0..mu.len() {
            for j in i + 1..mu.len() {
                values.insert((i + 1, j + 1), Poly::constant(Rational::one() / (&mu[i] - &mu[j])));
            }
        }
        PairCoefficients { n: mu.len(), values }
    }

    /// `-sum_{s != a} bar(a, s) x_s` as (index, coefficient) pairs.
    fn barred(&self, a: usize) -> Vec<(usize, Poly)> {
        (1..=self.n).filter(|&s| s != a).map(|s| (s, -self.bar(a, s))).collect()
    }
}

fn check_word(pairs: &[(usize, usize)], p: usize, q: usize) -> Result<(), FreeProductError> {
    if pairs.is_empty() {
        return Err(FreeProductError::MalformedWord("empty word".into()));
    }
    for &(e, f) in pairs {
        for (x, bound) in [(e, p), (f, q)] {
            if x == 0 || x > bound {
                return Err(FreeProductError::IndexOutOfRange { index: x, bound });
            }
        }
    }
    Ok(())
}

fn cat(parts: &[&[Letter]]) -> Vec<Letter> {
    parts.concat()
}

/// `<<x, y>>` on `S * T` as the four families of the closed formula: a
/// mismatched `f` pair weighted by `d_bar`, a mismatched `e` pair weighted by
/// `c_bar`, and the matching pairs with `f_bar` or `e_bar` substituted.
pub fn amalgamated_double_bracket(
    x: &[(usize, usize)],
    y: &[(usize, usize)],
    c: &PairCoefficients,
    d: &PairCoefficients,
) -> Result<WordTensor, FreeProductError> {
    check_word(x, c.n, d.n)?;
    check_word(y, c.n, d.n)?;
    let (xl, yl) = (letters(x), letters(y));
    let mut out = WordTensor::zero();
    for l in 0..x.len() {
        let (il, il2) = x[l];
        for k in 0..y.len() {
            let (jk, jk2) = y[k];
            // f family: y up to e_{j_k}, then the pair, then y after f_{j_k'}
            let (pre, post) = (&yl[..=2 * k], &yl[2 * k + 2..]);
            let inserted: Vec<(Letter, Poly)> = if jk2 != il2 {
                vec![(Letter::F(jk2), d.bar(il2, jk2))]
            } else {
                d.barred(jk2).into_iter().map(|(s, v)| (Letter::F(s), v)).collect()
            };
            for (g, coeff) in inserted {
                out.add(cat(&[pre, &xl[2 * l + 1..]]), cat(&[&xl[..=2 * l], &[g], post]), coeff.clone());
                out.add(cat(&[pre, &[g], &xl[2 * l + 2..]]), cat(&[&xl[..2 * l + 2], post]), -coeff);
            }
            // e family: y up to f_{j_{k-1}'}, then the pair, then y from f_{j_k'}
            let (pre, post) = (&yl[..2 * k], &yl[2 * k + 1..]);
            let inserted: Vec<(Letter, Poly)> = if jk != il {
                vec![(Letter::E(jk), c.bar(il, jk))]
            } else {
                c.barred(jk).into_iter().map(|(s, v)| (Letter::E(s), v)).collect()
            };
            for (g, coeff) in inserted {
                out.add(cat(&[pre, &xl[2 * l..]]), cat(&[&xl[..2 * l], &[g], post]), coeff.clone());
                out.add(cat(&[pre, &[g], &xl[2 * l + 1..]]), cat(&[&xl[..=2 * l], post]), -coeff);
            }
        }
    }
    Ok(out)
}

/// `sigma^m`: moves the first `m` letters to the end.
fn sigma(w: &[Letter], m: usize) -> Vec<Letter> {
    let m = m % w.len();
    cat(&[&w[m..], &w[..m]])
}

fn trace_of(a: &[Letter], b: &[Letter]) -> TraceWord {
    TraceWord::from_letters(&cat(&[a, b])).expect("rotations of alternating words stay alternating")
}

/// `{tr x, tr y}` from the closed trace formula.
///
/// For each `l`, `k` the pair `sigma^{2l}(x) sigma^{2k}(y)` is weighted by
/// `c_bar_{i_{l+1} j_{k+1}}`; this is the index produced by regrouping the
/// terms `tr(sigma^{2(l-1)}(x) sigma^{2(k-1)}(y))`.
pub fn induced_trace_bracket(
    x: &[(usize, usize)],
    y: &[(usize, usize)],
    c: &PairCoefficients,
    d: &PairCoefficients,
) -> Result<TraceSum, FreeProductError> {
    check_word(x, c.n, d.n)?;
    check_word(y, c.n, d.n)?;
    let (p, q) = (x.len(), y.len());
    let (xl, yl) = (letters(x), letters(y));
    let mut out = TraceSum::zero();
    for l in 1..=p {
        let (il, il2) = x[l - 1];
        let il_next = x[l % p].0;
        let odd_x = sigma(&xl, 2 * l - 1);
        let even_x = sigma(&xl, 2 * l);
        for k in 1..=q {
            let (jk, jk2) = y[k - 1];
            let jk_next = y[k % q].0;
            let odd_y = sigma(&yl, 2 * k - 1);
            let even_y = sigma(&yl, 2 * k);
            if jk2 != il2 {
                let dv = d.bar(il2, jk2);
                out.add(trace_of(&odd_x, &odd_y), dv.clone());
                out.add(trace_of(&even_x, &even_y), -dv);
            }
            if jk != il {
                out.add(trace_of(&odd_x, &odd_y), -c.bar(il, jk));
            }
            if jk_next != il_next {
                out.add(trace_of(&even_x, &even_y), c.bar(il_next, jk_next));
            }
            if jk2 == il2 {
                // y_k: f_bar in place of f_{j_k'}
                for (s, v) in d.barred(jk2) {
                    let mut yk = yl.clone();
                    yk[2 * k - 1] = Letter::F(s);
                    out.add(trace_of(&odd_x, &sigma(&yk, 2 * k - 1)), v.clone());
                    out.add(trace_of(&even_x, &sigma(&yk, 2 * k)), -v);
                }
            }
            if jk == il {
                // _k y: e_bar in place of e_{j_k}
                for (s, v) in c.barred(jk) {
                    let mut ky = yl.clone();
                    ky[2 * k - 2] = Letter::E(s);
                    out.add(trace_of(&sigma(&xl, 2 * l - 2), &sigma(&ky, 2 * k - 2)), v.clone());
                    out.add(trace_of(&odd_x, &sigma(&ky, 2 * k - 1)), -v);
                }
            }
        }
    }
    Ok(out)
}

/// Bilinear extension of [`induced_trace_bracket`] to sums.
pub fn bracket_sums(a: &TraceSum, b: &TraceSum, c: &PairCoefficients, d: &PairCoefficients) -> Result<TraceSum, FreeProductError> {
    let mut out = TraceSum::zero();
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            let br = induced_trace_bracket(wa.pairs(), wb.pairs(), c, d)?;
            out.add_scaled(&br, &(ca * cb));
        }
    }
    Ok(out)
}

/// Dense exact square matrix.
pub type RMatrix = Vec<Vec<Rational>>;

fn mat_identity(n: usize) -> RMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect()).collect()
}

pub fn mat_mul(a: &RMatrix, b: &RMatrix) -> RMatrix {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

pub fn mat_trace(a: &RMatrix) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).fold(Rational::zero(), |s, x| s + x)
}

/// Gauss-Jordan inverse; `None` when singular.
fn mat_inverse(a: &RMatrix) -> Option<RMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.iter().zip(mat_identity(n)).map(|(r, e)| [r.clone(), e].concat()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = Rational::one() / &m[col][col];
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..2 * n {
                    let v = &f * &m[col][j];
                    m[r][j] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn block_projectors(blocks: &[usize]) -> Vec<RMatrix> {
    let n: usize = blocks.iter().sum();
    let mut out = vec![];
    let mut start = 0;
    for &b in blocks {
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate().skip(start).take(b) {
            row[i] = int(1);
        }
        out.push(m);
        start += b;
    }
    out
}

/// A point of `rep_n(C^p * C^q)`: two complete systems of orthogonal
/// idempotents in `M_n`.
#[derive(Clone, PartialEq, Debug)]
pub struct Representation {
    pub n: usize,
    pub e_blocks: Vec<usize>,
    pub f_blocks: Vec<usize>,
    pub e_projectors: Vec<RMatrix>,
    pub f_projectors: Vec<RMatrix>,
}

/// Every block gets one dimension while `n` allows; the rest is random.
fn random_blocks(rng: &mut ChaCha8Rng, n: usize, parts: usize) -> Vec<usize> {
    let mut b = vec![0; parts];
    let base = n.min(parts);
    for x in b.iter_mut().take(base) {
        *x = 1;
    }
    b.shuffle(rng);
    for _ in base..n {
        b[rng.gen_range(0..parts)] += 1;
    }
    b
}

impl Representation {
    /// `e_i` diagonal; `f_j = g D_j g^{-1}` with `g` drawn from `seed`.
    pub fn with_blocks(e_blocks: &[usize], f_blocks: &[usize], seed: u64) -> Result<Representation, FreeProductError> {
        let n: usize = e_blocks.iter().sum();
        if f_blocks.iter().sum::<usize>() != n {
            return Err(FreeProductError::BlockMismatch(f_blocks.to_vec()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            let g: RMatrix = (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
            let Some(gi) = mat_inverse(&g) else { continue };
            let f_projectors = block_projectors(f_blocks).iter().map(|d| mat_mul(&mat_mul(&g, d), &gi)).collect();
            return Ok(Representation {
                n,
                e_blocks: e_blocks.to_vec(),
                f_blocks: f_blocks.to_vec(),
                e_projectors: block_projectors(e_blocks),
                f_projectors,
            });
        }
        Err(FreeProductError::SingularConjugator)
    }

    pub fn letter(&self, l: Letter) -> Result<&RMatrix, FreeProductError> {
        let (list, i) = match l {
            Letter::E(i) => (&self.e_projectors, i),
            Letter::F(i) => (&self.f_projectors, i),
        };
        if i == 0 || i > list.len() {
            return Err(FreeProductError::IndexOutOfRange { index: i, bound: list.len() });
        }
        Ok(&list[i - 1])
    }

    /// Matrix of an open word; the empty word is the identity.
    pub fn word_matrix(&self, w: &[Letter]) -> Result<RMatrix, FreeProductError> {
        let mut m = mat_identity(self.n);
        for &l in w {
            m = mat_mul(&m, self.letter(l)?);
        }
        Ok(m)
    }
}

/// Random block sizes (possibly zero) and conjugator, all from `seed`.
pub fn random_representation(n: usize, p: usize, q: usize, seed: u64) -> Result<Representation, FreeProductError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = random_blocks(&mut rng, n, p);
    let f = random_blocks(&mut rng, n, q);
    Representation::with_blocks(&e, &f, rng.gen())
}

/// `sum coeff * tr(word)` at a representation.
pub fn evaluate_on_representation(w: &TraceSum, rep: &Representation) -> Result<Rational, FreeProductError> {
    let mut total = Rational::zero();
    for (word, c) in w.terms() {
        let c = c.as_constant().ok_or(FreeProductError::SymbolicCoefficients)?;
        total += c * mat_trace(&rep.word_matrix(&word.letters())?);
    }
    Ok(total)
}

/// `sum_{i,j} <<x,y>>'_{ij} <<x,y>>''_{ji}` at a representation.
pub fn evaluate_pairing(t: &WordTensor, rep: &Representation) -> Result<Rational, FreeProductError> {
    let mut total = Rational::zero();
    for ((a, b), c) in t.terms() {
        let c = c.as_constant().ok_or(FreeProductError::SymbolicCoefficients)?;
        let (ma, mb) = (rep.word_matrix(a)?, rep.word_matrix(b)?);
        let mut s = Rational::zero();
        for i in 0..rep.n {
            for j in 0..rep.n {
                s += &ma[i][j] * &mb[j][i];
            }
        }
        total += c * s;
    }
    Ok(total)
}
