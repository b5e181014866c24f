//! Necklaces (cyclic words in the double derivation quiver) and the graded
//! Lie bracket obtained by gluing them along matching colours.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::SemiSimpleAlgebra;
use crate::exactmath::{Poly, Rational};
use crate::quiver::{build_quiver, Arrow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NecklaceError {
    #[error("arrows {0} and {1} do not compose")]
    NonComposable(Arrow, Arrow),
    #[error("empty word")]
    EmptyWord,
    #[error("arrow {0} does not belong to the quiver of this algebra")]
    ForeignArrow(Arrow),
}

/// A basis element of the commutator quotient: a vertex symbol in degree 0
/// or a cyclic word stored as its canonical rotation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Necklace {
    Vertex(usize),
    Cycle(Vec<Arrow>),
}

impl Necklace {
    pub fn degree(&self) -> usize {
        match self {
            Necklace::Vertex(_) => 0,
            Necklace::Cycle(w) => w.len(),
        }
    }

    pub fn arrows(&self) -> &[Arrow] {
        match self {
            Necklace::Vertex(_) => &[],
            Necklace::Cycle(w) => w,
        }
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        match self {
            Necklace::Vertex(v) => [*v].into(),
            Necklace::Cycle(w) => w.iter().flat_map(|a| [a.head, a.tail]).collect(),
        }
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Necklace::Vertex(v) => write!(f, "({v})"),
            Necklace::Cycle(w) => {
                write!(f, "({})", w[0].tail)?;
                for a in w {
                    write!(f, "-[{},{}]->({})", a.primary, a.secondary, a.head)?;
                }
                Ok(())
            }
        }
    }
}

fn check_composable(word: &[Arrow]) -> Result<(), NecklaceError> {
    if word.is_empty() {
        return Err(NecklaceError::EmptyWord);
    }
    let n = word.len();
    for t in 0..n {
        let (a, b) = (word[t], word[(t + 1) % n]);
        if a.head != b.tail {
            return Err(NecklaceError::NonComposable(a, b));
        }
    }
    Ok(())
}

/// Rotates a cyclic word to its least rotation. Odd generators give the
/// rotation by `s` steps the sign `(-1)^{(n-1)s}`. `Ok(None)` means the
/// word is zero in the quotient (it equals one of its rotations with sign -1).
pub fn canonicalize(word: &[Arrow]) -> Result<Option<(Necklace, i64)>, NecklaceError> {
    check_composable(word)?;
    let n = word.len();
    let sign = |s: usize| if ((n - 1) * s) % 2 == 0 { 1 } else { -1 };
    let mut best: Option<(Vec<Arrow>, i64)> = None;
    for s in 0..n {
        let rot: Vec<Arrow> = word[s..].iter().chain(&word[..s]).copied().collect();
        if s > 0 && rot == word && sign(s) == -1 {
            return Ok(None);
        }
        if best.as_ref().map_or(true, |(b, _)| rot < *b) {
            best = Some((rot, sign(s)));
        }
    }
    let (w, sg) = best.expect("nonempty word");
    Ok(Some((Necklace::Cycle(w), sg)))
}

/// Replaces every shorthand loop `x^i_{11}` by `-sum_{r >= 2} x^i_{rr}`.
pub fn expand_shorthand(alg: &SemiSimpleAlgebra, word: &[Arrow]) -> Vec<(i64, Vec<Arrow>)> {
    let mut out = vec![(1i64, Vec::with_capacity(word.len()))];
    for &a in word {
        if a.is_shorthand() {
            let mut next = vec![];
            for (c, w) in &out {
                for r in 2..=alg.d(a.head) {
                    let mut w2 = w.clone();
                    w2.push(Arrow::x(a.head, r, r));
                    next.push((-c, w2));
                }
            }
            out = next;
        } else {
            for (_, w) in out.iter_mut() {
                w.push(a);
            }
        }
    }
    out
}

/// Integer combination of necklaces, used for word-level results.
pub type NecklaceSum = BTreeMap<Necklace, i64>;

fn add_word(acc: &mut NecklaceSum, alg: &SemiSimpleAlgebra, word: &[Arrow], coeff: i64) {
    for (c, w) in expand_shorthand(alg, word) {
        if let Some((nk, s)) = canonicalize(&w).expect("glued words compose") {
            let e = acc.entry(nk.clone()).or_insert(0);
            *e += c * s * coeff;
            if *e == 0 {
                acc.remove(&nk);
            }
        }
    }
}

/// `{w1, w2}` for two cyclic words, given by any representatives.
///
/// For every arrow `v` of `w1` and `u` of `w2` that meet at a vertex with
/// matching colours, both arrows are removed, the remainder of `w1` is
/// spliced into `w2`, and one connecting arrow is inserted. When
/// `head(u) = tail(v)` and the primary colour of `u` equals the secondary
/// colour of `v`, the new arrow carries the primary colour of `v` and the
/// secondary colour of `u`; the mirrored case is symmetric.
pub fn bracket_words(alg: &SemiSimpleAlgebra, w1: &[Arrow], w2: &[Arrow]) -> NecklaceSum {
    let mut acc = NecklaceSum::new();
    let (n, m) = (w1.len(), w2.len());
    let pm = |e: usize| if e % 2 == 0 { 1i64 } else { -1 };
    for i in 0..m {
        let u = w2[i];
        for j in 0..n {
            let v = w1[j];
            let s0 = pm(i * (n - 1));
            let rest: Vec<Arrow> = w1[j + 1..].iter().chain(&w1[..j]).copied().collect();
            if u.head == v.tail && u.primary == v.secondary {
                let new = Arrow { tail: u.tail, head: v.head, primary: v.primary, secondary: u.secondary };
                let mut w: Vec<Arrow> = w2[..i].to_vec();
                w.push(new);
                w.extend(&rest);
                w.extend(&w2[i + 1..]);
                add_word(&mut acc, alg, &w, -s0 * pm(j * (n - j)));
            }
            if u.tail == v.head && u.secondary == v.primary {
                let new = Arrow { tail: v.tail, head: u.head, primary: u.primary, secondary: v.secondary };
                let mut w: Vec<Arrow> = w2[..i].to_vec();
                w.extend(&rest);
                w.push(new);
                w.extend(&w2[i + 1..]);
                add_word(&mut acc, alg, &w, s0 * pm((j + 1) * (n - j - 1)));
            }
        }
    }
    acc
}

/// Linear combination of necklaces with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GradedElement {
    terms: BTreeMap<Necklace, Poly>,
}

impl GradedElement {
    pub fn zero() -> GradedElement {
        GradedElement::default()
    }

    pub fn vertex(v: usize) -> GradedElement {
        let mut g = GradedElement::zero();
        g.add(Necklace::Vertex(v), Poly::one());
        g
    }

    /// The class of a composable cyclic word, shorthand loops expanded.
    pub fn from_word(alg: &SemiSimpleAlgebra, word: &[Arrow], coeff: Poly) -> Result<GradedElement, NecklaceError> {
        check_composable(word)?;
        for a in word {
            if !a.fits(alg) {
                return Err(NecklaceError::ForeignArrow(*a));
            }
        }
        let mut g = GradedElement::zero();
        let mut acc = NecklaceSum::new();
        add_word(&mut acc, alg, word, 1);
        for (nk, c) in acc {
            g.add(nk, coeff.scale(&Rational::from_integer(c.into())));
        }
        Ok(g)
    }

    pub fn from_sum(sum: &NecklaceSum) -> GradedElement {
        let mut g = GradedElement::zero();
        for (nk, c) in sum {
            g.add(nk.clone(), Poly::from_int(*c));
        }
        g
    }

    pub fn add(&mut self, nk: Necklace, c: Poly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(nk.clone()).or_insert_with(Poly::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&nk);
        }
    }

    pub fn add_scaled(&mut self, other: &GradedElement, c: &Poly) {
        for (nk, v) in &other.terms {
            self.add(nk.clone(), v * c);
        }
    }

    pub fn plus(&self, other: &GradedElement) -> GradedElement {
        let mut g = self.clone();
        g.add_scaled(other, &Poly::one());
        g
    }

    pub fn scale(&self, c: &Poly) -> GradedElement {
        let mut g = GradedElement::zero();
        g.add_scaled(self, c);
        g
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

    pub fn terms(&self) -> &BTreeMap<Necklace, Poly> {
        &self.terms
    }

    pub fn coefficient(&self, nk: &Necklace) -> Poly {
        self.terms.get(nk).cloned().unwrap_or_default()
    }

    /// The common degree of all terms, if there is one.
    pub fn degree(&self) -> Option<usize> {
        let degs: BTreeSet<usize> = self.terms.keys().map(Necklace::degree).collect();
        (degs.len() == 1).then(|| *degs.iter().next().unwrap())
    }

    pub fn eval(&self, values: &BTreeMap<String, Rational>) -> GradedElement {
        let mut g = GradedElement::zero();
        for (nk, c) in &self.terms {
            g.add(nk.clone(), c.eval(values));
        }
        g
    }

    /// All coefficients are constants.
    pub fn is_numeric(&self) -> bool {
        self.terms.values().all(Poly::is_constant)
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (nk, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {nk}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    necklace: Necklace,
    coeff: Poly,
}

impl Serialize for GradedElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Term> = self
            .terms
            .iter()
            .map(|(n, c)| Term { necklace: n.clone(), coeff: c.clone() })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<Term>::deserialize(d)?;
        let mut g = GradedElement::zero();
        for t in v {
            g.add(t.necklace, t.coeff);
        }
        Ok(g)
    }
}

/// The bracket on the commutator quotient, extended bilinearly. Vertex
/// symbols bracket to zero with everything.
pub fn necklace_bracket(alg: &SemiSimpleAlgebra, a: &GradedElement, b: &GradedElement) -> GradedElement {
    let mut out = GradedElement::zero();
    for (na, ca) in &a.terms {
        let Necklace::Cycle(wa) = na else { continue };
        for (nb, cb) in &b.terms {
            let Necklace::Cycle(wb) = nb else { continue };
            let coeff = ca * cb;
            for (nk, c) in bracket_words(alg, wa, wb) {
                out.add(nk, coeff.scale(&Rational::from_integer(c.into())));
            }
        }
    }
    out
}

/// All necklaces of the given degree, sorted.
pub fn necklace_basis(alg: &SemiSimpleAlgebra, degree: usize) -> Vec<Necklace> {
    if degree == 0 {
        return (1..=alg.k()).map(Necklace::Vertex).collect();
    }
    let q = build_quiver(alg);
    let mut found = BTreeSet::new();
    let mut word = Vec::with_capacity(degree);
    fn rec(q: &[Arrow], degree: usize, word: &mut Vec<Arrow>, found: &mut BTreeSet<Necklace>) {
        if word.len() == degree {
            if word[degree - 1].head == word[0].tail {
                if let Ok(Some((nk, _))) = canonicalize(word) {
                    found.insert(nk);
                }
            }
            return;
        }
        for &a in q {
            // only words starting at their least arrow can be canonical
            if word.first().is_some_and(|f| a < *f) {
                continue;
            }
            if word.last().map_or(true, |l| l.head == a.tail) {
                word.push(a);
                rec(q, degree, word, found);
                word.pop();
            }
        }
    }
    rec(&q.arrows, degree, &mut word, &mut found);
    found.into_iter().collect()
}
