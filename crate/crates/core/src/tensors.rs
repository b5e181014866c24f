//! Degree-two double Poisson tensors: classification of monomials, the
//! `{P,P}` test and moment maps.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{gauge_element, Element, ExplicitDoubleDerivation, MatrixUnit, SemiSimpleAlgebra};
use crate::exactmath::{int, Poly, Rational, SparseMatrix};
use crate::necklace::{canonicalize, necklace_bracket, GradedElement, Necklace};
use crate::quiver::{build_quiver, Arrow};
use crate::schouten::generator_derivation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("{0} followed by {1} is not a 2-cycle")]
    NotACycle(Arrow, Arrow),
    #[error("arrow {0} is not a basis arrow of this quiver")]
    ForeignArrow(Arrow),
    #[error("the tensor is not Poisson: {{P,P}} does not vanish modulo commutators")]
    NotPoisson,
    #[error("no moment map: c_{0}{1} is zero")]
    NoMomentMap(usize, usize),
    #[error("coefficients must be numeric")]
    SymbolicCoefficients,
    #[error("moment maps are only defined for commutative S")]
    WrongAlgebra,
}

/// A degree-two element `sum coeff * first second` of `DS`, every monomial a
/// 2-cycle.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DoubleTensor {
    terms: BTreeMap<(Arrow, Arrow), Poly>,
}

fn check_pair(alg: &SemiSimpleAlgebra, a: Arrow, b: Arrow) -> Result<(), TensorError> {
    for x in [a, b] {
        if !x.fits(alg) || x.is_shorthand() {
            return Err(TensorError::ForeignArrow(x));
        }
    }
    if a.head != b.tail || b.head != a.tail {
        return Err(TensorError::NotACycle(a, b));
    }
    Ok(())
}

impl DoubleTensor {
    pub fn zero() -> DoubleTensor {
        DoubleTensor::default()
    }

    pub fn monomial(alg: &SemiSimpleAlgebra, a: Arrow, b: Arrow) -> Result<DoubleTensor, TensorError> {
        let mut p = DoubleTensor::zero();
        p.add(alg, a, b, Poly::one())?;
        Ok(p)
    }

    pub fn add(&mut self, alg: &SemiSimpleAlgebra, a: Arrow, b: Arrow, c: Poly) -> Result<(), TensorError> {
        check_pair(alg, a, b)?;
        if c.is_zero() {
            return Ok(());
        }
        let e = self.terms.entry((a, b)).or_insert_with(Poly::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
        Ok(())
    }

    /// `sum_{i<j} c_{ij} y^{ij} y^{ji}` over `C^{+n}`.
    pub fn commutative_pairs(
        alg: &SemiSimpleAlgebra,
        c: &BTreeMap<(usize, usize), Poly>,
    ) -> Result<DoubleTensor, TensorError> {
        if !alg.is_commutative() {
            return Err(TensorError::WrongAlgebra);
        }
        let mut p = DoubleTensor::zero();
        for (&(i, j), v) in c {
            p.add(alg, Arrow::y(i, j, 1, 1), Arrow::y(j, i, 1, 1), v.clone())?;
        }
        Ok(p)
    }

    /// The generic tensor with one parameter per pair of vertices.
    pub fn symbolic_commutative(n: usize) -> DoubleTensor {
        let alg = SemiSimpleAlgebra::commutative(n).expect("n >= 1");
        let mut c = BTreeMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                c.insert((i, j), Poly::var(&alpha_name(i, j)));
            }
        }
        DoubleTensor::commutative_pairs(&alg, &c).expect("commutative")
    }

    pub fn terms(&self) -> &BTreeMap<(Arrow, Arrow), Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_numeric(&self) -> bool {
        self.terms.values().all(Poly::is_constant)
    }

    pub fn eval(&self, values: &BTreeMap<String, Rational>) -> DoubleTensor {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            let v = v.eval(values);
            if !v.is_zero() {
                terms.insert(*k, v);
            }
        }
        DoubleTensor { terms }
    }

    /// The class of the tensor modulo graded commutators.
    pub fn to_graded(&self, alg: &SemiSimpleAlgebra) -> GradedElement {
        let mut g = GradedElement::zero();
        for ((a, b), c) in &self.terms {
            let w = GradedElement::from_word(alg, &[*a, *b], c.clone()).expect("validated 2-cycle");
            g = g.plus(&w);
        }
        g
    }
}

impl fmt::Display for DoubleTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{a}*{b}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TensorTerm {
    first: Arrow,
    second: Arrow,
    coeff: Poly,
}

impl Serialize for DoubleTensor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TensorTerm> = self
            .terms
            .iter()
            .map(|((a, b), c)| TensorTerm { first: *a, second: *b, coeff: c.clone() })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DoubleTensor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<TensorTerm>::deserialize(d)?;
        let mut terms = BTreeMap::new();
        for t in v {
            if t.first.head != t.second.tail || t.second.head != t.first.tail {
                return Err(serde::de::Error::custom("monomial is not a 2-cycle"));
            }
            if !t.coeff.is_zero() {
                terms.insert((t.first, t.second), t.coeff);
            }
        }
        Ok(DoubleTensor { terms })
    }
}

/// Parameter name for the coefficient of `y^{ij} y^{ji}`.
pub fn alpha_name(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("a{i}{j}")
    } else {
        format!("a{i}_{j}")
    }
}

/// Whether the monomial `a b` satisfies `{P,P} = 0`.
///
/// For `P = y^{pq}_{ab} y^{qp}_{cd}`: Poisson iff neither `a = d` with
/// `d_q >= 2` nor `b = c` with `d_p >= 2`. For loops `P = x_{pq} x_{rs}`:
/// Poisson iff `(p-q)(p-s)(r-s)(r-q) != 0`, or three of the four colours
/// agree in one of the patterns `p=q=r`, `r=s=p`, `q=r=s`, `p=q=s`, or the
/// two loops coincide.
pub fn is_poisson_monomial(alg: &SemiSimpleAlgebra, a: Arrow, b: Arrow) -> Result<bool, TensorError> {
    check_pair(alg, a, b)?;
    if a.is_loop() {
        let (p, q, r, s) = (a.primary, a.secondary, b.primary, b.secondary);
        let generic = p != q && p != s && r != s && r != q;
        Ok(generic
            || (p == q && q == r)
            || (r == s && s == p)
            || (q == r && r == s)
            || (p == q && q == s)
            || (p, q) == (r, s))
    } else {
        let (dp, dq) = (alg.d(a.head), alg.d(a.tail));
        let (ca, cb, cc, cd) = (a.primary, a.secondary, b.primary, b.secondary);
        Ok(!(ca == cd && dq >= 2) && !(cb == cc && dp >= 2))
    }
}

/// The case analysis exactly as printed, kept for comparison. Two of its
/// branches disagree with `{P,P}`; see [`is_poisson_monomial`].
pub fn printed_lemma_condition(alg: &SemiSimpleAlgebra, a: Arrow, b: Arrow) -> Result<bool, TensorError> {
    check_pair(alg, a, b)?;
    if a.is_loop() {
        let (p, q, r, s) = (a.primary, a.secondary, b.primary, b.secondary);
        Ok((p != q && p != s && r != s && r != q) || (p == q && q == r) || (r == s && s == p))
    } else {
        let sp = alg.d(a.head) == 1;
        let sq = alg.d(a.tail) == 1;
        let (ca, cb, cc, cd) = (a.primary, a.secondary, b.primary, b.secondary);
        Ok(match (sp, sq) {
            (false, false) => ca != cd && cb != cc,
            (false, true) => ca != cd,
            (true, false) => cb != cc,
            (true, true) => true,
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TensorCheck {
    pub poisson: bool,
    /// `{P,P}` modulo commutators.
    pub obstruction: GradedElement,
}

pub fn check_tensor(alg: &SemiSimpleAlgebra, p: &DoubleTensor) -> TensorCheck {
    let g = p.to_graded(alg);
    let obstruction = necklace_bracket(alg, &g, &g);
    TensorCheck { poisson: obstruction.is_zero(), obstruction }
}

/// Distinct coefficient polynomials of a graded element, each scaled so
/// that its leading term has coefficient 1.
pub fn obstruction_relations(g: &GradedElement) -> Vec<Poly> {
    let mut out: Vec<Poly> = vec![];
    for c in g.terms().values() {
        let lead = c.terms()[0].1.clone();
        let r = c.scale(&(Rational::one() / lead));
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out.sort_by_key(|p| p.to_string());
    out
}

/// `a_ij a_ik + a_ik a_jk - a_ij a_jk` for `i < j < k`.
pub fn no_joint_vertex_relations(n: usize) -> Vec<Poly> {
    let v = |i, j| Poly::var(&alpha_name(i, j));
    let mut out = vec![];
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push(&(&(&v(i, j) * &v(i, k)) + &(&v(i, k) * &v(j, k))) - &(&v(i, j) * &v(j, k)));
            }
        }
    }
    out
}

/// Dimension of the rational span of a list of polynomials.
pub fn polynomial_span_rank(polys: &[Poly]) -> usize {
    let mut monomials: BTreeMap<String, usize> = BTreeMap::new();
    let mut rows = vec![];
    for p in polys {
        let mut row = vec![];
        for (m, c) in p.terms() {
            let key = format!("{m:?}");
            let n = monomials.len();
            let idx = *monomials.entry(key).or_insert(n);
            row.push((idx, c));
        }
        rows.push(row);
    }
    let mut m = SparseMatrix::new(rows.len(), monomials.len());
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row {
            m.add(r, *c, v);
        }
    }
    m.rank()
}

/// All 2-cycle monomials (ordered pairs of arrows) that are Poisson.
pub fn enumerate_poisson_monomials(alg: &SemiSimpleAlgebra) -> Vec<(Arrow, Arrow)> {
    two_cycles(alg)
        .into_iter()
        .filter(|(a, b)| is_poisson_monomial(alg, *a, *b).expect("2-cycle"))
        .collect()
}

/// Every ordered pair of arrows forming a 2-cycle.
pub fn two_cycles(alg: &SemiSimpleAlgebra) -> Vec<(Arrow, Arrow)> {
    let q = build_quiver(alg);
    let mut out = vec![];
    for &a in &q.arrows {
        for &b in &q.arrows {
            if a.head == b.tail && b.head == a.tail {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MomentMap {
    /// `mu = sum_i coefficients[i] e_i`, normalised so that `mu_1 = 0`.
    pub coefficients: BTreeMap<usize, Poly>,
}

impl MomentMap {
    pub fn element(&self) -> Element {
        let mut el = Element::zero();
        for (i, c) in &self.coefficients {
            el.add_term([MatrixUnit::new(*i, 1, 1)], c.as_constant().expect("numeric"));
        }
        el
    }
}

/// The pair coefficients `c_{ij}`, `i < j`, of a tensor over `C^{+n}`.
pub fn pair_coefficients(alg: &SemiSimpleAlgebra, p: &DoubleTensor) -> BTreeMap<(usize, usize), Poly> {
    let g = p.to_graded(alg);
    let mut out = BTreeMap::new();
    for i in 1..=alg.k() {
        for j in i + 1..=alg.k() {
            let (nk, s) = canonicalize(&[Arrow::y(i, j, 1, 1), Arrow::y(j, i, 1, 1)])
                .expect("2-cycle")
                .expect("distinct arrows");
            out.insert((i, j), g.coefficient(&nk).scale(&int(s)));
        }
    }
    out
}

/// `mu = -sum_{i >= 2} (1/c_{1i}) e_i` for `P = sum_{i<j} c_{ij} y^{ij} y^{ji}`.
pub fn moment_map(alg: &SemiSimpleAlgebra, p: &DoubleTensor) -> Result<MomentMap, TensorError> {
    if !alg.is_commutative() {
        return Err(TensorError::WrongAlgebra);
    }
    if !p.is_numeric() {
        return Err(TensorError::SymbolicCoefficients);
    }
    let c = pair_coefficients(alg, p);
    if let Some(((i, j), _)) = c.iter().find(|(_, v)| v.is_zero()) {
        return Err(TensorError::NoMomentMap(*i, *j));
    }
    if !check_tensor(alg, p).poisson {
        return Err(TensorError::NotPoisson);
    }
    let mut coefficients = BTreeMap::new();
    coefficients.insert(1, Poly::zero());
    for i in 2..=alg.k() {
        let c1i = c[&(1, i)].as_constant().expect("numeric");
        coefficients.insert(i, Poly::constant(-(Rational::one() / c1i)));
    }
    Ok(MomentMap { coefficients })
}

/// `{P, s}` for `s` in `S`, as a double derivation. For a monomial
/// `delta Delta` this is `-(Delta(s)'.delta.Delta(s)'' - delta(s)'.Delta.delta(s)'')`
/// with the inner bimodule action.
pub fn bracket_with_element(alg: &SemiSimpleAlgebra, p: &DoubleTensor, s: &Element) -> Result<ExplicitDoubleDerivation, TensorError> {
    if !p.is_numeric() {
        return Err(TensorError::SymbolicCoefficients);
    }
    let mut total = ExplicitDoubleDerivation::zero();
    for ((a, b), c) in p.terms() {
        let c = c.as_constant().expect("numeric");
        let d1 = generator_derivation::<Rational>(alg, *a);
        let d2 = generator_derivation::<Rational>(alg, *b);
        for (da, db, sign) in [(&d1, &d2, int(-1)), (&d2, &d1, int(1))] {
            for ([x, y], v) in db.apply(s).iter() {
                let phi = da.inner_act(Some(&Element::unit(*x)), Some(&Element::unit(*y)));
                total.add_scaled(&phi, &(&c * v * &sign));
            }
        }
    }
    Ok(total)
}

/// Checks `{P, mu} = -E`.
pub fn verify_moment_map(alg: &SemiSimpleAlgebra, p: &DoubleTensor, mu: &MomentMap) -> Result<bool, TensorError> {
    let lhs = bracket_with_element(alg, p, &mu.element())?;
    Ok(lhs == gauge_element::<Rational>(alg).scale(&int(-1)))
}

/// Necklace obstruction of a single monomial.
pub fn monomial_necklace(alg: &SemiSimpleAlgebra, a: Arrow, b: Arrow) -> Option<(Necklace, i64)> {
    canonicalize(&[a, b]).ok().flatten().filter(|_| alg.k() > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn alg(d: &[usize]) -> SemiSimpleAlgebra {
        SemiSimpleAlgebra::new(d).unwrap()
    }

    #[test]
    fn lemma_examples() {
        let c2 = alg(&[1, 1]);
        assert!(is_poisson_monomial(&c2, Arrow::y(1, 2, 1, 1), Arrow::y(2, 1, 1, 1)).unwrap());
        let m22 = alg(&[2, 2]);
        assert!(!is_poisson_monomial(&m22, Arrow::y(1, 2, 1, 1), Arrow::y(2, 1, 1, 1)).unwrap());
        let m3 = alg(&[3]);
        assert!(!is_poisson_monomial(&m3, Arrow::x(1, 1, 2), Arrow::x(1, 2, 3)).unwrap());
        assert!(matches!(
            is_poisson_monomial(&c2, Arrow::y(1, 2, 1, 1), Arrow::y(1, 2, 1, 1)),
            Err(TensorError::NotACycle(..))
        ));
    }

    #[test]
    fn enumerate_small() {
        let c2 = alg(&[1, 1]);
        assert_eq!(
            enumerate_poisson_monomials(&c2),
            vec![(Arrow::y(2, 1, 1, 1), Arrow::y(1, 2, 1, 1)), (Arrow::y(1, 2, 1, 1), Arrow::y(2, 1, 1, 1))]
        );
        assert!(enumerate_poisson_monomials(&alg(&[1])).is_empty());
        let m2 = alg(&[2]);
        assert!(enumerate_poisson_monomials(&m2).contains(&(Arrow::x(1, 2, 2), Arrow::x(1, 2, 1))));
    }

    #[test]
    fn three_vertex_obstruction() {
        let p = DoubleTensor::symbolic_commutative(3);
        let c3 = alg(&[1, 1, 1]);
        let r = check_tensor(&c3, &p);
        assert!(!r.poisson);
        let rel = Poly::parse("a12*a13 + a13*a23 - a12*a23").unwrap();
        let two_rel = rel.scale(&int(2));
        let w1 = GradedElement::from_word(&c3, &[Arrow::y(2, 1, 1, 1), Arrow::y(3, 2, 1, 1), Arrow::y(1, 3, 1, 1)], two_rel.clone()).unwrap();
        let w2 = GradedElement::from_word(&c3, &[Arrow::y(3, 1, 1, 1), Arrow::y(2, 3, 1, 1), Arrow::y(1, 2, 1, 1)], two_rel).unwrap();
        assert_eq!(r.obstruction, w1.plus(&w2));
        let vals: BTreeMap<String, Rational> =
            [("a12", int(1)), ("a23", int(1)), ("a13", rat(1, 2))].into_iter().map(|(k, v)| (k.into(), v)).collect();
        assert!(check_tensor(&c3, &p.eval(&vals)).poisson);
        assert!(check_tensor(&c3, &DoubleTensor::zero()).poisson);
    }

    #[test]
    fn moment_maps() {
        let c2 = alg(&[1, 1]);
        let p = DoubleTensor::commutative_pairs(&c2, &[((1, 2), Poly::from_int(5))].into()).unwrap();
        let mu = moment_map(&c2, &p).unwrap();
        assert_eq!(mu.coefficients[&2], Poly::constant(rat(-1, 5)));
        assert!(verify_moment_map(&c2, &p, &mu).unwrap());

        let c3 = alg(&[1, 1, 1]);
        let c: BTreeMap<_, _> =
            [((1, 2), Poly::from_int(1)), ((2, 3), Poly::from_int(1)), ((1, 3), Poly::constant(rat(1, 2)))].into();
        let p = DoubleTensor::commutative_pairs(&c3, &c).unwrap();
        let mu = moment_map(&c3, &p).unwrap();
        assert_eq!(mu.coefficients[&2], Poly::from_int(-1));
        assert_eq!(mu.coefficients[&3], Poly::from_int(-2));
        assert!(verify_moment_map(&c3, &p, &mu).unwrap());

        let mut c0 = c.clone();
        c0.insert((2, 3), Poly::zero());
        let p = DoubleTensor::commutative_pairs(&c3, &c0).unwrap();
        assert_eq!(moment_map(&c3, &p), Err(TensorError::NoMomentMap(2, 3)));
    }

    #[test]
    fn json_round_trip() {
        let p = DoubleTensor::symbolic_commutative(3);
        let s = serde_json::to_string(&p).unwrap();
        let back: DoubleTensor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
