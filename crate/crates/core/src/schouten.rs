//! The double Schouten bracket on generators, the double bracket induced by
//! a degree-two tensor, and checks of the double Poisson axioms.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{inner_derivation, Element, ExplicitDoubleDerivation, MatrixUnit, SemiSimpleAlgebra, Tensor2, Tensor3};
use crate::exactmath::{Poly, Ring};
use crate::quiver::Arrow;
use crate::tensors::DoubleTensor;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchoutenError {
    #[error("this formula needs every component to be one-dimensional")]
    WrongAlgebra,
    #[error("algebra of dimension {0} is too large for the definition-level evaluation")]
    DimensionTooLarge(usize),
    #[error("arrow {0} does not belong to the quiver of this algebra")]
    ForeignArrow(Arrow),
}

/// Largest `dim S` accepted by [`schouten_oracle`].
pub const ORACLE_MAX_DIM: usize = 25;

/// One tensor slot: a matrix unit, or a generator with optional matrix
/// units multiplied on either side.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Slot {
    Unit(MatrixUnit),
    Gen { left: Option<MatrixUnit>, arrow: Arrow, right: Option<MatrixUnit> },
}

impl Slot {
    pub fn degree(&self) -> usize {
        match self {
            Slot::Unit(_) => 0,
            Slot::Gen { .. } => 1,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Unit(u) => write!(f, "{u}"),
            Slot::Gen { left, arrow, right } => {
                if let Some(l) = left {
                    write!(f, "{l}*")?;
                }
                write!(f, "{arrow}")?;
                if let Some(r) = right {
                    write!(f, "*{r}")?;
                }
                Ok(())
            }
        }
    }
}

/// Element of `DS (x) DS` whose slots have degree at most one.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorWord {
    terms: BTreeMap<(Slot, Slot), i64>,
}

impl TensorWord {
    pub fn zero() -> TensorWord {
        TensorWord::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(Slot, Slot), i64> {
        &self.terms
    }

    /// Adds `c * (a (x) b)`, expanding a shorthand loop in either slot.
    pub fn add(&mut self, alg: &SemiSimpleAlgebra, a: Slot, b: Slot, c: i64) {
        if c == 0 {
            return;
        }
        for (ca, a) in expand_slot(alg, a) {
            if slot_vanishes(alg, a) {
                continue;
            }
            for (cb, b) in expand_slot(alg, b) {
                if slot_vanishes(alg, b) {
                    continue;
                }
                let e = self.terms.entry((a, b)).or_insert(0);
                *e += c * ca * cb;
                if *e == 0 {
                    self.terms.remove(&(a, b));
                }
            }
        }
    }

    /// `-sigma(self)`: swaps the slots and negates. Slots have degrees 0 and
    /// 1 here, so the Koszul sign of the swap is +1.
    pub fn negated_flip(&self) -> TensorWord {
        let terms = self.terms.iter().map(|((a, b), c)| ((*b, *a), -c)).collect();
        TensorWord { terms }
    }
}

fn expand_slot(alg: &SemiSimpleAlgebra, s: Slot) -> Vec<(i64, Slot)> {
    match s {
        Slot::Gen { left, arrow, right } if arrow.is_shorthand() => (2..=alg.d(arrow.head))
            .map(|r| (-1, Slot::Gen { left, arrow: Arrow::x(arrow.head, r, r), right }))
            .collect(),
        _ => vec![(1, s)],
    }
}

/// `s.delta.t` can be zero as a map even when written with nonzero units.
fn slot_vanishes(alg: &SemiSimpleAlgebra, s: Slot) -> bool {
    match s {
        Slot::Unit(_) => false,
        Slot::Gen { left, arrow, right } => {
            let (l, r) = (left.map(Element::unit), right.map(Element::unit));
            generator_derivation::<i64>(alg, arrow).inner_act(l.as_ref(), r.as_ref()).is_zero()
        }
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "{a} ⊗ {b}")?;
        }
        Ok(())
    }
}

fn e(i: usize, p: usize, q: usize) -> MatrixUnit {
    MatrixUnit::new(i, p, q)
}

fn gen(left: Option<MatrixUnit>, arrow: Arrow, right: Option<MatrixUnit>) -> Slot {
    Slot::Gen { left, arrow, right }
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// The printed case table, `None` for the pairs it leaves to antisymmetry.
fn case_table(alg: &SemiSimpleAlgebra, g1: Arrow, g2: Arrow) -> Option<TensorWord> {
    let mut t = TensorWord::zero();
    let u = Slot::Unit;
    match (g1.is_loop(), g2.is_loop()) {
        (true, true) => {
            let (i, p, q) = (g1.head, g1.primary, g1.secondary);
            let (j, r, s) = (g2.head, g2.primary, g2.secondary);
            if i != j {
                return Some(t);
            }
            t.add(alg, u(e(i, p, 1)), gen(Some(e(i, 1, q)), g2, None), 1);
            t.add(alg, gen(None, g2, Some(e(i, p, 1))), u(e(i, 1, q)), -1);
            t.add(alg, u(e(i, 1, s)), gen(None, g1, Some(e(i, r, 1))), 1);
            t.add(alg, gen(Some(e(i, 1, s)), g1, None), u(e(i, r, 1)), -1);
            t.add(alg, gen(None, Arrow::x(i, p, s), None), u(e(i, 1, 1)), delta(r, q));
            t.add(alg, u(e(i, 1, 1)), gen(None, Arrow::x(i, r, q), None), -delta(p, s));
            Some(t)
        }
        (true, false) => {
            let (i, p, q) = (g1.head, g1.primary, g1.secondary);
            let (hu, tv, r, s) = (g2.head, g2.tail, g2.primary, g2.secondary);
            if hu == i {
                t.add(alg, u(e(tv, 1, s)), gen(None, g1, Some(e(i, r, 1))), 1);
                t.add(alg, gen(None, Arrow::y(i, tv, p, s), None), u(e(i, 1, 1)), delta(q, r));
                t.add(alg, gen(None, Arrow::y(i, tv, r, s), Some(e(i, p, 1))), u(e(i, 1, q)), -1);
            }
            if tv == i {
                t.add(alg, u(e(i, p, 1)), gen(Some(e(i, 1, q)), Arrow::y(hu, i, r, s), None), 1);
                t.add(alg, u(e(i, 1, 1)), gen(None, Arrow::y(hu, i, r, q), None), -delta(p, s));
                t.add(alg, gen(Some(e(i, 1, s)), g1, None), u(e(hu, r, 1)), -1);
            }
            Some(t)
        }
        (false, true) => None,
        (false, false) => {
            let (r, s, p, q) = (g1.head, g1.tail, g1.primary, g1.secondary);
            let (c, d, a, b) = (g2.head, g2.tail, g2.primary, g2.secondary);
            if r != d && c != s {
                t.add(alg, u(e(r, p, 1)), gen(Some(e(s, 1, q)), g2, None), 1);
                t.add(alg, u(e(d, 1, b)), gen(None, g1, Some(e(c, a, 1))), 1);
                t.add(alg, gen(Some(e(d, 1, b)), g1, None), u(e(c, a, 1)), -1);
                t.add(alg, gen(None, g2, Some(e(r, p, 1))), u(e(s, 1, q)), -1);
            } else if r == d && c != s {
                t.add(alg, u(e(d, 1, 1)), gen(None, Arrow::y(c, s, a, q), None), -delta(b, p));
            } else if r == d && c == s {
                t.add(alg, u(e(r, 1, 1)), gen(None, Arrow::x(s, a, q), None), -delta(b, p));
                t.add(alg, gen(None, Arrow::x(r, p, b), None), u(e(s, 1, 1)), delta(q, a));
            } else {
                return None;
            }
            Some(t)
        }
    }
}

/// `<<g1, g2>>` on generators of `DS`, from the case table. Pairs the table
/// does not list are obtained from `<<g1,g2>> = -sigma(<<g2,g1>>)`.
pub fn schouten_generators(alg: &SemiSimpleAlgebra, g1: Arrow, g2: Arrow) -> Result<TensorWord, SchoutenError> {
    for g in [g1, g2] {
        if !g.fits(alg) {
            return Err(SchoutenError::ForeignArrow(g));
        }
    }
    Ok(match case_table(alg, g1, g2) {
        Some(t) => t,
        None => case_table(alg, g2, g1).expect("one orientation is tabulated").negated_flip(),
    })
}

/// The bracket of arrows when `S = C^{+n}`:
/// `<i<-j, k<-i> = -e_i (x) (k<-j)` and `<k<-i, i<-j> = (k<-j) (x) e_i`
/// for `j != k`, zero otherwise.
pub fn schouten_for_cn(alg: &SemiSimpleAlgebra, a1: Arrow, a2: Arrow) -> Result<TensorWord, SchoutenError> {
    if !alg.is_commutative() {
        return Err(SchoutenError::WrongAlgebra);
    }
    schouten_generators(alg, a1, a2)
}

/// The double derivation of an arrow, the shorthand loop included.
pub fn generator_derivation<C: Ring>(alg: &SemiSimpleAlgebra, a: Arrow) -> ExplicitDoubleDerivation<C> {
    if a.is_shorthand() {
        let mut d = ExplicitDoubleDerivation::zero();
        for r in 2..=alg.d(a.head) {
            d.add_scaled(&generator_derivation(alg, Arrow::x(a.head, r, r)), &-C::one());
        }
        return d;
    }
    let x = Tensor2::single([e(a.head, a.primary, 1), e(a.tail, 1, a.secondary)], C::one());
    inner_derivation(alg, &x)
}

/// A value of `DS (x) DS` in degrees (1,0) + (0,1), recorded as maps
/// `S -> S^{(x)3}`: `left[z] = phi(z) (x) m` for `phi (x) m`, and
/// `right[z] = m (x) phi(z)` for `m (x) phi`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct BracketMaps {
    pub left: BTreeMap<MatrixUnit, Tensor3<i64>>,
    pub right: BTreeMap<MatrixUnit, Tensor3<i64>>,
}

impl BracketMaps {
    fn add(map: &mut BTreeMap<MatrixUnit, Tensor3<i64>>, z: MatrixUnit, t: &Tensor3<i64>) {
        let e = map.entry(z).or_default();
        e.add_scaled(t, &1);
        if e.is_zero() {
            map.remove(&z);
        }
    }
}

/// Evaluates a tensor word as maps on `S`.
pub fn encode(alg: &SemiSimpleAlgebra, t: &TensorWord) -> BracketMaps {
    let mut out = BracketMaps::default();
    for ((a, b), c) in t.terms() {
        let (m, g, sd) = match (a, b) {
            (Slot::Unit(m), g @ Slot::Gen { .. }) => (*m, *g, true),
            (g @ Slot::Gen { .. }, Slot::Unit(m)) => (*m, *g, false),
            _ => unreachable!("slots of degree 0 and 1"),
        };
        let Slot::Gen { left, arrow, right } = g else { unreachable!() };
        let l = left.map(Element::<i64>::unit);
        let r = right.map(Element::<i64>::unit);
        let phi = generator_derivation::<i64>(alg, arrow).inner_act(l.as_ref(), r.as_ref());
        for z in alg.basis() {
            let v = phi.value(z);
            if v.is_zero() {
                continue;
            }
            if sd {
                let t3 = v.map_keys(|[x, y]| [m, *x, *y]).scale(c);
                BracketMaps::add(&mut out.right, z, &t3);
            } else {
                let t3 = v.map_keys(|[x, y]| [*x, *y, m]).scale(c);
                BracketMaps::add(&mut out.left, z, &t3);
            }
        }
    }
    out
}

/// `<<d1, d2>>` from the definition: `<<d1,d2>>_l` comes from
/// `(d1 (x) 1) d2 - (1 (x) d2) d1` and `<<d1,d2>>_r` from
/// `(1 (x) d1) d2 - (d2 (x) 1) d1`, with the slot permutations that move
/// the new factor into place.
pub fn schouten_oracle(alg: &SemiSimpleAlgebra, g1: Arrow, g2: Arrow) -> Result<BracketMaps, SchoutenError> {
    if alg.dim() > ORACLE_MAX_DIM {
        return Err(SchoutenError::DimensionTooLarge(alg.dim()));
    }
    for g in [g1, g2] {
        if !g.fits(alg) {
            return Err(SchoutenError::ForeignArrow(g));
        }
    }
    let d1 = generator_derivation::<i64>(alg, g1);
    let d2 = generator_derivation::<i64>(alg, g2);
    let mut out = BracketMaps::default();
    for z in alg.basis() {
        let tl = d1.apply_in_slot(&d2.value(z), 0).minus(&d2.apply_in_slot(&d1.value(z), 1));
        let tr = d1.apply_in_slot(&d2.value(z), 1).minus(&d2.apply_in_slot(&d1.value(z), 0));
        BracketMaps::add(&mut out.left, z, &tl.map_keys(|[a, b, c]| [*a, *c, *b]));
        BracketMaps::add(&mut out.right, z, &tr.map_keys(|[a, b, c]| [*b, *a, *c]));
    }
    Ok(out)
}

/// Values `<<a,b>>` on pairs of matrix units; missing pairs are zero.
#[derive(Clone, PartialEq, Debug)]
pub struct DoubleBracketTable<C = Poly> {
    pub values: BTreeMap<(MatrixUnit, MatrixUnit), Tensor2<C>>,
}

impl<C: Ring> DoubleBracketTable<C> {
    pub fn get(&self, a: MatrixUnit, b: MatrixUnit) -> Tensor2<C> {
        self.values.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `<<a, b>>` for arbitrary elements.
    pub fn eval(&self, a: &Element<C>, b: &Element<C>) -> Tensor2<C> {
        let mut t = Tensor2::zero();
        for ([x], cx) in a.iter() {
            for ([y], cy) in b.iter() {
                t.add_scaled(&self.get(*x, *y), &(cx.clone() * cy.clone()));
            }
        }
        t
    }

    /// First pair violating `<<a,b>> = -<<b,a>>^o`.
    pub fn antisymmetry_violation(&self, alg: &SemiSimpleAlgebra) -> Option<(MatrixUnit, MatrixUnit)> {
        let basis = alg.basis();
        for &a in &basis {
            for &b in &basis {
                if self.get(a, b).plus(&self.get(b, a).opposite()).len() != 0 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// First triple violating `<<a,bc>> = b<<a,c>> + <<a,b>>c` (outer structure).
    pub fn leibniz_violation(&self, alg: &SemiSimpleAlgebra) -> Option<(MatrixUnit, MatrixUnit, MatrixUnit)> {
        let basis = alg.basis();
        for &a in &basis {
            for &b in &basis {
                for &c in &basis {
                    let lhs = match b.mul(c) {
                        Some(m) => self.get(a, m),
                        None => Tensor2::zero(),
                    };
                    let rhs = self
                        .get(a, c)
                        .mul_slot(0, &Element::unit(b), true)
                        .plus(&self.get(a, b).mul_slot(1, &Element::unit(c), false));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// The double bracket of a sum `sum c * delta Delta` of arrow pairs:
/// `<<a,b>> = Delta(b)' delta(a)'' (x) delta(a)' Delta(b)''
///          - delta(b)' Delta(a)'' (x) Delta(a)' delta(b)''`.
pub fn induced_double_bracket_terms<C: Ring>(
    alg: &SemiSimpleAlgebra,
    terms: &[(Arrow, Arrow, C)],
) -> DoubleBracketTable<C> {
    let basis = alg.basis();
    let mut values: BTreeMap<(MatrixUnit, MatrixUnit), Tensor2<C>> = BTreeMap::new();
    for (a1, a2, coeff) in terms {
        let dl = generator_derivation::<C>(alg, *a1);
        let dd = generator_derivation::<C>(alg, *a2);
        let dlv: Vec<Tensor2<C>> = basis.iter().map(|u| dl.value(*u)).collect();
        let ddv: Vec<Tensor2<C>> = basis.iter().map(|u| dd.value(*u)).collect();
        for (ia, &a) in basis.iter().enumerate() {
            for (ib, &b) in basis.iter().enumerate() {
                let mut r = Tensor2::zero();
                for ([d1, d2], c1) in dlv[ia].iter() {
                    for ([e1, e2], c2) in ddv[ib].iter() {
                        if let (Some(m1), Some(m2)) = (e1.mul(*d2), d1.mul(*e2)) {
                            r.add_term([m1, m2], c1.clone() * c2.clone());
                        }
                    }
                }
                for ([e1, e2], c1) in ddv[ia].iter() {
                    for ([d1, d2], c2) in dlv[ib].iter() {
                        if let (Some(m1), Some(m2)) = (d1.mul(*e2), e1.mul(*d2)) {
                            r.add_term([m1, m2], -(c1.clone() * c2.clone()));
                        }
                    }
                }
                if !r.is_zero() {
                    let e = values.entry((a, b)).or_default();
                    e.add_scaled(&r, coeff);
                    if e.is_zero() {
                        values.remove(&(a, b));
                    }
                }
            }
        }
    }
    DoubleBracketTable { values }
}

pub fn induced_double_bracket(alg: &SemiSimpleAlgebra, p: &DoubleTensor) -> DoubleBracketTable<Poly> {
    let terms: Vec<(Arrow, Arrow, Poly)> = p.terms().iter().map(|((a, b), c)| (*a, *b, c.clone())).collect();
    induced_double_bracket_terms(alg, &terms)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacobiReport {
    pub holds: bool,
    pub counterexample: Option<(MatrixUnit, MatrixUnit, MatrixUnit)>,
}

/// Checks `<<a,<<b,c>>>>_L + tau <<b,<<c,a>>>>_L + tau^2 <<c,<<a,b>>>>_L = 0`
/// on all triples of matrix units, where `<<a, x (x) y>>_L = <<a,x>> (x) y`
/// and `tau(x1 (x) x2 (x) x3) = x3 (x) x1 (x) x2`.
pub fn double_jacobi_check<C: Ring>(alg: &SemiSimpleAlgebra, t: &DoubleBracketTable<C>) -> JacobiReport {
    let basis = alg.basis();
    let mut l: BTreeMap<[MatrixUnit; 3], Tensor3<C>> = BTreeMap::new();
    for ((b, c), v) in &t.values {
        for ([t1, t2], cv) in v.iter() {
            for &a in &basis {
                let Some(x) = t.values.get(&(a, *t1)) else { continue };
                let acc = l.entry([a, *b, *c]).or_default();
                for ([x1, x2], xv) in x.iter() {
                    acc.add_term([*x1, *x2, *t2], cv.clone() * xv.clone());
                }
            }
        }
    }
    let mut keys = std::collections::BTreeSet::new();
    for [a, b, c] in l.keys() {
        keys.insert([*a, *b, *c]);
        keys.insert([*c, *a, *b]);
        keys.insert([*b, *c, *a]);
    }
    let zero = Tensor3::zero();
    for [a, b, c] in keys {
        let mut tot = l.get(&[a, b, c]).cloned().unwrap_or_default();
        tot.add_scaled(&l.get(&[b, c, a]).unwrap_or(&zero).map_keys(|[x1, x2, x3]| [*x3, *x1, *x2]), &C::one());
        tot.add_scaled(&l.get(&[c, a, b]).unwrap_or(&zero).map_keys(|[x1, x2, x3]| [*x2, *x3, *x1]), &C::one());
        if !tot.is_zero() {
            return JacobiReport { holds: false, counterexample: Some((a, b, c)) };
        }
    }
    JacobiReport { holds: true, counterexample: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(d: &[usize]) -> SemiSimpleAlgebra {
        SemiSimpleAlgebra::new(d).unwrap()
    }

    #[test]
    fn loops_at_distinct_vertices_commute() {
        let a = alg(&[2, 2]);
        assert!(schouten_generators(&a, Arrow::x(1, 1, 2), Arrow::x(2, 2, 1)).unwrap().is_zero());
    }

    #[test]
    fn commutative_corollary() {
        let a = alg(&[1, 1, 1, 1]);
        let (y12, y31, y34) = (Arrow::y(1, 2, 1, 1), Arrow::y(3, 1, 1, 1), Arrow::y(3, 4, 1, 1));
        let mut want = TensorWord::zero();
        want.add(&a, Slot::Unit(e(1, 1, 1)), gen(None, Arrow::y(3, 2, 1, 1), None), -1);
        assert_eq!(schouten_for_cn(&a, y12, y31).unwrap(), want);
        let mut want = TensorWord::zero();
        want.add(&a, gen(None, Arrow::y(3, 2, 1, 1), None), Slot::Unit(e(1, 1, 1)), 1);
        assert_eq!(schouten_for_cn(&a, y31, y12).unwrap(), want);
        assert!(schouten_for_cn(&a, y12, y34).unwrap().is_zero());
        assert_eq!(schouten_for_cn(&alg(&[2]), Arrow::x(1, 1, 2), Arrow::x(1, 2, 1)), Err(SchoutenError::WrongAlgebra));
    }

    #[test]
    fn table_matches_definition_on_m2() {
        let a = alg(&[2]);
        let t = schouten_generators(&a, Arrow::x(1, 2, 1), Arrow::x(1, 1, 2)).unwrap();
        assert_eq!(encode(&a, &t), schouten_oracle(&a, Arrow::x(1, 2, 1), Arrow::x(1, 1, 2)).unwrap());
    }

    #[test]
    fn induced_bracket_axioms_c2() {
        let a = alg(&[1, 1]);
        let t = induced_double_bracket_terms(&a, &[(Arrow::y(1, 2, 1, 1), Arrow::y(2, 1, 1, 1), 1i64)]);
        assert!(!t.is_zero());
        assert!(t.antisymmetry_violation(&a).is_none());
        assert!(t.leibniz_violation(&a).is_none());
        assert!(double_jacobi_check(&a, &t).holds);
    }

    #[test]
    fn jacobi_fails_for_matching_colours() {
        let a = alg(&[2, 2]);
        let t = induced_double_bracket_terms(&a, &[(Arrow::y(1, 2, 1, 1), Arrow::y(2, 1, 1, 1), 1i64)]);
        let r = double_jacobi_check(&a, &t);
        assert!(!r.holds);
        assert!(r.counterexample.is_some());
    }
}
