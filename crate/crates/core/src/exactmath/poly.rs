use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{fmt_rational, parse_rational, Rational};
use super::MathError;

/// Exponent vector compared in graded lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Exponent(Vec<u32>);

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u64 = self.0.iter().map(|&e| e as u64).sum();
        let db: u64 = other.0.iter().map(|&e| e as u64).sum();
        da.cmp(&db).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial over the rationals.
///
/// Canonical form: variables sorted by name, every variable occurs in some
/// term, no zero coefficients. Structural equality is therefore polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn constant(c: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponent(vec![]), c);
        }
        Poly { vars: vec![], terms }
    }

    pub fn from_int(n: i64) -> Poly {
        Poly::constant(super::int(n))
    }

    pub fn var(name: &str) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(Exponent(vec![1]), Rational::one());
        Poly { vars: vec![name.to_string()], terms }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.0.iter().sum()).max().unwrap_or(0)
    }

    /// Terms as (monomial, coefficient), highest first in grlex order.
    pub fn terms(&self) -> Vec<(Vec<(String, u32)>, Rational)> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono = e
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| (self.vars[i].clone(), x))
                    .collect();
                (mono, c.clone())
            })
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Substitutes the given values; unassigned variables stay symbolic.
    pub fn eval(&self, values: &BTreeMap<String, Rational>) -> Poly {
        let mut out = Poly::zero();
        for (mono, c) in self.terms() {
            let mut t = Poly::constant(c);
            for (name, e) in mono {
                let f = match values.get(&name) {
                    Some(v) => Poly::constant(v.clone()),
                    None => Poly::var(&name),
                };
                for _ in 0..e {
                    t = &t * &f;
                }
            }
            out = out + t;
        }
        out
    }

    fn remap(&self, vars: &[String]) -> BTreeMap<Exponent, Rational> {
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("variable present in union"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut x = vec![0; vars.len()];
                for (i, &k) in e.0.iter().enumerate() {
                    x[pos[i]] = k;
                }
                (Exponent(x), c.clone())
            })
            .collect()
    }

    fn union_vars(a: &Poly, b: &Poly) -> Vec<String> {
        let s: BTreeSet<&String> = a.vars.iter().chain(b.vars.iter()).collect();
        s.into_iter().cloned().collect()
    }

    fn normalize(vars: Vec<String>, mut terms: BTreeMap<Exponent, Rational>) -> Poly {
        terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..vars.len())
            .map(|i| terms.keys().any(|e| e.0[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return Poly { vars, terms };
        }
        let keep: Vec<usize> = (0..vars.len()).filter(|&i| used[i]).collect();
        let vars = keep.iter().map(|&i| vars[i].clone()).collect();
        let terms = terms
            .into_iter()
            .map(|(e, c)| (Exponent(keep.iter().map(|&i| e.0[i]).collect()), c))
            .collect();
        Poly { vars, terms }
    }

    fn combine(&self, other: &Poly, sign: i8) -> Poly {
        let vars = Poly::union_vars(self, other);
        let mut t = self.remap(&vars);
        for (e, c) in other.remap(&vars) {
            let entry = t.entry(e).or_insert_with(Rational::zero);
            if sign > 0 {
                *entry += c;
            } else {
                *entry -= c;
            }
        }
        Poly::normalize(vars, t)
    }

    fn product(&self, other: &Poly) -> Poly {
        if self.terms.is_empty() || other.terms.is_empty() {
            return Poly::zero();
        }
        let vars = Poly::union_vars(self, other);
        let a = self.remap(&vars);
        let b = other.remap(&vars);
        let mut t: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e = Exponent(ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect());
                *t.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Poly::normalize(vars, t)
    }

    /// Parses sums of products such as `2*a12*a13^2 - 1/2*b + 3`.
    pub fn parse(s: &str) -> Result<Poly, MathError> {
        let src = s.trim();
        if src.is_empty() {
            return Err(MathError::Parse("empty polynomial".into()));
        }
        let mut out = Poly::zero();
        let mut sign = 1i64;
        let mut cur = String::new();
        let mut pending: Vec<(i64, String)> = vec![];
        for (i, ch) in src.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.trim().is_empty() && !cur.trim_end().ends_with(['*', '^', '/']) {
                pending.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            } else if (ch == '+' || ch == '-') && cur.trim().is_empty() {
                if ch == '-' {
                    sign = -sign;
                }
            } else {
                cur.push(ch);
            }
        }
        pending.push((sign, cur));
        for (sg, term) in pending {
            let mut t = Poly::from_int(sg);
            for factor in term.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(MathError::Parse(format!("malformed term in {src:?}")));
                }
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b.trim(),
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| MathError::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let f = if base.starts_with(|c: char| c.is_ascii_digit()) {
                    Poly::constant(parse_rational(base)?)
                } else if is_identifier(base) {
                    Poly::var(base)
                } else {
                    return Err(MathError::Parse(format!("bad factor {base:?}")));
                };
                for _ in 0..exp {
                    t = &t * &f;
                }
            }
            out = out + t;
        }
        Ok(out)
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (mono, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let factors: Vec<String> = mono
                .iter()
                .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Poly::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Zero for Poly {
    fn zero() -> Poly {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Poly {
        Poly::from_int(1)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Poly {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.combine(o, 1)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.combine(o, -1)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.product(o)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -(self.clone())
    }
}
