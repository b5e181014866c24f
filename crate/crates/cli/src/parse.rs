//! Text syntax for dimensions, arrows, words and coefficients.
//!
//! * arrows: `x1:2,3` is the loop `x^1_{23}`, `y1,2:1,1` is `y^{12}_{11}`
//! * words: arrows joined by `*`; `e2` is the vertex necklace at 2
//! * terms: `WORD` or `WORD=value`
//! * pair coefficients: `i,j:value`, several separated by `;`
//! * values: integers, `a/b`, parameter names or polynomials in them

use std::collections::BTreeMap;

use ncpoisson::necklace::GradedElement;
use ncpoisson::{Arrow, Poly, SemiSimpleAlgebra};

use crate::CliError;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn index(s: &str, what: &str) -> Result<usize, CliError> {
    match s.trim().parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(usage(format!("{what}: expected a positive integer, got {s:?}"))),
    }
}

fn index_pair(s: &str, what: &str) -> Result<(usize, usize), CliError> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| usage(format!("{what}: expected \"i,j\", got {s:?}")))?;
    Ok((index(a, what)?, index(b, what)?))
}

pub fn dims(s: &str) -> Result<Vec<usize>, CliError> {
    let d: Vec<usize> = s.split(',').map(|x| index(x, "--dims")).collect::<Result<_, _>>()?;
    Ok(d)
}

pub fn algebra(s: &str) -> Result<SemiSimpleAlgebra, CliError> {
    SemiSimpleAlgebra::new(&dims(s)?).map_err(|e| usage(format!("--dims: {e}")))
}

/// `a,b;c,d` as rows of a multiplicity grid.
pub fn grid(s: &str) -> Result<Vec<Vec<usize>>, CliError> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| usage(format!("--multiplicities: bad entry {x:?}"))))
                .collect()
        })
        .collect()
}

pub fn value(s: &str) -> Result<Poly, CliError> {
    Poly::parse(s).map_err(|e| usage(format!("bad value {s:?}: {e}")))
}

pub fn arrow(s: &str) -> Result<Arrow, CliError> {
    let s = s.trim();
    let bad = || usage(format!("bad arrow {s:?}; write x<i>:<p>,<q> or y<i>,<j>:<p>,<q>"));
    let (kind, rest) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
    let (verts, colours) = rest.split_once(':').ok_or_else(bad)?;
    let (p, q) = index_pair(colours, "arrow colours")?;
    match kind {
        "x" => Ok(Arrow::x(index(verts, "loop vertex")?, p, q)),
        "y" => {
            let (i, j) = index_pair(verts, "arrow vertices")?;
            if i == j {
                return Err(usage(format!("{s:?}: y needs distinct vertices; use x for loops")));
            }
            Ok(Arrow::y(i, j, p, q))
        }
        _ => Err(bad()),
    }
}

pub fn word(s: &str) -> Result<Vec<Arrow>, CliError> {
    s.split('*').map(arrow).collect()
}

/// `WORD` or `WORD=value`.
pub fn term(s: &str) -> Result<(String, Poly), CliError> {
    match s.rsplit_once('=') {
        Some((w, v)) => Ok((w.trim().to_string(), value(v)?)),
        None => Ok((s.trim().to_string(), Poly::from_int(1))),
    }
}

/// A sum of necklaces given as terms.
pub fn element(alg: &SemiSimpleAlgebra, terms: &[String]) -> Result<GradedElement, CliError> {
    let mut g = GradedElement::zero();
    for t in terms {
        let (w, c) = term(t)?;
        if let Some(v) = w.strip_prefix('e') {
            let v = index(v, "vertex")?;
            if v > alg.k() {
                return Err(usage(format!("vertex {v} out of range 1..={}", alg.k())));
            }
            g = g.plus(&GradedElement::vertex(v).scale(&c));
            continue;
        }
        let arrows = word(&w)?;
        for a in &arrows {
            if !a.fits(alg) {
                return Err(usage(format!("arrow {a} does not fit dims {:?}", alg.dims())));
            }
        }
        let part = GradedElement::from_word(alg, &arrows, c).map_err(|e| usage(format!("{w:?}: {e}")))?;
        g = g.plus(&part);
    }
    Ok(g)
}

/// `i,j:value` entries, repeated or separated by `;`.
pub fn pair_values(items: &[String]) -> Result<BTreeMap<(usize, usize), Poly>, CliError> {
    let mut out = BTreeMap::new();
    for item in items {
        for entry in item.split(';').filter(|e| !e.trim().is_empty()) {
            let (ij, v) = entry
                .split_once(':')
                .ok_or_else(|| usage(format!("bad coefficient {entry:?}; write i,j:value")))?;
            let key = index_pair(ij, "coefficient")?;
            if key.0 == key.1 {
                return Err(usage(format!("coefficient {entry:?} needs i != j")));
            }
            if out.insert(key, value(v)?).is_some() {
                return Err(usage(format!("coefficient for {},{} given twice", key.0, key.1)));
            }
        }
    }
    Ok(out)
}

/// Letter pairs from a list of integers with any separators, such as
/// `1,2;2,1` or `(1,2),(2,1)`.
pub fn trace_pairs(s: &str) -> Result<Vec<(usize, usize)>, CliError> {
    let nums: Vec<usize> = s
        .split(|c: char| !c.is_ascii_digit())
        .filter(|t| !t.is_empty())
        .map(|t| index(t, "trace word"))
        .collect::<Result<_, _>>()?;
    if nums.is_empty() || nums.len() % 2 == 1 {
        return Err(usage(format!("trace word {s:?}: expected a nonempty list of index pairs")));
    }
    Ok(nums.chunks(2).map(|c| (c[0], c[1])).collect())
}

/// `n` or `n,seed`.
pub fn eval_spec(s: &str, default_seed: u64) -> Result<(usize, u64), CliError> {
    let bad = || usage(format!("--eval: expected n or n,seed, got {s:?}"));
    match s.split_once(',') {
        Some((n, seed)) => Ok((index(n, "--eval")?, seed.trim().parse().map_err(|_| bad())?)),
        None => Ok((index(s, "--eval")?, default_seed)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows() {
        assert_eq!(arrow("x1:2,3").unwrap(), Arrow::x(1, 2, 3));
        assert_eq!(arrow("y1,2:1,1").unwrap(), Arrow::y(1, 2, 1, 1));
        assert!(arrow("y1,1:1,1").is_err());
        assert!(arrow("z1:1,1").is_err());
        assert!(arrow("x1:0,1").is_err());
    }

    #[test]
    fn coefficients() {
        let m = pair_values(&["1,2:5;1,3:a".into(), "2,3:-1/2".into()]).unwrap();
        assert_eq!(m[&(1, 2)], Poly::from_int(5));
        assert_eq!(m[&(1, 3)], Poly::var("a"));
        assert!(pair_values(&["1,2:1;1,2:2".into()]).is_err());
        assert!(pair_values(&["1,1:1".into()]).is_err());
    }

    #[test]
    fn terms_and_words() {
        let (w, c) = term("y2,1:1,1*y1,2:1,1=3/2").unwrap();
        assert_eq!(word(&w).unwrap().len(), 2);
        assert_eq!(c, Poly::parse("3/2").unwrap());
        assert_eq!(trace_pairs("1,2;2,1").unwrap(), vec![(1, 2), (2, 1)]);
        assert_eq!(trace_pairs("(1,2),(2,1)").unwrap(), vec![(1, 2), (2, 1)]);
        assert!(trace_pairs("1,2,3").is_err());
        assert_eq!(eval_spec("3,9", 0).unwrap(), (3, 9));
        assert_eq!(eval_spec("3", 7).unwrap(), (3, 7));
    }
}
