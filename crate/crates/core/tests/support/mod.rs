//! Independent oracles shared by the integration tests and the acceptance
//! harness. Nothing here calls the closed formulas they are compared with.

#![allow(dead_code)]

use ncpoisson::algebra::{Element, MatrixUnit, SemiSimpleAlgebra};
use ncpoisson::freeproduct::{letters, multiply, Letter, PairCoefficients, WordTensor};
use ncpoisson::necklace::GradedElement;
use ncpoisson::quiver::{build_quiver, Arrow};
use ncpoisson::schouten::{schouten_generators, Slot};
use ncpoisson::{BratteliDiagram, Poly};
use rand::seq::SliceRandom;
use rand::Rng;

fn pm(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy)]
enum Item {
    Unit(MatrixUnit),
    Gen(Arrow),
}

fn slot_items(s: &Slot) -> Vec<Item> {
    match *s {
        Slot::Unit(u) => vec![Item::Unit(u)],
        Slot::Gen { left, arrow, right } => left
            .map(Item::Unit)
            .into_iter()
            .chain([Item::Gen(arrow)])
            .chain(right.map(Item::Unit))
            .collect(),
    }
}

/// Multiplies out a cyclic word of units and generators; every generator
/// must be followed (cyclically) by units whose product has a nonzero
/// `e_{11}` entry at the generator's head.
fn contract(alg: &SemiSimpleAlgebra, items: &[Item]) -> Option<(i64, Vec<Arrow>)> {
    let first = items.iter().position(|it| matches!(it, Item::Gen(_)))?;
    let rotated: Vec<Item> = items[first..].iter().chain(&items[..first]).copied().collect();
    let mut arrows = vec![];
    let mut between: Vec<Element<i64>> = vec![];
    for it in rotated {
        match it {
            Item::Gen(a) => {
                arrows.push(a);
                between.push(alg.one());
            }
            Item::Unit(u) => {
                let cur = between.last_mut().expect("starts with a generator");
                *cur = alg.mul(cur, &Element::unit(u));
            }
        }
    }
    let mut coeff = 1;
    for t in 0..arrows.len() {
        let h = arrows[t].head;
        if h != arrows[(t + 1) % arrows.len()].tail {
            return None;
        }
        coeff *= between[t].get(&[MatrixUnit::new(h, 1, 1)]);
    }
    (coeff != 0).then_some((coeff, arrows))
}

/// `{w1, w2}` from the Leibniz rule over both words, the double Schouten
/// bracket of generators, multiplication and reduction modulo graded
/// commutators, with the library's overall sign `-mu`.
pub fn necklace_oracle(alg: &SemiSimpleAlgebra, w1: &[Arrow], w2: &[Arrow]) -> GradedElement {
    let (n, m) = (w1.len(), w2.len());
    let mut acc = GradedElement::zero();
    for i in 0..m {
        for j in 0..n {
            let s0 = -pm(i * (n - 1));
            let table = schouten_generators(alg, w2[i], w1[j]).unwrap();
            for ((sa, sb), coef) in table.terms() {
                let sg = s0 * pm((j + sa.degree()) * (n - j - 1 + sb.degree())) * coef;
                let mut items: Vec<Item> = w2[..i].iter().map(|a| Item::Gen(*a)).collect();
                items.extend(slot_items(sb));
                items.extend(w1[j + 1..].iter().chain(&w1[..j]).map(|a| Item::Gen(*a)));
                items.extend(slot_items(sa));
                items.extend(w2[i + 1..].iter().map(|a| Item::Gen(*a)));
                if let Some((c, arrows)) = contract(alg, &items) {
                    let g = GradedElement::from_word(alg, &arrows, Poly::from_int(-sg * c)).unwrap();
                    acc = acc.plus(&g);
                }
            }
        }
    }
    acc
}

/// A random closed path of the given length, if one is found.
pub fn random_cycle<R: Rng>(alg: &SemiSimpleAlgebra, degree: usize, rng: &mut R) -> Option<Vec<Arrow>> {
    let q = build_quiver(alg);
    if q.arrows.is_empty() {
        return None;
    }
    for _ in 0..1000 {
        let mut w = vec![*q.arrows.choose(rng).unwrap()];
        while w.len() < degree {
            let last = w[w.len() - 1];
            let next: Vec<Arrow> = q.arrows.iter().copied().filter(|a| a.tail == last.head).collect();
            w.push(*next.choose(rng)?);
        }
        if w[w.len() - 1].head == w[0].tail {
            return Some(w);
        }
    }
    None
}

/// A random nonzero necklace class of the given degree.
pub fn random_necklace<R: Rng>(alg: &SemiSimpleAlgebra, degree: usize, rng: &mut R) -> Option<GradedElement> {
    for _ in 0..50 {
        let w = random_cycle(alg, degree, rng)?;
        let c = rng.gen_range(1..=3);
        let g = GradedElement::from_word(alg, &w, Poly::from_int(c)).unwrap();
        if !g.is_zero() {
            return Some(g);
        }
    }
    None
}

/// Every list of positive dimensions with at most `k` parts and sum at most
/// `total`, in non-increasing order.
pub fn dimension_vectors(k: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(max: usize, left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if parts == 0 {
            return;
        }
        for d in (1..=max.min(left)).rev() {
            cur.push(d);
            rec(d, left - d, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(total, total, k, &mut vec![], &mut out);
    out.sort();
    out
}

fn generator_bracket(a: Letter, b: Letter, c: &PairCoefficients, d: &PairCoefficients) -> Vec<(Letter, Letter, Poly)> {
    let pair = |x: usize, y: usize, coeffs: &PairCoefficients, mk: fn(usize) -> Letter| {
        let mut out = vec![];
        if x != y {
            let v = coeffs.bar(x, y);
            out.push((mk(x), mk(y), v.clone()));
            out.push((mk(y), mk(x), -v));
        } else {
            // <<g_a, g_a>> = g_a (x) g_bar_a - g_bar_a (x) g_a
            for s in (1..=coeffs.n).filter(|&s| s != x) {
                let v = -coeffs.bar(x, s);
                out.push((mk(x), mk(s), v.clone()));
                out.push((mk(s), mk(x), -v));
            }
        }
        out
    };
    match (a, b) {
        (Letter::E(x), Letter::E(y)) => pair(x, y, c, Letter::E),
        (Letter::F(x), Letter::F(y)) => pair(x, y, d, Letter::F),
        _ => vec![],
    }
}

/// `<<x, y>>` by the derivation rules letter by letter: outer action in the
/// second argument, inner action in the first.
pub fn free_product_oracle(x: &[(usize, usize)], y: &[(usize, usize)], c: &PairCoefficients, d: &PairCoefficients) -> WordTensor {
    let (xl, yl) = (letters(x), letters(y));
    let mut out = WordTensor::zero();
    for s in 0..xl.len() {
        for t in 0..yl.len() {
            for (u1, u2, v) in generator_bracket(xl[s], yl[t], c, d) {
                let left = multiply(&yl[..t], &[u1]).and_then(|w| multiply(&w, &xl[s + 1..]));
                let right = multiply(&xl[..s], &[u2]).and_then(|w| multiply(&w, &yl[t + 1..]));
                if let (Some(l), Some(r)) = (left, right) {
                    out.add(l, r, v);
                }
            }
        }
    }
    out
}

/// A random alternating word with between 1 and `max_pairs` pairs.
pub fn random_word<R: Rng>(p: usize, q: usize, max_pairs: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let len = rng.gen_range(1..=max_pairs);
    (0..len).map(|_| (rng.gen_range(1..=p), rng.gen_range(1..=q))).collect()
}

/// Coefficients `1/(mu_i - mu_j)` for random distinct integers `mu`, which
/// always give a Poisson tensor, plus random values on the reversed pairs.
pub fn random_poisson_coefficients<R: Rng>(n: usize, rng: &mut R) -> PairCoefficients {
    let mut pts: Vec<i64> = (-6..=6).collect();
    pts.shuffle(rng);
    let mu: Vec<ncpoisson::Rational> = pts[..n].iter().map(|&v| ncpoisson::exactmath::int(v)).collect();
    let mut c = PairCoefficients::from_points(&mu);
    // c_ji shifts c_bar only through c_ij - c_ji; keep c_bar fixed by adding
    // the same amount to both orientations
    for i in 1..=n {
        for j in i + 1..=n {
            let extra = Poly::from_int(rng.gen_range(-2..=2));
            let cur = c.get(i, j);
            c.values.insert((i, j), &cur + &extra);
            c.values.insert((j, i), extra);
        }
    }
    c
}

/// Generators of the double derivations: the quiver arrows plus the
/// shorthand loop `x^i_{11}` wherever `d_i > 1`.
pub fn generators(alg: &SemiSimpleAlgebra) -> Vec<Arrow> {
    let mut g = build_quiver(alg).arrows;
    for i in 1..=alg.k() {
        if alg.d(i) > 1 {
            g.push(Arrow::x(i, 1, 1));
        }
    }
    g
}

/// Subalgebra embeddings with their ambient dimensions. The first two are
/// `C+C` inside `C^4` and `C^6`, each summand of the subalgebra embedded
/// diagonally in half of the components.
pub fn bratteli_diagrams() -> Vec<(Vec<usize>, BratteliDiagram)> {
    let b = |s: &[usize], m: Vec<Vec<usize>>| BratteliDiagram::new(s, m);
    vec![
        (vec![1, 1, 1, 1], b(&[1, 1], vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]])),
        (vec![1; 6], b(&[1, 1], vec![vec![1, 0], vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 1]])),
        (vec![2], b(&[1, 1], vec![vec![1, 1]])),
        (vec![2], b(&[1], vec![vec![2]])),
        (vec![3], b(&[1], vec![vec![3]])),
        (vec![3], b(&[2, 1], vec![vec![1, 1]])),
        (vec![2, 1], b(&[1], vec![vec![2], vec![1]])),
        (vec![2, 2], b(&[2], vec![vec![1], vec![1]])),
        (vec![2, 3], b(&[1, 1], vec![vec![1, 1], vec![2, 1]])),
        (vec![4], b(&[2], vec![vec![2]])),
        (vec![1, 1, 1], b(&[1, 1, 1], vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])),
        (vec![2, 2], b(&[2, 2], vec![vec![1, 0], vec![0, 1]])),
        (vec![3, 2], b(&[1, 1], vec![vec![2, 1], vec![1, 1]])),
    ]
}
