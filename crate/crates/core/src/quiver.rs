//! The double derivation quiver and its relative variant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{relative_multiplicities, AlgebraError, BratteliDiagram, SemiSimpleAlgebra};

/// A coloured arrow `tail -> head`. For an arrow between distinct vertices
/// it stands for the generator `y^{head,tail}_{primary,secondary}`, so the
/// primary colour ranges over the head component. Loops are the `x^i_{pq}`.
///
/// Field order fixes the arrow order: tail, head, primary, secondary.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub primary: usize,
    pub secondary: usize,
}

impl Arrow {
    /// `y^{ij}_{pq}`: the arrow `j -> i`.
    pub const fn y(i: usize, j: usize, p: usize, q: usize) -> Arrow {
        Arrow { tail: j, head: i, primary: p, secondary: q }
    }

    /// `x^i_{pq}`: a loop at `i`.
    pub const fn x(i: usize, p: usize, q: usize) -> Arrow {
        Arrow { tail: i, head: i, primary: p, secondary: q }
    }

    pub fn is_loop(&self) -> bool {
        self.head == self.tail
    }

    /// The `x^i_{11}` shorthand, which is not a basis arrow.
    pub fn is_shorthand(&self) -> bool {
        self.is_loop() && self.primary == 1 && self.secondary == 1
    }

    /// Whether the colours fit the algebra (the shorthand loop included).
    pub fn fits(&self, alg: &SemiSimpleAlgebra) -> bool {
        (1..=alg.k()).contains(&self.head)
            && (1..=alg.k()).contains(&self.tail)
            && (1..=alg.d(self.head)).contains(&self.primary)
            && (1..=alg.d(self.tail)).contains(&self.secondary)
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_loop() {
            write!(f, "x^{}_({},{})", self.head, self.primary, self.secondary)
        } else {
            write!(f, "y^({},{})_({},{})", self.head, self.tail, self.primary, self.secondary)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Quiver {
    #[serde(rename = "vertices")]
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn loops_at(&self, i: usize) -> usize {
        self.arrows.iter().filter(|a| a.is_loop() && a.head == i).count()
    }

    /// Number of arrows `tail -> head`.
    pub fn arrows_between(&self, tail: usize, head: usize) -> usize {
        self.arrows.iter().filter(|a| a.tail == tail && a.head == head).count()
    }

    pub fn out_of(&self, v: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.tail == v)
    }

    /// `sum_loops d_i^2 + sum_{j -> i} d_i d_j`.
    pub fn weighted_dimension(&self, alg: &SemiSimpleAlgebra) -> usize {
        self.arrows.iter().map(|a| alg.d(a.head) * alg.d(a.tail)).sum()
    }
}

/// `Q_S`: `d_i^2 - 1` loops at `i` and `d_i d_j` arrows `j -> i`.
pub fn build_quiver(alg: &SemiSimpleAlgebra) -> Quiver {
    let k = alg.k();
    let mut arrows = vec![];
    for tail in 1..=k {
        for head in 1..=k {
            for p in 1..=alg.d(head) {
                for q in 1..=alg.d(tail) {
                    let a = Arrow { tail, head, primary: p, secondary: q };
                    if !a.is_shorthand() {
                        arrows.push(a);
                    }
                }
            }
        }
    }
    arrows.sort();
    Quiver { vertex_count: k, arrows }
}

/// The quiver of `T`-relative double derivations.
///
/// Inside component `i` the blocks of `T` occur `m_i = sum_u a_{iu}` times;
/// colours are copy indices `1..m_i` in block order. An arrow `j -> i`
/// joins a copy in `i` with a copy in `j` of the same block, and loops at
/// `i` join two copies of one block, except the pair `(1,1)`.
pub fn build_relative_quiver(alg: &SemiSimpleAlgebra, b: &BratteliDiagram) -> Result<Quiver, AlgebraError> {
    relative_multiplicities(alg, b)?;
    let k = alg.k();
    let copies = |i: usize| -> Vec<usize> {
        let mut v = vec![];
        for (u, &a) in b.multiplicities[i - 1].iter().enumerate() {
            v.extend(std::iter::repeat(u).take(a));
        }
        v
    };
    let mut arrows = vec![];
    for tail in 1..=k {
        let ct = copies(tail);
        for head in 1..=k {
            let ch = copies(head);
            for (p, bu) in ch.iter().enumerate() {
                for (q, bv) in ct.iter().enumerate() {
                    let a = Arrow { tail, head, primary: p + 1, secondary: q + 1 };
                    if bu == bv && !a.is_shorthand() {
                        arrows.push(a);
                    }
                }
            }
        }
    }
    arrows.sort();
    Ok(Quiver { vertex_count: k, arrows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::derivation_module_dimension;

    #[test]
    fn commutative_three() {
        let q = build_quiver(&SemiSimpleAlgebra::commutative(3).unwrap());
        assert_eq!(q.vertex_count, 3);
        assert_eq!(q.arrows.len(), 6);
        for i in 1..=3 {
            assert_eq!(q.loops_at(i), 0);
            for j in 1..=3 {
                if i != j {
                    assert_eq!(q.arrows_between(j, i), 1);
                }
            }
        }
    }

    #[test]
    fn m2_loop_colours() {
        let q = build_quiver(&SemiSimpleAlgebra::new(&[2]).unwrap());
        let cols: Vec<(usize, usize)> = q.arrows.iter().map(|a| (a.primary, a.secondary)).collect();
        assert_eq!(cols, vec![(1, 2), (2, 1), (2, 2)]);
    }

    #[test]
    fn single_point() {
        let q = build_quiver(&SemiSimpleAlgebra::new(&[1]).unwrap());
        assert_eq!(q.vertex_count, 1);
        assert!(q.arrows.is_empty());
    }

    #[test]
    fn weighted_dimension_matches_module() {
        let alg = SemiSimpleAlgebra::new(&[2, 1]).unwrap();
        let q = build_quiver(&alg);
        assert_eq!(q.weighted_dimension(&alg), derivation_module_dimension(&alg).dimension);
    }

    #[test]
    fn relative_two_cycles() {
        let alg = SemiSimpleAlgebra::commutative(4).unwrap();
        let b = BratteliDiagram::new(&[1, 1], vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]]);
        let q = build_relative_quiver(&alg, &b).unwrap();
        let pairs: Vec<(usize, usize)> = q.arrows.iter().map(|a| (a.tail, a.head)).collect();
        assert_eq!(pairs, vec![(1, 2), (2, 1), (3, 4), (4, 3)]);
    }

    #[test]
    fn json_round_trip() {
        let q = build_quiver(&SemiSimpleAlgebra::new(&[2, 1]).unwrap());
        let s = serde_json::to_string(&q).unwrap();
        assert!(s.starts_with("{\"vertices\":2"));
        let back: Quiver = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }
}
