//! Exact coefficients and exact linear algebra.

mod matrix;
mod poly;
mod rational;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

pub use matrix::{rank_and_kernel, ExactMatrix, RankKernel, SparseMatrix};
pub use poly::{is_identifier, Poly};
pub use rational::{common_denominator, fmt_rational, int, parse_rational, rat, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("matrix entry ({row},{col}) is not a constant")]
    PolynomialEntries { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0}")]
    Parse(String),
}

/// Commutative coefficient ring used by the generic tensor code.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;
}

impl Ring for Rational {
    fn from_int(n: i64) -> Self {
        int(n)
    }
}

impl Ring for Poly {
    fn from_int(n: i64) -> Self {
        Poly::from_int(n)
    }
}

impl Ring for i64 {
    fn from_int(n: i64) -> Self {
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn additive_inverse_and_monomial_product() {
        let a = Poly::var("a12");
        assert!((a.clone() + (-a.clone())).is_zero());
        let p = Poly::var("a12") * Poly::var("a23");
        assert_eq!(p.to_string(), "a12*a23");
    }

    #[test]
    fn relation_vanishes_at_one_one_half() {
        let r = Poly::parse("a12*a13 + a13*a23 - a12*a23").unwrap();
        let vals: BTreeMap<String, Rational> =
            [("a12", int(1)), ("a23", int(1)), ("a13", rat(1, 2))]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
        assert!(r.eval(&vals).is_zero());
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "3", "-1/2", "a", "2*a^2*b - 1/3*c + 5", "-x_1 + y"] {
            let p = Poly::parse(s).unwrap();
            assert_eq!(Poly::parse(&p.to_string()).unwrap(), p, "{s}");
        }
        assert_eq!(Poly::parse("2*a - -3").unwrap().to_string(), "2*a + 3");
        assert!(Poly::parse("2**a").is_err());
        assert!(Poly::parse("1/0").is_err());
    }

    #[test]
    fn grlex_display_order() {
        let p = Poly::parse("a + b^2 + a*b + 1").unwrap();
        assert_eq!(p.to_string(), "a*b + b^2 + a + 1");
    }

    #[test]
    fn identity_and_zero_matrix() {
        let rk = rank_and_kernel(&ExactMatrix::identity(2)).unwrap();
        assert_eq!(rk.rank, 2);
        assert!(rk.kernel.is_empty());
        let rk = rank_and_kernel(&ExactMatrix::zeros(3, 4)).unwrap();
        assert_eq!(rk.rank, 0);
        assert_eq!(rk.kernel.len(), 4);
    }

    #[test]
    fn polynomial_entries_rejected() {
        let mut m = ExactMatrix::zeros(2, 2);
        m.set(1, 0, Poly::var("t"));
        assert_eq!(
            rank_and_kernel(&m),
            Err(MathError::PolynomialEntries { row: 1, col: 0 })
        );
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let rows = vec![
            vec![int(1), int(2), int(3), int(4)],
            vec![int(2), int(4), int(6), int(8)],
            vec![rat(1, 2), int(0), int(1), int(-1)],
        ];
        let m = ExactMatrix::from_rationals(rows).unwrap();
        let rk = rank_and_kernel(&m).unwrap();
        assert_eq!(rk.rank, 2);
        assert_eq!(rk.kernel.len(), 2);
        let s = m.to_sparse().unwrap();
        for v in &rk.kernel {
            assert!(s.apply(v).iter().all(|x| x.is_zero()));
        }
    }
}
