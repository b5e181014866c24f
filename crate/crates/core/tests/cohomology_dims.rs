use ncpoisson::cohomology::{build_complex, h1_generators, printed_h1_formula, two_vertex_shape, CohomologyError};
use ncpoisson::quiver::Arrow;
use ncpoisson::tensors::enumerate_poisson_monomials;
use ncpoisson::{DoubleTensor, SemiSimpleAlgebra};

/// `P = y(i -> j; p, q) y(j -> i; r, s)` for every colouring with `q != r`, `p != s`.
fn admissible(alg: &SemiSimpleAlgebra, i: usize, j: usize) -> Vec<DoubleTensor> {
    let mut out = vec![];
    for p in 1..=alg.d(j) {
        for q in 1..=alg.d(i) {
            for r in 1..=alg.d(i) {
                for s in 1..=alg.d(j) {
                    if q != r && p != s {
                        out.push(DoubleTensor::monomial(alg, Arrow::y(j, i, p, q), Arrow::y(i, j, r, s)).unwrap());
                    }
                }
            }
        }
    }
    out
}

#[test]
fn first_cohomology_is_one_above_the_printed_count() {
    for dims in [&[2, 2][..], &[2, 3], &[3, 2], &[2, 2, 1]] {
        let alg = SemiSimpleAlgebra::new(dims).unwrap();
        let mut seen = 0;
        for (i, j) in [(1, 2), (2, 1)] {
            for p in admissible(&alg, i, j) {
                let c = build_complex(&alg, &p, 1).unwrap();
                let b1 = c.betti(1).unwrap();
                assert_eq!(b1, printed_h1_formula(&alg, i, j) + 1, "{dims:?} {p}");
                assert_eq!(c.betti_transposed(1).unwrap(), b1);
                let gens = h1_generators(&alg, &p).unwrap();
                assert_eq!(gens.len(), b1);
                assert!(gens.iter().all(|g| c.is_cocycle(1, g)));
                seen += 1;
            }
        }
        assert!(seen > 0);
    }
    // dims (1,2): no colouring is admissible
    let alg = SemiSimpleAlgebra::new(&[1, 2]).unwrap();
    assert!(admissible(&alg, 1, 2).is_empty() && admissible(&alg, 2, 1).is_empty());
}

#[test]
fn zeroth_cohomology_is_spanned_by_vertices() {
    for dims in [&[1, 1][..], &[2, 1], &[2, 2], &[3]] {
        let alg = SemiSimpleAlgebra::new(dims).unwrap();
        for (a, b) in enumerate_poisson_monomials(&alg).into_iter().take(6) {
            let p = DoubleTensor::monomial(&alg, a, b).unwrap();
            let c = build_complex(&alg, &p, 2).unwrap();
            assert_eq!(c.betti(0).unwrap(), alg.k());
            assert!(c.square_violation().is_none());
        }
    }
}

#[test]
fn two_points_pattern() {
    let alg = SemiSimpleAlgebra::commutative(2).unwrap();
    let p = DoubleTensor::monomial(&alg, Arrow::y(2, 1, 1, 1), Arrow::y(1, 2, 1, 1)).unwrap();
    let c = build_complex(&alg, &p, 4).unwrap();
    let b: Vec<usize> = (0..=4).map(|n| c.betti(n).unwrap()).collect();
    assert_eq!(&b[1..], &[0, 1, 0, 1]);
    for n in 1..=5 {
        assert!(c.dimension(n) <= 1);
    }
    for n in 0..=4 {
        assert_eq!(c.betti_transposed(n).unwrap(), b[n]);
    }
}

#[test]
fn shapes_and_errors() {
    let alg = SemiSimpleAlgebra::new(&[3]).unwrap();
    let p = DoubleTensor::monomial(&alg, Arrow::x(1, 1, 2), Arrow::x(1, 3, 1)).unwrap();
    assert!(two_vertex_shape(&p).is_none());
    assert_eq!(h1_generators(&alg, &p).unwrap_err(), CohomologyError::UnsupportedTensorShape);
    let sym = DoubleTensor::symbolic_commutative(2);
    assert_eq!(build_complex(&SemiSimpleAlgebra::commutative(2).unwrap(), &sym, 1).unwrap_err(), CohomologyError::SymbolicCoefficients);
}
