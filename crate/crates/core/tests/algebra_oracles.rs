mod support;

use ncpoisson::algebra::{
    derivation_module_dimension, relative_derivation_oracle, relative_multiplicities,
    relative_multiplicities_oracle, AlgebraError,
};
use ncpoisson::quiver::{build_quiver, build_relative_quiver};
use ncpoisson::{BratteliDiagram, SemiSimpleAlgebra};
use support::{bratteli_diagrams, dimension_vectors};

#[test]
fn derivation_dimension_by_elimination() {
    for dims in dimension_vectors(3, 6) {
        let alg = SemiSimpleAlgebra::new(&dims).unwrap();
        let d = derivation_module_dimension(&alg);
        let square: usize = dims.iter().map(|x| x * x).sum();
        assert_eq!(d.kernel_dim, square, "{dims:?}");
        assert_eq!(d.dimension, d.formula, "{dims:?}");
        assert_eq!(build_quiver(&alg).weighted_dimension(&alg), d.formula, "{dims:?}");
    }
}

#[test]
fn relative_multiplicities_match_constraint_solver() {
    for (dims, b) in bratteli_diagrams() {
        let alg = SemiSimpleAlgebra::new(&dims).unwrap();
        let r = relative_multiplicities(&alg, &b).unwrap();
        assert_eq!(relative_multiplicities_oracle(&alg, &b).unwrap(), r, "{dims:?}");
        assert_eq!(relative_derivation_oracle(&alg, &b).unwrap(), r.dimension(&alg), "{dims:?}");
        let q = build_relative_quiver(&alg, &b).unwrap();
        assert_eq!(q.weighted_dimension(&alg), r.dimension(&alg));
    }
}

#[test]
fn pictured_examples() {
    let (dims, b) = &bratteli_diagrams()[0];
    let alg = SemiSimpleAlgebra::new(dims).unwrap();
    let r = relative_multiplicities(&alg, b).unwrap();
    assert_eq!(r.loops, vec![0; 4]);
    let mut want = vec![vec![0; 4]; 4];
    for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
        want[i][j] = 1;
    }
    assert_eq!(r.arrows, want);
    assert_eq!(relative_derivation_oracle(&alg, b).unwrap(), 4);

    let (dims, b) = &bratteli_diagrams()[1];
    let alg = SemiSimpleAlgebra::new(dims).unwrap();
    let r = relative_multiplicities(&alg, b).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(r.arrows[i][j], usize::from(i != j && i / 3 == j / 3));
        }
    }

    let m2 = SemiSimpleAlgebra::new(&[2]).unwrap();
    let diag = BratteliDiagram::new(&[1, 1], vec![vec![1, 1]]);
    assert_eq!(relative_multiplicities(&m2, &diag).unwrap().loops, vec![1]);
    assert_eq!(relative_derivation_oracle(&m2, &diag).unwrap(), 4);
}

#[test]
fn bad_bratteli_rejected() {
    let alg = SemiSimpleAlgebra::new(&[2, 1]).unwrap();
    let b = BratteliDiagram::new(&[1], vec![vec![1], vec![1]]);
    assert!(matches!(relative_multiplicities(&alg, &b), Err(AlgebraError::InvalidBratteli(_))));
}
