use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ncpoisson::algebra::derivation_module_dimension;
use ncpoisson::cohomology::build_complex;
use ncpoisson::exactmath::int;
use ncpoisson::freeproduct::{
    amalgamated_double_bracket, evaluate_on_representation, evaluate_pairing, induced_trace_bracket,
    random_representation, PairCoefficients,
};
use ncpoisson::necklace::necklace_bracket;
use ncpoisson::tensors::check_tensor;
use ncpoisson::{Arrow, DoubleTensor, GradedElement, Poly, SemiSimpleAlgebra};

fn derivations(c: &mut Criterion) {
    let alg = SemiSimpleAlgebra::new(&[2, 2]).unwrap();
    c.bench_function("derivation rank M2+M2", |b| b.iter(|| derivation_module_dimension(black_box(&alg))));
}

fn necklaces(c: &mut Criterion) {
    let alg = SemiSimpleAlgebra::new(&[2, 1, 1]).unwrap();
    let w = |arrows: &[Arrow]| GradedElement::from_word(&alg, arrows, Poly::from_int(1)).unwrap();
    let a = w(&[Arrow::y(2, 1, 1, 2), Arrow::y(3, 2, 1, 1), Arrow::y(1, 3, 2, 1)]);
    let b = w(&[Arrow::x(1, 1, 2), Arrow::y(2, 1, 1, 1), Arrow::y(1, 2, 2, 1)]);
    c.bench_function("necklace bracket degree 3", |bn| bn.iter(|| necklace_bracket(&alg, black_box(&a), black_box(&b))));
    let p = DoubleTensor::symbolic_commutative(5);
    let c5 = SemiSimpleAlgebra::commutative(5).unwrap();
    c.bench_function("symbolic {P,P} on C^5", |bn| bn.iter(|| check_tensor(&c5, black_box(&p))));
}

fn cohomology(c: &mut Criterion) {
    let alg = SemiSimpleAlgebra::new(&[2, 2]).unwrap();
    let p = DoubleTensor::monomial(&alg, Arrow::y(2, 1, 1, 1), Arrow::y(1, 2, 2, 2)).unwrap();
    c.bench_function("complex M2+M2 to degree 2", |b| b.iter(|| build_complex(&alg, black_box(&p), 2).unwrap()));
}

fn free_product(c: &mut Criterion) {
    let pts = |v: &[i64]| PairCoefficients::from_points(&v.iter().map(|&x| int(x)).collect::<Vec<_>>());
    let (cc, dd) = (pts(&[0, 1, 3]), pts(&[2, -1, 5]));
    let x = vec![(1, 2), (2, 3), (3, 1)];
    let y = vec![(2, 2), (1, 3)];
    let rep = random_representation(4, 3, 3, 1).unwrap();
    c.bench_function("trace formula and evaluation", |b| {
        b.iter(|| evaluate_on_representation(&induced_trace_bracket(&x, &y, &cc, &dd).unwrap(), &rep).unwrap())
    });
    c.bench_function("double bracket and pairing", |b| {
        b.iter(|| evaluate_pairing(&amalgamated_double_bracket(&x, &y, &cc, &dd).unwrap(), &rep).unwrap())
    });
}

criterion_group!(benches, derivations, necklaces, cohomology, free_product);
criterion_main!(benches);
