mod support;

use ncpoisson::exactmath::int;
use ncpoisson::necklace::{necklace_bracket, GradedElement};
use ncpoisson::{Poly, SemiSimpleAlgebra};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{necklace_oracle, random_cycle, random_necklace};

const ALGEBRAS: &[&[usize]] = &[&[1, 1], &[1, 1, 1], &[2], &[2, 1], &[3], &[2, 2], &[1, 1, 1, 1], &[3, 2]];

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^{(|a|-1)(|b|-1)}`.
fn koszul(a: &GradedElement, b: &GradedElement) -> Poly {
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    Poly::from_int(sign((da + 1) * (db + 1)))
}

#[test]
fn gluing_matches_leibniz_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for dims in ALGEBRAS {
        let alg = SemiSimpleAlgebra::new(dims).unwrap();
        for _ in 0..60 {
            let (d1, d2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let (Some(w1), Some(w2)) = (random_cycle(&alg, d1, &mut rng), random_cycle(&alg, d2, &mut rng)) else {
                continue;
            };
            let a = GradedElement::from_word(&alg, &w1, Poly::from_int(1)).unwrap();
            let b = GradedElement::from_word(&alg, &w2, Poly::from_int(1)).unwrap();
            let want = necklace_oracle(&alg, &w1, &w2);
            assert_eq!(necklace_bracket(&alg, &a, &b), want, "{dims:?} {w1:?} {w2:?}");
            // any rotation represents the same class
            let r = rng.gen_range(0..w1.len());
            let rotated: Vec<_> = w1[r..].iter().chain(&w1[..r]).copied().collect();
            let s = sign((w1.len() - 1) * r);
            assert_eq!(necklace_oracle(&alg, &rotated, &w2).scale(&Poly::from_int(s)), want);
        }
    }
}

#[test]
fn bracket_degree_is_sum_minus_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alg = SemiSimpleAlgebra::new(&[2, 1]).unwrap();
    for _ in 0..40 {
        let a = random_necklace(&alg, rng.gen_range(1..=3), &mut rng).unwrap();
        let b = random_necklace(&alg, rng.gen_range(1..=3), &mut rng).unwrap();
        let c = necklace_bracket(&alg, &a, &b);
        if !c.is_zero() {
            assert_eq!(c.degree(), Some(a.degree().unwrap() + b.degree().unwrap() - 1));
        }
    }
}

fn random_triple(seed: u64) -> Option<(SemiSimpleAlgebra, [GradedElement; 3])> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = ALGEBRAS[rng.gen_range(0..ALGEBRAS.len())];
    let alg = SemiSimpleAlgebra::new(dims).unwrap();
    let mut el = || random_necklace(&alg, rng.gen_range(1..=3), &mut rng);
    let t = [el()?, el()?, el()?];
    Some((alg, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn graded_antisymmetry(seed in any::<u64>()) {
        if let Some((alg, [a, b, _])) = random_triple(seed) {
            let ab = necklace_bracket(&alg, &a, &b);
            let ba = necklace_bracket(&alg, &b, &a);
            prop_assert_eq!(ab.plus(&ba.scale(&koszul(&a, &b))), GradedElement::zero());
        }
    }

    #[test]
    fn graded_jacobi(seed in any::<u64>()) {
        if let Some((alg, [a, b, c])) = random_triple(seed) {
            let lhs = necklace_bracket(&alg, &a, &necklace_bracket(&alg, &b, &c));
            let r1 = necklace_bracket(&alg, &necklace_bracket(&alg, &a, &b), &c);
            let r2 = necklace_bracket(&alg, &b, &necklace_bracket(&alg, &a, &c)).scale(&koszul(&a, &b));
            prop_assert_eq!(lhs, r1.plus(&r2));
        }
    }
}

#[test]
fn vertex_symbols_are_central() {
    let alg = SemiSimpleAlgebra::new(&[1, 1]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = random_necklace(&alg, 2, &mut rng).unwrap();
    assert!(necklace_bracket(&alg, &GradedElement::vertex(1), &a).is_zero());
    assert!(necklace_bracket(&alg, &a, &GradedElement::vertex(2).scale(&Poly::constant(int(3)))).is_zero());
}
