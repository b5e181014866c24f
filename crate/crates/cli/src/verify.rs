//! Consistency checks run by `ncpoisson verify`. Each compares two
//! independent computations inside the library.

use std::fmt::Write;

use ncpoisson::algebra::{
    derivation_module_dimension, relative_multiplicities, relative_multiplicities_oracle, BratteliDiagram,
};
use ncpoisson::cohomology::build_complex;
use ncpoisson::exactmath::int;
use ncpoisson::freeproduct::{
    amalgamated_double_bracket, evaluate_on_representation, evaluate_pairing, induced_trace_bracket,
    random_representation, PairCoefficients,
};
use ncpoisson::necklace::necklace_bracket;
use ncpoisson::quiver::build_quiver;
use ncpoisson::schouten::{double_jacobi_check, encode, induced_double_bracket_terms, schouten_generators, schouten_oracle};
use ncpoisson::tensors::{check_tensor, is_poisson_monomial, moment_map, two_cycles, verify_moment_map};
use ncpoisson::{Arrow, DoubleTensor, GradedElement, Poly, Rational, SemiSimpleAlgebra};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::Report;

type Check = Result<String, String>;

fn alg(d: &[usize]) -> SemiSimpleAlgebra {
    SemiSimpleAlgebra::new(d).expect("valid dims")
}

fn derivation_dimensions() -> Check {
    let cases: &[&[usize]] = &[&[1], &[2], &[1, 1], &[2, 1], &[1, 1, 1], &[3], &[2, 2]];
    for d in cases {
        let a = alg(d);
        let r = derivation_module_dimension(&a);
        let from_quiver = build_quiver(&a).weighted_dimension(&a);
        let kernel: usize = d.iter().map(|x| x * x).sum();
        if r.dimension != r.formula || r.formula != from_quiver || r.kernel_dim != kernel {
            return Err(format!("dims {d:?}: elimination {} formula {} quiver {from_quiver}", r.dimension, r.formula));
        }
    }
    Ok(format!("{} algebras", cases.len()))
}

fn relative_quivers() -> Check {
    let cases: Vec<(&[usize], BratteliDiagram)> = vec![
        (&[1, 1, 1, 1], BratteliDiagram::new(&[1, 1], vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]])),
        (&[2, 1], BratteliDiagram::new(&[1], vec![vec![2], vec![1]])),
        (&[2], BratteliDiagram::new(&[1, 1], vec![vec![1, 1]])),
        (&[3, 1], BratteliDiagram::new(&[1, 1], vec![vec![2, 1], vec![0, 1]])),
    ];
    for (d, b) in &cases {
        let a = alg(d);
        let formula = relative_multiplicities(&a, b).map_err(|e| e.to_string())?;
        let oracle = relative_multiplicities_oracle(&a, b).map_err(|e| e.to_string())?;
        if formula != oracle {
            return Err(format!("dims {d:?} {b:?}: {formula:?} vs {oracle:?}"));
        }
    }
    Ok(format!("{} diagrams", cases.len()))
}

fn schouten_tables() -> Check {
    let mut pairs = 0;
    for d in [&[1, 1][..], &[1, 1, 1], &[2], &[2, 1]] {
        let a = alg(d);
        let gens = build_quiver(&a).arrows;
        for &g1 in &gens {
            for &g2 in &gens {
                let t = schouten_generators(&a, g1, g2).map_err(|e| e.to_string())?;
                if encode(&a, &t) != schouten_oracle(&a, g1, g2).map_err(|e| e.to_string())? {
                    return Err(format!("dims {d:?}: {g1} {g2}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} generator pairs"))
}

fn tensor_routes() -> Check {
    let mut n = 0;
    for d in [&[1, 1][..], &[2, 1], &[2, 2], &[3, 1], &[1, 1, 1], &[2, 1, 1]] {
        let a = alg(d);
        for (x, y) in two_cycles(&a) {
            let lemma = is_poisson_monomial(&a, x, y).map_err(|e| e.to_string())?;
            let brute = check_tensor(&a, &DoubleTensor::monomial(&a, x, y).map_err(|e| e.to_string())?).poisson;
            let jacobi = double_jacobi_check(&a, &induced_double_bracket_terms(&a, &[(x, y, 1i64)])).holds;
            if lemma != brute || brute != jacobi {
                return Err(format!("dims {d:?}: {x}*{y}: lemma {lemma}, {{P,P}} {brute}, jacobi {jacobi}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} monomials"))
}

fn random_necklace(a: &SemiSimpleAlgebra, rng: &mut ChaCha8Rng) -> Option<GradedElement> {
    let arrows = build_quiver(a).arrows;
    let degree = rng.gen_range(1..=3);
    for _ in 0..200 {
        let mut w = vec![*arrows.choose(rng)?];
        while w.len() < degree {
            let last = w[w.len() - 1];
            let next: Vec<Arrow> = arrows.iter().copied().filter(|b| b.tail == last.head).collect();
            w.push(*next.choose(rng)?);
        }
        if w[w.len() - 1].head == w[0].tail {
            let g = GradedElement::from_word(a, &w, Poly::from_int(rng.gen_range(1..=3))).ok()?;
            if !g.is_zero() {
                return Some(g);
            }
        }
    }
    None
}

fn necklace_laws(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let algebras = [alg(&[1, 1]), alg(&[2, 1]), alg(&[1, 1, 1]), alg(&[2, 2]), alg(&[3])];
    let sign = |x: &GradedElement, y: &GradedElement| {
        let e = (x.degree().unwrap() + 1) * (y.degree().unwrap() + 1);
        Poly::from_int(if e % 2 == 0 { 1 } else { -1 })
    };
    let mut count = 0;
    for t in 0..60 {
        let a = &algebras[t % algebras.len()];
        let (Some(x), Some(y), Some(z)) = (random_necklace(a, &mut rng), random_necklace(a, &mut rng), random_necklace(a, &mut rng))
        else {
            continue;
        };
        let xy = necklace_bracket(a, &x, &y);
        let anti = xy.plus(&necklace_bracket(a, &y, &x).scale(&sign(&x, &y)));
        if !anti.is_zero() {
            return Err(format!("antisymmetry fails for {x} and {y}"));
        }
        let lhs = necklace_bracket(a, &x, &necklace_bracket(a, &y, &z));
        let rhs = necklace_bracket(a, &xy, &z).plus(&necklace_bracket(a, &y, &necklace_bracket(a, &x, &z)).scale(&sign(&x, &y)));
        if lhs != rhs {
            return Err(format!("Jacobi fails for {x}, {y}, {z}"));
        }
        count += 1;
    }
    Ok(format!("{count} triples"))
}

fn moment_maps() -> Check {
    for mu in [&[0i64, 1][..], &[0, 1, 3], &[2, -1, 5, 0]] {
        let n = mu.len();
        let a = SemiSimpleAlgebra::commutative(n).expect("n >= 1");
        let mut p = DoubleTensor::zero();
        for i in 0..n {
            for j in i + 1..n {
                let c = Poly::constant(Rational::from_integer((mu[i] - mu[j]).into()).recip());
                p.add(&a, Arrow::y(i + 1, j + 1, 1, 1), Arrow::y(j + 1, i + 1, 1, 1), c).map_err(|e| e.to_string())?;
            }
        }
        let m = moment_map(&a, &p).map_err(|e| e.to_string())?;
        if !verify_moment_map(&a, &p, &m).map_err(|e| e.to_string())? {
            return Err(format!("{{P,mu}} != -E for points {mu:?}"));
        }
    }
    Ok("n = 2, 3, 4".into())
}

fn complex_squares() -> Check {
    let a = alg(&[1, 1]);
    let p = DoubleTensor::monomial(&a, Arrow::y(2, 1, 1, 1), Arrow::y(1, 2, 1, 1)).map_err(|e| e.to_string())?;
    let c = build_complex(&a, &p, 4).map_err(|e| e.to_string())?;
    let b: Vec<usize> = (0..=4).map(|n| c.betti(n).expect("in range")).collect();
    Ok(format!("d^2 = 0 through degree 5; betti {b:?}"))
}

fn free_product_routes(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nonzero = 0;
    for t in 0..60 {
        let (p, q) = if t % 2 == 0 { (3, 3) } else { (rng.gen_range(1..=3), rng.gen_range(1..=3)) };
        let points = |k: usize, rng: &mut ChaCha8Rng| {
            let mut pts: Vec<i64> = (-5..=5).collect();
            pts.shuffle(rng);
            PairCoefficients::from_points(&pts[..k].iter().map(|&v| int(v)).collect::<Vec<_>>())
        };
        let (c, d) = (points(p, &mut rng), points(q, &mut rng));
        let word = |rng: &mut ChaCha8Rng| -> Vec<(usize, usize)> {
            (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(1..=p), rng.gen_range(1..=q))).collect()
        };
        let (x, y) = (word(&mut rng), word(&mut rng));
        let double = amalgamated_double_bracket(&x, &y, &c, &d).map_err(|e| e.to_string())?;
        let trace = induced_trace_bracket(&x, &y, &c, &d).map_err(|e| e.to_string())?;
        let rep = random_representation(rng.gen_range(1..=4), p, q, rng.gen()).map_err(|e| e.to_string())?;
        let v1 = evaluate_pairing(&double, &rep).map_err(|e| e.to_string())?;
        let v2 = evaluate_on_representation(&trace, &rep).map_err(|e| e.to_string())?;
        if v1 != v2 {
            return Err(format!("{x:?} {y:?}: {v1} vs {v2}"));
        }
        if p <= 2 || q <= 2 {
            if v2 != int(0) {
                return Err(format!("{x:?} {y:?}: nonzero value {v2} with p={p}, q={q}"));
            }
        } else if v2 != int(0) {
            nonzero += 1;
        }
    }
    Ok(format!("60 samples, {nonzero} nonzero"))
}

/// Runs every check and reports one line each.
pub fn run(seed: u64) -> Report {
    let checks: Vec<(&str, Check)> = vec![
        ("double derivation dimensions", derivation_dimensions()),
        ("relative multiplicities", relative_quivers()),
        ("Schouten table vs definition", schouten_tables()),
        ("Poisson monomials, three routes", tensor_routes()),
        ("necklace antisymmetry and Jacobi", necklace_laws(seed)),
        ("moment maps", moment_maps()),
        ("Lichnerowicz complex", complex_squares()),
        ("free product, two routes", free_product_routes(seed)),
    ];
    let mut text = String::new();
    let mut rows = vec![];
    let mut ok = true;
    for (name, r) in &checks {
        let (pass, detail) = match r {
            Ok(d) => (true, d.clone()),
            Err(d) => (false, d.clone()),
        };
        ok &= pass;
        writeln!(text, "{} {name}: {detail}", if pass { "PASS" } else { "FAIL" }).unwrap();
        rows.push(json!({"check": name, "pass": pass, "detail": detail}));
    }
    writeln!(text, "{}", if ok { "all checks passed" } else { "some checks FAILED" }).unwrap();
    Report { text, json: json!({"seed": seed, "checks": rows, "pass": ok}), ok }
}
