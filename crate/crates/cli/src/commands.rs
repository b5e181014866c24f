//! One function per subcommand, each producing text and JSON.

use std::collections::BTreeMap;
use std::fmt::Write;

use ncpoisson::algebra::{relative_multiplicities, BratteliDiagram};
use ncpoisson::cohomology::{build_complex, h1_generators, two_vertex_shape, CohomologyError};
use ncpoisson::exactmath::fmt_rational;
use ncpoisson::freeproduct::{
    amalgamated_double_bracket, evaluate_on_representation, evaluate_pairing, induced_trace_bracket,
    random_representation, PairCoefficients,
};
use ncpoisson::necklace::necklace_bracket as bracket_elements;
use ncpoisson::quiver::{build_quiver, build_relative_quiver};
use ncpoisson::schouten::schouten_generators;
use ncpoisson::tensors::{
    enumerate_poisson_monomials, obstruction_relations, printed_lemma_condition, two_cycles, verify_moment_map,
    TensorError,
};
use ncpoisson::{exactmath::int, Arrow, DoubleTensor, Poly, Rational, SemiSimpleAlgebra};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::{parse, CliError, Report, TensorArgs};

fn report(text: String, json: Value) -> Result<Report, CliError> {
    Ok(Report { text, json, ok: true })
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn arrow_list(arrows: &[Arrow]) -> String {
    arrows.iter().map(|a| format!("  {a}\n")).collect()
}

pub fn quiver(dims: &str) -> Result<Report, CliError> {
    let alg = parse::algebra(dims)?;
    let q = build_quiver(&alg);
    let weighted = q.weighted_dimension(&alg);
    let mut text = format!("dims: {:?}\nvertices: {}\narrows: {}\n", alg.dims(), q.vertex_count, q.arrows.len());
    text += &arrow_list(&q.arrows);
    writeln!(text, "dim Der(S) = {weighted}").unwrap();
    let json = json!({
        "dims": alg.dims(),
        "vertices": q.vertex_count,
        "arrows": q.arrows,
        "double_derivations": weighted,
    });
    report(text, json)
}

pub fn relative_quiver(dims: &str, sub_dims: &str, multiplicities: &str) -> Result<Report, CliError> {
    let alg = parse::algebra(dims)?;
    let b = BratteliDiagram::new(&parse::dims(sub_dims)?, parse::grid(multiplicities)?);
    let m = relative_multiplicities(&alg, &b).map_err(|e| usage(e.to_string()))?;
    let q = build_relative_quiver(&alg, &b).map_err(|e| usage(e.to_string()))?;
    let mut text = format!("dims: {:?}\nsubalgebra: {:?}\n", alg.dims(), b.sub_dims);
    for i in 1..=alg.k() {
        writeln!(text, "r_{i} = {}", m.loops[i - 1]).unwrap();
    }
    for i in 1..=alg.k() {
        for j in 1..=alg.k() {
            if i != j {
                writeln!(text, "r_{i}{j} = {}", m.arrows[i - 1][j - 1]).unwrap();
            }
        }
    }
    writeln!(text, "arrows: {}", q.arrows.len()).unwrap();
    text += &arrow_list(&q.arrows);
    writeln!(text, "dimension = {}", m.dimension(&alg)).unwrap();
    let json = json!({
        "dims": alg.dims(),
        "bratteli": b,
        "multiplicities": m,
        "vertices": q.vertex_count,
        "arrows": q.arrows,
        "dimension": m.dimension(&alg),
    });
    report(text, json)
}

pub fn bracket(dims: &str, a: &str, b: &str) -> Result<Report, CliError> {
    let alg = parse::algebra(dims)?;
    let (a, b) = (parse::arrow(a)?, parse::arrow(b)?);
    let t = schouten_generators(&alg, a, b).map_err(|e| usage(e.to_string()))?;
    let mut text = format!("{{{{{a}, {b}}}}} =\n");
    if t.is_zero() {
        text += "  0\n";
    }
    let mut terms = vec![];
    for ((l, r), c) in t.terms() {
        writeln!(text, "  {c:+} {l} ⊗ {r}").unwrap();
        terms.push(json!({"left": l.to_string(), "right": r.to_string(), "coeff": c}));
    }
    report(text, json!({"a": a, "b": b, "terms": terms}))
}

pub fn necklace_bracket(dims: &str, a: &[String], b: &[String]) -> Result<Report, CliError> {
    let alg = parse::algebra(dims)?;
    let (ga, gb) = (parse::element(&alg, a)?, parse::element(&alg, b)?);
    let r = bracket_elements(&alg, &ga, &gb);
    let text = format!("a = {ga}\nb = {gb}\n{{a,b}} = {r}\n");
    report(text, json!({"a": ga, "b": gb, "bracket": r}))
}

/// The tensor given by `--term` and `--c`.
fn tensor(alg: &SemiSimpleAlgebra, args: &TensorArgs) -> Result<DoubleTensor, CliError> {
    let mut p = DoubleTensor::zero();
    for t in &args.terms {
        let (w, c) = parse::term(t)?;
        let arrows = parse::word(&w)?;
        let [a, b] = arrows[..] else {
            return Err(usage(format!("{w:?}: a tensor term has exactly two arrows")));
        };
        p.add(alg, a, b, c).map_err(|e| usage(e.to_string()))?;
    }
    for ((i, j), c) in parse::pair_values(&args.pairs)? {
        if i > alg.k() || j > alg.k() {
            return Err(usage(format!("pair {i},{j} out of range 1..={}", alg.k())));
        }
        p.add(alg, Arrow::y(i, j, 1, 1), Arrow::y(j, i, 1, 1), c).map_err(|e| usage(e.to_string()))?;
    }
    Ok(p)
}

pub fn check_tensor(dims: &str, args: &TensorArgs, symbolic: bool) -> Result<Report, CliError> {
    let alg = parse::algebra(dims)?;
    let p = if symbolic {
        if !alg.is_commutative() {
            return Err(usage("--symbolic needs commutative dims such as 1,1,1"));
        }
        if !args.terms.is_empty() || !args.pairs.is_empty() {
            return Err(usage("--symbolic takes no --term or --c"));
        }
        DoubleTensor::symbolic_commutative(alg.k())
    } else {
        tensor(&alg, args)?
    };
    if p.is_zero() && !symbolic {
        return Err(usage("empty tensor; give --term, --c or --symbolic"));
    }
    let r = ncpoisson::tensors::check_tensor(&alg, &p);
    let relations: Vec<String> = if p.is_numeric() {
        vec![]
    } else {
        obstruction_relations(&r.obstruction).iter().map(|q| q.to_string()).collect()
    };
    let mut text = format!("P = {p}\npoisson: {}\n{{P,P}} = {}\n", r.poisson, r.obstruction);
    if !relations.is_empty() {
        text += "relations:\n";
        for rel in &relations {
            writeln!(text, "  {rel} = 0").unwrap();
        }
    }
    let json = json!({"tensor": p, "poisson": r.poisson, "obstruction": r.obstruction, "relations": relations});
    report(text, json)
}

pub fn enumerate_tensors(dims: &str) -> Result<Report, CliError> {
    let alg = parse::algebra(dims)?;
    let cycles = two_cycles(&alg);
    let poisson = enumerate_poisson_monomials(&alg);
    let mut text = format!("2-cycle monomials: {}\npoisson: {}\n", cycles.len(), poisson.len());
    for (a, b) in &poisson {
        writeln!(text, "  {a}*{b}").unwrap();
    }
    let mut differs = vec![];
    for &(a, b) in &cycles {
        let printed = printed_lemma_condition(&alg, a, b).expect("2-cycle");
        if printed != poisson.contains(&(a, b)) {
            differs.push((a, b));
        }
    }
    if !differs.is_empty() {
        writeln!(text, "monomials where the printed case list differs: {}", differs.len()).unwrap();
        for (a, b) in &differs {
            writeln!(text, "  {a}*{b}").unwrap();
        }
    }
    let pairs = |v: &[(Arrow, Arrow)]| -> Vec<Value> { v.iter().map(|(a, b)| json!({"first": a, "second": b})).collect() };
    let json = json!({
        "dims": alg.dims(),
        "two_cycles": cycles.len(),
        "poisson": pairs(&poisson),
        "printed_condition_differs": pairs(&differs),
    });
    report(text, json)
}

fn tensor_error(e: TensorError) -> CliError {
    match e {
        TensorError::NoMomentMap(..) | TensorError::NotPoisson => CliError::Math(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

pub fn moment_map(dims: &str, args: &TensorArgs) -> Result<Report, CliError> {
    let alg = parse::algebra(dims)?;
    let p = tensor(&alg, args)?;
    let mu = ncpoisson::tensors::moment_map(&alg, &p).map_err(tensor_error)?;
    let ok = verify_moment_map(&alg, &p, &mu).map_err(tensor_error)?;
    let shown: Vec<String> = mu
        .coefficients
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("({c})*e{i}"))
        .collect();
    let shown = if shown.is_empty() { "0".to_string() } else { shown.join(" + ") };
    let text = format!("P = {p}\nmu = {shown}\n{{P,mu}} = -E: {ok}\n");
    let json = json!({"tensor": p, "mu": mu.coefficients, "verified": ok});
    Ok(Report { text, json, ok })
}

fn cohomology_error(e: CohomologyError) -> CliError {
    match e {
        CohomologyError::NotPoisson | CohomologyError::SquareNonzero(_) => CliError::Math(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

pub fn cohomology(dims: &str, args: &TensorArgs, max_degree: usize) -> Result<Report, CliError> {
    let alg = parse::algebra(dims)?;
    let p = tensor(&alg, args)?;
    if p.is_zero() {
        return Err(usage("empty tensor; give --term or --c"));
    }
    let c = build_complex(&alg, &p, max_degree).map_err(cohomology_error)?;
    let mut text = format!("P = {p}\n");
    let mut dims_json = serde_json::Map::new();
    for n in 0..=max_degree {
        let b = c.betti(n).map_err(cohomology_error)?;
        writeln!(text, "H^{n} = {b}  (cochains {})", c.dimension(n)).unwrap();
        dims_json.insert(n.to_string(), json!(b));
    }
    let mut generators = vec![];
    if max_degree >= 1 && two_vertex_shape(&p).is_some() {
        for g in h1_generators(&alg, &p).map_err(cohomology_error)? {
            generators.push(g);
        }
        text += "H^1 generators:\n";
        for g in &generators {
            writeln!(text, "  {g}").unwrap();
        }
    }
    let json = json!({
        "tensor": p,
        "dimensions": dims_json,
        "cochains": (0..=max_degree).map(|n| c.dimension(n)).collect::<Vec<_>>(),
        "generators": generators,
    });
    report(text, json)
}

fn coefficients(n: usize, given: &[String], flag: &str) -> Result<PairCoefficients, CliError> {
    if given.is_empty() {
        let mu: Vec<Rational> = (1..=n as i64).map(int).collect();
        return Ok(PairCoefficients::from_points(&mu));
    }
    let values: BTreeMap<(usize, usize), Poly> = parse::pair_values(given)?;
    PairCoefficients::new(n, values).map_err(|e| usage(format!("{flag}: {e}")))
}

pub fn free_product_bracket(
    p: usize,
    q: usize,
    x: &str,
    y: &str,
    c: &[String],
    d: &[String],
    eval: Option<(usize, u64)>,
) -> Result<Report, CliError> {
    if p == 0 || q == 0 {
        return Err(usage("--p and --q must be positive"));
    }
    let (x, y) = (parse::trace_pairs(x)?, parse::trace_pairs(y)?);
    let (c, d) = (coefficients(p, c, "--c")?, coefficients(q, d, "--d")?);
    let fp = |e: ncpoisson::freeproduct::FreeProductError| usage(e.to_string());
    let trace = induced_trace_bracket(&x, &y, &c, &d).map_err(fp)?;
    let double = amalgamated_double_bracket(&x, &y, &c, &d).map_err(fp)?;
    let word = |w: &[(usize, usize)]| ncpoisson::freeproduct::TraceWord::new(w).map(|t| t.to_string());
    let (wx, wy) = (word(&x).map_err(fp)?, word(&y).map_err(fp)?);
    let mut text = format!("{{{wx}, {wy}}} = {trace}\n");
    let mut json = json!({"x": wx, "y": wy, "terms": trace});
    let mut ok = true;
    if let Some((n, seed)) = eval {
        let rep = random_representation(n, p, q, seed).map_err(fp)?;
        let v1 = evaluate_pairing(&double, &rep).map_err(fp)?;
        let v2 = evaluate_on_representation(&trace, &rep).map_err(fp)?;
        ok = v1 == v2;
        writeln!(text, "representation n={n} seed={seed}: blocks {:?} {:?}", rep.e_blocks, rep.f_blocks).unwrap();
        writeln!(text, "  double bracket route: {}", fmt_rational(&v1)).unwrap();
        writeln!(text, "  trace formula route:  {}", fmt_rational(&v2)).unwrap();
        writeln!(text, "  agree: {ok}").unwrap();
        json["evaluation"] = json!({
            "n": n,
            "seed": seed,
            "e_blocks": rep.e_blocks,
            "f_blocks": rep.f_blocks,
            "double_bracket_route": fmt_rational(&v1),
            "trace_formula_route": fmt_rational(&v2),
            "agree": ok,
        });
    }
    Ok(Report { text, json, ok })
}
