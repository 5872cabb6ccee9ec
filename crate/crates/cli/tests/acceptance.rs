//! Acceptance suite. Prints one line per criterion and exits nonzero if
//! any criterion fails.

use dhlc_cli::gallery::{self, CaseKind, GalleryConfig, SL2_SEEDS};
use dhlc_cli::DEFAULT_SEED;
use dhlc_core::exact::{int, rat, PiecewisePoly, Rational, UniPoly};
use dhlc_core::logconcave::{
    circle_classify, graham_wall_check, hamiltonian_decision, logconcave_density, logconcave_on_line, CircleClass,
    CircleDensity, HamiltonianDecision, Status,
};
use dhlc_core::polytope::{cut, volume, VRep};
use dhlc_core::pushforward::{
    components_at, degree_check, dh_compute, dh_mc_oracle, fixed_components, gls_jump, DHFunction, DegreeVerdict,
    ToricModel,
};
use dhlc_core::sl2forms::{
    expected_primitive_dimension, hodge_riemann_pairing, is_primitive, primitive_decomposition, primitive_dimension,
    random_primitive_11, sl2_apply, sl2_bracket, weil_verify, ExteriorForm, Sl2Op,
};
use num::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

fn cube(d: usize) -> VRep {
    let pts = (0..1u32 << d).map(|m| (0..d).map(|k| int(((m >> k) & 1) as i64)).collect()).collect();
    VRep::from_points(d, pts).unwrap()
}

/// Generic convex toric gallery cases.
fn toric_cases() -> Vec<(String, ToricModel)> {
    gallery::cases()
        .into_iter()
        .filter_map(|c| match c.kind {
            CaseKind::Toric { model, generic: true, .. } => Some((c.name, model)),
            _ => None,
        })
        .collect()
}

/// Every convex toric case, including the non-generic products.
fn convex_cases() -> Vec<(String, ToricModel, bool)> {
    gallery::cases()
        .into_iter()
        .filter_map(|c| match c.kind {
            CaseKind::Toric { model, product, .. } => Some((c.name, model, product)),
            _ => None,
        })
        .collect()
}

fn dh(model: &ToricModel) -> Result<DHFunction, String> {
    dh_compute(model).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let square = dh(&ToricModel::along(cube(2), &[1, 1]).unwrap())?;
    let triangle =
        PiecewisePoly::new(vec![int(0), int(1), int(2)], vec![UniPoly::x(), UniPoly::from_ints(&[2, -1])]).unwrap();
    ensure(square.density == triangle, || format!("square density {:?}", square.density))?;

    let model = ToricModel::along(cube(3), &[1, 1, 1]).unwrap();
    let f = dh(&model)?;
    let points: Vec<Vec<Rational>> = (0..20).map(|j| vec![rat(3 * (2 * j + 1), 40)]).collect();
    let est = dh_mc_oracle(&model, 1_000_000, DEFAULT_SEED, &points).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for (i, t) in points.iter().enumerate() {
        let exact = f.density.eval(&t[0]).to_f64().unwrap();
        let z = (est.estimates[i] - exact).abs() / est.std_errors[i];
        ensure(z <= 3.0, || format!("t={} exact {exact} estimate {} stderr {}", t[0], est.estimates[i], est.std_errors[i]))?;
        worst = worst.max(z);
    }
    let took = within(start, Duration::from_secs(5))?;
    Ok(format!("square exact; cube within {worst:.2} sigma at 20 points (N=1e6, seed {DEFAULT_SEED}); {took:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let cases = toric_cases();
    let mut polytopes = BTreeSet::new();
    let mut dims = BTreeSet::new();
    for (name, model) in &cases {
        let f = dh(model)?;
        let (mass, vol) = (f.density.total_mass(), volume(model.polytope()));
        ensure(mass == vol, || format!("{name}: mass {mass} != volume {vol}"))?;
        polytopes.insert(name.rsplit_once("-w").unwrap().0.to_string());
        dims.insert(model.n());
    }
    let per_polytope = cases.len() / polytopes.len();
    ensure(polytopes.len() >= 10 && per_polytope >= 3, || format!("{} polytopes", polytopes.len()))?;
    ensure(dims == BTreeSet::from([2, 3, 4]), || format!("dims {dims:?}"))?;
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!("{} polytopes x {per_polytope} generic projections, dims 2-4, exact; {took:.2?}", polytopes.len()))
}

fn criterion_3() -> Outcome {
    let mut strict = 0;
    let cases = convex_cases();
    for (name, model, _) in &cases {
        let v = logconcave_on_line(&dh(model)?).map_err(|e| e.to_string())?;
        ensure(v.is_log_concave(), || format!("{name}: {v:?}"))?;
        strict += usize::from(v.status == Status::StrictlyLogConcave);
    }
    let bump = logconcave_density(&PiecewisePoly::single(int(-1), int(1), UniPoly::from_ints(&[1, 0, 1])))
        .map_err(|e| e.to_string())?;
    ensure(bump.status == Status::NotLogConcave && bump.witness.is_some(), || format!("t^2+1: {bump:?}"))?;
    let wave = CircleDensity::new(
        PiecewisePoly::new(vec![int(0), rat(1, 2), int(1)], vec![UniPoly::from_ints(&[1, 1]), UniPoly::from_ints(&[2, -1])])
            .unwrap(),
    )
    .map_err(|e| e.to_string())?;
    let class = circle_classify(&wave);
    let CircleClass::FullSupportNonConstant { failure: Some(w) } = &class else {
        return Err(format!("periodized kink: {class:?}"));
    };
    Ok(format!(
        "{} convex cases log-concave ({strict} strictly); t^2+1 fails at {} ({}); periodized kink fails at {} ({})",
        cases.len(),
        bump.witness.as_ref().unwrap().location,
        bump.witness.as_ref().unwrap().reason,
        w.location,
        w.reason
    ))
}

fn criterion_4() -> Outcome {
    let mut walls = 0;
    let mut cases = 0;
    for (name, model) in toric_cases().into_iter().filter(|(_, m)| m.n() == 2) {
        let f = dh(&model)?;
        let comps = fixed_components(&model).map_err(|e| e.to_string())?;
        for a in &f.walls {
            let at: Vec<_> = components_at(&comps, a).cloned().collect();
            let predicted = gls_jump(&at, a).map_err(|e| e.to_string())?;
            let measured = f.density.jump_at(a);
            ensure(!at.is_empty() && predicted.lowest_term() == measured.lowest_term(), || {
                format!("{name} at {a}: measured {measured}, predicted {predicted}")
            })?;
            walls += 1;
        }
        cases += 1;
    }
    ensure(cases > 0, || "no 2-dimensional cases".into())?;
    Ok(format!("{walls} walls across {cases} two-dimensional cases, exact"))
}

fn criterion_5() -> Outcome {
    let mut walls = 0;
    for (name, model, _) in convex_cases() {
        let f = dh(&model)?;
        for a in f.interior_walls() {
            ensure(graham_wall_check(&f, a).map_err(|e| e.to_string())?, || format!("{name} at {a}"))?;
            walls += 1;
        }
    }
    Ok(format!("{walls} interior walls, g_+' <= g_-' at each"))
}

fn criterion_6() -> Outcome {
    let mut products = 0;
    let mut all = 0;
    for (name, model, product) in convex_cases() {
        let f = dh(&model)?;
        let v = degree_check(&f);
        ensure(v == DegreeVerdict::Pass, || format!("{name}: {v:?}"))?;
        if product {
            let d = f.density.max_degree();
            ensure(d.at_most(1), || format!("{name}: degree {d:?}"))?;
            products += 1;
        }
        all += 1;
    }
    ensure(products > 0, || "no product cases".into())?;
    Ok(format!("{products} product models of degree <= 1; degree bound n-k holds on {all} cases"))
}

fn criterion_7() -> Outcome {
    let mut pairs = 0;
    let mut pieces = 0;
    for case in gallery::cases() {
        let CaseKind::Cut { model, halfspace } = case.kind else { continue };
        let f = dh(&model)?;
        let c = cut(model.polytope(), std::slice::from_ref(&halfspace)).map_err(|e| e.to_string())?;
        let g = dh(&ToricModel::new(c.clone(), model.projection().to_vec()).unwrap())?;
        // the normal is a multiple of w, so the halfspace is a level condition
        let w = &model.projection()[0];
        let j = w.iter().position(|&x| x != 0).unwrap();
        let ratio = Rational::from_integer(halfspace.normal[j].clone()) / int(w[j]);
        let inside = |t: &Rational| &ratio * t > halfspace.bound;
        for (a, b, p) in f.density.intervals() {
            let mid = (a + b) / int(2);
            if inside(a) && inside(b) && inside(&mid) {
                ensure(g.density.piece_right_of(&mid) == *p, || format!("{}: piece [{a}, {b}]", case.name))?;
                pieces += 1;
            }
        }
        ensure(g.density.total_mass() == volume(&c), || format!("{}: cut mass", case.name))?;
        pairs += 1;
    }
    ensure(pairs >= 5, || format!("only {pairs} pairs"))?;
    Ok(format!("{pairs} (polytope, halfspace) pairs, {pieces} interior pieces equal"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut basis = 0;
    for n in 1..=4usize {
        for m in 0u32..1 << (2 * n) {
            let e = ExteriorForm::monomial(n, m, int(1)).unwrap();
            let h = sl2_apply(Sl2Op::H, &e).unwrap();
            let lam = sl2_apply(Sl2Op::Lambda, &e).unwrap();
            let l = sl2_apply(Sl2Op::L, &e).unwrap();
            ensure(sl2_bracket(Sl2Op::Lambda, Sl2Op::L, &e).unwrap() == h, || format!("[Lambda,L] on {e}"))?;
            ensure(sl2_bracket(Sl2Op::H, Sl2Op::Lambda, &e).unwrap() == lam.scale(&int(2)), || format!("[H,Lambda] on {e}"))?;
            ensure(sl2_bracket(Sl2Op::H, Sl2Op::L, &e).unwrap() == l.scale(&int(-2)), || format!("[H,L] on {e}"))?;
            basis += 1;
        }
    }
    for n in 1..=4 {
        for k in 0..=n {
            let got = primitive_dimension(n, k).unwrap() as u64;
            ensure(got == expected_primitive_dimension(n, k), || format!("n={n} k={k}: {got}"))?;
        }
    }
    let mut forms = 0;
    for n in 1..=3usize {
        for k in 0..=2 * n {
            for seed in 0..SL2_SEEDS {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = ExteriorForm::random_homogeneous(n, k, 5, &mut rng).unwrap();
                let d = primitive_decomposition(&a).unwrap();
                ensure(d.reconstruct() == a, || format!("round trip n={n} k={k} seed={seed}"))?;
                ensure(d.components.values().all(|b| is_primitive(b) == Ok(true)), || format!("primitivity seed={seed}"))?;
                forms += 1;
            }
        }
    }
    let zero = ExteriorForm::zero(2).unwrap();
    ensure(weil_verify(&zero) == Ok(true) && hodge_riemann_pairing(&zero) == Ok(int(0)), || "zero form".into())?;
    let mut negative = 0;
    for seed in 0..SL2_SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_primitive_11(9, &mut rng);
        ensure(weil_verify(&g) == Ok(true), || format!("Weil identity fails for {g}"))?;
        let p = hodge_riemann_pairing(&g).map_err(|e| e.to_string())?;
        ensure(p.is_negative() || (p.is_zero() && g.is_zero()), || format!("gamma^2 = {p} for {g}"))?;
        negative += usize::from(p.is_negative());
    }
    let took = within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{basis} basis forms, primitive dimensions n<=4, {forms} round trips, {SL2_SEEDS} primitive (1,1)-forms ({negative} strictly negative); {took:.2?}"
    ))
}

fn criterion_9() -> Outcome {
    let half = CircleDensity::new(PiecewisePoly::single(int(0), rat(1, 2), UniPoly::from_ints(&[1]))).unwrap();
    let d = hamiltonian_decision(&half, &[]);
    ensure(matches!(d, HamiltonianDecision::Hamiltonian(_)), || format!("proper support: {d:?}"))?;
    let flat = CircleDensity::constant(int(3)).unwrap();
    let d = hamiltonian_decision(&flat, &[]);
    ensure(d == HamiltonianDecision::NonHamiltonianCandidate, || format!("constant: {d:?}"))?;

    let tent = CircleDensity::new(
        PiecewisePoly::new(
            vec![int(0), rat(1, 4), rat(1, 2)],
            vec![UniPoly::new(vec![int(0), rat(1, 2)]), UniPoly::new(vec![rat(1, 4), rat(-1, 2)])],
        )
        .unwrap(),
    )
    .unwrap();
    let critical = gallery::tent_critical();
    let (left, right) = tent.density().one_sided_derivatives(&rat(1, 4), 1);
    let drop = &right - &left;
    ensure(drop.is_negative(), || format!("derivative jump {drop}"))?;
    let predicted = critical.predicted_jump();
    ensure(tent.jump_at(&rat(1, 4)) == predicted, || format!("measured {} vs {predicted}", tent.jump_at(&rat(1, 4))))?;
    ensure(predicted.derivative().eval(&int(0)) == drop, || "derivative of predicted jump".into())?;
    let d = hamiltonian_decision(&tent, &[critical]);
    ensure(matches!(d, HamiltonianDecision::Hamiltonian(_)), || format!("tent: {d:?}"))?;
    Ok(format!("proper support -> Hamiltonian; constant -> NonHamiltonianCandidate; weights (-1, 1) give derivative jump {drop} = gls_jump'"))
}

fn criterion_10() -> Outcome {
    let config = GalleryConfig::new(DEFAULT_SEED);
    let a = gallery::run(&config).map_err(|e| e.to_string())?;
    let b = gallery::run(&config).map_err(|e| e.to_string())?;
    ensure(a.passed(), || a.render_text())?;
    let (ta, tb) = (a.render_text(), b.render_text());
    ensure(ta.as_bytes() == tb.as_bytes(), || "text reports differ".into())?;
    ensure(a.render_json().as_bytes() == b.render_json().as_bytes(), || "json reports differ".into())?;
    Ok(format!("{} cases, {} report bytes identical across two runs", a.cases.len(), ta.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("exact density", criterion_1),
        ("mass conservation", criterion_2),
        ("log-concavity", criterion_3),
        ("jump consistency", criterion_4),
        ("Graham inequality", criterion_5),
        ("degree law", criterion_6),
        ("cutting", criterion_7),
        ("sl(2) suite", criterion_8),
        ("Hamiltonian chain", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS  {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL  {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
