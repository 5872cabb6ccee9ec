//! Curated cases with self-validation and golden-file comparison.
//!
//! Toric cases check mass, degree, log-concavity, Graham drops, fixed-point
//! jumps, the midpoint measure inequality and a Monte-Carlo estimate. Cut
//! cases check that cutting along the projection restricts the density.
//! Line, circle and exterior-algebra cases check verdicts and sweeps. Every
//! case then compares its canonical JSON with `golden/<name>.json`.

use crate::CliError;
use dhlc_core::exact::{int, rat, Interval, PiecewisePoly, Rational, UniPoly};
use dhlc_core::json::{self, circle_class_json, decision_json};
use dhlc_core::logconcave::{
    circle_classify, graham_wall_check, hamiltonian_decision, logconcave_on_line, midpoint_mass_inequality,
    CircleDensity, CriticalLevelData, Status,
};
use dhlc_core::polytope::{cut, volume, Halfspace, Point, VRep};
use dhlc_core::pushforward::{
    components_at, degree_check, dh_compute, dh_mc_oracle, fixed_components, gls_jump, DHFunction, DegreeVerdict,
    FixedComponent, ToricModel,
};
use dhlc_core::sl2forms::{
    expected_primitive_dimension, hodge_riemann_holds, is_primitive, key_inequality_check, primitive_decomposition,
    primitive_dimension, random_primitive_11, sl2_apply, sl2_bracket, weil_verify, ExteriorForm, Sl2Op,
};
use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use std::path::{Path, PathBuf};

pub const MC_SAMPLES: u64 = 200_000;
pub const MC_POINTS: usize = 5;
/// Allowed deviation of the Monte-Carlo estimate from the exact bin
/// average, in standard errors.
pub const MC_SIGMAS: f64 = 4.0;
pub const MIDPOINT_PAIRS: usize = 20;
pub const SL2_SEEDS: u64 = 1000;

pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

#[derive(Debug, Clone)]
pub enum Sl2Sweep {
    Brackets,
    PrimitiveDims,
    RoundTrip,
    Weil,
}

#[derive(Debug, Clone)]
pub enum CaseKind {
    Toric { model: ToricModel, generic: bool, product: bool },
    Cut { model: ToricModel, halfspace: Halfspace },
    Line { density: DHFunction, expect_log_concave: bool },
    Circle { density: CircleDensity, criticals: Vec<CriticalLevelData>, class: &'static str, decision: &'static str },
    Sl2(Sl2Sweep),
}

#[derive(Debug, Clone)]
pub struct GalleryCase {
    pub name: String,
    pub kind: CaseKind,
}

impl GalleryCase {
    pub fn is_convex_toric(&self) -> bool {
        matches!(self.kind, CaseKind::Toric { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub name: String,
    pub checks: Vec<Check>,
    /// Canonical JSON compared against the golden file.
    pub golden: String,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GalleryReport {
    pub seed: u64,
    pub cases: Vec<CaseReport>,
}

impl GalleryReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseReport::passed)
    }

    pub fn render_text(&self) -> String {
        let width = self.cases.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let mut out = format!("{:width$}  result  checks\n", "case");
        for c in &self.cases {
            let checks: Vec<String> = c.checks.iter().map(|k| format!("{}:{}", k.name, if k.ok { "ok" } else { "FAIL" })).collect();
            out.push_str(&format!("{:width$}  {}    {}\n", c.name, if c.passed() { "pass" } else { "FAIL" }, checks.join(" ")));
            for k in &c.checks {
                if !k.ok || k.name == "mc" {
                    for line in k.detail.lines() {
                        out.push_str(&format!("{:width$}      {}: {}\n", "", k.name, line));
                    }
                }
            }
        }
        let failed = self.cases.iter().filter(|c| !c.passed()).count();
        out.push_str(&format!(
            "{} cases, {} passed, {} failed, seed {}\n",
            self.cases.len(),
            self.cases.len() - failed,
            failed,
            self.seed
        ));
        out
    }

    pub fn render_json(&self) -> String {
        let cases: Vec<_> = self
            .cases
            .iter()
            .map(|c| {
                let checks: Vec<_> =
                    c.checks.iter().map(|k| json!({ "name": k.name, "ok": k.ok, "detail": k.detail })).collect();
                json!({ "name": c.name, "passed": c.passed(), "checks": checks })
            })
            .collect();
        json::to_string(&json!({ "seed": self.seed, "passed": self.passed(), "cases": cases }))
    }
}

#[derive(Debug, Clone)]
pub struct GalleryConfig {
    pub seed: u64,
    pub filter: Option<String>,
    pub golden_dir: PathBuf,
    pub update_golden: bool,
}

impl GalleryConfig {
    pub fn new(seed: u64) -> Self {
        GalleryConfig { seed, filter: None, golden_dir: default_golden_dir(), update_golden: false }
    }
}

fn cube(d: usize) -> VRep {
    let pts = (0..1u32 << d).map(|m| (0..d).map(|k| int(((m >> k) & 1) as i64)).collect()).collect();
    VRep::from_points(d, pts).unwrap()
}

fn simplex(d: usize) -> VRep {
    let mut pts = vec![vec![int(0); d]];
    for i in 0..d {
        let mut p = vec![int(0); d];
        p[i] = int(1);
        pts.push(p);
    }
    VRep::from_points(d, pts).unwrap()
}

fn cross(d: usize) -> VRep {
    let mut pts: Vec<Point> = Vec::new();
    for i in 0..d {
        for s in [1, -1] {
            let mut p = vec![int(0); d];
            p[i] = int(s);
            pts.push(p);
        }
    }
    VRep::from_points(d, pts).unwrap()
}

/// `[0,1] x q`, the interval as the first coordinate.
fn interval_times(q: &VRep) -> VRep {
    let pts = q
        .vertices()
        .iter()
        .flat_map(|v| (0..2).map(move |x| std::iter::once(int(x)).chain(v.iter().cloned()).collect()))
        .collect();
    VRep::from_points(q.dim() + 1, pts).unwrap()
}

fn hs(normal: &[i64], bound: Rational) -> Halfspace {
    Halfspace::from_ints(normal, bound).unwrap()
}

fn polytopes() -> Vec<(&'static str, VRep, Vec<Vec<i64>>)> {
    let square = cube(2);
    let cut_square = cut(&square, &[hs(&[-1, -1], rat(-3, 2))]).unwrap();
    let hexagon = cut(&cube(2).map_vertices(|v| v.iter().map(|x| x * int(2)).collect(), 2).unwrap(), &[
        hs(&[1, 1], int(1)),
        hs(&[-1, -1], int(-3)),
    ])
    .unwrap();
    let cut_cube = cut(&cube(3), &[hs(&[-1, -1, -2], rat(-5, 2))]).unwrap();
    vec![
        ("simplex2", simplex(2), vec![vec![1, 2], vec![2, 1], vec![1, 3]]),
        ("square", square, vec![vec![1, 1], vec![1, 2], vec![2, -1]]),
        ("orbifold-triangle", VRep::from_int_points(2, &[&[0, 0], &[2, 0], &[0, 1]]).unwrap(), vec![
            vec![1, 3],
            vec![1, 1],
            vec![2, 1],
        ]),
        ("cut-square", cut_square, vec![vec![1, 2], vec![2, 1], vec![3, -1]]),
        ("hexagon", hexagon, vec![vec![1, 2], vec![2, -1], vec![1, 3]]),
        ("cross2", cross(2), vec![vec![1, 2], vec![1, 3], vec![2, -1]]),
        ("simplex3", simplex(3), vec![vec![1, 2, 3], vec![2, 5, 3], vec![1, -1, 2]]),
        ("cube3", cube(3), vec![vec![1, 1, 1], vec![1, 2, 5], vec![2, -1, 3]]),
        ("cross3", cross(3), vec![vec![1, 2, 4], vec![1, 3, -5], vec![2, -3, 7]]),
        ("prism", interval_times(&simplex(2)), vec![vec![1, 2, 3], vec![3, 1, 2], vec![2, 1, -3]]),
        ("cut-cube3", cut_cube, vec![vec![1, 2, 5], vec![3, 1, 4], vec![1, -2, 4]]),
        ("simplex4", simplex(4), vec![vec![1, 2, 3, 4], vec![1, -2, 3, 5], vec![4, 1, 3, 2]]),
        ("cube4", cube(4), vec![vec![1, 2, 3, 5], vec![1, 1, 1, 1], vec![2, -1, 3, 1]]),
        ("cross4", cross(4), vec![vec![1, 2, 4, 8], vec![1, 3, 7, -12], vec![2, 3, 5, -13]]),
    ]
}

fn w_suffix(w: &[i64]) -> String {
    w.iter().map(|c| if *c < 0 { format!("m{}", -c) } else { c.to_string() }).collect::<Vec<_>>().join("-")
}

fn tent() -> CircleDensity {
    CircleDensity::new(
        PiecewisePoly::new(
            vec![int(0), rat(1, 4), rat(1, 2)],
            vec![UniPoly::new(vec![int(0), rat(1, 2)]), UniPoly::new(vec![rat(1, 4), rat(-1, 2)])],
        )
        .unwrap(),
    )
    .unwrap()
}

fn triangle_wave() -> CircleDensity {
    CircleDensity::new(
        PiecewisePoly::new(
            vec![int(0), rat(1, 2), int(1)],
            vec![UniPoly::from_ints(&[1, 1]), UniPoly::from_ints(&[2, -1])],
        )
        .unwrap(),
    )
    .unwrap()
}

/// The opposite-sign weight pair at level 1/4 matching [`tent`].
pub fn tent_critical() -> CriticalLevelData {
    CriticalLevelData::new(rat(1, 4), vec![FixedComponent::new(rat(1, 4), vec![int(-1), int(1)], int(1)).unwrap()])
        .unwrap()
}

pub fn cases() -> Vec<GalleryCase> {
    let mut out = Vec::new();
    for (name, p, ws) in polytopes() {
        for w in ws {
            out.push(GalleryCase {
                name: format!("toric-{name}-w{}", w_suffix(&w)),
                kind: CaseKind::Toric { model: ToricModel::along(p.clone(), &w).unwrap(), generic: true, product: false },
            });
        }
    }
    for (name, q) in [("triangle", simplex(2)), ("square", cube(2)), ("cube3", cube(3)), ("cross3", cross(3))] {
        let p = interval_times(&q);
        let mut w = vec![0; p.dim()];
        w[0] = 1;
        out.push(GalleryCase {
            name: format!("product-interval-{name}"),
            kind: CaseKind::Toric { model: ToricModel::along(p, &w).unwrap(), generic: false, product: true },
        });
    }
    let cut_pairs: Vec<(&str, VRep, Vec<i64>, Rational)> = vec![
        ("square-upper", cube(2), vec![1, 2], rat(3, 2)),
        ("square-lower", cube(2), vec![-1, -2], rat(-1, 2)),
        ("cube3", cube(3), vec![1, 2, 5], rat(7, 3)),
        ("simplex3", simplex(3), vec![1, -1, 2], rat(1, 2)),
        ("cross3", cross(3), vec![1, 2, 4], rat(-3, 2)),
        ("cube4", cube(4), vec![1, 2, 3, 5], int(5)),
    ];
    for (name, p, w, b) in cut_pairs {
        let model = ToricModel::along(p, &w).unwrap();
        out.push(GalleryCase { name: format!("cut-{name}"), kind: CaseKind::Cut { model, halfspace: hs(&w, b) } });
    }
    let line = |name: &str, density: PiecewisePoly, expect: bool| GalleryCase {
        name: format!("line-{name}"),
        kind: CaseKind::Line { density: DHFunction::from_density(density, 2, 1), expect_log_concave: expect },
    };
    out.push(line(
        "triangle",
        PiecewisePoly::new(vec![int(0), int(1), int(2)], vec![UniPoly::x(), UniPoly::from_ints(&[2, -1])]).unwrap(),
        true,
    ));
    out.push(line("t2-plus-1", PiecewisePoly::single(int(-1), int(1), UniPoly::from_ints(&[1, 0, 1])), false));
    out.push(line(
        "upward-kink",
        PiecewisePoly::new(vec![int(0), int(1), int(2)], vec![UniPoly::from_ints(&[2, -1]), UniPoly::x()]).unwrap(),
        false,
    ));
    let circle = |name: &str, density: CircleDensity, criticals, class, decision| GalleryCase {
        name: format!("circle-{name}"),
        kind: CaseKind::Circle { density, criticals, class, decision },
    };
    out.push(circle(
        "constant",
        CircleDensity::constant(int(3)).unwrap(),
        vec![],
        "Constant",
        "NonHamiltonianCandidate",
    ));
    out.push(circle(
        "half-support",
        CircleDensity::new(PiecewisePoly::single(int(0), rat(1, 2), UniPoly::from_ints(&[1]))).unwrap(),
        vec![],
        "ProperSupport",
        "Hamiltonian",
    ));
    out.push(circle("tent-with-wall", tent(), vec![tent_critical()], "ProperSupport", "Hamiltonian"));
    out.push(circle("triangle-wave", triangle_wave(), vec![], "FullSupportNonConstant", "NonHamiltonianCandidate"));
    out.push(circle(
        "constant-declared-wall",
        CircleDensity::constant(int(3)).unwrap(),
        vec![tent_critical()],
        "Constant",
        "Inconsistent",
    ));
    for (name, sweep) in [
        ("brackets", Sl2Sweep::Brackets),
        ("primitive-dims", Sl2Sweep::PrimitiveDims),
        ("roundtrip", Sl2Sweep::RoundTrip),
        ("weil", Sl2Sweep::Weil),
    ] {
        out.push(GalleryCase { name: format!("sl2-{name}"), kind: CaseKind::Sl2(sweep) });
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> Check {
    Check { name, ok, detail: detail.into() }
}

fn case_seed(seed: u64, name: &str) -> u64 {
    // FNV-1a of the case name, mixed with the run seed
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    seed ^ h
}

fn exact_bin_average(f: &PiecewisePoly, t: &Rational, h: f64) -> f64 {
    let h = Rational::from_float(h).expect("finite bin width");
    let half = &h / int(2);
    (f.integrate(&Interval::closed(t - &half, t + &half)) / h).to_f64().unwrap_or(f64::NAN)
}

fn toric_checks(model: &ToricModel, generic: bool, product: bool, seed: u64) -> Result<(Vec<Check>, serde_json::Value), String> {
    let f = dh_compute(model).map_err(|e| e.to_string())?;
    let p = model.polytope();
    let mut checks = Vec::new();

    let (mass, vol) = (f.density.total_mass(), volume(p));
    checks.push(check("mass", mass == vol, format!("mass {mass}, volume {vol}")));

    let degree = degree_check(&f);
    checks.push(check("degree", degree == DegreeVerdict::Pass, format!("{degree:?}")));
    if product {
        let d = f.density.max_degree();
        checks.push(check("complexity-one", d.at_most(1), format!("max degree {d:?}")));
    }

    let verdict = logconcave_on_line(&f).map_err(|e| e.to_string())?;
    checks.push(check("prekopa", verdict.is_log_concave(), format!("{:?}", verdict)));

    let bad_walls: Vec<String> =
        f.interior_walls().iter().filter(|a| !graham_wall_check(&f, a).unwrap_or(false)).map(|a| a.to_string()).collect();
    checks.push(check("graham", bad_walls.is_empty(), format!("failing walls {bad_walls:?}")));

    let mut golden = json!({ "dh": serde_json::to_value(&f).unwrap(), "verdict": serde_json::to_value(&verdict).unwrap() });
    if generic {
        let comps = fixed_components(model).map_err(|e| e.to_string())?;
        let mut levels: Vec<Rational> = comps.iter().map(|c| c.level.clone()).collect();
        levels.sort();
        levels.dedup();
        let mut problems = Vec::new();
        for wall in &f.walls {
            if !levels.contains(wall) {
                problems.push(format!("wall {wall} carries no fixed point"));
            }
        }
        for a in &levels {
            let at: Vec<FixedComponent> = components_at(&comps, a).cloned().collect();
            let predicted = gls_jump(&at, a).map_err(|e| e.to_string())?;
            let measured = f.density.jump_at(a);
            if predicted.lowest_term() != measured.lowest_term() {
                problems.push(format!("at {a}: measured {measured}, predicted {predicted}"));
            }
        }
        checks.push(check("gls", problems.is_empty(), problems.join("; ")));
        golden["fixed_components"] = serde_json::to_value(&comps).unwrap();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = f.density.support().ok_or("empty density")?;
    let mut bad_pairs = Vec::new();
    for _ in 0..MIDPOINT_PAIRS {
        let mut pick = || &lo + (&hi - &lo) * rat(rng.gen_range(0..=48), 48);
        let (mut a, mut b) = ((pick(), pick()), (pick(), pick()));
        if a.0 > a.1 {
            a = (a.1, a.0);
        }
        if b.0 > b.1 {
            b = (b.1, b.0);
        }
        if !midpoint_mass_inequality(&f.density, (&a.0, &a.1), (&b.0, &b.1)) {
            bad_pairs.push(format!("A=[{}, {}] B=[{}, {}]", a.0, a.1, b.0, b.1));
        }
    }
    checks.push(check("midpoint", bad_pairs.is_empty(), bad_pairs.join("; ")));

    let denom = int(2 * MC_POINTS as i64);
    let points: Vec<Vec<Rational>> =
        (0..MC_POINTS).map(|j| vec![&lo + (&hi - &lo) * int(2 * j as i64 + 1) / &denom]).collect();
    let est = dh_mc_oracle(model, MC_SAMPLES, seed, &points).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    let mut lines = Vec::new();
    for (i, t) in points.iter().enumerate() {
        let exact = exact_bin_average(&f.density, &t[0], est.bin_widths[0]);
        let z = if est.std_errors[i] > 0.0 { (est.estimates[i] - exact).abs() / est.std_errors[i] } else { f64::INFINITY };
        worst = worst.max(z);
        lines.push(format!("t={} exact={:.6} estimate={:.6} stderr={:.6}", t[0], exact, est.estimates[i], est.std_errors[i]));
    }
    lines.push(format!("max deviation {worst:.3} stderr"));
    checks.push(check("mc", worst <= MC_SIGMAS, lines.join("\n")));
    Ok((checks, golden))
}

fn cut_checks(model: &ToricModel, h: &Halfspace) -> Result<(Vec<Check>, serde_json::Value), String> {
    let f = dh_compute(model).map_err(|e| e.to_string())?;
    let c = cut(model.polytope(), std::slice::from_ref(h)).map_err(|e| e.to_string())?;
    let g = dh_compute(&ToricModel::new(c.clone(), model.projection().to_vec()).unwrap()).map_err(|e| e.to_string())?;
    let (lo, hi) = f.density.support().ok_or("empty density")?;
    // the halfspace normal is +-w, so the cut keeps one side of a level
    let w0 = model.projection()[0].iter().find(|&&x| x != 0).copied().unwrap();
    let n0 = h.normal.iter().find(|x| **x != 0.into()).unwrap().clone();
    let expected = if (n0 > 0.into()) == (w0 > 0) {
        let level = h.bound.clone() * Rational::from_integer(w0.into()) / Rational::from_integer(n0);
        f.density.restrict(&level, &hi)
    } else {
        let level = h.bound.clone() * Rational::from_integer(w0.into()) / Rational::from_integer(n0);
        f.density.restrict(&lo, &level)
    };
    let ok = g.density == expected;
    let checks = vec![
        check("cut-restrict", ok, format!("cut density {:?}", g.density)),
        check("mass", g.density.total_mass() == volume(&c), String::new()),
    ];
    Ok((checks, json!({ "cut_polytope": serde_json::to_value(&c).unwrap(), "dh": serde_json::to_value(&g).unwrap() })))
}

fn line_checks(f: &DHFunction, expect: bool) -> Result<(Vec<Check>, serde_json::Value), String> {
    let v = logconcave_on_line(f).map_err(|e| e.to_string())?;
    let ok = v.is_log_concave() == expect && (expect || v.witness.is_some());
    Ok((vec![check("verdict", ok, format!("{v:?}"))], serde_json::to_value(&v).unwrap()))
}

fn circle_checks(
    f: &CircleDensity,
    criticals: &[CriticalLevelData],
    class: &str,
    decision: &str,
    seed: u64,
) -> (Vec<Check>, serde_json::Value) {
    let c = circle_classify(f);
    let d = hamiltonian_decision(f, criticals);
    let mut checks = vec![
        check("class", c.name() == class, format!("{c:?}")),
        check("decision", d.name() == decision, format!("{d:?}")),
    ];
    if let dhlc_core::logconcave::CircleClass::FullSupportNonConstant { failure } = &c {
        checks.push(check("periodic-failure", failure.is_some(), format!("{failure:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let moved: Vec<String> = (0..8)
        .map(|_| rat(rng.gen_range(1..60), 60))
        .filter(|r| circle_classify(&f.rotate(r)).name() != c.name())
        .map(|r| r.to_string())
        .collect();
    checks.push(check("rotation", moved.is_empty(), format!("class changed under rotations {moved:?}")));
    let mut golden = circle_class_json(&c);
    if let (Some(obj), serde_json::Value::Object(dj)) = (golden.as_object_mut(), decision_json(&d)) {
        obj.extend(dj);
    }
    (checks, golden)
}

fn sl2_checks(sweep: &Sl2Sweep, seed: u64) -> (Vec<Check>, serde_json::Value) {
    match sweep {
        Sl2Sweep::Brackets => {
            let mut count = 0u64;
            let mut bad = Vec::new();
            for n in 1..=4usize {
                for m in 0u32..1 << (2 * n) {
                    let e = ExteriorForm::monomial(n, m, int(1)).unwrap();
                    let h = sl2_apply(Sl2Op::H, &e).unwrap();
                    let lam = sl2_apply(Sl2Op::Lambda, &e).unwrap();
                    let l = sl2_apply(Sl2Op::L, &e).unwrap();
                    let ok = sl2_bracket(Sl2Op::Lambda, Sl2Op::L, &e).unwrap() == h
                        && sl2_bracket(Sl2Op::H, Sl2Op::Lambda, &e).unwrap() == lam.scale(&int(2))
                        && sl2_bracket(Sl2Op::H, Sl2Op::L, &e).unwrap() == l.scale(&int(-2));
                    if !ok {
                        bad.push(format!("n={n} {e}"));
                    }
                    count += 1;
                }
            }
            (vec![check("brackets", bad.is_empty(), bad.join("; "))], json!({ "basis_forms": count }))
        }
        Sl2Sweep::PrimitiveDims => {
            let mut table = Vec::new();
            let mut bad = Vec::new();
            for n in 1..=4usize {
                for k in 0..=n {
                    let got = primitive_dimension(n, k).unwrap() as u64;
                    let want = expected_primitive_dimension(n, k);
                    if got != want {
                        bad.push(format!("n={n} k={k}: rank gives {got}, binomials give {want}"));
                    }
                    table.push(json!({ "n": n, "k": k, "dim": got }));
                }
            }
            (vec![check("dimensions", bad.is_empty(), bad.join("; "))], json!({ "primitive_dimensions": table }))
        }
        Sl2Sweep::RoundTrip => {
            let mut bad = Vec::new();
            let mut count = 0u64;
            for n in 1..=3usize {
                for k in 0..=2 * n {
                    for s in 0..SL2_SEEDS {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s));
                        let a = ExteriorForm::random_homogeneous(n, k, 5, &mut rng).unwrap();
                        let d = primitive_decomposition(&a).unwrap();
                        let ok = d.reconstruct() == a && d.components.values().all(|b| is_primitive(b) == Ok(true));
                        if !ok {
                            bad.push(format!("n={n} k={k} seed={}", seed.wrapping_add(s)));
                        }
                        count += 1;
                    }
                }
            }
            (vec![check("roundtrip", bad.is_empty(), bad.join("; "))], json!({ "forms": count }))
        }
        Sl2Sweep::Weil => {
            let mut bad = Vec::new();
            for s in 0..SL2_SEEDS {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s));
                let g = random_primitive_11(9, &mut rng);
                let t = rat(rng.gen_range(-30..=30), rng.gen_range(1..=7));
                let ok = weil_verify(&g) == Ok(true)
                    && hodge_riemann_holds(&g) == Ok(true)
                    && key_inequality_check(&g, &t) == Ok(true);
                if !ok {
                    bad.push(format!("seed {}: {g}", seed.wrapping_add(s)));
                }
            }
            (vec![check("weil", bad.is_empty(), bad.join("; "))], json!({ "forms": SL2_SEEDS }))
        }
    }
}

/// Line-by-line differences, at most 20 of them.
pub fn diff(expected: &str, actual: &str) -> String {
    let (e, a): (Vec<&str>, Vec<&str>) = (expected.lines().collect(), actual.lines().collect());
    let mut out = Vec::new();
    for i in 0..e.len().max(a.len()) {
        let (x, y) = (e.get(i), a.get(i));
        if x != y {
            if let Some(x) = x {
                out.push(format!("line {}: - {x}", i + 1));
            }
            if let Some(y) = y {
                out.push(format!("line {}: + {y}", i + 1));
            }
        }
        if out.len() >= 20 {
            out.push("...".into());
            break;
        }
    }
    out.join("\n")
}

pub fn run_case(case: &GalleryCase, config: &GalleryConfig) -> CaseReport {
    let seed = case_seed(config.seed, &case.name);
    let result = match &case.kind {
        CaseKind::Toric { model, generic, product } => toric_checks(model, *generic, *product, seed),
        CaseKind::Cut { model, halfspace } => cut_checks(model, halfspace),
        CaseKind::Line { density, expect_log_concave } => line_checks(density, *expect_log_concave),
        CaseKind::Circle { density, criticals, class, decision } => {
            Ok(circle_checks(density, criticals, class, decision, seed))
        }
        CaseKind::Sl2(sweep) => Ok(sl2_checks(sweep, config.seed)),
    };
    let (mut checks, golden) = match result {
        Ok((c, g)) => (c, json::to_string(&g)),
        Err(e) => (vec![check("run", false, e)], String::new()),
    };
    let path = config.golden_dir.join(format!("{}.json", case.name));
    if config.update_golden {
        let written = std::fs::write(&path, &golden);
        checks.push(check("golden", written.is_ok(), written.err().map(|e| e.to_string()).unwrap_or_default()));
    } else {
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == golden => checks.push(check("golden", true, String::new())),
            Ok(expected) => checks.push(check("golden", false, diff(&expected, &golden))),
            Err(e) => checks.push(check("golden", false, format!("{}: {e}", path.display()))),
        }
    }
    CaseReport { name: case.name.clone(), checks, golden }
}

pub fn run(config: &GalleryConfig) -> Result<GalleryReport, CliError> {
    if config.update_golden {
        std::fs::create_dir_all(&config.golden_dir)
            .map_err(|source| CliError::Io { path: config.golden_dir.clone(), source })?;
    } else if !config.golden_dir.is_dir() {
        return Err(CliError::Invalid(format!(
            "golden directory {} not found; run with --update-golden to create it",
            config.golden_dir.display()
        )));
    }
    let selected: Vec<GalleryCase> = cases()
        .into_iter()
        .filter(|c| config.filter.as_deref().map_or(true, |f| c.name.contains(f)))
        .collect();
    let mut reports: Vec<CaseReport> = selected.par_iter().map(|c| run_case(c, config)).collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(GalleryReport { seed: config.seed, cases: reports })
}

/// Verdict status of a convex case, for summaries.
pub fn status_of(report: &CaseReport) -> Option<Status> {
    let v: serde_json::Value = serde_json::from_str(&report.golden).ok()?;
    let verdict: dhlc_core::logconcave::LogConcavityVerdict = serde_json::from_value(v.get("verdict")?.clone()).ok()?;
    Some(verdict.status)
}
