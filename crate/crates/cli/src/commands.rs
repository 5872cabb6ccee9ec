//! One function per subcommand. Each returns the text to emit and whether
//! the result is a negative verdict.

use crate::input::{keys, load, load_model, load_model_text, parse, parse_rational_arg, pushforward_error, read_text};
use crate::{CliError, Format, Outcome};
use dhlc_core::exact::{int, PiecewisePoly, Rational, UniPoly};
use dhlc_core::json::{self, circle_class_json, decision_json, Q};
use dhlc_core::logconcave::{circle_classify, hamiltonian_decision, logconcave_on_line, CircleDensity, CriticalLevelData};
use dhlc_core::polytope::{cut, support_and_criticals, Halfspace, VRep};
use dhlc_core::pushforward::{
    components_at, dh_compute, dh_mc_oracle, fixed_components, gls_jump, DHFunction, FixedComponent, ToricModel,
};
use dhlc_core::sl2forms::{
    hodge_riemann_pairing, hodge_star_dim4, is_primitive, key_inequality_check, primitive_decomposition, sl2_apply,
    weil_verify, ExteriorForm, Sl2Op,
};
use num::ToPrimitive;
use serde::Serialize;
use serde_json::json;
use std::path::Path;

pub const DEFAULT_CSV_SAMPLES: usize = 200;

fn f64_of(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact density of a rank-one model, refusing directions orthogonal to an
/// edge.
pub fn generic_dh(model: &ToricModel) -> Result<DHFunction, CliError> {
    if model.k() == 1 {
        fixed_components(model).map_err(pushforward_error)?;
    }
    dh_compute(model).map_err(pushforward_error)
}

/// `t, value` on `samples` evenly spaced points of the support, exact and
/// as decimals.
pub fn density_csv(f: &PiecewisePoly, samples: usize) -> Result<String, CliError> {
    if samples < 2 {
        return Err(CliError::Invalid("--samples must be at least 2".into()));
    }
    let mut out = String::from("t,value,t_approx,value_approx\n");
    if let Some((lo, hi)) = f.support() {
        let last = Rational::from_integer((samples as i64 - 1).into());
        for i in 0..samples {
            let t = &lo + (&hi - &lo) * Rational::from_integer((i as i64).into()) / &last;
            let v = f.eval(&t);
            out.push_str(&format!("{t},{v},{},{}\n", f64_of(&t), f64_of(&v)));
        }
    }
    Ok(out)
}

pub fn dh(path: &Path, projection: Option<&str>, samples: usize, format: Format) -> Result<Outcome, CliError> {
    let model = load_model(path, projection)?;
    let f = generic_dh(&model)?;
    Ok(Outcome::ok(match format {
        Format::Json => json::to_string(&f),
        Format::Csv => density_csv(&f.density, samples)?,
    }))
}

pub fn check_line(path: &Path, projection: Option<&str>) -> Result<Outcome, CliError> {
    let text = read_text(path)?;
    let f: DHFunction = if keys(path, &text)?.iter().any(|k| k == "polytope") {
        let model = load_model_text(path, &text, projection)?;
        dh_compute(&model).map_err(pushforward_error)?
    } else {
        parse(path, &text)?
    };
    let verdict = logconcave_on_line(&f).map_err(CliError::invalid)?;
    Ok(Outcome { text: json::to_string(&verdict), negative: !verdict.is_log_concave() })
}

pub fn check_circle(path: &Path, criticals: Option<&Path>) -> Result<Outcome, CliError> {
    let f: CircleDensity = load(path)?;
    let criticals: Vec<CriticalLevelData> = match criticals {
        Some(p) => load(p)?,
        None => Vec::new(),
    };
    let class = circle_classify(&f);
    let decision = hamiltonian_decision(&f, &criticals);
    let mut value = circle_class_json(&class);
    if let (Some(obj), serde_json::Value::Object(d)) = (value.as_object_mut(), decision_json(&decision)) {
        obj.extend(d);
    }
    let negative = decision.name() != "Hamiltonian";
    Ok(Outcome { text: json::to_string(&value), negative })
}

#[derive(Serialize)]
struct LevelReport {
    level: Q,
    components: Vec<FixedComponent>,
    gls_jump: PiecewiseCoeffs,
    measured_jump: PiecewiseCoeffs,
    lowest_order_match: bool,
}

#[derive(Serialize)]
struct PiecewiseCoeffs {
    coeffs: Vec<Q>,
}

impl From<&UniPoly> for PiecewiseCoeffs {
    fn from(p: &UniPoly) -> Self {
        PiecewiseCoeffs { coeffs: p.coeffs().iter().cloned().map(Q).collect() }
    }
}

/// Fixed-point data and jumps at one level, or at every critical level.
pub fn jump(path: &Path, projection: Option<&str>, level: Option<&str>) -> Result<Outcome, CliError> {
    let model = load_model(path, projection)?;
    let comps = fixed_components(&model).map_err(pushforward_error)?;
    let f = dh_compute(&model).map_err(pushforward_error)?;
    let levels: Vec<Rational> = match level {
        Some(s) => vec![parse_rational_arg("--level", s)?],
        None => {
            let mut l: Vec<Rational> = comps.iter().map(|c| c.level.clone()).collect();
            l.sort();
            l.dedup();
            l
        }
    };
    let mut reports = Vec::new();
    for a in levels {
        let at: Vec<FixedComponent> = components_at(&comps, &a).cloned().collect();
        let predicted = gls_jump(&at, &a).map_err(pushforward_error)?;
        let measured = f.density.jump_at(&a);
        reports.push(LevelReport {
            lowest_order_match: predicted.lowest_term() == measured.lowest_term(),
            level: Q(a),
            components: at,
            gls_jump: (&predicted).into(),
            measured_jump: (&measured).into(),
        });
    }
    let negative = reports.iter().any(|r| !r.lowest_order_match);
    Ok(Outcome { text: json::to_string(&json!({ "levels": reports })), negative })
}

/// A halfspace file holds one halfspace object or an array of them.
pub fn cut_cmd(path: &Path, halfspaces: &Path, format: Format) -> Result<Outcome, CliError> {
    let p: VRep = load(path)?;
    let text = read_text(halfspaces)?;
    let hs: Vec<Halfspace> = match parse::<serde_json::Value>(halfspaces, &text)? {
        serde_json::Value::Array(_) => parse(halfspaces, &text)?,
        _ => vec![parse(halfspaces, &text)?],
    };
    let c = cut(&p, &hs).map_err(CliError::invalid)?;
    Ok(Outcome::ok(match format {
        Format::Json => json::to_string(&c),
        Format::Csv => {
            let mut out = (1..=c.dim()).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",");
            out.push('\n');
            for v in c.vertices() {
                out.push_str(&v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct McJson {
    seed: u64,
    n_samples: u64,
    bin_widths: Vec<f64>,
    points: Vec<McPoint>,
}

#[derive(Serialize)]
struct McPoint {
    t: Vec<Q>,
    estimate: f64,
    stderr: f64,
}

/// Sample points: `--at` values, or `points` interior midpoints of the
/// support for rank one.
pub fn mc(
    path: &Path,
    projection: Option<&str>,
    samples: u64,
    at: &[String],
    points: usize,
    seed: u64,
    format: Format,
) -> Result<Outcome, CliError> {
    let model = load_model(path, projection)?;
    let sample_points: Vec<Vec<Rational>> = if !at.is_empty() {
        at.iter()
            .map(|s| s.split(',').map(|c| parse_rational_arg("--at", c.trim())).collect())
            .collect::<Result<_, _>>()?
    } else if model.k() == 1 {
        let (iv, _) = support_and_criticals(model.polytope(), &model.projection()[0]).map_err(CliError::invalid)?;
        let (lo, hi) = (iv.lo().value().cloned().unwrap_or_default(), iv.hi().value().cloned().unwrap_or_default());
        let denom = int(2 * points as i64);
        (0..points).map(|j| vec![&lo + (&hi - &lo) * int(2 * j as i64 + 1) / &denom]).collect()
    } else {
        return Err(CliError::Invalid("rank > 1 needs sample points via --at".into()));
    };
    let est = dh_mc_oracle(&model, samples, seed, &sample_points).map_err(pushforward_error)?;
    Ok(Outcome::ok(match format {
        Format::Csv => est.to_csv(),
        Format::Json => json::to_string(&McJson {
            seed: est.seed,
            n_samples: est.n_samples,
            bin_widths: est.bin_widths.clone(),
            points: est
                .sample_points
                .iter()
                .zip(est.estimates.iter().zip(&est.std_errors))
                .map(|(t, (e, s))| McPoint { t: t.iter().cloned().map(Q).collect(), estimate: *e, stderr: *s })
                .collect(),
        }),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OpArg {
    L,
    Lambda,
    H,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sl2Request {
    Apply(OpArg),
    Primitive,
    Decompose,
    Star,
    Weil,
    Key(String),
}

pub fn sl2(path: &Path, request: &Sl2Request) -> Result<Outcome, CliError> {
    let form: ExteriorForm = load(path)?;
    let bad = CliError::invalid;
    Ok(match request {
        Sl2Request::Apply(op) => {
            let op = match op {
                OpArg::L => Sl2Op::L,
                OpArg::Lambda => Sl2Op::Lambda,
                OpArg::H => Sl2Op::H,
            };
            Outcome::ok(json::to_string(&sl2_apply(op, &form).map_err(bad)?))
        }
        Sl2Request::Primitive => {
            let p = is_primitive(&form).map_err(bad)?;
            Outcome { text: json::to_string(&json!({ "primitive": p })), negative: !p }
        }
        Sl2Request::Decompose => {
            let d = primitive_decomposition(&form).map_err(bad)?;
            let comps: Vec<_> = d.components.iter().map(|(r, b)| json!({ "r": r, "beta": b })).collect();
            Outcome::ok(json::to_string(&json!({ "n": d.n, "degree": d.degree, "components": comps })))
        }
        Sl2Request::Star => Outcome::ok(json::to_string(&hodge_star_dim4(&form).map_err(bad)?)),
        Sl2Request::Weil => {
            let holds = weil_verify(&form).map_err(bad)?;
            let pairing = hodge_riemann_pairing(&form).map_err(bad)?;
            Outcome {
                text: json::to_string(&json!({ "weil": holds, "gamma_squared": Q(pairing) })),
                negative: !holds,
            }
        }
        Sl2Request::Key(s) => {
            let s = parse_rational_arg("--s", s)?;
            let holds = key_inequality_check(&form, &s).map_err(bad)?;
            Outcome { text: json::to_string(&json!({ "holds": holds, "s": Q(s) })), negative: !holds }
        }
    })
}
