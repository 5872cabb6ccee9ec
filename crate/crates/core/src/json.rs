//! JSON forms of the library types.
//!
//! Rationals are written as strings `"p/q"` or `"p"`; integers are also
//! accepted on input. Validation failures are raised inside the
//! deserializer so that `serde_json` reports them with a line and column.

use crate::exact::{int, parse_rational, PiecewisePoly, Rational, UniPoly};
use crate::logconcave::{
    CircleClass, CircleDensity, CriticalLevelData, FailureReason, HamiltonianDecision, LogConcavityVerdict, Status,
    Witness,
};
use crate::polytope::{Halfspace, VRep};
use crate::pushforward::{DHFunction, FixedComponent, ToricModel};
use crate::sl2forms::ExteriorForm;
use num::{BigInt, ToPrimitive};
use serde::de::{self, DeserializeOwned, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct JsonError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        JsonError { line: e.line(), column: e.column(), message }
    }
}

pub fn from_str<T: DeserializeOwned>(s: &str) -> Result<T, JsonError> {
    Ok(serde_json::from_str(s)?)
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("library types always serialize");
    s.push('\n');
    s
}

/// A rational in JSON form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string such as \"3/4\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                parse_rational(v).map(Q).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q(int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(BigInt::from(v))))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Q, E> {
                Err(E::custom(format!("floating-point number {v} is not exact; write it as a string \"p/q\"")))
            }
        }
        d.deserialize_any(V)
    }
}

/// An integer in JSON form: a number when it fits in `i64`, else a string.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Z(BigInt);

impl Serialize for Z {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Z {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Q::deserialize(d)?.0 {
            q if q.is_integer() => Ok(Z(q.to_integer())),
            q => Err(de::Error::custom(format!("expected an integer, got {q}"))),
        }
    }
}

fn qs(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

fn unq(v: Vec<Q>) -> Vec<Rational> {
    v.into_iter().map(|q| q.0).collect()
}

/// Implements serde for `$ty` by round-tripping through `$repr`.
macro_rules! via_repr {
    ($ty:ty, $repr:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                <$repr>::from(self).serialize(s)
            }
        }
        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                <$repr>::deserialize(d)?.try_into().map_err(de::Error::custom)
            }
        }
    };
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceRepr {
    coeffs: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PiecewiseRepr {
    breakpoints: Vec<Q>,
    pieces: Vec<PieceRepr>,
}

impl From<&PiecewisePoly> for PiecewiseRepr {
    fn from(f: &PiecewisePoly) -> Self {
        PiecewiseRepr {
            breakpoints: qs(f.breakpoints()),
            pieces: f.pieces().iter().map(|p| PieceRepr { coeffs: qs(p.coeffs()) }).collect(),
        }
    }
}

impl TryFrom<PiecewiseRepr> for PiecewisePoly {
    type Error = String;
    fn try_from(r: PiecewiseRepr) -> Result<Self, String> {
        let pieces = r.pieces.into_iter().map(|p| UniPoly::new(unq(p.coeffs))).collect();
        PiecewisePoly::new(unq(r.breakpoints), pieces).map_err(|e| e.to_string())
    }
}

via_repr!(PiecewisePoly, PiecewiseRepr);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DHRepr {
    breakpoints: Vec<Q>,
    pieces: Vec<PieceRepr>,
    #[serde(default)]
    walls: Option<Vec<Q>>,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    k: Option<usize>,
}

impl From<&DHFunction> for DHRepr {
    fn from(f: &DHFunction) -> Self {
        let PiecewiseRepr { breakpoints, pieces } = PiecewiseRepr::from(&f.density);
        DHRepr { breakpoints, pieces, walls: Some(qs(&f.walls)), n: Some(f.n), k: Some(f.k) }
    }
}

/// Missing `walls` default to the canonical breakpoints, missing `k` to 1
/// and missing `n` to `k` plus the top piece degree.
impl TryFrom<DHRepr> for DHFunction {
    type Error = String;
    fn try_from(r: DHRepr) -> Result<Self, String> {
        let density = PiecewisePoly::try_from(PiecewiseRepr { breakpoints: r.breakpoints, pieces: r.pieces })?;
        let k = r.k.unwrap_or(1);
        let n = r.n.unwrap_or_else(|| k + density.max_degree().finite().unwrap_or(0));
        let mut f = DHFunction::from_density(density, n, k);
        if let Some(walls) = r.walls {
            let walls = unq(walls);
            if walls.windows(2).any(|w| w[0] >= w[1]) {
                return Err("walls must be strictly increasing".into());
            }
            f.walls = walls;
        }
        Ok(f)
    }
}

via_repr!(DHFunction, DHRepr);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeRepr {
    dim: usize,
    vertices: Vec<Vec<Q>>,
}

impl From<&VRep> for PolytopeRepr {
    fn from(p: &VRep) -> Self {
        PolytopeRepr { dim: p.dim(), vertices: p.vertices().iter().map(|v| qs(v)).collect() }
    }
}

impl TryFrom<PolytopeRepr> for VRep {
    type Error = String;
    fn try_from(r: PolytopeRepr) -> Result<Self, String> {
        VRep::from_points(r.dim, r.vertices.into_iter().map(unq).collect()).map_err(|e| e.to_string())
    }
}

via_repr!(VRep, PolytopeRepr);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HalfspaceRepr {
    normal: Vec<Z>,
    bound: Q,
}

impl From<&Halfspace> for HalfspaceRepr {
    fn from(h: &Halfspace) -> Self {
        HalfspaceRepr { normal: h.normal.iter().cloned().map(Z).collect(), bound: Q(h.bound.clone()) }
    }
}

impl TryFrom<HalfspaceRepr> for Halfspace {
    type Error = String;
    fn try_from(r: HalfspaceRepr) -> Result<Self, String> {
        Halfspace::new(r.normal.into_iter().map(|z| z.0).collect(), r.bound.0).map_err(|e| e.to_string())
    }
}

via_repr!(Halfspace, HalfspaceRepr);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelRepr {
    polytope: VRep,
    projection: Vec<Vec<i64>>,
}

impl From<&ToricModel> for ModelRepr {
    fn from(m: &ToricModel) -> Self {
        ModelRepr { polytope: m.polytope().clone(), projection: m.projection().to_vec() }
    }
}

impl TryFrom<ModelRepr> for ToricModel {
    type Error = String;
    fn try_from(r: ModelRepr) -> Result<Self, String> {
        ToricModel::new(r.polytope, r.projection).map_err(|e| e.to_string())
    }
}

via_repr!(ToricModel, ModelRepr);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentRepr {
    level: Q,
    weights: Vec<Q>,
    reduced_volume: Q,
}

impl From<&FixedComponent> for ComponentRepr {
    fn from(c: &FixedComponent) -> Self {
        ComponentRepr { level: Q(c.level.clone()), weights: qs(&c.weights), reduced_volume: Q(c.reduced_volume.clone()) }
    }
}

impl TryFrom<ComponentRepr> for FixedComponent {
    type Error = String;
    fn try_from(r: ComponentRepr) -> Result<Self, String> {
        FixedComponent::new(r.level.0, unq(r.weights), r.reduced_volume.0).map_err(|e| e.to_string())
    }
}

via_repr!(FixedComponent, ComponentRepr);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CriticalRepr {
    level: Q,
    components: Vec<FixedComponent>,
}

impl From<&CriticalLevelData> for CriticalRepr {
    fn from(c: &CriticalLevelData) -> Self {
        CriticalRepr { level: Q(c.level().clone()), components: c.components().to_vec() }
    }
}

impl TryFrom<CriticalRepr> for CriticalLevelData {
    type Error = String;
    fn try_from(r: CriticalRepr) -> Result<Self, String> {
        CriticalLevelData::new(r.level.0, r.components).map_err(|e| e.to_string())
    }
}

via_repr!(CriticalLevelData, CriticalRepr);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircleRepr {
    breakpoints: Vec<Q>,
    pieces: Vec<PieceRepr>,
    #[serde(default)]
    period: Option<Q>,
}

impl From<&CircleDensity> for CircleRepr {
    fn from(c: &CircleDensity) -> Self {
        let PiecewiseRepr { breakpoints, pieces } = PiecewiseRepr::from(c.density());
        CircleRepr { breakpoints, pieces, period: Some(Q(c.period())) }
    }
}

impl TryFrom<CircleRepr> for CircleDensity {
    type Error = String;
    fn try_from(r: CircleRepr) -> Result<Self, String> {
        if let Some(p) = r.period {
            if p.0 != int(1) {
                return Err(format!("period must be 1, got {}", p.0));
            }
        }
        let density = PiecewisePoly::try_from(PiecewiseRepr { breakpoints: r.breakpoints, pieces: r.pieces })?;
        CircleDensity::new(density).map_err(|e| e.to_string())
    }
}

via_repr!(CircleDensity, CircleRepr);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    indices: Vec<String>,
    coeff: Q,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormRepr {
    n: usize,
    terms: Vec<TermRepr>,
}

impl From<&ExteriorForm> for FormRepr {
    fn from(f: &ExteriorForm) -> Self {
        let terms = f
            .terms()
            .map(|(m, c)| TermRepr { indices: ExteriorForm::names(m), coeff: Q(c.clone()) })
            .collect();
        FormRepr { n: f.n(), terms }
    }
}

impl TryFrom<FormRepr> for ExteriorForm {
    type Error = String;
    fn try_from(r: FormRepr) -> Result<Self, String> {
        let mut f = ExteriorForm::zero(r.n).map_err(|e| e.to_string())?;
        for t in r.terms {
            let names: Vec<&str> = t.indices.iter().map(String::as_str).collect();
            let term = ExteriorForm::from_names(r.n, &names, t.coeff.0).map_err(|e| e.to_string())?;
            f = f.add(&term).map_err(|e| e.to_string())?;
        }
        Ok(f)
    }
}

via_repr!(ExteriorForm, FormRepr);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessRepr {
    location: Q,
    reason: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerdictRepr {
    status: String,
    witness: Option<WitnessRepr>,
}

impl From<&Witness> for WitnessRepr {
    fn from(w: &Witness) -> Self {
        WitnessRepr { location: Q(w.location.clone()), reason: w.reason.to_string() }
    }
}

impl TryFrom<WitnessRepr> for Witness {
    type Error = String;
    fn try_from(r: WitnessRepr) -> Result<Self, String> {
        let reason = match r.reason.as_str() {
            "PieceFailure" => FailureReason::PieceFailure,
            "WallFailure" => FailureReason::WallFailure,
            "SupportGap" => FailureReason::SupportGap,
            other => return Err(format!("unknown witness reason {other:?}")),
        };
        Ok(Witness { location: r.location.0, reason })
    }
}

impl From<&LogConcavityVerdict> for VerdictRepr {
    fn from(v: &LogConcavityVerdict) -> Self {
        VerdictRepr { status: v.status.to_string(), witness: v.witness.as_ref().map(WitnessRepr::from) }
    }
}

impl TryFrom<VerdictRepr> for LogConcavityVerdict {
    type Error = String;
    fn try_from(r: VerdictRepr) -> Result<Self, String> {
        let status = match r.status.as_str() {
            "LogConcave" => Status::LogConcave,
            "StrictlyLogConcave" => Status::StrictlyLogConcave,
            "NotLogConcave" => Status::NotLogConcave,
            other => return Err(format!("unknown status {other:?}")),
        };
        let witness = r.witness.map(Witness::try_from).transpose()?;
        if (status == Status::NotLogConcave) != witness.is_some() {
            return Err("exactly the NotLogConcave status carries a witness".into());
        }
        Ok(LogConcavityVerdict { status, witness })
    }
}

via_repr!(LogConcavityVerdict, VerdictRepr);

/// Circle classification with the failure report of the full-support case.
pub fn circle_class_json(c: &CircleClass) -> serde_json::Value {
    let failure = match c {
        CircleClass::FullSupportNonConstant { failure } => {
            serde_json::to_value(failure.as_ref().map(WitnessRepr::from)).unwrap()
        }
        _ => serde_json::Value::Null,
    };
    serde_json::json!({ "class": c.name(), "log_concavity_failure": failure })
}

pub fn decision_json(d: &HamiltonianDecision) -> serde_json::Value {
    match d {
        HamiltonianDecision::Hamiltonian(reason) => {
            serde_json::json!({ "decision": d.name(), "reason": format!("{reason:?}") })
        }
        HamiltonianDecision::NonHamiltonianCandidate => serde_json::json!({ "decision": d.name() }),
        HamiltonianDecision::Inconsistent { level, report } => {
            serde_json::json!({ "decision": d.name(), "level": level.to_string(), "report": report })
        }
    }
}
