//! JSON file formats: fans, torifications and result payloads.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::counting::{big_to_json, CountingPolynomial};
use crate::lattice::{validate_fan, Cone, Fan, FanReport, LatticeVector};
use crate::monoid::DScheme;
use crate::torification::{delta_vector, Torification, Torus};
use crate::{Error, Result};

/// On-disk fan: rays plus cones given as lists of ray indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanFile {
    pub dim: usize,
    pub rays: Vec<LatticeVector>,
    pub cones: Vec<Vec<usize>>,
    #[serde(default)]
    pub close_faces: bool,
}

impl FanFile {
    pub fn from_fan(fan: &Fan) -> FanFile {
        let rays = fan.rays();
        let cones = fan
            .cones()
            .iter()
            .map(|c| {
                c.rays()
                    .iter()
                    .map(|r| rays.iter().position(|x| x == r).expect("ray of the fan"))
                    .collect()
            })
            .collect();
        FanFile {
            dim: fan.ambient_dim(),
            rays,
            cones,
            close_faces: false,
        }
    }
}

/// A fan read from JSON, with normalization warnings and its validation
/// report. Loading succeeds even when the report lists violations.
#[derive(Clone, Debug)]
pub struct LoadedFan {
    pub fan: Fan,
    pub warnings: Vec<String>,
    pub report: FanReport,
}

fn parse_error(context: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!("{context}: {e}"))
}

pub fn parse_fan(text: &str) -> Result<LoadedFan> {
    let file: FanFile = serde_json::from_str(text).map_err(|e| parse_error("fan", e))?;
    let mut warnings = Vec::new();
    let mut rays = Vec::with_capacity(file.rays.len());
    for (i, r) in file.rays.iter().enumerate() {
        if r.len() != file.dim {
            return Err(Error::Parse(format!(
                "fan: ray {i} has {} coordinates, expected {}",
                r.len(),
                file.dim
            )));
        }
        if r.iter().all(|&x| x == 0) {
            return Err(Error::InvalidFan(format!("ray {i} is zero")));
        }
        let g = r.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
        let p: LatticeVector = r.iter().map(|x| x / g).collect();
        if g != 1 {
            warnings.push(format!("ray {i} {r:?} is not primitive; normalized to {p:?}"));
        }
        rays.push(p);
    }
    let mut cones = Vec::with_capacity(file.cones.len());
    for (j, idx) in file.cones.iter().enumerate() {
        let gens = idx
            .iter()
            .map(|&i| {
                rays.get(i)
                    .cloned()
                    .ok_or_else(|| Error::Parse(format!("fan: cone {j} uses missing ray {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let cone = Cone::from_generators(file.dim, &gens).map_err(|e| Error::InvalidFan(format!("cone {j}: {e}")))?;
        cones.push(cone);
    }
    let fan = if file.close_faces {
        Fan::with_faces(file.dim, cones)
    } else {
        Fan::new(file.dim, cones)
    };
    let report = validate_fan(&fan);
    Ok(LoadedFan { fan, warnings, report })
}

pub fn load_fan(path: &Path) -> Result<LoadedFan> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_fan(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// The self-contained torification payload: dimension, tori, δ-vector, charts.
pub fn torification_payload(t: &Torification) -> Value {
    json!({
        "dim": t.dim(),
        "tori": t.tori(),
        "delta": delta_vector(t),
        "charts": t.charts(),
    })
}

#[derive(Deserialize)]
struct TorificationFile {
    tori: Vec<Torus>,
    #[serde(default)]
    charts: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    delta: Option<Vec<u64>>,
}

/// Reads a torification from a payload, or from a whole result envelope whose
/// `result` is one. A `delta` field, when present, must match the tori.
pub fn parse_torification(text: &str) -> Result<Torification> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| parse_error("torification", e))?;
    if let Some(inner) = value.get_mut("result") {
        value = inner.take();
    }
    let file: TorificationFile = serde_json::from_value(value).map_err(|e| parse_error("torification", e))?;
    if let Some(charts) = &file.charts {
        for (j, c) in charts.iter().enumerate() {
            if let Some(&bad) = c.iter().find(|&&i| i >= file.tori.len()) {
                return Err(Error::Parse(format!(
                    "torification: chart {j} names missing torus {bad}"
                )));
            }
        }
    }
    let t = Torification::new(file.tori, file.charts);
    if let Some(delta) = file.delta {
        if delta != delta_vector(&t) {
            return Err(Error::Parse(format!(
                "torification: delta {delta:?} does not match the tori {:?}",
                delta_vector(&t)
            )));
        }
    }
    Ok(t)
}

pub fn load_torification(path: &Path) -> Result<Torification> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_torification(&text)
}

/// Points with their cones and local monoids, and the strict specializations.
pub fn dscheme_payload(ds: &DScheme, cones: &[Cone]) -> Value {
    let points: Vec<Value> = ds
        .points
        .iter()
        .map(|p| {
            json!({
                "cone": p.cone,
                "rays": cones[p.cone].rays(),
                "rank": p.rank,
                "generators": p.local_monoid.generators(),
                "units": p.local_monoid.unit_basis(),
            })
        })
        .collect();
    let spec: Vec<[usize; 2]> = ds.specialization.iter().map(|&(i, j)| [i, j]).collect();
    json!({
        "ambient_dim": ds.ambient_dim,
        "points": points,
        "specialization": spec,
    })
}

pub fn counting_payload(n: &CountingPolynomial, evaluations: &[(BigInt, BigInt)]) -> Value {
    let evals: Vec<Value> = evaluations
        .iter()
        .map(|(q, v)| json!({"q": big_to_json(q), "value": big_to_json(v)}))
        .collect();
    json!({
        "delta": n.delta().iter().map(big_to_json).collect::<Vec<_>>(),
        "mono": n.mono().iter().map(big_to_json).collect::<Vec<_>>(),
        "polynomial": render_polynomial(n.mono()),
        "evaluations": evals,
    })
}

/// `q^3 - q` style rendering of `Σ a_i q^i`, highest degree first.
pub fn render_polynomial(mono: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, a) in mono.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        let var = match i {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{i}"),
        };
        let coeff = if i > 0 && mag == BigInt::from(1) {
            String::new()
        } else {
            mag.to_string()
        };
        if out.is_empty() {
            if a.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if a.is_negative() { " - " } else { " + " });
        }
        out.push_str(&coeff);
        out.push_str(&var);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Tool output wrapper. Field order is fixed, so serialized envelopes diff
/// cleanly once `timing_ms` is dropped.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Envelope {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub timing_ms: f64,
}

impl Envelope {
    pub fn new(command: &str, input: Value, result: Value, timing_ms: f64) -> Envelope {
        Envelope {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input,
            result,
            timing_ms,
        }
    }
}
