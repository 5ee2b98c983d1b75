//! Text formats. Every scalar is written as an exact rational string
//! (`"p"` or `"p/q"`), so reading back a written file reproduces it exactly.
//!
//! PWL file:
//! ```text
//! {"domain": ["0", "1"], "breakpoints": [["0", "0"], ["1/2", "1"], ["1", "0"]]}
//! ```
//! Network file:
//! ```text
//! {"layers": [{"weights": [["1"], ["1"]], "biases": ["0", "-1/2"], "activation": "relu"},
//!             {"weights": [["2", "-4"]], "biases": ["0"], "activation": "identity"}]}
//! ```
//! Dataset file: `# threshold=<q>` then one `x,label` line per point.

use serde::{Deserialize, Serialize};

use crate::bounds::{DatasetOrigin, LabeledDataset};
use crate::error::{Error, Result};
use crate::pwl::PwlFunction;
use crate::relu::{Activation, Layer, ReluNetwork};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Serialize, Deserialize)]
struct PwlFile {
    domain: [String; 2],
    breakpoints: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
struct LayerFile {
    weights: Vec<Vec<String>>,
    biases: Vec<String>,
    activation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    offset: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct NetworkFile {
    layers: Vec<LayerFile>,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn scalars(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn write_pwl(f: &PwlFunction<Rational>) -> String {
    let d = f.domain();
    let file = PwlFile {
        domain: [format_rational(d.lo()), format_rational(d.hi())],
        breakpoints: f.breakpoints().map(|(x, y)| [format_rational(x), format_rational(y)]).collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data") + "\n"
}

/// Parses a PWL file. The first and last breakpoints must sit on the
/// declared domain.
pub fn read_pwl(text: &str) -> Result<PwlFunction<Rational>> {
    let file: PwlFile = serde_json::from_str(text).map_err(json_err)?;
    let points = file
        .breakpoints
        .iter()
        .map(|[x, y]| Ok((parse_rational(x)?, parse_rational(y)?)))
        .collect::<Result<Vec<_>>>()?;
    let f = PwlFunction::from_breakpoints(points)?;
    let (lo, hi) = (parse_rational(&file.domain[0])?, parse_rational(&file.domain[1])?);
    let d = f.domain();
    if d.lo() != &lo || d.hi() != &hi {
        return Err(Error::Malformed(format!(
            "declared domain [{lo}, {hi}] does not match breakpoints [{}, {}]",
            d.lo(),
            d.hi()
        )));
    }
    Ok(f)
}

pub fn write_network(net: &ReluNetwork<Rational>) -> String {
    let layers = net
        .layers()
        .iter()
        .map(|l| LayerFile {
            weights: l.weights.iter().map(|row| strings(row)).collect(),
            biases: strings(&l.biases),
            activation: match l.activation {
                Activation::Relu => "relu".into(),
                Activation::Identity => "identity".into(),
            },
            offset: (l.offset != Rational::from_integer(0.into())).then(|| format_rational(&l.offset)),
        })
        .collect();
    serde_json::to_string_pretty(&NetworkFile { layers }).expect("plain data") + "\n"
}

pub fn read_network(text: &str) -> Result<ReluNetwork<Rational>> {
    let file: NetworkFile = serde_json::from_str(text).map_err(json_err)?;
    let layers = file
        .layers
        .iter()
        .map(|l| {
            let activation = match l.activation.as_str() {
                "relu" => Activation::Relu,
                "identity" => Activation::Identity,
                other => return Err(Error::Parse(format!("unknown activation {other:?}"))),
            };
            let weights = l.weights.iter().map(|row| scalars(row)).collect::<Result<Vec<_>>>()?;
            let mut layer = Layer::new(weights, scalars(&l.biases)?, activation);
            if let Some(o) = &l.offset {
                layer = layer.with_offset(parse_rational(o)?);
            }
            Ok(layer)
        })
        .collect::<Result<Vec<_>>>()?;
    ReluNetwork::new(layers)
}

pub fn write_dataset(d: &LabeledDataset<Rational>) -> String {
    let mut out = format!("# threshold={}\n", format_rational(d.threshold()));
    if let Some(o) = d.origin() {
        out.push_str(&format!("# origin p={} m={} k={} floor_rho_k={}\n", o.p, o.m, o.k, o.floor_rho_k));
    }
    for (x, label) in d.points() {
        out.push_str(&format!("{},{}\n", format_rational(x), label));
    }
    out
}

pub fn read_dataset(text: &str) -> Result<LabeledDataset<Rational>> {
    let mut threshold = None;
    let mut origin = None;
    let mut points = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(t) = rest.strip_prefix("threshold=") {
                threshold = Some(parse_rational(t)?);
            } else if let Some(o) = rest.strip_prefix("origin") {
                origin = Some(parse_origin(o)?);
            }
            continue;
        }
        let (x, label) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("line {}: expected x,label", no + 1)))?;
        let label = match label.trim() {
            "0" => 0,
            "1" => 1,
            other => return Err(Error::Parse(format!("line {}: label {other:?} is not 0 or 1", no + 1))),
        };
        points.push((parse_rational(x)?, label));
    }
    let threshold = threshold.ok_or_else(|| Error::Parse("missing '# threshold=' header".into()))?;
    let d = LabeledDataset::new(points, threshold)?;
    Ok(match origin {
        Some(o) => d.with_origin(o),
        None => d,
    })
}

fn parse_origin(s: &str) -> Result<DatasetOrigin> {
    let mut p = None;
    let mut m = None;
    let mut k = None;
    let mut fl = None;
    for field in s.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| Error::Parse(format!("bad origin field {field:?}")))?;
        let bad = |_| Error::Parse(format!("bad origin value {field:?}"));
        match key {
            "p" => p = Some(value.parse().map_err(bad)?),
            "m" => m = Some(value.parse().map_err(bad)?),
            "k" => k = Some(value.parse().map_err(bad)?),
            "floor_rho_k" => fl = Some(parse_rational(value)?.to_integer()),
            _ => return Err(Error::Parse(format!("unknown origin field {key:?}"))),
        }
    }
    match (p, m, k, fl) {
        (Some(p), Some(m), Some(k), Some(floor_rho_k)) => Ok(DatasetOrigin { p, m, k, floor_rho_k }),
        _ => Err(Error::Parse("incomplete origin header".into())),
    }
}
