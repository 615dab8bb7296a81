use super::VerdictKind;
use crate::casefilter::{ExponentConstraint, FilterSpec, RayClassRow};
use crate::mordell::{GeneratorData, NamedPoint};
use crate::quadfield::{FieldElem, QuadField};
use crate::weierstrass::Curve;
use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config contains no cases")]
    Empty,
    #[error("case m = {m}: {reason}")]
    Invalid { m: i64, reason: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSuite {
    #[serde(default)]
    description: String,
    cases: Vec<RawCase>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCase {
    m: i64,
    #[serde(default)]
    epsilon: Option<String>,
    #[serde(default)]
    ray_class_row: Option<RayClassRow>,
    #[serde(default)]
    ray_class_provenance: String,
    #[serde(default)]
    cubic_flag: bool,
    #[serde(default)]
    cubic_assumed: bool,
    #[serde(default)]
    external_constraint: Option<ExponentConstraint>,
    #[serde(default)]
    curves: Vec<RawCurve>,
    #[serde(default)]
    injected_curves: Vec<RawInjected>,
    bounds: Bounds,
    expected: VerdictKind,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    sign: String,
    n: u32,
    #[serde(default)]
    torsion: Option<RawPoint>,
    #[serde(default)]
    generators: Vec<RawPoint>,
    #[serde(default)]
    rank: Option<usize>,
    #[serde(default)]
    provenance: String,
    #[serde(default)]
    expected_points: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    name: String,
    point: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInjected {
    name: String,
    a_invariants: [String; 5],
    #[serde(default)]
    provenance: String,
}

/// Enumeration bound `M` on generator coefficients and oracle box `H`
/// (`H = 0` disables the oracle).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, serde::Serialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "H", default)]
    pub h: u64,
}

/// Generator data for one Mordell curve `E_n^{sign}`.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub sign: i32,
    pub n: u32,
    pub data: GeneratorData,
    pub expected_points: Option<Vec<String>>,
}

/// A curve checked directly, outside the Mordell-curve reduction.
#[derive(Debug, Clone)]
pub struct InjectedCurve {
    pub name: String,
    pub curve: Curve,
    pub provenance: String,
}

/// Everything needed to decide one field.
#[derive(Debug, Clone)]
pub struct CaseSpec {
    pub field: QuadField,
    pub epsilon: Option<FieldElem>,
    pub filter: FilterSpec,
    pub ray_class_provenance: String,
    pub cubic_assumed: bool,
    pub curves: Vec<CurveSpec>,
    pub injected: Vec<InjectedCurve>,
    pub bounds: Bounds,
    pub expected: VerdictKind,
}

impl CaseSpec {
    pub fn m(&self) -> i64 {
        self.field.m()
    }

    pub fn curve(&self, sign: i32, n: u32) -> Option<&CurveSpec> {
        self.curves.iter().find(|c| c.sign == sign && c.n == n)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteSpec {
    pub description: String,
    pub cases: Vec<CaseSpec>,
}

pub fn load_config(path: &Path) -> Result<SuiteSpec, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<SuiteSpec, ConfigError> {
    let raw: RawSuite = serde_json::from_str(text)?;
    if raw.cases.is_empty() {
        return Err(ConfigError::Empty);
    }
    let cases = raw.cases.into_iter().map(convert_case).collect::<Result<_, _>>()?;
    Ok(SuiteSpec {
        description: raw.description,
        cases,
    })
}

fn convert_case(raw: RawCase) -> Result<CaseSpec, ConfigError> {
    let m = raw.m;
    let bad = |reason: String| ConfigError::Invalid { m, reason };
    let field = QuadField::new(m).map_err(|e| bad(e.to_string()))?;
    let epsilon = raw
        .epsilon
        .as_deref()
        .map(|s| FieldElem::parse(field, s))
        .transpose()
        .map_err(|e| bad(e.to_string()))?;
    if raw.bounds.m == 0 {
        return Err(bad("bound M must be positive".into()));
    }
    let mut curves: Vec<CurveSpec> = Vec::new();
    for c in raw.curves {
        let sign = match c.sign.as_str() {
            "+" => 1,
            "-" => -1,
            s => return Err(bad(format!("curve sign must be \"+\" or \"-\", got {s:?}"))),
        };
        if curves.iter().any(|o| o.sign == sign && o.n == c.n) {
            return Err(bad(format!("duplicate curve E_{}^{}", c.n, c.sign)));
        }
        let named = |p: RawPoint| NamedPoint::parse(field, &p.name, &p.point).map_err(|e| bad(e.to_string()));
        let torsion = c.torsion.map(named).transpose()?;
        let free_gens = c.generators.into_iter().map(named).collect::<Result<Vec<_>, _>>()?;
        let claimed_rank = c.rank.unwrap_or(free_gens.len());
        curves.push(CurveSpec {
            sign,
            n: c.n,
            data: GeneratorData {
                torsion,
                free_gens,
                claimed_rank,
                provenance: c.provenance,
            },
            expected_points: c.expected_points,
        });
    }
    let injected = raw
        .injected_curves
        .into_iter()
        .map(|ic| {
            let a = ic
                .a_invariants
                .iter()
                .map(|s| FieldElem::parse(field, s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| bad(e.to_string()))?;
            let a: [FieldElem; 5] = a.try_into().expect("five coefficients");
            let curve = Curve::new(a).map_err(|e| bad(format!("{}: {e}", ic.name)))?;
            Ok(InjectedCurve {
                name: ic.name,
                curve,
                provenance: ic.provenance,
            })
        })
        .collect::<Result<Vec<_>, ConfigError>>()?;
    Ok(CaseSpec {
        field,
        epsilon,
        filter: FilterSpec {
            m,
            ray_row: raw.ray_class_row,
            cubic_flag: raw.cubic_flag,
            external_constraint: raw.external_constraint,
        },
        ray_class_provenance: raw.ray_class_provenance,
        cubic_assumed: raw.cubic_assumed,
        curves,
        injected,
        bounds: raw.bounds,
        expected: raw.expected,
    })
}
