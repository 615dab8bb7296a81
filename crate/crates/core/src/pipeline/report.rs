use super::config::Bounds;
use super::VerdictKind;
use crate::casefilter::DiscriminantClass;
use crate::localdata::LocalRecord;
use crate::mordell::GeneratorReport;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageFailure {
    pub stage: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FilterReport {
    pub ray_class_row: Option<[u64; 4]>,
    pub cubic_flag: bool,
    pub classes: Vec<DiscriminantClass>,
    pub curves: Vec<String>,
}

/// Conductor of `E_C` for one integral point `(c4, c6)`.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateReport {
    pub combination: String,
    pub c4: String,
    pub c6: String,
    pub conductor: String,
    pub trivial: bool,
    pub local: Vec<LocalRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    #[serde(rename = "H")]
    pub h: u64,
    pub points_in_box: usize,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveReport {
    pub label: String,
    pub equation: String,
    pub generators: GeneratorReport,
    pub integral_points: Vec<String>,
    pub oracle: Option<OracleReport>,
    pub candidates: Vec<CandidateReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InjectedReport {
    pub name: String,
    pub curve: String,
    pub provenance: String,
    pub conductor: String,
    pub trivial: bool,
    pub local: Vec<LocalRecord>,
}

/// Deterministic outcome of one case; timings are kept separately.
#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub m: i64,
    pub epsilon: Option<String>,
    pub expected: VerdictKind,
    pub verdict: Option<VerdictKind>,
    pub witness: Option<String>,
    pub blocked_reason: Option<String>,
    pub failure: Option<StageFailure>,
    pub matches_expected: bool,
    pub bounds: Bounds,
    pub assumptions: Vec<String>,
    pub filter: Option<FilterReport>,
    pub curves: Vec<CurveReport>,
    pub injected: Vec<InjectedReport>,
}

impl CaseReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One summary line: field, outcome, expected outcome.
    pub fn summary_line(&self) -> String {
        let outcome = match (&self.verdict, &self.failure) {
            (_, Some(f)) => format!("FAILED at {}: {}", f.stage, f.message),
            (Some(v), None) => v.to_string(),
            (None, None) => "?".to_string(),
        };
        let curves: Vec<&str> = self.curves.iter().map(|c| c.label.as_str()).collect();
        let detail = match (&self.witness, &self.blocked_reason) {
            (Some(w), _) => format!("witness {w}"),
            (None, Some(r)) => r.clone(),
            (None, None) if curves.is_empty() => String::new(),
            (None, None) => format!("curves {}", curves.join(", ")),
        };
        format!(
            "Q(sqrt({:>2}))  {:<24} expected {:<24} {}  {}",
            self.m,
            outcome,
            self.expected.to_string(),
            if self.matches_expected { "ok" } else { "MISMATCH" },
            detail
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StageTiming {
    pub stage: String,
    pub millis: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseTimings {
    pub m: i64,
    pub stages: Vec<StageTiming>,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub cases: Vec<CaseReport>,
    pub timings: Vec<CaseTimings>,
}

impl SuiteReport {
    /// 0 if every case matches, 2 on a mismatch or failed stage, 3 if a case is blocked.
    pub fn exit_code(&self) -> i32 {
        if self
            .cases
            .iter()
            .any(|c| c.failure.is_some() || (!c.matches_expected && c.verdict != Some(VerdictKind::Blocked)))
        {
            2
        } else if self.cases.iter().any(|c| c.verdict == Some(VerdictKind::Blocked)) {
            3
        } else {
            0
        }
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            writeln!(out, "{}", c.summary_line()).unwrap();
        }
        let proven: Vec<String> = self.field_list(VerdictKind::NonExistence);
        let conditional: Vec<String> = self.field_list(VerdictKind::ConditionalNonExistence);
        if !proven.is_empty() {
            writeln!(
                out,
                "No elliptic curve with everywhere good reduction over Q(sqrt(m)) for m in {{{}}}.",
                proven.join(", ")
            )
            .unwrap();
        }
        if !conditional.is_empty() {
            writeln!(
                out,
                "No elliptic curve with everywhere good reduction and cubic discriminant over Q(sqrt(m)) for m in {{{}}}.",
                conditional.join(", ")
            )
            .unwrap();
        }
        out
    }

    fn field_list(&self, kind: VerdictKind) -> Vec<String> {
        self.cases
            .iter()
            .filter(|c| c.verdict == Some(kind) && c.failure.is_none())
            .map(|c| c.m.to_string())
            .collect()
    }

    pub fn timings_json(&self) -> String {
        serde_json::to_string_pretty(&self.timings).expect("timings serialize") + "\n"
    }
}
