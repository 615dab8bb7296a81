//! Runs the full chain for each field: class filter, Mordell curves,
//! generator checks, integral points, and the conductor of every candidate.

mod config;
mod report;

pub use config::{load_config, parse_config, Bounds, CaseSpec, ConfigError, CurveSpec, InjectedCurve, SuiteSpec};
pub use report::{
    CandidateReport, CaseReport, CaseTimings, CurveReport, FilterReport, InjectedReport, OracleReport, StageFailure,
    StageTiming, SuiteReport,
};

use crate::casefilter::{admissible_classes, DiscriminantClass};
use crate::localdata::conductor;
use crate::mordell::{
    brute_search_integral, build_mordell_with_unit, combine_and_filter, curve_from_c4c6, verify_generators,
    MordellCurve,
};
use crate::quadfield::{class_number_is_one, fundamental_unit, FieldElem, UnitRelation};
use crate::weierstrass::Point;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    NonExistence,
    ConditionalNonExistence,
    Blocked,
    ExistenceWitness,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Overrides applied on top of a case file.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub bound_m: Option<u32>,
    pub oracle_h: Option<u64>,
}

struct Timer {
    stages: Vec<StageTiming>,
}

impl Timer {
    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.stages.push(StageTiming {
            stage: stage.to_string(),
            millis: start.elapsed().as_secs_f64() * 1e3,
        });
        out
    }
}

fn fail(stage: &str, message: impl fmt::Display) -> StageFailure {
    StageFailure {
        stage: stage.to_string(),
        message: message.to_string(),
    }
}

enum Halt {
    Blocked(String),
    Failed(StageFailure),
}

impl From<StageFailure> for Halt {
    fn from(f: StageFailure) -> Self {
        Halt::Failed(f)
    }
}

pub fn run_case(spec: &CaseSpec, opts: RunOptions) -> (CaseReport, CaseTimings) {
    let bounds = Bounds {
        m: opts.bound_m.unwrap_or(spec.bounds.m),
        h: opts.oracle_h.unwrap_or(spec.bounds.h),
    };
    let mut timer = Timer { stages: Vec::new() };
    let mut report = CaseReport {
        m: spec.m(),
        epsilon: None,
        expected: spec.expected,
        verdict: None,
        witness: None,
        blocked_reason: None,
        failure: None,
        matches_expected: false,
        bounds,
        assumptions: assumptions(spec, bounds),
        filter: None,
        curves: Vec::new(),
        injected: Vec::new(),
    };
    match run_stages(spec, bounds, &mut timer, &mut report) {
        Ok(()) => {}
        Err(Halt::Blocked(reason)) => {
            report.verdict = Some(VerdictKind::Blocked);
            report.blocked_reason = Some(reason);
        }
        Err(Halt::Failed(f)) => report.failure = Some(f),
    }
    report.matches_expected = report.failure.is_none() && report.verdict == Some(spec.expected);
    (
        report,
        CaseTimings {
            m: spec.m(),
            stages: timer.stages,
        },
    )
}

fn assumptions(spec: &CaseSpec, bounds: Bounds) -> Vec<String> {
    let mut out = Vec::new();
    if !spec.curves.is_empty() {
        out.push("Mordell-Weil bases are the published ones and are assumed to generate the full group".to_string());
        out.push(format!(
            "integral points are the combinations with coefficients bounded by M = {}; the published bound on M is not recomputed",
            bounds.m
        ));
    }
    if spec.filter.ray_row.is_some() {
        let src = if spec.ray_class_provenance.is_empty() {
            "published data".to_string()
        } else {
            spec.ray_class_provenance.clone()
        };
        out.push(format!(
            "ray class numbers of K(sqrt(Delta)) are taken as input ({src})"
        ));
    }
    if spec.filter.cubic_flag {
        out.push(if spec.cubic_assumed {
            "the discriminant is assumed to be a cube in K".to_string()
        } else {
            "the discriminant is a cube in K by a published criterion, not re-derived here".to_string()
        });
    }
    if let Some(c) = &spec.filter.external_constraint {
        let sign = match c.sign {
            Some(s) if s < 0 => "-",
            _ => "",
        };
        let src = if c.provenance.is_empty() {
            String::new()
        } else {
            format!(" ({})", c.provenance)
        };
        out.push(format!(
            "external constraint Delta = {sign}eps^n with n = {} mod {}{src}",
            c.residue, c.modulus
        ));
    }
    out
}

fn run_stages(spec: &CaseSpec, bounds: Bounds, timer: &mut Timer, report: &mut CaseReport) -> Result<(), Halt> {
    let field = spec.field;
    if !timer.time("class-number", || class_number_is_one(field)) {
        return Err(Halt::Blocked(format!(
            "class number of Q(sqrt({})) is not 1",
            field.m()
        )));
    }

    let epsilon = timer.time("unit", || -> Result<FieldElem, StageFailure> {
        let canonical = fundamental_unit(field);
        match &spec.epsilon {
            None => Ok(canonical),
            Some(e) => match UnitRelation::between(&canonical, e) {
                Some(_) => Ok(e.clone()),
                None => Err(fail(
                    "unit",
                    format!("{e} is not a fundamental unit (expected +-({canonical})^(+-1))"),
                )),
            },
        }
    })?;
    report.epsilon = Some(epsilon.to_string());

    let classes: Vec<DiscriminantClass> = if spec.filter.ray_row.is_none() && !spec.injected.is_empty() {
        Vec::new()
    } else {
        timer
            .time("case-filter", || admissible_classes(&spec.filter))
            .map_err(|e| Halt::Blocked(e.to_string()))?
    };
    let mut curves: Vec<(i32, u32)> = classes.iter().map(DiscriminantClass::mordell).collect();
    curves.sort_by_key(|&(s, n)| (n, -s));
    report.filter = Some(FilterReport {
        ray_class_row: spec.filter.ray_row.map(|r| r.values()),
        cubic_flag: spec.filter.cubic_flag,
        classes,
        curves: curves.iter().map(|&(s, n)| label(s, n)).collect(),
    });

    let mut jobs = Vec::new();
    for &(sign, n) in &curves {
        let cs = spec
            .curve(sign, n)
            .ok_or_else(|| Halt::Blocked(format!("no generator data for {}", label(sign, n))))?;
        let mc = build_mordell_with_unit(&epsilon, sign, n).map_err(|e| fail("build-mordell", e))?;
        jobs.push((cs, mc));
    }

    let results: Vec<(Result<CurveReport, StageFailure>, Vec<StageTiming>)> = jobs
        .par_iter()
        .map(|(cs, mc)| {
            let mut t = Timer { stages: Vec::new() };
            let r = run_curve(cs, mc, bounds, &mut t);
            (r, t.stages)
        })
        .collect();
    for (r, stages) in results {
        timer.stages.extend(stages);
        report.curves.push(r?);
    }

    report.injected = timer.time("injected", || {
        spec.injected
            .par_iter()
            .map(|ic| {
                let c = conductor(&ic.curve).map_err(|e| fail("conductor", format!("{}: {e}", ic.name)))?;
                Ok(InjectedReport {
                    name: ic.name.clone(),
                    curve: ic.curve.to_string(),
                    provenance: ic.provenance.clone(),
                    conductor: c.to_string(),
                    trivial: c.is_trivial(),
                    local: c.records(),
                })
            })
            .collect::<Result<Vec<_>, StageFailure>>()
    })?;

    let witness = report
        .curves
        .iter()
        .flat_map(|c| {
            c.candidates
                .iter()
                .filter(|p| p.trivial)
                .map(move |p| format!("{} at {}", c.label, p.combination))
        })
        .chain(report.injected.iter().filter(|i| i.trivial).map(|i| i.name.clone()))
        .next();
    report.verdict = Some(match &witness {
        Some(_) => VerdictKind::ExistenceWitness,
        None if spec.filter.cubic_flag && spec.cubic_assumed => VerdictKind::ConditionalNonExistence,
        None => VerdictKind::NonExistence,
    });
    report.witness = witness;
    Ok(())
}

fn label(sign: i32, n: u32) -> String {
    format!("E_{n}^{}", if sign > 0 { '+' } else { '-' })
}

fn run_curve(
    cs: &CurveSpec,
    mc: &MordellCurve,
    bounds: Bounds,
    timer: &mut Timer,
) -> Result<CurveReport, StageFailure> {
    let name = mc.label();
    let stage = |s: &str| format!("{s} {name}");
    let generators = timer
        .time(&stage("verify-generators"), || verify_generators(mc, &cs.data))
        .map_err(|e| fail(&stage("verify-generators"), e))?;
    let set = timer.time(&stage("combine"), || combine_and_filter(mc, &cs.data, bounds.m));
    if !set.recheck(mc) || !set.is_negation_closed(mc) {
        return Err(fail(
            &stage("combine"),
            "integral point set fails its consistency check",
        ));
    }
    let combos: Vec<String> = set.points.iter().map(|p| p.combination.clone()).collect();
    if let Some(expected) = &cs.expected_points {
        let got: BTreeSet<&str> = combos.iter().map(String::as_str).collect();
        let want: BTreeSet<&str> = expected.iter().map(String::as_str).collect();
        if got != want {
            return Err(fail(
                &stage("integral-points"),
                format!("found {{{}}}, expected {{{}}}", join(&got), join(&want)),
            ));
        }
    }

    let oracle = if bounds.h > 0 {
        let found = timer
            .time(&stage("oracle"), || brute_search_integral(mc, bounds.h))
            .map_err(|e| fail(&stage("oracle"), e))?;
        let inside = set.restrict_to_box(bounds.h);
        let agrees = inside.strings() == found.strings();
        if !agrees {
            let extra: BTreeSet<String> = found
                .strings()
                .into_iter()
                .filter(|s| !inside.strings().contains(s))
                .collect();
            return Err(fail(
                &stage("oracle"),
                format!("box search found points missing from the enumeration: {extra:?}"),
            ));
        }
        Some(OracleReport {
            h: bounds.h,
            points_in_box: found.len(),
            agrees,
        })
    } else {
        None
    };

    let candidates = timer.time(&stage("conductor"), || {
        set.points
            .par_iter()
            .filter_map(|ip| match &ip.point {
                Point::Infinity => None,
                Point::Affine(c4, c6) => Some((ip, c4, c6)),
            })
            .map(|(ip, c4, c6)| {
                let ec = curve_from_c4c6(c4, c6).map_err(|e| fail("conductor", e))?;
                let c = conductor(&ec).map_err(|e| fail("conductor", e))?;
                Ok(CandidateReport {
                    combination: ip.combination.clone(),
                    c4: c4.to_string(),
                    c6: c6.to_string(),
                    conductor: c.to_string(),
                    trivial: c.is_trivial(),
                    local: c.records(),
                })
            })
            .collect::<Result<Vec<_>, StageFailure>>()
    })?;

    Ok(CurveReport {
        label: name.clone(),
        equation: mc.to_string(),
        generators,
        integral_points: combos,
        oracle,
        candidates,
    })
}

fn join(s: &BTreeSet<&str>) -> String {
    s.iter().copied().collect::<Vec<_>>().join(", ")
}

/// Runs every case (concurrently), optionally restricted to one field.
pub fn run_suite(suite: &SuiteSpec, only_m: Option<i64>, opts: RunOptions) -> SuiteReport {
    let selected: Vec<&CaseSpec> = suite
        .cases
        .iter()
        .filter(|c| only_m.is_none_or(|m| c.m() == m))
        .collect();
    let (cases, timings) = selected.par_iter().map(|c| run_case(c, opts)).unzip();
    SuiteReport { cases, timings }
}

/// Writes `case_<m>.json`, `summary.txt` and `timings.json` into `dir`.
pub fn write_reports(report: &SuiteReport, dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for c in &report.cases {
        std::fs::write(dir.join(format!("case_{}.json", c.m)), c.to_json())?;
    }
    std::fs::write(dir.join("summary.txt"), report.summary())?;
    std::fs::write(dir.join("timings.json"), report.timings_json())
}
