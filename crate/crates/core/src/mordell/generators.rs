use super::{MordellCurve, MordellError};
use crate::quadfield::QuadField;
use crate::weierstrass::{parse_point, torsion_subgroup, CurveError, Point};
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;

/// Status string attached to every successful generator check.
pub const RANK_ASSUMPTION: &str = "verified-under-rank-assumption";

const COLLISION_RANGE: i64 = 8;

/// A point as supplied in a case file, with its name and printed form.
#[derive(Debug, Clone, Serialize)]
pub struct NamedPoint {
    pub name: String,
    pub printed: String,
    #[serde(skip)]
    pub point: Point,
}

impl NamedPoint {
    pub fn parse(field: QuadField, name: &str, printed: &str) -> Result<Self, CurveError> {
        Ok(NamedPoint {
            name: name.to_string(),
            printed: printed.to_string(),
            point: parse_point(field, printed)?,
        })
    }
}

/// Published Mordell-Weil data for one curve.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorData {
    pub torsion: Option<NamedPoint>,
    pub free_gens: Vec<NamedPoint>,
    pub claimed_rank: usize,
    pub provenance: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointCheck {
    pub name: String,
    pub printed: String,
    pub on_curve: bool,
    pub role: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorReport {
    pub curve: String,
    pub points: Vec<PointCheck>,
    pub torsion: String,
    pub torsion_bound_primes: usize,
    pub rank: usize,
    pub collision_range: i64,
    pub status: &'static str,
}

pub fn verify_generators(mc: &MordellCurve, gd: &GeneratorData) -> Result<GeneratorReport, MordellError> {
    let curve = mc.curve();
    if gd.claimed_rank != gd.free_gens.len() {
        return Err(MordellError::RankMismatch {
            claimed: gd.claimed_rank,
            given: gd.free_gens.len(),
        });
    }
    let mut checks = Vec::new();
    for (np, role) in gd
        .torsion
        .iter()
        .map(|t| (t, "torsion"))
        .chain(gd.free_gens.iter().map(|g| (g, "free")))
    {
        if !curve.is_on_curve(&np.point) {
            return Err(MordellError::NotOnCurve {
                name: np.name.clone(),
                point: np.printed.clone(),
                curve: mc.to_string(),
            });
        }
        checks.push(PointCheck {
            name: np.name.clone(),
            printed: np.printed.clone(),
            on_curve: true,
            role,
        });
    }

    let tors = torsion_subgroup(curve)?;
    let tors_points: Vec<Point> = torsion_points(curve, &tors.generators);
    match &gd.torsion {
        Some(t) => {
            if t.point.is_infinity() || !curve.scalar_mul(2, &t.point).is_infinity() {
                let order = curve
                    .order_up_to(&t.point, 12)
                    .map_or("> 12".to_string(), |o| o.to_string());
                return Err(MordellError::TorsionOrder {
                    name: t.name.clone(),
                    order,
                });
            }
        }
        None if tors.order > 1 => {
            return Err(MordellError::TorsionOrder {
                name: "(missing)".to_string(),
                order: "1".to_string(),
            })
        }
        None => {}
    }
    for g in &gd.free_gens {
        if curve.scalar_mul(tors.order as i64, &g.point).is_infinity() {
            return Err(MordellError::TorsionGenerator { name: g.name.clone() });
        }
    }

    // combinations with |k_i| <= 8 must be pairwise distinct modulo torsion
    let gens: Vec<Point> = gd.free_gens.iter().map(|g| g.point.clone()).collect();
    let names: Vec<&str> = gd.free_gens.iter().map(|g| g.name.as_str()).collect();
    let mut seen: HashSet<Point> = HashSet::new();
    for (coeffs, q) in combinations(mc, &gens, COLLISION_RANGE) {
        for tau in &tors_points {
            if !seen.insert(curve.add(&q, tau)) {
                return Err(MordellError::Dependent(label(None, &names, 0, &coeffs)));
            }
        }
    }

    Ok(GeneratorReport {
        curve: mc.to_string(),
        points: checks,
        torsion: tors.label(),
        torsion_bound_primes: tors.primes_used.len(),
        rank: gd.free_gens.len(),
        collision_range: COLLISION_RANGE,
        status: RANK_ASSUMPTION,
    })
}

fn torsion_points(curve: &crate::weierstrass::Curve, gens: &[Point]) -> Vec<Point> {
    let mut pts = vec![Point::Infinity];
    for g in gens {
        let shifted: Vec<Point> = pts.iter().map(|p| curve.add(p, g)).collect();
        pts.extend(shifted);
    }
    pts
}

/// All `sum k_i P_i` with `|k_i| <= bound`, paired with their coefficients.
fn combinations(mc: &MordellCurve, gens: &[Point], bound: i64) -> Vec<(Vec<i64>, Point)> {
    let curve = mc.curve();
    let multiples: Vec<Vec<Point>> = gens
        .par_iter()
        .map(|g| (-bound..=bound).map(|k| curve.scalar_mul(k, g)).collect())
        .collect();
    let mut acc: Vec<(Vec<i64>, Point)> = vec![(Vec::new(), Point::Infinity)];
    for mult in &multiples {
        acc = acc
            .par_iter()
            .flat_map_iter(|(coeffs, p)| {
                (-bound..=bound).zip(mult).map(move |(k, kp)| {
                    let mut c = coeffs.clone();
                    c.push(k);
                    (c, curve.add(p, kp))
                })
            })
            .collect();
    }
    acc
}

fn label(torsion: Option<&str>, names: &[&str], t: i64, coeffs: &[i64]) -> String {
    let mut out = String::new();
    let terms = torsion
        .map(|n| (t, n))
        .into_iter()
        .chain(coeffs.iter().copied().zip(names.iter().copied()));
    for (k, name) in terms.filter(|(k, _)| *k != 0) {
        let body = if k.abs() == 1 {
            name.to_string()
        } else {
            format!("{}*{name}", k.abs())
        };
        match (out.is_empty(), k < 0) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        "O".to_string()
    } else {
        out
    }
}

/// An integral point together with the combination of generators producing it.
#[derive(Debug, Clone, Serialize)]
pub struct IntegralPoint {
    pub point: Point,
    pub combination: String,
}

/// A set of integral points (including `O`), sorted by serialized coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct IntegralPointSet {
    pub points: Vec<IntegralPoint>,
}

impl IntegralPointSet {
    pub fn from_points(points: impl IntoIterator<Item = IntegralPoint>) -> Self {
        let mut points: Vec<IntegralPoint> = points.into_iter().collect();
        points.sort_by_key(|p| p.point.to_string());
        points.dedup_by(|a, b| a.point == b.point);
        IntegralPointSet { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.iter().any(|q| q.point == *p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter().map(|p| &p.point)
    }

    /// Serialized coordinates of every point, in order.
    pub fn strings(&self) -> Vec<String> {
        self.points.iter().map(|p| p.point.to_string()).collect()
    }

    pub fn is_negation_closed(&self, mc: &MordellCurve) -> bool {
        self.iter().all(|p| self.contains(&mc.curve().negate(p)))
    }

    /// Every affine point is on the curve with both coordinates integral.
    pub fn recheck(&self, mc: &MordellCurve) -> bool {
        self.iter()
            .all(|p| mc.curve().is_on_curve(p) && p.coords().is_none_or(|(x, y)| x.is_integral() && y.is_integral()))
    }

    /// Points whose `x` has integral-basis coordinates bounded by `h` (and `O`).
    pub fn restrict_to_box(&self, h: u64) -> IntegralPointSet {
        let h = num_bigint::BigInt::from(h);
        IntegralPointSet {
            points: self
                .points
                .iter()
                .filter(|ip| match ip.point.coords() {
                    None => true,
                    Some((x, _)) => {
                        let (u, v) = x.basis_coords();
                        u.to_integer().abs() <= h && v.to_integer().abs() <= h
                    }
                })
                .cloned()
                .collect(),
        }
    }
}

/// All `sum m_i P_i + t T` with `|m_i| <= bound` and `t` in `{0, 1}` having
/// integral coordinates, plus `O`.
pub fn combine_and_filter(mc: &MordellCurve, gd: &GeneratorData, bound: u32) -> IntegralPointSet {
    assert!(bound >= 1, "enumeration bound must be positive");
    let curve = mc.curve();
    let gens: Vec<Point> = gd.free_gens.iter().map(|g| g.point.clone()).collect();
    let names: Vec<&str> = gd.free_gens.iter().map(|g| g.name.as_str()).collect();
    let tname = gd.torsion.as_ref().map(|t| t.name.as_str());
    let combos = combinations(mc, &gens, bound as i64);
    let shifts: Vec<(i64, Point)> = match &gd.torsion {
        Some(t) => vec![(0, Point::Infinity), (1, t.point.clone())],
        None => vec![(0, Point::Infinity)],
    };
    let found: Vec<IntegralPoint> = combos
        .par_iter()
        .flat_map_iter(|(coeffs, q)| {
            let names = &names;
            shifts.iter().filter_map(move |(t, tp)| {
                let p = curve.add(q, tp);
                let integral = p.coords().is_none_or(|(x, y)| x.is_integral() && y.is_integral());
                integral.then(|| IntegralPoint {
                    combination: label(tname, names, *t, coeffs),
                    point: p,
                })
            })
        })
        .collect();
    IntegralPointSet::from_points(found)
}
