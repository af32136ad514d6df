//! Punctured holomorphic curve classes on toric domains, reduced to their
//! combinatorial asymptotic data: degree, end multisets, area, and the
//! virtual index. On top of the index bookkeeping sit exhaustive finite
//! case checks used to classify low-area low-index curves.
//!
//! Two ambient settings are supported. A `Cap` curve lives in the capped
//! complement of a domain, carries a degree `d >= 1` (intersection with the
//! divisor at infinity, after compactifying the ball factor of size `R`),
//! and has only negative ends; its area is `d*R` minus the total end
//! action. A `Symplectization` curve has degree 0, at least one positive
//! end, and no area notion here.
//!
//! All indices use the infinitesimally smoothed boundary, so every check
//! is a finite exact computation: enumerations are complete because each
//! end consumes positive action from the finite budget `d*R`.

use crate::domains::{Domain, DomainError};
use crate::rat::Rat;
use crate::reeb::{self, ReebError, ReebOrbit, SmoothingPolicy};
use serde::Serialize;
use std::fmt;

/// Degree ceiling for exhaustive curve enumeration.
pub const MAX_DEGREE: u32 = 3;

const POLICY: SmoothingPolicy = SmoothingPolicy::InfinitesimalEpsilon;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("symplectization curves have no area here")]
    SymplectizationAmbient,
    #[error("orbit {0} is not among the curve's negative ends")]
    EndNotPresent(String),
    #[error("positive ends require a symplectization ambient; cap curves have none")]
    PositiveEndsInCap,
    #[error("symplectization curves have degree 0 and at least one positive end")]
    BadSymplectizationData,
    #[error("no index convention for an end: {0}")]
    IndexUnavailable(ReebError),
    #[error(transparent)]
    Reeb(ReebError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("hypotheses violated: {}", failed.join("; "))]
    HypothesisViolated { failed: Vec<String> },
    #[error("curve enumeration needs a disk-ellipsoid product, got {0}")]
    UnsupportedDomain(String),
    #[error("bad query: {0}")]
    BadQuery(String),
}

impl From<ReebError> for CurveError {
    fn from(e: ReebError) -> Self {
        match e {
            ReebError::CzUndefinedForTorusFamilies => CurveError::IndexUnavailable(e),
            other => CurveError::Reeb(other),
        }
    }
}

/// Where a curve lives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ambient {
    /// Complement of `domain` inside the capped ball product of size `r`.
    Cap { domain: Domain, r: Rat },
    /// Cylinder over the smoothed boundary of `domain`.
    Symplectization { domain: Domain },
}

impl Ambient {
    pub fn domain(&self) -> &Domain {
        match self {
            Ambient::Cap { domain, .. } | Ambient::Symplectization { domain } => domain,
        }
    }
}

/// A genus-zero curve class given by its asymptotic data. End lists are
/// multisets, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub ambient: Ambient,
    pub degree: u32,
    pub positive_ends: Vec<ReebOrbit>,
    pub negative_ends: Vec<ReebOrbit>,
}

impl CurveClass {
    /// Curve in the capped complement. Degree 0 classes are representable
    /// (their area comes out nonpositive, marking them nonexistent).
    pub fn cap(
        domain: Domain,
        r: Rat,
        degree: u32,
        mut negative_ends: Vec<ReebOrbit>,
    ) -> Result<Self, CurveError> {
        for end in &negative_ends {
            end.check_on(&domain).map_err(CurveError::Reeb)?;
        }
        negative_ends.sort();
        Ok(CurveClass {
            ambient: Ambient::Cap { domain, r },
            degree,
            positive_ends: Vec::new(),
            negative_ends,
        })
    }

    /// Degree-0 curve in the symplectization; needs a positive end.
    pub fn symplectization(
        domain: Domain,
        mut positive_ends: Vec<ReebOrbit>,
        mut negative_ends: Vec<ReebOrbit>,
    ) -> Result<Self, CurveError> {
        if positive_ends.is_empty() {
            return Err(CurveError::BadSymplectizationData);
        }
        for end in positive_ends.iter().chain(&negative_ends) {
            end.check_on(&domain).map_err(CurveError::Reeb)?;
        }
        positive_ends.sort();
        negative_ends.sort();
        Ok(CurveClass {
            ambient: Ambient::Symplectization { domain },
            degree: 0,
            positive_ends,
            negative_ends,
        })
    }

    /// Total end count.
    pub fn end_count(&self) -> usize {
        self.positive_ends.len() + self.negative_ends.len()
    }

    /// Greatest common divisor of all end covering degrees; 1 certifies
    /// the class cannot be multiply covered.
    pub fn covering_gcd(&self) -> u32 {
        fn gcd(a: u32, b: u32) -> u32 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.positive_ends
            .iter()
            .chain(&self.negative_ends)
            .map(|o| o.covering_degree())
            .fold(0, gcd)
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ends: &[ReebOrbit]| {
            ends.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", ")
        };
        match &self.ambient {
            Ambient::Cap { .. } => {
                write!(f, "cap d={} neg[{}]", self.degree, list(&self.negative_ends))
            }
            Ambient::Symplectization { .. } => write!(
                f,
                "symp pos[{}] neg[{}]",
                list(&self.positive_ends),
                list(&self.negative_ends)
            ),
        }
    }
}

/// Symplectic area of a cap curve: `d*R` minus the total negative end
/// action. Nonpositive output marks a class with no nonconstant
/// representative.
pub fn curve_area(c: &CurveClass) -> Result<Rat, CurveError> {
    let Ambient::Cap { domain, r } = &c.ambient else {
        return Err(CurveError::SymplectizationAmbient);
    };
    let mut area = Rat::from(c.degree) * r;
    for end in &c.negative_ends {
        area = area - reeb::action(end, domain, &POLICY)?;
    }
    Ok(area)
}

/// Virtual (deformation) index of a genus-zero curve class:
/// `(n-3)(2-s) + 6d + sum_pos(mu + dimV/2) - sum_neg(mu - dimV/2)`.
/// The half-integer Conley-Zehnder values of family orbits cancel against
/// their `dimV/2` terms, so the result is an integer; this is asserted.
pub fn virtual_index(c: &CurveClass) -> Result<Rat, CurveError> {
    let domain = c.ambient.domain();
    let n = domain.dimension() as i64;
    let s = c.end_count() as i64;
    let mut index = Rat::int((n - 3) * (2 - s) + 6 * i64::from(c.degree));
    for end in &c.positive_ends {
        let mu = reeb::cz_index(end, domain, &POLICY)?.value;
        index = index + mu + Rat::new(i64::from(end.family_dimension()), 2);
    }
    for end in &c.negative_ends {
        let mu = reeb::cz_index(end, domain, &POLICY)?.value;
        index = index - mu + Rat::new(i64::from(end.family_dimension()), 2);
    }
    assert!(index.is_integer(), "index of {c} is fractional: {index}");
    Ok(index)
}

/// Index after pinning one negative end to a fixed orbit of its family:
/// the virtual index minus that family's dimension.
pub fn constrained_index(c: &CurveClass, fixed: &ReebOrbit) -> Result<Rat, CurveError> {
    if !c.negative_ends.contains(fixed) {
        return Err(CurveError::EndNotPresent(fixed.to_string()));
    }
    Ok(virtual_index(c)? - Rat::from(fixed.family_dimension()))
}

/// Filter window for exhaustive cap-curve enumeration.
#[derive(Debug, Clone)]
pub struct CurveQuery {
    pub degree: u32,
    /// Inclusive area window; positivity of area is enforced on top.
    pub area_min: Rat,
    pub area_max: Rat,
    /// Keep curves with virtual index at least this; `None` disables.
    pub index_min: Option<Rat>,
    /// Keep curves carrying this negative end; their pinned index is
    /// reported alongside.
    pub constrained_end: Option<ReebOrbit>,
}

impl CurveQuery {
    pub fn new(degree: u32, area_max: Rat) -> Self {
        CurveQuery {
            degree,
            area_min: Rat::zero(),
            area_max,
            index_min: None,
            constrained_end: None,
        }
    }

    pub fn with_index_min(mut self, index_min: i64) -> Self {
        self.index_min = Some(Rat::int(index_min));
        self
    }
}

/// One enumerated curve with its computed invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapCurve {
    pub class: CurveClass,
    pub area: Rat,
    pub index: Rat,
    pub constrained: Option<Rat>,
}

/// Serializable row for reports.
#[derive(Debug, Clone, Serialize)]
pub struct CurveRow {
    pub degree: u32,
    pub ends: Vec<String>,
    pub area: Rat,
    pub index: Rat,
}

impl CapCurve {
    pub fn row(&self) -> CurveRow {
        CurveRow {
            degree: self.class.degree,
            ends: self.class.negative_ends.iter().map(|o| o.to_string()).collect(),
            area: self.area.clone(),
            index: self.index.clone(),
        }
    }
}

/// Complete list of degree-`q.degree` cap curves on a disk-ellipsoid
/// product, with positive area inside `[q.area_min, q.area_max]` and index
/// at least `q.index_min`. Complete because end multisets are bounded by
/// total action under `d*R`. Output is sorted by (area, end multiset).
pub fn enumerate_cap_curves(
    domain: &Domain,
    r: &Rat,
    q: &CurveQuery,
) -> Result<Vec<CapCurve>, CurveError> {
    if !matches!(domain, Domain::Polylike { .. }) {
        return Err(CurveError::UnsupportedDomain(domain.kind().to_owned()));
    }
    if q.degree == 0 || q.degree > MAX_DEGREE {
        return Err(CurveError::BadQuery(format!(
            "degree must be in 1..={MAX_DEGREE}, got {}",
            q.degree
        )));
    }
    if q.area_min > q.area_max {
        return Err(CurveError::BadQuery("area_min exceeds area_max".into()));
    }
    let budget = Rat::from(q.degree) * r;
    // Total end action t gives area d*R - t; the window translates to
    // d*R - area_max <= t <= min(d*R - area_min, < d*R).
    let t_min = &budget - &q.area_max;
    let t_max = (&budget - &q.area_min).min(budget.clone());
    let candidates = reeb::enumerate_orbits(domain, &budget, &POLICY)?;
    let mut ends_sets: Vec<Vec<ReebOrbit>> = Vec::new();
    let mut stack: Vec<ReebOrbit> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        candidates: &[reeb::OrbitEntry],
        start: usize,
        total: Rat,
        budget: &Rat,
        t_min: &Rat,
        t_max: &Rat,
        stack: &mut Vec<ReebOrbit>,
        out: &mut Vec<Vec<ReebOrbit>>,
    ) {
        if &total >= t_min && &total <= t_max && &total < budget {
            out.push(stack.clone());
        }
        for (i, entry) in candidates.iter().enumerate().skip(start) {
            let t = &total + &entry.action;
            if &t > t_max || &t >= budget {
                // Candidates are action-sorted, so no later one fits either.
                break;
            }
            stack.push(entry.orbit.clone());
            recurse(candidates, i, t, budget, t_min, t_max, stack, out);
            stack.pop();
        }
    }
    recurse(
        &candidates,
        0,
        Rat::zero(),
        &budget,
        &t_min,
        &t_max,
        &mut stack,
        &mut ends_sets,
    );
    let mut curves = Vec::new();
    for ends in ends_sets {
        let class = CurveClass::cap(domain.clone(), r.clone(), q.degree, ends)?;
        let index = virtual_index(&class)?;
        if let Some(min) = &q.index_min {
            if &index < min {
                continue;
            }
        }
        let constrained = match &q.constrained_end {
            None => None,
            Some(fixed) => {
                if !class.negative_ends.contains(fixed) {
                    continue;
                }
                Some(constrained_index(&class, fixed)?)
            }
        };
        let area = curve_area(&class)?;
        curves.push(CapCurve { class, area, index, constrained });
    }
    curves.sort_by(|a, b| {
        a.area
            .cmp(&b.area)
            .then_with(|| a.class.negative_ends.cmp(&b.class.negative_ends))
    });
    Ok(curves)
}

/// Verdict of a finite case check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Refuted { witness: String },
    BoundaryAmbiguous { witnesses: Vec<String> },
}

impl Verdict {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::Confirmed)
    }
}

/// Outcome of one case analysis: the enumerated evidence plus verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub claim: &'static str,
    pub params: Vec<(String, String)>,
    pub curves: Vec<CurveRow>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

fn polylike_params(b: &Rat, tail: &[Rat], r: &Rat) -> Vec<(String, String)> {
    let mut p = vec![("b".to_owned(), b.to_string())];
    for (i, a) in tail.iter().enumerate() {
        p.push((format!("a{}", i + 2), a.to_string()));
    }
    p.push(("R".to_owned(), r.to_string()));
    p
}

/// Shared hypothesis gate: a2 < b, a_j > 2*a2 for j >= 3, a2 + b < R, and
/// (when `upper_window`) R < 2*a2 + b. Strict failures are errors; exact
/// equalities are returned for a BoundaryAmbiguous verdict.
fn polylike_gate(
    b: &Rat,
    tail: &[Rat],
    r: &Rat,
    upper_window: bool,
) -> Result<Vec<String>, CurveError> {
    let a2 = &tail[0];
    let two_a2 = Rat::int(2) * a2;
    let mut failed = Vec::new();
    let mut ties = Vec::new();
    let mut check = |lhs: &Rat, rhs: &Rat, desc: String| {
        if lhs > rhs {
            failed.push(desc);
        } else if lhs == rhs {
            ties.push(desc);
        }
    };
    check(a2, b, format!("a2 < b fails: {a2} vs {b}"));
    for (j, aj) in tail.iter().enumerate().skip(1) {
        check(&two_a2, aj, format!("a{} > 2*a2 fails: {aj} vs {two_a2}", j + 2));
    }
    let low = a2 + b;
    check(&low, r, format!("a2 + b < R fails: {low} vs {r}"));
    if upper_window {
        let high = &two_a2 + b;
        check(r, &high, format!("R < 2*a2 + b fails: {r} vs {high}"));
    }
    if failed.is_empty() {
        Ok(ties)
    } else {
        Err(CurveError::HypothesisViolated { failed })
    }
}

fn is_elliptic(o: &ReebOrbit) -> bool {
    matches!(o, ReebOrbit::Elliptic { .. })
}

fn corner_orbit() -> ReebOrbit {
    ReebOrbit::Hyperbolic { axis: 2, m: 1, q: 1 }
}

/// Degree-1 curves of area at most `a2` have either the single hyperbolic
/// end `g^2_{1,1}` or all-elliptic ends with total action strictly between
/// `b` and `2*a2 + b`. No index bound enters. Hypotheses: a2 < b,
/// a_j > 2*a2, a2 + b < R < 2*a2 + b; ties give BoundaryAmbiguous.
pub fn check_low_area_end_species(
    b: &Rat,
    tail: &[Rat],
    r: &Rat,
) -> Result<CaseReport, CurveError> {
    let claim = "low-area-end-species";
    let params = polylike_params(b, tail, r);
    let ties = polylike_gate(b, tail, r, true)?;
    if !ties.is_empty() {
        return Ok(CaseReport {
            claim,
            params,
            curves: Vec::new(),
            verdict: Verdict::BoundaryAmbiguous { witnesses: ties },
            notes: vec!["hypothesis holds only with equality".into()],
        });
    }
    let domain = Domain::polylike(b.clone(), tail.to_vec())?;
    let a2 = &tail[0];
    let query = CurveQuery::new(1, a2.clone());
    let curves = enumerate_cap_curves(&domain, r, &query)?;
    let window_low = b.clone();
    let window_high = Rat::int(2) * a2 + b;
    let mut boundary = Vec::new();
    let mut verdict = Verdict::Confirmed;
    for c in &curves {
        let ends = &c.class.negative_ends;
        if ends.as_slice() == std::slice::from_ref(&corner_orbit()) {
            continue;
        }
        if ends.iter().all(is_elliptic) {
            let total: Rat = ends
                .iter()
                .map(|o| reeb::action(o, &domain, &POLICY))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .sum();
            if total == window_low || total == window_high {
                boundary.push(format!("{} has total action {total} on the window edge", c.class));
            } else if total < window_low || total > window_high {
                verdict = Verdict::Refuted {
                    witness: format!(
                        "{} has all-elliptic action {total} outside ({window_low}, {window_high})",
                        c.class
                    ),
                };
                break;
            }
        } else {
            verdict = Verdict::Refuted {
                witness: format!("{} mixes hyperbolic and other ends", c.class),
            };
            break;
        }
    }
    if verdict.is_confirmed() && !boundary.is_empty() {
        verdict = Verdict::BoundaryAmbiguous { witnesses: boundary };
    }
    Ok(CaseReport {
        claim,
        params,
        curves: curves.iter().map(CapCurve::row).collect(),
        verdict,
        notes: vec![format!("elliptic action window ({window_low}, {window_high})")],
    })
}

/// Degree-1 curves with area at most `a2` and virtual index at least -1
/// are single-end planes on `g^2_{1,1}`, `g^1*2`, or `g^2*2`. Same
/// hypotheses as [`check_low_area_end_species`]. The realized subset is
/// recorded in the notes; which of the three occur depends on `R`.
pub fn check_plane_classification(
    b: &Rat,
    tail: &[Rat],
    r: &Rat,
) -> Result<CaseReport, CurveError> {
    let claim = "plane-classification";
    let params = polylike_params(b, tail, r);
    let ties = polylike_gate(b, tail, r, true)?;
    if !ties.is_empty() {
        return Ok(CaseReport {
            claim,
            params,
            curves: Vec::new(),
            verdict: Verdict::BoundaryAmbiguous { witnesses: ties },
            notes: vec!["hypothesis holds only with equality".into()],
        });
    }
    let domain = Domain::polylike(b.clone(), tail.to_vec())?;
    let a2 = &tail[0];
    let query = CurveQuery::new(1, a2.clone()).with_index_min(-1);
    let curves = enumerate_cap_curves(&domain, r, &query)?;
    let allowed = [
        corner_orbit(),
        ReebOrbit::Elliptic { axis: 1, mult: 2 },
        ReebOrbit::Elliptic { axis: 2, mult: 2 },
    ];
    let mut verdict = Verdict::Confirmed;
    let mut realized = Vec::new();
    for c in &curves {
        let ends = &c.class.negative_ends;
        if ends.len() == 1 && allowed.contains(&ends[0]) {
            realized.push(ends[0].to_string());
        } else {
            verdict = Verdict::Refuted { witness: format!("{} is not an allowed plane", c.class) };
            break;
        }
    }
    realized.sort();
    realized.dedup();
    Ok(CaseReport {
        claim,
        params,
        curves: curves.iter().map(CapCurve::row).collect(),
        verdict,
        notes: vec![format!("realized ends: {{{}}}", realized.join(", "))],
    })
}

/// Index ceiling for a degree-1 curve with `e_count` elliptic ends and no
/// others: each end's index sum contributes at least `n eh... n+1`, giving
/// `index <= (n-3)(2-E) + 6 - (n+1)E = 2(n - (n-1)E)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EllipticEndBound {
    pub bound: Rat,
    /// Whether the ceiling is compatible with index >= -1.
    pub allowed: bool,
}

pub fn elliptic_end_index_bound(n: usize, e_count: u32) -> Result<EllipticEndBound, CurveError> {
    if n < 3 {
        return Err(CurveError::HypothesisViolated { failed: vec![format!("n >= 3 fails: {n}")] });
    }
    let n = n as i64;
    let e = i64::from(e_count);
    let bound = Rat::int(2 * (n - (n - 1) * e));
    let allowed = bound >= Rat::int(-1);
    Ok(EllipticEndBound { bound, allowed })
}

/// The three exclusion computations behind sequential compactness of the
/// degree-1 moduli space. Hypotheses: a2 < b, a_j > 2*a2, a2 + b < R (no
/// upper window; ties give BoundaryAmbiguous). Branches (b) and (c) apply
/// to the scenario of a limiting plane on `g^1*2`, which needs `2b < R`,
/// and are vacuous otherwise.
pub fn compactness_exclusions(b: &Rat, tail: &[Rat], r: &Rat) -> Result<CaseReport, CurveError> {
    let claim = "compactness-exclusions";
    let params = polylike_params(b, tail, r);
    let ties = polylike_gate(b, tail, r, false)?;
    if !ties.is_empty() {
        return Ok(CaseReport {
            claim,
            params,
            curves: Vec::new(),
            verdict: Verdict::BoundaryAmbiguous { witnesses: ties },
            notes: vec!["hypothesis holds only with equality".into()],
        });
    }
    let domain = Domain::polylike(b.clone(), tail.to_vec())?;
    let a2 = &tail[0];
    let mut notes = Vec::new();
    let mut verdict = Verdict::Confirmed;

    // (a) The degree-1 plane on g^2*2 has area R - 2*a2, above the limit
    // area R - (a2 + b) exactly because a2 < b.
    let plane_area = r - Rat::int(2) * a2;
    let area_cap = r - (a2 + b);
    assert!(plane_area > area_cap, "gate guarantees a2 < b");
    notes.push(format!(
        "(a) plane on g^2*2 has area {plane_area} > area bound {area_cap}; excluded"
    ));

    let two_b = Rat::int(2) * b;
    if &two_b >= r {
        if &two_b == r {
            notes.push("(b,c) gate 2b < R holds only with equality; branches skipped".into());
        } else {
            notes.push("(b,c) vacuous: a plane on g^1*2 would need 2b < R".into());
        }
    } else {
        // (b) Orbits with action strictly between a2 + b and 2b can only be
        // g^2*3 or a simple g^j for j >= 3; the cylinder from g^1*2 to any
        // of them has index at most -2, while the cylinder to g^2_{1,1}
        // (action exactly a2 + b) has index 1.
        let low = a2 + b;
        let allowed = |o: &ReebOrbit| {
            matches!(o, ReebOrbit::Elliptic { axis: 2, mult: 3 })
                || matches!(o, ReebOrbit::Elliptic { axis, mult: 1 } if *axis >= 3)
        };
        let two_g1 = ReebOrbit::Elliptic { axis: 1, mult: 2 };
        for entry in reeb::enumerate_orbits(&domain, &two_b, &POLICY)? {
            if entry.action == low || entry.action == two_b {
                notes.push(format!(
                    "(b) {} sits on the window edge at action {}",
                    entry.orbit, entry.action
                ));
                continue;
            }
            if entry.action <= low {
                continue;
            }
            if !allowed(&entry.orbit) {
                verdict = Verdict::Refuted {
                    witness: format!(
                        "(b) {} has action {} inside ({low}, {two_b}) but unexpected type",
                        entry.orbit, entry.action
                    ),
                };
                break;
            }
            let cyl = CurveClass::symplectization(
                domain.clone(),
                vec![two_g1.clone()],
                vec![entry.orbit.clone()],
            )?;
            let idx = virtual_index(&cyl)?;
            if idx > Rat::int(-2) {
                verdict = Verdict::Refuted {
                    witness: format!("(b) cylinder g^1*2 -> {} has index {idx} > -2", entry.orbit),
                };
                break;
            }
            notes.push(format!(
                "(b) {} in window: cylinder index {idx}, covering gcd {}",
                entry.orbit,
                cyl.covering_gcd()
            ));
        }
        if verdict.is_confirmed() {
            let corner_cyl = CurveClass::symplectization(
                domain.clone(),
                vec![two_g1],
                vec![corner_orbit()],
            )?;
            let idx = virtual_index(&corner_cyl)?;
            if idx != Rat::one() {
                verdict = Verdict::Refuted {
                    witness: format!("(b) cylinder g^1*2 -> g^2_{{1,1}} has index {idx}, not 1"),
                };
            } else {
                notes.push("(b) cylinder g^1*2 -> g^2_{1,1} has index 1 as expected".into());
            }
        }

        // (c) In the same scenario the residual ends would need action
        // under 2b - (a2 + b) = b - a2; no orbit is that short.
        if verdict.is_confirmed() {
            let threshold = b - a2;
            let short = reeb::enumerate_orbits(&domain, &threshold, &POLICY)?;
            let mut strictly_short = short.iter().filter(|e| !e.at_bound);
            if let Some(e) = strictly_short.next() {
                verdict = Verdict::Refuted {
                    witness: format!(
                        "(c) {} has action {} below the residual threshold {threshold}",
                        e.orbit, e.action
                    ),
                };
            } else {
                for e in short.iter().filter(|e| e.at_bound) {
                    notes.push(format!(
                        "(c) {} has action exactly {threshold}; threshold treated as open",
                        e.orbit
                    ));
                }
                notes.push(format!("(c) no orbit has action below {threshold}"));
            }
        }
    }

    Ok(CaseReport { claim, params, curves: Vec::new(), verdict, notes })
}

/// Result of the polydisk end multiplicity search.
#[derive(Debug, Clone, Serialize)]
pub struct EndVectorReport {
    /// Every vector (m_1..m_n), sum at most `mult_cap`, whose weighted
    /// action lands in the closed window `[a + b, R]`.
    pub solutions: Vec<Vec<u32>>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Exhausts nonnegative multiplicity vectors `m` with
/// `sum m_i <= mult_cap` and `a + b <= m_1*a + m_3*b +
/// (a - eps)*sum_{i not in {1,3}} m_i <= R`, and checks that the unique
/// solution is `m_1 = m_3 = 1`. Hypotheses (all strict): `b > 2a`,
/// `2*eps < 2a + b - R`, `a + b < R < 2a + b`, `n >= 3`.
pub fn polydisk_end_solver(
    a: &Rat,
    b: &Rat,
    eps: &Rat,
    r: &Rat,
    n: usize,
    mult_cap: u32,
) -> Result<EndVectorReport, CurveError> {
    let mut failed = Vec::new();
    if n < 3 {
        failed.push(format!("n >= 3 fails: {n}"));
    }
    if !eps.is_positive() {
        failed.push(format!("eps > 0 fails: {eps}"));
    }
    let two_a = Rat::int(2) * a;
    if b <= &two_a {
        failed.push(format!("b > 2a fails: {b} vs {two_a}"));
    }
    let gap = &two_a + b - r;
    let two_eps = Rat::int(2) * eps;
    if two_eps >= gap {
        failed.push(format!("2*eps < 2a + b - R fails: {two_eps} vs {gap}"));
    }
    let low = a + b;
    if r <= &low {
        failed.push(format!("a + b < R fails: {low} vs {r}"));
    }
    if !failed.is_empty() {
        return Err(CurveError::HypothesisViolated { failed });
    }
    let weight = a - eps;
    let high = r;
    let mut solutions = Vec::new();
    let mut m = vec![0u32; n];
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        idx: usize,
        used: u32,
        value: Rat,
        m: &mut Vec<u32>,
        mult_cap: u32,
        weights: &dyn Fn(usize) -> Rat,
        low: &Rat,
        high: &Rat,
        out: &mut Vec<Vec<u32>>,
    ) {
        if idx == m.len() {
            if &value >= low && &value <= high {
                out.push(m.clone());
            }
            return;
        }
        for mi in 0..=(mult_cap - used) {
            m[idx] = mi;
            recurse(
                idx + 1,
                used + mi,
                &value + Rat::from(mi) * weights(idx),
                m,
                mult_cap,
                weights,
                low,
                high,
                out,
            );
        }
        m[idx] = 0;
    }
    let weights = |idx: usize| match idx {
        0 => a.clone(),
        2 => b.clone(),
        _ => weight.clone(),
    };
    recurse(0, 0, Rat::zero(), &mut m, mult_cap, &weights, &low, high, &mut solutions);
    let mut expected = vec![0u32; n];
    expected[0] = 1;
    expected[2] = 1;
    let verdict = if solutions == vec![expected.clone()] {
        Verdict::Confirmed
    } else if solutions.is_empty() {
        Verdict::Refuted { witness: "no multiplicity vector reaches the window".into() }
    } else {
        let stray = solutions.iter().find(|s| **s != expected);
        match stray {
            Some(s) => Verdict::Refuted { witness: format!("unexpected solution {s:?}") },
            None => Verdict::Refuted { witness: "expected solution missing".into() },
        }
    };
    let notes = vec![
        format!("window [{low}, {high}], off-axis weight {weight}, cap {mult_cap}"),
    ];
    Ok(EndVectorReport { solutions, verdict, notes })
}

/// One allowed or excluded single end in the ellipsoid analysis.
#[derive(Debug, Clone, Serialize)]
pub struct EndRow {
    pub orbit: String,
    pub cz: Rat,
    pub index: Rat,
    pub condition: String,
}

/// Classification of single negative ends of an index >= -1, degree-1
/// curve in the capped complement of an ellipsoid.
#[derive(Debug, Clone, Serialize)]
pub struct EllipsoidEndReport {
    /// Coefficients after sorting ascending.
    pub coeffs: Vec<Rat>,
    pub allowed: Vec<EndRow>,
    pub excluded: Vec<EndRow>,
    /// Index ceiling for any configuration with two or more ends: `4 - 2n`.
    pub multi_end_bound: Rat,
    /// Smallest action among allowed ends beyond the simple `d^1`:
    /// `min(2*c_1, c_2)`.
    pub min_action_beyond_simple: Rat,
    /// `2*c_1 = c_2` exactly: the 2-vs-1 dichotomy degenerates.
    pub boundary: bool,
    pub notes: Vec<String>,
}

/// For a degree-1 curve with ends on an ellipsoid boundary and index at
/// least -1: a single end must be `d^1`, `d^1*2` (iff `2c_1 < c_2`), or
/// `d^2` (iff `c_2 < 2c_1`), and two or more ends are impossible since
/// each contributes Conley-Zehnder index at least `n + 1`.
pub fn ellipsoid_end_analysis(e: &Domain) -> Result<EllipsoidEndReport, CurveError> {
    let Domain::Ellipsoid { coeffs } = e else {
        return Err(CurveError::UnsupportedDomain(e.kind().to_owned()));
    };
    let n = coeffs.len();
    if n < 3 {
        return Err(CurveError::HypothesisViolated { failed: vec![format!("n >= 3 fails: {n}")] });
    }
    let mut sorted = coeffs.clone();
    sorted.sort();
    let domain = Domain::ellipsoid(sorted.clone())?;
    let n_i = n as i64;
    // A single end d^k*r has cz >= 2r + n - 1, so index >= -1 (cz <= n + 4)
    // forces r <= 2: the candidate list below is exhaustive.
    let mut allowed = Vec::new();
    let mut excluded = Vec::new();
    for r in 1..=2u32 {
        for k in 1..=n {
            let orbit = ReebOrbit::EllipsoidClosed { axis: k, mult: r };
            let cz = reeb::cz_index(&orbit, &domain, &POLICY)?.value;
            let index = Rat::int(n_i - 3 + 6) - &cz;
            let condition = match (r, k) {
                (1, 1) => "always".to_owned(),
                (2, 1) => "2*c1 < c2".to_owned(),
                (1, 2) => "c2 < 2*c1".to_owned(),
                _ => "never".to_owned(),
            };
            let row = EndRow { orbit: orbit.to_string(), cz, index: index.clone(), condition };
            if index >= Rat::int(-1) {
                allowed.push(row);
            } else {
                excluded.push(row);
            }
        }
    }
    let two_c1 = Rat::int(2) * &sorted[0];
    let boundary = two_c1 == sorted[1];
    let min_action_beyond_simple = two_c1.min(sorted[1].clone());
    let multi_end_bound = Rat::int(4 - 2 * n_i);
    let mut notes = vec![format!(
        "any s >= 2 configuration has index at most {multi_end_bound} (each end has cz >= n+1)"
    )];
    if boundary {
        notes.push("boundary: 2*c1 = c2 exactly; both double-type ends sit on a floor edge".into());
    }
    Ok(EllipsoidEndReport {
        coeffs: sorted,
        allowed,
        excluded,
        multi_end_bound,
        min_action_beyond_simple,
        boundary,
        notes,
    })
}

/// Run the plane classification over a parameter grid, one tuple per
/// worker. Tuples are (b, tail, R); report order matches input order.
pub fn plane_classification_grid(
    tuples: &[(Rat, Vec<Rat>, Rat)],
) -> Vec<Result<CaseReport, CurveError>> {
    crate::exec::map_indexed(tuples.len(), |i| {
        let (b, tail, r) = &tuples[i];
        check_plane_classification(b, tail, r)
    })
}

/// Sequential twin of [`plane_classification_grid`]; identical output.
pub fn plane_classification_grid_seq(
    tuples: &[(Rat, Vec<Rat>, Rat)],
) -> Vec<Result<CaseReport, CurveError>> {
    crate::exec::map_indexed_seq(tuples.len(), |i| {
        let (b, tail, r) = &tuples[i];
        check_plane_classification(b, tail, r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn q_sample() -> Domain {
        Domain::polylike(rat("3/2"), vec![rat("1"), rat("11/5")]).unwrap()
    }

    fn orbit(label: &str) -> ReebOrbit {
        label.parse().unwrap()
    }

    fn plane(domain: &Domain, r: &str, end: &str) -> CurveClass {
        CurveClass::cap(domain.clone(), rat(r), 1, vec![orbit(end)]).unwrap()
    }

    #[test]
    fn area_worked_values() {
        let d = q_sample();
        let c = plane(&d, "31/10", "g^2_{1,1}");
        assert_eq!(curve_area(&c).unwrap(), rat("3/5"));
        let closed = CurveClass::cap(d.clone(), rat("31/10"), 1, vec![]).unwrap();
        assert_eq!(curve_area(&closed).unwrap(), rat("31/10"));
        let ghost = CurveClass::cap(d.clone(), rat("31/10"), 0, vec![orbit("g^1*1")]).unwrap();
        assert_eq!(curve_area(&ghost).unwrap(), rat("-3/2"));
        let symp =
            CurveClass::symplectization(d, vec![orbit("g^1*2")], vec![orbit("g^2_{1,1}")]).unwrap();
        assert!(matches!(curve_area(&symp), Err(CurveError::SymplectizationAmbient)));
    }

    #[test]
    fn index_calibration() {
        let d = q_sample();
        assert_eq!(virtual_index(&plane(&d, "31/10", "g^2_{1,1}")).unwrap(), rat("1"));
        assert_eq!(virtual_index(&plane(&d, "31/10", "g^1*2")).unwrap(), rat("0"));
        assert_eq!(virtual_index(&plane(&d, "29/10", "g^2*2")).unwrap(), rat("0"));
        let cyl = |neg: &str| {
            CurveClass::symplectization(d.clone(), vec![orbit("g^1*2")], vec![orbit(neg)]).unwrap()
        };
        assert_eq!(virtual_index(&cyl("g^2_{1,1}")).unwrap(), rat("1"));
        assert_eq!(virtual_index(&cyl("g^2*3")).unwrap(), rat("-4"));
    }

    #[test]
    fn constrained_index_pins_families() {
        let d = q_sample();
        let p = plane(&d, "31/10", "g^2_{1,1}");
        assert_eq!(constrained_index(&p, &orbit("g^2_{1,1}")).unwrap(), rat("0"));
        let p2 = plane(&d, "31/10", "g^1*2");
        assert_eq!(constrained_index(&p2, &orbit("g^1*2")).unwrap(), rat("0"));
        assert!(matches!(
            constrained_index(&p2, &orbit("g^2*1")),
            Err(CurveError::EndNotPresent(_))
        ));
        let cyl = CurveClass::symplectization(
            d,
            vec![orbit("g^1*2")],
            vec![orbit("g^2_{1,1}")],
        )
        .unwrap();
        assert_eq!(constrained_index(&cyl, &orbit("g^2_{1,1}")).unwrap(), rat("0"));
    }

    #[test]
    fn enumeration_matches_classification_windows() {
        let d = q_sample();
        let q = CurveQuery::new(1, rat("1")).with_index_min(-1);
        let ends_at = |r: &str| {
            enumerate_cap_curves(&d, &rat(r), &q)
                .unwrap()
                .iter()
                .map(|c| c.class.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(ends_at("31/10"), vec!["cap d=1 neg[g^1*2]", "cap d=1 neg[g^2_{1,1}]"]);
        assert_eq!(ends_at("29/10"), vec!["cap d=1 neg[g^2_{1,1}]", "cap d=1 neg[g^2*2]"]);
        // Window too tight for anything.
        let empty = CurveQuery::new(1, rat("1/100"));
        assert!(enumerate_cap_curves(&d, &rat("31/10"), &empty).unwrap().is_empty());
        // Degree 0 and oversized degrees are rejected.
        assert!(matches!(
            enumerate_cap_curves(&d, &rat("3"), &CurveQuery::new(0, rat("1"))),
            Err(CurveError::BadQuery(_))
        ));
        assert!(matches!(
            enumerate_cap_curves(&d, &rat("3"), &CurveQuery::new(MAX_DEGREE + 1, rat("1"))),
            Err(CurveError::BadQuery(_))
        ));
    }

    #[test]
    fn closed_curves_enter_enumeration() {
        let d = q_sample();
        // Wide-open area window at degree 1 includes the end-free curve of
        // area R.
        let q = CurveQuery::new(1, rat("31/10"));
        let curves = enumerate_cap_curves(&d, &rat("31/10"), &q).unwrap();
        assert!(curves.iter().any(|c| c.class.negative_ends.is_empty()));
        let closed = curves.iter().find(|c| c.class.negative_ends.is_empty()).unwrap();
        assert_eq!(closed.area, rat("31/10"));
        assert_eq!(closed.index, rat("6"));
    }

    #[test]
    fn low_area_species_worked_examples() {
        let ok = check_low_area_end_species(&rat("3/2"), &[rat("1"), rat("11/5")], &rat("31/10"))
            .unwrap();
        assert_eq!(ok.verdict, Verdict::Confirmed);
        let ok2 = check_low_area_end_species(&rat("3/2"), &[rat("1"), rat("11/5")], &rat("29/10"))
            .unwrap();
        assert_eq!(ok2.verdict, Verdict::Confirmed);
        let edge = check_low_area_end_species(&rat("3/2"), &[rat("1"), rat("2")], &rat("31/10"))
            .unwrap();
        assert!(matches!(edge.verdict, Verdict::BoundaryAmbiguous { .. }));
        assert!(matches!(
            check_low_area_end_species(&rat("3/2"), &[rat("2"), rat("5")], &rat("4")),
            Err(CurveError::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn plane_classification_worked_examples() {
        let a = check_plane_classification(&rat("3/2"), &[rat("1"), rat("11/5")], &rat("31/10"))
            .unwrap();
        assert_eq!(a.verdict, Verdict::Confirmed);
        assert!(a.notes[0].contains("g^1*2") && a.notes[0].contains("g^2_{1,1}"));
        assert!(!a.notes[0].contains("g^2*2"));
        let b = check_plane_classification(&rat("3/2"), &[rat("1"), rat("11/5")], &rat("29/10"))
            .unwrap();
        assert_eq!(b.verdict, Verdict::Confirmed);
        assert!(b.notes[0].contains("g^2*2") && b.notes[0].contains("g^2_{1,1}"));
        assert!(!b.notes[0].contains("g^1*2"));
    }

    #[test]
    fn elliptic_end_bound_table() {
        let b = elliptic_end_index_bound(3, 2).unwrap();
        assert_eq!((b.bound, b.allowed), (rat("-2"), false));
        let b = elliptic_end_index_bound(3, 1).unwrap();
        assert_eq!((b.bound, b.allowed), (rat("2"), true));
        let b = elliptic_end_index_bound(5, 2).unwrap();
        assert_eq!((b.bound, b.allowed), (rat("-6"), false));
        assert!(elliptic_end_index_bound(2, 1).is_err());
    }

    #[test]
    fn compactness_worked_examples() {
        for (b, tail, r) in [
            ("3/2", vec!["1", "11/5"], "31/10"),
            ("1", vec!["4/5", "9/5"], "14/5"),
            ("3/2", vec!["1", "11/5"], "29/10"),
        ] {
            let tail: Vec<Rat> = tail.into_iter().map(rat).collect();
            let report = compactness_exclusions(&rat(b), &tail, &rat(r)).unwrap();
            assert_eq!(report.verdict, Verdict::Confirmed, "({b}, {r}): {:?}", report.notes);
        }
        // 29/10 < 2b: scenario branches must be reported vacuous.
        let rep = compactness_exclusions(&rat("3/2"), &[rat("1"), rat("11/5")], &rat("29/10"))
            .unwrap();
        assert!(rep.notes.iter().any(|n| n.contains("vacuous")));
    }

    #[test]
    fn polydisk_solver_worked_examples() {
        for n in [4usize, 6] {
            let rep =
                polydisk_end_solver(&rat("1"), &rat("11/5"), &rat("1/20"), &rat("33/10"), n, 3)
                    .unwrap();
            assert_eq!(rep.verdict, Verdict::Confirmed);
            let mut expected = vec![0u32; n];
            expected[0] = 1;
            expected[2] = 1;
            assert_eq!(rep.solutions, vec![expected]);
        }
        assert!(matches!(
            polydisk_end_solver(&rat("1"), &rat("21/10"), &rat("1/20"), &rat("41/10"), 4, 3),
            Err(CurveError::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn ellipsoid_end_worked_examples() {
        let e = Domain::ellipsoid(vec![rat("2"), rat("5"), rat("13")]).unwrap();
        let rep = ellipsoid_end_analysis(&e).unwrap();
        let allowed: Vec<&str> = rep.allowed.iter().map(|r| r.orbit.as_str()).collect();
        assert_eq!(allowed, vec!["d^1*1", "d^1*2"]);
        assert_eq!(rep.allowed[0].index, rat("2"));
        assert_eq!(rep.allowed[1].index, rat("0"));
        assert!(rep.excluded.iter().any(|r| r.orbit == "d^2*1" && r.index == rat("-2")));
        assert_eq!(rep.min_action_beyond_simple, rat("4"));
        assert!(!rep.boundary);

        let e = Domain::ellipsoid(vec![rat("2"), rat("3"), rat("13")]).unwrap();
        let rep = ellipsoid_end_analysis(&e).unwrap();
        let allowed: Vec<&str> = rep.allowed.iter().map(|r| r.orbit.as_str()).collect();
        assert_eq!(allowed, vec!["d^1*1", "d^2*1"]);
        assert_eq!(rep.min_action_beyond_simple, rat("3"));

        let e = Domain::ellipsoid(vec![rat("2"), rat("4"), rat("13")]).unwrap();
        assert!(ellipsoid_end_analysis(&e).unwrap().boundary);

        assert_eq!(ellipsoid_end_analysis(&e).unwrap().multi_end_bound, rat("-2"));
    }

    #[test]
    fn grid_runner_parallel_matches_seq() {
        let tuples: Vec<(Rat, Vec<Rat>, Rat)> = vec![
            (rat("3/2"), vec![rat("1"), rat("11/5")], rat("31/10")),
            (rat("3/2"), vec![rat("1"), rat("11/5")], rat("29/10")),
            (rat("2"), vec![rat("3/2"), rat("16/5")], rat("4")),
        ];
        let par = plane_classification_grid(&tuples);
        let seq = plane_classification_grid_seq(&tuples);
        assert_eq!(par.len(), seq.len());
        for (p, s) in par.iter().zip(&seq) {
            match (p, s) {
                (Ok(a), Ok(b)) => {
                    assert_eq!(a.verdict, b.verdict);
                    assert_eq!(a.notes, b.notes);
                }
                (Err(a), Err(b)) => assert_eq!(a, b),
                _ => panic!("parallel and sequential runs disagree"),
            }
        }
    }

    #[test]
    fn extra_end_shrinks_area_and_index() {
        let d = q_sample();
        let base = plane(&d, "31/10", "g^2_{1,1}");
        let more = CurveClass::cap(
            d.clone(),
            rat("31/10"),
            1,
            vec![orbit("g^2_{1,1}"), orbit("g^2*1")],
        )
        .unwrap();
        assert!(curve_area(&more).unwrap() < curve_area(&base).unwrap());
        assert!(virtual_index(&more).unwrap() < virtual_index(&base).unwrap());
    }
}
