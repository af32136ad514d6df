//! Toric domain types and exact geometry on them.
//!
//! All domains here are toric: they are determined by their moment image in
//! the orthant of action coordinates `R_j = pi |z_j|^2`. That makes volumes,
//! inclusions, and scalings exact rational computations on the moment
//! polytope. Conventions:
//!
//! * `Ellipsoid([c_1..c_n])`: `sum R_j / c_j <= 1`.
//! * `Polydisk([a_1..a_n])`: `R_j <= a_j` for every `j`.
//! * `Polylike { b, tail }`: disk times ellipsoid, `R_1 <= b` and
//!   `sum_{j>=2} R_j / a_j <= 1`; `tail[0]` is `a_2`.
//! * `TruncatedEllipsoid`: four-dimensional ellipsoid piece
//!   `{ R_1/A + R_2/B <= 1, R_axis >= cut }`.
//! * `BallProduct { r, n }`: `B^4(r) x R^{2(n-2)}`, i.e. `R_1 + R_2 <= r`
//!   with the remaining coordinates unconstrained.
//!
//! Inclusion verdicts distinguish interior containment from boundary
//! contact: several source constructions need open targets, so a tie is
//! surfaced as [`InclusionVerdict::Boundary`] instead of silently counting
//! as inside.

use crate::rat::Rat;
use serde::{Deserialize, Serialize};
use std::fmt;

pub const GENERICITY_DEFAULT_BOUND: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("coefficient list must be nonempty")]
    Empty,
    #[error("coefficient {0} must be positive")]
    NonPositive(Rat),
    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { min: usize, got: usize },
    #[error("dimension mismatch: outer has {outer} complex coordinates, inner has {inner}")]
    DimensionMismatch { outer: usize, inner: usize },
    #[error("inclusion test not supported for this pair: {outer} over {inner}")]
    UnsupportedPair { outer: String, inner: String },
    #[error("truncation axis must be 1 or 2, got {0}")]
    BadAxis(u8),
    #[error("cut {cut} must satisfy 0 <= cut < {limit} (the truncated axis coefficient)")]
    BadCut { cut: Rat, limit: Rat },
    #[error("scale factor {0} must be positive")]
    BadScale(Rat),
}

/// A toric domain in `C^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Domain {
    Ellipsoid { coeffs: Vec<Rat> },
    Polydisk { widths: Vec<Rat> },
    Polylike { b: Rat, tail: Vec<Rat> },
    TruncatedEllipsoid { base: [Rat; 2], axis: u8, cut: Rat },
    BallProduct { r: Rat, n: usize },
}

/// Infinite volumes arise only for `BallProduct`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Volume {
    Finite(Rat),
    Infinite,
}

/// Outcome of an exact inclusion test `inner subseteq outer`.
///
/// `Inside` carries the minimum slack over the binding inequalities.
/// `Boundary` means the inclusion holds but some inequality is tight, so the
/// inner domain touches the outer boundary and inclusion into the open
/// interior fails. `Outside` carries a witness inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum InclusionVerdict {
    Inside { margin: Rat },
    Boundary,
    Outside { witness: InclusionWitness },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionWitness {
    /// Human-readable statement of the violated inequality.
    pub constraint: String,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl InclusionVerdict {
    pub fn holds(&self) -> bool {
        !matches!(self, InclusionVerdict::Outside { .. })
    }

    pub fn is_inside(&self) -> bool {
        matches!(self, InclusionVerdict::Inside { .. })
    }

    fn from_slacks(slacks: Vec<(String, Rat, Rat)>) -> InclusionVerdict {
        // Each entry is (constraint text, lhs, rhs) for an inequality lhs <= rhs.
        let mut min_margin: Option<Rat> = None;
        for (constraint, lhs, rhs) in slacks {
            let margin = &rhs - &lhs;
            if margin.is_negative() {
                return InclusionVerdict::Outside {
                    witness: InclusionWitness { constraint, lhs, rhs },
                };
            }
            min_margin = Some(match min_margin {
                None => margin,
                Some(m) => m.min(margin),
            });
        }
        match min_margin {
            Some(m) if m.is_zero() => InclusionVerdict::Boundary,
            Some(m) => InclusionVerdict::Inside { margin: m },
            None => InclusionVerdict::Boundary,
        }
    }
}

/// One genericity problem found by [`genericity_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericityViolation {
    pub description: String,
    /// 1-based coordinate indices involved.
    pub axes: (usize, usize),
}

pub type GenericityReport = Vec<GenericityViolation>;

impl Domain {
    pub fn ellipsoid(coeffs: Vec<Rat>) -> Result<Domain, DomainError> {
        let d = Domain::Ellipsoid { coeffs };
        d.validate()?;
        Ok(d)
    }

    pub fn polydisk(widths: Vec<Rat>) -> Result<Domain, DomainError> {
        let d = Domain::Polydisk { widths };
        d.validate()?;
        Ok(d)
    }

    pub fn polylike(b: Rat, tail: Vec<Rat>) -> Result<Domain, DomainError> {
        let d = Domain::Polylike { b, tail };
        d.validate()?;
        Ok(d)
    }

    pub fn truncated_ellipsoid(base: [Rat; 2], axis: u8, cut: Rat) -> Result<Domain, DomainError> {
        let d = Domain::TruncatedEllipsoid { base, axis, cut };
        d.validate()?;
        Ok(d)
    }

    pub fn ball_product(r: Rat, n: usize) -> Result<Domain, DomainError> {
        let d = Domain::BallProduct { r, n };
        d.validate()?;
        Ok(d)
    }

    /// A four-dimensional ball `B^4(r)`, represented as the round ellipsoid.
    pub fn ball4(r: Rat) -> Result<Domain, DomainError> {
        Domain::ellipsoid(vec![r.clone(), r])
    }

    pub fn validate(&self) -> Result<(), DomainError> {
        match self {
            Domain::Ellipsoid { coeffs } => positive_list(coeffs),
            Domain::Polydisk { widths } => positive_list(widths),
            Domain::Polylike { b, tail } => {
                if !b.is_positive() {
                    return Err(DomainError::NonPositive(b.clone()));
                }
                positive_list(tail)
            }
            Domain::TruncatedEllipsoid { base, axis, cut } => {
                positive_list(base.as_slice())?;
                if *axis != 1 && *axis != 2 {
                    return Err(DomainError::BadAxis(*axis));
                }
                let limit = &base[usize::from(*axis) - 1];
                if cut.is_negative() || cut >= limit {
                    return Err(DomainError::BadCut { cut: cut.clone(), limit: limit.clone() });
                }
                Ok(())
            }
            Domain::BallProduct { r, n } => {
                if !r.is_positive() {
                    return Err(DomainError::NonPositive(r.clone()));
                }
                if *n < 2 {
                    return Err(DomainError::DimensionTooSmall { min: 2, got: *n });
                }
                Ok(())
            }
        }
    }

    /// Number of complex coordinates.
    pub fn dimension(&self) -> usize {
        match self {
            Domain::Ellipsoid { coeffs } => coeffs.len(),
            Domain::Polydisk { widths } => widths.len(),
            Domain::Polylike { tail, .. } => tail.len() + 1,
            Domain::TruncatedEllipsoid { .. } => 2,
            Domain::BallProduct { n, .. } => *n,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Domain::Ellipsoid { .. } => "ellipsoid",
            Domain::Polydisk { .. } => "polydisk",
            Domain::Polylike { .. } => "polylike",
            Domain::TruncatedEllipsoid { .. } => "truncated_ellipsoid",
            Domain::BallProduct { .. } => "ball_product",
        }
    }

    /// Exact membership of a point given in action coordinates
    /// `(R_1..R_n)`, `R_j >= 0`. This evaluates the defining inequalities
    /// directly and is deliberately independent of [`includes`], so the two
    /// can cross-check each other.
    pub fn contains_point(&self, point: &[Rat]) -> bool {
        if point.len() != self.dimension() || point.iter().any(Rat::is_negative) {
            return false;
        }
        match self {
            Domain::Ellipsoid { coeffs } => {
                let s: Rat = point.iter().zip(coeffs).map(|(r, c)| r / c).sum();
                s <= Rat::one()
            }
            Domain::Polydisk { widths } => point.iter().zip(widths).all(|(r, a)| r <= a),
            Domain::Polylike { b, tail } => {
                if &point[0] > b {
                    return false;
                }
                let s: Rat = point[1..].iter().zip(tail).map(|(r, a)| r / a).sum();
                s <= Rat::one()
            }
            Domain::TruncatedEllipsoid { base, axis, cut } => {
                let s = &point[0] / &base[0] + &point[1] / &base[1];
                s <= Rat::one() && point[usize::from(*axis) - 1] >= *cut
            }
            Domain::BallProduct { r, .. } => &point[0] + &point[1] <= *r,
        }
    }

    /// Per-coordinate bounding box of the moment image; `None` on
    /// unconstrained coordinates.
    pub fn bounding_box(&self) -> Vec<Option<Rat>> {
        match self {
            Domain::Ellipsoid { coeffs } => coeffs.iter().cloned().map(Some).collect(),
            Domain::Polydisk { widths } => widths.iter().cloned().map(Some).collect(),
            Domain::Polylike { b, tail } => std::iter::once(Some(b.clone()))
                .chain(tail.iter().cloned().map(Some))
                .collect(),
            Domain::TruncatedEllipsoid { base, .. } => {
                vec![Some(base[0].clone()), Some(base[1].clone())]
            }
            Domain::BallProduct { r, n } => {
                let mut v = vec![Some(r.clone()), Some(r.clone())];
                v.extend(std::iter::repeat_n(None, n - 2));
                v
            }
        }
    }
}

fn positive_list(coeffs: &[Rat]) -> Result<(), DomainError> {
    if coeffs.is_empty() {
        return Err(DomainError::Empty);
    }
    for c in coeffs {
        if !c.is_positive() {
            return Err(DomainError::NonPositive(c.clone()));
        }
    }
    Ok(())
}

fn factorial(n: usize) -> Rat {
    let mut acc = Rat::one();
    for k in 2..=n {
        acc = acc * Rat::int(k as i64);
    }
    acc
}

/// Exact Euclidean volume. For a toric domain this is the area/volume of the
/// moment image, so every case is a closed-form rational.
pub fn volume(d: &Domain) -> Volume {
    match d {
        Domain::Ellipsoid { coeffs } => {
            let prod = coeffs.iter().fold(Rat::one(), |acc, c| acc * c);
            Volume::Finite(prod / factorial(coeffs.len()))
        }
        Domain::Polydisk { widths } => {
            Volume::Finite(widths.iter().fold(Rat::one(), |acc, c| acc * c))
        }
        Domain::Polylike { b, tail } => {
            let prod = tail.iter().fold(Rat::one(), |acc, c| acc * c);
            Volume::Finite(b * prod / factorial(tail.len()))
        }
        Domain::TruncatedEllipsoid { base, axis, cut } => {
            // Moment image is the triangle with legs (A, B) cut by
            // R_axis >= cut; the remainder is a similar triangle scaled by
            // (1 - cut/limit).
            let limit = &base[usize::from(*axis) - 1];
            let scale = Rat::one() - cut / limit;
            let full = &base[0] * &base[1] / Rat::int(2);
            Volume::Finite(full * scale.pow(2))
        }
        Domain::BallProduct { .. } => Volume::Infinite,
    }
}

/// Multiply every linear dimension of the moment image by `factor`.
pub fn scale(d: &Domain, factor: &Rat) -> Result<Domain, DomainError> {
    if !factor.is_positive() {
        return Err(DomainError::BadScale(factor.clone()));
    }
    let scaled = match d {
        Domain::Ellipsoid { coeffs } => Domain::Ellipsoid {
            coeffs: coeffs.iter().map(|c| c * factor).collect(),
        },
        Domain::Polydisk { widths } => Domain::Polydisk {
            widths: widths.iter().map(|c| c * factor).collect(),
        },
        Domain::Polylike { b, tail } => Domain::Polylike {
            b: b * factor,
            tail: tail.iter().map(|c| c * factor).collect(),
        },
        Domain::TruncatedEllipsoid { base, axis, cut } => Domain::TruncatedEllipsoid {
            base: [&base[0] * factor, &base[1] * factor],
            axis: *axis,
            cut: cut * factor,
        },
        Domain::BallProduct { r, n } => Domain::BallProduct { r: r * factor, n: *n },
    };
    Ok(scaled)
}

fn check_dims(outer: &Domain, inner: &Domain) -> Result<(), DomainError> {
    let (o, i) = (outer.dimension(), inner.dimension());
    if o != i {
        return Err(DomainError::DimensionMismatch { outer: o, inner: i });
    }
    Ok(())
}

/// Supremum of `R_1 + R_2` over the domain, when finite. This is the exact
/// criterion value for inclusion into `BallProduct` targets.
fn sup_r1_plus_r2(d: &Domain) -> Option<Rat> {
    match d {
        // Linear functional over a simplex: maximum over vertices c_j e_j,
        // and only the first two vertices contribute.
        Domain::Ellipsoid { coeffs } => Some(match coeffs.get(1) {
            Some(c2) => coeffs[0].clone().max(c2.clone()),
            None => coeffs[0].clone(),
        }),
        Domain::Polydisk { widths } => Some(&widths[0] + &widths[1]),
        // R_1 <= b is independent of the tail ellipsoid; within the tail
        // the maximum of R_2 alone is a_2.
        Domain::Polylike { b, tail } => Some(b + &tail[0]),
        Domain::BallProduct { r, .. } => Some(r.clone()),
        Domain::TruncatedEllipsoid { .. } => None,
    }
}

/// Exact inclusion test `inner subseteq outer` over the supported pairs.
///
/// Supported outer/inner combinations: ellipsoid over ellipsoid, polydisk,
/// polylike, or truncated ellipsoid; polydisk over polydisk or polylike;
/// ball product over ellipsoid, polydisk, polylike, or ball product.
/// Everything else is `UnsupportedPair`.
pub fn includes(outer: &Domain, inner: &Domain) -> Result<InclusionVerdict, DomainError> {
    outer.validate()?;
    inner.validate()?;
    match (outer, inner) {
        (Domain::Ellipsoid { coeffs: big }, Domain::Ellipsoid { coeffs: small }) => {
            check_dims(outer, inner)?;
            // Coordinatewise: sup over E(small) of sum R_j/big_j equals
            // max_j small_j/big_j, so inclusion iff small_j <= big_j for all j.
            let slacks = small
                .iter()
                .zip(big)
                .enumerate()
                .map(|(j, (s, b))| (format!("coefficient {} <= {} on axis {}", s, b, j + 1), s.clone(), b.clone()))
                .collect();
            Ok(InclusionVerdict::from_slacks(slacks))
        }
        (Domain::Ellipsoid { coeffs }, Domain::Polydisk { widths }) => {
            check_dims(outer, inner)?;
            // The polydisk corner (a_1..a_n) is the extreme point.
            let lhs: Rat = widths.iter().zip(coeffs).map(|(a, c)| a / c).sum();
            Ok(InclusionVerdict::from_slacks(vec![(
                format!("sum of width/coefficient ratios = {lhs} <= 1"),
                lhs,
                Rat::one(),
            )]))
        }
        (Domain::Ellipsoid { coeffs }, Domain::Polylike { b, tail }) => {
            check_dims(outer, inner)?;
            // sup over the disk x ellipsoid of sum R_j/c_j splits as
            // b/c_1 plus a simplex maximum over the tail.
            let tail_max = tail
                .iter()
                .zip(&coeffs[1..])
                .map(|(a, c)| a / c)
                .max()
                .expect("nonempty tail");
            let lhs = b / &coeffs[0] + tail_max;
            Ok(InclusionVerdict::from_slacks(vec![(
                format!("disk/coefficient plus max tail ratio = {lhs} <= 1"),
                lhs,
                Rat::one(),
            )]))
        }
        (Domain::Ellipsoid { coeffs }, Domain::TruncatedEllipsoid { base, axis, cut }) => {
            check_dims(outer, inner)?;
            // Linear form R_1/c_1 + R_2/c_2 over the cut triangle attains its
            // maximum at a vertex of the cut region.
            let (c1, c2) = (&coeffs[0], &coeffs[1]);
            let (big_a, big_b) = (&base[0], &base[1]);
            let vertices: Vec<[Rat; 2]> = if *axis == 2 {
                // Region {R_1/A + R_2/B <= 1, R_2 >= cut}.
                vec![
                    [Rat::zero(), big_b.clone()],
                    [Rat::zero(), cut.clone()],
                    [big_a * (Rat::one() - cut / big_b), cut.clone()],
                ]
            } else {
                vec![
                    [big_a.clone(), Rat::zero()],
                    [cut.clone(), Rat::zero()],
                    [cut.clone(), big_b * (Rat::one() - cut / big_a)],
                ]
            };
            let lhs = vertices
                .into_iter()
                .map(|[r1, r2]| r1 / c1 + r2 / c2)
                .max()
                .expect("vertex list nonempty");
            Ok(InclusionVerdict::from_slacks(vec![(
                format!("supremum of the target linear form over the cut region = {lhs} <= 1"),
                lhs,
                Rat::one(),
            )]))
        }
        (Domain::Polydisk { widths: big }, Domain::Polydisk { widths: small }) => {
            check_dims(outer, inner)?;
            let slacks = small
                .iter()
                .zip(big)
                .enumerate()
                .map(|(j, (s, b))| (format!("width {} <= {} on axis {}", s, b, j + 1), s.clone(), b.clone()))
                .collect();
            Ok(InclusionVerdict::from_slacks(slacks))
        }
        (Domain::Polydisk { widths }, Domain::Polylike { b, tail }) => {
            check_dims(outer, inner)?;
            // Coordinatewise: sup of R_1 is b, sup of R_j is a_j.
            let mut slacks = vec![(format!("disk capacity {} <= {}", b, widths[0]), b.clone(), widths[0].clone())];
            for (j, (a, w)) in tail.iter().zip(&widths[1..]).enumerate() {
                slacks.push((format!("tail coefficient {} <= {} on axis {}", a, w, j + 2), a.clone(), w.clone()));
            }
            Ok(InclusionVerdict::from_slacks(slacks))
        }
        (Domain::BallProduct { r, .. }, _) => {
            check_dims(outer, inner)?;
            let lhs = sup_r1_plus_r2(inner).ok_or_else(|| DomainError::UnsupportedPair {
                outer: outer.kind().to_owned(),
                inner: inner.kind().to_owned(),
            })?;
            Ok(InclusionVerdict::from_slacks(vec![(
                format!("sup(R_1 + R_2) = {lhs} <= {r}"),
                lhs,
                r.clone(),
            )]))
        }
        _ => Err(DomainError::UnsupportedPair {
            outer: outer.kind().to_owned(),
            inner: inner.kind().to_owned(),
        }),
    }
}

/// Scan for rational relations that put index formulas at floor boundaries
/// within the multiplicity range `1..bound` (exclusive upper end), plus
/// exact hypothesis-boundary relations between coefficients.
pub fn genericity_check(d: &Domain, bound: u32) -> GenericityReport {
    let mut report = Vec::new();
    let pairwise = |coeffs: &[Rat], offset: usize, report: &mut GenericityReport| {
        for (i, ci) in coeffs.iter().enumerate() {
            for (j, cj) in coeffs.iter().enumerate() {
                if i == j {
                    continue;
                }
                for r in 1..bound {
                    let v = Rat::int(i64::from(r)) * ci / cj;
                    if v.is_integer() {
                        report.push(GenericityViolation {
                            description: format!(
                                "{} * coefficient {} / coefficient {} = {} is an integer (floor boundary within multiplicity {})",
                                r,
                                i + 1 + offset,
                                j + 1 + offset,
                                v,
                                bound,
                            ),
                            axes: (i + 1 + offset, j + 1 + offset),
                        });
                        break;
                    }
                }
            }
        }
    };
    match d {
        Domain::Ellipsoid { coeffs } => pairwise(coeffs, 0, &mut report),
        Domain::Polydisk { widths } => {
            pairwise(widths, 0, &mut report);
            // Hypothesis boundary of the higher-coordinate window: a_j = 2 a_1.
            for (j, a) in widths.iter().enumerate().skip(2) {
                if *a == Rat::int(2) * &widths[0] {
                    report.push(GenericityViolation {
                        description: format!(
                            "width on axis {} equals exactly twice the width on axis 1 (hypothesis boundary)",
                            j + 1
                        ),
                        axes: (j + 1, 1),
                    });
                }
            }
        }
        Domain::Polylike { tail, .. } => {
            // Only tail ratios enter floor terms; the disk direction
            // contributes infinitesimal floors only.
            pairwise(tail, 1, &mut report);
            for (idx, a) in tail.iter().enumerate().skip(1) {
                if *a == Rat::int(2) * &tail[0] {
                    report.push(GenericityViolation {
                        description: format!(
                            "tail coefficient on axis {} equals exactly 2 a_2 (hypothesis boundary)",
                            idx + 2
                        ),
                        axes: (idx + 2, 2),
                    });
                }
            }
        }
        Domain::TruncatedEllipsoid { base, .. } => pairwise(base.as_slice(), 0, &mut report),
        Domain::BallProduct { .. } => {}
    }
    report
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Ellipsoid { coeffs } => write!(f, "E({})", join(coeffs)),
            Domain::Polydisk { widths } => write!(f, "P({})", join(widths)),
            Domain::Polylike { b, tail } => write!(f, "Q({}; {})", b, join(tail)),
            Domain::TruncatedEllipsoid { base, axis, cut } => {
                write!(f, "TE(E({},{}), axis {}, cut {})", base[0], base[1], axis, cut)
            }
            Domain::BallProduct { r, n } => write!(f, "B4({}) x R^{}", r, 2 * (n - 2)),
        }
    }
}

fn join(v: &[Rat]) -> String {
    v.iter().map(Rat::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn e(cs: &[&str]) -> Domain {
        Domain::ellipsoid(cs.iter().map(|s| rat(s)).collect()).unwrap()
    }

    fn p(ws: &[&str]) -> Domain {
        Domain::polydisk(ws.iter().map(|s| rat(s)).collect()).unwrap()
    }

    fn q(b: &str, tail: &[&str]) -> Domain {
        Domain::polylike(rat(b), tail.iter().map(|s| rat(s)).collect()).unwrap()
    }

    #[test]
    fn validation_rejects_degenerate_inputs() {
        assert!(Domain::ellipsoid(vec![]).is_err());
        assert!(Domain::ellipsoid(vec![rat("0")]).is_err());
        assert!(Domain::ellipsoid(vec![rat("-1")]).is_err());
        assert!(Domain::ball_product(rat("1"), 1).is_err());
        assert!(Domain::truncated_ellipsoid([rat("2"), rat("4")], 3, rat("1")).is_err());
        // cut must stay below the truncated axis coefficient
        assert!(Domain::truncated_ellipsoid([rat("2"), rat("4")], 2, rat("4")).is_err());
        assert!(Domain::truncated_ellipsoid([rat("2"), rat("4")], 2, rat("2")).is_ok());
    }

    #[test]
    fn volumes_are_exact() {
        assert_eq!(volume(&e(&["2", "4"])), Volume::Finite(rat("4")));
        assert_eq!(volume(&e(&["2", "5", "13"])), Volume::Finite(rat("65/3")));
        assert_eq!(volume(&p(&["1", "11/5"])), Volume::Finite(rat("11/5")));
        assert_eq!(volume(&q("3/2", &["1", "2"])), Volume::Finite(rat("3/2")));
        assert_eq!(volume(&Domain::ball_product(rat("4"), 3).unwrap()), Volume::Infinite);
        // Cutting E(2,4) at R_2 >= 2 leaves a similar triangle of half scale.
        let te = Domain::truncated_ellipsoid([rat("2"), rat("4")], 2, rat("2")).unwrap();
        assert_eq!(volume(&te), Volume::Finite(rat("1")));
    }

    #[test]
    fn volume_scales_with_the_right_power() {
        let d = q("3/2", &["1", "11/5"]);
        let factor = rat("7/3");
        let scaled = scale(&d, &factor).unwrap();
        let (Volume::Finite(v0), Volume::Finite(v1)) = (volume(&d), volume(&scaled)) else {
            panic!("finite volumes expected");
        };
        assert_eq!(v1, v0 * factor.pow(3));
    }

    #[test]
    fn ellipsoid_over_ellipsoid_is_coordinatewise() {
        // Equality on one axis puts the inner domain against the boundary.
        assert_eq!(includes(&e(&["4", "4"]), &e(&["2", "4"])).unwrap(), InclusionVerdict::Boundary);
        assert_eq!(
            includes(&e(&["4", "5"]), &e(&["2", "4"])).unwrap(),
            InclusionVerdict::Inside { margin: rat("1") }
        );
        assert!(matches!(
            includes(&e(&["4", "4"]), &e(&["2", "5"])).unwrap(),
            InclusionVerdict::Outside { .. }
        ));
    }

    #[test]
    fn inclusion_is_reflexive_with_zero_margin() {
        for d in [e(&["2", "4"]), p(&["1", "2"]), Domain::ball_product(rat("3"), 4).unwrap()] {
            assert_eq!(includes(&d, &d).unwrap(), InclusionVerdict::Boundary);
        }
    }

    #[test]
    fn polylike_into_ellipsoid_matches_worked_value() {
        // Q(3/2; 1, 2) against E(3, 2, 4): criterion value is exactly 1.
        let verdict = includes(&e(&["3", "2", "4"]), &q("3/2", &["1", "2"])).unwrap();
        assert_eq!(verdict, InclusionVerdict::Boundary);
        // Any strictly larger first coefficient gives interior inclusion.
        let verdict = includes(&e(&["4", "2", "4"]), &q("3/2", &["1", "2"])).unwrap();
        assert!(verdict.is_inside());
    }

    #[test]
    fn truncated_ellipsoid_into_ellipsoid_binding_value() {
        // Cut piece of E(2,4) above R_2 = 2, target E(8/5, 32/5):
        // binding vertex value is 15/16, margin 1/16.
        let te = Domain::truncated_ellipsoid([rat("2"), rat("4")], 2, rat("2")).unwrap();
        let target = e(&["8/5", "32/5"]);
        assert_eq!(includes(&target, &te).unwrap(), InclusionVerdict::Inside { margin: rat("1/16") });
    }

    #[test]
    fn ball_product_criteria() {
        let bp = |r: &str, n: usize| Domain::ball_product(rat(r), n).unwrap();
        // Polylike: sup(R_1 + R_2) = b + a_2 exactly.
        assert_eq!(includes(&bp("7/2", 3), &q("5/2", &["1", "21/10"])).unwrap(), InclusionVerdict::Boundary);
        assert!(includes(&bp("4", 3), &q("5/2", &["1", "21/10"])).unwrap().is_inside());
        // Ellipsoid: sup(R_1 + R_2) = max of the first two coefficients.
        assert!(includes(&bp("7/2", 3), &e(&["3", "2", "100"])).unwrap().is_inside());
        assert!(!includes(&bp("7/2", 3), &e(&["4", "2", "1"])).unwrap().holds());
        // Ball product nests by capacity.
        assert!(includes(&bp("4", 3), &bp("7/2", 3)).unwrap().is_inside());
        assert!(!includes(&bp("3", 3), &bp("7/2", 3)).unwrap().holds());
        assert!(includes(&bp("4", 3), &bp("4", 4)).is_err());
    }

    #[test]
    fn unsupported_pairs_error() {
        let te = Domain::truncated_ellipsoid([rat("2"), rat("4")], 2, rat("2")).unwrap();
        assert!(matches!(
            includes(&p(&["2", "4"]), &e(&["1", "1"])),
            Err(DomainError::UnsupportedPair { .. })
        ));
        assert!(matches!(
            includes(&Domain::ball_product(rat("4"), 2).unwrap(), &te),
            Err(DomainError::UnsupportedPair { .. })
        ));
    }

    #[test]
    fn genericity_flags_exact_relations() {
        // a_3 = 2 a_2 is both a floor boundary and a hypothesis boundary.
        let report = genericity_check(&q("3/2", &["1", "2"]), GENERICITY_DEFAULT_BOUND);
        assert!(report.iter().any(|v| v.description.contains("hypothesis boundary")));
        assert!(report.iter().any(|v| v.axes == (3, 2)));
        // 11/5 needs multiplicity 5 to hit an integer; the scan stops at 4.
        let report = genericity_check(&q("3/2", &["1", "11/5"]), GENERICITY_DEFAULT_BOUND);
        assert!(report.is_empty(), "unexpected: {report:?}");
        // c_2 = 2 c_1 inside an ellipsoid.
        let report = genericity_check(&e(&["2", "4"]), GENERICITY_DEFAULT_BOUND);
        assert!(!report.is_empty());
    }

    #[test]
    fn contains_point_matches_inclusion_semantics() {
        let d = q("3/2", &["1", "2"]);
        assert!(d.contains_point(&[rat("3/2"), rat("1/2"), rat("1")]));
        assert!(!d.contains_point(&[rat("8/5"), rat("0"), rat("0")]));
        assert!(!d.contains_point(&[rat("1"), rat("1"), rat("1/10")]));
        let bp = Domain::ball_product(rat("3"), 3).unwrap();
        assert!(bp.contains_point(&[rat("1"), rat("2"), rat("1000000")]));
        assert!(!bp.contains_point(&[rat("2"), rat("3/2"), rat("0")]));
    }

    #[test]
    fn json_schema_round_trips() {
        let domains = [
            e(&["2", "5", "13"]),
            p(&["1", "19/20", "11/5"]),
            q("3/2", &["1", "11/5"]),
            Domain::truncated_ellipsoid([rat("2"), rat("4")], 2, rat("2")).unwrap(),
            Domain::ball_product(rat("7/2"), 3).unwrap(),
        ];
        for d in domains {
            let js = serde_json::to_string(&d).unwrap();
            let back: Domain = serde_json::from_str(&js).unwrap();
            assert_eq!(back, d);
            // Canonical form is stable under a second round trip.
            assert_eq!(serde_json::to_string(&back).unwrap(), js);
        }
        let js = serde_json::to_string(&q("3/2", &["1", "11/5"])).unwrap();
        assert_eq!(js, r#"{"type":"polylike","b":"3/2","tail":["1","11/5"]}"#);
    }
}
