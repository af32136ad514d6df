//! Reeb orbits on smoothed toric boundaries: actions, Conley-Zehnder
//! indices, and complete bounded-action enumeration.
//!
//! Smoothing model. A polylike domain `Q(b; a_2..a_n)` has corner
//! `{R_1 = b}`; rounding it with a convex profile of slopes between
//! `epsilon` and `1/epsilon` leaves:
//!
//! * elliptic orbits `g^k*r` along each coordinate axis,
//! * one-parameter hyperbolic families `g^k_{m,q}` in the rounded corner,
//!   winding `m` times around the disk direction and `q` times around tail
//!   axis `k`.
//!
//! Smoothed polydisk boundaries instead carry torus families `g{I}_{m..}`
//! near their corners, and ellipsoid boundaries carry the closed orbits
//! `d^k*r` with no smoothing at all.
//!
//! Under [`SmoothingPolicy::InfinitesimalEpsilon`] every floor of an
//! `epsilon`-small quantity is zero and every `O(epsilon)` action correction
//! vanishes exactly; this is the default used by all downstream counts. The
//! explicit policy evaluates the same formulas at a concrete `epsilon` and
//! reports action windows instead of sharp values.

use crate::domains::Domain;
use crate::rat::Rat;
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReebError {
    #[error("orbit {orbit} does not live on the boundary of a {domain}")]
    SpeciesMismatch { orbit: String, domain: String },
    #[error("axis {axis} out of range for dimension {dimension}")]
    AxisOutOfRange { axis: usize, dimension: usize },
    #[error("multiplicities must be at least 1")]
    BadMultiplicity,
    #[error("no Conley-Zehnder convention is fixed for polydisk torus families")]
    CzUndefinedForTorusFamilies,
    #[error("no smoothing model for {0} boundaries")]
    UnsupportedDomain(String),
    #[error("explicit smoothing requires 0 < delta < epsilon^2 and epsilon < 1")]
    BadPolicy,
    #[error("cannot parse orbit label {0:?}")]
    Label(String),
}

/// Treatment of the smoothing parameter in actions and indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum SmoothingPolicy {
    /// `epsilon` infinitesimally small: `floor(epsilon * x) = 0` and action
    /// corrections vanish exactly.
    #[default]
    InfinitesimalEpsilon,
    /// Concrete profile slopes. Requires `0 < delta < epsilon^2 < 1`; the
    /// short transition zone keeps action corrections of order `epsilon`.
    ExplicitEpsilon { epsilon: Rat, delta: Rat },
}

impl SmoothingPolicy {
    pub fn validate(&self) -> Result<(), ReebError> {
        match self {
            SmoothingPolicy::InfinitesimalEpsilon => Ok(()),
            SmoothingPolicy::ExplicitEpsilon { epsilon, delta } => {
                let ok = epsilon.is_positive()
                    && *epsilon < Rat::one()
                    && delta.is_positive()
                    && *delta < epsilon * epsilon;
                if ok {
                    Ok(())
                } else {
                    Err(ReebError::BadPolicy)
                }
            }
        }
    }

    fn epsilon(&self) -> Option<&Rat> {
        match self {
            SmoothingPolicy::InfinitesimalEpsilon => None,
            SmoothingPolicy::ExplicitEpsilon { epsilon, .. } => Some(epsilon),
        }
    }
}

/// A closed Reeb orbit (or orbit family) on a smoothed toric boundary.
///
/// Axes are 1-based. Multiplicities are always at least 1; non-coprime
/// `(m, q)` pairs and `r > 1` denote multiple covers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ReebOrbit {
    /// `g^k*r`: `r`-fold cover of the elliptic orbit on axis `k` of a
    /// polylike boundary.
    Elliptic { axis: usize, mult: u32 },
    /// `g^k_{m,q}`: hyperbolic corner family of a polylike boundary,
    /// winding `m` around the disk and `q` around tail axis `k >= 2`.
    Hyperbolic { axis: usize, m: u32, q: u32 },
    /// `g{I}_{m..}`: torus family at a polydisk corner; sparse list of
    /// `(axis, multiplicity)` pairs sorted by axis.
    PolydiskToric { mults: Vec<(usize, u32)> },
    /// `d^k*r`: `r`-fold cover of the closed orbit on axis `k` of an
    /// ellipsoid boundary.
    EllipsoidClosed { axis: usize, mult: u32 },
}

/// Conley-Zehnder value plus a flag marking floor arguments that landed
/// exactly on an integer (a genericity boundary of the formula).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CzValue {
    pub value: Rat,
    pub floor_boundary: bool,
}

/// One row of a bounded-action orbit enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitEntry {
    pub orbit: ReebOrbit,
    pub action: Rat,
    /// `None` exactly for polydisk torus families, which carry no fixed
    /// index convention here.
    pub cz: Option<CzValue>,
    /// Action equals the bound exactly.
    pub at_bound: bool,
}

impl ReebOrbit {
    fn rank(&self) -> u8 {
        match self {
            ReebOrbit::Elliptic { .. } => 0,
            ReebOrbit::Hyperbolic { .. } => 1,
            ReebOrbit::PolydiskToric { .. } => 2,
            ReebOrbit::EllipsoidClosed { .. } => 3,
        }
    }

    /// Dimension of the family the orbit moves in: isolated orbits 0,
    /// hyperbolic corner families 1, polydisk torus families `|I| - 1`.
    pub fn family_dimension(&self) -> u32 {
        match self {
            ReebOrbit::Elliptic { .. } | ReebOrbit::EllipsoidClosed { .. } => 0,
            ReebOrbit::Hyperbolic { .. } => 1,
            ReebOrbit::PolydiskToric { mults } => (mults.len() - 1) as u32,
        }
    }

    /// Covering multiplicity of the underlying simple orbit.
    pub fn covering_degree(&self) -> u32 {
        fn gcd(a: u32, b: u32) -> u32 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        match self {
            ReebOrbit::Elliptic { mult, .. } | ReebOrbit::EllipsoidClosed { mult, .. } => *mult,
            ReebOrbit::Hyperbolic { m, q, .. } => gcd(*m, *q),
            ReebOrbit::PolydiskToric { mults } => {
                mults.iter().map(|(_, m)| *m).fold(0, gcd)
            }
        }
    }

    fn validate(&self) -> Result<(), ReebError> {
        match self {
            ReebOrbit::Elliptic { axis, mult } | ReebOrbit::EllipsoidClosed { axis, mult } => {
                if *axis == 0 || *mult == 0 {
                    return Err(ReebError::BadMultiplicity);
                }
            }
            ReebOrbit::Hyperbolic { axis, m, q } => {
                if *axis < 2 || *m == 0 || *q == 0 {
                    return Err(ReebError::BadMultiplicity);
                }
            }
            ReebOrbit::PolydiskToric { mults } => {
                if mults.is_empty()
                    || mults.iter().any(|(a, m)| *a == 0 || *m == 0)
                    || mults.windows(2).any(|w| w[0].0 >= w[1].0)
                {
                    return Err(ReebError::BadMultiplicity);
                }
            }
        }
        Ok(())
    }

    /// Check that the orbit belongs to the species of `domain`'s boundary
    /// and that its axes exist.
    pub fn check_on(&self, domain: &Domain) -> Result<(), ReebError> {
        self.validate()?;
        let mismatch = || ReebError::SpeciesMismatch {
            orbit: self.to_string(),
            domain: domain.kind().to_owned(),
        };
        let n = domain.dimension();
        let axis_ok = |axis: usize| -> Result<(), ReebError> {
            if axis > n {
                Err(ReebError::AxisOutOfRange { axis, dimension: n })
            } else {
                Ok(())
            }
        };
        match (self, domain) {
            (ReebOrbit::Elliptic { axis, .. }, Domain::Polylike { .. }) => axis_ok(*axis),
            (ReebOrbit::Hyperbolic { axis, .. }, Domain::Polylike { .. }) => axis_ok(*axis),
            (ReebOrbit::PolydiskToric { mults }, Domain::Polydisk { .. }) => {
                axis_ok(mults.last().expect("nonempty").0)
            }
            (ReebOrbit::EllipsoidClosed { axis, .. }, Domain::Ellipsoid { .. }) => axis_ok(*axis),
            _ => Err(mismatch()),
        }
    }
}

impl Ord for ReebOrbit {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| match (self, other) {
            (
                ReebOrbit::Elliptic { axis: a1, mult: r1 },
                ReebOrbit::Elliptic { axis: a2, mult: r2 },
            )
            | (
                ReebOrbit::EllipsoidClosed { axis: a1, mult: r1 },
                ReebOrbit::EllipsoidClosed { axis: a2, mult: r2 },
            ) => (a1, r1).cmp(&(a2, r2)),
            (
                ReebOrbit::Hyperbolic { axis: a1, m: m1, q: q1 },
                ReebOrbit::Hyperbolic { axis: a2, m: m2, q: q2 },
            ) => (a1, m1, q1).cmp(&(a2, m2, q2)),
            (ReebOrbit::PolydiskToric { mults: u }, ReebOrbit::PolydiskToric { mults: v }) => {
                u.cmp(v)
            }
            _ => unreachable!("rank already ordered distinct variants"),
        })
    }
}

impl PartialOrd for ReebOrbit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReebOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReebOrbit::Elliptic { axis, mult } => write!(f, "g^{axis}*{mult}"),
            ReebOrbit::Hyperbolic { axis, m, q } => write!(f, "g^{axis}_{{{m},{q}}}"),
            ReebOrbit::PolydiskToric { mults } => {
                let axes: Vec<String> = mults.iter().map(|(a, _)| a.to_string()).collect();
                let ms: Vec<String> = mults.iter().map(|(_, m)| m.to_string()).collect();
                write!(f, "g{{{}}}_{{{}}}", axes.join(","), ms.join(","))
            }
            ReebOrbit::EllipsoidClosed { axis, mult } => write!(f, "d^{axis}*{mult}"),
        }
    }
}

impl FromStr for ReebOrbit {
    type Err = ReebError;

    /// Parse the label grammar `g^k*r`, `g^k_{m,q}`, `g{i,..}_{m,..}`,
    /// `d^k*r`. A missing `*r` suffix means multiplicity 1.
    fn from_str(s: &str) -> Result<ReebOrbit, ReebError> {
        let err = || ReebError::Label(s.to_owned());
        let parse_num = |t: &str| t.trim().parse::<u32>().map_err(|_| err());
        let parse_axis = |t: &str| t.trim().parse::<usize>().map_err(|_| err());
        let body = s.trim();
        if let Some(rest) = body.strip_prefix("d^") {
            let (axis, mult) = match rest.split_once('*') {
                Some((a, r)) => (parse_axis(a)?, parse_num(r)?),
                None => (parse_axis(rest)?, 1),
            };
            let orbit = ReebOrbit::EllipsoidClosed { axis, mult };
            orbit.validate()?;
            return Ok(orbit);
        }
        if let Some(rest) = body.strip_prefix("g^") {
            if let Some((a, braces)) = rest.split_once("_{") {
                let inner = braces.strip_suffix('}').ok_or_else(err)?;
                let (m, q) = inner.split_once(',').ok_or_else(err)?;
                let orbit = ReebOrbit::Hyperbolic {
                    axis: parse_axis(a)?,
                    m: parse_num(m)?,
                    q: parse_num(q)?,
                };
                orbit.validate()?;
                return Ok(orbit);
            }
            let (axis, mult) = match rest.split_once('*') {
                Some((a, r)) => (parse_axis(a)?, parse_num(r)?),
                None => (parse_axis(rest)?, 1),
            };
            let orbit = ReebOrbit::Elliptic { axis, mult };
            orbit.validate()?;
            return Ok(orbit);
        }
        if let Some(rest) = body.strip_prefix("g{") {
            let (axes_part, mults_part) = rest.split_once("}_{").ok_or_else(err)?;
            let mults_part = mults_part.strip_suffix('}').ok_or_else(err)?;
            let axes: Vec<usize> = axes_part
                .split(',')
                .map(parse_axis)
                .collect::<Result<_, _>>()?;
            let ms: Vec<u32> = mults_part
                .split(',')
                .map(parse_num)
                .collect::<Result<_, _>>()?;
            if axes.len() != ms.len() {
                return Err(err());
            }
            let orbit = ReebOrbit::PolydiskToric {
                mults: axes.into_iter().zip(ms).collect(),
            };
            orbit.validate()?;
            return Ok(orbit);
        }
        Err(err())
    }
}

/// Symplectic action (period) of the orbit, exact under the infinitesimal
/// policy. Explicit-policy users who need the `O(epsilon)` uncertainty
/// should call [`action_window`].
pub fn action(orbit: &ReebOrbit, domain: &Domain, policy: &SmoothingPolicy) -> Result<Rat, ReebError> {
    policy.validate()?;
    orbit.check_on(domain)?;
    Ok(nominal_action(orbit, domain))
}

fn nominal_action(orbit: &ReebOrbit, domain: &Domain) -> Rat {
    match (orbit, domain) {
        (ReebOrbit::Elliptic { axis, mult }, Domain::Polylike { b, tail }) => {
            let coeff = if *axis == 1 { b } else { &tail[*axis - 2] };
            Rat::from(*mult) * coeff
        }
        (ReebOrbit::Hyperbolic { axis, m, q }, Domain::Polylike { b, tail }) => {
            Rat::from(*m) * b + Rat::from(*q) * &tail[*axis - 2]
        }
        (ReebOrbit::PolydiskToric { mults }, Domain::Polydisk { widths }) => mults
            .iter()
            .map(|(axis, m)| Rat::from(*m) * &widths[*axis - 1])
            .sum(),
        (ReebOrbit::EllipsoidClosed { axis, mult }, Domain::Ellipsoid { coeffs }) => {
            Rat::from(*mult) * &coeffs[*axis - 1]
        }
        _ => unreachable!("checked by check_on"),
    }
}

/// Action window `[value - C*epsilon, value + C*epsilon]` under the explicit
/// policy; degenerate `[value, value]` when the action is exact (axis orbits,
/// ellipsoids) or the policy is infinitesimal. The constant `C` is a coarse
/// profile-independent bound: corner orbits sit within `O(epsilon)` of the
/// corner, with coordinate excursions controlled by `delta < epsilon^2`.
pub fn action_window(
    orbit: &ReebOrbit,
    domain: &Domain,
    policy: &SmoothingPolicy,
) -> Result<(Rat, Rat), ReebError> {
    let value = action(orbit, domain, policy)?;
    let Some(epsilon) = policy.epsilon() else {
        return Ok((value.clone(), value));
    };
    let c = match (orbit, domain) {
        (ReebOrbit::Hyperbolic { axis, m, q }, Domain::Polylike { b, tail }) => {
            Rat::int(3) * Rat::from(*m)
                + Rat::from(*q) * &tail[*axis - 2] * (b + Rat::int(2))
        }
        (ReebOrbit::PolydiskToric { mults }, Domain::Polydisk { widths }) => {
            let w_max = mults
                .iter()
                .map(|(axis, _)| widths[*axis - 1].clone())
                .max()
                .expect("nonempty support");
            mults
                .iter()
                .map(|(axis, m)| {
                    Rat::from(*m)
                        * (Rat::int(3) + &widths[*axis - 1] * (&w_max + Rat::int(2)))
                })
                .sum()
        }
        _ => Rat::zero(),
    };
    let half_width = c * epsilon;
    Ok((&value - &half_width, value + half_width))
}

/// Conley-Zehnder index (general fiber convention for families).
/// Exact rational output: integers for isolated orbits, half-integers for
/// hyperbolic families.
pub fn cz_index(
    orbit: &ReebOrbit,
    domain: &Domain,
    policy: &SmoothingPolicy,
) -> Result<CzValue, ReebError> {
    policy.validate()?;
    orbit.check_on(domain)?;
    let n = domain.dimension() as i64;
    let boundary = std::cell::Cell::new(false);
    // floor(x) contributing 2*floor(x); flags exact-integer arguments.
    let floor2 = |x: Rat| -> Rat {
        let (fl, exact) = x.floor_with_flag();
        boundary.set(boundary.get() | exact);
        Rat::int(2) * fl
    };
    // floor of an epsilon-scaled argument: zero under the infinitesimal
    // policy (never a boundary there; the argument is a positive
    // infinitesimal), explicit otherwise.
    let eps_floor2 = |x: Rat, policy: &SmoothingPolicy| -> Rat {
        match policy.epsilon() {
            None => Rat::zero(),
            Some(eps) => {
                let (fl, exact) = (eps * &x).floor_with_flag();
                boundary.set(boundary.get() | exact);
                Rat::int(2) * fl
            }
        }
    };
    let value = match (orbit, domain) {
        (ReebOrbit::Elliptic { axis: 1, mult }, Domain::Polylike { tail, .. }) => {
            let r = Rat::from(*mult);
            let mut v = Rat::int(2) * &r + Rat::int(n - 1);
            for a in tail {
                v = v + eps_floor2(&r / a, policy);
            }
            v
        }
        (ReebOrbit::Elliptic { axis, mult }, Domain::Polylike { tail, .. }) => {
            let r = Rat::from(*mult);
            let ak = &tail[*axis - 2];
            let mut v = Rat::int(2) * &r + Rat::int(n - 1) + eps_floor2(&r * ak, policy);
            for (j, a) in tail.iter().enumerate() {
                if j != *axis - 2 {
                    v = v + floor2(&r * ak / a);
                }
            }
            v
        }
        (ReebOrbit::Hyperbolic { axis, m, q }, Domain::Polylike { tail, .. }) => {
            let ak = &tail[*axis - 2];
            let qq = Rat::from(*q);
            let mut v = Rat::int(2) * (Rat::from(*m) + &qq) + Rat::new(1, 2) + Rat::int(n - 2);
            for (j, a) in tail.iter().enumerate() {
                if j != *axis - 2 {
                    v = v + floor2(&qq * ak / a);
                }
            }
            v
        }
        (ReebOrbit::EllipsoidClosed { axis, mult }, Domain::Ellipsoid { coeffs }) => {
            let r = Rat::from(*mult);
            let ck = &coeffs[*axis - 1];
            let mut v = Rat::int(2) * &r + Rat::int(n - 1);
            for (j, c) in coeffs.iter().enumerate() {
                if j != *axis - 1 {
                    v = v + floor2(&r * ck / c);
                }
            }
            v
        }
        (ReebOrbit::PolydiskToric { .. }, _) => {
            return Err(ReebError::CzUndefinedForTorusFamilies)
        }
        _ => unreachable!("checked by check_on"),
    };
    Ok(CzValue { value, floor_boundary: boundary.get() })
}

/// Complete list of orbits with action at most `bound`, sorted by action and
/// then by a fixed orbit order. Orbits whose action equals the bound exactly
/// are included and flagged `at_bound`.
pub fn enumerate_orbits(
    domain: &Domain,
    bound: &Rat,
    policy: &SmoothingPolicy,
) -> Result<Vec<OrbitEntry>, ReebError> {
    enumerate_impl(domain, bound, policy, true)
}

/// Sequential twin of [`enumerate_orbits`]; identical output.
pub fn enumerate_orbits_seq(
    domain: &Domain,
    bound: &Rat,
    policy: &SmoothingPolicy,
) -> Result<Vec<OrbitEntry>, ReebError> {
    enumerate_impl(domain, bound, policy, false)
}

fn enumerate_impl(
    domain: &Domain,
    bound: &Rat,
    policy: &SmoothingPolicy,
    parallel: bool,
) -> Result<Vec<OrbitEntry>, ReebError> {
    fn run<F: Fn(usize) -> Vec<ReebOrbit> + Sync + Send>(
        parallel: bool,
        len: usize,
        f: F,
    ) -> Vec<ReebOrbit> {
        let chunks = if parallel {
            crate::exec::map_indexed(len, f)
        } else {
            crate::exec::map_indexed_seq(len, f)
        };
        chunks.into_iter().flatten().collect()
    }
    policy.validate()?;
    if !bound.is_positive() {
        return Ok(Vec::new());
    }
    let orbits: Vec<ReebOrbit> = match domain {
        Domain::Polylike { b, tail } => {
            let n = tail.len() + 1;
            // Task j in 0..n: elliptic tower on axis j+1.
            // Task n+j: hyperbolic families on tail axis j+2.
            run(parallel, n + tail.len(), |task| {
                let mut out = Vec::new();
                if task < n {
                    let axis = task + 1;
                    let coeff = if axis == 1 { b } else { &tail[axis - 2] };
                    let mut r = 1u32;
                    while &(Rat::from(r) * coeff) <= bound {
                        out.push(ReebOrbit::Elliptic { axis, mult: r });
                        r += 1;
                    }
                } else {
                    let axis = task - n + 2;
                    let ak = &tail[axis - 2];
                    let mut m = 1u32;
                    while &(Rat::from(m) * b + ak) <= bound {
                        let mut q = 1u32;
                        while &(Rat::from(m) * b + Rat::from(q) * ak) <= bound {
                            out.push(ReebOrbit::Hyperbolic { axis, m, q });
                            q += 1;
                        }
                        m += 1;
                    }
                }
                out
            })
        }
        Domain::Ellipsoid { coeffs } => run(parallel, coeffs.len(), |idx| {
            let mut out = Vec::new();
            let mut r = 1u32;
            while &(Rat::from(r) * &coeffs[idx]) <= bound {
                out.push(ReebOrbit::EllipsoidClosed { axis: idx + 1, mult: r });
                r += 1;
            }
            out
        }),
        Domain::Polydisk { widths } => {
            // All nonzero multiplicity vectors with weighted sum <= bound.
            let mut out = Vec::new();
            let mut stack: Vec<(usize, u32)> = Vec::new();
            fn recurse(
                widths: &[Rat],
                idx: usize,
                total: Rat,
                bound: &Rat,
                stack: &mut Vec<(usize, u32)>,
                out: &mut Vec<ReebOrbit>,
            ) {
                if idx == widths.len() {
                    if !stack.is_empty() {
                        out.push(ReebOrbit::PolydiskToric { mults: stack.clone() });
                    }
                    return;
                }
                recurse(widths, idx + 1, total.clone(), bound, stack, out);
                let mut m = 1u32;
                loop {
                    let t = &total + Rat::from(m) * &widths[idx];
                    if &t > bound {
                        break;
                    }
                    stack.push((idx + 1, m));
                    recurse(widths, idx + 1, t, bound, stack, out);
                    stack.pop();
                    m += 1;
                }
            }
            recurse(widths, 0, Rat::zero(), bound, &mut stack, &mut out);
            out
        }
        other => return Err(ReebError::UnsupportedDomain(other.kind().to_owned())),
    };
    let mut entries: Vec<OrbitEntry> = orbits
        .into_iter()
        .map(|orbit| {
            let act = nominal_action(&orbit, domain);
            let cz = match cz_index(&orbit, domain, policy) {
                Ok(v) => Some(v),
                Err(ReebError::CzUndefinedForTorusFamilies) => None,
                Err(e) => unreachable!("generated orbits are valid: {e}"),
            };
            let at_bound = &act == bound;
            OrbitEntry { orbit, action: act, cz, at_bound }
        })
        .collect();
    entries.sort_by(|x, y| x.action.cmp(&y.action).then_with(|| x.orbit.cmp(&y.orbit)));
    Ok(entries)
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

    const INF: SmoothingPolicy = SmoothingPolicy::InfinitesimalEpsilon;

    #[test]
    fn labels_round_trip() {
        for label in ["g^1*2", "g^2*1", "g^2_{1,1}", "g^3_{2,5}", "g{1,3}_{1,1}", "g{2}_{4}", "d^1*2"] {
            assert_eq!(orbit(label).to_string(), label);
        }
        // Multiplicity-1 shorthand.
        assert_eq!(orbit("g^2"), ReebOrbit::Elliptic { axis: 2, mult: 1 });
        assert_eq!(orbit("d^3"), ReebOrbit::EllipsoidClosed { axis: 3, mult: 1 });
        for bad in ["", "g", "g^0*1", "g^2*0", "g^1_{1}", "g{1,3}_{1}", "x^1*1", "g{3,1}_{1,1}"] {
            assert!(ReebOrbit::from_str(bad).is_err(), "parsed {bad:?}");
        }
    }

    #[test]
    fn actions_match_coefficients() {
        let d = q_sample();
        assert_eq!(action(&orbit("g^1*2"), &d, &INF).unwrap(), rat("3"));
        assert_eq!(action(&orbit("g^2*3"), &d, &INF).unwrap(), rat("3"));
        assert_eq!(action(&orbit("g^3*1"), &d, &INF).unwrap(), rat("11/5"));
        assert_eq!(action(&orbit("g^2_{1,1}"), &d, &INF).unwrap(), rat("5/2"));
        assert_eq!(action(&orbit("g^3_{2,1}"), &d, &INF).unwrap(), rat("26/5"));
        let e = Domain::ellipsoid(vec![rat("2"), rat("5"), rat("13")]).unwrap();
        assert_eq!(action(&orbit("d^2*2"), &e, &INF).unwrap(), rat("10"));
        let p = Domain::polydisk(vec![rat("1"), rat("19/20"), rat("11/5")]).unwrap();
        assert_eq!(action(&orbit("g{1,3}_{1,1}"), &p, &INF).unwrap(), rat("16/5"));
    }

    #[test]
    fn species_and_axis_errors() {
        let d = q_sample();
        let e = Domain::ellipsoid(vec![rat("2"), rat("4")]).unwrap();
        assert!(matches!(
            action(&orbit("d^1*1"), &d, &INF),
            Err(ReebError::SpeciesMismatch { .. })
        ));
        assert!(matches!(
            action(&orbit("g^1*1"), &e, &INF),
            Err(ReebError::SpeciesMismatch { .. })
        ));
        assert!(matches!(
            action(&orbit("g^4*1"), &d, &INF),
            Err(ReebError::AxisOutOfRange { .. })
        ));
        let bp = Domain::ball_product(rat("3"), 3).unwrap();
        assert!(matches!(
            enumerate_orbits(&bp, &rat("2"), &INF),
            Err(ReebError::UnsupportedDomain(_))
        ));
    }

    #[test]
    fn cz_worked_values() {
        let d = q_sample();
        // Disk-axis double cover: 2r + n - 1 with vanishing epsilon floors.
        assert_eq!(
            cz_index(&orbit("g^1*2"), &d, &INF).unwrap(),
            CzValue { value: rat("6"), floor_boundary: false }
        );
        // Corner family: 2(m+q) + 1/2 + (n-2) + 2*floor(5/11).
        assert_eq!(
            cz_index(&orbit("g^2_{1,1}"), &d, &INF).unwrap(),
            CzValue { value: rat("11/2"), floor_boundary: false }
        );
        let e = Domain::ellipsoid(vec![rat("2"), rat("5"), rat("13")]).unwrap();
        assert_eq!(cz_index(&orbit("d^1*2"), &e, &INF).unwrap().value, rat("6"));
        assert_eq!(cz_index(&orbit("d^2*1"), &e, &INF).unwrap().value, rat("8"));
        // Torus families carry no index convention.
        let p = Domain::polydisk(vec![rat("1"), rat("2")]).unwrap();
        assert!(matches!(
            cz_index(&orbit("g{1}_{1}"), &p, &INF),
            Err(ReebError::CzUndefinedForTorusFamilies)
        ));
    }

    #[test]
    fn cz_flags_floor_boundaries() {
        // a_3 = 2 a_2: floor(2 * a_2 / a_3) evaluates exactly at 1... use
        // q a_k / a_j integer: g^3_{1,2} has floor(2 * 2 / 1) = 4, exact.
        let d = Domain::polylike(rat("3/2"), vec![rat("1"), rat("2")]).unwrap();
        let v = cz_index(&orbit("g^3*1"), &d, &INF).unwrap();
        assert!(v.floor_boundary, "floor(a_3/a_2) = 2 exactly");
        assert_eq!(v.value, rat("8"));
        let v = cz_index(&orbit("g^2*1"), &d, &INF).unwrap();
        assert!(!v.floor_boundary);
        assert_eq!(v.value, rat("4"));
    }

    #[test]
    fn explicit_policy_shifts_floors_and_windows() {
        let d = q_sample();
        let policy = SmoothingPolicy::ExplicitEpsilon { epsilon: rat("1/2"), delta: rat("1/8") };
        // floor(epsilon * r / a_2) = floor(1) = 1 at r = 2: shifted and flagged.
        let v = cz_index(&orbit("g^1*2"), &d, &policy).unwrap();
        assert_eq!(v.value, rat("8"));
        assert!(v.floor_boundary);
        // Same computation, infinitesimally smoothed: 6 exactly.
        assert_eq!(cz_index(&orbit("g^1*2"), &d, &INF).unwrap().value, rat("6"));
        // Axis orbits have exact actions in every policy.
        let (lo, hi) = action_window(&orbit("g^2*1"), &d, &policy).unwrap();
        assert_eq!((lo, hi), (rat("1"), rat("1")));
        // Corner families get a symmetric O(epsilon) window.
        let (lo, hi) = action_window(&orbit("g^2_{1,1}"), &d, &policy).unwrap();
        assert!(lo < rat("5/2") && rat("5/2") < hi);
        assert_eq!(&hi - rat("5/2"), rat("5/2") - &lo);
        // Policy validation: delta must stay below epsilon^2.
        let bad = SmoothingPolicy::ExplicitEpsilon { epsilon: rat("1/2"), delta: rat("1/3") };
        assert!(matches!(bad.validate(), Err(ReebError::BadPolicy)));
    }

    #[test]
    fn enumeration_polylike_worked_example() {
        let d = q_sample();
        let entries = enumerate_orbits(&d, &rat("5/2"), &INF).unwrap();
        let listed: Vec<(String, Rat, bool)> = entries
            .iter()
            .map(|e| (e.orbit.to_string(), e.action.clone(), e.at_bound))
            .collect();
        assert_eq!(
            listed,
            vec![
                ("g^2*1".to_owned(), rat("1"), false),
                ("g^1*1".to_owned(), rat("3/2"), false),
                ("g^2*2".to_owned(), rat("2"), false),
                ("g^3*1".to_owned(), rat("11/5"), false),
                ("g^2_{1,1}".to_owned(), rat("5/2"), true),
            ]
        );
        assert!(entries.iter().all(|e| e.cz.is_some()));
        // Below the smallest coefficient nothing survives.
        assert!(enumerate_orbits(&d, &rat("1/2"), &INF).unwrap().is_empty());
    }

    #[test]
    fn enumeration_ellipsoid_worked_example() {
        let e = Domain::ellipsoid(vec![rat("2"), rat("4")]).unwrap();
        let entries = enumerate_orbits(&e, &rat("4"), &INF).unwrap();
        let listed: Vec<(String, Rat, bool)> = entries
            .iter()
            .map(|en| (en.orbit.to_string(), en.action.clone(), en.at_bound))
            .collect();
        assert_eq!(
            listed,
            vec![
                ("d^1*1".to_owned(), rat("2"), false),
                ("d^1*2".to_owned(), rat("4"), true),
                ("d^2*1".to_owned(), rat("4"), true),
            ]
        );
    }

    #[test]
    fn enumeration_polydisk_counts_torus_families() {
        let p = Domain::polydisk(vec![rat("1"), rat("2")]).unwrap();
        let entries = enumerate_orbits(&p, &rat("3"), &INF).unwrap();
        let labels: Vec<String> = entries.iter().map(|e| e.orbit.to_string()).collect();
        assert_eq!(
            labels,
            vec!["g{1}_{1}", "g{1}_{2}", "g{2}_{1}", "g{1,2}_{1,1}", "g{1}_{3}"]
        );
        assert!(entries.iter().all(|e| e.cz.is_none()));
        assert_eq!(
            entries.last().map(|e| e.at_bound),
            Some(true),
            "triple cover action 3 sits exactly at the bound"
        );
        // Family dimensions: |support| - 1.
        assert_eq!(orbit("g{1,2}_{1,1}").family_dimension(), 1);
        assert_eq!(orbit("g{1}_{3}").family_dimension(), 0);
    }

    #[test]
    fn parallel_and_sequential_enumeration_agree() {
        let d = q_sample();
        let bound = rat("12");
        assert_eq!(
            enumerate_orbits(&d, &bound, &INF).unwrap(),
            enumerate_orbits_seq(&d, &bound, &INF).unwrap()
        );
    }

    #[test]
    fn covering_degrees() {
        assert_eq!(orbit("g^1*2").covering_degree(), 2);
        assert_eq!(orbit("g^2_{1,1}").covering_degree(), 1);
        assert_eq!(orbit("g^2_{2,4}").covering_degree(), 2);
        assert_eq!(orbit("g{1,3}_{2,4}").covering_degree(), 2);
        assert_eq!(orbit("d^2*3").covering_degree(), 3);
    }
}
