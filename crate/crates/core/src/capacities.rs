//! Symplectic capacity values on ellipsoids and the embedding
//! obstructions they produce.
//!
//! For an ellipsoid `E(c_1..c_n)` the k-th capacity is the k-th smallest
//! element of the multiset `{ r*c_i : r >= 1 }`. The second capacity of a
//! ball product `B^2(R) x C^{n-1}` is `R`: disks of area up to `R` in the
//! bounded factor give the holomorphic curves realizing it, and nothing
//! smaller survives the stabilization. A curve-count argument then rules
//! out embeddings that would force a capacity to decrease.

use crate::domains::{self, Domain, Volume};
use crate::rat::Rat;
use serde::Serialize;

/// How deep [`obstruct_embedding`] probes capacity sequences by default.
pub const DEFAULT_EH_K: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CapacityError {
    #[error("capacity index k must be at least 1")]
    ZeroIndex,
    #[error("capacities here need an ellipsoid, got {0}")]
    NotAnEllipsoid(String),
    #[error("second capacity of a product needs a ball product, got {0}")]
    NotABallProduct(String),
    #[error("no obstruction theory for {src} into {tgt}")]
    UnsupportedPair { src: String, tgt: String },
    #[error("source dimension {src} exceeds target dimension {tgt}")]
    DimensionMismatch { src: usize, tgt: usize },
}

/// k-th smallest value of `{ r*c_i : r >= 1 }`, counted with
/// multiplicity. The first k multiples of each coefficient suffice, so
/// the computation is finite.
pub fn eh_capacity_ellipsoid(e: &Domain, k: usize) -> Result<Rat, CapacityError> {
    let Domain::Ellipsoid { coeffs } = e else {
        return Err(CapacityError::NotAnEllipsoid(e.kind().to_owned()));
    };
    if k == 0 {
        return Err(CapacityError::ZeroIndex);
    }
    let mut values = Vec::with_capacity(coeffs.len() * k);
    for c in coeffs {
        for r in 1..=k as i64 {
            values.push(Rat::int(r) * c);
        }
    }
    values.sort();
    Ok(values[k - 1].clone())
}

/// Second capacity of `B^2(r) x C^{n-1}`.
pub fn eh2_ball_product(bp: &Domain) -> Result<Rat, CapacityError> {
    let Domain::BallProduct { r, .. } = bp else {
        return Err(CapacityError::NotABallProduct(bp.kind().to_owned()));
    };
    Ok(r.clone())
}

/// The second ellipsoid capacity is `min(2*c_1, c_2)` in closed form;
/// callers may rely on the identity, and it is asserted here.
pub fn eh2_ellipsoid(e: &Domain) -> Result<Rat, CapacityError> {
    let value = eh_capacity_ellipsoid(e, 2)?;
    if let Domain::Ellipsoid { coeffs } = e {
        let mut sorted = coeffs.clone();
        sorted.sort();
        let closed = (Rat::int(2) * &sorted[0]).min(sorted[1].clone());
        assert_eq!(value, closed, "second capacity closed form diverged");
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    /// k-th capacity comparison; `k = 2` is the stabilized one.
    Capacity { k: usize },
    /// Volume comparison, equal dimensions only.
    Volume,
}

/// One scalar comparison between source and target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub source_value: Rat,
    /// `None` when the target side is infinite (volume of an unbounded
    /// product); such rows never obstruct.
    pub target_value: Option<Rat>,
    pub verdict: ObstructionVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionVerdict {
    /// Source value strictly exceeds the target's: no embedding exists.
    Obstructed,
    /// Exact tie: closed images may still fit, with no room to spare.
    Boundary,
    Clear,
}

/// Combined result over all probed comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub rows: Vec<Obstruction>,
    pub verdict: ObstructionVerdict,
}

impl ObstructionReport {
    pub fn obstructed(&self) -> bool {
        self.verdict == ObstructionVerdict::Obstructed
    }
}

fn compare(source: &Rat, target: &Rat) -> ObstructionVerdict {
    if source > target {
        ObstructionVerdict::Obstructed
    } else if source == target {
        ObstructionVerdict::Boundary
    } else {
        ObstructionVerdict::Clear
    }
}

/// Capacity and volume obstructions to embedding `source` (an ellipsoid)
/// into `target` (an ellipsoid of equal dimension, or a ball product of
/// at least the source dimension). Probes the second capacity always,
/// capacities up to `k_max` for ellipsoid targets, and volume when both
/// sides are finite. The report obstructs if any row does.
pub fn obstruct_embedding_with(
    source: &Domain,
    target: &Domain,
    k_max: usize,
) -> Result<ObstructionReport, CapacityError> {
    if !matches!(source, Domain::Ellipsoid { .. }) {
        return Err(CapacityError::UnsupportedPair {
            src: source.kind().to_owned(),
            tgt: target.kind().to_owned(),
        });
    }
    let mut rows = Vec::new();
    match target {
        Domain::Ellipsoid { .. } => {
            if source.dimension() != target.dimension() {
                return Err(CapacityError::DimensionMismatch {
                    src: source.dimension(),
                    tgt: target.dimension(),
                });
            }
            for k in 1..=k_max.max(2) {
                let s = eh_capacity_ellipsoid(source, k)?;
                let t = eh_capacity_ellipsoid(target, k)?;
                rows.push(Obstruction {
                    kind: ObstructionKind::Capacity { k },
                    verdict: compare(&s, &t),
                    source_value: s,
                    target_value: Some(t),
                });
            }
            if let (Volume::Finite(sv), Volume::Finite(tv)) =
                (domains::volume(source), domains::volume(target))
            {
                rows.push(Obstruction {
                    kind: ObstructionKind::Volume,
                    verdict: compare(&sv, &tv),
                    source_value: sv,
                    target_value: Some(tv),
                });
            }
        }
        Domain::BallProduct { .. } => {
            if source.dimension() > target.dimension() {
                return Err(CapacityError::DimensionMismatch {
                    src: source.dimension(),
                    tgt: target.dimension(),
                });
            }
            let s = eh2_ellipsoid(source)?;
            let t = eh2_ball_product(target)?;
            rows.push(Obstruction {
                kind: ObstructionKind::Capacity { k: 2 },
                verdict: compare(&s, &t),
                source_value: s,
                target_value: Some(t),
            });
            // Unbounded target: the volume row carries no information but
            // records why it was skipped as a comparison.
            if let (Volume::Finite(sv), Volume::Infinite) =
                (domains::volume(source), domains::volume(target))
            {
                rows.push(Obstruction {
                    kind: ObstructionKind::Volume,
                    source_value: sv,
                    target_value: None,
                    verdict: ObstructionVerdict::Clear,
                });
            }
        }
        _ => {
            return Err(CapacityError::UnsupportedPair {
                src: source.kind().to_owned(),
                tgt: target.kind().to_owned(),
            })
        }
    }
    let verdict = if rows.iter().any(|r| r.verdict == ObstructionVerdict::Obstructed) {
        ObstructionVerdict::Obstructed
    } else if rows.iter().any(|r| r.verdict == ObstructionVerdict::Boundary) {
        ObstructionVerdict::Boundary
    } else {
        ObstructionVerdict::Clear
    };
    Ok(ObstructionReport { rows, verdict })
}

/// [`obstruct_embedding_with`] at the default probing depth.
pub fn obstruct_embedding(
    source: &Domain,
    target: &Domain,
) -> Result<ObstructionReport, CapacityError> {
    obstruct_embedding_with(source, target, DEFAULT_EH_K)
}
