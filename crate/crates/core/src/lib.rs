//! Exact-arithmetic toolkit for Reeb dynamics and symplectic embeddings of
//! toric domains.
//!
//! Everything here computes over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate, so every comparison, floor, and
//! verdict is exact and every degenerate tie is detected rather than
//! approximated.
//!
//! The layers, bottom up:
//!
//! * [`rat`]: the rational scalar type and its canonical string form.
//! * [`domains`]: toric domains (ellipsoids, polydisks, disk-ellipsoid
//!   products, truncated ellipsoids, ball products), their volumes, exact
//!   inclusion tests, and genericity diagnostics.
//! * [`reeb`]: closed Reeb orbits on smoothed boundaries, their actions,
//!   Conley-Zehnder indices, and bounded-action enumeration.
//! * [`curves`]: punctured holomorphic curve classes, virtual index and
//!   area bookkeeping, exhaustive curve enumeration, and the finite case
//!   analyses built from them.
//! * [`capacities`]: Ekeland-Hofer capacities and embedding obstructions.
//! * [`constructions`]: embedding construction rules, machine-checkable
//!   certificates, a bounded-depth derivation search, and the bundled
//!   verification suite.
//!
//! With the default `parallel` feature the heavy enumerations fan out over
//! a work-stealing thread pool; every such entry point has a `_seq` twin
//! with byte-identical output, and the feature can be disabled entirely for
//! single-threaded builds.

// Error enums carry owned diagnostic payloads (domains, orbit labels) by
// design; boxing them would complicate every call site for no measurable
// gain at these call frequencies.
#![allow(clippy::result_large_err)]

pub mod capacities;
pub mod constructions;
pub mod curves;
pub mod domains;
mod exec;
pub mod rat;
pub mod reeb;

pub use domains::{Domain, DomainError, GenericityReport, InclusionVerdict, Volume};
pub use rat::Rat;
pub use reeb::{CzValue, OrbitEntry, ReebError, ReebOrbit, SmoothingPolicy};
