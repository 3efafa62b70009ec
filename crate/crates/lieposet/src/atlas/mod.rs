//! Small-poset atlas: enumeration and batch verification sweeps.

mod enumerate;
mod sweep;

pub use enumerate::{enumerate_posets, order_ideals, EnumerateOptions, GUARDRAIL};
pub use sweep::{sweep, AtlasRecord, Check, Failure, SweepOptions, SweepReport, Tally};
