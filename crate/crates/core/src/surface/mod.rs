//! Desk-scale arithmetic surfaces and their reciprocity audits.
//!
//! Contributing places are enumerated from the supports of the factored inputs; every
//! other place gives the trivial symbol, which the off-support check confirms exactly.

mod audit;
pub(crate) mod basis;
pub mod function;
mod global;
mod local;
pub mod point;
pub mod report;

pub use audit::{
    contributing_points, off_support_symbols, verify_point_reciprocity, verify_point_reciprocity_at,
    verify_vertical_reciprocity,
};
pub use function::{Atom, FactoredFunction};
pub use global::{verify_global_weil, Base};
pub use local::{local_symbol, Curve};
pub use point::ClosedPoint;
pub use report::{AbsRow, AuditKind, AuditReport, LocalValue, Place, PlaceEntry, PlaceKind};
