//! Deciding whether the fundamental group of a compact 3-manifold, or a
//! group described by construction, has infinite conjugacy classes (ICC),
//! i.e. whether its group von Neumann algebra is a type II₁ factor.
//!
//! * [`group`]: structured groups with canonical normal forms.
//! * [`rules`]: three-valued verdicts with cited reasons.
//! * [`manifold`]: manifold, knot and link descriptors and their verdicts.
//! * [`oracle`]: brute-force conjugacy-class evidence and witness sequences.
//! * [`matrix`]: exact SL(2, Z[ω]) arithmetic for the figure-eight group.
//! * [`descriptor`]: the JSON descriptor file format.

pub mod descriptor;
pub mod error;
pub mod group;
pub mod manifold;
pub mod matrix;
pub mod oracle;
pub mod rules;

pub use error::{Error, Result};
pub use group::{Cardinal, Form, Group, GroupElement, StructuredGroup};
pub use rules::{Status, Verdict};
