//! Exact enumeration of quarter-plane lattice walks and the kernel-method
//! machinery around their generating functions: unique power-series
//! division, the group of the walk, Bishop-surface normal forms and the
//! graph-membership certificate built from the boundary series.

pub mod classify;
pub mod geometry;
pub mod group;
pub mod guess;
pub mod kernel;
pub mod series;
pub mod walks;

pub use series::{BivariatePolynomial, Coefficient, Section, TruncatedSeries};
pub use walks::{Step, StepSet};
