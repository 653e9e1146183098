//! Finite relativized Boolean algebras, their modal extension and awareness
//! frames.

pub mod algebra;
pub mod concrete;
pub mod dot;
pub mod duality;
pub mod error;
pub mod filters;
pub mod fixtures;
pub mod frames;
pub mod glue;
pub mod io;
pub mod modal;
pub mod report;
pub mod suites;
pub mod syntax;

pub use algebra::{find_isomorphism, Algebra, ElementId};
pub use error::{Error, Result};
pub use report::{AxiomReport, Law, Violation};
