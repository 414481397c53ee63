//! Twisted Courant algebroids from coisotropic Cartan geometries, computed
//! exactly in a single local trivialization.
//!
//! The crate is layered bottom-up:
//! - [`exactpoly`]: polynomials over ℚ, vector fields, differential forms;
//! - [`liealg`]: quadratic Lie algebras, subalgebras, gradings;
//! - [`cartan`]: the normalized gauge, curvature, anchor and tractor connection;
//! - [`courant`]: the Dorfman bracket, Jacobiator, Pontryagin tensor and the
//!   checks that certify a twisted Courant algebroid;
//! - [`lie2`]: the associated 2-term L∞ algebra.

pub mod battery;
pub mod cartan;
pub mod courant;
pub mod exactpoly;
pub mod lie2;
pub mod liealg;
pub mod linalg;
pub mod report;
pub mod section;
pub mod standard;

pub use battery::{Battery, BatteryConfig};
pub use cartan::{CartanModel, Curvature, CurvatureMode, ModelError};
pub use courant::{BracketVariant, Courant};
pub use exactpoly::{parse_poly, Poly, PolyForm, Rational, VectorField, Vars};
pub use liealg::{Grading, LieAlgebra, Subalgebra, Subspace};
pub use report::{CheckRecord, Report, Status};
pub use section::Section;
