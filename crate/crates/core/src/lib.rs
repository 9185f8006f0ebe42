//! Exact certificates for the Max-Cut semidefinite relaxation.
//!
//! The crate builds primal/dual optimal pairs in rational arithmetic, verifies
//! them without trusting how they were built, recognizes exact graph classes,
//! and cross-checks everything against a brute-force oracle and a numeric
//! interior-point solver.
//!
//! ```
//! use elliptope::{certificates, ops};
//!
//! let a = ops::edgeless(3).unwrap();
//! let cert = certificates::cert_join_balanced(&a, &a).unwrap();
//! let report = certificates::verify_certificate(&cert).unwrap();
//! assert!(report.is_optimal());
//! assert_eq!(cert.objective.to_string(), "9");
//! ```

pub mod certificates;
pub mod corpus;
pub mod graph;
pub mod linalg;
pub mod ops;
pub mod oracle;
pub mod rational;
pub mod recognizer;
pub mod sdp;
pub mod suite;

pub use graph::{Graph, GraphError, Side, VertexPartition};
pub use linalg::{Matrix, SymMatrix};
pub use rational::Rational;
