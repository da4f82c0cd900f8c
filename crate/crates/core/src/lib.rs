//! Largest-eigenvalue bounds for the normalized graph Laplacian, with
//! witness certificates, the equality classifier and verification sweeps.
//!
//! The operator is `Lf(x) = (1/d(x)) Σ_{y~x} (f(x) - f(y))`, self-adjoint for
//! the degree-weighted inner product `<f, g> = Σ f(x) g(x) d(x)`.

pub mod bounds;
pub mod certify;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod rigidity;
pub mod spectral;

pub use bounds::{bound_report, BoundReport, Fraction};
pub use certify::{
    certify_min_degree, certify_non_complete, Certificate, CertificateRecord, PointwiseAudit,
};
pub use error::{BoundsError, CertifyError, GraphError, RigidityError, SpectralError};
pub use format::{parse_auto, parse_graph6, to_graph6};
pub use generators::Family;
pub use graph::{Graph, VertexSet};
pub use harness::{random_sweep, sweep, Check, SweepConfig, SweepReport};
pub use rigidity::{classify_equality, RigidityVerdict};
pub use spectral::{spectrum, Spectrum, VertexFunction};
