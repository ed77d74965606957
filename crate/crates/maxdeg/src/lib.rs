//! Degree spectra, singularity constants, moment bounds and exact-size
//! samplers for random series-parallel and outerplanar graphs.

pub mod bounds;
pub mod class;
pub mod connected;
pub mod constants;
pub mod graph;
pub mod oracle;
pub mod real;
pub mod outerplanar;
pub mod rooted;
pub mod sampler;
pub mod scalar;
pub mod sp;
pub mod spectrum;
pub mod verify;
pub mod series;

pub use class::GraphClass;
pub use graph::LabelledGraph;
pub use rooted::RootedGf;
pub use scalar::{Rational, Scalar};
pub use series::{BiSeries, Series, SeriesError, TriSeries, UniSeries, XVar};
