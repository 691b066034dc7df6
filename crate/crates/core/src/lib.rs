//! Graphicality testing and exact-degree random graph generation.
//!
//! * [`degseq`]: degree sequences, pair decrements and the sorted residual view.
//! * [`graphicality`]: Erdős–Gallai testing, sequential and data-parallel.
//! * [`generator`]: random simple graphs realizing a degree sequence exactly.
//! * [`edgeswap`]: degree-preserving edge-swap randomization.
//! * [`metrics`]: structural properties of generated graphs.
//! * [`synth`] and [`bench`]: input synthesis and the strong-scaling harness.

pub mod bench;
pub mod degseq;
pub mod edgeswap;
pub mod generator;
pub mod graph;
pub mod graphicality;
pub mod metrics;
pub mod rng;
pub mod synth;
pub mod team;

pub use degseq::{parse_sequence, Degree, DegreeSequence, ResidualState, SortedView};
pub use graph::{Edge, Graph};
pub use graphicality::{check_degrees, check_graphical, GraphicalityReport, Mode};
pub use team::WorkerTeam;
