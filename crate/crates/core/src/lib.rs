//! Performance of randomly generated zero-error list codes.
//!
//! The crate covers distinguishability hypergraphs of discrete memoryless
//! channels, the indistinguishability functionals that govern random
//! codebooks, first and second moment bounds on the probability that a
//! random codebook is a zero-error list code, exact and Monte Carlo oracles
//! for that probability, the non-uniform birthday problem as the noiseless
//! special case, and the graph-entropy quantities that bracket `I_2`.

pub mod birthday;
pub mod budget;
pub mod channel;
pub mod codes;
pub mod dist;
mod error;
pub mod experiment;
pub mod graph;
pub mod graph_entropy;
pub mod hypergraph;
pub mod logsum;
pub mod measures;
pub mod par;
pub mod words;

pub use budget::Budget;
pub use channel::{Channel, ExtensionChannel};
pub use codes::{Codebook, Ensemble, MomentReport};
pub use dist::Dist;
pub use error::{Error, ErrorClass, Result};
pub use hypergraph::{Hypergraph, MultipartiteDecomposition};
pub use measures::{MeasureValue, Strategy};
