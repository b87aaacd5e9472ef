//! Exact toolkit for matchings in uniform hypergraphs.
//!
//! * [`hypercore`]: hypergraphs, weightings, degrees, links, threshold
//!   hypergraphs and the `.hg` / `.wt` file formats.
//! * [`optmatch`]: `ν`, `ν*`, `τ*`, `τ` with certificates.
//! * [`extremal`]: the classical extremal constructions and conjectured
//!   threshold formulas as exact rationals.
//! * [`samuels`]: the two-point small-deviation quantities `Q_t`.
//! * [`thresholds`]: exhaustive Dirac/Erdős-type thresholds at tiny sizes.
//! * [`storage`]: the distributed storage allocation model.
//! * [`randcons`]: the two-round randomized sparsification.
//! * [`selftest`]: the acceptance battery.

pub mod combinatorics;
pub mod error;
pub mod extremal;
pub mod hypercore;
pub mod lp;
mod mask;
pub mod optmatch;
pub mod randcons;
pub mod rational;
pub mod rng;
pub mod samuels;
pub mod selftest;
pub mod storage;
pub mod thresholds;

pub use error::{Error, Result};
pub use hypercore::{EdgeWeighting, Hypergraph, VertexWeighting};
pub use rational::Rational;
