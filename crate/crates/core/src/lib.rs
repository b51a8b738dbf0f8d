//! Exact decision procedures around lens spaces.
//!
//! The crate covers the combinatorics of tight contact structures on lens
//! spaces (minimal Farey geodesics and their sign assignments), Menke's
//! meridional-slope candidates for mixed tori, Lisca's criterion for rational
//! homology ball fillings, the smooth embedding criteria for sums of lens
//! spaces, Smith normal form based homology of surgery presentations, and
//! conditional certificates for surgeries bounding acyclic manifolds.
//!
//! Everything is exact: slopes are reduced fractions, homology uses
//! arbitrary-precision integers, and serialized output never contains floats.

pub mod cli;
pub mod error;
pub mod farey;
pub mod filling;
pub mod homology;
pub mod plot;
pub mod rational;
pub mod surgery;
pub mod sweep;
pub mod tight;

pub use error::{Error, Result};
pub use farey::FareyPath;
pub use filling::{Answer, Verdict};
pub use homology::{AbelianGroup, IntMatrix};
pub use rational::{ConnectedSum, LensSpace, NegCF, Slope};
pub use surgery::Certificate;
pub use tight::{MixedVertex, TightStructure};
