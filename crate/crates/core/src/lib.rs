//! Compactly supported cohomology of contact loci of hypersurface
//! singularities, computed from the combinatorics of a log resolution.
//!
//! The pipeline runs from a plane curve germ (or a hand-written
//! configuration) through m-separation and a choice of ample weights to the
//! first page of the spectral sequence and its degeneration analysis.
//! Two independent oracles check the result: Euler characteristics from
//! monodromy data, and brute-force jet counts over finite fields.

pub mod covers;
pub mod curve;
pub mod error;
pub mod lefschetz;
pub mod model;
pub mod oracle;
pub mod pipeline;
pub mod poly;
pub mod separation;
pub mod spectral;
pub mod weights;

pub use covers::{CoverHomology, CoverMap};
pub use curve::{resolve_plane_curve, ResolutionLog};
pub use error::{Error, Result};
pub use lefschetz::{EulerCheck, ZetaFactorization};
pub use model::{Divisor, DivisorId, DualComplex, IntersectionCell, SncConfiguration, ValidationReport};
pub use oracle::{ChiFit, CountOptions, CountReport};
pub use pipeline::{Pipeline, Stage};
pub use poly::Polynomial;
pub use separation::Separation;
pub use spectral::{E1Page, HcReport};
pub use weights::WeightVector;
