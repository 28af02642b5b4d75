//! Locally private frequency estimation.
//!
//! The crate provides ε-LDP randomizers with unbiased server-side aggregators
//! ([`protocols`]), the set systems behind projective-geometry and Hadamard
//! response ([`geometry`]), the ε-splitting transformation for the low-privacy
//! regime ([`transform`]), shuffle-model amplification calculators ([`shuffle`]),
//! closed-form error curves ([`bounds`]), error metrics ([`metrics`]) and a
//! seeded, parallel Monte Carlo harness ([`experiment`]).
//!
//! Symbols are 0-indexed (`0..k`) and every `log` is the natural logarithm.
//!
//! ```
//! use ldp_hist::prelude::*;
//!
//! let data = Dataset::new(vec![0, 0, 1, 2, 0, 1], 3).unwrap();
//! let rr = Krr::new(3, 2.0).unwrap();
//! let mut stream = SeedSpec::new(7, 0).stream();
//! let est = rr.estimate(&data, &mut stream).unwrap();
//! assert_eq!(est.len(), 3);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod domain;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod metrics;
pub mod protocols;
pub mod seed;
pub mod shuffle;
pub mod transform;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::domain::{Dataset, FrequencyVector, PrivacyBudget};
    pub use crate::error::{Error, Result};
    pub use crate::geometry::SetSystem;
    pub use crate::metrics::Norm;
    pub use crate::protocols::{
        FrequencyOracle, HadamardResponse, IntersectionFamily, Krr, LocalProtocol,
        ProjectiveGeometryResponse, Rappor, SubsetSelection,
    };
    pub use crate::seed::{SeedSpec, Stream};
    pub use crate::transform::{Split, SplitConfig};
}
