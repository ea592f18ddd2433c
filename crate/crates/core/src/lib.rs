//! Exact mixed moments of partially transposed Wishart matrices.
//!
//! The crate is `no_std` with `alloc`. Everything here is deterministic and
//! exact except [`laws::density`] and [`quad`].
//!
//! ```
//! use ptwishart_core::{engine, Dims, Word};
//!
//! let word: Word = "w,r".parse().unwrap();
//! let dims = Dims::new(3, 3, 9).unwrap();
//! let value = engine::exact_moment_complex(&word, &dims).unwrap();
//! assert_eq!(value.to_string(), "4/3");
//! ```

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod engine;
pub mod enumerate;
pub mod exact;
pub mod laws;
pub mod nc;
pub mod perm;
pub mod quad;
pub mod word;

pub use engine::{
    exact_moment, exact_moment_complex, exact_moment_real, f_exponent, freeness_report,
    g_exponent, limit_moment, limit_moment_real, EngineError, FreenessEntry, FreenessReport,
    TermTable,
};
pub use exact::ExactValue;
pub use laws::{BlockPrediction, DensitySample, LawError, LawSpec};
pub use nc::{CumulantSequence, MomentSequence, NCPermutationSet, PairingSet};
pub use perm::{EpsilonVector, Partition, PermError, SignedPerm};
pub use word::{Case, Dims, Label, Regime, RegimeLimit, Word};
