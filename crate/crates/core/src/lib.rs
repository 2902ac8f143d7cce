//! Classification of large tilting modules over tame hereditary algebras.
//!
//! Everything is combinatorial: tubes are cyclic families of uniserial
//! modules, and a large tilting module is determined up to equivalence by a
//! branch module `Y` in the non-homogeneous tubes together with a set `Λ` of
//! tubes contributing Prüfer modules.
//!
//! ```
//! use tametilt::{LambdaSet, TubeRegistry};
//!
//! let reg = TubeRegistry::custom(&[("a", 3)], true).unwrap();
//! let descriptors = reg.enumerate_descriptors();
//! // ten branch modules in a rank-3 tube, four choices of Λ
//! assert_eq!(descriptors.len(), 40);
//! let lukas = reg
//!     .descriptor_from_pair(&Default::default(), &LambdaSet::empty())
//!     .unwrap();
//! assert!(lukas.predicates().noetherian_over_endo);
//! ```

pub mod branch;
pub mod classify;
pub mod cli;
pub mod error;
pub mod localize;
pub mod oracle;
pub mod registry;
pub mod resolving;
pub mod tube;

pub use branch::{BranchModule, BranchViolation, VertexSet};
pub use classify::{
    CotiltingDescriptor, Decomposition, Predicates, TiltingDescriptor, TorsionFreeLabel, TubeCase,
};
pub use error::{Error, Result};
pub use localize::{
    LocalizationTilting, LocalizedRegistry, QuasiSimpleSet, QuotientDecomposition, TensorImage,
};
pub use oracle::{verify_suite, OracleReport, VerifyBounds};
pub use registry::{Config, LambdaSet, MultiplicityMap, TubeId, TubeRegistry};
pub use resolving::{AddTProfile, ResolvingFilter, TubeFilter, TubeProfile};
pub use tube::{Cell, Finite, HomResult, QuasiSimpleRef, RegPoint, Tube};

/// Schema tag carried by every JSON document.
pub const SCHEMA: &str = "tametilt/1";
