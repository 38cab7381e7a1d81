//! Exact arithmetic on weighted projective spaces: well-formedness, Fano
//! index, anticanonical volume, Reid-Tai classification of the coordinate
//! points, certified extremal families and bounded exhaustive search.

pub mod arith;
pub mod cli;
pub mod error;
pub mod families;
pub mod golden;
pub mod report;
pub mod search;
pub mod singularity;
pub mod wps;

pub use arith::{sylvester, Nat, Rat};
pub use error::{Error, Result};
pub use families::{generate, FamilyId, FamilyInstance, FamilyVerdict};
pub use report::{analyze, classify_wps, Classification, VerifyMode, WpsReport, DEFAULT_COST_CAP};
pub use search::{find_extremal, run_search, ClassFilter, Objective, SearchConfig, SearchRecord};
pub use singularity::{CyclicQuotientSingularity, SingularityClass, SubsetCertificate};
pub use wps::Weights;
