//! Exact computations around finite-rank bundles on twisted ind-Grassmannians:
//! splitting types on P¹, cohomology on P¹×P¹, extension ledgers, Segre curves
//! in Grassmannians and the final degree bound.

pub mod error;
pub mod extension_ledger;
pub mod p1bundles;
pub mod poly;
pub mod quadric;
pub mod ratlinalg;
pub mod sampling;
pub mod segre_curves;
pub mod twist_bound;

pub use error::{Error, Result};
pub use extension_ledger::{build_ledger, HInterval, LedgerEntry, Partition};
pub use p1bundles::{ChainBundle, SplittingType};
pub use quadric::{BiDegree, CohomologyTriple, FiberPointSet};
pub use ratlinalg::{RatMatrix, Rational};
pub use sampling::Sampler;
pub use twist_bound::IndGrassSpec;
