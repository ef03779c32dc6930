//! Exact-arithmetic toolkit for (a,b,m)-copartitions: enumeration and
//! counting, the parity bijection for (1,1,2), overcopartitions, and
//! truncated q-series identities and positivity scans.

pub mod bijection;
pub mod conjectures;
pub mod copartition;
pub mod error;
pub mod overcopartition;
pub mod partition;
pub mod products;
pub mod report;
pub mod ring;
pub mod series;
pub mod verify;

use num_bigint::BigInt;

pub use copartition::{CopParams, Copartition};
pub use error::{Error, Result};
pub use partition::Partition;
pub use report::{IdentityReport, Mismatch};
pub use ring::{CoefficientCodec, CoefficientRing, Poly1, Poly2, SparsePoly};
pub use series::{Count, TruncatedSeries};

/// Integer q-series.
pub type IntSeries = TruncatedSeries<BigInt>;
/// q-series with coefficients in ℤ[z]; `z` marks overlined parts.
pub type ZSeries = TruncatedSeries<Poly1>;
/// q-series with coefficients in ℤ[x, y]; `x` marks sky parts, `y` ground parts.
pub type XYSeries = TruncatedSeries<Poly2>;
