//! Exact enumeration of 3-nilpotent semigroups.
//!
//! A 3-nilpotent semigroup with minimal generating set `X` (`|X| = r`) and
//! `k` non-zero products is determined by a partial partition of `X x X` into
//! `k` blocks, and has order `n = r + k + 1`. Counting semigroups therefore
//! reduces to counting partial partitions, up to the coordinate-wise action of
//! the symmetric group on `X` and, for anti-isomorphism, the twist
//! `(x, y) -> (y, x)`.
//!
//! - [`exactmath`]: Stirling, Bell, binomial and factorial kernels.
//! - [`cycletype`]: integer partitions and per-cycle-type statistics.
//! - [`bounds`]: closed-form counts and semirigid upper bounds.
//! - [`burnside`]: exact isomorphism-class counts via fixed-point counting.
//! - [`oracle`]: brute-force enumeration for small orders.
//! - [`table`]: labeled count series with CSV and JSON output.
//! - [`published`]: reference values for cross-checking.
//! - [`verify`]: cross-checks between all of the above.

pub mod bounds;
pub mod burnside;
pub mod cycletype;
pub mod error;
pub mod exactmath;
pub mod oracle;
pub mod published;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
