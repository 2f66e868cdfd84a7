//! Exact entropy computations for endomorphisms of locally compact abelian
//! groups and their Pontryagin duals: finite groups, profinite towers and
//! their torsion duals, ℚ_p^d and ℝⁿ.

pub mod bridge;
pub mod duality;
pub mod entropyseq;
pub mod error;
pub mod exec;
pub mod fingroup;
pub mod linalg;
pub mod oracle;
pub mod padic;
pub mod random;
pub mod realspace;
mod serde_big;
pub mod tdlca;

pub use error::{Error, Result};
pub use exec::Execution;
