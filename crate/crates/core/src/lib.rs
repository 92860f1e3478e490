//! Closed symmetric monoidal dualities on chain complexes over F_p and on
//! sheaf-complexes over finite sets, with exact checkers for the coherence
//! diagrams, sign compatibilities and Witt-group transfers.

pub mod complex;
pub mod duality;
pub mod error;
pub mod field;
pub mod harness;
pub mod monoidal;
pub mod signs;
pub mod sites;
pub mod witt;

pub use complex::{ChainMap, Complex};
pub use error::{Error, Result};
pub use field::{Matrix, PrimeField};
pub use monoidal::{ClosedMonoidal, StructuralContext};
