//! Pointlike sets for pseudovarieties of the form GH, computed as the
//! least complex closed under unioning H-pointlike subsets of subgroups, and
//! certified from above by a product expansion automaton.
//!
//! Pipeline: [`complex::construct_cgh`] builds the candidate,
//! [`prodexp::build_setup_data`] and [`prodexp::explore`] build the
//! expansion, and [`flowcert::certify_pointlikes`] checks it.

pub mod bitset;
pub mod blowup;
pub mod caps;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod flowcert;
pub mod green;
pub mod grp;
pub mod prodexp;
pub mod sgp;
pub mod zeiger;

pub use bitset::BitSet;
pub use caps::Caps;
pub use error::{Error, Result};
pub use sgp::{FiniteSemigroup, Word};
