//! Experiment drivers: structural verification, the solvability
//! equivalence, parameter sweeps and exports.

pub mod equivalence;
pub mod export;
pub mod structure;
pub mod sweep;

pub use equivalence::{verify_equivalence, EquivalenceOptions, Verdict};
pub use export::{export, ExportFormat};
pub use structure::{verify_structure, StructureReport};
pub use sweep::{sweep, SweepConfig, SweepReport};
