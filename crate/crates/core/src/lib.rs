//! Exact computation with Higman-Thompson prefix maps, synchronous Mealy
//! machines and the homeomorphisms of Cantor space they induce, together
//! with the circle quotient and germ invariants at fixed points.

pub mod anchored;
pub mod artifact;
pub mod circle;
pub mod cli;
pub mod error;
pub mod germ;
pub mod mealy;
pub mod prefix_map;
pub mod words;

pub use anchored::{AnchoredHomeo, Cell, RawEdge, RawInitialTransducer, WordImage};
pub use artifact::{parse_artifact, Artifact};
pub use error::{Error, Result};
pub use germ::{germ_at, germ_compose, Germ};
pub use mealy::{SyncCertificate, SyncVerdict, SynchronousTransducer, TailImage};
pub use prefix_map::{PrefixMap, SmallSupportFactors};
pub use words::{CompleteAntichain, EventuallyPeriodicPoint, Letter, Params, PeriodicTail, Word, WordKind};
