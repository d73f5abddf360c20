//! Spatiotemporal tracking of connected components.

pub mod barcode;
pub mod chain;
pub mod lineage;
pub mod oracle;
pub mod paths;
pub mod tree;
pub mod validate;

pub use barcode::{classical_0barcode, consolidate, Bar, BarRecord, Barcode};
pub use chain::EdgeChain;
pub use lineage::{track, track_with_tree, Lineage, TrackError};
pub use oracle::{oldest_connected_oracle, MonotoneGraph};
pub use paths::{compute_paths, compute_paths_with, MergeEvent, Repair, RepairPolicy, TrackState};
pub use tree::{build_tracking_tree, TrackingTree};
pub use validate::{closure, is_homological_0path, is_spatiotemporal_path, PathCheck, PathDefect};
