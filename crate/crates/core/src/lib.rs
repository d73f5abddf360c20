//! Tracking connected components of binary image sequences over time.
//!
//! A sequence of frames is turned into per-frame cell complexes
//! ([`cubical`]), stacked along time and ordered into a filtration
//! ([`stacking`]), and scanned once to produce, for every vertex, a path back
//! to the oldest vertex it can reach without moving forward in time, together
//! with a barcode of component lifetimes ([`sttrack`]).
//!
//! ```
//! use sttrack_core::{analyze, imageio::parse_json, ComplexMode};
//!
//! let seq = parse_json(br#"{"width":1,"height":1,"frames":[["1"],["1"]]}"#).unwrap();
//! let a = analyze(&seq, ComplexMode::PixelGraph);
//! assert_eq!(a.state.rep(2), Some(1));
//! assert!(a.barcode.contains(1, 3));
//! ```

pub mod cubical;
pub mod imageio;
pub mod stacking;
pub mod sttrack;

pub use cubical::ComplexMode;
pub use stacking::SpatiotemporalFiltration;

use imageio::ImageSequence;
use sttrack::{compute_paths, consolidate, Barcode, TrackState};

/// Everything computed for one sequence in one mode.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub filtration: SpatiotemporalFiltration,
    pub state: TrackState,
    pub barcode: Barcode,
}

pub fn build_filtration(seq: &ImageSequence, mode: ComplexMode) -> SpatiotemporalFiltration {
    let complexes: Vec<_> = seq.frames().iter().map(|f| mode.build(f)).collect();
    SpatiotemporalFiltration::from_complexes(&complexes)
}

pub fn analyze(seq: &ImageSequence, mode: ComplexMode) -> Analysis {
    let filtration = build_filtration(seq, mode);
    let state = compute_paths(&filtration);
    let barcode = consolidate(&state);
    Analysis {
        filtration,
        state,
        barcode,
    }
}
