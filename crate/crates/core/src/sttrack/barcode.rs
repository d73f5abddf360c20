//! Consolidated barcodes: the spatiotemporal one and the classical reference.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::stacking::SpatiotemporalFiltration;
use crate::sttrack::paths::TrackState;

/// A bar born when vertex `birth` is added and last extended at `death`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bar {
    pub birth: usize,
    pub death: usize,
    /// Representative vertex; always the birth vertex.
    pub rep: usize,
}

impl Bar {
    pub fn new(birth: usize, death: usize) -> Self {
        Self {
            birth,
            death,
            rep: birth,
        }
    }
}

/// At most one bar per birth index, sorted by birth.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Barcode {
    bars: Vec<Bar>,
}

/// External form of a bar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarRecord {
    pub birth: usize,
    pub death: usize,
    pub rep_vertex: usize,
    pub birth_frame: usize,
    pub death_frame: usize,
}

impl Barcode {
    pub fn from_bars(bars: impl IntoIterator<Item = Bar>) -> Self {
        let by_birth: BTreeMap<usize, Bar> = bars.into_iter().map(|b| (b.birth, b)).collect();
        Self {
            bars: by_birth.into_values().collect(),
        }
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn get(&self, birth: usize) -> Option<&Bar> {
        self.bars
            .binary_search_by_key(&birth, |b| b.birth)
            .ok()
            .map(|i| &self.bars[i])
    }

    pub fn contains(&self, birth: usize, death: usize) -> bool {
        self.get(birth).is_some_and(|b| b.death == death)
    }

    pub fn records(&self, filtration: &SpatiotemporalFiltration) -> Vec<BarRecord> {
        self.bars
            .iter()
            .map(|b| BarRecord {
                birth: b.birth,
                death: b.death,
                rep_vertex: b.rep,
                birth_frame: filtration.frame(b.birth),
                death_frame: filtration.cell(b.death).frames().newest(),
            })
            .collect()
    }

    /// Bars whose frame span `death_frame - birth_frame` is at least `min_span`.
    pub fn long_bars(&self, filtration: &SpatiotemporalFiltration, min_span: usize) -> Vec<Bar> {
        self.bars
            .iter()
            .zip(self.records(filtration))
            .filter(|(_, r)| r.death_frame - r.birth_frame >= min_span)
            .map(|(b, _)| *b)
            .collect()
    }
}

/// Longest raw bar per birth. Births never extended keep `death = birth`.
pub fn consolidate(state: &TrackState) -> Barcode {
    let mut deaths: BTreeMap<usize, usize> = BTreeMap::new();
    for &(birth, death) in state.raw_bars() {
        let d = deaths.entry(birth).or_insert(death);
        *d = (*d).max(death);
    }
    Barcode::from_bars(deaths.into_iter().map(|(b, d)| Bar::new(b, d)))
}

/// Ordinary 0-dimensional persistence over the same cell order: union-find
/// with the elder rule, survivors closed at `m`.
pub fn classical_0barcode(filtration: &SpatiotemporalFiltration) -> Barcode {
    let m = filtration.len();
    let mut parent: Vec<usize> = (0..=m).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut deaths: BTreeMap<usize, usize> = BTreeMap::new();
    for c in filtration.cells() {
        if c.dim == 0 {
            continue;
        }
        let (a, b) = filtration.endpoints(c.index);
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra != rb {
            // roots are the oldest vertex of their component
            let (elder, younger) = (ra.min(rb), ra.max(rb));
            parent[younger] = elder;
            deaths.insert(younger, c.index);
        }
    }
    Barcode::from_bars(
        filtration
            .vertices()
            .map(|v| Bar::new(v, deaths.get(&v).copied().unwrap_or(m))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::build_pixel_graph;
    use crate::imageio::BinaryImage;
    use crate::sttrack::paths::compute_paths;

    fn seq(frames: &[&[&str]]) -> SpatiotemporalFiltration {
        let qs: Vec<_> = frames
            .iter()
            .map(|r| build_pixel_graph(&BinaryImage::from_rows(r).unwrap()))
            .collect();
        SpatiotemporalFiltration::from_complexes(&qs)
    }

    #[test]
    fn consolidate_takes_max_per_birth() {
        let f = seq(&[&["1"], &["1"]]);
        let bc = consolidate(&compute_paths(&f));
        assert_eq!(bc.bars(), &[Bar::new(1, 3), Bar::new(2, 3)]);

        let f = seq(&[&["1"]]);
        assert_eq!(consolidate(&compute_paths(&f)).bars(), &[Bar::new(1, 1)]);
    }

    #[test]
    fn classical_examples() {
        let f = seq(&[&["1"], &["1"]]);
        assert_eq!(
            classical_0barcode(&f).bars(),
            &[Bar::new(1, 3), Bar::new(2, 3)]
        );

        let f = seq(&[&["101"]]);
        assert_eq!(
            classical_0barcode(&f).bars(),
            &[Bar::new(1, 2), Bar::new(2, 2)]
        );
    }

    #[test]
    fn records_carry_frames() {
        let f = seq(&[&["1"], &["1"]]);
        let rec = consolidate(&compute_paths(&f)).records(&f);
        assert_eq!(
            rec[0],
            BarRecord {
                birth: 1,
                death: 3,
                rep_vertex: 1,
                birth_frame: 1,
                death_frame: 2
            }
        );
        assert_eq!(
            serde_json::to_string(&rec[1]).unwrap(),
            r#"{"birth":2,"death":3,"rep_vertex":2,"birth_frame":2,"death_frame":2}"#
        );
    }

    #[test]
    fn long_bar_threshold() {
        let f = seq(&[&["1"], &["1"], &["1"]]);
        let bc = consolidate(&compute_paths(&f));
        assert_eq!(bc.long_bars(&f, 2), [Bar::new(1, bc.get(1).unwrap().death)]);
        assert_eq!(bc.long_bars(&f, 1).len(), 1);
        assert_eq!(bc.long_bars(&f, 0).len(), 3);
    }
}
