//! Time-monotone reachability, used as a reference for the tracker.
//!
//! A spatiotemporal path never crosses a slab twice, so between two vertices it
//! only ever moves in one time direction. Seen from the newer end, it follows
//! spatial edges freely and temporal edges only toward the older frame.

use std::collections::{BTreeSet, VecDeque};

use crate::stacking::{CellKind, SpatiotemporalFiltration};

/// Directed graph of allowed moves: spatial edges both ways, temporal edges
/// from the newer frame to the older one.
pub struct MonotoneGraph {
    moves: Vec<Vec<usize>>,
}

impl MonotoneGraph {
    pub fn new(filtration: &SpatiotemporalFiltration) -> Self {
        let mut moves = vec![Vec::new(); filtration.len() + 1];
        for c in filtration.cells().iter().filter(|c| c.dim == 1) {
            let (a, b) = filtration.endpoints(c.index);
            match c.kind {
                CellKind::Spatial => {
                    moves[a].push(b);
                    moves[b].push(a);
                }
                CellKind::Temporal => {
                    let (newer, older) = if filtration.frame(a) > filtration.frame(b) {
                        (a, b)
                    } else {
                        (b, a)
                    };
                    moves[newer].push(older);
                }
            }
        }
        Self { moves }
    }

    /// Every vertex reachable from `v` (including `v`).
    pub fn reachable(&self, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([v]);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.moves[u] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// The oldest (minimum-index) vertex spatiotemporally connected to `v`.
    pub fn oldest(&self, v: usize) -> usize {
        *self.reachable(v).first().expect("v reaches itself")
    }
}

/// One-shot form of [`MonotoneGraph::oldest`].
pub fn oldest_connected_oracle(v: usize, filtration: &SpatiotemporalFiltration) -> usize {
    MonotoneGraph::new(filtration).oldest(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::build_pixel_graph;
    use crate::imageio::BinaryImage;

    fn seq(frames: &[&[&str]]) -> SpatiotemporalFiltration {
        let qs: Vec<_> = frames
            .iter()
            .map(|r| build_pixel_graph(&BinaryImage::from_rows(r).unwrap()))
            .collect();
        SpatiotemporalFiltration::from_complexes(&qs)
    }

    #[test]
    fn one_step_back() {
        let f = seq(&[&["1"], &["1"]]);
        assert_eq!(oldest_connected_oracle(2, &f), 1);
        assert_eq!(oldest_connected_oracle(1, &f), 1);
    }

    #[test]
    fn isolated_vertex() {
        let f = seq(&[&["1"]]);
        assert_eq!(oldest_connected_oracle(1, &f), 1);
    }

    #[test]
    fn cannot_go_back_up() {
        // frame 1: one pixel at x=0. frame 2: pixels at x=0 and x=2, apart.
        // frame 3: bar joining x=0..2. The frame-2 pixel at x=2 is not
        // connected to frame 1, but frame 3 is.
        let f = seq(&[&["100"], &["101"], &["111"]]);
        let g = MonotoneGraph::new(&f);
        let v_x2_f2 = f.index_of(&crate::cubical::Cell3::new([4, 0, 4])).unwrap();
        assert_eq!(g.oldest(v_x2_f2), v_x2_f2);
        let v_x2_f3 = f.index_of(&crate::cubical::Cell3::new([4, 0, 6])).unwrap();
        assert_eq!(g.oldest(v_x2_f3), 1);
    }
}
