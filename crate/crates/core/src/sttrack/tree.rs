//! The tracking forest built from the `TE` edges.

use std::collections::BTreeMap;

use crate::stacking::{CellKind, SpatiotemporalFiltration};
use crate::sttrack::paths::TrackState;

/// Parent links `child -> (parent, via edge)`.
///
/// A temporal `TE` edge points from its newer-frame endpoint to the older one.
/// A spatial `TE` edge points from the endpoint whose representative was newer
/// when the edge was inserted toward the other endpoint. A link that would give
/// a vertex a second parent or close a cycle is skipped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrackingTree {
    parent: BTreeMap<usize, (usize, usize)>,
}

impl TrackingTree {
    pub fn parent(&self, v: usize) -> Option<(usize, usize)> {
        self.parent.get(&v).copied()
    }

    pub fn links(&self) -> &BTreeMap<usize, (usize, usize)> {
        &self.parent
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Parents of `v`, nearest first.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut at = v;
        while let Some((p, _)) = self.parent(at) {
            out.push(p);
            at = p;
        }
        out
    }

    fn reaches(&self, from: usize, target: usize) -> bool {
        let mut at = from;
        loop {
            if at == target {
                return true;
            }
            match self.parent(at) {
                Some((p, _)) => at = p,
                None => return false,
            }
        }
    }
}

pub fn build_tracking_tree(
    state: &TrackState,
    filtration: &SpatiotemporalFiltration,
) -> TrackingTree {
    let mut tree = TrackingTree::default();
    for ev in state.events() {
        let (child, parent) = match filtration.cell(ev.edge).kind {
            CellKind::Temporal => {
                let (a, b) = filtration.endpoints(ev.edge);
                if filtration.frame(a) > filtration.frame(b) {
                    (a, b)
                } else {
                    (b, a)
                }
            }
            CellKind::Spatial => (ev.newer_end, ev.older_end),
        };
        if tree.parent.contains_key(&child) || tree.reaches(parent, child) {
            continue;
        }
        tree.parent.insert(child, (parent, ev.edge));
    }
    tree
}
