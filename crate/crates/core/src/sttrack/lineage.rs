//! Backward tracking of a single vertex.

use std::collections::HashMap;

use thiserror::Error;

use crate::stacking::SpatiotemporalFiltration;
use crate::sttrack::paths::TrackState;
use crate::sttrack::tree::{build_tracking_tree, TrackingTree};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrackError {
    #[error("index {0} is not a vertex of the filtration")]
    UnknownVertex(usize),
    #[error("stored path of vertex {0} is not a walk to its representative")]
    BrokenPath(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lineage {
    pub vertex: usize,
    pub birth_vertex: usize,
    pub birth_frame: usize,
    /// `(frame, vertex)` pairs from `vertex` to `birth_vertex`.
    pub walk: Vec<(usize, usize)>,
    /// Ancestors in the tracking tree, nearest first.
    pub ancestors: Vec<usize>,
}

pub fn track(
    v: usize,
    state: &TrackState,
    filtration: &SpatiotemporalFiltration,
) -> Result<Lineage, TrackError> {
    track_with_tree(
        v,
        state,
        filtration,
        &build_tracking_tree(state, filtration),
    )
}

pub fn track_with_tree(
    v: usize,
    state: &TrackState,
    filtration: &SpatiotemporalFiltration,
    tree: &TrackingTree,
) -> Result<Lineage, TrackError> {
    if !filtration.is_vertex(v) {
        return Err(TrackError::UnknownVertex(v));
    }
    let birth = state.rep(v).ok_or(TrackError::UnknownVertex(v))?;
    let path = state.path(v).ok_or(TrackError::UnknownVertex(v))?;

    let mut walk = Vec::new();
    if !path.is_empty() {
        let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
        for e in path.iter() {
            let (a, b) = filtration.endpoints(e);
            incident.entry(a).or_default().push(e);
            incident.entry(b).or_default().push(e);
        }
        let (mut at, mut via) = (v, usize::MAX);
        walk.push((filtration.frame(v), v));
        while let Some(&e) = incident
            .get(&at)
            .and_then(|es| es.iter().find(|&&e| e != via))
        {
            let (a, b) = filtration.endpoints(e);
            at = if a == at { b } else { a };
            via = e;
            walk.push((filtration.frame(at), at));
            if walk.len() > path.len() + 1 {
                return Err(TrackError::BrokenPath(v));
            }
        }
        if at != birth || walk.len() != path.len() + 1 {
            return Err(TrackError::BrokenPath(v));
        }
    }

    Ok(Lineage {
        vertex: v,
        birth_vertex: birth,
        birth_frame: filtration.frame(birth),
        walk,
        ancestors: tree.ancestors(v),
    })
}
