//! Stacking frame complexes along time and ordering the result.
//!
//! Frame `j` (1-based) is lifted to `t2 = 2j`. A cell present at the same
//! spatial position in frames `j` and `j + 1` gets a temporal cell at
//! `t2 = 2j + 1`. Only the 1-skeleton is generated: spatial vertices and
//! edges, and temporal edges over vertices shared by consecutive frames.
//!
//! The filtration interleaves levels as `Q1, Q2, Q1,2, Q3, Q2,3, …, Qℓ, Qℓ-1,ℓ`.
//! Inside a level cells are sorted by dimension, then by `(t2, y2, x2)`.
//! Indices are 1-based.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::cubical::{Cell3, CubicalComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellKind {
    Spatial,
    Temporal,
}

impl CellKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CellKind::Spatial => "spatial",
            CellKind::Temporal => "temporal",
        }
    }
}

/// Spatial iff the time coordinate is an integer, i.e. `t2` is even.
pub fn classify(cell: &Cell3) -> CellKind {
    if cell.coords[2].rem_euclid(2) == 0 {
        CellKind::Spatial
    } else {
        CellKind::Temporal
    }
}

/// The frames a stacked cell belongs to: `{j}` for a spatial cell at `t2 = 2j`
/// and `{j, j + 1}` for a temporal cell at `t2 = 2j + 1`.
pub fn frames_of(cell: &Cell3) -> Frames {
    let t2 = cell.coords[2];
    let j = t2.div_euclid(2) as usize;
    match classify(cell) {
        CellKind::Spatial => Frames::One(j),
        CellKind::Temporal => Frames::Two(j, j + 1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frames {
    One(usize),
    Two(usize, usize),
}

impl Frames {
    /// The most recent frame touched.
    pub fn newest(self) -> usize {
        match self {
            Frames::One(j) => j,
            Frames::Two(_, j) => j,
        }
    }

    pub fn oldest(self) -> usize {
        match self {
            Frames::One(j) => j,
            Frames::Two(j, _) => j,
        }
    }
}

/// The 1-skeleton of the stacked complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackedComplex {
    cells: BTreeSet<Cell3>,
    frames: usize,
}

impl StackedComplex {
    pub fn cells(&self) -> &BTreeSet<Cell3> {
        &self.cells
    }

    pub fn frame_count(&self) -> usize {
        self.frames
    }

    pub fn count(&self, kind: CellKind, dim: usize) -> usize {
        self.cells
            .iter()
            .filter(|c| classify(c) == kind && c.dim() == dim)
            .count()
    }
}

/// Lifts each complex to its time layer and adds temporal edges over vertices
/// shared by consecutive frames, for every slab `1 ≤ j ≤ ℓ - 1`.
pub fn stack(complexes: &[CubicalComplex]) -> StackedComplex {
    let mut cells = BTreeSet::new();
    for (i, q) in complexes.iter().enumerate() {
        let t2 = 2 * (i as i64 + 1);
        for c in q.cells().iter().filter(|c| c.dim() <= 1) {
            cells.insert(Cell3::new([c.coords[0], c.coords[1], t2]));
        }
    }
    for (i, pair) in complexes.windows(2).enumerate() {
        let t2 = 2 * (i as i64 + 1) + 1;
        for v in pair[0].cells_of_dim(0) {
            if pair[1].contains(v) {
                cells.insert(Cell3::new([v.coords[0], v.coords[1], t2]));
            }
        }
    }
    StackedComplex {
        cells,
        frames: complexes.len(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LevelTag {
    /// The cells of frame `j`.
    Spatial(usize),
    /// The temporal cells joining frames `j` and `j + 1`.
    Temporal(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub tag: LevelTag,
    /// Index of the first cell in this level.
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderedCell {
    pub index: usize,
    pub cube: Cell3,
    pub kind: CellKind,
    pub dim: usize,
}

impl OrderedCell {
    pub fn frames(&self) -> Frames {
        frames_of(&self.cube)
    }
}

/// Convenience over [`frames_of`] for an ordered cell.
pub fn cell_frames(cell: &OrderedCell) -> Frames {
    cell.frames()
}

/// A total order on the 0- and 1-cells of a stacked complex.
#[derive(Clone, Debug)]
pub struct SpatiotemporalFiltration {
    levels: Vec<Level>,
    cells: Vec<OrderedCell>,
    frames: usize,
    index_of: HashMap<Cell3, usize>,
    endpoints: Vec<(usize, usize)>,
    frame_vertices: Vec<Vec<usize>>,
}

fn level_order(frames: usize) -> Vec<LevelTag> {
    let mut tags = Vec::with_capacity(2 * frames);
    for j in 1..=frames {
        tags.push(LevelTag::Spatial(j));
        if j >= 2 {
            tags.push(LevelTag::Temporal(j - 1));
        }
    }
    tags
}

fn level_of(cell: &Cell3) -> LevelTag {
    match frames_of(cell) {
        Frames::One(j) => LevelTag::Spatial(j),
        Frames::Two(j, _) => LevelTag::Temporal(j),
    }
}

pub fn build_filtration(stacked: &StackedComplex) -> SpatiotemporalFiltration {
    let mut by_level: HashMap<LevelTag, Vec<Cell3>> = HashMap::new();
    for c in stacked.cells() {
        by_level.entry(level_of(c)).or_default().push(*c);
    }

    let mut levels = Vec::new();
    let mut cells = Vec::with_capacity(stacked.cells().len());
    for tag in level_order(stacked.frame_count()) {
        let mut members = by_level.remove(&tag).unwrap_or_default();
        members.sort_by_key(|c| (c.dim(), c.coords[2], c.coords[1], c.coords[0]));
        levels.push(Level {
            tag,
            start: cells.len() + 1,
            len: members.len(),
        });
        for cube in members {
            cells.push(OrderedCell {
                index: cells.len() + 1,
                cube,
                kind: classify(&cube),
                dim: cube.dim(),
            });
        }
    }
    debug_assert!(by_level.is_empty(), "cells outside the frame range");

    let index_of: HashMap<Cell3, usize> = cells.iter().map(|c| (c.cube, c.index)).collect();
    let mut endpoints = vec![(0, 0); cells.len() + 1];
    let mut frame_vertices = vec![Vec::new(); stacked.frame_count() + 1];
    for c in &cells {
        if c.dim == 1 {
            let f = c.cube.facets();
            let (a, b) = (index_of[&f[0]], index_of[&f[1]]);
            endpoints[c.index] = (a.min(b), a.max(b));
        } else {
            frame_vertices[c.frames().newest()].push(c.index);
        }
    }

    SpatiotemporalFiltration {
        levels,
        cells,
        frames: stacked.frame_count(),
        index_of,
        endpoints,
        frame_vertices,
    }
}

impl SpatiotemporalFiltration {
    /// Stacks and orders a list of frame complexes in one step.
    pub fn from_complexes(complexes: &[CubicalComplex]) -> Self {
        build_filtration(&stack(complexes))
    }

    /// Number of ordered cells `m`.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn frame_count(&self) -> usize {
        self.frames
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn cells(&self) -> &[OrderedCell] {
        &self.cells
    }

    /// The cell at a 1-based index.
    ///
    /// # Panics
    ///
    /// If `index` is 0 or greater than [`len`](Self::len).
    pub fn cell(&self, index: usize) -> &OrderedCell {
        &self.cells[index - 1]
    }

    pub fn get(&self, index: usize) -> Option<&OrderedCell> {
        index.checked_sub(1).and_then(|i| self.cells.get(i))
    }

    pub fn index_of(&self, cube: &Cell3) -> Option<usize> {
        self.index_of.get(cube).copied()
    }

    pub fn is_vertex(&self, index: usize) -> bool {
        self.get(index).is_some_and(|c| c.dim == 0)
    }

    pub fn is_edge(&self, index: usize) -> bool {
        self.get(index).is_some_and(|c| c.dim == 1)
    }

    /// Endpoint vertex indices of an edge, smaller first.
    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        debug_assert!(self.is_edge(edge));
        self.endpoints[edge]
    }

    /// Frame of a vertex.
    pub fn frame(&self, vertex: usize) -> usize {
        self.cell(vertex).frames().newest()
    }

    /// Vertex indices of frame `j`, ascending.
    pub fn vertices_in_frame(&self, j: usize) -> &[usize] {
        self.frame_vertices.get(j).map_or(&[], Vec::as_slice)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().filter(|c| c.dim == 0).map(|c| c.index)
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().filter(|c| c.dim == 1).map(|c| c.index)
    }

    /// Text listing `index kind dim (x2,y2,t2)`, one cell per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let [x, y, t] = c.cube.coords;
            writeln!(
                out,
                "{} {} {} ({x},{y},{t})",
                c.index,
                c.kind.as_str(),
                c.dim
            )
            .expect("write to string");
        }
        out
    }
}
