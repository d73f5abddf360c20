//! Two independent tests for spatiotemporal paths.
//!
//! [`is_spatiotemporal_path`] works on an edge chain: it must be a simple
//! vertex-to-vertex path using at most one temporal edge per slab.
//! [`is_homological_0path`] works on a subcomplex and checks the homological
//! conditions by counting components and cycles of the underlying graph, both
//! for the whole subcomplex and for its intersection with every slab.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::cubical::Cell3;
use crate::stacking::{classify, CellKind, SpatiotemporalFiltration};
use crate::sttrack::chain::EdgeChain;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathCheck {
    /// The empty chain, a path from a vertex to itself.
    Empty,
    /// A valid path between two vertices, smaller index first.
    Valid {
        ends: (usize, usize),
    },
    Invalid(PathDefect),
}

impl PathCheck {
    pub fn is_valid(&self) -> bool {
        !matches!(self, PathCheck::Invalid(_))
    }

    /// True if the chain is a valid path joining exactly `a` and `b`.
    pub fn joins(&self, a: usize, b: usize) -> bool {
        match *self {
            PathCheck::Empty => a == b,
            PathCheck::Valid { ends } => ends == (a.min(b), a.max(b)),
            PathCheck::Invalid(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathDefect {
    NotAnEdge(usize),
    /// More than one edge crosses the slab between frames `j` and `j + 1`.
    SlabReused(usize),
    /// A vertex touched by three or more edges.
    Branching(usize),
    Disconnected,
    Cycle,
}

pub fn is_spatiotemporal_path(
    chain: &EdgeChain,
    filtration: &SpatiotemporalFiltration,
) -> PathCheck {
    if chain.is_empty() {
        return PathCheck::Empty;
    }
    let mut slabs = BTreeSet::new();
    let mut degree: HashMap<usize, u32> = HashMap::with_capacity(chain.len() + 1);
    for e in chain.iter() {
        let Some(cell) = filtration.get(e).filter(|c| c.dim == 1) else {
            return PathCheck::Invalid(PathDefect::NotAnEdge(e));
        };
        if cell.kind == CellKind::Temporal {
            let slab = cell.frames().oldest();
            if !slabs.insert(slab) {
                return PathCheck::Invalid(PathDefect::SlabReused(slab));
            }
        }
        let (a, b) = filtration.endpoints(e);
        for v in [a, b] {
            let d = degree.entry(v).or_insert(0);
            *d += 1;
            if *d > 2 {
                return PathCheck::Invalid(PathDefect::Branching(v));
            }
        }
    }
    // max degree 2: a disjoint union of paths and cycles
    let ends: Vec<usize> = degree
        .iter()
        .filter(|&(_, &d)| d == 1)
        .map(|(&v, _)| v)
        .collect();
    if degree.len() != chain.len() + 1 {
        return PathCheck::Invalid(if ends.is_empty() {
            PathDefect::Cycle
        } else {
            PathDefect::Disconnected
        });
    }
    // |V| = |E| + 1 with max degree 2 is a single path unless a cycle sits
    // beside a path; walking from one end settles it
    let (a, b) = (ends[0].min(ends[1]), ends[0].max(ends[1]));
    let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in chain.iter() {
        let (u, v) = filtration.endpoints(e);
        incident.entry(u).or_default().push(e);
        incident.entry(v).or_default().push(e);
    }
    let (mut at, mut via, mut walked) = (a, usize::MAX, 0);
    while let Some(&e) = incident[&at].iter().find(|&&e| e != via) {
        let (u, v) = filtration.endpoints(e);
        at = if u == at { v } else { u };
        via = e;
        walked += 1;
    }
    if walked != chain.len() || at != b {
        return PathCheck::Invalid(PathDefect::Disconnected);
    }
    PathCheck::Valid { ends: (a, b) }
}

/// Closes a cell set under faces.
pub fn closure(cells: impl IntoIterator<Item = Cell3>) -> BTreeSet<Cell3> {
    let mut out = BTreeSet::new();
    for c in cells {
        out.extend(c.faces());
        out.insert(c);
    }
    out
}

/// Number of connected components and independent cycles of a graph.
fn graph_homology(vertices: &BTreeSet<Cell3>, edges: &[Cell3]) -> (usize, usize) {
    let index: BTreeMap<Cell3, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = vertices.len();
    for e in edges {
        let f = e.facets();
        let (a, b) = (
            find(&mut parent, index[&f[0]]),
            find(&mut parent, index[&f[1]]),
        );
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    let cycles = edges.len() + components - vertices.len();
    (components, cycles)
}

/// Whether a subcomplex of edges and their faces is a homological 0-path whose
/// intersection with every slab is connected (or empty) and acyclic.
pub fn is_homological_0path(
    cells: &BTreeSet<Cell3>,
    filtration: &SpatiotemporalFiltration,
) -> bool {
    let complex = closure(cells.iter().copied());
    if complex
        .iter()
        .any(|c| c.dim() > 1 || filtration.index_of(c).is_none())
    {
        return false;
    }
    let vertices: BTreeSet<Cell3> = complex.iter().filter(|c| c.dim() == 0).copied().collect();
    let edges: Vec<Cell3> = complex.iter().filter(|c| c.dim() == 1).copied().collect();
    if edges.is_empty() {
        return false;
    }

    // H0(P) = ℤ/2 and H1(P) = 0
    if graph_homology(&vertices, &edges) != (1, 0) {
        return false;
    }
    // ∂P: vertices that are a face of exactly one edge; two single points
    let mut degree: BTreeMap<Cell3, usize> = BTreeMap::new();
    for e in &edges {
        for v in e.facets() {
            *degree.entry(v).or_default() += 1;
        }
    }
    if degree.values().filter(|&&d| d == 1).count() != 2 {
        return false;
    }

    let mut slabs: BTreeMap<i64, Vec<Cell3>> = BTreeMap::new();
    for e in edges.iter().filter(|e| classify(e) == CellKind::Temporal) {
        slabs.entry(e.coords[2]).or_default().push(*e);
    }
    slabs.values().all(|slab_edges| {
        let slab = closure(slab_edges.iter().copied());
        let vs: BTreeSet<Cell3> = slab.iter().filter(|c| c.dim() == 0).copied().collect();
        graph_homology(&vs, slab_edges) == (1, 0)
    })
}
