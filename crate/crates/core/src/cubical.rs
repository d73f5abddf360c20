//! Per-frame cell complexes.
//!
//! Cells are named by their barycenter with every coordinate doubled, so a
//! half-integer barycenter becomes an odd integer. An odd component is a unit
//! interval and an even one a degenerate interval; the dimension of a cell is
//! the number of odd components.
//!
//! Three builders are provided:
//!
//! * [`build_pixel_graph`]: one vertex per foreground pixel, edges between
//!   4-adjacent pixels.
//! * [`build_foreground_complex`]: each pixel is a closed unit square centered
//!   on it, so pixels touching at a corner share a vertex (8-connectivity).
//! * [`build_background_complex`]: vertices on the background points, with
//!   edges and squares between 4-adjacent points (4-connectivity).
//!
//! The foreground complex lives on a grid offset by half a pixel from the other
//! two: the vertex `(2x, 2y)` of a foreground complex is the top-left corner of
//! pixel `(x, y)`, not its center. Complexes of different kinds are never mixed.

use std::collections::BTreeSet;
use std::fmt;

use crate::imageio::{complement, BinaryImage};

/// An axis-aligned cube with doubled barycentric coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube<const N: usize> {
    pub coords: [i64; N],
}

/// A cell of a single frame: `[x2, y2]`.
pub type Cell2 = Cube<2>;
/// A cell of a stacked complex: `[x2, y2, t2]`.
pub type Cell3 = Cube<3>;

impl<const N: usize> Cube<N> {
    pub const fn new(coords: [i64; N]) -> Self {
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.iter().filter(|c| c.rem_euclid(2) == 1).count()
    }

    pub fn is_vertex(&self) -> bool {
        self.dim() == 0
    }

    /// Codimension-one faces: each odd coordinate replaced by `c - 1` and `c + 1`.
    pub fn facets(&self) -> Vec<Self> {
        let mut out = Vec::with_capacity(2 * N);
        for (axis, &c) in self.coords.iter().enumerate() {
            if c.rem_euclid(2) == 1 {
                for d in [-1, 1] {
                    let mut coords = self.coords;
                    coords[axis] = c + d;
                    out.push(Self { coords });
                }
            }
        }
        out
    }

    /// All proper faces, of every lower dimension.
    pub fn faces(&self) -> BTreeSet<Self> {
        let mut out = BTreeSet::new();
        let mut stack = self.facets();
        while let Some(f) = stack.pop() {
            if out.insert(f) {
                stack.extend(f.facets());
            }
        }
        out
    }
}

impl<const N: usize> fmt::Debug for Cube<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Cube<2> {
    /// The vertex sitting on pixel `(x, y)`.
    pub fn pixel_vertex(x: usize, y: usize) -> Self {
        Self::new([2 * x as i64, 2 * y as i64])
    }

    /// The unit square of pixel `(x, y)` on the half-offset foreground grid.
    ///
    /// The square spans `[x - ½, x + ½] × [y - ½, y + ½]`; shifting that grid by
    /// half a unit puts its corners on integers, so it is stored as
    /// `(2x + 1, 2y + 1)` and its top-left corner as `(2x, 2y)`.
    pub fn pixel_square(x: usize, y: usize) -> Self {
        Self::new([2 * x as i64 + 1, 2 * y as i64 + 1])
    }
}

/// A finite set of cubes closed under taking faces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CubicalComplex {
    cells: BTreeSet<Cell2>,
}

impl CubicalComplex {
    /// Adds the given cells together with all of their faces.
    pub fn from_cells(cells: impl IntoIterator<Item = Cell2>) -> Self {
        let mut out = BTreeSet::new();
        for c in cells {
            if out.insert(c) {
                out.extend(c.faces());
            }
        }
        Self { cells: out }
    }

    pub fn cells(&self) -> &BTreeSet<Cell2> {
        &self.cells
    }

    pub fn contains(&self, cell: &Cell2) -> bool {
        self.cells.contains(cell)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells_of_dim(&self, dim: usize) -> impl Iterator<Item = &Cell2> + '_ {
        self.cells.iter().filter(move |c| c.dim() == dim)
    }

    pub fn count_dim(&self, dim: usize) -> usize {
        self.cells_of_dim(dim).count()
    }

    pub fn is_closed(&self) -> bool {
        self.cells
            .iter()
            .all(|c| c.facets().iter().all(|f| self.cells.contains(f)))
    }
}

/// Which per-frame complex to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexMode {
    PixelGraph,
    Foreground,
    Background,
}

impl ComplexMode {
    pub fn build(self, image: &BinaryImage) -> CubicalComplex {
        match self {
            ComplexMode::PixelGraph => build_pixel_graph(image),
            ComplexMode::Foreground => build_foreground_complex(image),
            ComplexMode::Background => build_background_complex(image),
        }
    }
}

fn four_neighbour_edges(points: &BTreeSet<(usize, usize)>) -> impl Iterator<Item = Cell2> + '_ {
    points.iter().flat_map(move |&(x, y)| {
        let right = points
            .contains(&(x + 1, y))
            .then(|| Cell2::new([2 * x as i64 + 1, 2 * y as i64]));
        let down = points
            .contains(&(x, y + 1))
            .then(|| Cell2::new([2 * x as i64, 2 * y as i64 + 1]));
        right.into_iter().chain(down)
    })
}

pub fn build_pixel_graph(image: &BinaryImage) -> CubicalComplex {
    let points = image.foreground();
    let vertices = points.iter().map(|&(x, y)| Cell2::pixel_vertex(x, y));
    CubicalComplex {
        cells: vertices.chain(four_neighbour_edges(points)).collect(),
    }
}

pub fn build_foreground_complex(image: &BinaryImage) -> CubicalComplex {
    CubicalComplex::from_cells(
        image
            .foreground()
            .iter()
            .map(|&(x, y)| Cell2::pixel_square(x, y)),
    )
}

/// Vertices on `B^c`, edges between 4-adjacent background points and a square
/// wherever four background points form a unit square.
pub fn build_background_complex(image: &BinaryImage) -> CubicalComplex {
    build_lattice_complex(complement(image).foreground())
}

fn build_lattice_complex(points: &BTreeSet<(usize, usize)>) -> CubicalComplex {
    let mut cells: BTreeSet<Cell2> = points
        .iter()
        .map(|&(x, y)| Cell2::pixel_vertex(x, y))
        .collect();
    cells.extend(four_neighbour_edges(points));
    for &(x, y) in points {
        if points.contains(&(x + 1, y))
            && points.contains(&(x, y + 1))
            && points.contains(&(x + 1, y + 1))
        {
            cells.insert(Cell2::new([2 * x as i64 + 1, 2 * y as i64 + 1]));
        }
    }
    CubicalComplex { cells }
}
