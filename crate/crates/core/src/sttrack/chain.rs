//! Edge chains with ℤ/2 coefficients, stored as sets of edge indices.

use std::collections::BTreeSet;
use std::ops::{Add, AddAssign};

use serde::Serialize;

/// A 1-chain over ℤ/2. Addition is symmetric difference, so `c + c = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct EdgeChain(BTreeSet<usize>);

impl EdgeChain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn edge(index: usize) -> Self {
        Self(BTreeSet::from([index]))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.0.contains(&edge)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Adds a single edge (toggles its coefficient).
    pub fn toggle(&mut self, edge: usize) {
        if !self.0.remove(&edge) {
            self.0.insert(edge);
        }
    }
}

impl FromIterator<usize> for EdgeChain {
    /// Sums the edges, so an edge listed twice cancels.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut c = Self::new();
        for e in iter {
            c.toggle(e);
        }
        c
    }
}

impl AddAssign<&EdgeChain> for EdgeChain {
    fn add_assign(&mut self, rhs: &EdgeChain) {
        for &e in &rhs.0 {
            self.toggle(e);
        }
    }
}

impl Add<&EdgeChain> for &EdgeChain {
    type Output = EdgeChain;

    fn add(self, rhs: &EdgeChain) -> EdgeChain {
        EdgeChain(self.0.symmetric_difference(&rhs.0).copied().collect())
    }
}

impl Add for EdgeChain {
    type Output = EdgeChain;

    fn add(mut self, rhs: EdgeChain) -> EdgeChain {
        self += &rhs;
        self
    }
}
