//! Spatiotemporal paths and the raw spatiotemporal barcode.
//!
//! Cells are processed in filtration order while maintaining:
//!
//! * `H`: surviving vertices, one per live spatiotemporally connected component;
//! * `f`: for every vertex, the oldest surviving vertex it is connected to;
//! * `φ`: for every vertex `v`, a spatiotemporal path from `v` to `f(v)`;
//! * `TE`: edges whose endpoints had different representatives when added;
//! * raw bars `(birth, death)`, one or two per event.
//!
//! For a `TE` edge `σ_i` with endpoints `σ_j`, `σ_j'` and representatives
//! `k = f(j) > k' = f(j')`, every vertex `ℓ` of the newest frame `r` touched by
//! the edge with `f(ℓ) = k` is moved to `k'` when
//! `φ(ℓ) + φ(j) + σ_i + φ(j')` is a spatiotemporal path from `ℓ` to `k'`
//! (always when `ℓ = j`). Path updates are staged and committed after the
//! sweep, so every test during the sweep sees the values from before the edge.
//!
//! The sweep runs for every `TE` edge, whether or not `k` is retired from `H`.
//! If `k` was retired and a vertex of frame `r` still points at it after the
//! sweep, that vertex is repaired: `f(ℓ) := k'` and `φ(ℓ)` becomes the shortest
//! time-monotone path to `k'` over cells up to `σ_i`. This keeps every
//! representative inside `H`. Each repair is recorded in
//! [`TrackState::repairs`]; see [`RepairPolicy`] for the other settings.

use std::collections::{BTreeSet, VecDeque};

use crate::stacking::{CellKind, SpatiotemporalFiltration};
use crate::sttrack::chain::EdgeChain;
use crate::sttrack::validate::is_spatiotemporal_path;

/// A `TE` edge together with the state it was inserted against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MergeEvent {
    pub edge: usize,
    /// `σ_j`, the endpoint whose representative is newer.
    pub newer_end: usize,
    /// `σ_j'`, the endpoint whose representative is older.
    pub older_end: usize,
    /// `k = f(σ_j)`.
    pub newer_rep: usize,
    /// `k' = f(σ_j')`, with `k' < k`.
    pub older_rep: usize,
    /// `r`, the newest frame touched by the edge.
    pub frame: usize,
    /// Whether `k` lay in frame `r` and was removed from `H`.
    pub retired: bool,
}

/// A vertex left behind by the sweep and reattached by path search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Repair {
    pub edge: usize,
    pub vertex: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, Default)]
pub struct TrackState {
    surviving: BTreeSet<usize>,
    rep: Vec<usize>,
    paths: Vec<EdgeChain>,
    te: BTreeSet<usize>,
    events: Vec<MergeEvent>,
    raw_bars: Vec<(usize, usize)>,
    repairs: Vec<Repair>,
}

impl TrackState {
    /// `H`.
    pub fn surviving(&self) -> &BTreeSet<usize> {
        &self.surviving
    }

    /// `f(v)`, or `None` if `v` is not a vertex.
    pub fn rep(&self, v: usize) -> Option<usize> {
        self.rep.get(v).copied().filter(|&k| k != 0)
    }

    /// `φ(v)`, or `None` if `v` is not a vertex.
    pub fn path(&self, v: usize) -> Option<&EdgeChain> {
        self.rep(v).map(|_| &self.paths[v])
    }

    pub fn te(&self) -> &BTreeSet<usize> {
        &self.te
    }

    pub fn events(&self) -> &[MergeEvent] {
        &self.events
    }

    /// Every bar recorded, in order, before taking the longest per birth.
    pub fn raw_bars(&self) -> &[(usize, usize)] {
        &self.raw_bars
    }

    pub fn repairs(&self) -> &[Repair] {
        &self.repairs
    }

    /// Vertex indices known to the state, ascending.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.rep
            .iter()
            .enumerate()
            .filter(|&(_, &k)| k != 0)
            .map(|(v, _)| v)
    }
}

/// When to reattach vertices the sweep could not move.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RepairPolicy {
    /// Plain sweep only.
    Off,
    /// Only when `k` was removed from `H`, so no vertex points outside `H`.
    #[default]
    RetiredOnly,
    /// Whenever the stranded vertex reaches `k'`.
    Reachable,
}

/// Runs the tracker over every cell of the filtration.
pub fn compute_paths(filtration: &SpatiotemporalFiltration) -> TrackState {
    compute_paths_with(filtration, RepairPolicy::default())
}

pub fn compute_paths_with(
    filtration: &SpatiotemporalFiltration,
    policy: RepairPolicy,
) -> TrackState {
    let m = filtration.len();
    let mut st = TrackState {
        rep: vec![0; m + 1],
        paths: vec![EdgeChain::new(); m + 1],
        ..TrackState::default()
    };
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); m + 1];

    for cell in filtration.cells() {
        let i = cell.index;
        if cell.dim == 0 {
            st.surviving.insert(i);
            st.rep[i] = i;
            st.raw_bars.push((i, i));
            continue;
        }
        let (a, b) = filtration.endpoints(i);
        incidence[a].push(i);
        incidence[b].push(i);
        if st.rep[a] == st.rep[b] {
            continue;
        }
        st.te.insert(i);

        let (j, jp) = if st.rep[a] > st.rep[b] {
            (a, b)
        } else {
            (b, a)
        };
        let (k, kp) = (st.rep[j], st.rep[jp]);
        let r = filtration.frame(j).max(filtration.frame(jp));
        let retired = filtration.frame(k) == r;
        if retired {
            st.surviving.remove(&k);
        }

        let bridge = &(&st.paths[j] + &EdgeChain::edge(i)) + &st.paths[jp];
        let mut staged = Vec::new();
        let mut stranded = Vec::new();
        for &l in filtration.vertices_in_frame(r) {
            if st.rep[l] != k {
                continue;
            }
            let candidate = &st.paths[l] + &bridge;
            if l == j || is_spatiotemporal_path(&candidate, filtration).joins(l, kp) {
                staged.push((l, candidate));
            } else {
                stranded.push(l);
            }
        }
        for (l, chain) in staged {
            st.rep[l] = kp;
            st.paths[l] = chain;
        }

        let repair = match policy {
            RepairPolicy::Off => false,
            RepairPolicy::RetiredOnly => retired,
            RepairPolicy::Reachable => true,
        };
        for l in stranded.into_iter().filter(|_| repair) {
            if let Some(chain) = monotone_path(filtration, &incidence, l, kp) {
                st.repairs.push(Repair {
                    edge: i,
                    vertex: l,
                    from: k,
                    to: kp,
                });
                st.rep[l] = kp;
                st.paths[l] = chain;
            }
        }

        st.events.push(MergeEvent {
            edge: i,
            newer_end: j,
            older_end: jp,
            newer_rep: k,
            older_rep: kp,
            frame: r,
            retired,
        });
        st.raw_bars.push((k, i));
        st.raw_bars.push((kp, i));
    }
    st
}

/// Shortest time-monotone path from `from` to `to` over the edges inserted so
/// far: spatial edges in either direction, temporal edges toward older frames.
fn monotone_path(
    filtration: &SpatiotemporalFiltration,
    incidence: &[Vec<usize>],
    from: usize,
    to: usize,
) -> Option<EdgeChain> {
    let mut via = vec![0usize; incidence.len()];
    let mut seen = vec![false; incidence.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut chain = EdgeChain::new();
            let mut at = to;
            while at != from {
                let e = via[at];
                chain.toggle(e);
                let (x, y) = filtration.endpoints(e);
                at = if x == at { y } else { x };
            }
            return Some(chain);
        }
        for &e in &incidence[u] {
            let (x, y) = filtration.endpoints(e);
            let w = if x == u { y } else { x };
            let allowed = filtration.cell(e).kind == CellKind::Spatial
                || filtration.frame(w) < filtration.frame(u);
            if allowed && !seen[w] {
                seen[w] = true;
                via[w] = e;
                queue.push_back(w);
            }
        }
    }
    None
}
