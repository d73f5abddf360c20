//! Shared fixtures for the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sttrack_core::cubical::{Cell2, Cell3, CubicalComplex};
use sttrack_core::imageio::{load_path, BinaryImage, ImageSequence};
use sttrack_core::sttrack::{
    build_tracking_tree, classical_0barcode, closure, compute_paths, consolidate,
    is_homological_0path, is_spatiotemporal_path, track_with_tree, EdgeChain, MonotoneGraph,
};
use sttrack_core::{build_filtration, ComplexMode, SpatiotemporalFiltration};

pub const DEFAULT_SEED: u64 = 0x5eed_2017;

/// Seed from `STTRACK_SEED`, or a fixed default.
pub fn seed() -> u64 {
    std::env::var("STTRACK_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt)
}

pub fn fixture(name: &str) -> ImageSequence {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    load_path(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn random_image(rng: &mut impl Rng, width: usize, height: usize, density: f64) -> BinaryImage {
    let pts = (0..height)
        .flat_map(|y| (0..width).map(move |x| (x, y)))
        .filter(|_| rng.gen_bool(density))
        .collect::<Vec<_>>();
    BinaryImage::new(width, height, pts).unwrap()
}

/// Each frame flips a few pixels of the previous one, so components persist.
pub fn random_sequence(rng: &mut impl Rng, max_frames: usize, max_side: usize) -> ImageSequence {
    let frames = rng.gen_range(1..=max_frames);
    let width = rng.gen_range(1..=max_side);
    let height = rng.gen_range(1..=max_side);
    let density = rng.gen_range(0.2..0.8);
    let flip = rng.gen_range(0.05..0.5);
    let mut current = random_image(rng, width, height, density);
    let mut out = vec![current.clone()];
    for _ in 1..frames {
        let pts: Vec<_> = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .filter(|&(x, y)| current.contains(x, y) ^ rng.gen_bool(flip))
            .collect();
        current = BinaryImage::new(width, height, pts).unwrap();
        out.push(current.clone());
    }
    ImageSequence::new(out).unwrap()
}

/// 4-connected components of the foreground by flood fill.
pub fn flood_components(image: &BinaryImage, eight: bool) -> Vec<Vec<(usize, usize)>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut comps = Vec::new();
    for &start in image.foreground() {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some((x, y)) = stack.pop() {
            let (x, y) = (x as i64, y as i64);
            let mut nbrs = vec![(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)];
            if eight {
                nbrs.extend([
                    (x - 1, y - 1),
                    (x + 1, y - 1),
                    (x - 1, y + 1),
                    (x + 1, y + 1),
                ]);
            }
            for (nx, ny) in nbrs {
                if nx < 0 || ny < 0 {
                    continue;
                }
                let p = (nx as usize, ny as usize);
                if image.contains(p.0, p.1) && seen.insert(p) {
                    comp.push(p);
                    stack.push(p);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

pub const MODES: [ComplexMode; 3] = [
    ComplexMode::PixelGraph,
    ComplexMode::Foreground,
    ComplexMode::Background,
];

/// Intersection of two cubes given in doubled coordinates, if nonempty.
pub fn intersect(a: &Cell2, b: &Cell2) -> Option<Cell2> {
    let mut out = [0i64; 2];
    for (axis, slot) in out.iter_mut().enumerate() {
        let span = |c: i64| {
            if c.rem_euclid(2) == 1 {
                (c - 1, c + 1)
            } else {
                (c, c)
            }
        };
        let (alo, ahi) = span(a.coords[axis]);
        let (blo, bhi) = span(b.coords[axis]);
        let (lo, hi) = (alo.max(blo), ahi.min(bhi));
        if lo > hi {
            return None;
        }
        *slot = if lo == hi { lo } else { lo + 1 };
    }
    Some(Cell2::new(out))
}

pub fn complex_invariants(q: &CubicalComplex) -> Result<(), String> {
    if !q.is_closed() {
        return Err("not closed under faces".into());
    }
    let cells: Vec<_> = q.cells().iter().collect();
    for (i, a) in cells.iter().enumerate() {
        for b in &cells[i + 1..] {
            if let Some(c) = intersect(a, b) {
                if !q.contains(&c) {
                    return Err(format!("{a:?} ∩ {b:?} = {c:?} missing"));
                }
            }
        }
    }
    Ok(())
}

/// Counts of what each instance exercised.
#[derive(Debug, Default, Clone, Copy)]
pub struct Tally {
    pub instances: usize,
    pub vertices: usize,
    pub repairs: usize,
    pub single_frame: usize,
}

/// P1, P2, P3, P5 (single-frame inputs), P6, P8 and the tree invariants for one
/// filtration.
pub fn check_instance(f: &SpatiotemporalFiltration, tally: &mut Tally) -> Result<(), String> {
    let st = compute_paths(f);
    let bc = consolidate(&st);
    let oracle = MonotoneGraph::new(f);
    let tree = build_tracking_tree(&st, f);
    tally.instances += 1;
    tally.repairs += st.repairs().len();

    let vertices: BTreeSet<usize> = f.vertices().collect();
    for &v in &vertices {
        tally.vertices += 1;
        let k = st.rep(v).ok_or(format!("no rep for {v}"))?;
        // P1
        if !vertices.contains(&k) || k > v {
            return Err(format!("P1: f({v}) = {k}"));
        }
        if !st.surviving().contains(&k) {
            return Err(format!("P1: f({v}) = {k} not surviving"));
        }
        // P2
        let path = st.path(v).unwrap();
        if path.is_empty() != (k == v) {
            return Err(format!("P2: φ({v}) emptiness disagrees with f({v}) = {k}"));
        }
        if !is_spatiotemporal_path(path, f).joins(v, k) {
            return Err(format!("P2: φ({v}) = {path:?} is not a path to {k}"));
        }
        // P3
        let reach = oracle.reachable(v);
        let oldest = *reach.first().unwrap();
        if k != oldest {
            return Err(format!("P3: f({v}) = {k}, oracle says {oldest}"));
        }
        // P8
        let lineage = track_with_tree(v, &st, f, &tree).map_err(|e| format!("track({v}): {e}"))?;
        if let Some(a) = lineage.ancestors.iter().find(|a| !reach.contains(a)) {
            return Err(format!("P8: ancestor {a} of {v} is not reachable"));
        }
        if lineage.walk.first().map(|w| w.1) != (!path.is_empty()).then_some(v)
            || lineage.walk.last().map(|w| w.1) != (!path.is_empty()).then_some(k)
        {
            return Err(format!("walk of {v} does not run from {v} to {k}"));
        }
    }
    for &h in st.surviving() {
        if st.rep(h) != Some(h) {
            return Err(format!("surviving {h} is not a fixed point"));
        }
    }

    // tree: at most one parent, acyclic
    for &child in tree.links().keys() {
        if tree.ancestors(child).len() > vertices.len() || tree.ancestors(child).contains(&child) {
            return Err(format!("tracking tree has a cycle through {child}"));
        }
    }

    // P6
    let births: BTreeSet<usize> = bc.bars().iter().map(|b| b.birth).collect();
    if births != vertices {
        return Err("P6: births differ from the vertex set".into());
    }
    for b in bc.bars() {
        if b.death < b.birth || (b.death != b.birth && !st.te().contains(&b.death)) {
            return Err(format!("P6: bad bar {b:?}"));
        }
    }

    // P5
    if f.frame_count() == 1 {
        tally.single_frame += 1;
        let cl = classical_0barcode(f);
        let m = f.len();
        let roots: BTreeSet<usize> = vertices
            .iter()
            .copied()
            .filter(|&v| oracle.oldest(v) == v)
            .collect();
        if &roots != st.surviving() {
            return Err(format!(
                "P5: survivors {:?} vs component minima {roots:?}",
                st.surviving()
            ));
        }
        for &h in &roots {
            if cl.get(h).map(|b| b.death) != Some(m) {
                return Err(format!(
                    "P5: classical bar of survivor {h} does not reach {m}"
                ));
            }
        }
        for (c, s) in cl.bars().iter().zip(bc.bars()) {
            if !st.surviving().contains(&c.birth) && c != s {
                return Err(format!("P5: classical {c:?} vs spatiotemporal {s:?}"));
            }
        }
    }
    Ok(())
}

/// Random-corpus run of [`check_instance`] for one mode.
pub fn check_corpus(mode: ComplexMode, count: usize, salt: u64) -> Result<Tally, String> {
    let mut rng = rng(salt);
    let mut tally = Tally::default();
    for n in 0..count {
        let seq = random_sequence(&mut rng, 4, 6);
        let f = build_filtration(&seq, mode);
        check_instance(&f, &mut tally)
            .map_err(|e| format!("instance {n} ({mode:?}) {}: {e}", seq.to_json()))?;
    }
    Ok(tally)
}

/// P4: every nonempty edge subset of size ≤ 5 in a 3-frame 2×2 full-foreground
/// pixel-graph stack is accepted by both path tests or by neither.
pub fn check_path_test_equivalence() -> Result<usize, String> {
    let seq = sttrack_core::imageio::parse_json(
        br#"{"width":2,"height":2,"frames":[["11","11"],["11","11"],["11","11"]]}"#,
    )
    .unwrap();
    let f = build_filtration(&seq, ComplexMode::PixelGraph);
    let edges: Vec<usize> = f.edges().collect();
    if edges.len() != 20 {
        return Err(format!("fixture has {} edges", edges.len()));
    }
    let mut checked = 0;
    let mut accepted = 0;
    let mut subset = Vec::new();
    fn walk(
        f: &SpatiotemporalFiltration,
        edges: &[usize],
        start: usize,
        subset: &mut Vec<usize>,
        checked: &mut usize,
        accepted: &mut usize,
    ) -> Result<(), String> {
        if !subset.is_empty() {
            *checked += 1;
            let chain: EdgeChain = subset.iter().copied().collect();
            let cubes: BTreeSet<Cell3> = closure(subset.iter().map(|&e| f.cell(e).cube));
            let a = is_spatiotemporal_path(&chain, f).is_valid();
            let b = is_homological_0path(&cubes, f);
            if a != b {
                return Err(format!(
                    "P4: {subset:?}: path test {a}, homological test {b}"
                ));
            }
            *accepted += a as usize;
        }
        if subset.len() == 5 {
            return Ok(());
        }
        for i in start..edges.len() {
            subset.push(edges[i]);
            walk(f, edges, i + 1, subset, checked, accepted)?;
            subset.pop();
        }
        Ok(())
    }
    walk(&f, &edges, 0, &mut subset, &mut checked, &mut accepted)?;
    if accepted == 0 {
        return Err("P4: no subset accepted".into());
    }
    Ok(checked)
}

/// P7 on random chains.
pub fn check_chain_algebra(count: usize, salt: u64) -> Result<(), String> {
    let mut rng = rng(salt);
    let chain = |rng: &mut ChaCha8Rng| -> EdgeChain {
        (0..rng.gen_range(0..10))
            .map(|_| rng.gen_range(0..30usize))
            .collect()
    };
    for _ in 0..count {
        let (a, b, c) = (chain(&mut rng), chain(&mut rng), chain(&mut rng));
        if &a + &b != &b + &a {
            return Err(format!("P7: {a:?} + {b:?} not commutative"));
        }
        if &(&a + &b) + &c != &a + &(&b + &c) {
            return Err("P7: not associative".into());
        }
        if !(&a + &a).is_empty() {
            return Err("P7: c + c != 0".into());
        }
    }
    Ok(())
}
