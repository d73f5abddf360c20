//! Command implementations behind the `sttrack` binary.
//!
//! Every command loads a sequence (a JSON file or a directory of
//! `frame_<n>.pbm` files), builds the filtration for the chosen mode and
//! writes its artifacts either to the given paths or to stdout.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use sttrack_core::cubical::Cell3;
use sttrack_core::imageio::load_path;
use sttrack_core::stacking::LevelTag;
use sttrack_core::sttrack::{build_tracking_tree, classical_0barcode, track_with_tree, Barcode};
use sttrack_core::{analyze, Analysis, ComplexMode, SpatiotemporalFiltration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    PixelGraph,
    Foreground,
    /// Complements every frame, then builds the 4-connected lattice complex.
    Background,
}

impl From<Mode> for ComplexMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::PixelGraph => ComplexMode::PixelGraph,
            Mode::Foreground => ComplexMode::Foreground,
            Mode::Background => ComplexMode::Background,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mode: Mode,
    pub input: PathBuf,
    /// Main artifact; stdout when absent.
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    /// Minimum `death_frame - birth_frame` for a bar to count as long.
    pub long_threshold: usize,
}

impl RunConfig {
    pub fn new(mode: Mode, input: impl Into<PathBuf>) -> Self {
        Self {
            mode,
            input: input.into(),
            out: None,
            svg: None,
            long_threshold: 2,
        }
    }

    fn analyze(&self) -> Result<Analysis> {
        let seq =
            load_path(&self.input).with_context(|| format!("reading {}", self.input.display()))?;
        Ok(analyze(&seq, self.mode.into()))
    }
}

/// A pixel position and 1-based frame, as given on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexSpec {
    pub x: usize,
    pub y: usize,
    pub frame: usize,
}

impl FromStr for VertexSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [x, y, t] = parts.as_slice() else {
            return Err(format!("expected x,y,frame, got {s:?}"));
        };
        let num = |p: &str| p.parse::<usize>().map_err(|e| format!("{p:?}: {e}"));
        let spec = Self {
            x: num(x)?,
            y: num(y)?,
            frame: num(t)?,
        };
        if spec.frame == 0 {
            return Err("frames are numbered from 1".into());
        }
        Ok(spec)
    }
}

impl VertexSpec {
    fn cube(self) -> Cell3 {
        Cell3::new([2 * self.x as i64, 2 * self.y as i64, 2 * self.frame as i64])
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn barcode_json(barcode: &Barcode, filtration: &SpatiotemporalFiltration) -> String {
    let mut s =
        serde_json::to_string_pretty(&barcode.records(filtration)).expect("records serialize");
    s.push('\n');
    s
}

/// Horizontal bars over the filtration index axis, one row per birth.
pub fn render_svg(barcode: &Barcode, filtration: &SpatiotemporalFiltration) -> String {
    const MARGIN: f64 = 20.0;
    const UNIT: f64 = 8.0;
    const ROW: f64 = 10.0;
    let m = filtration.len().max(1);
    let width = 2.0 * MARGIN + m as f64 * UNIT;
    let height = 2.0 * MARGIN + barcode.len().max(1) as f64 * ROW;
    let x = |i: usize| MARGIN + (i - 1) as f64 * UNIT;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for level in filtration.levels() {
        let frame = match level.tag {
            LevelTag::Spatial(j) => j,
            LevelTag::Temporal(_) => continue,
        };
        let gx = x(level.start);
        let _ = writeln!(
            s,
            r#"<line class="frame" x1="{gx}" y1="{MARGIN}" x2="{gx}" y2="{}" stroke="gray" stroke-dasharray="2,2"><title>frame {frame}</title></line>"#,
            height - MARGIN
        );
    }
    for (row, bar) in barcode.bars().iter().enumerate() {
        let y = MARGIN + row as f64 * ROW + 1.0;
        let w = (bar.death - bar.birth + 1) as f64 * UNIT;
        let _ = writeln!(
            s,
            r#"<rect class="bar" x="{}" y="{y}" width="{w}" height="{}" fill="steelblue"><title>({}, {})</title></rect>"#,
            x(bar.birth),
            ROW - 2.0,
            bar.birth,
            bar.death
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="{}" font-size="10" font-family="monospace">1</text>"#,
        height - 6.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="10" font-family="monospace" text-anchor="end">{m}</text>"#,
        x(m) + UNIT,
        height - 6.0
    );
    s.push_str("</svg>\n");
    s
}

/// Writes the spatiotemporal barcode as JSON and optionally as SVG.
pub fn cmd_run(config: &RunConfig) -> Result<()> {
    let a = config.analyze()?;
    if let Some(svg) = &config.svg {
        fs::write(svg, render_svg(&a.barcode, &a.filtration))
            .with_context(|| format!("writing {}", svg.display()))?;
    }
    emit(
        config.out.as_deref(),
        &barcode_json(&a.barcode, &a.filtration),
    )
}

/// Side-by-side classical and spatiotemporal barcodes, one row per birth.
pub fn compare_report(a: &Analysis, long_threshold: usize) -> String {
    let f = &a.filtration;
    let classical = classical_0barcode(f);
    let span = |death: usize, birth: usize| f.cell(death).frames().newest() - f.frame(birth);
    let cell = |birth: usize, death: usize| {
        let long = if span(death, birth) >= long_threshold {
            " long"
        } else {
            ""
        };
        format!("({birth}, {death}){long}")
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "m = {}, frames = {}, long = spans >= {long_threshold} frames",
        f.len(),
        f.frame_count()
    );
    let _ = writeln!(s, "{:<24} {:<24}", "classical", "spatiotemporal");
    let mut differing = Vec::new();
    for (c, st) in classical.bars().iter().zip(a.barcode.bars()) {
        let marker = if c.death != st.death { " *" } else { "" };
        let _ = writeln!(
            s,
            "{:<24} {:<24}{marker}",
            cell(c.birth, c.death),
            cell(st.birth, st.death)
        );
        if c.death != st.death {
            differing.push((c, st));
        }
    }
    let count_long = |b: &Barcode| b.long_bars(f, long_threshold).len();
    let _ = writeln!(
        s,
        "long bars: classical {}, spatiotemporal {}",
        count_long(&classical),
        count_long(&a.barcode)
    );
    let _ = writeln!(s, "differing bars: {}", differing.len());
    for (c, st) in differing {
        let _ = writeln!(
            s,
            "  birth {}: classical death {}, spatiotemporal death {}",
            c.birth, c.death, st.death
        );
    }
    s
}

pub fn cmd_compare(config: &RunConfig) -> Result<()> {
    let a = config.analyze()?;
    emit(
        config.out.as_deref(),
        &compare_report(&a, config.long_threshold),
    )
}

#[derive(Debug, Serialize)]
struct LineageJson {
    vertex: usize,
    birth_vertex: usize,
    birth_frame: usize,
    walk: Vec<[usize; 3]>,
    ancestors: Vec<usize>,
}

pub fn lineage_json(a: &Analysis, at: VertexSpec) -> Result<String> {
    let f = &a.filtration;
    let Some(v) = f.index_of(&at.cube()).filter(|&v| f.is_vertex(v)) else {
        bail!(
            "no vertex at ({}, {}) in frame {} of this complex",
            at.x,
            at.y,
            at.frame
        );
    };
    let tree = build_tracking_tree(&a.state, f);
    let lineage = track_with_tree(v, &a.state, f, &tree)?;
    let walk = lineage
        .walk
        .iter()
        .map(|&(frame, u)| {
            let [x2, y2, _] = f.cell(u).cube.coords;
            [frame, (x2 / 2) as usize, (y2 / 2) as usize]
        })
        .collect();
    let out = LineageJson {
        vertex: lineage.vertex,
        birth_vertex: lineage.birth_vertex,
        birth_frame: lineage.birth_frame,
        walk,
        ancestors: lineage.ancestors,
    };
    let mut s = serde_json::to_string_pretty(&out)?;
    s.push('\n');
    Ok(s)
}

pub fn cmd_track(config: &RunConfig, at: VertexSpec) -> Result<()> {
    let a = config.analyze()?;
    emit(config.out.as_deref(), &lineage_json(&a, at)?)
}

/// The filtration as `index kind dim (x2,y2,t2)` lines.
pub fn cmd_dump(config: &RunConfig) -> Result<()> {
    let a = config.analyze()?;
    emit(config.out.as_deref(), &a.filtration.dump())
}
