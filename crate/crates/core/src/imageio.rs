//! Binary image sequences and their on-disk formats.
//!
//! Coordinates follow the file layout: `x` grows to the right, `y` grows
//! downward, and `(0, 0)` is the top-left character of the first row (or the
//! first pixel of a PBM raster).
//!
//! Two formats are supported:
//!
//! * JSON: `{"width": W, "height": H, "frames": [["0110", ...], ...]}` with one
//!   string per row and `'1'` marking foreground.
//! * PBM set: a directory of `frame_<k>.pbm` files (`k = 1..=ℓ`), plain (`P1`)
//!   or raw (`P4`); black pixels are foreground.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ImageError {
    #[error("malformed JSON sequence")]
    Json(#[from] serde_json::Error),
    #[error("malformed PBM data: {0}")]
    Pbm(String),
    #[error("invalid image: {0}")]
    Invalid(String),
    #[error("frame {frame} is {width}x{height}, expected {expected_width}x{expected_height}")]
    DimensionMismatch {
        frame: usize,
        width: usize,
        height: usize,
        expected_width: usize,
        expected_height: usize,
    },
    #[error("sequence has no frames")]
    Empty,
    #[error("i/o error")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, ImageError>;

/// A finite binary image `(D, B)` on the rectangle `D = [0, width) × [0, height)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    foreground: BTreeSet<(usize, usize)>,
}

impl BinaryImage {
    pub fn new(
        width: usize,
        height: usize,
        foreground: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(ImageError::Invalid(format!(
                "domain {width}x{height} is empty"
            )));
        }
        let foreground: BTreeSet<_> = foreground.into_iter().collect();
        if let Some(&(x, y)) = foreground.iter().find(|&&(x, y)| x >= width || y >= height) {
            return Err(ImageError::Invalid(format!(
                "foreground point ({x}, {y}) outside {width}x{height} domain"
            )));
        }
        Ok(Self {
            width,
            height,
            foreground,
        })
    }

    /// Parses rows of `'0'`/`'1'` characters.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().chars().count());
        let mut foreground = Vec::new();
        for (y, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.chars().count() != width {
                return Err(ImageError::Invalid(format!(
                    "row {y} has length {}, expected {width}",
                    row.chars().count()
                )));
            }
            for (x, c) in row.chars().enumerate() {
                match c {
                    '1' => foreground.push((x, y)),
                    '0' => {}
                    other => {
                        return Err(ImageError::Invalid(format!(
                            "unexpected character {other:?} at ({x}, {y})"
                        )))
                    }
                }
            }
        }
        Self::new(width, height, foreground)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn foreground(&self) -> &BTreeSet<(usize, usize)> {
        &self.foreground
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.foreground.contains(&(x, y))
    }

    /// Rows of `'0'`/`'1'`, the inverse of [`BinaryImage::from_rows`].
    pub fn to_rows(&self) -> Vec<String> {
        (0..self.height)
            .map(|y| {
                (0..self.width)
                    .map(|x| if self.contains(x, y) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

/// The background `D ∖ B`, taken inside the image domain only.
pub fn complement(image: &BinaryImage) -> BinaryImage {
    let foreground = (0..image.height)
        .flat_map(|y| (0..image.width).map(move |x| (x, y)))
        .filter(|p| !image.foreground.contains(p))
        .collect();
    BinaryImage {
        width: image.width,
        height: image.height,
        foreground,
    }
}

/// A nonempty sequence of frames sharing one domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageSequence {
    frames: Vec<BinaryImage>,
}

impl ImageSequence {
    pub fn new(frames: Vec<BinaryImage>) -> Result<Self> {
        let first = frames.first().ok_or(ImageError::Empty)?;
        let (w, h) = (first.width, first.height);
        for (i, f) in frames.iter().enumerate() {
            if f.width != w || f.height != h {
                return Err(ImageError::DimensionMismatch {
                    frame: i + 1,
                    width: f.width,
                    height: f.height,
                    expected_width: w,
                    expected_height: h,
                });
            }
        }
        Ok(Self { frames })
    }

    pub fn frames(&self) -> &[BinaryImage] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn width(&self) -> usize {
        self.frames[0].width
    }

    pub fn height(&self) -> usize {
        self.frames[0].height
    }

    /// Every frame replaced by its background.
    pub fn complemented(&self) -> Self {
        Self {
            frames: self.frames.iter().map(complement).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let doc = JsonSequence {
            width: self.width(),
            height: self.height(),
            frames: self.frames.iter().map(BinaryImage::to_rows).collect(),
        };
        serde_json::to_string(&doc).expect("sequence serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    PbmSet,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonSequence {
    width: usize,
    height: usize,
    frames: Vec<Vec<String>>,
}

/// Parses a JSON sequence document.
pub fn parse_json(bytes: &[u8]) -> Result<ImageSequence> {
    let doc: JsonSequence = serde_json::from_slice(bytes)?;
    let mut frames = Vec::with_capacity(doc.frames.len());
    for rows in &doc.frames {
        frames.push(BinaryImage::from_rows(rows)?);
    }
    if frames.is_empty() {
        return Err(ImageError::Empty);
    }
    let seq = ImageSequence::new(frames)?;
    if seq.width() != doc.width || seq.height() != doc.height {
        return Err(ImageError::DimensionMismatch {
            frame: 1,
            width: seq.width(),
            height: seq.height(),
            expected_width: doc.width,
            expected_height: doc.height,
        });
    }
    Ok(seq)
}

/// Parses one P1 or P4 bitmap; set bits (black) become foreground.
pub fn parse_pbm(bytes: &[u8]) -> Result<BinaryImage> {
    let mut cursor = PbmCursor { bytes, pos: 0 };
    let magic = cursor.token()?;
    let raw = match magic.as_slice() {
        b"P1" => false,
        b"P4" => true,
        other => {
            return Err(ImageError::Pbm(format!(
                "unsupported magic {:?}",
                String::from_utf8_lossy(other)
            )))
        }
    };
    let width = cursor.number()?;
    let height = cursor.number()?;
    let mut foreground = Vec::new();
    if raw {
        // exactly one whitespace byte separates the header from the raster
        cursor.pos += 1;
        let stride = width.div_ceil(8);
        let data = bytes
            .get(cursor.pos..cursor.pos + stride * height)
            .ok_or_else(|| ImageError::Pbm("truncated raster".into()))?;
        for y in 0..height {
            for x in 0..width {
                let byte = data[y * stride + x / 8];
                if byte & (0x80 >> (x % 8)) != 0 {
                    foreground.push((x, y));
                }
            }
        }
    } else {
        for y in 0..height {
            for x in 0..width {
                match cursor.bit()? {
                    b'1' => foreground.push((x, y)),
                    b'0' => {}
                    other => {
                        return Err(ImageError::Pbm(format!(
                            "unexpected pixel byte {other:#04x}"
                        )))
                    }
                }
            }
        }
    }
    BinaryImage::new(width, height, foreground)
}

struct PbmCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl PbmCursor<'_> {
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Result<Vec<u8>> {
        self.skip_space();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ImageError::Pbm("unexpected end of header".into()));
        }
        Ok(self.bytes[start..self.pos].to_vec())
    }

    fn number(&mut self) -> Result<usize> {
        let tok = self.token()?;
        std::str::from_utf8(&tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                ImageError::Pbm(format!("bad number {:?}", String::from_utf8_lossy(&tok)))
            })
    }

    // P1 pixels may or may not be separated by whitespace
    fn bit(&mut self) -> Result<u8> {
        self.skip_space();
        let b = *self
            .bytes
            .get(self.pos)
            .ok_or_else(|| ImageError::Pbm("truncated raster".into()))?;
        self.pos += 1;
        Ok(b)
    }
}

/// Encodes a frame as plain P1.
pub fn write_pbm(image: &BinaryImage) -> String {
    let mut out = format!("P1\n{} {}\n", image.width, image.height);
    for row in image.to_rows() {
        let line: Vec<&str> = row
            .chars()
            .map(|c| if c == '1' { "1" } else { "0" })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Loads a sequence from an in-memory JSON document.
///
/// A PBM set is a directory rather than a byte stream; for [`Format::PbmSet`]
/// the bytes are read as a single concatenated stream of PBM images, one frame
/// per image, in order.
pub fn load_sequence(source: &[u8], format: Format) -> Result<ImageSequence> {
    match format {
        Format::Json => parse_json(source),
        Format::PbmSet => {
            let mut frames = Vec::new();
            let mut rest = source;
            loop {
                let start = rest
                    .iter()
                    .position(|b| !b.is_ascii_whitespace())
                    .unwrap_or(rest.len());
                rest = &rest[start..];
                if rest.is_empty() {
                    break;
                }
                let (frame, used) = parse_pbm_prefix(rest)?;
                frames.push(frame);
                rest = &rest[used..];
            }
            ImageSequence::new(frames)
        }
    }
}

fn parse_pbm_prefix(bytes: &[u8]) -> Result<(BinaryImage, usize)> {
    let image = parse_pbm(bytes)?;
    // locate the end of this image by re-walking the header and raster
    let mut cursor = PbmCursor { bytes, pos: 0 };
    let magic = cursor.token()?;
    let (w, h) = (cursor.number()?, cursor.number()?);
    if magic == b"P4" {
        cursor.pos += 1 + w.div_ceil(8) * h;
    } else {
        for _ in 0..w * h {
            cursor.bit()?;
        }
    }
    Ok((image, cursor.pos))
}

/// Loads `frame_1.pbm, frame_2.pbm, …` from a directory until the first gap.
pub fn load_pbm_dir(dir: &Path) -> Result<ImageSequence> {
    let mut frames = Vec::new();
    for k in 1.. {
        let path = dir.join(format!("frame_{k}.pbm"));
        if !path.exists() {
            break;
        }
        frames.push(parse_pbm(&fs::read(&path)?)?);
    }
    ImageSequence::new(frames)
}

/// Loads a JSON file or a PBM directory, chosen by the path type.
pub fn load_path(path: &Path) -> Result<ImageSequence> {
    if path.is_dir() {
        load_pbm_dir(path)
    } else {
        parse_json(&fs::read(path)?)
    }
}
