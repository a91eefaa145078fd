//! File formats: portable float maps, 8/16-bit PNG planes, normal-map and
//! mask encodings, cue colorizations and the dataset manifest.
//!
//! Every writer goes through [`atomic_write`]: bytes land in a temporary
//! file next to the target and are renamed into place once complete.

use std::collections::BTreeMap;
use std::f32::consts::{FRAC_PI_2, PI};
use std::io::{Cursor, Write};
use std::path::{Path, PathBuf};

use image::{GrayImage, ImageBuffer, ImageFormat, Luma, Rgb, RgbImage};

use crate::error::{Error, FormatError, Result};
use crate::image::ImageBuf;
use crate::metrics::{ForegroundMask, NormalMap};
use crate::polar::{AolpMap, DolpMap};

/// Writes `bytes` to `path` via a same-directory temporary file and rename.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::Missing {
                what: "file".into(),
                path: path.to_path_buf(),
            }
        } else {
            Error::io(path, e)
        }
    })
}

// --- portable float map -------------------------------------------------

/// Serializes a 1- or 3-channel image as little-endian PFM, rows stored
/// bottom to top.
pub fn encode_pfm(img: &ImageBuf) -> Result<Vec<u8>> {
    let (w, h, c) = img.dims();
    let magic = match c {
        1 => "Pf",
        3 => "PF",
        _ => {
            return Err(Error::Parameter(format!(
                "float maps hold 1 or 3 channels, got {c}"
            )))
        }
    };
    let header = format!("{magic}\n{w} {h}\n-1.0\n");
    let mut out = Vec::with_capacity(header.len() + img.data().len() * 4);
    out.extend_from_slice(header.as_bytes());
    for row in img.data().chunks_exact(w * c).rev() {
        for v in row {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    Ok(out)
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderCursor<'a> {
    fn token(&mut self) -> std::result::Result<&'a str, FormatError> {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(FormatError::MalformedHeader(
                "unexpected end of header".into(),
            ));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .map_err(|_| FormatError::MalformedHeader("non-ASCII header".into()))
    }
}

pub fn decode_pfm(bytes: &[u8]) -> Result<ImageBuf> {
    let mut cur = HeaderCursor { bytes, pos: 0 };
    let channels = match cur.token()? {
        "PF" => 3,
        "Pf" => 1,
        other => return Err(FormatError::MalformedHeader(format!("bad magic `{other}`")).into()),
    };
    let dim = |t: &str| {
        t.parse::<u64>()
            .map_err(|_| FormatError::MalformedHeader(format!("bad dimension `{t}`")))
    };
    let width = dim(cur.token()?)?;
    let height = dim(cur.token()?)?;
    let scale: f32 = {
        let t = cur.token()?;
        t.parse()
            .map_err(|_| FormatError::MalformedHeader(format!("bad scale `{t}`")))?
    };
    if width == 0 || height == 0 {
        return Err(FormatError::MalformedHeader(format!("empty image {width}x{height}")).into());
    }
    if scale == 0.0 || !scale.is_finite() {
        return Err(FormatError::MalformedHeader(format!("bad scale {scale}")).into());
    }
    // exactly one whitespace byte separates the header from the payload
    if cur.pos >= bytes.len() || !bytes[cur.pos].is_ascii_whitespace() {
        return Err(FormatError::Truncated {
            expected: 1,
            found: 0,
        }
        .into());
    }
    let payload = &bytes[cur.pos + 1..];
    let overflow = || FormatError::DimensionOverflow {
        width: width as usize,
        height: height as usize,
        channels,
    };
    let (w, h) = (
        usize::try_from(width).map_err(|_| overflow())?,
        usize::try_from(height).map_err(|_| overflow())?,
    );
    let samples = w
        .checked_mul(h)
        .and_then(|n| n.checked_mul(channels))
        .filter(|&n| n <= isize::MAX as usize / 4)
        .ok_or_else(overflow)?;
    let expected = samples * 4;
    if payload.len() < expected {
        return Err(FormatError::Truncated {
            expected,
            found: payload.len(),
        }
        .into());
    }
    let little = scale < 0.0;
    let mut data = vec![0f32; samples];
    let row = w * channels;
    for (r, chunk) in payload[..expected].chunks_exact(row * 4).enumerate() {
        let dst = &mut data[(h - 1 - r) * row..(h - r) * row];
        for (d, b) in dst.iter_mut().zip(chunk.chunks_exact(4)) {
            let b = [b[0], b[1], b[2], b[3]];
            *d = if little {
                f32::from_le_bytes(b)
            } else {
                f32::from_be_bytes(b)
            };
        }
    }
    ImageBuf::new(w, h, channels, data)
}

pub fn write_float_image(path: &Path, img: &ImageBuf) -> Result<()> {
    if !img.is_finite() {
        return Err(Error::NonFinite("float image"));
    }
    atomic_write(path, &encode_pfm(img)?)
}

pub fn read_float_image(path: &Path) -> Result<ImageBuf> {
    decode_pfm(&read_bytes(path)?)
}

// --- PNG helpers -----------------------------------------------------------

fn encode_png<P, C>(img: &ImageBuffer<P, C>) -> Result<Vec<u8>>
where
    P: image::PixelWithColorType,
    [P::Subpixel]: image::EncodableLayout,
    C: std::ops::Deref<Target = [P::Subpixel]>,
{
    let mut buf = Cursor::new(Vec::new());
    img.write_to(&mut buf, ImageFormat::Png)
        .map_err(|e| FormatError::Codec(e.to_string()))?;
    Ok(buf.into_inner())
}

fn decode_png(bytes: &[u8]) -> Result<image::DynamicImage> {
    image::load_from_memory_with_format(bytes, ImageFormat::Png)
        .map_err(|e| FormatError::Codec(e.to_string()).into())
}

pub fn write_rgb8_png(path: &Path, img: &RgbImage) -> Result<()> {
    atomic_write(path, &encode_png(img)?)
}

pub fn write_gray8_png(path: &Path, img: &GrayImage) -> Result<()> {
    atomic_write(path, &encode_png(img)?)
}

pub fn read_rgb8_png(path: &Path) -> Result<RgbImage> {
    Ok(decode_png(&read_bytes(path)?)?.into_rgb8())
}

// --- quantized polarizer planes -------------------------------------------

/// Stores an already quantized plane as 16-bit PNG (gray or RGB) with the
/// `bits`-wide ADC codes left-aligned in each 16-bit word.
pub fn encode_code_png(img: &ImageBuf, bits: u32) -> Result<Vec<u8>> {
    if !(1..=16).contains(&bits) {
        return Err(Error::Parameter(format!("bits {bits} outside [1, 16]")));
    }
    let levels = ((1u32 << bits) - 1) as f64;
    let shift = 16 - bits;
    let words: Vec<u16> = img
        .data()
        .iter()
        .map(|&v| ((((v as f64).clamp(0.0, 1.0) * levels).round() as u32) << shift) as u16)
        .collect();
    let (w, h) = (img.width() as u32, img.height() as u32);
    match img.channels() {
        1 => encode_png(&ImageBuffer::<Luma<u16>, _>::from_raw(w, h, words).expect("sized")),
        3 => encode_png(&ImageBuffer::<Rgb<u16>, _>::from_raw(w, h, words).expect("sized")),
        c => Err(Error::Parameter(format!(
            "code planes hold 1 or 3 channels, got {c}"
        ))),
    }
}

/// Inverse of [`encode_code_png`]: values are `code / (2^bits - 1)`.
pub fn decode_code_png(bytes: &[u8], bits: u32) -> Result<ImageBuf> {
    if !(1..=16).contains(&bits) {
        return Err(Error::Parameter(format!("bits {bits} outside [1, 16]")));
    }
    let dynimg = decode_png(bytes)?;
    let levels = ((1u32 << bits) - 1) as f64;
    let shift = 16 - bits;
    let (w, h) = (dynimg.width() as usize, dynimg.height() as usize);
    let (channels, words) = if dynimg.color().has_color() {
        (3, dynimg.into_rgb16().into_raw())
    } else {
        (1, dynimg.into_luma16().into_raw())
    };
    let data = words
        .iter()
        .map(|&c| ((c >> shift) as f64 / levels) as f32)
        .collect();
    ImageBuf::new(w, h, channels, data)
}

pub fn write_code_png(path: &Path, img: &ImageBuf, bits: u32) -> Result<()> {
    atomic_write(path, &encode_code_png(img, bits)?)
}

pub fn read_code_png(path: &Path, bits: u32) -> Result<ImageBuf> {
    decode_code_png(&read_bytes(path)?, bits)
}

// --- normals and masks ---------------------------------------------------

#[inline]
fn encode_component(v: f32) -> u8 {
    (((v as f64 + 1.0) * 0.5 * 255.0).round()).clamp(0.0, 255.0) as u8
}

/// 8-bit RGB with `channel = round((n + 1) / 2 * 255)`. Background pixels
/// are written as the zero vector (mid-gray).
pub fn encode_normal_image(n: &NormalMap, mask: &ForegroundMask) -> Result<RgbImage> {
    if (n.width(), n.height()) != (mask.width(), mask.height()) {
        return Err(Error::Dimension("normal map vs mask".into()));
    }
    let raw = n
        .data()
        .iter()
        .zip(mask.data())
        .flat_map(|(&v, &m)| {
            let v = if m { v } else { [0.0; 3] };
            v.map(encode_component)
        })
        .collect();
    Ok(RgbImage::from_raw(n.width() as u32, n.height() as u32, raw).expect("sized"))
}

/// Decodes 8-bit normals, renormalizing foreground pixels to unit length.
/// Background pixels decode to zero vectors.
pub fn decode_normal_image(rgb: &RgbImage, mask: &ForegroundMask) -> Result<NormalMap> {
    let (w, h) = (rgb.width() as usize, rgb.height() as usize);
    if (w, h) != (mask.width(), mask.height()) {
        return Err(Error::Dimension("normal image vs mask".into()));
    }
    let data = rgb
        .pixels()
        .zip(mask.data())
        .map(|(p, &m)| {
            if !m {
                return [0.0; 3];
            }
            let v = p.0.map(|c| c as f64 / 255.0 * 2.0 - 1.0);
            let l = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if l > 0.0 {
                v.map(|c| (c / l) as f32)
            } else {
                [0.0; 3]
            }
        })
        .collect();
    NormalMap::new(w, h, data)
}

pub fn normal_map_to_image(n: &NormalMap) -> ImageBuf {
    ImageBuf::new(
        n.width(),
        n.height(),
        3,
        n.data().iter().flatten().copied().collect(),
    )
    .expect("normal map dims are valid")
}

pub fn image_to_normal_map(img: &ImageBuf) -> Result<NormalMap> {
    if img.channels() != 3 {
        return Err(Error::Dimension(format!(
            "normal maps need 3 channels, got {}",
            img.channels()
        )));
    }
    NormalMap::new(
        img.width(),
        img.height(),
        img.data()
            .chunks_exact(3)
            .map(|c| [c[0], c[1], c[2]])
            .collect(),
    )
}

/// Full-precision normals as a 3-channel float map.
pub fn write_normal_pfm(path: &Path, n: &NormalMap) -> Result<()> {
    write_float_image(path, &normal_map_to_image(n))
}

pub fn read_normal_pfm(path: &Path) -> Result<NormalMap> {
    image_to_normal_map(&read_float_image(path)?)
}

pub fn write_normal_png(path: &Path, n: &NormalMap, mask: &ForegroundMask) -> Result<()> {
    write_rgb8_png(path, &encode_normal_image(n, mask)?)
}

pub fn read_normal_png(path: &Path, mask: &ForegroundMask) -> Result<NormalMap> {
    decode_normal_image(&read_rgb8_png(path)?, mask)
}

/// Masks are 8-bit gray PNGs, 255 = foreground, 0 = background.
pub fn encode_mask(mask: &ForegroundMask) -> Result<Vec<u8>> {
    let raw = mask
        .data()
        .iter()
        .map(|&m| if m { 255 } else { 0 })
        .collect();
    encode_png(&GrayImage::from_raw(mask.width() as u32, mask.height() as u32, raw).expect("sized"))
}

pub fn decode_mask(bytes: &[u8]) -> Result<ForegroundMask> {
    let g = decode_png(bytes)?.into_luma8();
    let (w, h) = (g.width() as usize, g.height() as usize);
    ForegroundMask::new(w, h, g.into_raw().into_iter().map(|v| v >= 128).collect())
}

pub fn write_mask(path: &Path, mask: &ForegroundMask) -> Result<()> {
    atomic_write(path, &encode_mask(mask)?)
}

pub fn read_mask(path: &Path) -> Result<ForegroundMask> {
    decode_mask(&read_bytes(path)?)
}

// --- colorization ------------------------------------------------------------

/// HSV to RGB with `h` in turns (`0` and `1` are the same hue).
fn hsv_to_rgb(h: f32, s: f32, v: f32) -> [u8; 3] {
    let h6 = h.rem_euclid(1.0) * 6.0;
    let sector = (h6.floor() as i32).rem_euclid(6);
    let f = h6 - h6.floor();
    let p = v * (1.0 - s);
    let q = v * (1.0 - s * f);
    let t = v * (1.0 - s * (1.0 - f));
    let (r, g, b) = match sector {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    [r, g, b].map(|c| (c.clamp(0.0, 1.0) * 255.0).round() as u8)
}

/// Maps AoLP onto a cyclic hue wheel, `hue = (aolp + pi/2) / pi`. With a
/// DoLP map the HSV value channel is modulated by DoLP.
pub fn colorize_aolp(a: &AolpMap, d: Option<&DolpMap>, channel: usize) -> Result<RgbImage> {
    let a = a.0.channel(channel)?;
    let d = match d {
        Some(d) => {
            let d = d.0.channel(channel)?;
            if !d.same_dims(&a) {
                return Err(Error::Dimension("aolp vs dolp".into()));
            }
            Some(d)
        }
        None => None,
    };
    let raw = a
        .data()
        .iter()
        .enumerate()
        .flat_map(|(i, &v)| {
            let hue = (v + FRAC_PI_2) / PI;
            let value = d.as_ref().map_or(1.0, |d| d.data()[i].clamp(0.0, 1.0));
            hsv_to_rgb(hue, 1.0, value)
        })
        .collect();
    Ok(RgbImage::from_raw(a.width() as u32, a.height() as u32, raw).expect("sized"))
}

/// Linear gray ramp, 0 -> black, 1 -> white.
pub fn colorize_dolp(d: &DolpMap, channel: usize) -> Result<GrayImage> {
    let d = d.0.channel(channel)?;
    let raw = d
        .data()
        .iter()
        .map(|&v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
        .collect();
    Ok(GrayImage::from_raw(d.width() as u32, d.height() as u32, raw).expect("sized"))
}

// --- dataset layout --------------------------------------------------------

/// `{scene_id}_{kind}.{ext}`.
pub fn plane_file_name(scene_id: &str, kind: &str, ext: &str) -> String {
    format!("{scene_id}_{kind}.{ext}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Split {
    Train,
    Val,
    Test,
}

impl std::str::FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "train" => Ok(Split::Train),
            "val" => Ok(Split::Val),
            "test" => Ok(Split::Test),
            other => Err(Error::Config(format!("unknown split `{other}`"))),
        }
    }
}

impl std::fmt::Display for Split {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Val => "val",
            Split::Test => "test",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestRecord {
    pub scene_id: String,
    pub split: Split,
    /// Plane kind (`s0`, `normal`, `mask`, ...) to path relative to the
    /// manifest's directory.
    pub files: BTreeMap<String, String>,
}

impl ManifestRecord {
    pub fn path(&self, root: &Path, kind: &str) -> Result<PathBuf> {
        self.files
            .get(kind)
            .map(|p| root.join(p))
            .ok_or_else(|| Error::Missing {
                what: format!("`{kind}` plane for scene {}", self.scene_id),
                path: root.to_path_buf(),
            })
    }
}

pub const MANIFEST_HEADER: &str = "# sfpkit-manifest v1";

/// Dataset index: one tab-separated record per scene,
/// `scene_id  split  kind=path ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    pub records: Vec<ManifestRecord>,
}

fn check_token(t: &str, what: &str) -> Result<()> {
    if t.is_empty() || t.chars().any(|c| c.is_whitespace() || c == '=') {
        return Err(Error::Parameter(format!("invalid {what} `{t}`")));
    }
    Ok(())
}

impl Manifest {
    pub fn to_text(&self) -> Result<String> {
        let mut out = String::from(MANIFEST_HEADER);
        out.push('\n');
        for r in &self.records {
            check_token(&r.scene_id, "scene id")?;
            out.push_str(&r.scene_id);
            out.push('\t');
            out.push_str(&r.split.to_string());
            for (k, p) in &r.files {
                check_token(k, "plane kind")?;
                if p.is_empty() || p.contains(['\t', '\n']) {
                    return Err(Error::Parameter(format!("invalid path `{p}`")));
                }
                out.push('\t');
                out.push_str(k);
                out.push('=');
                out.push_str(p);
            }
            out.push('\n');
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim_end() == MANIFEST_HEADER => {}
            other => {
                return Err(FormatError::Version(
                    other.map(|(_, l)| l.to_string()).unwrap_or_default(),
                )
                .into())
            }
        }
        let mut records = Vec::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let err = |msg: String| FormatError::Parse { line: i + 1, msg };
            let mut fields = line.split('\t');
            let scene_id = fields.next().unwrap_or("").to_string();
            let split = fields
                .next()
                .ok_or_else(|| err("missing split".into()))?
                .parse()
                .map_err(|e: Error| err(e.to_string()))?;
            let mut files = BTreeMap::new();
            for f in fields {
                let (k, p) = f
                    .split_once('=')
                    .ok_or_else(|| err(format!("expected kind=path, got `{f}`")))?;
                files.insert(k.to_string(), p.to_string());
            }
            records.push(ManifestRecord {
                scene_id,
                split,
                files,
            });
        }
        Ok(Manifest { records })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        atomic_write(path, self.to_text()?.as_bytes())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let bytes = read_bytes(path)?;
        let text = String::from_utf8(bytes).map_err(|_| FormatError::Parse {
            line: 0,
            msg: "manifest is not UTF-8".into(),
        })?;
        Self::parse(&text)
    }
}
