//! Polarization sensor-aware augmentation.
//!
//! Clean Stokes renders are turned back into the four polarizer images,
//! degraded there (blur, read noise, ADC quantization) and only then
//! converted to intensity / DoLP / AoLP. The `Post` mode degrades the
//! finished cue maps instead and exists for ablation runs.

use std::f32::consts::FRAC_PI_2;
use std::fmt::Write as _;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::image::ImageBuf;
use crate::polar::{
    quad_to_stokes, stokes_to_aolp, stokes_to_dolp, stokes_to_quad, wrap_half_pi, AolpMap, DolpMap,
    QuadPolarImage, StokesImage, DEFAULT_S0_EPSILON,
};
pub use crate::rng::RandomStream;

pub const IMAGENET_MEAN: [f32; 3] = [0.485, 0.456, 0.406];
pub const IMAGENET_STD: [f32; 3] = [0.229, 0.224, 0.225];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AugmentMode {
    /// Degrade the four polarizer images, then derive the cues.
    #[default]
    Pre,
    /// Derive clean cues, then degrade the cue maps.
    Post,
}

impl std::str::FromStr for AugmentMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pre" => Ok(AugmentMode::Pre),
            "post" => Ok(AugmentMode::Post),
            other => Err(Error::Config(format!("unknown mode `{other}` (pre|post)"))),
        }
    }
}

impl std::fmt::Display for AugmentMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AugmentMode::Pre => "pre",
            AugmentMode::Post => "post",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AugmentConfig {
    /// Odd kernel sizes drawn uniformly per scene; `1` means no blur.
    pub blur_kernels: Vec<usize>,
    /// Noise standard deviation is drawn uniformly from this closed range,
    /// relative to full scale 1.0.
    pub noise_sigma_min: f32,
    pub noise_sigma_max: f32,
    pub quant_bits: u32,
    pub enable_blur: bool,
    pub enable_noise: bool,
    pub enable_quant: bool,
    pub mode: AugmentMode,
    pub seed: u64,
}

impl Default for AugmentConfig {
    fn default() -> Self {
        AugmentConfig {
            blur_kernels: vec![1, 3, 5, 7],
            noise_sigma_min: 0.0,
            noise_sigma_max: 0.02,
            quant_bits: 12,
            enable_blur: true,
            enable_noise: true,
            enable_quant: true,
            mode: AugmentMode::Pre,
            seed: 0,
        }
    }
}

const CONFIG_KEYS: [&str; 9] = [
    "blur_kernels",
    "noise_sigma_min",
    "noise_sigma_max",
    "quant_bits",
    "mode",
    "seed",
    "enable_blur",
    "enable_noise",
    "enable_quant",
];

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(Error::Config(format!(
            "{key}: expected a boolean, got `{v}`"
        ))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse `{v}`")))
}

impl AugmentConfig {
    /// All stages off; the pipeline reduces to clean cue extraction.
    pub fn disabled() -> Self {
        AugmentConfig {
            enable_blur: false,
            enable_noise: false,
            enable_quant: false,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.blur_kernels.is_empty() {
            return Err(Error::Config("blur_kernels must not be empty".into()));
        }
        if let Some(k) = self.blur_kernels.iter().find(|&&k| k == 0 || k % 2 == 0) {
            return Err(Error::Config(format!(
                "blur kernel {k} must be odd and >= 1"
            )));
        }
        if !(self.noise_sigma_min >= 0.0) || !(self.noise_sigma_max >= self.noise_sigma_min) {
            return Err(Error::Config(format!(
                "noise sigma range [{}, {}] must satisfy 0 <= min <= max",
                self.noise_sigma_min, self.noise_sigma_max
            )));
        }
        if !self.noise_sigma_max.is_finite() {
            return Err(Error::Config("noise_sigma_max must be finite".into()));
        }
        if !(1..=16).contains(&self.quant_bits) {
            return Err(Error::Config(format!(
                "quant_bits {} outside [1, 16]",
                self.quant_bits
            )));
        }
        Ok(())
    }

    /// Parses a flat `key = value` text config. Blank lines and `#` comments
    /// are ignored; unknown keys are errors. Missing keys keep defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = AugmentConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sets one key from its text form.
    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "blur_kernels" => {
                self.blur_kernels = v
                    .split(',')
                    .map(|k| parse_num(key, k.trim()))
                    .collect::<Result<_>>()?
            }
            "noise_sigma_min" => self.noise_sigma_min = parse_num(key, v)?,
            "noise_sigma_max" => self.noise_sigma_max = parse_num(key, v)?,
            "quant_bits" => self.quant_bits = parse_num(key, v)?,
            "mode" => self.mode = v.parse()?,
            "seed" => self.seed = parse_num(key, v)?,
            "enable_blur" => self.enable_blur = parse_bool(key, v)?,
            "enable_noise" => self.enable_noise = parse_bool(key, v)?,
            "enable_quant" => self.enable_quant = parse_bool(key, v)?,
            other => {
                return Err(Error::Config(format!(
                    "unknown key `{other}` (expected one of {})",
                    CONFIG_KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let kernels: Vec<String> = self.blur_kernels.iter().map(|k| k.to_string()).collect();
        let mut out = String::new();
        let _ = writeln!(out, "blur_kernels = {}", kernels.join(","));
        let _ = writeln!(out, "noise_sigma_min = {}", self.noise_sigma_min);
        let _ = writeln!(out, "noise_sigma_max = {}", self.noise_sigma_max);
        let _ = writeln!(out, "quant_bits = {}", self.quant_bits);
        let _ = writeln!(out, "mode = {}", self.mode);
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "enable_blur = {}", self.enable_blur);
        let _ = writeln!(out, "enable_noise = {}", self.enable_noise);
        let _ = writeln!(out, "enable_quant = {}", self.enable_quant);
        out
    }
}

/// Normalized, truncated 1-D Gaussian weights of odd length `size`.
pub fn gaussian_kernel(size: usize, sigma: f32) -> Result<Vec<f32>> {
    if size == 0 || size.is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "kernel size {size} must be odd and >= 1"
        )));
    }
    if size == 1 {
        return Ok(vec![1.0]);
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Parameter(format!(
            "blur sigma must be > 0, got {sigma}"
        )));
    }
    let r = (size / 2) as i64;
    let s2 = 2.0 * (sigma as f64).powi(2);
    let w: Vec<f64> = (-r..=r).map(|x| (-(x * x) as f64 / s2).exp()).collect();
    let total: f64 = w.iter().sum();
    Ok(w.iter().map(|v| (v / total) as f32).collect())
}

/// Blur sigma tied to kernel size so the kernel spans +-3 sigma.
pub fn sigma_for_kernel(size: usize) -> f32 {
    size as f32 / 6.0
}

#[inline]
fn reflect(i: isize, n: usize) -> usize {
    if n == 1 {
        return 0;
    }
    let period = 2 * (n as isize - 1);
    let m = i.rem_euclid(period);
    if m < n as isize {
        m as usize
    } else {
        (period - m) as usize
    }
}

/// Separable Gaussian blur of one image with mirror (`dcb|abcd|cba`) borders.
pub fn blur_image(img: &ImageBuf, kernel: usize, sigma: f32) -> Result<ImageBuf> {
    let weights = gaussian_kernel(kernel, sigma)?;
    if kernel == 1 {
        return Ok(img.clone());
    }
    let (w, h, c) = img.dims();
    let r = (kernel / 2) as isize;
    let mut tmp = ImageBuf::zeros_like(img);
    for y in 0..h {
        for x in 0..w {
            for ch in 0..c {
                let mut acc = 0.0f32;
                for (k, wt) in weights.iter().enumerate() {
                    let sx = reflect(x as isize + k as isize - r, w);
                    acc += wt * img.get(sx, y, ch);
                }
                tmp.set(x, y, ch, acc);
            }
        }
    }
    let mut out = ImageBuf::zeros_like(img);
    for y in 0..h {
        for x in 0..w {
            for ch in 0..c {
                let mut acc = 0.0f32;
                for (k, wt) in weights.iter().enumerate() {
                    let sy = reflect(y as isize + k as isize - r, h);
                    acc += wt * tmp.get(x, sy, ch);
                }
                out.set(x, y, ch, acc);
            }
        }
    }
    Ok(out)
}

/// Applies the same Gaussian blur to all four polarizer images.
pub fn gaussian_blur(q: &QuadPolarImage, kernel: usize, sigma: f32) -> Result<QuadPolarImage> {
    q.validate()?;
    Ok(QuadPolarImage {
        i0: blur_image(&q.i0, kernel, sigma)?,
        i45: blur_image(&q.i45, kernel, sigma)?,
        i90: blur_image(&q.i90, kernel, sigma)?,
        i135: blur_image(&q.i135, kernel, sigma)?,
    })
}

/// Adds i.i.d. zero-mean Gaussian samples to every value. No clamping.
pub fn add_noise_image(img: &ImageBuf, sigma: f32, rng: &mut impl Rng) -> Result<ImageBuf> {
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(Error::Parameter(format!(
            "noise sigma must be >= 0, got {sigma}"
        )));
    }
    if sigma == 0.0 {
        return Ok(img.clone());
    }
    let normal = Normal::new(0.0f64, sigma as f64)
        .map_err(|e| Error::Parameter(format!("noise sigma: {e}")))?;
    Ok(img.map(|v| v + normal.sample(rng) as f32))
}

const QUAD_NOISE_TAGS: [&str; 4] = ["noise/i0", "noise/i45", "noise/i90", "noise/i135"];

/// Adds independent read noise to each polarizer image.
pub fn add_noise(q: &QuadPolarImage, sigma: f32, stream: &RandomStream) -> Result<QuadPolarImage> {
    q.validate()?;
    let mut out = q.clone();
    for (plane, tag) in out.planes_mut().into_iter().zip(QUAD_NOISE_TAGS) {
        *plane = add_noise_image(plane, sigma, &mut stream.rng(tag))?;
    }
    Ok(out)
}

/// Clamps to `[0, 1]` and snaps to the `2^bits - 1` level grid, rounding
/// half away from zero.
#[inline]
pub fn quantize_value(v: f32, bits: u32) -> f32 {
    let levels = ((1u32 << bits) - 1) as f64;
    let v = (v as f64).clamp(0.0, 1.0);
    ((v * levels).round() / levels) as f32
}

/// Integer ADC code for a value; the inverse of `code / (2^bits - 1)`.
#[inline]
pub fn quantize_code(v: f32, bits: u32) -> u16 {
    let levels = ((1u32 << bits) - 1) as f64;
    ((v as f64).clamp(0.0, 1.0) * levels).round() as u16
}

fn check_bits(bits: u32) -> Result<()> {
    if !(1..=16).contains(&bits) {
        return Err(Error::Parameter(format!(
            "quant bits {bits} outside [1, 16]"
        )));
    }
    Ok(())
}

pub fn quantize_image(img: &ImageBuf, bits: u32) -> Result<ImageBuf> {
    check_bits(bits)?;
    Ok(img.map(|v| quantize_value(v, bits)))
}

pub fn quantize(q: &QuadPolarImage, bits: u32) -> Result<QuadPolarImage> {
    check_bits(bits)?;
    Ok(q.map_planes(|p| p.map(|v| quantize_value(v, bits))))
}

/// Per-scene random stage parameters. Both are drawn whether or not the
/// corresponding stage is enabled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StageDraws {
    pub kernel: usize,
    pub noise_sigma: f32,
}

pub fn draw_stage_params(cfg: &AugmentConfig, stream: &RandomStream) -> Result<StageDraws> {
    cfg.validate()?;
    let mut krng = stream.rng("blur-kernel");
    let kernel = cfg.blur_kernels[krng.random_range(0..cfg.blur_kernels.len())];
    let mut srng = stream.rng("noise-sigma");
    let noise_sigma = if cfg.noise_sigma_max > cfg.noise_sigma_min {
        srng.random_range(cfg.noise_sigma_min..=cfg.noise_sigma_max)
    } else {
        cfg.noise_sigma_min
    };
    Ok(StageDraws {
        kernel,
        noise_sigma,
    })
}

/// Result of one augmentation pass.
#[derive(Clone, Debug)]
pub struct Augmented {
    /// Total intensity `s0`, used as the RGB input.
    pub rgb: ImageBuf,
    pub dolp: DolpMap,
    pub aolp: AolpMap,
    pub draws: StageDraws,
    /// Degraded polarizer images (PRE mode only).
    pub quad: Option<QuadPolarImage>,
}

/// Degrades the four polarizer images, then derives intensity and cues:
/// `stokes_to_quad -> blur -> noise -> quantize -> quad_to_stokes -> cues`.
pub fn augment_pre(
    s: &StokesImage,
    cfg: &AugmentConfig,
    stream: &RandomStream,
) -> Result<Augmented> {
    if cfg.mode != AugmentMode::Pre {
        return Err(Error::Parameter("augment_pre requires mode = pre".into()));
    }
    s.validate()?;
    let draws = draw_stage_params(cfg, stream)?;
    let mut q = stokes_to_quad(s)?;
    if !(cfg.enable_blur || cfg.enable_noise || cfg.enable_quant) {
        // the conversion pair is the identity; skipping it keeps weakly
        // polarized AoLP exact
        return Ok(Augmented {
            rgb: s.s0.clone(),
            dolp: stokes_to_dolp(s, DEFAULT_S0_EPSILON)?,
            aolp: stokes_to_aolp(s)?,
            draws,
            quad: Some(q),
        });
    }
    if cfg.enable_blur {
        q = gaussian_blur(&q, draws.kernel, sigma_for_kernel(draws.kernel))?;
    }
    if cfg.enable_noise {
        q = add_noise(&q, draws.noise_sigma, stream)?;
    }
    if cfg.enable_quant {
        q = quantize(&q, cfg.quant_bits)?;
    }
    let degraded = quad_to_stokes(&q)?;
    Ok(Augmented {
        dolp: stokes_to_dolp(&degraded, DEFAULT_S0_EPSILON)?,
        aolp: stokes_to_aolp(&degraded)?,
        rgb: degraded.s0,
        draws,
        quad: Some(q),
    })
}

/// Ablation ordering: derive clean cues first, then blur every map, add
/// noise to every map (AoLP re-wrapped, DoLP re-clamped) and quantize the
/// intensity only.
pub fn augment_post(
    s: &StokesImage,
    cfg: &AugmentConfig,
    stream: &RandomStream,
) -> Result<Augmented> {
    if cfg.mode != AugmentMode::Post {
        return Err(Error::Parameter("augment_post requires mode = post".into()));
    }
    s.validate()?;
    let draws = draw_stage_params(cfg, stream)?;
    let mut rgb = s.s0.clone();
    let mut dolp = stokes_to_dolp(s, DEFAULT_S0_EPSILON)?.0;
    let mut aolp = stokes_to_aolp(s)?.0;
    if cfg.enable_blur {
        let sigma = sigma_for_kernel(draws.kernel);
        rgb = blur_image(&rgb, draws.kernel, sigma)?;
        dolp = blur_image(&dolp, draws.kernel, sigma)?;
        aolp = blur_image(&aolp, draws.kernel, sigma)?;
    }
    if cfg.enable_noise {
        rgb = add_noise_image(&rgb, draws.noise_sigma, &mut stream.rng("noise/rgb"))?;
        dolp = add_noise_image(&dolp, draws.noise_sigma, &mut stream.rng("noise/dolp"))?;
        aolp = add_noise_image(&aolp, draws.noise_sigma, &mut stream.rng("noise/aolp"))?;
    }
    if cfg.enable_quant {
        rgb = quantize_image(&rgb, cfg.quant_bits)?;
    }
    Ok(Augmented {
        rgb,
        dolp: DolpMap(dolp.map(|v| v.clamp(0.0, 1.0))),
        aolp: AolpMap(aolp.map(wrap_half_pi)),
        draws,
        quad: None,
    })
}

/// Dispatches on `cfg.mode`.
pub fn augment(s: &StokesImage, cfg: &AugmentConfig, stream: &RandomStream) -> Result<Augmented> {
    match cfg.mode {
        AugmentMode::Pre => augment_pre(s, cfg, stream),
        AugmentMode::Post => augment_post(s, cfg, stream),
    }
}

/// Network-ready tensors.
#[derive(Clone, Debug)]
pub struct NetworkInput {
    /// Three channels, ImageNet-standardized.
    pub rgb: ImageBuf,
    /// DoLP mapped to `[-1, 1]`.
    pub dolp: ImageBuf,
    /// AoLP mapped to `(-1, 1]`.
    pub aolp: ImageBuf,
}

pub fn make_network_input(rgb: &ImageBuf, dolp: &DolpMap, aolp: &AolpMap) -> Result<NetworkInput> {
    let (w, h, c) = rgb.dims();
    if (dolp.0.width(), dolp.0.height()) != (w, h) || !dolp.0.same_dims(&aolp.0) {
        return Err(Error::Dimension(format!(
            "rgb {:?}, dolp {:?}, aolp {:?}",
            rgb.dims(),
            dolp.0.dims(),
            aolp.0.dims()
        )));
    }
    let rgb3: Vec<f32> = match c {
        3 => rgb.data().to_vec(),
        1 => rgb.data().iter().flat_map(|&v| [v, v, v]).collect(),
        _ => {
            return Err(Error::Dimension(format!(
                "rgb input must have 1 or 3 channels, got {c}"
            )))
        }
    };
    let standardized = rgb3
        .chunks_exact(3)
        .flat_map(|px| (0..3).map(move |k| (px[k] - IMAGENET_MEAN[k]) / IMAGENET_STD[k]))
        .collect();
    Ok(NetworkInput {
        rgb: ImageBuf::new(w, h, 3, standardized)?,
        dolp: dolp.0.map(|d| 2.0 * d - 1.0),
        aolp: aolp.0.map(|a| a / FRAC_PI_2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_quad(w: usize, h: usize, v: f32) -> QuadPolarImage {
        let p = ImageBuf::filled(w, h, 1, v).unwrap();
        QuadPolarImage::new(p.clone(), p.clone(), p.clone(), p).unwrap()
    }

    #[test]
    fn kernel_one_is_identity() {
        let mut q = constant_quad(5, 4, 0.0);
        q.i0.set(2, 1, 0, 1.0);
        q.i90.set(0, 3, 0, 0.3);
        assert_eq!(gaussian_blur(&q, 1, 0.0).unwrap(), q);
    }

    #[test]
    fn even_kernel_is_rejected() {
        let q = constant_quad(3, 3, 0.2);
        assert!(matches!(
            gaussian_blur(&q, 4, 0.5),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            gaussian_blur(&q, 3, 0.0),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn constant_image_survives_blur() {
        let q = constant_quad(9, 6, 0.37);
        for k in [3, 5, 7, 11] {
            let b = gaussian_blur(&q, k, sigma_for_kernel(k)).unwrap();
            for p in b.planes() {
                assert!(p.data().iter().all(|v| (v - 0.37).abs() < 1e-6));
            }
        }
    }

    #[test]
    fn blur_handles_images_smaller_than_kernel() {
        let img = ImageBuf::new(2, 1, 1, vec![0.0, 1.0]).unwrap();
        let b = blur_image(&img, 7, sigma_for_kernel(7)).unwrap();
        let sum: f32 = b.data().iter().sum();
        assert!(b.is_finite() && (sum - 1.0).abs() < 0.2);
        let one = ImageBuf::filled(1, 1, 1, 0.5).unwrap();
        assert!((blur_image(&one, 5, 1.0).unwrap().data()[0] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn reflect_indexing() {
        let idx: Vec<usize> = (-3..7).map(|i| reflect(i, 4)).collect();
        assert_eq!(idx, vec![3, 2, 1, 0, 1, 2, 3, 2, 1, 0]);
    }

    #[test]
    fn zero_sigma_noise_is_identity() {
        let q = constant_quad(4, 4, 0.5);
        assert_eq!(add_noise(&q, 0.0, &RandomStream::new(1, "a")).unwrap(), q);
        assert!(add_noise(&q, -1.0, &RandomStream::new(1, "a")).is_err());
    }

    #[test]
    fn noise_planes_are_independent() {
        let q = constant_quad(8, 8, 0.5);
        let n = add_noise(&q, 0.02, &RandomStream::new(3, "s")).unwrap();
        assert_ne!(n.i0, n.i45);
        assert_ne!(n.i90, n.i135);
    }

    #[test]
    fn quantize_examples() {
        assert_eq!(quantize_value(0.5, 12), (2048.0f64 / 4095.0) as f32);
        assert!((quantize_value(0.5, 12) - 0.500_122_1).abs() < 1e-7);
        assert_eq!(quantize_value(-0.3, 12), 0.0);
        assert_eq!(quantize_value(1.7, 12), 1.0);
        assert_eq!(quantize_code(0.5, 12), 2048);
        assert_eq!(quantize_value(0.5, 1), 1.0);
        let q = constant_quad(2, 2, 0.123);
        let once = quantize(&q, 12).unwrap();
        assert_eq!(quantize(&once, 12).unwrap(), once);
        assert!(quantize(&q, 0).is_err() && quantize(&q, 17).is_err());
    }

    #[test]
    fn config_text_round_trip_and_errors() {
        let cfg = AugmentConfig {
            blur_kernels: vec![1, 5],
            noise_sigma_min: 0.01,
            noise_sigma_max: 0.03,
            quant_bits: 10,
            enable_noise: false,
            mode: AugmentMode::Post,
            seed: 99,
            ..Default::default()
        };
        assert_eq!(AugmentConfig::parse(&cfg.to_text()).unwrap(), cfg);
        assert_eq!(
            AugmentConfig::parse("# defaults\n\n").unwrap(),
            AugmentConfig::default()
        );
        assert!(matches!(
            AugmentConfig::parse("blur = 3"),
            Err(Error::Config(_))
        ));
        assert!(AugmentConfig::parse("blur_kernels = 1,4").is_err());
        assert!(AugmentConfig::parse("quant_bits = 17").is_err());
        assert!(AugmentConfig::parse("noise_sigma_min = 0.5\nnoise_sigma_max = 0.1").is_err());
        assert!(AugmentConfig::parse("mode = sideways").is_err());
        assert!(AugmentConfig::parse("enable_blur").is_err());
    }

    #[test]
    fn stage_draws_follow_config() {
        let cfg = AugmentConfig::default();
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..200 {
            let d = draw_stage_params(&cfg, &RandomStream::new(5, format!("scene_{i}"))).unwrap();
            assert!(cfg.blur_kernels.contains(&d.kernel));
            assert!((0.0..=0.02).contains(&d.noise_sigma));
            seen.insert(d.kernel);
        }
        assert_eq!(seen.len(), 4);
        let fixed = AugmentConfig {
            noise_sigma_min: 0.02,
            noise_sigma_max: 0.02,
            ..Default::default()
        };
        let d = draw_stage_params(&fixed, &RandomStream::new(0, "x")).unwrap();
        assert_eq!(d.noise_sigma, 0.02);
    }

    #[test]
    fn mode_guard() {
        let s = StokesImage::new(
            ImageBuf::filled(2, 2, 1, 1.0).unwrap(),
            ImageBuf::filled(2, 2, 1, 0.0).unwrap(),
            ImageBuf::filled(2, 2, 1, 0.0).unwrap(),
        )
        .unwrap();
        let stream = RandomStream::new(0, "m");
        let post = AugmentConfig {
            mode: AugmentMode::Post,
            ..Default::default()
        };
        assert!(augment_pre(&s, &post, &stream).is_err());
        assert!(augment_post(&s, &AugmentConfig::default(), &stream).is_err());
        assert!(augment(&s, &post, &stream).is_ok());
    }

    #[test]
    fn network_input_mapping() {
        let rgb = ImageBuf::new(1, 1, 3, IMAGENET_MEAN.to_vec()).unwrap();
        let dolp = DolpMap(ImageBuf::new(2, 1, 1, vec![0.0, 1.0]).unwrap());
        let aolp =
            AolpMap(ImageBuf::new(2, 1, 1, vec![std::f32::consts::FRAC_PI_4, FRAC_PI_2]).unwrap());
        assert!(make_network_input(&rgb, &dolp, &aolp).is_err());
        let rgb = ImageBuf::new(2, 1, 3, [IMAGENET_MEAN, IMAGENET_MEAN].concat()).unwrap();
        let n = make_network_input(&rgb, &dolp, &aolp).unwrap();
        assert_eq!(n.dolp.data(), &[-1.0, 1.0]);
        assert_eq!(n.aolp.data(), &[0.5, 1.0]);
        assert!(n.rgb.data().iter().all(|v| v.abs() < 1e-7));
        let gray = ImageBuf::new(2, 1, 1, vec![0.485, 0.0]).unwrap();
        let n = make_network_input(&gray, &dolp, &aolp).unwrap();
        assert_eq!(n.rgb.channels(), 3);
        assert!(n.rgb.data()[0].abs() < 1e-7);
    }
}
