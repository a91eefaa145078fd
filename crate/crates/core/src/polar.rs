//! Conversions among four-angle intensity images, Stokes images and the
//! DoLP / AoLP cue maps.
//!
//! Stokes planes follow the linear-polarization convention
//! `s0 = (I0 + I45 + I90 + I135) / 2`, `s1 = I0 - I90`, `s2 = I45 - I135`.
//! The inverse is the ideal-polarizer Malus form
//! `I_phi = (s0 + s1 cos 2phi + s2 sin 2phi) / 2`.

use std::f32::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::image::ImageBuf;

/// Guard applied to `s0` before dividing, relative to full scale 1.0.
pub const DEFAULT_S0_EPSILON: f32 = 1e-6;

/// Rec. 709 luminance weights used by [`CueChannels::Luminance`].
pub const LUMINANCE_WEIGHTS: [f32; 3] = [0.2126, 0.7152, 0.0722];

/// Four linearly polarized intensity planes, as captured by a
/// division-of-focal-plane sensor.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadPolarImage {
    pub i0: ImageBuf,
    pub i45: ImageBuf,
    pub i90: ImageBuf,
    pub i135: ImageBuf,
}

/// Linear Stokes planes `(s0, s1, s2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StokesImage {
    pub s0: ImageBuf,
    pub s1: ImageBuf,
    pub s2: ImageBuf,
}

/// Degree of linear polarization, every value in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DolpMap(pub ImageBuf);

/// Angle of linear polarization in radians, every value in `(-pi/2, pi/2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AolpMap(pub ImageBuf);

fn check_planes(what: &str, planes: &[&ImageBuf]) -> Result<()> {
    let first = planes[0];
    if let Some(p) = planes.iter().find(|p| !p.same_dims(first)) {
        return Err(Error::Dimension(format!(
            "{what} planes differ: {:?} vs {:?}",
            first.dims(),
            p.dims()
        )));
    }
    Ok(())
}

impl QuadPolarImage {
    pub fn new(i0: ImageBuf, i45: ImageBuf, i90: ImageBuf, i135: ImageBuf) -> Result<Self> {
        let q = QuadPolarImage { i0, i45, i90, i135 };
        q.validate()?;
        Ok(q)
    }

    /// Checks the type invariants: equal plane dimensions, finite samples.
    pub fn validate(&self) -> Result<()> {
        check_planes("quad", &self.planes())?;
        if !self.planes().iter().all(|p| p.is_finite()) {
            return Err(Error::NonFinite("quad image"));
        }
        Ok(())
    }

    pub fn planes(&self) -> [&ImageBuf; 4] {
        [&self.i0, &self.i45, &self.i90, &self.i135]
    }

    pub fn planes_mut(&mut self) -> [&mut ImageBuf; 4] {
        [&mut self.i0, &mut self.i45, &mut self.i90, &mut self.i135]
    }

    pub fn map_planes(&self, mut f: impl FnMut(&ImageBuf) -> ImageBuf) -> QuadPolarImage {
        QuadPolarImage {
            i0: f(&self.i0),
            i45: f(&self.i45),
            i90: f(&self.i90),
            i135: f(&self.i135),
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.i0.dims()
    }
}

impl StokesImage {
    pub fn new(s0: ImageBuf, s1: ImageBuf, s2: ImageBuf) -> Result<Self> {
        let s = StokesImage { s0, s1, s2 };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        check_planes("stokes", &self.planes())?;
        if !self.planes().iter().all(|p| p.is_finite()) {
            return Err(Error::NonFinite("stokes image"));
        }
        Ok(())
    }

    pub fn planes(&self) -> [&ImageBuf; 3] {
        [&self.s0, &self.s1, &self.s2]
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.s0.dims()
    }

    /// Collapses a multi-channel Stokes image to one luminance channel.
    /// Stokes planes are linear in radiance, so the weighted sum is itself a
    /// valid Stokes image.
    pub fn luminance(&self) -> Result<StokesImage> {
        let (w, h, c) = self.dims();
        let weights: Vec<f32> = match c {
            1 => vec![1.0],
            3 => LUMINANCE_WEIGHTS.to_vec(),
            _ => vec![1.0 / c as f32; c],
        };
        let collapse = |p: &ImageBuf| {
            let data = p
                .data()
                .chunks_exact(c)
                .map(|px| px.iter().zip(&weights).map(|(v, w)| v * w).sum())
                .collect();
            ImageBuf::new(w, h, 1, data)
        };
        StokesImage::new(
            collapse(&self.s0)?,
            collapse(&self.s1)?,
            collapse(&self.s2)?,
        )
    }
}

impl DolpMap {
    pub fn image(&self) -> &ImageBuf {
        &self.0
    }
}

impl AolpMap {
    pub fn image(&self) -> &ImageBuf {
        &self.0
    }
}

/// Computes the Stokes planes from four polarized intensities.
pub fn quad_to_stokes(q: &QuadPolarImage) -> Result<StokesImage> {
    check_planes("quad", &q.planes())?;
    let n = q.i0.data().len();
    let (i0, i45, i90, i135) = (q.i0.data(), q.i45.data(), q.i90.data(), q.i135.data());
    let mut s0 = Vec::with_capacity(n);
    let mut s1 = Vec::with_capacity(n);
    let mut s2 = Vec::with_capacity(n);
    for k in 0..n {
        s0.push(0.5 * (i0[k] + i45[k] + i90[k] + i135[k]));
        s1.push(i0[k] - i90[k]);
        s2.push(i45[k] - i135[k]);
    }
    let (w, h, c) = q.dims();
    Ok(StokesImage {
        s0: ImageBuf::new(w, h, c, s0)?,
        s1: ImageBuf::new(w, h, c, s1)?,
        s2: ImageBuf::new(w, h, c, s2)?,
    })
}

/// Reconstructs the four polarized intensities seen by an ideal polarizer.
/// No clamping is applied.
pub fn stokes_to_quad(s: &StokesImage) -> Result<QuadPolarImage> {
    check_planes("stokes", &s.planes())?;
    let plane = |sign1: f32, sign2: f32| {
        let data =
            s.s0.data()
                .iter()
                .zip(s.s1.data())
                .zip(s.s2.data())
                .map(|((&s0, &s1), &s2)| 0.5 * (s0 + sign1 * s1 + sign2 * s2))
                .collect();
        let (w, h, c) = s.dims();
        ImageBuf::new(w, h, c, data)
    };
    Ok(QuadPolarImage {
        i0: plane(1.0, 0.0)?,
        i45: plane(0.0, 1.0)?,
        i90: plane(-1.0, 0.0)?,
        i135: plane(0.0, -1.0)?,
    })
}

/// Per-sample degree of linear polarization.
///
/// `s0` is floored at `epsilon` before dividing and the result is clamped to
/// `[0, 1]`, so pixels with `s0 <= 0` never produce NaN.
#[inline]
pub fn dolp_value(s0: f32, s1: f32, s2: f32, epsilon: f32) -> f32 {
    let (s0, s1, s2) = (s0 as f64, s1 as f64, s2 as f64);
    let d = s1.hypot(s2) / s0.max(epsilon as f64);
    d.clamp(0.0, 1.0) as f32
}

/// Wraps an angle into `(-pi/2, pi/2]`.
#[inline]
pub fn wrap_half_pi(a: f32) -> f32 {
    let mut w = (a as f64).rem_euclid(std::f64::consts::PI) as f32;
    if w > FRAC_PI_2 {
        w -= PI;
    }
    if w <= -FRAC_PI_2 {
        w += PI;
    }
    w
}

/// Per-sample angle of linear polarization, `atan2(s2, s1) / 2` wrapped into
/// `(-pi/2, pi/2]`; zero when `s1 = s2 = 0`.
#[inline]
pub fn aolp_value(s1: f32, s2: f32) -> f32 {
    if s1 == 0.0 && s2 == 0.0 {
        return 0.0;
    }
    let a = (0.5 * (s2 as f64).atan2(s1 as f64)) as f32;
    if a <= -FRAC_PI_2 {
        a + PI
    } else {
        a
    }
}

pub fn stokes_to_dolp(s: &StokesImage, epsilon: f32) -> Result<DolpMap> {
    if !(epsilon > 0.0) {
        return Err(Error::Parameter(format!(
            "epsilon must be > 0, got {epsilon}"
        )));
    }
    check_planes("stokes", &s.planes())?;
    let data =
        s.s0.data()
            .iter()
            .zip(s.s1.data())
            .zip(s.s2.data())
            .map(|((&s0, &s1), &s2)| dolp_value(s0, s1, s2, epsilon))
            .collect();
    let (w, h, c) = s.dims();
    Ok(DolpMap(ImageBuf::new(w, h, c, data)?))
}

pub fn stokes_to_aolp(s: &StokesImage) -> Result<AolpMap> {
    let img = s.s1.zip_map(&s.s2, aolp_value)?;
    Ok(AolpMap(img))
}

/// How many output channels the cue maps carry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CueChannels {
    /// One cue per color channel.
    #[default]
    PerChannel,
    /// Stokes planes collapsed to luminance first.
    Luminance,
}

/// DoLP and AoLP in one call, honoring the channel policy.
pub fn stokes_to_cues(
    s: &StokesImage,
    channels: CueChannels,
    epsilon: f32,
) -> Result<(DolpMap, AolpMap)> {
    match channels {
        CueChannels::PerChannel => Ok((stokes_to_dolp(s, epsilon)?, stokes_to_aolp(s)?)),
        CueChannels::Luminance => {
            let l = s.luminance()?;
            Ok((stokes_to_dolp(&l, epsilon)?, stokes_to_aolp(&l)?))
        }
    }
}

/// Physical-validity counts for a Stokes image. A pixel counts once per
/// category if any of its channels violates.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StokesValidity {
    pub pixels: usize,
    pub negative_intensity: usize,
    pub over_polarized: usize,
}

impl StokesValidity {
    pub fn negative_fraction(&self) -> f64 {
        self.negative_intensity as f64 / self.pixels.max(1) as f64
    }

    pub fn over_polarized_fraction(&self) -> f64 {
        self.over_polarized as f64 / self.pixels.max(1) as f64
    }

    pub fn violations(&self) -> usize {
        self.negative_intensity + self.over_polarized
    }

    pub fn is_valid(&self) -> bool {
        self.violations() == 0
    }
}

/// Counts pixels with `s0 < 0` and with `|(s1, s2)| > s0 (1 + 1e-6)`.
pub fn validate_stokes(s: &StokesImage) -> Result<StokesValidity> {
    check_planes("stokes", &s.planes())?;
    let c = s.s0.channels();
    let mut report = StokesValidity::default();
    let px =
        s.s0.data()
            .chunks_exact(c)
            .zip(s.s1.data().chunks_exact(c))
            .zip(s.s2.data().chunks_exact(c));
    for ((s0, s1), s2) in px {
        report.pixels += 1;
        let mut neg = false;
        let mut over = false;
        for k in 0..c {
            let (a, b, d) = (s0[k] as f64, s1[k] as f64, s2[k] as f64);
            neg |= a < 0.0;
            over |= b.hypot(d) > a * (1.0 + 1e-6);
        }
        report.negative_intensity += neg as usize;
        report.over_polarized += over as usize;
    }
    Ok(report)
}
