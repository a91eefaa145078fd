//! Scene sampling for synthetic polarized datasets, a versioned scene-spec
//! text format for handing scenes to an external renderer, and a toy
//! analytic forward model.
//!
//! The toy model is NOT physically based. It maps surface zenith and
//! azimuth monotonically onto DoLP and AoLP so that a complete pipeline can
//! run against known ground truth without a polarized renderer.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, FormatError, Result};
use crate::image::ImageBuf;
use crate::metrics::{ForegroundMask, NormalMap};
use crate::polar::StokesImage;
use crate::rng::RandomStream;

pub const SCENE_FORMAT_TAG: &str = "sfpkit-scene v1";
pub const CATALOG_FORMAT_TAG: &str = "sfpkit-catalog v1";

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogObject {
    pub id: String,
    /// Bounding-circle radius on the ground plane, meters, at scale 1.
    pub radius: f64,
}

/// Object and environment-map identifiers available to the sampler.
#[derive(Clone, Debug, PartialEq)]
pub struct AssetCatalog {
    pub objects: Vec<CatalogObject>,
    pub envmaps: Vec<String>,
}

fn check_id(id: &str, what: &str) -> Result<()> {
    if id.is_empty() || id.chars().any(char::is_whitespace) {
        return Err(Error::Config(format!("invalid {what} `{id}`")));
    }
    Ok(())
}

impl AssetCatalog {
    pub fn validate(&self) -> Result<()> {
        if self.objects.is_empty() || self.envmaps.is_empty() {
            return Err(Error::Config(
                "catalog needs at least one object and one environment map".into(),
            ));
        }
        for o in &self.objects {
            check_id(&o.id, "object id")?;
            if !(o.radius > 0.0) || !o.radius.is_finite() {
                return Err(Error::Config(format!(
                    "object `{}` has radius {}",
                    o.id, o.radius
                )));
            }
        }
        for e in &self.envmaps {
            check_id(e, "envmap id")?;
        }
        Ok(())
    }

    pub fn radius_of(&self, id: &str) -> Option<f64> {
        self.objects.iter().find(|o| o.id == id).map(|o| o.radius)
    }

    /// Text form: a tag line, then `object <id> <radius>` and `envmap <id>`
    /// lines. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, CATALOG_FORMAT_TAG)) => {}
            other => {
                return Err(FormatError::Version(
                    other.map(|(_, l)| l.to_string()).unwrap_or_default(),
                )
                .into())
            }
        }
        let mut objects = Vec::new();
        let mut envmaps = Vec::new();
        for (line, l) in lines {
            let err = |msg: &str| FormatError::Parse {
                line,
                msg: msg.to_string(),
            };
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks.as_slice() {
                ["object", id, r] => objects.push(CatalogObject {
                    id: id.to_string(),
                    radius: r.parse().map_err(|_| err("bad radius"))?,
                }),
                ["envmap", id] => envmaps.push(id.to_string()),
                _ => return Err(err("expected `object <id> <radius>` or `envmap <id>`").into()),
            }
        }
        let cat = AssetCatalog { objects, envmaps };
        cat.validate()?;
        Ok(cat)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{CATALOG_FORMAT_TAG}\n");
        for o in &self.objects {
            let _ = writeln!(out, "object {} {}", o.id, o.radius);
        }
        for e in &self.envmaps {
            let _ = writeln!(out, "envmap {e}");
        }
        out
    }
}

/// Sampling ranges. Angles in degrees, lengths in meters.
#[derive(Clone, Debug, PartialEq)]
pub struct SceneConfig {
    pub min_objects: usize,
    pub max_objects: usize,
    pub scale_range: (f64, f64),
    pub ground_radius: f64,
    pub max_attempts: usize,
    pub elevation_deg: (f64, f64),
    pub camera_radius: (f64, f64),
    pub height: u32,
    pub width: u32,
}

impl Default for SceneConfig {
    fn default() -> Self {
        SceneConfig {
            min_objects: 1,
            max_objects: 10,
            scale_range: (0.5, 2.0),
            ground_radius: 1.5,
            max_attempts: 100,
            elevation_deg: (10.0, 80.0),
            camera_radius: (1.5, 3.0),
            height: 512,
            width: 612,
        }
    }
}

impl SceneConfig {
    pub fn validate(&self) -> Result<()> {
        let ordered = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && a <= b;
        if self.min_objects == 0 || self.min_objects > self.max_objects || self.max_objects > 10 {
            return Err(Error::Config(format!(
                "object count range [{}, {}] must lie in [1, 10]",
                self.min_objects, self.max_objects
            )));
        }
        if !ordered(self.scale_range) || self.scale_range.0 <= 0.0 {
            return Err(Error::Config(
                "scale range must be positive and ordered".into(),
            ));
        }
        if !(self.ground_radius > 0.0) || self.max_attempts == 0 {
            return Err(Error::Config(
                "ground radius and attempts must be positive".into(),
            ));
        }
        if !ordered(self.elevation_deg)
            || self.elevation_deg.0 <= 0.0
            || self.elevation_deg.1 > 90.0
        {
            return Err(Error::Config(
                "elevation range must lie in (0, 90] degrees".into(),
            ));
        }
        if !ordered(self.camera_radius) || self.camera_radius.0 <= 0.0 {
            return Err(Error::Config("camera radius range must be positive".into()));
        }
        if self.height == 0 || self.width == 0 {
            return Err(Error::Config("resolution must be nonzero".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Placement {
    pub object_id: String,
    pub scale: f64,
    pub x: f64,
    pub y: f64,
    pub yaw: f64,
}

/// Camera on the upper hemisphere, looking at the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CameraPose {
    pub azimuth: f64,
    pub elevation: f64,
    pub radius: f64,
}

impl CameraPose {
    pub fn position(&self) -> [f64; 3] {
        let (se, ce) = self.elevation.sin_cos();
        let (sa, ca) = self.azimuth.sin_cos();
        [
            self.radius * ce * ca,
            self.radius * ce * sa,
            self.radius * se,
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SceneSpec {
    pub scene_id: String,
    pub placements: Vec<Placement>,
    pub envmap_id: String,
    pub env_rotation: f64,
    pub camera: CameraPose,
    pub height: u32,
    pub width: u32,
}

/// `scene_000042` for index 42.
pub fn scene_id(index: u64) -> String {
    format!("scene_{index:06}")
}

fn overlaps(a: &Placement, ra: f64, b: &Placement, rb: f64) -> bool {
    let d = (a.x - b.x).hypot(a.y - b.y);
    d <= a.scale * ra + b.scale * rb
}

/// Specific invariant a scene failed.
#[derive(Clone, Debug, PartialEq)]
pub enum SceneViolation {
    ObjectCount(usize),
    UnknownObject(String),
    Overlap(usize, usize),
    CameraBelowGround(f64),
}

impl SceneSpec {
    /// Lists every invariant violation; empty when the scene is valid.
    pub fn violations(&self, catalog: &AssetCatalog) -> Vec<SceneViolation> {
        let mut out = Vec::new();
        let n = self.placements.len();
        if !(1..=10).contains(&n) {
            out.push(SceneViolation::ObjectCount(n));
        }
        let radii: Vec<Option<f64>> = self
            .placements
            .iter()
            .map(|p| catalog.radius_of(&p.object_id))
            .collect();
        for (p, r) in self.placements.iter().zip(&radii) {
            if r.is_none() {
                out.push(SceneViolation::UnknownObject(p.object_id.clone()));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if let (Some(ri), Some(rj)) = (radii[i], radii[j]) {
                    if overlaps(&self.placements[i], ri, &self.placements[j], rj) {
                        out.push(SceneViolation::Overlap(i, j));
                    }
                }
            }
        }
        if !(self.camera.elevation > 0.0) {
            out.push(SceneViolation::CameraBelowGround(self.camera.elevation));
        }
        out
    }

    /// Versioned, line-oriented text. Floats use shortest round-trip
    /// formatting, so import reproduces every value bit for bit.
    pub fn to_text(&self) -> Result<String> {
        check_id(&self.scene_id, "scene id")?;
        check_id(&self.envmap_id, "envmap id")?;
        let finite = [
            self.env_rotation,
            self.camera.azimuth,
            self.camera.elevation,
            self.camera.radius,
        ]
        .into_iter()
        .chain(
            self.placements
                .iter()
                .flat_map(|p| [p.scale, p.x, p.y, p.yaw]),
        )
        .all(f64::is_finite);
        if !finite {
            return Err(Error::Parameter(format!(
                "scene {} has non-finite fields",
                self.scene_id
            )));
        }
        let mut out = String::new();
        let _ = writeln!(out, "{SCENE_FORMAT_TAG}");
        let _ = writeln!(out, "scene_id {}", self.scene_id);
        let _ = writeln!(out, "resolution {} {}", self.height, self.width);
        let _ = writeln!(out, "envmap {}", self.envmap_id);
        let _ = writeln!(out, "env_rotation {}", self.env_rotation);
        let c = &self.camera;
        let _ = writeln!(out, "camera {} {} {}", c.azimuth, c.elevation, c.radius);
        let _ = writeln!(out, "objects {}", self.placements.len());
        for p in &self.placements {
            check_id(&p.object_id, "object id")?;
            let _ = writeln!(
                out,
                "object {} {} {} {} {}",
                p.object_id, p.scale, p.x, p.y, p.yaw
            );
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        match lines.next() {
            Some((_, SCENE_FORMAT_TAG)) => {}
            other => {
                return Err(FormatError::Version(
                    other.map(|(_, l)| l.to_string()).unwrap_or_default(),
                )
                .into())
            }
        }
        let mut next = |key: &str, arity: usize| -> Result<(usize, Vec<String>)> {
            let (line, l) = lines.next().ok_or_else(|| FormatError::Parse {
                line: 0,
                msg: format!("missing `{key}` line"),
            })?;
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.first() != Some(&key) || toks.len() != arity + 1 {
                return Err(FormatError::Parse {
                    line,
                    msg: format!("expected `{key}` with {arity} fields, got `{l}`"),
                }
                .into());
            }
            Ok((line, toks[1..].iter().map(|s| s.to_string()).collect()))
        };
        fn num<T: std::str::FromStr>(line: usize, t: &str) -> Result<T> {
            t.parse().map_err(|_| {
                FormatError::Parse {
                    line,
                    msg: format!("bad number `{t}`"),
                }
                .into()
            })
        }
        let (_, id) = next("scene_id", 1)?;
        let (l, res) = next("resolution", 2)?;
        let (height, width) = (num(l, &res[0])?, num(l, &res[1])?);
        let (_, env) = next("envmap", 1)?;
        let (l, rot) = next("env_rotation", 1)?;
        let env_rotation = num(l, &rot[0])?;
        let (l, cam) = next("camera", 3)?;
        let camera = CameraPose {
            azimuth: num(l, &cam[0])?,
            elevation: num(l, &cam[1])?,
            radius: num(l, &cam[2])?,
        };
        let (l, count) = next("objects", 1)?;
        let count: usize = num(l, &count[0])?;
        let mut placements = Vec::with_capacity(count.min(64));
        for _ in 0..count {
            let (l, f) = next("object", 5)?;
            placements.push(Placement {
                object_id: f[0].clone(),
                scale: num(l, &f[1])?,
                x: num(l, &f[2])?,
                y: num(l, &f[3])?,
                yaw: num(l, &f[4])?,
            });
        }
        if let Some((line, l)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(FormatError::Parse {
                line,
                msg: format!("trailing content `{l}`"),
            }
            .into());
        }
        Ok(SceneSpec {
            scene_id: id[0].clone(),
            placements,
            envmap_id: env[0].clone(),
            env_rotation,
            camera,
            height,
            width,
        })
    }
}

pub fn export_scene_spec(path: &std::path::Path, spec: &SceneSpec) -> Result<()> {
    crate::imageio::atomic_write(path, spec.to_text()?.as_bytes())
}

pub fn import_scene_spec(path: &std::path::Path) -> Result<SceneSpec> {
    let bytes = crate::imageio::read_bytes(path)?;
    let text = String::from_utf8(bytes).map_err(|_| FormatError::Parse {
        line: 0,
        msg: "scene spec is not UTF-8".into(),
    })?;
    SceneSpec::parse(&text)
}

/// Samples one scene. Objects are placed one at a time by rejection on a
/// ground disk; an object that finds no free spot within `max_attempts`
/// is dropped. The first object always lands, so no scene is empty.
pub fn sample_scene(
    catalog: &AssetCatalog,
    cfg: &SceneConfig,
    stream: &RandomStream,
) -> Result<SceneSpec> {
    catalog.validate()?;
    cfg.validate()?;
    let mut rng = stream.rng("scenegen");
    let count = rng.random_range(cfg.min_objects..=cfg.max_objects);
    let mut placements: Vec<Placement> = Vec::with_capacity(count);
    let mut radii: Vec<f64> = Vec::with_capacity(count);
    for _ in 0..count {
        let obj = &catalog.objects[rng.random_range(0..catalog.objects.len())];
        let scale = rng.random_range(cfg.scale_range.0..=cfg.scale_range.1);
        let yaw = rng.random_range(0.0..TAU);
        for _ in 0..cfg.max_attempts {
            let r = cfg.ground_radius * rng.random::<f64>().sqrt();
            let t = rng.random_range(0.0..TAU);
            let cand = Placement {
                object_id: obj.id.clone(),
                scale,
                x: r * t.cos(),
                y: r * t.sin(),
                yaw,
            };
            let free = placements
                .iter()
                .zip(&radii)
                .all(|(p, &rp)| !overlaps(&cand, obj.radius, p, rp));
            if free {
                placements.push(cand);
                radii.push(obj.radius);
                break;
            }
        }
    }
    let envmap_id = catalog.envmaps[rng.random_range(0..catalog.envmaps.len())].clone();
    let env_rotation = rng.random_range(0.0..TAU);
    let azimuth = rng.random_range(0.0..TAU);
    let elevation = rng
        .random_range(cfg.elevation_deg.0..=cfg.elevation_deg.1)
        .to_radians();
    let radius = rng.random_range(cfg.camera_radius.0..=cfg.camera_radius.1);
    Ok(SceneSpec {
        scene_id: stream.scene_id().to_string(),
        placements,
        envmap_id,
        env_rotation,
        camera: CameraPose {
            azimuth,
            elevation,
            radius,
        },
        height: cfg.height,
        width: cfg.width,
    })
}

/// Scene `index` of the sequence generated from `seed`.
pub fn sample_scene_at(
    catalog: &AssetCatalog,
    cfg: &SceneConfig,
    seed: u64,
    index: u64,
) -> Result<SceneSpec> {
    sample_scene(catalog, cfg, &RandomStream::new(seed, scene_id(index)))
}

// --- toy forward model -------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct ToySphere {
    pub center: [f64; 3],
    pub radius: f64,
    pub albedo: [f32; 3],
}

/// Camera-space spheres seen by an orthographic camera looking down `-z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ToyScene {
    pub spheres: Vec<ToySphere>,
    /// Fill the background with unpolarized ground radiance.
    pub ground: bool,
    pub light: [f64; 3],
    /// Polarization gain: DoLP at grazing view.
    pub kappa: f64,
}

pub const GROUND_RADIANCE: f32 = 0.25;
pub const SHADING_FLOOR: f64 = 0.1;
pub const DEFAULT_KAPPA: f64 = 0.6;

/// Orthographic view of `[-half_height * w/h, ..] x [-half_height, half_height]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToyCamera {
    pub width: usize,
    pub height: usize,
    pub half_height: f64,
}

impl ToyCamera {
    /// Camera-space `(x, y)` of the center of pixel `(px, py)`; row 0 is the
    /// top of the image.
    pub fn pixel_center(&self, px: usize, py: usize) -> (f64, f64) {
        let step = 2.0 * self.half_height / self.height as f64;
        (
            (px as f64 + 0.5 - self.width as f64 / 2.0) * step,
            (self.height as f64 / 2.0 - (py as f64 + 0.5)) * step,
        )
    }
}

impl ToyScene {
    pub fn validate(&self) -> Result<()> {
        if self.spheres.iter().any(|s| !(s.radius > 0.0)) {
            return Err(Error::Parameter("sphere radii must be positive".into()));
        }
        let l = self.light;
        let len = (l[0] * l[0] + l[1] * l[1] + l[2] * l[2]).sqrt();
        if (len - 1.0).abs() > 1e-6 {
            return Err(Error::Parameter(format!(
                "light direction has length {len}"
            )));
        }
        if !(0.0..=1.0).contains(&self.kappa) {
            return Err(Error::Parameter(format!(
                "kappa {} outside [0, 1]",
                self.kappa
            )));
        }
        Ok(())
    }
}

/// Toy DoLP for zenith angle `theta`: `kappa * sin^2(theta)`.
pub fn toy_dolp(kappa: f64, normal: [f64; 3]) -> f64 {
    kappa * (1.0 - normal[2] * normal[2]).max(0.0)
}

/// Toy AoLP: surface azimuth wrapped into `(-pi/2, pi/2]`.
pub fn toy_aolp(normal: [f64; 3]) -> f64 {
    let a = normal[1].atan2(normal[0]);
    let mut w = a.rem_euclid(PI);
    if w > PI / 2.0 {
        w -= PI;
    }
    w
}

#[derive(Clone, Debug)]
pub struct ToyRender {
    pub stokes: StokesImage,
    pub normals: NormalMap,
    pub mask: ForegroundMask,
}

pub fn toy_render(ts: &ToyScene, camera: &ToyCamera) -> Result<ToyRender> {
    ts.validate()?;
    let (w, h) = (camera.width, camera.height);
    if w == 0 || h == 0 {
        return Err(Error::Parameter("camera resolution must be nonzero".into()));
    }
    let bg = if ts.ground { GROUND_RADIANCE } else { 0.0 };
    let mut s0 = ImageBuf::filled(w, h, 3, bg)?;
    let mut s1 = ImageBuf::filled(w, h, 3, 0.0)?;
    let mut s2 = ImageBuf::filled(w, h, 3, 0.0)?;
    let mut normals = vec![[0.0f32; 3]; w * h];
    let mut mask = vec![false; w * h];
    for py in 0..h {
        for px in 0..w {
            let (x, y) = camera.pixel_center(px, py);
            let mut best: Option<(f64, &ToySphere)> = None;
            for s in &ts.spheres {
                let (dx, dy) = (x - s.center[0], y - s.center[1]);
                let d2 = dx * dx + dy * dy;
                if d2 <= s.radius * s.radius {
                    let z = s.center[2] + (s.radius * s.radius - d2).sqrt();
                    if best.is_none_or(|(bz, _)| z > bz) {
                        best = Some((z, s));
                    }
                }
            }
            let Some((z, s)) = best else { continue };
            let n = [
                (x - s.center[0]) / s.radius,
                (y - s.center[1]) / s.radius,
                (z - s.center[2]) / s.radius,
            ];
            let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
            let n = n.map(|c| c / len);
            let shade =
                (n[0] * ts.light[0] + n[1] * ts.light[1] + n[2] * ts.light[2]).max(SHADING_FLOOR);
            let dolp = toy_dolp(ts.kappa, n);
            let aolp = toy_aolp(n);
            let (c2, s2a) = ((2.0 * aolp).cos(), (2.0 * aolp).sin());
            for c in 0..3 {
                let i = shade * s.albedo[c] as f64;
                s0.set(px, py, c, i as f32);
                s1.set(px, py, c, (i * dolp * c2) as f32);
                s2.set(px, py, c, (i * dolp * s2a) as f32);
            }
            normals[py * w + px] = n.map(|c| c as f32);
            mask[py * w + px] = true;
        }
    }
    Ok(ToyRender {
        stokes: StokesImage::new(s0, s1, s2)?,
        normals: NormalMap::new(w, h, normals)?,
        mask: ForegroundMask::new(w, h, mask)?,
    })
}

/// Parameters for random toy scenes.
#[derive(Clone, Debug, PartialEq)]
pub struct ToyConfig {
    pub width: usize,
    pub height: usize,
    pub kappa: f64,
    pub max_spheres: usize,
    pub ground: bool,
}

impl Default for ToyConfig {
    fn default() -> Self {
        ToyConfig {
            width: 153,
            height: 128,
            kappa: DEFAULT_KAPPA,
            max_spheres: 3,
            ground: true,
        }
    }
}

impl ToyConfig {
    /// Same `key = value` text conventions as the augmentation config.
    /// Keys: width, height, kappa, max_spheres, ground.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ToyConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let bad = || Error::Config(format!("{k}: cannot parse `{v}`"));
            match k {
                "width" => cfg.width = v.parse().map_err(|_| bad())?,
                "height" => cfg.height = v.parse().map_err(|_| bad())?,
                "kappa" => cfg.kappa = v.parse().map_err(|_| bad())?,
                "max_spheres" => cfg.max_spheres = v.parse().map_err(|_| bad())?,
                "ground" => cfg.ground = v.parse().map_err(|_| bad())?,
                other => return Err(Error::Config(format!("unknown toy key `{other}`"))),
            }
        }
        if cfg.width == 0 || cfg.height == 0 || cfg.max_spheres == 0 {
            return Err(Error::Config(
                "width, height and max_spheres must be nonzero".into(),
            ));
        }
        if !(0.0..=1.0).contains(&cfg.kappa) {
            return Err(Error::Config(format!("kappa {} outside [0, 1]", cfg.kappa)));
        }
        Ok(cfg)
    }

    pub fn camera(&self) -> ToyCamera {
        ToyCamera {
            width: self.width,
            height: self.height,
            half_height: 1.0,
        }
    }
}

/// A random arrangement of 1..=`max_spheres` spheres inside the view.
pub fn sample_toy_scene(cfg: &ToyConfig, stream: &RandomStream) -> ToyScene {
    let mut rng = stream.rng("toy-scene");
    let aspect = cfg.width as f64 / cfg.height as f64;
    let n = rng.random_range(1..=cfg.max_spheres.max(1));
    let spheres = (0..n)
        .map(|_| {
            let radius = rng.random_range(0.25..=0.6);
            let cx = rng.random_range(-(aspect - radius).max(0.0)..=(aspect - radius).max(0.0));
            let cy = rng.random_range(-(1.0 - radius)..=(1.0 - radius));
            let cz = rng.random_range(-0.5..=0.5);
            let albedo = [0; 3].map(|_: i32| rng.random_range(0.4f32..=0.9));
            ToySphere {
                center: [cx, cy, cz],
                radius,
                albedo,
            }
        })
        .collect();
    let az = rng.random_range(0.0..TAU);
    let lz: f64 = rng.random_range(0.5..=1.0);
    let lr = (1.0 - lz * lz).sqrt();
    ToyScene {
        spheres,
        ground: cfg.ground,
        light: [lr * az.cos(), lr * az.sin(), lz],
        kappa: cfg.kappa,
    }
}

/// One sphere filling most of a square frame, lit head-on.
pub fn centered_sphere(kappa: f64) -> ToyScene {
    ToyScene {
        spheres: vec![ToySphere {
            center: [0.0, 0.0, 0.0],
            radius: 0.9,
            albedo: [0.8, 0.8, 0.8],
        }],
        ground: false,
        light: [0.0, 0.0, 1.0],
        kappa,
    }
}
