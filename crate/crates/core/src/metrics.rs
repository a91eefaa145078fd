//! Masked cosine loss and angular-error evaluation of normal maps.

use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub const DEFAULT_THRESHOLDS_DEG: [f64; 2] = [11.25, 22.5];

/// Tolerance on `|gt| = 1` over the foreground.
pub const UNIT_TOLERANCE: f64 = 1e-3;

const NEAR_ZERO_NORM: f64 = 1e-8;

/// Camera-space unit normals, `+z` toward the camera. Background pixels are
/// stored as zero vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalMap {
    width: usize,
    height: usize,
    data: Vec<[f32; 3]>,
}

impl NormalMap {
    pub fn new(width: usize, height: usize, data: Vec<[f32; 3]>) -> Result<Self> {
        if width == 0 || height == 0 || data.len() != width * height {
            return Err(Error::Dimension(format!(
                "normal map {width}x{height} with {} vectors",
                data.len()
            )));
        }
        Ok(NormalMap {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, n: [f32; 3]) -> Result<Self> {
        Self::new(width, height, vec![n; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[[f32; 3]] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [[f32; 3]] {
        &mut self.data
    }

    pub fn get(&self, x: usize, y: usize) -> [f32; 3] {
        self.data[y * self.width + x]
    }

    pub fn map(&self, f: impl Fn([f32; 3]) -> [f32; 3]) -> NormalMap {
        NormalMap {
            data: self.data.iter().map(|&n| f(n)).collect(),
            ..*self
        }
    }

    fn check_shape(&self, other: (usize, usize), what: &str) -> Result<()> {
        if (self.width, self.height) != other {
            return Err(Error::Dimension(format!(
                "{what}: {}x{} vs {}x{}",
                self.width, self.height, other.0, other.1
            )));
        }
        Ok(())
    }
}

/// Evaluation region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForegroundMask {
    width: usize,
    height: usize,
    data: Vec<bool>,
}

impl ForegroundMask {
    pub fn new(width: usize, height: usize, data: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 || data.len() != width * height {
            return Err(Error::Dimension(format!(
                "mask {width}x{height} with {} entries",
                data.len()
            )));
        }
        Ok(ForegroundMask {
            width,
            height,
            data,
        })
    }

    pub fn full(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![true; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[bool] {
        &self.data
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&m| m).count()
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.data[y * self.width + x]
    }
}

fn as_f64(n: [f32; 3]) -> [f64; 3] {
    [n[0] as f64, n[1] as f64, n[2] as f64]
}

fn norm(n: [f64; 3]) -> f64 {
    (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt()
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(n: [f64; 3]) -> Option<[f64; 3]> {
    let l = norm(n);
    (l > NEAR_ZERO_NORM).then(|| [n[0] / l, n[1] / l, n[2] / l])
}

fn check_gt_unit(gt: &NormalMap, mask: &ForegroundMask) -> Result<()> {
    for (i, (&g, &m)) in gt.data.iter().zip(&mask.data).enumerate() {
        if m {
            let l = norm(as_f64(g));
            if (l - 1.0).abs() > UNIT_TOLERANCE {
                return Err(Error::Evaluation(format!(
                    "ground-truth normal at pixel {} has norm {l}",
                    i
                )));
            }
        }
    }
    Ok(())
}

/// Mean of `1 - n . n_hat` over the mask. The prediction is renormalized;
/// a zero prediction contributes `1`.
pub fn cosine_loss(pred: &NormalMap, gt: &NormalMap, mask: &ForegroundMask) -> Result<f64> {
    pred.check_shape((gt.width, gt.height), "pred vs gt")?;
    gt.check_shape((mask.width, mask.height), "gt vs mask")?;
    let n = mask.count();
    if n == 0 {
        return Err(Error::Evaluation("empty foreground mask".into()));
    }
    let total: f64 = pred
        .data
        .iter()
        .zip(&gt.data)
        .zip(&mask.data)
        .filter(|(_, &m)| m)
        .map(|((&p, &g), _)| {
            let d = unit(as_f64(p)).map_or(0.0, |p| dot(p, as_f64(g)));
            1.0 - d
        })
        .sum();
    Ok(total / n as f64)
}

/// Per-pixel angular error in degrees; `None` where either vector has
/// near-zero length.
#[derive(Clone, Debug, PartialEq)]
pub struct AngularErrorMap {
    pub width: usize,
    pub height: usize,
    pub values: Vec<Option<f64>>,
}

#[inline]
pub fn angle_between_deg(a: [f32; 3], b: [f32; 3]) -> Option<f64> {
    let a = unit(as_f64(a))?;
    let b = unit(as_f64(b))?;
    let c = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    Some(dot(c, c).sqrt().atan2(dot(a, b)).to_degrees())
}

pub fn angular_error_map(pred: &NormalMap, gt: &NormalMap) -> Result<AngularErrorMap> {
    pred.check_shape((gt.width, gt.height), "pred vs gt")?;
    Ok(AngularErrorMap {
        width: gt.width,
        height: gt.height,
        values: pred
            .data
            .iter()
            .zip(&gt.data)
            .map(|(&p, &g)| angle_between_deg(p, g))
            .collect(),
    })
}

/// Summary of one image or of a whole set.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    pub mae_deg: f64,
    pub thresholds_deg: Vec<f64>,
    /// Fraction of pixels with error strictly below each threshold.
    pub accuracy: Vec<f64>,
    pub n_pixels: usize,
    pub per_image: Vec<ImageScore>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImageScore {
    pub image_id: String,
    pub mae_deg: f64,
    pub accuracy: Vec<f64>,
    pub n_pixels: usize,
}

/// `11.25 -> "acc_11_25"`, `22.5 -> "acc_22_50"`.
pub fn accuracy_key(threshold_deg: f64) -> String {
    format!("acc_{:.2}", threshold_deg).replace('.', "_")
}

impl EvalReport {
    /// Accuracy at `threshold_deg`, if that threshold was evaluated.
    pub fn accuracy_at(&self, threshold_deg: f64) -> Option<f64> {
        self.thresholds_deg
            .iter()
            .position(|&t| (t - threshold_deg).abs() < 1e-9)
            .map(|i| self.accuracy[i])
    }

    pub fn acc_11_25(&self) -> Option<f64> {
        self.accuracy_at(11.25)
    }

    pub fn acc_22_50(&self) -> Option<f64> {
        self.accuracy_at(22.5)
    }

    fn record(&self, kind: &str, id: Option<&str>, mae: f64, acc: &[f64], n: usize) -> Value {
        let mut m = Map::new();
        m.insert("record".into(), kind.into());
        if let Some(id) = id {
            m.insert("image_id".into(), id.into());
        }
        m.insert("mae_deg".into(), mae.into());
        for (t, a) in self.thresholds_deg.iter().zip(acc) {
            m.insert(accuracy_key(*t), (*a).into());
        }
        m.insert("n_pixels".into(), n.into());
        Value::Object(m)
    }

    /// JSON lines: one `image` record per scored image, then a `summary`.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for s in &self.per_image {
            out.push_str(
                &self
                    .record(
                        "image",
                        Some(&s.image_id),
                        s.mae_deg,
                        &s.accuracy,
                        s.n_pixels,
                    )
                    .to_string(),
            );
            out.push('\n');
        }
        out.push_str(
            &self
                .record("summary", None, self.mae_deg, &self.accuracy, self.n_pixels)
                .to_string(),
        );
        out.push('\n');
        out
    }
}

fn check_thresholds(thresholds: &[f64]) -> Result<()> {
    if thresholds.is_empty() {
        return Err(Error::Parameter("at least one threshold required".into()));
    }
    if thresholds.windows(2).any(|w| !(w[0] < w[1])) || thresholds.iter().any(|t| !t.is_finite()) {
        return Err(Error::Parameter(format!(
            "thresholds must be finite and strictly increasing: {thresholds:?}"
        )));
    }
    Ok(())
}

/// Scores one image under the mask.
pub fn evaluate(
    pred: &NormalMap,
    gt: &NormalMap,
    mask: &ForegroundMask,
    thresholds_deg: &[f64],
) -> Result<EvalReport> {
    evaluate_image("", pred, gt, mask, thresholds_deg)
}

/// Like [`evaluate`], recording `image_id` in the per-image list.
pub fn evaluate_image(
    image_id: &str,
    pred: &NormalMap,
    gt: &NormalMap,
    mask: &ForegroundMask,
    thresholds_deg: &[f64],
) -> Result<EvalReport> {
    check_thresholds(thresholds_deg)?;
    gt.check_shape((mask.width, mask.height), "gt vs mask")?;
    check_gt_unit(gt, mask)?;
    let errors = angular_error_map(pred, gt)?;
    let mut sum = 0.0;
    let mut n = 0usize;
    let mut below = vec![0usize; thresholds_deg.len()];
    for (e, &m) in errors.values.iter().zip(&mask.data) {
        let Some(e) = e.filter(|_| m) else { continue };
        sum += e;
        n += 1;
        for (b, t) in below.iter_mut().zip(thresholds_deg) {
            *b += (e < *t) as usize;
        }
    }
    if n == 0 {
        return Err(Error::Evaluation(format!(
            "no scorable foreground pixels in `{image_id}`"
        )));
    }
    let mae_deg = sum / n as f64;
    let accuracy: Vec<f64> = below.iter().map(|&b| b as f64 / n as f64).collect();
    Ok(EvalReport {
        mae_deg,
        thresholds_deg: thresholds_deg.to_vec(),
        accuracy: accuracy.clone(),
        n_pixels: n,
        per_image: vec![ImageScore {
            image_id: image_id.to_string(),
            mae_deg,
            accuracy,
            n_pixels: n,
        }],
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Weighting {
    /// Every image counts once.
    #[default]
    ImageMean,
    /// Every scored pixel counts once.
    PixelWeighted,
}

/// Folds per-image reports into one; images are visited in sorted id order.
pub fn aggregate(reports: &[EvalReport], weighting: Weighting) -> Result<EvalReport> {
    let first = reports
        .first()
        .ok_or_else(|| Error::Evaluation("nothing to aggregate".into()))?;
    if reports
        .iter()
        .any(|r| r.thresholds_deg != first.thresholds_deg)
    {
        return Err(Error::Evaluation("reports use different thresholds".into()));
    }
    let mut images: Vec<ImageScore> = reports.iter().flat_map(|r| r.per_image.clone()).collect();
    images.sort_by(|a, b| a.image_id.cmp(&b.image_id));
    let weight = |s: &ImageScore| match weighting {
        Weighting::ImageMean => 1.0,
        Weighting::PixelWeighted => s.n_pixels as f64,
    };
    let total: f64 = images.iter().map(weight).sum();
    let mae_deg = images.iter().map(|s| weight(s) * s.mae_deg).sum::<f64>() / total;
    let accuracy = (0..first.thresholds_deg.len())
        .map(|k| {
            images
                .iter()
                .map(|s| weight(s) * s.accuracy[k])
                .sum::<f64>()
                / total
        })
        .collect();
    Ok(EvalReport {
        mae_deg,
        thresholds_deg: first.thresholds_deg.clone(),
        accuracy,
        n_pixels: images.iter().map(|s| s.n_pixels).sum(),
        per_image: images,
    })
}
