//! `sfpkit eval`. Reads normal maps and masks only; nothing here touches
//! the augmentation code.

use std::path::{Path, PathBuf};

use clap::ValueEnum;

use super::output::OutputSet;
use crate::error::{Error, Result};
use crate::imageio::{
    atomic_write, plane_file_name, read_mask, read_normal_pfm, read_normal_png, Manifest,
};
use crate::metrics::{aggregate, evaluate_image, EvalReport, ForegroundMask, NormalMap, Weighting};

/// How per-image scores are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightingArg {
    Image,
    Pixel,
}

#[derive(Clone, Debug)]
pub struct EvalArgs {
    pub pred: PathBuf,
    pub gt: PathBuf,
    pub mask: PathBuf,
    pub manifest: Option<PathBuf>,
    pub thresholds: Vec<f64>,
    pub weighting: WeightingArg,
    pub out: Option<PathBuf>,
}

/// Prefers `{id}_normal.pfm`, falling back to the 8-bit PNG encoding.
fn load_normals(dir: &Path, id: &str, mask: &ForegroundMask) -> Result<NormalMap> {
    let pfm = dir.join(plane_file_name(id, "normal", "pfm"));
    if pfm.exists() {
        return read_normal_pfm(&pfm);
    }
    let png = dir.join(plane_file_name(id, "normal", "png"));
    if png.exists() {
        return read_normal_png(&png, mask);
    }
    Err(Error::Missing {
        what: format!("normal map for {id}"),
        path: pfm,
    })
}

/// Scene ids with a ground-truth normal file in `dir`, sorted.
fn scan_ids(dir: &Path) -> Result<Vec<String>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut ids: Vec<String> = entries
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let name = e.file_name().to_string_lossy().into_owned();
            name.strip_suffix("_normal.pfm")
                .or_else(|| name.strip_suffix("_normal.png"))
                .map(str::to_string)
        })
        .collect();
    ids.sort();
    ids.dedup();
    Ok(ids)
}

/// Scores every image and folds the per-image reports.
pub fn evaluate_dirs(args: &EvalArgs) -> Result<EvalReport> {
    let ids = match &args.manifest {
        Some(m) => Manifest::read(m)?
            .records
            .into_iter()
            .map(|r| r.scene_id)
            .collect(),
        None => scan_ids(&args.gt)?,
    };
    if ids.is_empty() {
        return Err(Error::Missing {
            what: "ground-truth normal maps".into(),
            path: args.gt.clone(),
        });
    }
    let reports = ids
        .iter()
        .map(|id| {
            let mask = read_mask(&args.mask.join(plane_file_name(id, "mask", "png")))?;
            let gt = load_normals(&args.gt, id, &mask)?;
            let pred = load_normals(&args.pred, id, &mask)?;
            evaluate_image(id, &pred, &gt, &mask, &args.thresholds)
        })
        .collect::<Result<Vec<_>>>()?;
    let weighting = match args.weighting {
        WeightingArg::Image => Weighting::ImageMean,
        WeightingArg::Pixel => Weighting::PixelWeighted,
    };
    aggregate(&reports, weighting)
}

pub(super) fn run(args: &EvalArgs) -> Result<String> {
    let report = evaluate_dirs(args)?;
    let text = report.to_jsonl();
    match &args.out {
        Some(path) => {
            let outputs = OutputSet::new();
            outputs.write(path.clone(), |p| atomic_write(p, text.as_bytes()))?;
            outputs.commit();
            Ok(String::new())
        }
        None => Ok(text),
    }
}
