use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;

use super::{create_dir, thread_pool, ModeArg, OutputSet};
use crate::augment::{augment, AugmentConfig, AugmentMode, RandomStream};
use crate::error::{Error, Result};
use crate::imageio::{
    atomic_write, plane_file_name, read_bytes, read_float_image, write_code_png, write_float_image,
    Manifest, ManifestRecord,
};
use crate::polar::StokesImage;

/// Planes carried over unchanged from the input dataset.
const PASSTHROUGH: [&str; 3] = ["normal", "normal_png", "mask"];

fn augment_scene(
    rec: &ManifestRecord,
    root: &Path,
    cfg: &AugmentConfig,
    out: &Path,
    outputs: &OutputSet,
) -> Result<ManifestRecord> {
    let s = StokesImage::new(
        read_float_image(&rec.path(root, "s0")?)?,
        read_float_image(&rec.path(root, "s1")?)?,
        read_float_image(&rec.path(root, "s2")?)?,
    )?;
    let id = &rec.scene_id;
    let a = augment(&s, cfg, &RandomStream::new(cfg.seed, id.clone()))?;
    let mut files = BTreeMap::new();
    for (kind, img) in [("s0", &a.rgb), ("dolp", &a.dolp.0), ("aolp", &a.aolp.0)] {
        let name = plane_file_name(id, kind, "pfm");
        outputs.write(out.join(&name), |p| write_float_image(p, img))?;
        files.insert(kind.to_string(), name);
    }
    if let (Some(q), true) = (&a.quad, cfg.enable_quant) {
        for (kind, img) in [
            ("i0", &q.i0),
            ("i45", &q.i45),
            ("i90", &q.i90),
            ("i135", &q.i135),
        ] {
            let name = plane_file_name(id, kind, "png");
            outputs.write(out.join(&name), |p| write_code_png(p, img, cfg.quant_bits))?;
            files.insert(kind.to_string(), name);
        }
    }
    for kind in PASSTHROUGH {
        let Some(src) = rec.files.get(kind) else {
            continue;
        };
        let name = Path::new(src)
            .file_name()
            .ok_or_else(|| Error::Parameter(format!("bad path `{src}`")))?
            .to_string_lossy()
            .into_owned();
        let bytes = read_bytes(&root.join(src))?;
        outputs.write(out.join(&name), |p| atomic_write(p, &bytes))?;
        files.insert(kind.to_string(), name);
    }
    Ok(ManifestRecord {
        scene_id: id.clone(),
        split: rec.split,
        files,
    })
}

pub(super) fn run(
    manifest: &Path,
    config: Option<&Path>,
    mode: Option<ModeArg>,
    seed: Option<u64>,
    jobs: usize,
    out: &Path,
) -> Result<String> {
    let mut cfg = match config {
        Some(p) => AugmentConfig::parse(
            &String::from_utf8(read_bytes(p)?)
                .map_err(|_| Error::Config("augment config is not UTF-8".into()))?,
        )?,
        None => AugmentConfig::default(),
    };
    if let Some(m) = mode {
        cfg.mode = match m {
            ModeArg::Pre => AugmentMode::Pre,
            ModeArg::Post => AugmentMode::Post,
        };
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    let input = Manifest::read(manifest)?;
    let root = manifest.parent().unwrap_or(Path::new("."));
    create_dir(out)?;
    let outputs = OutputSet::new();
    let records = thread_pool(jobs)?.install(|| {
        input
            .records
            .par_iter()
            .map(|rec| augment_scene(rec, root, &cfg, out, &outputs))
            .collect::<Result<Vec<_>>>()
    })?;
    outputs.write(out.join("augment.cfg"), |p| {
        atomic_write(p, cfg.to_text().as_bytes())
    })?;
    let manifest = Manifest { records };
    outputs.write(out.join("manifest.txt"), |p| manifest.write(p))?;
    outputs.commit();
    Ok(format!(
        "augmented {} scenes (mode {})\n",
        manifest.records.len(),
        cfg.mode
    ))
}
