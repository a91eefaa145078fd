use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;

use super::{create_dir, split_for_index, thread_pool, OutputSet};
use crate::error::{Error, Result};
use crate::imageio::{
    plane_file_name, read_bytes, write_float_image, write_mask, write_normal_pfm, write_normal_png,
    Manifest, ManifestRecord,
};
use crate::rng::RandomStream;
use crate::scenegen::{sample_toy_scene, scene_id, toy_render, ToyConfig};

pub(super) fn run(
    n: u64,
    seed: u64,
    config: Option<&Path>,
    jobs: usize,
    out: &Path,
) -> Result<String> {
    let cfg = match config {
        Some(p) => ToyConfig::parse(
            &String::from_utf8(read_bytes(p)?)
                .map_err(|_| Error::Config("toy config is not UTF-8".into()))?,
        )?,
        None => ToyConfig::default(),
    };
    create_dir(out)?;
    let outputs = OutputSet::new();
    let records = thread_pool(jobs)?.install(|| {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let id = scene_id(i);
                let scene = sample_toy_scene(&cfg, &RandomStream::new(seed, id.clone()));
                let r = toy_render(&scene, &cfg.camera())?;
                let mut files = BTreeMap::new();
                let mut put = |kind: &str, ext: &str, f: &dyn Fn(&Path) -> Result<()>| {
                    let name = plane_file_name(&id, kind, ext);
                    outputs.write(out.join(&name), f)?;
                    let key = if ext == "png" && kind == "normal" {
                        "normal_png"
                    } else {
                        kind
                    };
                    files.insert(key.to_string(), name);
                    Ok::<_, Error>(())
                };
                put("s0", "pfm", &|p| write_float_image(p, &r.stokes.s0))?;
                put("s1", "pfm", &|p| write_float_image(p, &r.stokes.s1))?;
                put("s2", "pfm", &|p| write_float_image(p, &r.stokes.s2))?;
                put("normal", "pfm", &|p| write_normal_pfm(p, &r.normals))?;
                put("normal", "png", &|p| {
                    write_normal_png(p, &r.normals, &r.mask)
                })?;
                put("mask", "png", &|p| write_mask(p, &r.mask))?;
                Ok(ManifestRecord {
                    scene_id: id,
                    split: split_for_index(i),
                    files,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let manifest = Manifest { records };
    outputs.write(out.join("manifest.txt"), |p| manifest.write(p))?;
    outputs.commit();
    Ok(format!("rendered {n} toy scenes\n"))
}
