use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;

use super::{create_dir, split_for_index, thread_pool, OutputSet};
use crate::error::{Error, Result};
use crate::imageio::{read_bytes, Manifest, ManifestRecord};
use crate::scenegen::{export_scene_spec, sample_scene_at, scene_id, AssetCatalog, SceneConfig};

pub(super) fn run(catalog: &Path, n: u64, seed: u64, jobs: usize, out: &Path) -> Result<String> {
    let text = String::from_utf8(read_bytes(catalog)?)
        .map_err(|_| Error::Config("catalog is not UTF-8".into()))?;
    let catalog = AssetCatalog::parse(&text)?;
    let cfg = SceneConfig::default();
    create_dir(out)?;
    let outputs = OutputSet::new();
    let records = thread_pool(jobs)?.install(|| {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let spec = sample_scene_at(&catalog, &cfg, seed, i)?;
                let name = format!("{}.scene", spec.scene_id);
                outputs.write(out.join(&name), |p| export_scene_spec(p, &spec))?;
                Ok(ManifestRecord {
                    scene_id: scene_id(i),
                    split: split_for_index(i),
                    files: BTreeMap::from([("scene".to_string(), name)]),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let manifest = Manifest { records };
    outputs.write(out.join("manifest.txt"), |p| manifest.write(p))?;
    outputs.commit();
    Ok(format!("wrote {n} scene specs\n"))
}
