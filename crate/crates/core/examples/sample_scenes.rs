//! Samples scene specs from a small asset catalog, checks them against the
//! placement rules and prints one.
//!
//! cargo run --example sample_scenes -- [count]

use sfpkit::scenegen::{sample_scene_at, AssetCatalog, SceneConfig};

const CATALOG: &str = "\
sfpkit-catalog v1
object bunny 0.15
object dragon 0.3
object teapot 0.25
envmap studio
envmap courtyard
";

fn main() -> sfpkit::Result<()> {
    let count: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("count must be an integer"))
        .unwrap_or(1000);
    let catalog = AssetCatalog::parse(CATALOG)?;
    let cfg = SceneConfig::default();

    let mut histogram = [0usize; 11];
    for i in 0..count {
        let spec = sample_scene_at(&catalog, &cfg, 42, i)?;
        assert!(spec.violations(&catalog).is_empty());
        histogram[spec.placements.len()] += 1;
    }
    for (n, c) in histogram.iter().enumerate().skip(1) {
        println!("{n:>2} objects: {c}");
    }
    print!("\n{}", sample_scene_at(&catalog, &cfg, 42, 0)?.to_text()?);
    Ok(())
}
