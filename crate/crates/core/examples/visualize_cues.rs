//! Writes DoLP and AoLP visualizations of a toy scene, alongside the float
//! maps as PFM.
//!
//! cargo run --example visualize_cues -- [out_dir]

use std::path::PathBuf;

use sfpkit::augment::RandomStream;
use sfpkit::imageio::{
    colorize_aolp, colorize_dolp, write_float_image, write_gray8_png, write_rgb8_png,
};
use sfpkit::polar::{stokes_to_cues, CueChannels, DEFAULT_S0_EPSILON};
use sfpkit::scenegen::{sample_toy_scene, toy_render, ToyConfig};

fn main() -> sfpkit::Result<()> {
    let out = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("sfpkit-cues"));
    std::fs::create_dir_all(&out).expect("create output directory");

    let cfg = ToyConfig::default();
    let scene = sample_toy_scene(&cfg, &RandomStream::new(3, "preview"));
    let render = toy_render(&scene, &cfg.camera())?;
    let (dolp, aolp) = stokes_to_cues(&render.stokes, CueChannels::PerChannel, DEFAULT_S0_EPSILON)?;

    write_float_image(&out.join("preview_dolp.pfm"), &dolp.0)?;
    write_float_image(&out.join("preview_aolp.pfm"), &aolp.0)?;
    write_gray8_png(&out.join("preview_dolp.png"), &colorize_dolp(&dolp, 0)?)?;
    write_rgb8_png(
        &out.join("preview_aolp.png"),
        &colorize_aolp(&aolp, None, 0)?,
    )?;
    write_rgb8_png(
        &out.join("preview_aolp_weighted.png"),
        &colorize_aolp(&aolp, Some(&dolp), 0)?,
    )?;
    println!(
        "wrote {} spheres' cues to {}",
        scene.spheres.len(),
        out.display()
    );
    Ok(())
}
