//! Compares augmentation before and after cue extraction on a toy sphere.
//!
//! With degradation applied to the four polarizer images, AoLP errors pile
//! up where the surface is weakly polarized; degrading the AoLP map directly
//! spreads them evenly. The printed Spearman correlations quantify this.
//!
//! cargo run --release --example augment_ordering

use sfpkit::augment::{augment, AugmentConfig, AugmentMode, RandomStream};
use sfpkit::polar::{stokes_to_aolp, stokes_to_dolp, DEFAULT_S0_EPSILON};
use sfpkit::scenegen::{centered_sphere, toy_render, ToyCamera, DEFAULT_KAPPA};
use sfpkit::stats::{orientation_residual, spearman};

fn main() -> sfpkit::Result<()> {
    let camera = ToyCamera {
        width: 256,
        height: 256,
        half_height: 1.0,
    };
    let render = toy_render(&centered_sphere(DEFAULT_KAPPA), &camera)?;
    let clean_dolp = stokes_to_dolp(&render.stokes, DEFAULT_S0_EPSILON)?;
    let clean_aolp = stokes_to_aolp(&render.stokes)?;

    for mode in [AugmentMode::Pre, AugmentMode::Post] {
        let cfg = AugmentConfig {
            enable_blur: false,
            noise_sigma_min: 0.02,
            noise_sigma_max: 0.02,
            mode,
            seed: 7,
            ..Default::default()
        };
        let out = augment(&render.stokes, &cfg, &RandomStream::new(cfg.seed, "sphere"))?;
        let (mut dolp, mut err) = (Vec::new(), Vec::new());
        for y in 0..camera.height {
            for x in 0..camera.width {
                if !render.mask.get(x, y) {
                    continue;
                }
                dolp.push(clean_dolp.0.get(x, y, 0) as f64);
                err.push(orientation_residual(
                    out.aolp.0.get(x, y, 0) as f64,
                    clean_aolp.0.get(x, y, 0) as f64,
                ));
            }
        }
        let rho = spearman(&dolp, &err).unwrap_or(0.0);
        let mean_err = err.iter().sum::<f64>() / err.len() as f64;
        println!(
            "{mode:>4}: spearman(|AoLP error|, DoLP) = {rho:+.3}, mean |AoLP error| = {:.2} deg over {} px",
            mean_err.to_degrees(),
            err.len()
        );
    }
    Ok(())
}
