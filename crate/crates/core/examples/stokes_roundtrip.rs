//! Simulates a division-of-focal-plane sensor: Stokes planes to the four
//! polarizer images and back, then the DoLP/AoLP cues.
//!
//! cargo run --example stokes_roundtrip

use sfpkit::polar::{
    quad_to_stokes, stokes_to_cues, stokes_to_quad, validate_stokes, CueChannels,
    DEFAULT_S0_EPSILON,
};
use sfpkit::scenegen::{centered_sphere, toy_render, ToyCamera};

fn main() -> sfpkit::Result<()> {
    let camera = ToyCamera {
        width: 96,
        height: 96,
        half_height: 1.0,
    };
    let render = toy_render(&centered_sphere(0.6), &camera)?;
    let quad = stokes_to_quad(&render.stokes)?;
    let back = quad_to_stokes(&quad)?;

    let worst = render
        .stokes
        .planes()
        .iter()
        .zip(back.planes())
        .flat_map(|(a, b)| a.data().iter().zip(b.data()).map(|(x, y)| (x - y).abs()))
        .fold(0.0f32, f32::max);
    println!("stokes -> quad -> stokes: max error {worst:.2e}");

    let validity = validate_stokes(&back)?;
    println!(
        "validity: {} px, {:.2}% negative, {:.2}% over-polarized",
        validity.pixels,
        100.0 * validity.negative_fraction(),
        100.0 * validity.over_polarized_fraction()
    );

    let (dolp, aolp) = stokes_to_cues(&back, CueChannels::Luminance, DEFAULT_S0_EPSILON)?;
    for x in [48, 64, 80, 92] {
        println!(
            "pixel ({x:>2}, 48): dolp {:.3}  aolp {:+.3} rad",
            dolp.0.get(x, 48, 0),
            aolp.0.get(x, 48, 0)
        );
    }
    Ok(())
}
