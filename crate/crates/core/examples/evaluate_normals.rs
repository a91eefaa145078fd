//! Scores a deliberately perturbed normal map against ground truth and
//! prints the JSONL report.
//!
//! cargo run --example evaluate_normals

use sfpkit::metrics::{aggregate, cosine_loss, evaluate_image, Weighting, DEFAULT_THRESHOLDS_DEG};
use sfpkit::scenegen::{centered_sphere, toy_render, ToyCamera};

fn tilt(n: [f32; 3], degrees: f32) -> [f32; 3] {
    let (s, c) = degrees.to_radians().sin_cos();
    [c * n[0] + s * n[2], n[1], -s * n[0] + c * n[2]]
}

fn main() -> sfpkit::Result<()> {
    let camera = ToyCamera {
        width: 128,
        height: 128,
        half_height: 1.0,
    };
    let render = toy_render(&centered_sphere(0.6), &camera)?;
    let gt = &render.normals;

    let mut reports = Vec::new();
    for (id, degrees) in [("tilt_05", 5.0), ("tilt_15", 15.0), ("tilt_30", 30.0)] {
        let pred = gt.map(|n| tilt(n, degrees));
        let loss = cosine_loss(&pred, gt, &render.mask)?;
        println!("{id}: cosine loss {loss:.5}");
        reports.push(evaluate_image(
            id,
            &pred,
            gt,
            &render.mask,
            &DEFAULT_THRESHOLDS_DEG,
        )?);
    }
    print!("{}", aggregate(&reports, Weighting::ImageMean)?.to_jsonl());
    Ok(())
}
