use std::path::Path;

use super::{create_dir, Direction, OutputSet};
use crate::error::{Error, Result};
use crate::image::ImageBuf;
use crate::imageio::{plane_file_name, read_float_image, write_float_image};
use crate::polar::{
    quad_to_stokes, stokes_to_cues, stokes_to_quad, CueChannels, QuadPolarImage, StokesImage,
    DEFAULT_S0_EPSILON,
};

fn load(dir: &Path, scene: &str, plane: &str) -> Result<ImageBuf> {
    let path = dir.join(plane_file_name(scene, plane, "pfm"));
    if !path.exists() {
        return Err(Error::Missing {
            what: format!("plane `{plane}` of scene {scene}"),
            path,
        });
    }
    read_float_image(&path)
}

fn load_stokes(dir: &Path, scene: &str) -> Result<StokesImage> {
    StokesImage::new(
        load(dir, scene, "s0")?,
        load(dir, scene, "s1")?,
        load(dir, scene, "s2")?,
    )
}

pub(super) fn run(
    direction: Direction,
    input: &Path,
    scenes: &[String],
    luminance: bool,
    out: &Path,
) -> Result<String> {
    create_dir(out)?;
    let outputs = OutputSet::new();
    let mut report = String::new();
    for scene in scenes {
        let planes: Vec<(&str, ImageBuf)> = match direction {
            Direction::Quad2stokes => {
                let q = QuadPolarImage::new(
                    load(input, scene, "i0")?,
                    load(input, scene, "i45")?,
                    load(input, scene, "i90")?,
                    load(input, scene, "i135")?,
                )?;
                let s = quad_to_stokes(&q)?;
                vec![("s0", s.s0), ("s1", s.s1), ("s2", s.s2)]
            }
            Direction::Stokes2quad => {
                let q = stokes_to_quad(&load_stokes(input, scene)?)?;
                vec![
                    ("i0", q.i0),
                    ("i45", q.i45),
                    ("i90", q.i90),
                    ("i135", q.i135),
                ]
            }
            Direction::Stokes2cue => {
                let channels = if luminance {
                    CueChannels::Luminance
                } else {
                    CueChannels::PerChannel
                };
                let (d, a) =
                    stokes_to_cues(&load_stokes(input, scene)?, channels, DEFAULT_S0_EPSILON)?;
                vec![("dolp", d.0), ("aolp", a.0)]
            }
        };
        for (kind, img) in &planes {
            let path = out.join(plane_file_name(scene, kind, "pfm"));
            outputs.write(path, |p| write_float_image(p, img))?;
        }
        report.push_str(&format!("{scene}: wrote {} planes\n", planes.len()));
    }
    outputs.commit();
    Ok(report)
}
