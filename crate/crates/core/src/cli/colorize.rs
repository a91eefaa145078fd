use std::path::Path;

use super::{CueKind, OutputSet};
use crate::error::Result;
use crate::imageio::{
    colorize_aolp, colorize_dolp, read_float_image, write_gray8_png, write_rgb8_png,
};
use crate::polar::{AolpMap, DolpMap};

pub(super) fn run(
    input: &Path,
    kind: CueKind,
    dolp: Option<&Path>,
    channel: usize,
    out: &Path,
) -> Result<String> {
    let img = read_float_image(input)?;
    let outputs = OutputSet::new();
    match kind {
        CueKind::Dolp => {
            let gray = colorize_dolp(&DolpMap(img), channel)?;
            outputs.write(out.to_path_buf(), |p| write_gray8_png(p, &gray))?;
        }
        CueKind::Aolp => {
            let d = dolp.map(read_float_image).transpose()?.map(DolpMap);
            let rgb = colorize_aolp(&AolpMap(img), d.as_ref(), channel)?;
            outputs.write(out.to_path_buf(), |p| write_rgb8_png(p, &rgb))?;
        }
    }
    outputs.commit();
    Ok(String::new())
}
