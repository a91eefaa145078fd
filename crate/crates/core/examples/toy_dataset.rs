//! End to end through the command line: render a toy dataset, augment it,
//! then score the clean normals against themselves.
//!
//! cargo run --example toy_dataset -- [work_dir]

use std::path::PathBuf;

fn sfpkit(args: &[&str]) {
    let code = sfpkit::cli::run(std::iter::once("sfpkit").chain(args.iter().copied()));
    assert_eq!(code, 0, "sfpkit {} failed", args.join(" "));
}

fn main() {
    let work = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("sfpkit-toy"));
    let toy = work.join("toy");
    let aug = work.join("aug");
    let (toy_s, aug_s) = (toy.to_str().unwrap(), aug.to_str().unwrap());

    sfpkit(&[
        "toyset", "--n", "10", "--seed", "1", "--jobs", "4", "--out", toy_s,
    ]);
    let manifest = toy.join("manifest.txt");
    sfpkit(&[
        "augment",
        "--manifest",
        manifest.to_str().unwrap(),
        "--seed",
        "1",
        "--out",
        aug_s,
    ]);
    sfpkit(&[
        "eval",
        "--pred",
        toy_s,
        "--gt",
        toy_s,
        "--mask",
        toy_s,
        "--weighting",
        "pixel",
    ]);
    println!(
        "dataset in {}, augmented copy in {}",
        toy.display(),
        aug.display()
    );
}
