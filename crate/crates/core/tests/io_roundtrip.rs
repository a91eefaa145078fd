use proptest::prelude::*;
use sfpkit::imageio::*;
use sfpkit::metrics::{ForegroundMask, NormalMap};
use sfpkit::scenegen::{CameraPose, Placement, SceneSpec};
use sfpkit::ImageBuf;

fn any_image() -> impl Strategy<Value = ImageBuf> {
    (1usize..9, 1usize..9, prop::sample::select(vec![1usize, 3])).prop_flat_map(|(w, h, c)| {
        prop::collection::vec(any::<u32>().prop_map(f32::from_bits), w * h * c)
            .prop_map(move |d| ImageBuf::new(w, h, c, d).unwrap())
    })
}

fn id() -> impl Strategy<Value = String> {
    "[A-Za-z0-9_.-]{1,16}"
}

fn finite() -> impl Strategy<Value = f64> {
    any::<f64>().prop_filter("finite", |v| v.is_finite())
}

fn any_spec() -> impl Strategy<Value = SceneSpec> {
    let placement =
        (id(), finite(), finite(), finite(), finite()).prop_map(|(object_id, scale, x, y, yaw)| {
            Placement {
                object_id,
                scale,
                x,
                y,
                yaw,
            }
        });
    (
        id(),
        prop::collection::vec(placement, 0..12),
        id(),
        finite(),
        (finite(), finite(), finite()),
        any::<u32>(),
        any::<u32>(),
    )
        .prop_map(
            |(scene_id, placements, envmap_id, env_rotation, (az, el, r), height, width)| {
                SceneSpec {
                    scene_id,
                    placements,
                    envmap_id,
                    env_rotation,
                    camera: CameraPose {
                        azimuth: az,
                        elevation: el,
                        radius: r,
                    },
                    height,
                    width,
                }
            },
        )
}

fn same_bits(a: &ImageBuf, b: &ImageBuf) -> bool {
    a.dims() == b.dims()
        && a.data()
            .iter()
            .zip(b.data())
            .all(|(x, y)| x.to_bits() == y.to_bits())
}

proptest! {
    #[test]
    fn pfm_bytes_round_trip_bit_exact(img in any_image()) {
        let back = decode_pfm(&encode_pfm(&img).unwrap()).unwrap();
        prop_assert!(same_bits(&img, &back));
    }

    #[test]
    fn scene_spec_text_round_trip(spec in any_spec()) {
        let text = spec.to_text().unwrap();
        let back = SceneSpec::parse(&text).unwrap();
        prop_assert_eq!(back.to_text().unwrap(), text);
        prop_assert_eq!(back.env_rotation.to_bits(), spec.env_rotation.to_bits());
        for (a, b) in back.placements.iter().zip(&spec.placements) {
            prop_assert_eq!(a.x.to_bits(), b.x.to_bits());
            prop_assert_eq!(a.yaw.to_bits(), b.yaw.to_bits());
        }
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn normal_png_error_bounded(v in prop::collection::vec(prop::array::uniform3(-1.0f64..1.0), 12)) {
        let normals: Vec<[f32; 3]> = v.iter().map(|n| {
            let l = (n[0]*n[0] + n[1]*n[1] + n[2]*n[2]).sqrt().max(1e-3);
            n.map(|c| (c / l) as f32)
        }).collect();
        let map = NormalMap::new(4, 3, normals.clone()).unwrap();
        let mask = ForegroundMask::full(4, 3).unwrap();
        let rgb = encode_normal_image(&map, &mask).unwrap();
        // before renormalization, each component is off by at most one code step
        for (p, n) in rgb.pixels().zip(&normals) {
            for (&code, &c) in p.0.iter().zip(n) {
                let dec = code as f64 / 255.0 * 2.0 - 1.0;
                prop_assert!((dec - c as f64).abs() <= 1.0 / 255.0 + 1e-9);
            }
        }
        let back = decode_normal_image(&rgb, &mask).unwrap();
        for n in back.data() {
            let l = (n[0]*n[0] + n[1]*n[1] + n[2]*n[2]).sqrt();
            prop_assert!((l - 1.0).abs() < 1e-5);
        }
    }
}

#[test]
fn full_resolution_stokes_plane_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let data: Vec<f32> = (0..512 * 612 * 3u64)
        .map(|i| ((i * 7919) % 10007) as f32 / 10007.0 - 0.3)
        .collect();
    let img = ImageBuf::new(612, 512, 3, data).unwrap();
    let path = dir.path().join("scene_000000_s1.pfm");
    write_float_image(&path, &img).unwrap();
    let back = read_float_image(&path).unwrap();
    assert!(same_bits(&img, &back));
}

#[test]
fn short_payload_is_truncation() {
    let img = ImageBuf::filled(5, 4, 3, 0.5).unwrap();
    let bytes = encode_pfm(&img).unwrap();
    let row = 5 * 3 * 4;
    let err = decode_pfm(&bytes[..bytes.len() - row]).unwrap_err();
    assert!(matches!(
        err,
        sfpkit::Error::Format(sfpkit::FormatError::Truncated { .. })
    ));
}

#[test]
fn writers_are_deterministic() {
    let img = ImageBuf::new(2, 2, 1, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
    assert_eq!(encode_pfm(&img).unwrap(), encode_pfm(&img).unwrap());
    assert_eq!(
        encode_code_png(&img, 12).unwrap(),
        encode_code_png(&img, 12).unwrap()
    );
    let m = ForegroundMask::new(2, 1, vec![true, false]).unwrap();
    assert_eq!(encode_mask(&m).unwrap(), encode_mask(&m).unwrap());
}
