use proptest::prelude::*;
use sfpkit::polar::*;
use sfpkit::ImageBuf;

fn plane(v: Vec<f32>, w: usize) -> ImageBuf {
    let h = v.len() / w;
    ImageBuf::new(w, h, 1, v).unwrap()
}

/// Physically valid Stokes samples: s0 in [0, 1], |(s1, s2)| <= s0.
fn valid_stokes(n: usize) -> impl Strategy<Value = StokesImage> {
    prop::collection::vec((0.0f32..=1.0, 0.0f32..=1.0, -3.2f32..3.2), n).prop_map(|px| {
        let s0: Vec<f32> = px.iter().map(|p| p.0).collect();
        let s1 = px.iter().map(|p| p.0 * p.1 * p.2.cos()).collect();
        let s2 = px.iter().map(|p| p.0 * p.1 * p.2.sin()).collect();
        StokesImage::new(plane(s0, 4), plane(s1, 4), plane(s2, 4)).unwrap()
    })
}

fn any_quad(n: usize) -> impl Strategy<Value = QuadPolarImage> {
    prop::collection::vec(prop::array::uniform4(-0.5f32..1.5), n).prop_map(|px| {
        let get = |k: usize| plane(px.iter().map(|p| p[k]).collect(), 4);
        QuadPolarImage::new(get(0), get(1), get(2), get(3)).unwrap()
    })
}

fn max_abs_diff(a: &ImageBuf, b: &ImageBuf) -> f32 {
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f32::max)
}

proptest! {
    #[test]
    fn stokes_round_trip(s in valid_stokes(32)) {
        let back = quad_to_stokes(&stokes_to_quad(&s).unwrap()).unwrap();
        for (a, b) in back.planes().iter().zip(s.planes()) {
            prop_assert!(max_abs_diff(a, b) <= 1e-6);
        }
    }

    #[test]
    fn consistent_quad_round_trip(s in valid_stokes(16)) {
        // stokes_to_quad output satisfies I0 + I90 = I45 + I135 by construction
        let q = stokes_to_quad(&s).unwrap();
        let back = stokes_to_quad(&quad_to_stokes(&q).unwrap()).unwrap();
        for (a, b) in back.planes().iter().zip(q.planes()) {
            prop_assert!(max_abs_diff(a, b) <= 1e-6);
        }
    }

    #[test]
    fn quad_projection_is_idempotent(q in any_quad(16)) {
        let once = stokes_to_quad(&quad_to_stokes(&q).unwrap()).unwrap();
        let twice = stokes_to_quad(&quad_to_stokes(&once).unwrap()).unwrap();
        for (a, b) in once.planes().iter().zip(twice.planes()) {
            prop_assert!(max_abs_diff(a, b) <= 1e-5);
        }
    }

    #[test]
    fn conversions_are_linear(x in any_quad(8), y in any_quad(8), a in -2.0f32..2.0, b in -2.0f32..2.0) {
        let combo = QuadPolarImage::new(
            x.i0.zip_with(&y.i0, a, b), x.i45.zip_with(&y.i45, a, b),
            x.i90.zip_with(&y.i90, a, b), x.i135.zip_with(&y.i135, a, b),
        ).unwrap();
        let (sx, sy) = (quad_to_stokes(&x).unwrap(), quad_to_stokes(&y).unwrap());
        let sc = quad_to_stokes(&combo).unwrap();
        for ((c, p), q) in sc.planes().iter().zip(sx.planes()).zip(sy.planes()) {
            prop_assert!(max_abs_diff(c, &p.zip_with(q, a, b)) <= 1e-5);
        }
        let (qx, qy) = (stokes_to_quad(&sx).unwrap(), stokes_to_quad(&sy).unwrap());
        let qc = stokes_to_quad(&sc).unwrap();
        for ((c, p), q) in qc.planes().iter().zip(qx.planes()).zip(qy.planes()) {
            prop_assert!(max_abs_diff(c, &p.zip_with(q, a, b)) <= 1e-5);
        }
    }

    #[test]
    fn cue_ranges(s0 in -1.0f32..2.0, s1 in -2.0f32..2.0, s2 in -2.0f32..2.0) {
        let d = dolp_value(s0, s1, s2, DEFAULT_S0_EPSILON);
        let a = aolp_value(s1, s2);
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert!(a > -std::f32::consts::FRAC_PI_2 && a <= std::f32::consts::FRAC_PI_2);
    }

    #[test]
    fn rotation_covariance(s0 in 0.1f32..1.0, p in 0.05f32..1.0, phi in -1.4f32..1.4, psi in -0.7f32..0.7) {
        // angle 2*phi keeps AoLP = phi; stay away from the +-pi/2 wrap
        prop_assume!((phi + psi).abs() < 1.45);
        let (s1, s2) = (s0 * p * (2.0 * phi).cos(), s0 * p * (2.0 * phi).sin());
        let (c, s) = ((2.0 * psi as f64).cos(), (2.0 * psi as f64).sin());
        let r1 = (s1 as f64 * c - s2 as f64 * s) as f32;
        let r2 = (s1 as f64 * s + s2 as f64 * c) as f32;
        let d0 = dolp_value(s0, s1, s2, DEFAULT_S0_EPSILON);
        let d1 = dolp_value(s0, r1, r2, DEFAULT_S0_EPSILON);
        prop_assert!((d0 - d1).abs() <= 1e-5);
        let shift = aolp_value(r1, r2) - aolp_value(s1, s2);
        prop_assert!((shift - psi).abs() <= 1e-5, "shift {shift} psi {psi}");
    }

    #[test]
    fn validate_never_flags_valid_stokes(s in valid_stokes(32)) {
        prop_assert!(validate_stokes(&s).unwrap().is_valid());
    }
}

trait ZipWith {
    fn zip_with(&self, other: &ImageBuf, a: f32, b: f32) -> ImageBuf;
}

impl ZipWith for ImageBuf {
    fn zip_with(&self, other: &ImageBuf, a: f32, b: f32) -> ImageBuf {
        let data = self
            .data()
            .iter()
            .zip(other.data())
            .map(|(x, y)| a * x + b * y)
            .collect();
        ImageBuf::new(self.width(), self.height(), self.channels(), data).unwrap()
    }
}

#[test]
fn dolp_of_two_one_one() {
    let px = |v| ImageBuf::new(1, 1, 1, vec![v]).unwrap();
    let s = StokesImage::new(px(2.0), px(1.0), px(1.0)).unwrap();
    let d = stokes_to_dolp(&s, DEFAULT_S0_EPSILON).unwrap().0.data()[0] as f64;
    // oracle: sqrt(1 + 1) / 2
    assert!((d - 2f64.sqrt() / 2.0).abs() < 1e-6);
}
