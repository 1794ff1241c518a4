use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use warpad::wavelet::{
    dwt2_multilevel, high_frequency_component, idwt2_multilevel, low_frequency_component, Boundary,
    WaveletFamily, WaveletSpec,
};
use warpad::ImageTensor;

#[derive(Deserialize)]
struct Reference {
    cases: Vec<Case>,
}

#[derive(Deserialize)]
struct Case {
    family: String,
    mode: String,
    input: Vec<Vec<f64>>,
    approx: Vec<Vec<f64>>,
    lh: Vec<Vec<f64>>,
    hl: Vec<Vec<f64>>,
    hh: Vec<Vec<f64>>,
}

fn random_image(seed: u64, c: usize, h: usize, w: usize) -> ImageTensor<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ImageTensor::from_fn(c, h, w, |_, _, _| rng.random::<f64>())
}

#[test]
fn matches_pywavelets_reference_coefficients() {
    let reference: Reference =
        serde_json::from_str(include_str!("fixtures/pywt_reference.json")).unwrap();
    assert!(!reference.cases.is_empty());
    for case in reference.cases {
        let spec = WaveletSpec::new(
            case.family.parse().unwrap(),
            1,
            case.mode.parse::<Boundary>().unwrap(),
        );
        let h = case.input.len();
        let w = case.input[0].len();
        let x = ImageTensor::new(1, h, w, case.input.concat()).unwrap();
        let p = dwt2_multilevel(&x, &spec).unwrap();
        let bands = &p.details[0][0];
        for (name, got, want) in [
            ("approx", &p.approx[0], &case.approx),
            ("lh", &bands.lh, &case.lh),
            ("hl", &bands.hl, &case.hl),
            ("hh", &bands.hh, &case.hh),
        ] {
            assert_eq!(got.rows, want.len(), "{spec} {name} rows");
            assert_eq!(got.cols, want[0].len(), "{spec} {name} cols");
            for (g, e) in got.data.iter().zip(want.concat()) {
                assert!((g - e).abs() < 1e-12, "{spec} {name}: {g} vs {e}");
            }
        }
    }
}

#[test]
fn round_trip_224_haar_level2() {
    let x = random_image(7, 3, 224, 224).cast::<f32>();
    let spec = WaveletSpec::default();
    let back = idwt2_multilevel(&dwt2_multilevel(&x, &spec).unwrap(), &spec).unwrap();
    assert!(back.max_abs_diff(&x).unwrap() <= 1e-5);
}

#[test]
fn round_trip_every_family_level1_f32() {
    let x = random_image(11, 1, 64, 64).cast::<f32>();
    for family in WaveletFamily::ALL {
        let spec = WaveletSpec::new(family, 1, Boundary::Symmetric);
        let back = idwt2_multilevel(&dwt2_multilevel(&x, &spec).unwrap(), &spec).unwrap();
        let err = back.max_abs_diff(&x).unwrap();
        assert!(err <= 1e-4, "{family}: {err}");
    }
}

#[test]
fn constant_image_has_no_detail_energy() {
    for family in WaveletFamily::ALL {
        for boundary in Boundary::ALL {
            for levels in 1..=3 {
                let spec = WaveletSpec::new(family, levels, boundary);
                let x = ImageTensor::<f64>::filled(3, 40, 36, 0.37);
                if boundary == Boundary::Zero {
                    // zero padding makes a constant image look like a box; only
                    // the interior is annihilated
                    continue;
                }
                let p = dwt2_multilevel(&x, &spec).unwrap();
                for bands in p.details.iter().flatten() {
                    for band in [&bands.lh, &bands.hl, &bands.hh] {
                        assert!(band.max_abs() < 1e-6, "{spec}: {}", band.max_abs());
                    }
                }
                let first = p.approx[0].data[0];
                assert!(
                    p.approx[0].data.iter().all(|v| (v - first).abs() < 1e-6),
                    "{spec}"
                );
                let hf = high_frequency_component(&x, &spec).unwrap();
                assert!(hf.data().iter().all(|v| v.abs() < 1e-6), "{spec}");
            }
        }
    }
}

#[test]
fn ramps_are_annihilated_away_from_borders() {
    let families = [
        WaveletFamily::Db2,
        WaveletFamily::Db3,
        WaveletFamily::Db4,
        WaveletFamily::Coif1,
        WaveletFamily::Coif2,
        WaveletFamily::Coif3,
    ];
    let x = ImageTensor::<f64>::from_fn(1, 64, 64, |_, y, x| 0.01 * x as f64 + 0.005 * y as f64);
    for family in families {
        let spec = WaveletSpec::new(family, 1, Boundary::Symmetric);
        let flen = family.filter_bank().len();
        let p = dwt2_multilevel(&x, &spec).unwrap();
        let b = &p.details[0][0];
        let margin = flen;
        for band in [&b.lh, &b.hl, &b.hh] {
            for r in margin..band.rows - margin {
                for c in margin..band.cols - margin {
                    assert!(
                        band.get(r, c).abs() < 1e-6,
                        "{family} ({r},{c}) {}",
                        band.get(r, c)
                    );
                }
            }
        }
    }
}

#[test]
fn periodic_orthogonal_transforms_preserve_energy() {
    let x = random_image(3, 2, 64, 48);
    let pixel_energy: f64 = x.data().iter().map(|v| v * v).sum();
    for family in WaveletFamily::ALL.into_iter().filter(|f| f.is_orthogonal()) {
        for levels in 1..=3 {
            let spec = WaveletSpec::new(family, levels, Boundary::Periodic);
            let e = dwt2_multilevel(&x, &spec).unwrap().energy();
            assert!(
                ((e - pixel_energy) / pixel_energy).abs() < 1e-4,
                "{spec}: {e} vs {pixel_energy}"
            );
        }
    }
}

#[test]
fn lf_plus_hf_is_identity() {
    let spec = WaveletSpec::default();
    for seed in 0..10 {
        let x = random_image(seed, 3, 48, 40);
        let lf = low_frequency_component(&x, &spec).unwrap();
        let hf = high_frequency_component(&x, &spec).unwrap();
        let sum = lf.add_scaled(&hf, 1.0).unwrap();
        assert!(sum.max_abs_diff(&x).unwrap() <= 1e-5);
    }
}

#[test]
fn high_frequency_matches_inverse_with_details_zeroed() {
    let spec = WaveletSpec::new(WaveletFamily::Bior22, 2, Boundary::Symmetric);
    let x = random_image(5, 3, 32, 32);
    let mut p = dwt2_multilevel(&x, &spec).unwrap();
    p.zero_details();
    let lf = idwt2_multilevel(&p, &spec).unwrap();
    let hf = high_frequency_component(&x, &spec).unwrap();
    let residual = x.sub_scaled(&hf, 1.0).unwrap();
    assert!(residual.max_abs_diff(&lf).unwrap() <= 1e-5);
}

fn family_strategy() -> impl Strategy<Value = WaveletFamily> {
    (0..WaveletFamily::ALL.len()).prop_map(|i| WaveletFamily::ALL[i])
}

fn boundary_strategy() -> impl Strategy<Value = Boundary> {
    (0..3usize).prop_map(|i| Boundary::ALL[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn perfect_reconstruction(
        family in family_strategy(),
        boundary in boundary_strategy(),
        levels in 1usize..=3,
        h in 8usize..40,
        w in 8usize..40,
        seed in any::<u64>(),
    ) {
        let spec = WaveletSpec::new(family, levels, boundary);
        let x = random_image(seed, 2, h, w);
        let back = idwt2_multilevel(&dwt2_multilevel(&x, &spec).unwrap(), &spec).unwrap();
        prop_assert_eq!(back.dims(), x.dims());
        prop_assert!(back.max_abs_diff(&x).unwrap() <= 1e-4);
    }

    #[test]
    fn transform_is_linear(
        family in family_strategy(),
        boundary in boundary_strategy(),
        a in -2.0f64..2.0,
        b in -2.0f64..2.0,
        seed in any::<u64>(),
    ) {
        let spec = WaveletSpec::new(family, 2, boundary);
        let x = random_image(seed, 1, 20, 17);
        let y = random_image(seed.wrapping_add(1), 1, 20, 17);
        let mixed = x.map(|v| a * v).add_scaled(&y, b).unwrap();
        let lhs = dwt2_multilevel(&mixed, &spec).unwrap();
        let px = dwt2_multilevel(&x, &spec).unwrap();
        let py = dwt2_multilevel(&y, &spec).unwrap();
        let rhs = px.combine(a, &py, b).unwrap();
        let diff = lhs.combine(1.0, &rhs, -1.0).unwrap();
        let worst = diff.approx.iter()
            .chain(diff.details.iter().flatten().flat_map(|d| [&d.lh, &d.hl, &d.hh]))
            .map(|p| p.max_abs())
            .fold(0.0f64, f64::max);
        prop_assert!(worst <= 1e-6, "{}", worst);
    }
}
