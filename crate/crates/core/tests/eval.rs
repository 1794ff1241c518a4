mod common;

use std::sync::Arc;

use common::{brute_auroc, synthetic_manifest};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use warpad::embedder::{build_embedder, CountingEmbedder, Embedder, EmbedderConfig, TestEmbedder};
use warpad::eval::{
    auroc, build_report, export_histogram, run_eval, score_histogram, split_values, sweep,
    write_eval_outputs, DatasetManifest, EvalOptions, EvalReport, FakeScore, ScoredDataset,
    SweepAxis,
};
use warpad::imageops::CorruptionSpec;
use warpad::scoring::{Aggregation, DetectorConfig, ScoreRecord};
use warpad::wavelet::WaveletFamily;
use warpad::WarpadError;

fn small_cfg() -> DetectorConfig {
    let mut cfg = DetectorConfig::with_embedder(EmbedderConfig::test(16));
    cfg.d_rescale = 32;
    cfg
}

fn embedder(cfg: &DetectorConfig) -> TestEmbedder {
    TestEmbedder::from_config(&cfg.embedder).unwrap()
}

#[test]
fn auroc_matches_pair_counting_on_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..200 {
        let n = rng.random_range(1..=1000);
        let m = rng.random_range(1..=1000);
        // coarse grid forces plenty of ties
        let levels = if case % 2 == 0 { 10.0 } else { 1e6 };
        let mut draw = |shift: f64| ((rng.random::<f64>() + shift) * levels).round() / levels;
        let real: Vec<f64> = (0..n).map(|_| draw(0.1)).collect();
        let fake: Vec<f64> = (0..m).map(|_| draw(0.0)).collect();
        let got = auroc(&real, &fake).unwrap();
        assert!(
            (got - brute_auroc(&real, &fake)).abs() < 1e-12,
            "case {case}"
        );
    }
}

proptest! {
    #[test]
    fn auroc_is_rank_invariant_and_antisymmetric(
        real in prop::collection::vec(-1.0f64..1.0, 1..60),
        fake in prop::collection::vec(-1.0f64..1.0, 1..60),
    ) {
        let a = auroc(&real, &fake).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!((a + auroc(&fake, &real).unwrap() - 1.0).abs() < 1e-12);
        let warp = |v: &f64| (3.0 * v).exp() + v;
        let r2: Vec<f64> = real.iter().map(warp).collect();
        let f2: Vec<f64> = fake.iter().map(warp).collect();
        prop_assert!((auroc(&r2, &f2).unwrap() - a).abs() < 1e-12);
    }
}

#[test]
fn mean_auroc_is_arithmetic_mean() {
    let cfg = small_cfg();
    let d = cfg.digest();
    let rec = |id: &str, s: f64| {
        ScoreRecord::from_patch_scores(id, vec![s], Aggregation::Mean, d.clone()).unwrap()
    };
    let manifest = DatasetManifest::from_json(
        r#"{"name":"m","real":["a","b","c","d","e"],"fake":[{"path":"f","generator":"g1"},{"path":"g","generator":"g2"}]}"#,
        "/",
    )
    .unwrap();
    let scored = ScoredDataset {
        real: [0.3, 0.6, 0.9, 0.95, 1.0]
            .iter()
            .enumerate()
            .map(|(i, &s)| rec(&i.to_string(), s))
            .collect(),
        fake: vec![
            FakeScore {
                generator: "g1".into(),
                record: rec("f", 0.5),
            },
            FakeScore {
                generator: "g2".into(),
                record: rec("g", 0.1),
            },
        ],
        skipped: vec![],
    };
    let report = build_report(&manifest, &scored, &cfg, &EvalOptions::default()).unwrap();
    assert!((report.per_generator["g1"] - 0.8).abs() < 1e-12);
    assert_eq!(report.per_generator["g2"], 1.0);
    assert!((report.mean_auroc - 0.9).abs() < 1e-12);
}

#[test]
fn mixed_digests_are_refused() {
    let cfg = small_cfg();
    let manifest = DatasetManifest::from_json(
        r#"{"name":"m","real":["a"],"fake":[{"path":"f","generator":"g"}]}"#,
        "/",
    )
    .unwrap();
    let scored = ScoredDataset {
        real: vec![
            ScoreRecord::from_patch_scores("a", vec![0.5], Aggregation::Mean, "other").unwrap(),
        ],
        fake: vec![FakeScore {
            generator: "g".into(),
            record: ScoreRecord::from_patch_scores("f", vec![0.5], Aggregation::Mean, cfg.digest())
                .unwrap(),
        }],
        skipped: vec![],
    };
    assert!(build_report(&manifest, &scored, &cfg, &EvalOptions::default()).is_err());
}

#[test]
fn synthetic_run_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = synthetic_manifest(dir.path(), 2, 2, &["noise"]);
    let manifest = DatasetManifest::load(&path).unwrap();
    let cfg = small_cfg();
    let (report, scored) =
        run_eval::<f32, _>(&manifest, &cfg, &embedder(&cfg), &EvalOptions::default()).unwrap();
    assert_eq!((report.n_real, report.n_fake, report.skipped), (2, 2, 0));
    assert!((0.0..=1.0).contains(&report.per_generator["noise"]));
    let out = dir.path().join("out");
    let report_path = write_eval_outputs(&out, &report, &scored).unwrap();
    let back = EvalReport::load(&report_path).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.digest(), report.digest());
    assert_eq!(back.to_json(), report.to_json());
    for f in ["scores_real.jsonl", "scores_fake.jsonl", "histogram.csv"] {
        assert!(out.join(f).exists(), "{f}");
    }
}

#[test]
fn runs_are_deterministic_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let manifest =
        DatasetManifest::load(&synthetic_manifest(dir.path(), 5, 3, &["a", "b"])).unwrap();
    let cfg = small_cfg();
    let emb = embedder(&cfg);
    let mut opts = EvalOptions {
        corruption: Some(CorruptionSpec::gaussian_noise(0.05, 9)),
        seed: 42,
        jobs: 1,
        ..Default::default()
    };
    let (a, _) = run_eval::<f32, _>(&manifest, &cfg, &emb, &opts).unwrap();
    opts.jobs = 4;
    let (b, _) = run_eval::<f32, _>(&manifest, &cfg, &emb, &opts).unwrap();
    assert_eq!(a.digest(), b.digest());
}

#[test]
fn noise_corruption_inherits_run_seed() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = DatasetManifest::load(&synthetic_manifest(dir.path(), 3, 3, &["a"])).unwrap();
    let cfg = small_cfg();
    let emb = embedder(&cfg);
    let spec: CorruptionSpec = "gaussian_noise=0.1".parse().unwrap();
    let opts = |seed| EvalOptions {
        corruption: Some(spec),
        seed,
        ..Default::default()
    };
    let (a, _) = run_eval::<f32, _>(&manifest, &cfg, &emb, &opts(1)).unwrap();
    let (b, _) = run_eval::<f32, _>(&manifest, &cfg, &emb, &opts(2)).unwrap();
    assert_eq!(a.corruption.unwrap().seed, Some(1));
    assert_ne!(a.score_histograms, b.score_histograms);
}

#[test]
fn identity_corruptions_match_clean_auroc() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = DatasetManifest::load(&synthetic_manifest(dir.path(), 4, 4, &["a"])).unwrap();
    let cfg = small_cfg();
    let emb = embedder(&cfg);
    let (clean, _) = run_eval::<f32, _>(&manifest, &cfg, &emb, &EvalOptions::default()).unwrap();
    for spec in [
        CorruptionSpec::gaussian_noise(0.0, 3),
        CorruptionSpec::center_crop(1.0),
    ] {
        let opts = EvalOptions {
            corruption: Some(spec),
            ..Default::default()
        };
        let (r, _) = run_eval::<f32, _>(&manifest, &cfg, &emb, &opts).unwrap();
        assert!((r.mean_auroc - clean.mean_auroc).abs() < 1e-6, "{spec}");
    }
}

#[test]
fn jpeg_corruption_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = DatasetManifest::load(&synthetic_manifest(dir.path(), 2, 2, &["a"])).unwrap();
    let cfg = small_cfg();
    let opts = EvalOptions {
        corruption: Some(CorruptionSpec::jpeg(90)),
        ..Default::default()
    };
    let (r, _) = run_eval::<f32, _>(&manifest, &cfg, &embedder(&cfg), &opts).unwrap();
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(
        json["corruption"],
        serde_json::json!({"kind": "jpeg", "parameter": 90})
    );
}

#[test]
fn unreadable_images_are_tolerated_up_to_ten_percent() {
    let dir = tempfile::tempdir().unwrap();
    let path = synthetic_manifest(dir.path(), 10, 10, &["a"]);
    std::fs::write(dir.path().join("real/r000.png"), b"not an image").unwrap();
    std::fs::write(dir.path().join("fake/a_000.png"), b"").unwrap();
    let manifest = DatasetManifest::load(&path).unwrap();
    let cfg = small_cfg();
    let emb = embedder(&cfg);
    let (r, _) = run_eval::<f32, _>(&manifest, &cfg, &emb, &EvalOptions::default()).unwrap();
    assert_eq!((r.skipped, r.n_real, r.n_fake), (2, 9, 9));
    assert_eq!(r.skipped_images.len(), 2);

    std::fs::remove_file(dir.path().join("real/r001.png")).unwrap();
    match run_eval::<f32, _>(&manifest, &cfg, &emb, &EvalOptions::default()) {
        Err(WarpadError::Ingestion { path: p, reason }) => {
            assert_eq!(p, path);
            assert!(reason.contains("3 of 20"), "{reason}");
        }
        other => panic!(
            "expected ingestion failure, got {:?}",
            other.map(|r| r.0.mean_auroc)
        ),
    }
}

#[test]
fn histogram_counts_are_conserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let real: Vec<f64> = (0..60).map(|_| rng.random()).collect();
    let fake: Vec<f64> = (0..40).map(|_| rng.random()).collect();
    let h = score_histogram(&real, &fake, 10).unwrap();
    assert_eq!(h.edges.len(), 11);
    assert_eq!(
        h.real.iter().sum::<usize>() + h.fake.iter().sum::<usize>(),
        100
    );
    assert_eq!(h.real.iter().sum::<usize>(), 60);
    assert!(export_histogram(&[], &[], 10).is_err());
}

fn counting_factory(
    counter: Arc<CountingEmbedder<TestEmbedder>>,
) -> impl Fn(&EmbedderConfig) -> warpad::Result<Arc<dyn Embedder<f32>>> {
    move |cfg| {
        assert_eq!(cfg.input_size, counter_input(&counter));
        Ok(counter.clone() as Arc<dyn Embedder<f32>>)
    }
}

fn counter_input(c: &CountingEmbedder<TestEmbedder>) -> usize {
    Embedder::<f32>::input_size(c)
}

#[test]
fn aggregation_sweep_embeds_once() {
    let dir = tempfile::tempdir().unwrap();
    let manifest =
        DatasetManifest::load(&synthetic_manifest(dir.path(), 3, 3, &["a", "b"])).unwrap();
    let cfg = small_cfg();
    let counter = Arc::new(CountingEmbedder::new(embedder(&cfg)));
    let factory = counting_factory(counter.clone());
    let values = split_values("mean,median,min,max");
    let res = sweep(
        &manifest,
        &cfg,
        &EvalOptions::default(),
        SweepAxis::Aggregation,
        &values,
        &factory,
    )
    .unwrap();
    assert_eq!(res.scoring_passes, 1);
    assert_eq!(res.reports().count(), 4);
    // 9 images x 4 patches x (original + perturbed)
    assert_eq!(counter.patches(), 9 * 4 * 2);
    let digests: std::collections::HashSet<_> = res
        .reports()
        .map(|(_, r)| r.config_digest.clone())
        .collect();
    assert_eq!(digests.len(), 4);

    // the reaggregated reports equal independent full runs
    for (value, report) in res.reports() {
        let mut c = cfg.clone();
        c.aggregation = value.parse().unwrap();
        let (direct, _) =
            run_eval::<f32, _>(&manifest, &c, &embedder(&c), &EvalOptions::default()).unwrap();
        assert_eq!(&direct, report);
    }
    let csv = res.to_csv().unwrap();
    assert!(csv.starts_with("axis,generator,auroc\n"));
    assert_eq!(csv.lines().count(), 1 + 4 * 3);
}

#[test]
fn alpha_sweep_and_bad_values() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = DatasetManifest::load(&synthetic_manifest(dir.path(), 2, 2, &["a"])).unwrap();
    let cfg = small_cfg();
    let factory = |c: &EmbedderConfig| build_embedder::<f32>(c);
    let values = split_values("0.05,0.1,oops,0.2,2.0");
    let res = sweep(
        &manifest,
        &cfg,
        &EvalOptions::default(),
        SweepAxis::Alpha,
        &values,
        &factory,
    )
    .unwrap();
    assert_eq!(res.reports().count(), 3);
    assert_eq!(
        res.failures().map(|(v, _)| v).collect::<Vec<_>>(),
        vec!["oops", "2.0"]
    );
    let digests: std::collections::HashSet<_> = res
        .reports()
        .map(|(_, r)| r.config_digest.clone())
        .collect();
    assert_eq!(digests.len(), 3);
}

#[test]
fn wavelet_grid_has_table_shape() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = DatasetManifest::load(&synthetic_manifest(dir.path(), 2, 2, &["a"])).unwrap();
    let mut cfg = DetectorConfig::with_embedder(EmbedderConfig::test(16));
    cfg.d_rescale = 16;
    let factory = |c: &EmbedderConfig| build_embedder::<f32>(c);
    let values: Vec<String> = WaveletFamily::ALL
        .iter()
        .flat_map(|f| (1..=3).map(move |l| format!("{f}:{l}")))
        .collect();
    let res = sweep(
        &manifest,
        &cfg,
        &EvalOptions::default(),
        SweepAxis::Wavelet,
        &values,
        &factory,
    )
    .unwrap();
    assert_eq!(res.reports().count(), 36);
    assert_eq!(res.failures().count(), 0);
}

#[test]
fn level_and_patch_sweeps() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = DatasetManifest::load(&synthetic_manifest(dir.path(), 2, 2, &["a"])).unwrap();
    let cfg = small_cfg();
    let factory = |c: &EmbedderConfig| build_embedder::<f32>(c);
    let levels = sweep(
        &manifest,
        &cfg,
        &EvalOptions::default(),
        SweepAxis::Level,
        &split_values("1,2,3"),
        &factory,
    )
    .unwrap();
    assert_eq!(levels.reports().count(), 3);
    let patches = sweep(
        &manifest,
        &cfg,
        &EvalOptions::default(),
        SweepAxis::DPatch,
        &split_values("8,16"),
        &factory,
    )
    .unwrap();
    let dims: Vec<_> = patches
        .reports()
        .map(|(_, r)| (r.config.d_patch, r.config.d_rescale))
        .collect();
    assert_eq!(dims, vec![(8, 16), (16, 32)]);
}

#[test]
fn baseline_methods_run_through_eval() {
    use warpad::scoring::ScoreMethod;
    let dir = tempfile::tempdir().unwrap();
    let manifest = DatasetManifest::load(&synthetic_manifest(dir.path(), 3, 3, &["a"])).unwrap();
    let cfg = small_cfg();
    let emb = embedder(&cfg);
    let mut digests = std::collections::HashSet::new();
    for method in [
        ScoreMethod::Warpad,
        ScoreMethod::Rigid { sigma: 0.05 },
        ScoreMethod::RigidPatch { sigma: 0.05 },
    ] {
        let opts = EvalOptions {
            method,
            seed: 3,
            ..Default::default()
        };
        let (r, scored) = run_eval::<f32, _>(&manifest, &cfg, &emb, &opts).unwrap();
        assert_eq!(r.method, method);
        let patches = scored.real[0].patch_scores.len();
        assert_eq!(
            patches,
            if matches!(method, ScoreMethod::Rigid { .. }) {
                1
            } else {
                4
            }
        );
        digests.insert(r.config_digest.clone());
        let (again, _) = run_eval::<f32, _>(&manifest, &cfg, &emb, &opts).unwrap();
        assert_eq!(r.digest(), again.digest());
    }
    assert_eq!(digests.len(), 3);
}
