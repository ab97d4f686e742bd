use kerov::limits::{collect_fluctuations, run_clt_characters, shape_character_gap_variance};
use kerov::plancherel::{derive_seed, sample, sample_many, SamplingMode};
use kerov::rational::to_f64;

#[test]
fn batches_regenerate_from_their_seeds() {
    let batch = sample_many(200, 64, 99, SamplingMode::Fast);
    for (i, rec) in batch.iter().enumerate() {
        assert_eq!(rec.seed, derive_seed(99, i as u64));
        assert_eq!(rec.diagram(), sample(200, rec.seed));
    }
    assert_eq!(sample_many(200, 64, 99, SamplingMode::Fast), batch);
    assert_ne!(sample_many(200, 64, 100, SamplingMode::Fast), batch);
}

#[test]
fn reports_are_reproducible() {
    let a = run_clt_characters(300, 200, 4, 5).unwrap();
    let b = run_clt_characters(300, 200, 4, 5).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn exact_and_fast_marginals_agree_at_small_n() {
    // both modes hit every diagram of size 5 with frequency close to M_5
    let weights = kerov::plancherel::growth_marginal_exact(5);
    let count = 20_000;
    for mode in [SamplingMode::Exact, SamplingMode::Fast] {
        let batch = sample_many(5, count, 3, mode);
        for (lambda, p) in &weights {
            let p = to_f64(p);
            let hits = batch.iter().filter(|r| r.diagram() == *lambda).count() as f64;
            let se = (p * (1.0 - p) / count as f64).sqrt();
            assert!((hits / count as f64 - p).abs() < 4.5 * se, "{mode:?} {lambda:?}");
        }
    }
}

#[test]
fn shape_fluctuations_approach_character_fluctuations() {
    // u_k - η_{k+1}/√(k+1) is a lower-order remainder, so its variance shrinks with n
    let samples = 300;
    let small = collect_fluctuations(1000, samples, 5, 11).unwrap();
    let large = collect_fluctuations(4000, samples, 5, 11).unwrap();
    for k in 1..=4 {
        let v1 = shape_character_gap_variance(&small, k);
        let v4 = shape_character_gap_variance(&large, k);
        assert!(v4 < v1, "k={k}: {v1} then {v4}");
    }
}
