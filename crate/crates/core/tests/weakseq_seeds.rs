use exlab_core::generate::gnp;
use exlab_core::preset::Preset;
use exlab_core::weakseq::{minor_pipeline, regime2_t, verify_minor, verify_sequence, weak_sequence_pipeline};
use exlab_core::RngStream;

#[test]
fn sequences_on_half_density_random_graphs() {
    let env = Preset::desk().envelopes;
    let t = regime2_t(2000, 0.5, 4);
    let mut ok = 0;
    for seed in 0..10 {
        let mut rng = RngStream::new(seed);
        let g = gnp(2000, 0.5, &mut rng);
        if let Ok(out) = weak_sequence_pipeline(&g, 4, t, &env, &mut rng, 1000) {
            assert!(verify_sequence(&g, &out.sequence).is_ok());
            assert!(out.stats.checks.iter().all(|c| c.holds), "{:?}", out.stats.checks);
            ok += 1;
        }
    }
    assert!(ok >= 9, "{ok}/10");
}

#[test]
fn desk_minor_on_ten_seeds() {
    let p = Preset::desk();
    let sc = &p.scenario;
    for seed in 0..10 {
        let mut rng = RngStream::new(seed);
        let g = gnp(sc.n, sc.p, &mut rng);
        let out = minor_pipeline(&g, sc.r, sc.t, &p.weakseq, &p.envelopes, &mut rng, 1000)
            .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(verify_minor(&g, &out.model).is_ok());
        assert!(out.model.branch_sets.iter().all(|b| b.len() <= 8 * sc.r));
    }
}
