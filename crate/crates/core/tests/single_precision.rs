//! The core instantiated at `f32`, with tolerances scaled to single precision.

use modcheck::catalog::{generate, standard_fixtures, FixtureSpec};
use modcheck::io::Bundle;
use modcheck::pipeline::{run, RunConfig};
use modcheck::verlinde::verlinde_fusion;

#[test]
fn verlinde_round_trip_in_f32() {
    for spec in standard_fixtures() {
        let fx = generate::<f32>(&spec).unwrap();
        let v = verlinde_fusion(&fx.md, 1e-3).unwrap();
        assert_eq!(v.tensor, fx.fusion, "{}", spec.name());
        assert!(
            v.max_deviation < 1e-5,
            "{}: {}",
            spec.name(),
            v.max_deviation
        );
    }
}

#[test]
fn pipeline_passes_in_f32() {
    let mut config = RunConfig::default();
    config.tolerances.insert("residual".into(), 1e-4);
    config.tolerances.insert("character".into(), 1e-3);
    for spec in [
        FixtureSpec::Fibonacci,
        FixtureSpec::Ising,
        FixtureSpec::Su2 { k: 3 },
    ] {
        let fx = generate::<f32>(&spec).unwrap();
        let bundle = Bundle {
            md: fx.md,
            fusion: Some(fx.fusion),
            fb: fx.fb.map(|f| f.entries().clone()),
            characters: None,
            meta: None,
        };
        let report = run(&bundle, &config).unwrap();
        assert!(
            report.mandatory_passed(),
            "{}\n{}",
            spec.name(),
            report.to_human()
        );
    }
}
