//! Catalog character series against direct numeric theta and eta values.

use modcheck::catalog::{generate, FixtureSpec};
use modcheck::characters::{eval_character, s_transform_check, CharacterSeries};
use modcheck::scalar::C;
use std::f64::consts::PI;

const SAMPLES: [(f64, f64); 4] = [(0.0, 2.0), (0.0, 1.5), (1.0 / 3.0, 1.0), (-0.45, 0.8)];

fn nome_power(tau: C<f64>, x: f64) -> C<f64> {
    // q^x with q = e^{2 pi i tau}
    (C::new(0.0, 2.0 * PI * x) * tau).exp()
}

fn eta(tau: C<f64>) -> C<f64> {
    (1..400).fold(nome_power(tau, 1.0 / 24.0), |acc, n| {
        acc * (C::new(1.0, 0.0) - nome_power(tau, n as f64))
    })
}

/// `Σ_n s^n q^{(n+shift)^2 / 2}`.
fn theta(tau: C<f64>, shift: f64, sign: f64) -> C<f64> {
    (-60i32..=60).fold(C::new(0.0, 0.0), |acc, n| {
        let m = n as f64 + shift;
        acc + nome_power(tau, m * m / 2.0) * sign.powi(n.abs())
    })
}

fn value(ch: &CharacterSeries, tau: C<f64>) -> C<f64> {
    eval_character(ch, tau, 300).unwrap().value
}

#[test]
fn ising_squares_match_theta_quotients() {
    let chs = generate::<f64>(&FixtureSpec::Ising)
        .unwrap()
        .characters
        .unwrap();
    let names: Vec<&str> = chs.iter().map(|c| c.label.as_str()).collect();
    assert_eq!(names, ["1", "psi", "sigma"]);
    for (re, im) in SAMPLES {
        let tau = C::new(re, im);
        let (one, psi, sigma) = (
            value(&chs[0], tau),
            value(&chs[1], tau),
            value(&chs[2], tau),
        );
        let e = eta(tau);
        let plus = (one + psi).powu(2) - theta(tau, 0.0, 1.0) / e;
        let minus = (one - psi).powu(2) - theta(tau, 0.0, -1.0) / e;
        let twisted = sigma.powu(2) * 2.0 - theta(tau, 0.5, 1.0) / e;
        for r in [plus, minus, twisted] {
            assert!(r.norm() < 1e-10, "tau = {tau}: {r}");
        }
    }
}

#[test]
fn z2_lattice_matches_theta_over_eta() {
    let chs = generate::<f64>(&FixtureSpec::Pointed { n: 2, k: 1 })
        .unwrap()
        .characters
        .unwrap();
    for (re, im) in SAMPLES {
        let tau = C::new(re, im);
        let e = eta(tau);
        // θ_a(τ) = Σ_m q^{(m + a/2)^2} = Σ_m q'^{(m + a/2)^2 / 2} with q' = q^2.
        let chi0 = theta(tau * 2.0, 0.0, 1.0) / e;
        let chi1 = theta(tau * 2.0, 0.5, 1.0) / e;
        assert!((value(&chs[0], tau) - chi0).norm() < 1e-10);
        assert!((value(&chs[1], tau) - chi1).norm() < 1e-10);
    }
}

#[test]
fn s_transform_holds_on_catalog_characters() {
    for spec in [
        FixtureSpec::Trivial,
        FixtureSpec::Ising,
        FixtureSpec::Pointed { n: 2, k: 1 },
        FixtureSpec::Pointed { n: 4, k: 1 },
    ] {
        let fx = generate::<f64>(&spec).unwrap();
        let taus: Vec<C<f64>> = SAMPLES.iter().map(|&(re, im)| C::new(re, im)).collect();
        let report =
            s_transform_check(fx.characters.as_ref().unwrap(), &fx.md, &taus, 300, 1e-9).unwrap();
        assert!(
            report.all_passed(),
            "{}\n{}",
            spec.name(),
            report.to_human()
        );
    }
}

#[test]
fn short_truncation_is_reported() {
    let fx = generate::<f64>(&FixtureSpec::Ising).unwrap();
    let taus = [C::new(0.0, 0.3)];
    let err =
        s_transform_check(fx.characters.as_ref().unwrap(), &fx.md, &taus, 5, 1e-9).unwrap_err();
    assert!(matches!(err, modcheck::Error::TruncationTooShort(..)));
}
