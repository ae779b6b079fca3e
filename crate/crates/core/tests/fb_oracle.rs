//! Fusing/braiding identities on catalog data, compared against published
//! gauge-invariant values for Fibonacci and Ising.

use modcheck::catalog::{generate, FixtureSpec};
use modcheck::fb::{
    hexagon_check, ms_identity_check, nondegeneracy_check, pentagon_check, rigidity_check,
    rigidity_scalar, s_form3_check, sigma_action_check, trace_matrix_from_fb, NondegeneracyInput,
};
use modcheck::scalar::{exp_2pi_i, Rational, C};
use modcheck::verlinde::quantum_dimensions;

const TOL: f64 = 1e-9;

fn fb_specs() -> Vec<FixtureSpec> {
    vec![
        FixtureSpec::Trivial,
        FixtureSpec::Fibonacci,
        FixtureSpec::Ising,
        FixtureSpec::Pointed { n: 3, k: 2 },
    ]
}

#[test]
fn every_identity_holds_on_catalog_fb_data() {
    for spec in fb_specs() {
        let fx = generate::<f64>(&spec).unwrap();
        let fb = fx.fb.as_ref().unwrap();
        let name = spec.name();
        assert!(
            pentagon_check(fb, &fx.fusion, TOL).unwrap().passed,
            "{name} pentagon"
        );
        let hex = hexagon_check(fb, &fx.md, &fx.fusion, TOL).unwrap();
        assert!(hex.all_passed(), "{name} {}", hex.to_human());
        assert!(sigma_action_check(fb, TOL).unwrap().passed, "{name} sigma");
        assert!(
            ms_identity_check(fb, &fx.fusion, TOL).unwrap().passed,
            "{name} ms"
        );
        assert!(
            s_form3_check(fb, &fx.md, TOL).unwrap().passed,
            "{name} s_form3"
        );
        assert!(rigidity_check(fb, 1e-6).unwrap().0.passed);
        let nd = nondegeneracy_check(NondegeneracyInput::Fb(fb), 1e-6).unwrap();
        assert!(nd.passed, "{name} nondegeneracy");
    }
}

#[test]
fn trace_matrix_equals_normalised_s() {
    for spec in fb_specs() {
        let fx = generate::<f64>(&spec).unwrap();
        let t = trace_matrix_from_fb(fx.fb.as_ref().unwrap()).unwrap();
        let see = fx.md.s()[(0, 0)];
        let expected = fx.md.s().scale(see.inv());
        assert!(t.max_abs_diff(&expected).0 < TOL, "{}", spec.name());
    }
}

#[test]
fn rigidity_magnitude_is_inverse_dimension() {
    for spec in fb_specs() {
        let fx = generate::<f64>(&spec).unwrap();
        let d = quantum_dimensions(&fx.md, TOL).unwrap();
        for a in 0..fx.md.rank() {
            let rig = rigidity_scalar(fx.fb.as_ref().unwrap(), a).unwrap();
            assert!(
                (rig.norm() - 1.0 / d.values[a].norm()).abs() < TOL,
                "{} label {a}",
                spec.name()
            );
        }
    }
}

fn turns(p: i64, q: i64) -> C<f64> {
    exp_2pi_i(&Rational::new(p, q))
}

#[test]
fn ising_gauge_invariants() {
    let fx = generate::<f64>(&FixtureSpec::Ising).unwrap();
    let fb = fx.fb.unwrap();
    let (psi, sigma) = (1, 2);
    // R^{σσ}_1 = e^{-πi/8}, R^{σσ}_ψ = e^{3πi/8}, R^{ψψ}_1 = -1.
    assert!((fb.r_symbol(sigma, sigma, 0).unwrap() - turns(-1, 16)).norm() < TOL);
    assert!((fb.r_symbol(sigma, sigma, psi).unwrap() - turns(3, 16)).norm() < TOL);
    assert!((fb.r_symbol(psi, psi, 0).unwrap() - turns(1, 2)).norm() < TOL);
    // Monodromy R^{σψ} R^{ψσ} = -1.
    let m = fb.r_symbol(sigma, psi, sigma).unwrap() * fb.r_symbol(psi, sigma, sigma).unwrap();
    assert!((m + 1.0).norm() < TOL);
    // Diagonal of F^{σσσ}_σ is (1/√2, -1/√2); F^{σψσ}_ψ = -1 is gauge invariant.
    let sf = fb.standard_f().unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((sf.get(sigma, sigma, sigma, sigma, 0, 0).re - h).abs() < TOL);
    assert!((sf.get(sigma, sigma, sigma, sigma, psi, psi).re + h).abs() < TOL);
    assert!((sf.get(sigma, psi, sigma, psi, sigma, sigma).re + 1.0).abs() < TOL);
}

#[test]
fn fibonacci_sigma_values() {
    let fx = generate::<f64>(&FixtureSpec::Fibonacci).unwrap();
    let fb = fx.fb.unwrap();
    assert!((fb.sigma12([1, 1, 1]).unwrap() + 1.0).norm() < TOL);
    assert!((fb.sigma23([1, 1, 1]).unwrap() + 1.0).norm() < TOL);
    for a in 0..2 {
        assert!((fb.sigma12([0, a, a]).unwrap() - 1.0).norm() < TOL);
        assert!((fb.sigma23([a, 0, a]).unwrap() - 1.0).norm() < TOL);
    }
}

#[test]
fn corrupted_f_breaks_the_pentagon() {
    let fx = generate::<f64>(&FixtureSpec::Fibonacci).unwrap();
    let mut entries = fx.fb.unwrap().entries().clone();
    let v = entries.f.get_mut(&[1, 1, 1, 1, 1, 1]).unwrap();
    *v = -*v;
    let fb = modcheck::fb::FbData::new(&fx.md, &fx.fusion, entries).unwrap();
    let check = pentagon_check(&fb, &fx.fusion, TOL).unwrap();
    assert!(!check.passed);
    assert!(check.witness.is_some());
}

#[test]
fn corrupted_sigma12_breaks_the_hexagon() {
    let fx = generate::<f64>(&FixtureSpec::Ising).unwrap();
    let mut entries = fx.fb.unwrap().entries().clone();
    let v = entries.sigma12.get_mut(&[2, 2, 1]).unwrap();
    *v = -*v;
    let fb = modcheck::fb::FbData::new(&fx.md, &fx.fusion, entries).unwrap();
    let hex = hexagon_check(&fb, &fx.md, &fx.fusion, TOL).unwrap();
    assert!(!hex.get("hexagon").unwrap().passed);
    assert!(!ms_identity_check(&fb, &fx.fusion, TOL).unwrap().passed);
}

#[test]
fn ms_left_side_vanishes_off_support() {
    // All 27 triples are swept; those with N = 0 contribute an exact zero.
    let fx = generate::<f64>(&FixtureSpec::Ising).unwrap();
    let check = ms_identity_check(fx.fb.as_ref().unwrap(), &fx.fusion, TOL).unwrap();
    assert_eq!(check.count, Some(27));
    assert!(check.passed);
}
