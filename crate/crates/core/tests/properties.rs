//! Property tests: relabelling covariance, serialisation round trips, seed
//! independence and mutation sensitivity.

use proptest::prelude::*;

use modcheck::catalog::{generate, FixtureSpec};
use modcheck::characters::eval_character;
use modcheck::io::{to_json, FusionDoc};
use modcheck::linalg::CMatrix;
use modcheck::modular_data::{FusionTensor, LabelSet, ModularData};
use modcheck::pipeline::{run_with_flipped_s, RunConfig};
use modcheck::report::{CheckResult, Severity, VerificationReport};
use modcheck::scalar::{exp_2pi_i, format_rational, parse_rational, Rational, C};
use modcheck::verlinde::{s_from_fusion, verlinde_fusion};

fn spec_strategy() -> impl Strategy<Value = FixtureSpec> {
    prop_oneof![
        (1u32..=8).prop_map(|k| FixtureSpec::Su2 { k }),
        prop_oneof![
            Just((2, 5)),
            Just((3, 4)),
            Just((3, 5)),
            Just((4, 5)),
            Just((2, 7))
        ]
        .prop_map(|(p, q)| FixtureSpec::Minimal { p, q }),
        prop_oneof![
            Just((2, 1)),
            Just((3, 2)),
            Just((4, 1)),
            Just((5, 2)),
            Just((6, 1)),
            Just((4, 3))
        ]
        .prop_map(|(n, k)| FixtureSpec::Pointed { n, k }),
        Just(FixtureSpec::Fibonacci),
        Just(FixtureSpec::Ising),
    ]
}

/// The same theory with labels listed in the order `perm`.
fn relabel(md: &ModularData<f64>, perm: &[usize]) -> ModularData<f64> {
    let labels = md.labels();
    let inv: Vec<usize> = (0..perm.len())
        .map(|i| perm.iter().position(|&p| p == i).unwrap())
        .collect();
    let names = perm.iter().map(|&p| labels.name(p).to_string()).collect();
    let dual = perm.iter().map(|&p| inv[labels.dual(p)]).collect();
    let new_labels = LabelSet::new(names, inv[labels.vacuum()], dual).unwrap();
    let weights = perm.iter().map(|&p| md.weight(p)).collect();
    let s = CMatrix::from_fn(perm.len(), perm.len(), |i, j| md.s()[(perm[i], perm[j])]);
    ModularData::new(new_labels, weights, md.central_charge(), s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verlinde_is_relabelling_covariant(spec in spec_strategy(), seed in any::<u64>()) {
        let fx = generate::<f64>(&spec).unwrap();
        let r = fx.md.rank();
        let mut perm: Vec<usize> = (0..r).collect();
        let mut state = seed;
        for i in (1..r).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let md = relabel(&fx.md, &perm);
        let n = verlinde_fusion(&md, 1e-6).unwrap().tensor;
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    prop_assert_eq!(n.get(a, b, c), fx.fusion.get(perm[a], perm[b], perm[c]));
                }
            }
        }
    }

    #[test]
    fn t_shift_multiplies_by_phase(re in -0.5f64..0.5, im in 0.6f64..3.0) {
        for spec in [FixtureSpec::Ising, FixtureSpec::Pointed { n: 4, k: 1 }] {
            let fx = generate::<f64>(&spec).unwrap();
            for ch in fx.characters.as_ref().unwrap() {
                let tau = C::new(re, im);
                let a = eval_character(ch, tau, 300).unwrap().value;
                let b = eval_character(ch, tau + 1.0, 300).unwrap().value;
                prop_assert!((b - exp_2pi_i::<f64>(&ch.offset) * a).norm() < 1e-9 * (1.0 + a.norm()));
            }
        }
    }

    #[test]
    fn rational_strings_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = Rational::new(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn fusion_documents_round_trip(entries in proptest::collection::vec(0u32..4, 27)) {
        let labels = LabelSet::self_dual(vec!["a".into(), "b".into(), "c".into()], 0).unwrap();
        let n = FusionTensor::from_fn(3, |a, b, c| entries[(a * 3 + b) * 3 + c]);
        let js = to_json(&FusionDoc::from_tensor(&n, &labels));
        let back: FusionDoc = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(back.to_tensor(&labels).unwrap(), n);
    }

    #[test]
    fn reports_round_trip(residual in proptest::option::of(0.0f64..10.0), tol in 1e-12f64..1.0, mandatory in any::<bool>()) {
        let severity = if mandatory { Severity::Mandatory } else { Severity::Informational };
        let check = match residual {
            Some(r) => CheckResult::from_residual("x", severity, r, tol),
            None => CheckResult::failed("x", severity, tol, "upstream error"),
        };
        prop_assert_eq!(check.passed, residual.is_some_and(|r| r <= tol));
        let mut report = VerificationReport::new();
        report.push(check);
        let back: VerificationReport = serde_json::from_str(&report.to_json()).unwrap();
        prop_assert_eq!(back.exit_code(), report.exit_code());
        prop_assert_eq!(back, report);
    }

    #[test]
    fn reconstruction_is_seed_independent(k in 1u32..=6, seed in any::<u64>()) {
        let fx = generate::<f64>(&FixtureSpec::Su2 { k }).unwrap();
        let rec = s_from_fusion::<f64>(&fx.fusion, fx.md.labels(), seed).unwrap();
        prop_assert!(rec.candidates.iter().any(|c| c.max_abs_diff(fx.md.s()).0 < 1e-9));
    }

    #[test]
    fn sign_flips_are_detected(spec in spec_strategy(), seed in any::<u64>()) {
        let fx = generate::<f64>(&spec).unwrap();
        let bundle = modcheck::io::Bundle {
            md: fx.md,
            fusion: Some(fx.fusion),
            fb: fx.fb.map(|f| f.entries().clone()),
            characters: fx.characters,
            meta: None,
        };
        let (report, at) = run_with_flipped_s(&bundle, &RunConfig::default(), seed).unwrap();
        prop_assert!(!report.mandatory_passed(), "{} {:?}", spec.name(), at);
    }
}
