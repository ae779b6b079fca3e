//! Truncated q-series characters and numeric checks of their modular
//! transformations at sample points of the upper half plane.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular_data::ModularData;
use crate::report::{Severity, VerificationReport, Worst};
use crate::scalar::{c, format_rational, rational_to_real, to_f64, Rational, Real, C};

pub const DEFAULT_TRUNCATION: usize = 300;

/// Default sample points `2i`, `3i/2`, `1/3 + i`.
pub fn default_taus() -> Vec<(f64, f64)> {
    vec![(0.0, 2.0), (0.0, 1.5), (1.0 / 3.0, 1.0)]
}

/// `q^{offset} Σ_n coeffs[n] q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSeries {
    pub label: String,
    #[serde(with = "rational_string")]
    pub offset: Rational,
    pub coeffs: Vec<u64>,
}

mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalar::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// A truncated value and the heuristic tail bound
/// `coeffs[L] |q|^{offset+L} / (1 - |q|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation<T> {
    pub value: C<T>,
    pub bound: T,
}

/// `q_τ = e^{2πiτ}`, or an error when `Im τ <= 0`.
fn check_tau<T: Real>(tau: C<T>) -> Result<()> {
    if tau.im > T::zero() {
        Ok(())
    } else {
        Err(Error::TauNotInUpperHalfPlane(format!(
            "{} + {}i",
            tau.re, tau.im
        )))
    }
}

/// Sums the first `l + 1` terms of the series at `τ`.
pub fn eval_character<T: Real>(ch: &CharacterSeries, tau: C<T>, l: usize) -> Result<Evaluation<T>> {
    check_tau(tau)?;
    if ch.coeffs.len() <= l {
        return Err(Error::CharacterMismatch(format!(
            "series for '{}' has {} coefficients, truncation L = {l} needs {}",
            ch.label,
            ch.coeffs.len(),
            l + 1
        )));
    }
    let two_pi_i = c(T::zero(), T::TAU());
    let q = (two_pi_i * tau).exp();
    let off = rational_to_real::<T>(&ch.offset);
    let mut power = (two_pi_i * tau * off).exp();
    let mut sum = C::new(T::zero(), T::zero());
    for &a in &ch.coeffs[..=l] {
        sum = sum + power * T::from_u64(a).expect("coefficient fits");
        power = power * q;
    }
    let aq = q.norm();
    let bound = T::from_u64(ch.coeffs[l]).expect("coefficient fits")
        * aq.powf(off + T::from_usize(l).unwrap())
        / (T::one() - aq);
    Ok(Evaluation { value: sum, bound })
}

/// One series per label in label order, offsets equal to `h_a - c/24` exactly,
/// and a nonzero leading coefficient.
pub fn validate_characters<T: Real>(chs: &[CharacterSeries], md: &ModularData<T>) -> Result<()> {
    let labels = md.labels();
    if chs.len() != labels.len() {
        return Err(Error::CharacterMismatch(format!(
            "{} series for {} labels",
            chs.len(),
            labels.len()
        )));
    }
    for (a, ch) in chs.iter().enumerate() {
        if ch.label != labels.name(a) {
            return Err(Error::CharacterMismatch(format!(
                "series {a} is labelled '{}', expected '{}'",
                ch.label,
                labels.name(a)
            )));
        }
        let expected = md.weight(a) - md.central_charge() / Rational::from_integer(24);
        if ch.offset != expected {
            return Err(Error::CharacterMismatch(format!(
                "offset of '{}' is {}, expected {}",
                ch.label,
                format_rational(&ch.offset),
                format_rational(&expected)
            )));
        }
        if ch.coeffs.first().is_none_or(|&x| x == 0) {
            return Err(Error::CharacterMismatch(format!(
                "leading coefficient of '{}' is zero",
                ch.label
            )));
        }
    }
    Ok(())
}

/// `χ_{a1}(-1/τ) = Σ_{a2} S_{a1}^{a2} χ_{a2}(τ)` at every sample point
/// (mandatory), and `χ_a(τ+1) = e^{2πi·offset} χ_a(τ)` (informational).
///
/// The pass threshold is `tolerance` plus the propagated truncation bounds;
/// when the bounds alone exceed `tolerance` the truncation is too short.
pub fn s_transform_check<T: Real>(
    chs: &[CharacterSeries],
    md: &ModularData<T>,
    taus: &[C<T>],
    l: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    validate_characters(chs, md)?;
    let labels = md.labels();
    let s = md.s();
    let n = md.rank();
    let mut worst = Worst::default();
    let mut worst_t = Worst::default();
    let mut max_bound = 0.0f64;
    for &tau in taus {
        check_tau(tau)?;
        let tau_s = -tau.inv();
        let at_tau: Vec<Evaluation<T>> = chs
            .iter()
            .map(|ch| eval_character(ch, tau, l))
            .collect::<Result<_>>()?;
        let at_s: Vec<Evaluation<T>> = chs
            .iter()
            .map(|ch| eval_character(ch, tau_s, l))
            .collect::<Result<_>>()?;
        for a1 in 0..n {
            let mut rhs = C::new(T::zero(), T::zero());
            let mut bound = at_s[a1].bound;
            for a2 in 0..n {
                rhs = rhs + s[(a1, a2)] * at_tau[a2].value;
                bound = bound + s[(a1, a2)].norm() * at_tau[a2].bound;
            }
            let bound = to_f64(bound);
            if !(bound <= tolerance) {
                return Err(Error::TruncationTooShort(bound, tolerance));
            }
            max_bound = max_bound.max(bound);
            worst.observe(to_f64((at_s[a1].value - rhs).norm()), || {
                vec![
                    labels.name(a1).to_string(),
                    format!("tau={}+{}i", tau.re, tau.im),
                ]
            });
        }
        let tau_t = tau + T::one();
        for (a, ch) in chs.iter().enumerate() {
            let shifted = eval_character(ch, tau_t, l)?;
            let phase = crate::scalar::exp_2pi_i::<T>(&ch.offset);
            worst_t.observe(
                to_f64((shifted.value - phase * at_tau[a].value).norm()),
                || {
                    vec![
                        labels.name(a).to_string(),
                        format!("tau={}+{}i", tau.re, tau.im),
                    ]
                },
            );
        }
    }
    let mut report = VerificationReport::new();
    report.push(
        worst
            .into_check("s_transform", Severity::Mandatory, tolerance + max_bound)
            .with_detail(format!("{} sample points, L = {l}", taus.len())),
    );
    report.push(worst_t.into_check(
        "t_transform",
        Severity::Informational,
        tolerance + max_bound,
    ));
    Ok(report)
}
