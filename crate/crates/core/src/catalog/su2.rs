use std::f64::consts::PI;

use crate::error::Result;
use crate::linalg::CMatrix;
use crate::modular_data::{FusionTensor, LabelSet, ModularData};
use crate::scalar::{c_real, Rational};

use super::Raw;

/// Label name of spin `i/2`.
pub(crate) fn spin_name(i: u32) -> String {
    if i.is_multiple_of(2) {
        format!("j{}", i / 2)
    } else {
        format!("j{i}/2")
    }
}

/// Truncated Clebsch–Gordan rule at level `k` on twice-spins `0..=k`:
/// `N = 1` iff `|i1-i2| <= i3 <= min(i1+i2, 2k-i1-i2)` and `i1+i2+i3` is even.
pub fn clebsch_gordan_fusion(k: u32) -> FusionTensor {
    let r = (k + 1) as usize;
    FusionTensor::from_fn(r, |a, b, c| {
        let (i1, i2, i3) = (a as i64, b as i64, c as i64);
        let k = k as i64;
        u32::from(
            (i1 - i2).abs() <= i3
                && i3 <= (i1 + i2).min(2 * k - i1 - i2)
                && (i1 + i2 + i3) % 2 == 0,
        )
    })
}

pub(super) fn generate(k: u32) -> Result<Raw> {
    let r = (k + 1) as usize;
    let names = (0..=k).map(spin_name).collect();
    let labels = LabelSet::self_dual(names, 0)?;
    let kk = k as i64 + 2;
    // h_j = j(j+1)/(k+2) with j = i/2, i.e. i(i+2) / 4(k+2).
    let weights = (0..=k as i64)
        .map(|i| Rational::new(i * (i + 2), 4 * kk))
        .collect();
    let central_charge = Rational::new(3 * k as i64, kk);
    let norm = (2.0 / kk as f64).sqrt();
    let s = CMatrix::from_fn(r, r, |a, b| {
        c_real(norm * (PI * ((a + 1) * (b + 1)) as f64 / kk as f64).sin())
    });
    let md = ModularData::new(labels, weights, central_charge, s)?;
    Ok(Raw {
        md,
        fusion: clebsch_gordan_fusion(k),
        characters: None,
        fb: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one() {
        let raw = generate(1).unwrap();
        assert_eq!(
            raw.md.labels().names(),
            &["j0".to_string(), "j1/2".to_string()]
        );
        assert_eq!(
            raw.md.weights(),
            &[Rational::from_integer(0), Rational::new(1, 4)]
        );
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (ab, v) in [((0, 0), h), ((0, 1), h), ((1, 0), h), ((1, 1), -h)] {
            assert!((raw.md.s()[ab].re - v).abs() < 1e-15);
        }
        assert_eq!(raw.fusion.get(1, 1, 0), 1);
        assert_eq!(raw.fusion.get(1, 1, 1), 0);
    }

    #[test]
    fn level_two_fusion() {
        let n = clebsch_gordan_fusion(2);
        // j1/2 x j1/2 = j0 + j1; j1 x j1 = j0.
        assert_eq!((n.get(1, 1, 0), n.get(1, 1, 2), n.get(1, 1, 1)), (1, 1, 0));
        assert_eq!((n.get(2, 2, 0), n.get(2, 2, 2)), (1, 0));
        assert!(n.is_associative());
    }
}
