use std::f64::consts::PI;

use crate::error::Result;
use crate::linalg::CMatrix;
use crate::modular_data::{FusionTensor, LabelSet, ModularData};
use crate::scalar::{c_real, Rational};

use super::su2::clebsch_gordan_fusion;
use super::Raw;

/// Kac-table representatives `(r, s)` with `1 <= r < p`, `1 <= s < q`, one per
/// class of `(r,s) ~ (p-r, q-s)`: the one with smaller `r`, then smaller `s`.
pub fn minimal_model_labels(p: u32, q: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for r in 1..p {
        for s in 1..q {
            if (r, s) <= (p - r, q - s) {
                out.push((r, s));
            }
        }
    }
    out
}

/// `N = N^{(p)}_{r1 r2}^{r3} N^{(q)}_{s1 s2}^{s3} + N^{(p)}_{r1 r2}^{p-r3} N^{(q)}_{s1 s2}^{q-s3}`
/// from the SU(2) rules at levels `p-2` and `q-2`.
pub fn bpz_fusion(p: u32, q: u32) -> FusionTensor {
    let labels = minimal_model_labels(p, q);
    let np = clebsch_gordan_fusion(p - 2);
    let nq = clebsch_gordan_fusion(q - 2);
    let g = |n: &FusionTensor, a: u32, b: u32, c: u32| {
        n.get(a as usize - 1, b as usize - 1, c as usize - 1)
    };
    FusionTensor::from_fn(labels.len(), |x, y, z| {
        let ((r1, s1), (r2, s2), (r3, s3)) = (labels[x], labels[y], labels[z]);
        g(&np, r1, r2, r3) * g(&nq, s1, s2, s3) + g(&np, r1, r2, p - r3) * g(&nq, s1, s2, q - s3)
    })
}

pub(super) fn generate(p: u32, q: u32) -> Result<Raw> {
    let kac = minimal_model_labels(p, q);
    let names = kac.iter().map(|(r, s)| format!("({r},{s})")).collect();
    let labels = LabelSet::self_dual(names, 0)?;
    let (pi, qi) = (p as i64, q as i64);
    let central_charge = Rational::from_integer(1) - Rational::new(6 * (pi - qi).pow(2), pi * qi);
    let weights = kac
        .iter()
        .map(|&(r, s)| {
            let (r, s) = (r as i64, s as i64);
            Rational::new((r * qi - s * pi).pow(2) - (qi - pi).pow(2), 4 * pi * qi)
        })
        .collect();
    let norm = 2.0 * (2.0 / (p * q) as f64).sqrt();
    let (pf, qf) = (p as f64, q as f64);
    let s = CMatrix::from_fn(kac.len(), kac.len(), |a, b| {
        let ((r, s), (rho, sigma)) = (kac[a], kac[b]);
        let sign = if (1 + s * rho + r * sigma) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        let v = norm
            * sign
            * (PI * qf * (r * rho) as f64 / pf).sin()
            * (PI * pf * (s * sigma) as f64 / qf).sin();
        c_real(v)
    });
    let md = ModularData::new(labels, weights, central_charge, s)?;
    Ok(Raw {
        md,
        fusion: bpz_fusion(p, q),
        characters: None,
        fb: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ising_kac_table() {
        let raw = generate(3, 4).unwrap();
        assert_eq!(raw.md.central_charge(), Rational::new(1, 2));
        assert_eq!(raw.md.labels().names(), &["(1,1)", "(1,2)", "(1,3)"]);
        assert_eq!(
            raw.md.weights(),
            &[
                Rational::from_integer(0),
                Rational::new(1, 16),
                Rational::new(1, 2)
            ]
        );
        assert!((raw.md.s()[(0, 0)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn lee_yang() {
        let raw = generate(2, 5).unwrap();
        assert_eq!(raw.md.central_charge(), Rational::new(-22, 5));
        assert_eq!(
            raw.md.weights(),
            &[Rational::from_integer(0), Rational::new(-1, 5)]
        );
        // (1,2) x (1,2) = (1,1) + (1,2)
        assert_eq!((raw.fusion.get(1, 1, 0), raw.fusion.get(1, 1, 1)), (1, 1));
    }

    #[test]
    fn label_count() {
        assert_eq!(minimal_model_labels(4, 5).len(), 6);
        assert_eq!(minimal_model_labels(5, 6).len(), 10);
    }
}
