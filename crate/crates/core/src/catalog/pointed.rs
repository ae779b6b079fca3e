use num_traits::Zero;

use crate::characters::CharacterSeries;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::modular_data::{FusionTensor, LabelSet, ModularData};
use crate::scalar::{exp_2pi_i, Rational, C};

use super::series::{mul, partitions, to_u64};
use super::{anyon, Raw, CHARACTER_TERMS, POINTED_FB_MAX_RANK};

fn frac(r: Rational) -> Rational {
    r - r.floor()
}

/// `k = 1`, `n` even: the lattice `sqrt(n) Z`.
fn is_lattice(n: u32, k: u32) -> bool {
    k == 1 && n.is_multiple_of(2)
}

fn weights(n: u32, k: u32) -> Vec<Rational> {
    let (n, k) = (n as i64, k as i64);
    (0..n)
        .map(|a| {
            if k == 1 && n % 2 == 0 {
                let m = a.min(n - a);
                Rational::new(m * m, 2 * n)
            } else {
                frac(Rational::new(k * a * a, 2 * n))
            }
        })
        .collect()
}

/// `c mod 8` from the Gauss sum `n^{-1/2} Σ_a e^{2πi h_a} = e^{2πi c/8}`.
fn gauss_central_charge(h: &[Rational]) -> Result<Rational> {
    let n = h.len() as f64;
    let g = h.iter().fold(C::zero(), |s, x| s + exp_2pi_i::<f64>(x)) / n.sqrt();
    let eighths = g.arg() / std::f64::consts::TAU * 8.0;
    let rounded = eighths.round();
    if (g.norm() - 1.0).abs() > 1e-9 || (eighths - rounded).abs() > 1e-9 {
        return Err(Error::InvalidParameters(format!(
            "degenerate quadratic form, Gauss sum {g}"
        )));
    }
    Ok(Rational::from_integer((rounded as i64).rem_euclid(8)))
}

/// `θ_a / η` for the lattice `sqrt(n) Z`.
fn lattice_characters(n: u32, labels: &LabelSet, h: &[Rational]) -> Result<Vec<CharacterSeries>> {
    let len = CHARACTER_TERMS;
    let p = partitions(len);
    let n = n as i64;
    let mut out = Vec::new();
    for a in 0..n {
        let a0 = a.min(n - a);
        let mut theta = vec![0u128; len];
        let reach = (((a0 * a0 + 2 * n * len as i64) as f64).sqrt() / n as f64).ceil() as i64 + 1;
        for m in -reach..=reach {
            let x = a + m * n;
            let j = (x * x - a0 * a0) / (2 * n);
            if j >= 0 && (j as usize) < len {
                theta[j as usize] += 1;
            }
        }
        out.push(CharacterSeries {
            label: labels.name(a as usize).to_string(),
            offset: h[a as usize] - Rational::new(1, 24),
            coeffs: to_u64(mul(&theta, &p, len))?,
        });
    }
    Ok(out)
}

pub(super) fn generate(n: u32, k: u32) -> Result<Raw> {
    let r = n as usize;
    let names = (0..n).map(|a| a.to_string()).collect();
    let dual = (0..r).map(|a| (r - a) % r).collect();
    let labels = LabelSet::new(names, 0, dual)?;
    let h = weights(n, k);
    let central_charge = if is_lattice(n, k) {
        Rational::from_integer(1)
    } else {
        gauss_central_charge(&h)?
    };
    let norm = 1.0 / (n as f64).sqrt();
    let s = CMatrix::from_fn(r, r, |a, b| {
        exp_2pi_i::<f64>(&Rational::new(-((k as i64) * (a * b) as i64), n as i64)) * norm
    });
    let fusion = FusionTensor::from_fn(r, |a, b, c| u32::from((a + b) % r == c));
    let md = ModularData::new(labels.clone(), h.clone(), central_charge, s)?;
    let characters = if is_lattice(n, k) {
        Some(lattice_characters(n, &labels, &h)?)
    } else {
        None
    };
    let fb = if n % 2 == 1 && n <= POINTED_FB_MAX_RANK {
        Some(anyon::solve_fb(&md, &fusion, n)?)
    } else {
        None
    };
    Ok(Raw {
        md,
        fusion,
        characters,
        fb,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z3_level_two() {
        let raw = generate(3, 2).unwrap();
        assert_eq!(
            raw.md.weights(),
            &[Rational::zero(), Rational::new(1, 3), Rational::new(1, 3)]
        );
        assert_eq!(raw.md.central_charge(), Rational::from_integer(2));
        assert_eq!(raw.md.labels().dual(1), 2);
    }

    #[test]
    fn lattice_weights_are_not_reduced() {
        let h = weights(8, 1);
        assert_eq!(h[4], Rational::from_integer(1));
        assert_eq!(h[3], Rational::new(9, 16));
    }

    #[test]
    fn z2_lattice_characters() {
        let raw = generate(2, 1).unwrap();
        let chs = raw.characters.unwrap();
        // χ_0 = (1 + 2q + 2q^4 + ...) / η: 1, 3, 4, 7, ...
        assert_eq!(&chs[0].coeffs[..4], &[1, 3, 4, 7]);
        // χ_1 = q^{1/4}(2 + 2q^2 + ...)/η
        assert_eq!(&chs[1].coeffs[..3], &[2, 2, 6]);
        assert_eq!(chs[1].offset, Rational::new(1, 4) - Rational::new(1, 24));
        assert!(raw.fb.is_none());
    }
}
