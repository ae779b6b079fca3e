//! Fusion rules from the S-matrix and back.
//!
//! The Verlinde formula
//!
//! ```text
//! N_{a1 a2}^{a3} = sum_{a4} S_{a1}^{a4} S_{a2}^{a4} S_{a4}^{a3'} / S_e^{a4}
//! ```
//!
//! and its matrix form: with `Ñ(a2)_{a1,a3} = N_{a1 a2}^{a3}`, the product
//! `S^{-1} Ñ(a2) S` is diagonal with entries `S_{a2}^{a4} / S_e^{a4}`.
//! Matrix entries are always written `S[(row, col)] = S_{row}^{col}`.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::modular_data::{FusionTensor, LabelSet, ModularData};
use crate::report::{CheckResult, Severity, VerificationReport, Worst};
use crate::scalar::{to_f64, Real, C};

/// Separate from the residual tolerance: entries are O(n) sums of products.
pub const DEFAULT_INTEGRALITY_TOLERANCE: f64 = 1e-6;

/// Below this modulus a vacuum-row entry counts as zero.
pub const VACUUM_ENTRY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct VerlindeFusion {
    pub tensor: FusionTensor,
    /// Largest distance of a pre-rounding value from its rounded integer.
    pub max_deviation: f64,
    pub worst: (usize, usize, usize),
}

/// Pre-rounding Verlinde values, indexed `[(a1 * n + a2) * n + a3]`.
pub fn verlinde_values<T: Real>(md: &ModularData<T>) -> Result<Vec<C<T>>> {
    let n = md.rank();
    let s = md.s();
    let e = md.labels().vacuum();
    let floor = T::lit(VACUUM_ENTRY_FLOOR);
    let mut inv_vac: Vec<C<T>> = Vec::with_capacity(n);
    for a4 in 0..n {
        if s[(e, a4)].norm() <= floor {
            return Err(Error::VacuumColumnZero(md.labels().name(a4).to_string()));
        }
        inv_vac.push(s[(e, a4)].inv());
    }
    let mut out = vec![C::zero(); n * n * n];
    for a1 in 0..n {
        for a2 in 0..n {
            let w: Vec<C<T>> = (0..n)
                .map(|a4| s[(a1, a4)] * s[(a2, a4)] * inv_vac[a4])
                .collect();
            for a3 in 0..n {
                let a3d = md.labels().dual(a3);
                out[(a1 * n + a2) * n + a3] =
                    (0..n).fold(C::zero(), |acc, a4| acc + w[a4] * s[(a4, a3d)]);
            }
        }
    }
    Ok(out)
}

/// Fusion tensor from S by the Verlinde formula, rounded entrywise.
pub fn verlinde_fusion<T: Real>(
    md: &ModularData<T>,
    integrality_tolerance: f64,
) -> Result<VerlindeFusion> {
    let n = md.rank();
    let values = verlinde_values(md)?;
    let mut tensor = FusionTensor::zeros(n);
    let mut max_deviation = 0.0;
    let mut worst = (0, 0, 0);
    for a1 in 0..n {
        for a2 in 0..n {
            for a3 in 0..n {
                let v = values[(a1 * n + a2) * n + a3];
                let re = to_f64(v.re);
                let rounded = re.round();
                let dev = (re - rounded).hypot(to_f64(v.im));
                let key = || md.labels().fmt_tuple(&[a1, a2, a3]);
                if !(dev <= integrality_tolerance) {
                    return Err(Error::NonIntegral(key(), dev));
                }
                if rounded < 0.0 {
                    return Err(Error::Negative(key(), rounded as i64));
                }
                if dev > max_deviation {
                    max_deviation = dev;
                    worst = (a1, a2, a3);
                }
                tensor.set(a1, a2, a3, rounded as u32);
            }
        }
    }
    Ok(VerlindeFusion {
        tensor,
        max_deviation,
        worst,
    })
}

/// `N(a)` with entries `N(a)_{a1,a2} = N_{a a1}^{a2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionMatrix {
    pub label: usize,
    pub matrix: Vec<Vec<u32>>,
}

pub fn fusion_matrices(n: &FusionTensor) -> Vec<FusionMatrix> {
    let r = n.rank();
    (0..r)
        .map(|a| FusionMatrix {
            label: a,
            matrix: (0..r)
                .map(|a1| (0..r).map(|a2| n.get(a, a1, a2)).collect())
                .collect(),
        })
        .collect()
}

fn to_cmatrix<T: Real>(m: &[Vec<u32>]) -> CMatrix<T> {
    crate::linalg::from_integer_rows(m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagonalization<T> {
    pub report: VerificationReport,
    /// `eigenvalues[a2][a4]`: diagonal entry `a4` of `S^{-1} Ñ(a2) S`.
    pub eigenvalues: Vec<Vec<C<T>>>,
}

/// Checks that S diagonalises every fusion matrix, and that the diagonal is
/// `S_{a2}^{a4} / S_e^{a4}`.
pub fn diagonalization_check<T: Real>(
    md: &ModularData<T>,
    n: &FusionTensor,
    tolerance: f64,
) -> Diagonalization<T> {
    let r = md.rank();
    let labels = md.labels();
    let s = md.s();
    let s_inv = md.s_inverse();
    let e = labels.vacuum();
    let mut off = Worst::default();
    let mut diag = Worst::default();
    let mut eigenvalues = Vec::with_capacity(r);
    for a2 in 0..r {
        let tilde = CMatrix::from_fn(r, r, |a1, a3| {
            Complex::new(T::lit(n.get(a1, a2, a3) as f64), T::zero())
        });
        let m = s_inv.matmul(&tilde).matmul(s);
        for a4 in 0..r {
            for a5 in 0..r {
                if a4 != a5 {
                    off.observe(to_f64(m[(a4, a5)].norm()), || {
                        vec![
                            labels.name(a2).into(),
                            labels.name(a4).into(),
                            labels.name(a5).into(),
                        ]
                    });
                }
            }
            let expected = s[(a2, a4)] / s[(e, a4)];
            diag.observe(to_f64((m[(a4, a4)] - expected).norm()), || {
                vec![labels.name(a2).into(), labels.name(a4).into()]
            });
        }
        eigenvalues.push((0..r).map(|a4| m[(a4, a4)]).collect());
    }
    if r == 1 {
        // no off-diagonal entries; the empty maximum is 0
        off.count = 0;
    }
    let mut report = VerificationReport::new();
    report.push(off.into_check("diagonalization", Severity::Mandatory, tolerance));
    report.push(diag.into_check(
        "diagonalization_eigenvalues",
        Severity::Mandatory,
        tolerance,
    ));
    Diagonalization {
        report,
        eigenvalues,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumDimensions<T> {
    pub values: Vec<C<T>>,
    /// Largest imaginary part.
    pub imaginary_residual: f64,
    /// All `d_a` real within tolerance.
    pub all_real: bool,
    /// All `d_a >= 1` (within tolerance); holds for unitary theories.
    pub unitary_like: bool,
}

pub fn quantum_dimensions<T: Real>(
    md: &ModularData<T>,
    tolerance: f64,
) -> Result<QuantumDimensions<T>> {
    let s = md.s();
    let e = md.labels().vacuum();
    let see = s[(e, e)];
    if to_f64(see.norm()) <= VACUUM_ENTRY_FLOOR {
        return Err(Error::VacuumEntryZero);
    }
    let values: Vec<C<T>> = (0..md.rank())
        .map(|a| if a == e { C::one() } else { s[(e, a)] / see })
        .collect();
    let imaginary_residual = values.iter().fold(0.0f64, |m, d| m.max(to_f64(d.im.abs())));
    let all_real = imaginary_residual <= tolerance;
    let unitary_like = all_real && values.iter().all(|d| to_f64(d.re) >= 1.0 - tolerance);
    Ok(QuantumDimensions {
        values,
        imaginary_residual,
        all_real,
        unitary_like,
    })
}

/// Largest `|S_{a1}^{a2} - S_{a2}^{a1}|`.
pub fn s_symmetry_check<T: Real>(md: &ModularData<T>, tolerance: f64) -> CheckResult {
    let s = md.s();
    let labels = md.labels();
    let mut worst = Worst::default();
    for a1 in 0..md.rank() {
        for a2 in a1 + 1..md.rank() {
            worst.observe(to_f64((s[(a1, a2)] - s[(a2, a1)]).norm()), || {
                vec![labels.name(a1).into(), labels.name(a2).into()]
            });
        }
    }
    worst.into_check("s_symmetry", Severity::Mandatory, tolerance)
}

/// `max |S S^† - 1|`; unitary S is expected for unitary theories only.
pub fn s_unitarity_check<T: Real>(md: &ModularData<T>, tolerance: f64) -> CheckResult {
    let s = md.s();
    let (res, (i, j)) = s
        .matmul(&s.adjoint())
        .max_abs_diff(&CMatrix::identity(md.rank()));
    let labels = md.labels();
    CheckResult::from_residual(
        "s_unitarity",
        Severity::Informational,
        to_f64(res),
        tolerance,
    )
    .with_witness(Some(vec![labels.name(i).into(), labels.name(j).into()]))
}

/// Result of reconstructing S from a fusion ring.
#[derive(Debug, Clone, PartialEq)]
pub struct SFromFusion<T> {
    /// Common eigenvectors as columns, unit norm, vacuum row positive real
    /// where nonzero, sorted by their eigenvalue vectors.
    pub eigenvectors: CMatrix<T>,
    /// `eigenvalues[k][a]`: eigenvalue of `N(a)` on column `k`.
    pub eigenvalues: Vec<Vec<C<T>>>,
    /// Every assignment of columns to labels whose Verlinde fusion is the
    /// input tensor, as full S-matrices.
    pub candidates: Vec<CMatrix<T>>,
}

const JOINT_EIGEN_TOLERANCE: f64 = 1e-8;
const SPLIT_GAP: f64 = 1e-6;
const SPLIT_ATTEMPTS: usize = 8;

/// Common eigenbasis of all `N(a)` via a seeded random Hermitian combination,
/// then every column ordering consistent with the Verlinde formula.
pub fn s_from_fusion<T: Real>(
    n: &FusionTensor,
    labels: &LabelSet,
    seed: u64,
) -> Result<SFromFusion<T>> {
    let r = n.rank();
    if r != labels.len() {
        return Err(Error::DimensionMismatch(format!(
            "tensor rank {r} vs {} labels",
            labels.len()
        )));
    }
    let mats: Vec<CMatrix<T>> = fusion_matrices(n)
        .iter()
        .map(|m| to_cmatrix(&m.matrix))
        .collect();
    let scale = mats.iter().fold(T::one(), |m, x| m.max(x.max_abs()));
    for a in 0..r {
        for b in a + 1..r {
            let comm = mats[a].matmul(&mats[b]).sub(&mats[b].matmul(&mats[a]));
            if comm.max_abs() > T::zero() {
                return Err(Error::NonCommutingFusionMatrices(
                    labels.name(a).into(),
                    labels.name(b).into(),
                ));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = None;
    for _ in 0..SPLIT_ATTEMPTS {
        // H = sum c_a (N + N^T) + i d_a (N - N^T) is Hermitian and shares the
        // eigenvectors of the normal commuting family {N(a)}.
        let mut h = CMatrix::zeros(r, r);
        for m in &mats {
            let cr = T::lit(rng.gen_range(-1.0..1.0));
            let ci = T::lit(rng.gen_range(-1.0..1.0));
            let mt = m.transpose();
            h = h.add(&m.add(&mt).scale(Complex::new(cr, T::zero())));
            h = h.add(&m.sub(&mt).scale(Complex::new(T::zero(), ci)));
        }
        let (vals, vecs) = h.hermitian_eigen();
        let spread = vals.iter().fold(T::one(), |m, v| m.max(v.abs()));
        let min_gap = vals
            .windows(2)
            .fold(T::infinity(), |m, w| m.min(w[1] - w[0]));
        if r == 1 || min_gap > T::lit(SPLIT_GAP) * spread {
            basis = Some(vecs);
            break;
        }
    }
    let vecs = basis.ok_or(Error::DegenerateSpectrumUnresolved)?;
    let e = labels.vacuum();

    // Normalise columns and read off eigenvalues.
    let mut columns: Vec<(Vec<C<T>>, Vec<C<T>>)> = Vec::with_capacity(r);
    for k in 0..r {
        let mut v = vecs.column(k);
        let ve = v[e];
        if ve.norm() > T::lit(VACUUM_ENTRY_FLOOR) {
            let phase = ve.conj() / ve.norm();
            v.iter_mut().for_each(|x| *x = *x * phase);
        }
        let norm = v.iter().fold(T::zero(), |s, x| s + x.norm_sqr()).sqrt();
        v.iter_mut().for_each(|x| *x = *x / norm);
        let mut lambdas = Vec::with_capacity(r);
        for m in &mats {
            // Rayleigh quotient v^H N v for a unit vector.
            let nv: Vec<C<T>> = (0..r)
                .map(|i| (0..r).fold(C::zero(), |s, j| s + m[(i, j)] * v[j]))
                .collect();
            let lambda: C<T> = (0..r).fold(C::zero(), |s, i| s + v[i].conj() * nv[i]);
            let resid = (0..r).fold(T::zero(), |s, i| s.max((nv[i] - lambda * v[i]).norm()));
            if resid > T::lit(JOINT_EIGEN_TOLERANCE) * scale {
                return Err(Error::DegenerateSpectrumUnresolved);
            }
            lambdas.push(lambda);
        }
        columns.push((v, lambdas));
    }
    // Deterministic column order: eigenvalue vectors, lexicographically descending.
    let key = |l: &Vec<C<T>>| -> Vec<(i64, i64)> {
        l.iter()
            .map(|z| {
                (
                    (to_f64(z.re) * 1e8).round() as i64,
                    (to_f64(z.im) * 1e8).round() as i64,
                )
            })
            .collect()
    };
    columns.sort_by(|x, y| key(&y.1).cmp(&key(&x.1)));
    let eigenvectors = CMatrix::from_fn(r, r, |i, k| columns[k].0[i]);
    let eigenvalues: Vec<Vec<C<T>>> = columns.into_iter().map(|(_, l)| l).collect();

    let mut candidates = Vec::new();
    let mut assign = vec![usize::MAX; r];
    let mut used = vec![false; r];
    search_orderings(
        &eigenvectors,
        labels,
        0,
        &mut assign,
        &mut used,
        &mut candidates,
    );
    // Confirm by round trip.
    let candidates: Vec<CMatrix<T>> = candidates
        .into_iter()
        .filter(|s| {
            let weights = vec![crate::scalar::Rational::zero(); r];
            ModularData::new(
                labels.clone(),
                weights,
                crate::scalar::Rational::zero(),
                s.clone(),
            )
            .ok()
            .and_then(|md| verlinde_fusion(&md, DEFAULT_INTEGRALITY_TOLERANCE).ok())
            .is_some_and(|v| v.tensor == *n)
        })
        .collect();
    if candidates.is_empty() {
        return Err(Error::NoConsistentOrdering);
    }
    Ok(SFromFusion {
        eigenvectors,
        eigenvalues,
        candidates,
    })
}

/// Compares S with the reconstruction from `n`, after normalising each
/// column of S to unit norm with a positive real vacuum entry.
pub fn s_reconstruction_check<T: Real>(
    md: &ModularData<T>,
    n: &FusionTensor,
    seed: u64,
    tolerance: f64,
) -> CheckResult {
    let name = "s_reconstruction";
    let rec = match s_from_fusion::<T>(n, md.labels(), seed) {
        Ok(r) => r,
        Err(e) => {
            return CheckResult::failed(name, Severity::Informational, tolerance, e.to_string())
        }
    };
    let r = md.rank();
    let e = md.labels().vacuum();
    let mut s = md.s().clone();
    for k in 0..r {
        let v = s[(e, k)];
        let phase = if v.norm() > T::lit(VACUUM_ENTRY_FLOOR) {
            v.conj() / v.norm()
        } else {
            C::one()
        };
        let norm = (0..r)
            .fold(T::zero(), |acc, i| acc + s[(i, k)].norm_sqr())
            .sqrt();
        for i in 0..r {
            s[(i, k)] = s[(i, k)] * phase / norm;
        }
    }
    let best = rec
        .candidates
        .iter()
        .map(|c| to_f64(c.max_abs_diff(&s).0))
        .fold(f64::INFINITY, f64::min);
    CheckResult::from_residual(name, Severity::Informational, best, tolerance).with_detail(format!(
        "{} consistent orderings, seed {seed}",
        rec.candidates.len()
    ))
}

/// Backtracking over label -> column maps. With `U` unitary, the Verlinde sum
/// reproduces `N` exactly when `S_{x}^{y} = conj(S_{y'}^{x})` for every pair,
/// i.e. `U[x][col y] = conj(U[y'][col x])`.
fn search_orderings<T: Real>(
    u: &CMatrix<T>,
    labels: &LabelSet,
    next: usize,
    assign: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<CMatrix<T>>,
) {
    let r = u.rows();
    if next == r {
        out.push(CMatrix::from_fn(r, r, |a, b| u[(a, assign[b])]));
        return;
    }
    let tol = T::lit(JOINT_EIGEN_TOLERANCE);
    for col in 0..r {
        if used[col] {
            continue;
        }
        assign[next] = col;
        let consistent = (0..=next).all(|y| {
            let pair_ok = |x: usize, y: usize| {
                let yd = labels.dual(y);
                if assign[x] == usize::MAX || assign[y] == usize::MAX {
                    return true;
                }
                (u[(x, assign[y])] - u[(yd, assign[x])].conj()).norm() <= tol
            };
            pair_ok(next, y) && pair_ok(y, next)
        });
        if consistent {
            used[col] = true;
            search_orderings(u, labels, next + 1, assign, used, out);
            used[col] = false;
        }
        assign[next] = usize::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_data::LabelSet;
    use crate::scalar::{c, Rational};

    fn fib_md() -> ModularData<f64> {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let k = 1.0 / (2.0 + phi).sqrt();
        let s = CMatrix::from_real_rows(&[vec![k, k * phi], vec![k * phi, -k]]).unwrap();
        let labels = LabelSet::self_dual(vec!["1".into(), "tau".into()], 0).unwrap();
        ModularData::new(
            labels,
            vec![Rational::zero(), Rational::new(2, 5)],
            Rational::new(14, 5),
            s,
        )
        .unwrap()
    }

    fn trivial_md() -> ModularData<f64> {
        let labels = LabelSet::self_dual(vec!["e".into()], 0).unwrap();
        ModularData::new(
            labels,
            vec![Rational::zero()],
            Rational::zero(),
            CMatrix::identity(1),
        )
        .unwrap()
    }

    #[test]
    fn trivial_theory() {
        let v = verlinde_fusion(&trivial_md(), 1e-6).unwrap();
        assert_eq!(v.tensor.get(0, 0, 0), 1);
        assert_eq!(fusion_matrices(&v.tensor)[0].matrix, vec![vec![1]]);
        let d = diagonalization_check(&trivial_md(), &v.tensor, 1e-9);
        assert_eq!(d.report.checks[0].max_residual, Some(0.0));
        let q = quantum_dimensions(&trivial_md(), 1e-9).unwrap();
        assert_eq!(q.values, vec![c(1.0, 0.0)]);
        let rec = s_from_fusion::<f64>(&v.tensor, trivial_md().labels(), 0).unwrap();
        assert_eq!(rec.candidates.len(), 1);
        assert!((rec.candidates[0][(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fibonacci_fusion_and_eigenvalues() {
        let md = fib_md();
        let v = verlinde_fusion(&md, 1e-6).unwrap();
        assert_eq!(
            (
                v.tensor.get(1, 1, 0),
                v.tensor.get(1, 1, 1),
                v.tensor.get(1, 0, 1)
            ),
            (1, 1, 1)
        );
        assert!(v.max_deviation < 1e-12);
        assert_eq!(
            fusion_matrices(&v.tensor)[1].matrix,
            vec![vec![0, 1], vec![1, 1]]
        );
        let d = diagonalization_check(&md, &v.tensor, 1e-9);
        assert!(d.report.all_passed());
        // x^2 = x + 1
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut ev: Vec<f64> = d.eigenvalues[1].iter().map(|z| z.re).collect();
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((ev[0] - phi).abs() < 1e-12 && (ev[1] - (1.0 - phi)).abs() < 1e-12);
        let q = quantum_dimensions(&md, 1e-9).unwrap();
        assert!((q.values[1].re - 1.618_033_988_7).abs() < 1e-10);
        assert!(q.unitary_like);
    }

    #[test]
    fn vacuum_column_zero_is_rejected() {
        let labels = LabelSet::self_dual(vec!["e".into(), "a".into()], 0).unwrap();
        let s = CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let md = ModularData::new(
            labels,
            vec![Rational::zero(), Rational::zero()],
            Rational::zero(),
            s,
        )
        .unwrap();
        assert!(matches!(
            verlinde_fusion(&md, 1e-6),
            Err(Error::VacuumColumnZero(_))
        ));
    }

    #[test]
    fn non_integral_and_negative() {
        let labels = LabelSet::self_dual(vec!["e".into(), "a".into()], 0).unwrap();
        let s = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.3, -0.9]]).unwrap();
        let md = ModularData::new(
            labels.clone(),
            vec![Rational::zero(); 2],
            Rational::zero(),
            s,
        )
        .unwrap();
        assert!(matches!(
            verlinde_fusion(&md, 1e-6),
            Err(Error::NonIntegral(..))
        ));
        // S = [[1,1],[1,-1]] (unnormalised): N_{aa}^{a} = 0 but N_{ee}^{e} = 2 etc; scaling by -1/sqrt2
        // in the vacuum row only produces negative integers.
        let r = 1.0 / 2f64.sqrt();
        let s = CMatrix::from_real_rows(&[vec![r, r], vec![-r, r]]).unwrap();
        let md = ModularData::new(labels, vec![Rational::zero(); 2], Rational::zero(), s).unwrap();
        let res = verlinde_fusion(&md, 1e-6);
        assert!(matches!(res, Err(Error::Negative(..))), "{res:?}");
    }

    #[test]
    fn non_commuting_matrices_are_rejected() {
        let labels = LabelSet::self_dual(vec!["e".into(), "a".into(), "b".into()], 0).unwrap();
        let n = FusionTensor::from_fn(3, |a, b, c| match (a, b, c) {
            (0, x, y) | (x, 0, y) if x == y => 1,
            (1, 1, 2) | (1, 2, 1) | (2, 1, 1) | (2, 2, 2) => 1,
            (2, 1, 0) => 1,
            _ => 0,
        });
        assert!(matches!(
            s_from_fusion::<f64>(&n, &labels, 0),
            Err(Error::NonCommutingFusionMatrices(..))
        ));
    }
}
