//! Finite data of a rational theory: labels with duality, conformal weights,
//! central charge, the S-matrix and the fusion tensor.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::{exp_2pi_i, to_f64, Rational, Real, C};

/// Default absolute tolerance on residuals.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Ordered label set with a vacuum and a dual involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSet {
    names: Vec<String>,
    vacuum: usize,
    dual: Vec<usize>,
    index: HashMap<String, usize>,
}

impl LabelSet {
    pub fn new(names: Vec<String>, vacuum: usize, dual: Vec<usize>) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(name.clone()));
            }
        }
        let n = names.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("label set is empty".into()));
        }
        if vacuum >= n {
            return Err(Error::DimensionMismatch(format!(
                "vacuum index {vacuum} out of range for {n} labels"
            )));
        }
        if dual.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "dual map has {} entries for {n} labels",
                dual.len()
            )));
        }
        for (a, &b) in dual.iter().enumerate() {
            if b >= n {
                return Err(Error::DimensionMismatch(format!(
                    "dual of '{}' out of range",
                    names[a]
                )));
            }
            if dual[b] != a {
                return Err(Error::DualNotInvolution(format!(
                    "'{}' -> '{}' -> '{}'",
                    names[a], names[b], names[dual[b]]
                )));
            }
        }
        if dual[vacuum] != vacuum {
            return Err(Error::DualNotInvolution(format!(
                "vacuum '{}' is not self-dual",
                names[vacuum]
            )));
        }
        Ok(Self {
            names,
            vacuum,
            dual,
            index,
        })
    }

    /// All labels self-dual.
    pub fn self_dual(names: Vec<String>, vacuum: usize) -> Result<Self> {
        let n = names.len();
        Self::new(names, vacuum, (0..n).collect())
    }

    /// Builds from names, with `dual` given as name pairs.
    pub fn from_names(
        names: Vec<String>,
        vacuum: &str,
        dual: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let lookup = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::UnknownLabel(s.to_string()))
        };
        let vac = lookup(vacuum)?;
        let mut d = vec![usize::MAX; names.len()];
        for (a, b) in dual {
            d[lookup(a)?] = lookup(b)?;
        }
        if let Some(missing) = d.iter().position(|&x| x == usize::MAX) {
            return Err(Error::DimensionMismatch(format!(
                "dual of '{}' not given",
                names[missing]
            )));
        }
        Self::new(names, vac, d)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vacuum(&self) -> usize {
        self.vacuum
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn dual_map(&self) -> &[usize] {
        &self.dual
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn fmt_tuple(&self, idx: &[usize]) -> String {
        idx.iter()
            .map(|&i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Labels, weights, central charge and S-matrix, validated on construction.
///
/// S is required to be invertible but neither symmetric nor unitary: those
/// are properties to be checked, and a wrong S must still be loadable.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularData<T> {
    labels: LabelSet,
    weights: Vec<Rational>,
    central_charge: Rational,
    s: CMatrix<T>,
}

impl<T: Real> ModularData<T> {
    pub fn new(
        labels: LabelSet,
        weights: Vec<Rational>,
        central_charge: Rational,
        s: CMatrix<T>,
    ) -> Result<Self> {
        Self::with_tolerance(labels, weights, central_charge, s, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(
        labels: LabelSet,
        weights: Vec<Rational>,
        central_charge: Rational,
        s: CMatrix<T>,
        tolerance: f64,
    ) -> Result<Self> {
        let n = labels.len();
        if weights.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {n} labels",
                weights.len()
            )));
        }
        if s.rows() != n || s.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "S is {}x{} for {n} labels",
                s.rows(),
                s.cols()
            )));
        }
        let h_vac = weights[labels.vacuum()];
        if !h_vac.is_zero() {
            return Err(Error::VacuumWeightNonzero(h_vac.to_string()));
        }
        let det = to_f64(s.determinant().norm());
        if !(det > tolerance) {
            return Err(Error::SingularS(det));
        }
        Ok(Self {
            labels,
            weights,
            central_charge,
            s,
        })
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, a: usize) -> Rational {
        self.weights[a]
    }

    pub fn central_charge(&self) -> Rational {
        self.central_charge
    }

    pub fn s(&self) -> &CMatrix<T> {
        &self.s
    }

    /// Same data with a replaced S-matrix (revalidated).
    pub fn with_s(&self, s: CMatrix<T>) -> Result<Self> {
        Self::new(
            self.labels.clone(),
            self.weights.clone(),
            self.central_charge,
            s,
        )
    }

    /// `S^{-1}`; exists by construction.
    pub fn s_inverse(&self) -> CMatrix<T> {
        self.s
            .inverse()
            .expect("S checked invertible at construction")
    }

    pub fn twist(&self) -> Twist<T> {
        Twist {
            theta: self.weights.iter().map(exp_2pi_i).collect(),
        }
    }
}

/// Ribbon twist `theta_a = exp(2 pi i h_a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Twist<T> {
    theta: Vec<C<T>>,
}

impl<T: Real> Twist<T> {
    pub fn values(&self) -> &[C<T>] {
        &self.theta
    }

    /// Checks `theta_e = 1` and `theta_a = theta_{a'}`, returning the largest
    /// deviation with its label.
    pub fn dual_deviation(&self, labels: &LabelSet) -> (T, Option<usize>) {
        let mut worst = (
            (self.theta[labels.vacuum()] - C::one()).norm(),
            Some(labels.vacuum()),
        );
        for a in 0..labels.len() {
            let d = (self.theta[a] - self.theta[labels.dual(a)]).norm();
            if d > worst.0 {
                worst = (d, Some(a));
            }
        }
        if worst.0 == T::zero() {
            worst.1 = None;
        }
        worst
    }
}

/// Nonnegative integer structure constants `N_{a1 a2}^{a3}`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FusionTensor {
    rank: usize,
    data: Vec<u32>,
}

impl FusionTensor {
    pub fn zeros(rank: usize) -> Self {
        Self {
            rank,
            data: vec![0; rank * rank * rank],
        }
    }

    pub fn from_fn(rank: usize, mut f: impl FnMut(usize, usize, usize) -> u32) -> Self {
        let mut t = Self::zeros(rank);
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    t.set(a, b, c, f(a, b, c));
                }
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, a1: usize, a2: usize, a3: usize) -> u32 {
        self.data[(a1 * self.rank + a2) * self.rank + a3]
    }

    pub fn set(&mut self, a1: usize, a2: usize, a3: usize, v: u32) {
        let r = self.rank;
        self.data[(a1 * r + a2) * r + a3] = v;
    }

    pub fn max_entry(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.max_entry() <= 1
    }

    /// Nonzero entries in lexicographic index order.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize, usize), u32)> + '_ {
        let r = self.rank;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(i, &v)| ((i / (r * r), (i / r) % r, i % r), v))
    }

    /// Fusion-ring axioms relative to a label set: unit, commutativity and
    /// `N_{a b}^{e} = delta_{b, a'}`. Returns every violation found.
    pub fn axiom_violations(&self, labels: &LabelSet) -> Vec<String> {
        let n = self.rank;
        let e = labels.vacuum();
        let mut out = Vec::new();
        if n != labels.len() {
            out.push(format!("rank {n} differs from {} labels", labels.len()));
            return out;
        }
        for a in 0..n {
            for b in 0..n {
                let delta = u32::from(a == b);
                if self.get(e, a, b) != delta {
                    out.push(format!(
                        "unit: N_{{e,{}}}^{{{}}} = {}",
                        labels.name(a),
                        labels.name(b),
                        self.get(e, a, b)
                    ));
                }
                if self.get(a, e, b) != delta {
                    out.push(format!(
                        "unit: N_{{{},e}}^{{{}}} = {}",
                        labels.name(a),
                        labels.name(b),
                        self.get(a, e, b)
                    ));
                }
                let dual = u32::from(b == labels.dual(a));
                if self.get(a, b, e) != dual {
                    out.push(format!(
                        "dual: N_{{{},{}}}^{{e}} = {}",
                        labels.name(a),
                        labels.name(b),
                        self.get(a, b, e)
                    ));
                }
                for c in 0..n {
                    if self.get(a, b, c) != self.get(b, a, c) {
                        out.push(format!("commutativity: {}", labels.fmt_tuple(&[a, b, c])));
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self, labels: &LabelSet) -> Result<()> {
        match self.axiom_violations(labels).into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidFusionTensor(v)),
        }
    }

    /// Associativity of the fusion product: sum_x N_{ab}^x N_{xc}^d = sum_y N_{bc}^y N_{ay}^d.
    pub fn is_associative(&self) -> bool {
        let n = self.rank;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let l: u32 = (0..n).map(|x| self.get(a, b, x) * self.get(x, c, d)).sum();
                        let r: u32 = (0..n).map(|y| self.get(b, c, y) * self.get(a, y, d)).sum();
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Charge conjugation `C[a][b] = delta_{b, a'}` with the least-squares fit of
/// `S^2` against `lambda C`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeConjugation<T> {
    pub permutation: Vec<Vec<u32>>,
    pub lambda: C<T>,
    pub residual: T,
}

pub fn charge_conjugation<T: Real>(md: &ModularData<T>) -> ChargeConjugation<T> {
    let n = md.rank();
    let labels = md.labels();
    let permutation: Vec<Vec<u32>> = (0..n)
        .map(|a| (0..n).map(|b| u32::from(b == labels.dual(a))).collect())
        .collect();
    let s2 = md.s().matmul(md.s());
    // argmin_lambda ||S^2 - lambda C||_F: lambda = <C, S^2> / <C, C>.
    let lambda = (0..n).fold(C::zero(), |acc, a| acc + s2[(a, labels.dual(a))]) / T::lit(n as f64);
    let c = CMatrix::from_fn(n, n, |a, b| {
        if b == labels.dual(a) {
            lambda
        } else {
            C::zero()
        }
    });
    let residual = s2.max_abs_diff(&c).0;
    ChargeConjugation {
        permutation,
        lambda,
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn fib_s() -> CMatrix<f64> {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let k = 1.0 / (2.0 + phi).sqrt();
        CMatrix::from_real_rows(&[vec![k, k * phi], vec![k * phi, -k]]).unwrap()
    }

    #[test]
    fn trivial_theory_is_valid() {
        let labels = LabelSet::self_dual(names(&["e"]), 0).unwrap();
        let md = ModularData::new(
            labels,
            vec![Rational::zero()],
            Rational::zero(),
            CMatrix::<f64>::identity(1),
        )
        .unwrap();
        let cc = charge_conjugation(&md);
        assert_eq!(cc.permutation, vec![vec![1]]);
        assert_eq!(cc.lambda, c(1.0, 0.0));
        assert_eq!(cc.residual, 0.0);
    }

    #[test]
    fn fibonacci_is_valid_and_self_conjugate() {
        let labels = LabelSet::self_dual(names(&["1", "tau"]), 0).unwrap();
        let md = ModularData::new(
            labels,
            vec![Rational::zero(), Rational::new(2, 5)],
            Rational::new(14, 5),
            fib_s(),
        )
        .unwrap();
        let cc = charge_conjugation(&md);
        assert_eq!(cc.permutation, vec![vec![1, 0], vec![0, 1]]);
        assert!(cc.residual < 1e-12);
        let tw = md.twist();
        assert!(tw.values().iter().all(|t| (t.norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn dual_must_be_involution() {
        // dual(a) = e but dual(e) = e.
        let err = LabelSet::new(names(&["e", "a"]), 0, vec![0, 0]).unwrap_err();
        assert!(matches!(err, Error::DualNotInvolution(_)));
        let err = LabelSet::new(names(&["e", "a", "b"]), 0, vec![1, 0, 2]).unwrap_err();
        assert!(matches!(err, Error::DualNotInvolution(_)));
    }

    #[test]
    fn constructor_errors() {
        let labels = LabelSet::self_dual(names(&["e", "a"]), 0).unwrap();
        let s = CMatrix::<f64>::identity(2);
        assert!(matches!(
            ModularData::new(
                labels.clone(),
                vec![Rational::zero()],
                Rational::zero(),
                s.clone()
            ),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            ModularData::new(
                labels.clone(),
                vec![Rational::new(1, 2), Rational::zero()],
                Rational::zero(),
                s
            ),
            Err(Error::VacuumWeightNonzero(_))
        ));
        let degenerate = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(
            ModularData::new(
                labels,
                vec![Rational::zero(), Rational::new(1, 2)],
                Rational::zero(),
                degenerate
            ),
            Err(Error::SingularS(_))
        ));
        assert!(matches!(
            LabelSet::self_dual(names(&["e", "e"]), 0),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn asymmetric_s_is_accepted() {
        let labels = LabelSet::self_dual(names(&["e", "a"]), 0).unwrap();
        let s = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(ModularData::new(
            labels,
            vec![Rational::zero(), Rational::zero()],
            Rational::zero(),
            s
        )
        .is_ok());
    }

    #[test]
    fn fusion_axioms_detect_violations() {
        let labels = LabelSet::self_dual(names(&["1", "tau"]), 0).unwrap();
        let mut n = FusionTensor::from_fn(2, |a, b, c| match (a, b, c) {
            (0, x, y) | (x, 0, y) if x == y => 1,
            (1, 1, _) => 1,
            _ => 0,
        });
        assert!(n.validate(&labels).is_ok());
        assert!(n.is_associative());
        n.set(1, 1, 0, 2);
        assert!(n.validate(&labels).is_err());
    }
}
