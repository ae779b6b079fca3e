//! Fusing and braiding matrix elements for multiplicity-free data, the S3
//! phases `sigma12`/`sigma23`, and the scalar identities built from them.
//!
//! Key layout and all derived quantities follow `docs/conventions.md`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::modular_data::{FusionTensor, LabelSet, ModularData};
use crate::report::{CheckResult, Severity, VerificationReport, Worst};
use crate::scalar::{exp_i_pi, to_f64, Rational, Real, C};

pub type Key6 = [usize; 6];
pub type Key3 = [usize; 3];

/// Raw entries as they appear in a document, keyed by label index.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FbEntries<T> {
    pub f: BTreeMap<Key6, C<T>>,
    /// Keyed by `(r, key)`; only `r = 0` and `r = -1` are accepted.
    pub b: BTreeMap<(i32, Key6), C<T>>,
    pub b2: BTreeMap<Key6, C<T>>,
    pub sigma12: BTreeMap<Key3, C<T>>,
    pub sigma23: BTreeMap<Key3, C<T>>,
}

/// Validated fusing/braiding data tied to a label set and fusion tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct FbData<T> {
    labels: LabelSet,
    fusion: FusionTensor,
    weights: Vec<Rational>,
    entries: FbEntries<T>,
    f_dense: Vec<C<T>>,
}

impl<T: Real> FbData<T> {
    /// Checks multiplicity-freeness and the admissibility of every key.
    pub fn new<S: Real>(
        md: &ModularData<S>,
        fusion: &FusionTensor,
        entries: FbEntries<T>,
    ) -> Result<Self> {
        let labels = md.labels();
        let n = labels.len();
        if fusion.rank() != n {
            return Err(Error::DimensionMismatch(format!(
                "fusion rank {} vs {n} labels",
                fusion.rank()
            )));
        }
        if let Some(((a, b, c), v)) = fusion.nonzero().find(|&(_, v)| v > 1) {
            return Err(Error::NotMultiplicityFree(labels.fmt_tuple(&[a, b, c]), v));
        }
        let adm =
            |a: usize, b: usize, c: usize| a < n && b < n && c < n && fusion.get(a, b, c) == 1;
        let bad = |kind: &str, key: &[usize]| {
            let names: Vec<String> = key
                .iter()
                .map(|&i| {
                    if i < n {
                        labels.name(i).to_string()
                    } else {
                        format!("#{i}")
                    }
                })
                .collect();
            Error::InadmissibleEntry(format!("{kind}[{}]", names.join(",")))
        };
        for k in entries.f.keys() {
            let [a1, a2, a3, a4, a5, a6] = *k;
            if !(adm(a1, a5, a4) && adm(a2, a3, a5) && adm(a6, a3, a4) && adm(a1, a2, a6)) {
                return Err(bad("F", k));
            }
        }
        for (r, k) in entries.b.keys() {
            if *r != 0 && *r != -1 {
                return Err(Error::Parse(format!(
                    "braiding index r = {r} not supported (use 0 or -1)"
                )));
            }
            let [a1, a2, a3, a4, a5, a6] = *k;
            if !(adm(a1, a5, a4) && adm(a2, a3, a5) && adm(a2, a6, a4) && adm(a1, a3, a6)) {
                return Err(bad("B", k));
            }
        }
        for k in entries.b2.keys() {
            let [a1, a2, a3, a4, a5, b5] = *k;
            if !(adm(a1, a5, a4) && adm(a2, a3, a5) && adm(a1, b5, a4) && adm(a2, a3, b5)) {
                return Err(bad("B2", k));
            }
        }
        for (kind, map) in [("sigma12", &entries.sigma12), ("sigma23", &entries.sigma23)] {
            for k in map.keys() {
                if !adm(k[0], k[1], k[2]) {
                    return Err(bad(kind, k));
                }
            }
        }
        let mut f_dense = vec![C::zero(); n.pow(6)];
        for (k, v) in &entries.f {
            f_dense[idx6(n, k)] = *v;
        }
        Ok(Self {
            labels: labels.clone(),
            fusion: fusion.clone(),
            weights: md.weights().to_vec(),
            entries,
            f_dense,
        })
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn fusion(&self) -> &FusionTensor {
        &self.fusion
    }

    pub fn entries(&self) -> &FbEntries<T> {
        &self.entries
    }

    /// `Δ(a1,a2,a3) = h_{a3} - h_{a1} - h_{a2}`.
    pub fn delta(&self, a1: usize, a2: usize, a3: usize) -> Rational {
        self.weights[a3] - self.weights[a1] - self.weights[a2]
    }

    /// F entry, zero when absent.
    #[inline]
    pub fn f(&self, k: Key6) -> C<T> {
        self.f_dense[idx6(self.labels.len(), &k)]
    }

    pub fn f_required(&self, k: Key6) -> Result<C<T>> {
        self.entries
            .f
            .get(&k)
            .copied()
            .ok_or_else(|| self.missing("F", &k))
    }

    pub fn b(&self, r: i32, k: Key6) -> C<T> {
        self.entries.b.get(&(r, k)).copied().unwrap_or_else(C::zero)
    }

    pub fn b2(&self, k: Key6) -> Option<C<T>> {
        self.entries.b2.get(&k).copied()
    }

    pub fn sigma12(&self, k: Key3) -> Result<C<T>> {
        self.entries
            .sigma12
            .get(&k)
            .copied()
            .ok_or_else(|| self.missing("sigma12", &k))
    }

    pub fn sigma23(&self, k: Key3) -> Result<C<T>> {
        self.entries
            .sigma23
            .get(&k)
            .copied()
            .ok_or_else(|| self.missing("sigma23", &k))
    }

    fn missing(&self, kind: &str, k: &[usize]) -> Error {
        Error::MissingEntry(format!("{kind}[{}]", self.labels.fmt_tuple(k)))
    }

    fn adm(&self, a: usize, b: usize, c: usize) -> bool {
        self.fusion.get(a, b, c) == 1
    }

    fn names(&self, k: &[usize]) -> Vec<String> {
        k.iter().map(|&i| self.labels.name(i).to_string()).collect()
    }

    /// `R^{a b}_c = e^{iπΔ(b,a,c)} / sigma12(b,a,c)`, zero off the support.
    pub fn r_symbol(&self, a: usize, b: usize, c: usize) -> Result<C<T>> {
        if !self.adm(a, b, c) {
            return Ok(C::zero());
        }
        let s = self.sigma12([b, a, c])?;
        Ok(exp_i_pi::<T>(&self.delta(b, a, c)) / s)
    }

    fn r_inverse(&self, a: usize, b: usize, c: usize) -> Result<C<T>> {
        if !self.adm(a, b, c) {
            return Ok(C::zero());
        }
        Ok(self.r_symbol(a, b, c)?.inv())
    }

    /// Standard F-moves, one block per `(a1,a2,a3,a4)`.
    pub fn standard_f(&self) -> Result<StandardF<T>> {
        let n = self.labels.len();
        let mut blocks = HashMap::new();
        for a1 in 0..n {
            for a2 in 0..n {
                for a3 in 0..n {
                    for a4 in 0..n {
                        let right: Vec<usize> = (0..n)
                            .filter(|&y| self.adm(a2, a3, y) && self.adm(a1, y, a4))
                            .collect();
                        let left: Vec<usize> = (0..n)
                            .filter(|&x| self.adm(a1, a2, x) && self.adm(x, a3, a4))
                            .collect();
                        if right.is_empty() && left.is_empty() {
                            continue;
                        }
                        let key = [a1, a2, a3, a4];
                        if right.len() != left.len() {
                            return Err(Error::InvalidFusionTensor(format!(
                                "associativity block ({}) is not square",
                                self.labels.fmt_tuple(&key)
                            )));
                        }
                        let g = CMatrix::from_fn(right.len(), left.len(), |i, j| {
                            self.f([a1, a2, a3, a4, right[i], left[j]])
                        });
                        let inv = g.inverse().ok_or_else(|| {
                            Error::MissingEntry(format!(
                                "F block ({}) is singular",
                                self.labels.fmt_tuple(&key)
                            ))
                        })?;
                        blocks.insert(
                            key,
                            FBlock {
                                left,
                                right,
                                f: inv,
                            },
                        );
                    }
                }
            }
        }
        Ok(StandardF { blocks })
    }
}

#[inline]
fn idx6(n: usize, k: &Key6) -> usize {
    k.iter().fold(0, |acc, &i| acc * n + i)
}

#[derive(Debug, Clone)]
struct FBlock<T> {
    /// `(a1 a2)_x` channels (rows of the standard move).
    left: Vec<usize>,
    /// `(a2 a3)_y` channels (columns).
    right: Vec<usize>,
    f: CMatrix<T>,
}

/// Inverse of the stored F, i.e. the standard move `(ab)_x c -> a(bc)_y`.
#[derive(Debug, Clone)]
pub struct StandardF<T> {
    blocks: HashMap<[usize; 4], FBlock<T>>,
}

impl<T: Real> StandardF<T> {
    /// `[F^{abc}_d]_{x,y}`; zero off the support.
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize, x: usize, y: usize) -> C<T> {
        let Some(block) = self.blocks.get(&[a, b, c, d]) else {
            return C::zero();
        };
        match (
            block.left.iter().position(|&v| v == x),
            block.right.iter().position(|&v| v == y),
        ) {
            (Some(i), Some(j)) => block.f[(i, j)],
            _ => C::zero(),
        }
    }
}

/// `F(Y_{ae}^a ⊗ Y_{a'a}^e ; Y_{ea}^a ⊗ Y_{aa'}^e)`, the entry `[a, a', a, a, e, e]`.
pub fn rigidity_scalar<T: Real>(fb: &FbData<T>, a: usize) -> Result<C<T>> {
    let labels = fb.labels();
    let e = labels.vacuum();
    fb.f_required([a, labels.dual(a), a, a, e, e])
}

/// Nonvanishing of every rigidity scalar. The residual is `1 / min |rig(a)|`
/// against `1 / threshold`.
pub fn rigidity_check<T: Real>(fb: &FbData<T>, threshold: f64) -> Result<(CheckResult, Vec<C<T>>)> {
    let n = fb.labels().len();
    let values: Vec<C<T>> = (0..n)
        .map(|a| rigidity_scalar(fb, a))
        .collect::<Result<_>>()?;
    let (min, arg) = values
        .iter()
        .enumerate()
        .map(|(a, v)| (to_f64(v.norm()), a))
        .fold((f64::INFINITY, 0), |m, x| if x.0 < m.0 { x } else { m });
    let check =
        CheckResult::from_residual("rigidity", Severity::Mandatory, 1.0 / min, 1.0 / threshold)
            .with_witness(Some(vec![fb.labels().name(arg).to_string()]))
            .with_count(n as u64);
    Ok((check, values))
}

fn require_multiplicity_free(n: &FusionTensor, labels: &LabelSet) -> Result<()> {
    match n.nonzero().find(|&(_, v)| v > 1) {
        Some(((a, b, c), v)) => Err(Error::NotMultiplicityFree(labels.fmt_tuple(&[a, b, c]), v)),
        None => Ok(()),
    }
}

/// Pentagon identity for the stored F over every tuple whose source
/// `a(b(cd)_l)_k` and target `((ab)_f c)_g d` are admissible in total `e`.
pub fn pentagon_check<T: Real>(
    fb: &FbData<T>,
    n: &FusionTensor,
    tolerance: f64,
) -> Result<CheckResult> {
    require_multiplicity_free(n, fb.labels())?;
    let r = fb.labels().len();
    let adm = |a, b, c| n.get(a, b, c) == 1;
    let mut worst = Worst::default();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    for l in (0..r).filter(|&l| adm(c, d, l)) {
                        for k in (0..r).filter(|&k| adm(b, l, k)) {
                            for e in (0..r).filter(|&e| adm(a, k, e)) {
                                for f in (0..r).filter(|&f| adm(a, b, f)) {
                                    for g in (0..r).filter(|&g| adm(f, c, g) && adm(g, d, e)) {
                                        let lhs =
                                            fb.f([a, b, l, e, k, f]) * fb.f([f, c, d, e, l, g]);
                                        let rhs = (0..r).fold(C::zero(), |s, h| {
                                            s + fb.f([b, c, d, k, l, h])
                                                * fb.f([a, h, d, e, k, g])
                                                * fb.f([a, b, c, g, h, f])
                                        });
                                        worst.observe(to_f64((lhs - rhs).norm()), || {
                                            fb.names(&[a, b, c, d, e, f, g, k, l])
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(worst.into_check("pentagon", Severity::Mandatory, tolerance))
}

/// F-moves and R-symbols assembled once for the braiding formulas.
struct BraidModel<T> {
    r: usize,
    sf: StandardF<T>,
    rr: Vec<C<T>>,
    ri: Vec<C<T>>,
}

impl<T: Real> BraidModel<T> {
    fn new(fb: &FbData<T>) -> Result<Self> {
        let r = fb.labels().len();
        let mut rr = vec![C::zero(); r * r * r];
        let mut ri = vec![C::zero(); r * r * r];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    rr[(a * r + b) * r + c] = fb.r_symbol(a, b, c)?;
                    ri[(a * r + b) * r + c] = fb.r_inverse(a, b, c)?;
                }
            }
        }
        Ok(Self {
            r,
            sf: fb.standard_f()?,
            rr,
            ri,
        })
    }

    fn r(&self, a: usize, b: usize, c: usize) -> C<T> {
        self.rr[(a * self.r + b) * self.r + c]
    }

    fn r_inv(&self, a: usize, b: usize, c: usize) -> C<T> {
        self.ri[(a * self.r + b) * self.r + c]
    }

    /// `B^{(-1)} = F · R^{a1a2} · F^{-1}`; `B^{(0)}` uses `1 / R^{a2a1}`.
    fn b(&self, fb: &FbData<T>, r: i32, [a1, a2, a3, a4, a5, a6]: Key6) -> C<T> {
        (0..self.r).fold(C::zero(), |s, x| {
            let phase = if r == -1 {
                self.r(a1, a2, x)
            } else {
                self.r_inv(a2, a1, x)
            };
            s + fb.f([a1, a2, a3, a4, a5, x]) * phase * self.sf.get(a2, a1, a3, a4, x, a6)
        })
    }
}

/// `B^{(0)}`, `B^{(-1)}` and `B2` on every admissible key, computed from the
/// stored F and the R-symbols carried by `sigma12`.
#[allow(clippy::type_complexity)]
pub fn derived_braiding<T: Real>(
    fb: &FbData<T>,
) -> Result<(BTreeMap<(i32, Key6), C<T>>, BTreeMap<Key6, C<T>>)> {
    let model = BraidModel::new(fb)?;
    let r = fb.labels().len();
    let adm = |a, b, c| fb.adm(a, b, c);
    let mut b = BTreeMap::new();
    let mut b2 = BTreeMap::new();
    for a1 in 0..r {
        for a2 in 0..r {
            for a3 in 0..r {
                for a4 in 0..r {
                    for a5 in (0..r).filter(|&x| adm(a1, x, a4) && adm(a2, a3, x)) {
                        for a6 in (0..r).filter(|&x| adm(a2, x, a4) && adm(a1, a3, x)) {
                            for rr in [0, -1] {
                                let k = [a1, a2, a3, a4, a5, a6];
                                b.insert((rr, k), model.b(fb, rr, k));
                            }
                        }
                        for b5 in (0..r).filter(|&x| adm(a1, x, a4) && adm(a2, a3, x)) {
                            let v = (0..r).fold(C::zero(), |s, a6| {
                                s + model.b(fb, -1, [a1, a2, a3, a4, a5, a6])
                                    * model.b(fb, -1, [a2, a1, a3, a4, a6, b5])
                            });
                            b2.insert([a1, a2, a3, a4, a5, b5], v);
                        }
                    }
                }
            }
        }
    }
    Ok((b, b2))
}

/// Hexagon identities, the ribbon relation, and consistency of the stored
/// `B^{(0)}`, `B^{(-1)}`, `B2` with F and the R-symbols carried by `sigma12`.
pub fn hexagon_check<T: Real>(
    fb: &FbData<T>,
    md: &ModularData<T>,
    n: &FusionTensor,
    tolerance: f64,
) -> Result<VerificationReport> {
    require_multiplicity_free(n, fb.labels())?;
    let r = fb.labels().len();
    let adm = |a, b, c| n.get(a, b, c) == 1;
    let model = BraidModel::new(fb)?;
    let sf = &model.sf;
    let rs = |a, b, c| model.r(a, b, c);
    let rinv = |a, b, c| model.r_inv(a, b, c);

    let mut hex = Worst::default();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    for e in (0..r).filter(|&e| adm(a, c, e) && adm(e, b, d)) {
                        for g in (0..r).filter(|&g| adm(c, b, g) && adm(a, g, d)) {
                            let lhs = rs(c, a, e) * sf.get(a, c, b, d, e, g) * rs(c, b, g);
                            let rhs = (0..r).fold(C::zero(), |s, f| {
                                s + sf.get(c, a, b, d, e, f)
                                    * rs(c, f, d)
                                    * sf.get(a, b, c, d, f, g)
                            });
                            let lhs_inv = rinv(a, c, e) * sf.get(a, c, b, d, e, g) * rinv(b, c, g);
                            let rhs_inv = (0..r).fold(C::zero(), |s, f| {
                                s + sf.get(c, a, b, d, e, f)
                                    * rinv(f, c, d)
                                    * sf.get(a, b, c, d, f, g)
                            });
                            let res =
                                to_f64((lhs - rhs).norm()).max(to_f64((lhs_inv - rhs_inv).norm()));
                            hex.observe(res, || fb.names(&[a, b, c, d, e, g]));
                        }
                    }
                }
            }
        }
    }
    let theta = md.twist();
    let th = theta.values();
    for a in 0..r {
        for b in 0..r {
            for c in (0..r).filter(|&c| adm(a, b, c)) {
                let res = (rs(a, b, c) * rs(b, a, c) - th[c] / (th[a] * th[b])).norm();
                hex.observe(to_f64(res), || {
                    let mut w = fb.names(&[a, b, c]);
                    w.insert(0, "ribbon".into());
                    w
                });
            }
        }
    }
    let mut report = VerificationReport::new();
    report.push(hex.into_check("hexagon", Severity::Mandatory, tolerance));

    let b_model = |rr_: i32, k: Key6| model.b(fb, rr_, k);
    let mut braid = Worst::default();
    let has_b = !fb.entries().b.is_empty();
    let has_b2 = !fb.entries().b2.is_empty();
    if has_b || has_b2 {
        for a1 in 0..r {
            for a2 in 0..r {
                for a3 in 0..r {
                    for a4 in 0..r {
                        for a5 in (0..r).filter(|&x| adm(a1, x, a4) && adm(a2, a3, x)) {
                            if has_b {
                                for a6 in (0..r).filter(|&x| adm(a2, x, a4) && adm(a1, a3, x)) {
                                    for rr_ in [0, -1] {
                                        let k = [a1, a2, a3, a4, a5, a6];
                                        let res = (fb.b(rr_, k) - b_model(rr_, k)).norm();
                                        braid.observe(to_f64(res), || {
                                            let mut w = fb.names(&k);
                                            w.insert(0, format!("B{rr_}"));
                                            w
                                        });
                                    }
                                }
                            }
                            for b5 in (0..r).filter(|&x| adm(a1, x, a4) && adm(a2, a3, x)) {
                                let k = [a1, a2, a3, a4, a5, b5];
                                // B2 = B^{(-1)} ∘ B^{(-1)}; B^{(0)} ∘ B^{(-1)} = id.
                                let square = (0..r).fold(C::zero(), |s, a6| {
                                    s + b_model(-1, [a1, a2, a3, a4, a5, a6])
                                        * b_model(-1, [a2, a1, a3, a4, a6, b5])
                                });
                                if has_b2 {
                                    let stored = fb.b2(k).unwrap_or_else(C::zero);
                                    braid.observe(to_f64((stored - square).norm()), || {
                                        let mut w = fb.names(&k);
                                        w.insert(0, "B2".into());
                                        w
                                    });
                                }
                                let round_trip: C<T> = (0..r).fold(C::zero(), |s, a6| {
                                    s + b_model(-1, [a1, a2, a3, a4, a5, a6])
                                        * b_model(0, [a2, a1, a3, a4, a6, b5])
                                });
                                let id: C<T> = if a5 == b5 { C::one() } else { C::zero() };
                                braid.observe(to_f64((round_trip - id).norm()), || {
                                    let mut w = fb.names(&k);
                                    w.insert(0, "B0B-1".into());
                                    w
                                });
                            }
                        }
                    }
                }
            }
        }
        report.push(braid.into_check("braiding_consistency", Severity::Mandatory, tolerance));
    }
    Ok(report)
}

/// The S3 action generated by `sigma12` and `sigma23`: both are involutions,
/// they satisfy the braid relation, and the distinguished bases are related
/// as `Y_{ae}^a = σ12(Y_{ea}^a)`, `Y_{aa'}^e = σ23(Y_{ae}^a)`, `Y_{a'a}^e = σ12(Y_{aa'}^e)`.
pub fn sigma_action_check<T: Real>(fb: &FbData<T>, tolerance: f64) -> Result<CheckResult> {
    let labels = fb.labels();
    let r = labels.len();
    let e = labels.vacuum();
    let d = |x: usize| labels.dual(x);
    let mut worst = Worst::default();
    let one = C::<T>::one();
    for a in 0..r {
        let norms = [
            ("sigma12(e,a,a)", fb.sigma12([e, a, a])?),
            ("sigma23(a,e,a)", fb.sigma23([a, e, a])?),
            ("sigma12(a,a',e)", fb.sigma12([a, d(a), e])?),
        ];
        for (what, v) in norms {
            worst.observe(to_f64((v - one).norm()), || {
                vec![what.into(), labels.name(a).into()]
            });
        }
    }
    for x in 0..r {
        for y in 0..r {
            for z in (0..r).filter(|&z| fb.adm(x, y, z)) {
                let s12 = fb.sigma12([x, y, z])?;
                let s23 = fb.sigma23([x, y, z])?;
                let inv12 = s12 * fb.sigma12([y, x, z])? - one;
                let inv23 = s23 * fb.sigma23([x, d(z), d(y)])? - one;
                let lhs = s12 * fb.sigma23([y, x, z])? * fb.sigma12([y, d(z), d(x)])?;
                let rhs = s23 * fb.sigma12([x, d(z), d(y)])? * fb.sigma23([d(z), x, d(y)])?;
                let res = inv12.norm().max(inv23.norm()).max((lhs - rhs).norm());
                worst.observe(to_f64(res), || fb.names(&[x, y, z]));
            }
        }
    }
    Ok(worst.into_check("sigma_action", Severity::Mandatory, tolerance))
}

/// First Moore–Seiberg formula in the multiplicity-free case, for every
/// triple `(a1,a2,a3)`.
pub fn ms_identity_check<T: Real>(
    fb: &FbData<T>,
    n: &FusionTensor,
    tolerance: f64,
) -> Result<CheckResult> {
    require_multiplicity_free(n, fb.labels())?;
    let labels = fb.labels();
    let r = labels.len();
    let e = labels.vacuum();
    let d = |x: usize| labels.dual(x);
    let mut worst = Worst::default();
    let mut admissible = 0u64;
    for a1 in 0..r {
        for a2 in 0..r {
            for a3 in 0..r {
                let lhs = if n.get(a1, a2, a3) == 1 && n.get(d(a1), a3, a2) == 1 {
                    admissible += 1;
                    let first = fb.f_required([a2, d(a3), a3, a2, e, d(a1)])?;
                    let second = fb.f_required([d(a1), a1, a2, a2, a3, e])?;
                    // σ123 = σ12 ∘ σ23 on Y_{a2 a3'}^{a1'}
                    let s123 = fb.sigma23([a2, d(a3), d(a1)])? * fb.sigma12([a2, a1, a3])?;
                    first * second * s123
                } else {
                    C::zero()
                };
                let rhs = if n.get(a1, a2, a3) == 0 {
                    C::zero()
                } else {
                    rigidity_scalar(fb, a2)? * T::lit(n.get(a1, a2, a3) as f64)
                };
                worst.observe(to_f64((lhs - rhs).norm()), || fb.names(&[a1, a2, a3]));
            }
        }
    }
    Ok(worst
        .into_check("ms_identity", Severity::Mandatory, tolerance)
        .with_detail(format!("{admissible} admissible triples")))
}

/// `T_{a1,a2} = B2[a2, a1', a1, a2, e, e] / (rig(a1) rig(a2))`.
pub fn trace_matrix_from_fb<T: Real>(fb: &FbData<T>) -> Result<CMatrix<T>> {
    let labels = fb.labels();
    let r = labels.len();
    let e = labels.vacuum();
    let mut rig = Vec::with_capacity(r);
    for a in 0..r {
        let v = rigidity_scalar(fb, a)?;
        if v.norm() == T::zero() {
            return Err(Error::ZeroRigidityScalar(labels.name(a).to_string()));
        }
        rig.push(v);
    }
    let mut t = CMatrix::zeros(r, r);
    for a1 in 0..r {
        for a2 in 0..r {
            let k = [a2, labels.dual(a1), a1, a2, e, e];
            let b2 = fb.b2(k).ok_or_else(|| fb.missing("B2", &k))?;
            t[(a1, a2)] = b2 / (rig[a1] * rig[a2]);
        }
    }
    Ok(t)
}

/// `S_{a1}^{a2} = S_e^e · T_{a1,a2}` for all pairs.
pub fn s_form3_check<T: Real>(
    fb: &FbData<T>,
    md: &ModularData<T>,
    tolerance: f64,
) -> Result<CheckResult> {
    let t = trace_matrix_from_fb(fb)?;
    let s = md.s();
    let e = md.labels().vacuum();
    let labels = md.labels();
    let mut worst = Worst::default();
    for a1 in 0..md.rank() {
        for a2 in 0..md.rank() {
            let res = (s[(a1, a2)] - s[(e, e)] * t[(a1, a2)]).norm();
            worst.observe(to_f64(res), || {
                vec![labels.name(a1).into(), labels.name(a2).into()]
            });
        }
    }
    Ok(worst.into_check("s_form3", Severity::Mandatory, tolerance))
}

/// Where the braiding-trace matrix comes from.
pub enum NondegeneracyInput<'a, T> {
    /// Preferred: traces of squared braidings from FB data.
    Fb(&'a FbData<T>),
    /// Fallback: `T = S / S_e^e`.
    Bare(&'a ModularData<T>),
}

/// `|det T| > threshold`; residual is `1 / |det T|` against `1 / threshold`.
pub fn nondegeneracy_check<T: Real>(
    input: NondegeneracyInput<'_, T>,
    threshold: f64,
) -> Result<CheckResult> {
    let (t, name, path) = match input {
        NondegeneracyInput::Fb(fb) => (trace_matrix_from_fb(fb)?, "nondegeneracy_fb", "fb"),
        NondegeneracyInput::Bare(md) => {
            let e = md.labels().vacuum();
            let see = md.s()[(e, e)];
            if to_f64(see.norm()) <= crate::verlinde::VACUUM_ENTRY_FLOOR {
                return Err(Error::VacuumEntryZero);
            }
            (md.s().scale(see.inv()), "nondegeneracy_s", "s")
        }
    };
    let det = to_f64(t.determinant().norm());
    Ok(
        CheckResult::from_residual(name, Severity::Mandatory, 1.0 / det, 1.0 / threshold)
            .with_detail(format!("path={path} |det T|={det:.6e}")),
    )
}
