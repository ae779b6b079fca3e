//! Fibonacci, Ising and trivial fixtures, the exhaustive fusion-ring search,
//! and the pentagon/hexagon search producing fusing/braiding data.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::characters::CharacterSeries;
use crate::error::{Error, Result};
use crate::fb::{derived_braiding, sigma_action_check, FbData, FbEntries, Key3, Key6, StandardF};
use crate::linalg::CMatrix;
use crate::modular_data::{FusionTensor, LabelSet, ModularData};
use crate::scalar::{exp_2pi_i, exp_i_pi, Rational, C};

use super::series::{product_one_plus, to_u64};
use super::{minimal, Raw, CHARACTER_TERMS};

const SEARCH_TOLERANCE: f64 = 1e-9;
/// Pentagon solutions examined before giving up.
const MAX_F_SOLUTIONS: usize = 20_000;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub(super) fn trivial() -> Result<Raw> {
    let labels = LabelSet::self_dual(names(&["1"]), 0)?;
    let md = ModularData::new(
        labels,
        vec![Rational::zero()],
        Rational::zero(),
        CMatrix::identity(1),
    )?;
    let fusion = FusionTensor::from_fn(1, |_, _, _| 1);
    let mut coeffs = vec![0u64; CHARACTER_TERMS];
    coeffs[0] = 1;
    let characters = vec![CharacterSeries {
        label: "1".into(),
        offset: Rational::zero(),
        coeffs,
    }];
    let fb = solve_fb(&md, &fusion, 1)?;
    Ok(Raw {
        md,
        fusion,
        characters: Some(characters),
        fb: Some(fb),
    })
}

pub(super) fn fibonacci() -> Result<Raw> {
    let labels = LabelSet::self_dual(names(&["1", "tau"]), 0)?;
    let fusion = unique_ring(&labels, |n| n.get(1, 1, 1) == 1, "fibonacci")?;
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let k = 1.0 / (2.0 + phi).sqrt();
    let s = CMatrix::from_real_rows(&[vec![k, k * phi], vec![k * phi, -k]]).expect("square");
    let md = ModularData::new(
        labels,
        vec![Rational::zero(), Rational::new(2, 5)],
        Rational::new(14, 5),
        s,
    )?;
    let fb = solve_fb(&md, &fusion, 2)?;
    Ok(Raw {
        md,
        fusion,
        characters: None,
        fb: Some(fb),
    })
}

/// Ising in the order `[1, psi, sigma]`: the minimal model M(3,4) relabelled.
pub(super) fn ising() -> Result<Raw> {
    let labels = LabelSet::self_dual(names(&["1", "psi", "sigma"]), 0)?;
    // psi even, sigma odd under a Z/2 grading.
    let graded = |n: &FusionTensor| {
        (0..3).all(|a| {
            (0..3).all(|b| (0..3).all(|c| n.get(a, b, c) == 0 || (a == 2) ^ (b == 2) == (c == 2)))
        })
    };
    let fusion = unique_ring(&labels, graded, "ising")?;
    let m = minimal::generate(3, 4)?;
    // (1,1), (1,3), (1,2)
    let perm = [0usize, 2, 1];
    let s = CMatrix::from_fn(3, 3, |a, b| m.md.s()[(perm[a], perm[b])]);
    let weights = perm.iter().map(|&i| m.md.weight(i)).collect();
    let md = ModularData::new(labels, weights, m.md.central_charge(), s)?;
    let characters = ising_characters(&md)?;
    let fb = solve_fb(&md, &fusion, 2)?;
    Ok(Raw {
        md,
        fusion,
        characters: Some(characters),
        fb: Some(fb),
    })
}

/// `q^{-1/48} Π(1 ± q^{n-1/2})` split into even and odd parts in `q^{1/2}`,
/// and `q^{1/24} Π(1 + q^n)`.
fn ising_characters(md: &ModularData<f64>) -> Result<Vec<CharacterSeries>> {
    let len = CHARACTER_TERMS;
    let half = product_one_plus((1..=len).map(|n| 2 * n - 1), 2 * len);
    let even = half.iter().step_by(2).copied().collect();
    let odd = half.iter().skip(1).step_by(2).copied().collect();
    let sigma = product_one_plus(1..len, len);
    let offset = |a: usize| md.weight(a) - md.central_charge() / Rational::from_integer(24);
    Ok(vec![
        CharacterSeries {
            label: "1".into(),
            offset: offset(0),
            coeffs: to_u64(even)?,
        },
        CharacterSeries {
            label: "psi".into(),
            offset: offset(1),
            coeffs: to_u64(odd)?,
        },
        CharacterSeries {
            label: "sigma".into(),
            offset: offset(2),
            coeffs: to_u64(sigma)?,
        },
    ])
}

/// Every multiplicity-free commutative associative unital ring on `labels`
/// compatible with duality and Frobenius reciprocity.
pub(crate) fn ring_search(labels: &LabelSet) -> Vec<FusionTensor> {
    let r = labels.len();
    let e = labels.vacuum();
    let nonvac: Vec<usize> = (0..r).filter(|&a| a != e).collect();
    let mut slots = Vec::new();
    for (i, &a) in nonvac.iter().enumerate() {
        for &b in &nonvac[i..] {
            for &c in &nonvac {
                slots.push((a, b, c));
            }
        }
    }
    assert!(slots.len() < 24, "ring search space too large");
    let mut out = Vec::new();
    for bits in 0u32..(1 << slots.len()) {
        let mut n = FusionTensor::zeros(r);
        for a in 0..r {
            n.set(e, a, a, 1);
            n.set(a, e, a, 1);
            n.set(a, labels.dual(a), e, 1);
        }
        for (i, &(a, b, c)) in slots.iter().enumerate() {
            let v = (bits >> i) & 1;
            n.set(a, b, c, v);
            n.set(b, a, c, v);
        }
        let d = |x| labels.dual(x);
        let reciprocity = (0..r).all(|a| {
            (0..r).all(|b| {
                (0..r).all(|c| {
                    n.get(a, b, c) == n.get(a, d(c), d(b))
                        && n.get(a, b, c) == n.get(d(a), d(b), d(c))
                })
            })
        });
        if reciprocity && n.axiom_violations(labels).is_empty() && n.is_associative() {
            out.push(n);
        }
    }
    out
}

fn unique_ring(
    labels: &LabelSet,
    accept: impl Fn(&FusionTensor) -> bool,
    what: &str,
) -> Result<FusionTensor> {
    let mut found: Vec<FusionTensor> = ring_search(labels)
        .into_iter()
        .filter(|n| accept(n))
        .collect();
    if found.len() != 1 {
        return Err(Error::OracleSearchFailed(format!(
            "{} {what} fusion rings found, expected 1",
            found.len()
        )));
    }
    Ok(found.remove(0))
}

/// Perron–Frobenius eigenvalue of each fusion matrix.
pub(crate) fn perron_dimensions(n: &FusionTensor) -> Vec<f64> {
    let r = n.rank();
    (0..r)
        .map(|a| {
            // Power iteration on N(a) + 1, which is primitive.
            let mut v = vec![1.0f64; r];
            let mut lambda = 0.0;
            for _ in 0..500 {
                let w: Vec<f64> = (0..r)
                    .map(|b| v[b] + (0..r).map(|c| n.get(a, b, c) as f64 * v[c]).sum::<f64>())
                    .collect();
                let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
                lambda =
                    (0..r).map(|b| w[b] * v[b]).sum::<f64>() / v.iter().map(|x| x * x).sum::<f64>();
                v = w.into_iter().map(|x| x / norm).collect();
            }
            lambda - 1.0
        })
        .collect()
}

struct Block {
    key: [usize; 4],
    /// Channels `(a1 a2)_x`.
    left: Vec<usize>,
    /// Channels `(a2 a3)_y`.
    right: Vec<usize>,
    /// Each candidate stored as the inverse of the standard move,
    /// row-major over `right × left`.
    candidates: Vec<Vec<C<f64>>>,
}

/// A stored-F value: block index and offset into its candidate.
type Ref = (usize, usize);

struct Pentagon {
    lhs: [Ref; 2],
    rhs: Vec<[Ref; 3]>,
}

fn roots_of_unity(m: u32) -> Vec<C<f64>> {
    (0..m as i64)
        .map(|j| exp_2pi_i(&Rational::new(j, m as i64)))
        .collect()
}

fn two_by_two_candidates(d: f64) -> Vec<CMatrix<f64>> {
    let vals = [1.0 / d, -1.0 / d, 1.0 / d.sqrt(), -1.0 / d.sqrt()];
    let mut out = Vec::new();
    for i in 0..256usize {
        let e = [
            vals[i >> 6 & 3],
            vals[i >> 4 & 3],
            vals[i >> 2 & 3],
            vals[i & 3],
        ];
        let m = CMatrix::from_real_rows(&[vec![e[0], e[1]], vec![e[2], e[3]]]).expect("square");
        let unitary =
            m.matmul(&m.adjoint()).max_abs_diff(&CMatrix::identity(2)).0 < SEARCH_TOLERANCE;
        if unitary && !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

fn blocks(
    labels: &LabelSet,
    n: &FusionTensor,
    dims: &[f64],
    root_order: u32,
) -> Result<Vec<Block>> {
    let r = labels.len();
    let e = labels.vacuum();
    let adm = |a, b, c| n.get(a, b, c) == 1;
    let mut out = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    let left: Vec<usize> =
                        (0..r).filter(|&x| adm(a, b, x) && adm(x, c, d)).collect();
                    let right: Vec<usize> =
                        (0..r).filter(|&y| adm(b, c, y) && adm(a, y, d)).collect();
                    if left.is_empty() {
                        continue;
                    }
                    let key = [a, b, c, d];
                    let candidates: Vec<CMatrix<f64>> = if a == e || b == e || c == e {
                        vec![CMatrix::identity(left.len())]
                    } else {
                        match left.len() {
                            1 => roots_of_unity(root_order)
                                .into_iter()
                                .map(|z| CMatrix::from_fn(1, 1, |_, _| z))
                                .collect(),
                            2 => two_by_two_candidates(dims[a]),
                            k => {
                                return Err(Error::OracleSearchFailed(format!(
                                    "F block ({}) has dimension {k}; only 1 and 2 are searched",
                                    labels.fmt_tuple(&key)
                                )))
                            }
                        }
                    };
                    let candidates = candidates
                        .into_iter()
                        .map(|m| {
                            let g = m.inverse().expect("unitary candidate");
                            g.to_rows().concat()
                        })
                        .collect();
                    out.push(Block {
                        key,
                        left,
                        right,
                        candidates,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn pentagons(r: usize, n: &FusionTensor, blocks: &[Block]) -> Vec<Pentagon> {
    let index: HashMap<[usize; 4], usize> =
        blocks.iter().enumerate().map(|(i, b)| (b.key, i)).collect();
    let lookup = |k: Key6| -> Option<Ref> {
        let bi = *index.get(&[k[0], k[1], k[2], k[3]])?;
        let b = &blocks[bi];
        let y = b.right.iter().position(|&v| v == k[4])?;
        let x = b.left.iter().position(|&v| v == k[5])?;
        Some((bi, y * b.left.len() + x))
    };
    let adm = |a, b, c| n.get(a, b, c) == 1;
    let mut out = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    for l in (0..r).filter(|&l| adm(c, d, l)) {
                        for k in (0..r).filter(|&k| adm(b, l, k)) {
                            for e in (0..r).filter(|&e| adm(a, k, e)) {
                                for f in (0..r).filter(|&f| adm(a, b, f)) {
                                    for g in (0..r).filter(|&g| adm(f, c, g) && adm(g, d, e)) {
                                        let (Some(l1), Some(l2)) = (
                                            lookup([a, b, l, e, k, f]),
                                            lookup([f, c, d, e, l, g]),
                                        ) else {
                                            continue;
                                        };
                                        let rhs = (0..r)
                                            .filter_map(|h| {
                                                Some([
                                                    lookup([b, c, d, k, l, h])?,
                                                    lookup([a, h, d, e, k, g])?,
                                                    lookup([a, b, c, g, h, f])?,
                                                ])
                                            })
                                            .collect();
                                        out.push(Pentagon { lhs: [l1, l2], rhs });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// R-symbol phases in turns: `R^{ab}_c = e^{2πi·angle}`.
struct RChoice {
    /// `(a, b, c)` with `a < b` searched over the lattice, or `a == b` over
    /// the two square roots allowed by the ribbon relation.
    slots: Vec<(usize, usize, usize, Vec<Rational>)>,
    fixed: BTreeMap<Key3, Rational>,
}

fn frac(r: Rational) -> Rational {
    r - r.floor()
}

fn r_choices(labels: &LabelSet, n: &FusionTensor, h: &[Rational], lattice: i64) -> RChoice {
    let r = labels.len();
    let e = labels.vacuum();
    let mut fixed = BTreeMap::new();
    let mut slots = Vec::new();
    let half = Rational::new(1, 2);
    for a in 0..r {
        for b in a..r {
            for c in (0..r).filter(|&c| n.get(a, b, c) == 1) {
                let ribbon = h[c] - h[a] - h[b];
                if a == e || b == e {
                    fixed.insert([a, b, c], Rational::zero());
                    fixed.insert([b, a, c], Rational::zero());
                } else if c == e {
                    // R^{x' x}_e = e^{-2πi h_x}
                    fixed.insert([a, b, c], frac(-h[b]));
                    fixed.insert([b, a, c], frac(-h[a]));
                } else if a == b {
                    let base = ribbon / Rational::from_integer(2);
                    slots.push((a, b, c, vec![frac(base), frac(base + half)]));
                } else {
                    slots.push((
                        a,
                        b,
                        c,
                        (0..lattice).map(|j| Rational::new(j, lattice)).collect(),
                    ));
                }
            }
        }
    }
    RChoice { slots, fixed }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

fn lcm_denominators(h: &[Rational]) -> i64 {
    h.iter().fold(1i64, |acc, x| lcm(acc, *x.denom()))
}

/// Searches gauge-fixed stored F over a finite candidate set, then R-symbols
/// on a root-of-unity lattice; `sigma23` is solved from the Moore–Seiberg
/// identity and must land on the lattice and satisfy the S3 relations.
pub(super) fn solve_fb(
    md: &ModularData<f64>,
    n: &FusionTensor,
    root_order: u32,
) -> Result<FbEntries<f64>> {
    let labels = md.labels();
    let r = labels.len();
    let dims = perron_dimensions(n);
    let blocks = blocks(labels, n, &dims, root_order)?;
    let equations = pentagons(r, n, &blocks);
    let unknown: Vec<usize> = (0..blocks.len())
        .filter(|&i| blocks[i].candidates.len() > 1)
        .collect();
    let mut position = vec![usize::MAX; blocks.len()];
    for (p, &b) in unknown.iter().enumerate() {
        position[b] = p;
    }
    // Equations grouped by the last unknown block they mention; fully fixed
    // equations are checked before the search starts.
    let mut by_level: Vec<Vec<&Pentagon>> = vec![Vec::new(); unknown.len() + 1];
    for eq in &equations {
        let refs = eq.lhs.iter().chain(eq.rhs.iter().flatten());
        let level = refs
            .map(|&(b, _)| position[b])
            .filter(|&p| p != usize::MAX)
            .map(|p| p + 1)
            .max()
            .unwrap_or(0);
        by_level[level].push(eq);
    }
    let h = md.weights();
    let lattice = 2 * lcm_denominators(h);
    let rc = r_choices(labels, n, h, lattice);
    let sigma_lattice = lcm(lattice, 2 * root_order as i64);

    let mut choice = vec![0usize; blocks.len()];
    let value = |choice: &[usize], (b, off): Ref| blocks[b].candidates[choice[b]][off];
    let holds = |choice: &[usize], level: usize| {
        by_level[level].iter().all(|eq| {
            let lhs = value(choice, eq.lhs[0]) * value(choice, eq.lhs[1]);
            let rhs = eq.rhs.iter().fold(C::zero(), |s, t| {
                s + value(choice, t[0]) * value(choice, t[1]) * value(choice, t[2])
            });
            (lhs - rhs).norm() < SEARCH_TOLERANCE
        })
    };
    if !holds(&choice, 0) {
        return Err(Error::OracleSearchFailed(
            "gauge-fixed F blocks violate the pentagon".into(),
        ));
    }
    // Iterative depth-first search over candidate indices.
    let mut depth = 0usize;
    let mut solutions = 0usize;
    let mut fresh = true;
    loop {
        if depth == unknown.len() {
            solutions += 1;
            if let Some(entries) = braiding_for(md, n, &blocks, &choice, &rc, sigma_lattice)? {
                return Ok(entries);
            }
            if solutions >= MAX_F_SOLUTIONS || depth == 0 {
                break;
            }
            depth -= 1;
            fresh = false;
        }
        let b = unknown[depth];
        if fresh {
            choice[b] = 0;
        } else {
            choice[b] += 1;
        }
        if choice[b] >= blocks[b].candidates.len() {
            choice[b] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            fresh = false;
            continue;
        }
        if holds(&choice, depth + 1) {
            depth += 1;
            fresh = true;
        } else {
            fresh = false;
        }
    }
    Err(Error::OracleSearchFailed(format!(
        "no braided solution among {solutions} pentagon solutions"
    )))
}

fn stored_f(blocks: &[Block], choice: &[usize]) -> BTreeMap<Key6, C<f64>> {
    let mut f = BTreeMap::new();
    for (bi, b) in blocks.iter().enumerate() {
        let g = &b.candidates[choice[bi]];
        for (yi, &y) in b.right.iter().enumerate() {
            for (xi, &x) in b.left.iter().enumerate() {
                let [a1, a2, a3, a4] = b.key;
                f.insert([a1, a2, a3, a4, y, x], g[yi * b.left.len() + xi]);
            }
        }
    }
    f
}

fn hexagon_residual(r: usize, n: &FusionTensor, sf: &StandardF<f64>, rs: &[C<f64>]) -> f64 {
    let adm = |a, b, c| n.get(a, b, c) == 1;
    let rv = |a: usize, b: usize, c: usize| rs[(a * r + b) * r + c];
    let ri = |a: usize, b: usize, c: usize| {
        if adm(a, b, c) {
            rv(a, b, c).inv()
        } else {
            C::zero()
        }
    };
    let mut worst = 0.0f64;
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    for e in (0..r).filter(|&e| adm(a, c, e) && adm(e, b, d)) {
                        for g in (0..r).filter(|&g| adm(c, b, g) && adm(a, g, d)) {
                            let lhs = rv(c, a, e) * sf.get(a, c, b, d, e, g) * rv(c, b, g);
                            let rhs = (0..r).fold(C::zero(), |s, f| {
                                s + sf.get(c, a, b, d, e, f)
                                    * rv(c, f, d)
                                    * sf.get(a, b, c, d, f, g)
                            });
                            let lhs_i = ri(a, c, e) * sf.get(a, c, b, d, e, g) * ri(b, c, g);
                            let rhs_i = (0..r).fold(C::zero(), |s, f| {
                                s + sf.get(c, a, b, d, e, f)
                                    * ri(f, c, d)
                                    * sf.get(a, b, c, d, f, g)
                            });
                            worst = worst.max((lhs - rhs).norm()).max((lhs_i - rhs_i).norm());
                            if worst > SEARCH_TOLERANCE {
                                return worst;
                            }
                        }
                    }
                }
            }
        }
    }
    worst
}

/// For one pentagon solution, searches the R lattice and completes the data.
fn braiding_for(
    md: &ModularData<f64>,
    n: &FusionTensor,
    blocks: &[Block],
    choice: &[usize],
    rc: &RChoice,
    sigma_lattice: i64,
) -> Result<Option<FbEntries<f64>>> {
    let labels = md.labels();
    let r = labels.len();
    let h = md.weights();
    let f = stored_f(blocks, choice);
    let bare = FbData::new(
        md,
        n,
        FbEntries {
            f: f.clone(),
            ..Default::default()
        },
    )?;
    let sf = bare.standard_f()?;
    let mut pick = vec![0usize; rc.slots.len()];
    loop {
        let mut angle = rc.fixed.clone();
        for (s, &(a, b, c, ref opts)) in rc.slots.iter().enumerate() {
            let x = opts[pick[s]];
            angle.insert([a, b, c], x);
            if a != b {
                angle.insert([b, a, c], frac(h[c] - h[a] - h[b] - x));
            }
        }
        let mut rs = vec![C::zero(); r * r * r];
        for (k, x) in &angle {
            rs[(k[0] * r + k[1]) * r + k[2]] = exp_2pi_i(x);
        }
        if hexagon_residual(r, n, &sf, &rs) <= SEARCH_TOLERANCE {
            // sigma12(a1,a2,a3) = e^{iπΔ} / R^{a2a1}_{a3}
            let sigma12: BTreeMap<Key3, C<f64>> = angle
                .iter()
                .map(|(&[a2, a1, a3], x)| {
                    let delta = h[a3] - h[a1] - h[a2];
                    (
                        [a1, a2, a3],
                        exp_i_pi(&(delta - *x * Rational::from_integer(2))),
                    )
                })
                .collect();
            if let Some(sigma23) = sigma23_from_ms(labels, n, &f, &sigma12, sigma_lattice) {
                let entries = FbEntries {
                    f: f.clone(),
                    sigma12: sigma12.clone(),
                    sigma23,
                    ..Default::default()
                };
                let fb = FbData::new(md, n, entries)?;
                if sigma_action_check(&fb, SEARCH_TOLERANCE)?.passed {
                    let (b, b2) = derived_braiding(&fb)?;
                    let mut entries = fb.entries().clone();
                    entries.b = b;
                    entries.b2 = b2;
                    return Ok(Some(entries));
                }
            }
        }
        // Next lattice point.
        let mut s = 0;
        loop {
            if s == pick.len() {
                return Ok(None);
            }
            pick[s] += 1;
            if pick[s] < rc.slots[s].3.len() {
                break;
            }
            pick[s] = 0;
            s += 1;
        }
    }
}

/// `sigma23(a2, a3', a1') = rig(a2) / (F[a2,a3',a3,a2,e,a1'] F[a1',a1,a2,a2,a3,e] sigma12(a2,a1,a3))`,
/// snapped to the lattice of `m`-th roots of unity.
fn sigma23_from_ms(
    labels: &LabelSet,
    n: &FusionTensor,
    f: &BTreeMap<Key6, C<f64>>,
    sigma12: &BTreeMap<Key3, C<f64>>,
    m: i64,
) -> Option<BTreeMap<Key3, C<f64>>> {
    let r = labels.len();
    let e = labels.vacuum();
    let d = |x| labels.dual(x);
    let mut out = BTreeMap::new();
    for a1 in 0..r {
        for a2 in 0..r {
            for a3 in (0..r).filter(|&a3| n.get(a1, a2, a3) == 1) {
                let rig = *f.get(&[a2, d(a2), a2, a2, e, e])?;
                let g1 = *f.get(&[a2, d(a3), a3, a2, e, d(a1)])?;
                let g2 = *f.get(&[d(a1), a1, a2, a2, a3, e])?;
                let v = rig / (g1 * g2 * *sigma12.get(&[a2, a1, a3])?);
                if (v.norm() - 1.0).abs() > 1e-9 {
                    return None;
                }
                let turns = v.arg() / std::f64::consts::TAU * m as f64;
                let j = turns.round();
                if (turns - j).abs() > 1e-6 {
                    return None;
                }
                out.insert([a2, d(a3), d(a1)], exp_2pi_i(&Rational::new(j as i64, m)));
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_rings() {
        let labels = LabelSet::self_dual(names(&["1", "x"]), 0).unwrap();
        // Z/2 and Fibonacci.
        assert_eq!(ring_search(&labels).len(), 2);
    }

    #[test]
    fn rank_three_self_dual_rings() {
        let labels = LabelSet::self_dual(names(&["1", "psi", "sigma"]), 0).unwrap();
        let rings = ring_search(&labels);
        // Ising and Rep(S3) in this labelling, plus Z/2 x Z/2.
        assert!(rings.len() >= 2);
        assert!(rings.iter().all(|n| n.is_associative()));
    }

    #[test]
    fn perron_dimensions_of_fibonacci() {
        let raw = fibonacci().unwrap();
        let d = perron_dimensions(&raw.fusion);
        assert!((d[0] - 1.0).abs() < 1e-12);
        assert!((d[1] - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn fibonacci_f_block_matches_known_values() {
        let raw = fibonacci().unwrap();
        let fb = FbData::new(&raw.md, &raw.fusion, raw.fb.unwrap()).unwrap();
        let sf = fb.standard_f().unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        // Gauge-invariant diagonal entries of F^{ttt}_t.
        assert!((sf.get(1, 1, 1, 1, 0, 0).re - 1.0 / phi).abs() < 1e-12);
        assert!((sf.get(1, 1, 1, 1, 1, 1).re + 1.0 / phi).abs() < 1e-12);
        let r1 = fb.r_symbol(1, 1, 0).unwrap();
        let rt = fb.r_symbol(1, 1, 1).unwrap();
        assert!((r1 - exp_2pi_i::<f64>(&Rational::new(-2, 5))).norm() < 1e-12);
        assert!((rt - exp_2pi_i::<f64>(&Rational::new(3, 10))).norm() < 1e-12);
    }
}
