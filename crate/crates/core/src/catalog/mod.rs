//! Fixture theories with S-independent fusion oracles.
//!
//! Every generator returns modular data together with a fusion tensor computed
//! without the S-matrix, and where available character series and
//! fusing/braiding data.

mod anyon;
mod minimal;
mod pointed;
pub mod series;
mod su2;

use serde::{Deserialize, Serialize};

use crate::characters::{CharacterSeries, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::fb::{FbData, FbEntries};
use crate::modular_data::{FusionTensor, ModularData};
use crate::scalar::{Real, C};

pub use minimal::{bpz_fusion, minimal_model_labels};
pub use su2::clebsch_gordan_fusion;

/// Number of character coefficients emitted per label.
pub const CHARACTER_TERMS: usize = DEFAULT_TRUNCATION + 1;

/// Largest odd `n` for which pointed fusing/braiding data is searched.
pub const POINTED_FB_MAX_RANK: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FixtureSpec {
    Trivial,
    Fibonacci,
    Ising,
    #[serde(rename = "su2_level_k")]
    Su2 {
        k: u32,
    },
    #[serde(rename = "minimal_model")]
    Minimal {
        p: u32,
        q: u32,
    },
    /// `Z/n` with quadratic form `q(a) = k a^2 / 2n`.
    #[serde(rename = "pointed_cyclic")]
    Pointed {
        n: u32,
        k: u32,
    },
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FixtureSpec {
    pub fn family(&self) -> &'static str {
        match self {
            Self::Trivial => "trivial",
            Self::Fibonacci => "fibonacci",
            Self::Ising => "ising",
            Self::Su2 { .. } => "su2_level_k",
            Self::Minimal { .. } => "minimal_model",
            Self::Pointed { .. } => "pointed_cyclic",
        }
    }

    /// Directory name used under `fixtures/`.
    pub fn name(&self) -> String {
        match *self {
            Self::Su2 { k } => format!("su2_k{k}"),
            Self::Minimal { p, q } => format!("minimal_{p}_{q}"),
            Self::Pointed { n, k } => format!("pointed_z{n}_k{k}"),
            _ => self.family().to_string(),
        }
    }

    /// Parses a family name and its integer parameters, as on the command line.
    pub fn parse(family: &str, params: &[String]) -> Result<Self> {
        let ints: Vec<u32> = params
            .iter()
            .map(|p| {
                p.parse::<u32>().map_err(|_| {
                    Error::InvalidParameters(format!("'{p}' is not a nonnegative integer"))
                })
            })
            .collect::<Result<_>>()?;
        let arity = |n: usize| {
            if ints.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidParameters(format!(
                    "{family} takes {n} parameter(s), got {}",
                    ints.len()
                )))
            }
        };
        let spec = match family {
            "trivial" => arity(0).map(|_| Self::Trivial)?,
            "fibonacci" => arity(0).map(|_| Self::Fibonacci)?,
            "ising" => arity(0).map(|_| Self::Ising)?,
            "su2_level_k" | "su2" => arity(1).map(|_| Self::Su2 { k: ints[0] })?,
            "minimal_model" | "minimal" => arity(2).map(|_| Self::Minimal {
                p: ints[0],
                q: ints[1],
            })?,
            "pointed_cyclic" | "pointed" => arity(2).map(|_| Self::Pointed {
                n: ints[0],
                k: ints[1],
            })?,
            other => {
                return Err(Error::InvalidParameters(format!(
                    "unknown family '{other}'"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameters(m));
        match *self {
            Self::Su2 { k } if !(1..=60).contains(&k) => {
                bad(format!("su2_level_k needs 1 <= k <= 60, got {k}"))
            }
            Self::Minimal { p, q } if !(2 <= p && p < q && gcd(p, q) == 1) => bad(format!(
                "minimal_model needs coprime 2 <= p < q, got ({p},{q})"
            )),
            Self::Minimal { p, q } if (p - 1) * (q - 1) / 2 > 60 => {
                bad(format!("minimal_model({p},{q}) too large"))
            }
            Self::Pointed { n, .. } if n == 0 || n > 60 => {
                bad(format!("pointed_cyclic needs 1 <= n <= 60, got {n}"))
            }
            Self::Pointed { n, k } if gcd(k % n, n) != 1 && n > 1 => bad(format!(
                "pointed_cyclic needs gcd(k, n) = 1, got n = {n}, k = {k}"
            )),
            Self::Pointed { n, k } if (n * k) % 2 != 0 => bad(format!(
                "pointed_cyclic needs n k even, got n = {n}, k = {k}"
            )),
            _ => Ok(()),
        }
    }
}

/// Fixtures checked into `fixtures/`.
pub fn standard_fixtures() -> Vec<FixtureSpec> {
    let mut v = vec![
        FixtureSpec::Trivial,
        FixtureSpec::Fibonacci,
        FixtureSpec::Ising,
    ];
    v.extend((1..=4).map(|k| FixtureSpec::Su2 { k }));
    v.extend([
        FixtureSpec::Minimal { p: 2, q: 5 },
        FixtureSpec::Minimal { p: 3, q: 4 },
        FixtureSpec::Minimal { p: 4, q: 5 },
        FixtureSpec::Pointed { n: 2, k: 1 },
        FixtureSpec::Pointed { n: 3, k: 2 },
        FixtureSpec::Pointed { n: 4, k: 1 },
    ]);
    v
}

/// Generated fixture: modular data plus oracles.
#[derive(Debug, Clone, PartialEq)]
pub struct Fixture<T> {
    pub spec: FixtureSpec,
    pub md: ModularData<T>,
    pub fusion: FusionTensor,
    pub characters: Option<Vec<CharacterSeries>>,
    pub fb: Option<FbData<T>>,
}

/// The parts every generator produces, in `f64`.
pub(crate) struct Raw {
    pub md: ModularData<f64>,
    pub fusion: FusionTensor,
    pub characters: Option<Vec<CharacterSeries>>,
    pub fb: Option<FbEntries<f64>>,
}

pub fn generate<T: Real>(spec: &FixtureSpec) -> Result<Fixture<T>> {
    spec.validate()?;
    let raw = match *spec {
        FixtureSpec::Trivial => anyon::trivial()?,
        FixtureSpec::Fibonacci => anyon::fibonacci()?,
        FixtureSpec::Ising => anyon::ising()?,
        FixtureSpec::Su2 { k } => su2::generate(k)?,
        FixtureSpec::Minimal { p, q } => minimal::generate(p, q)?,
        FixtureSpec::Pointed { n, k } => pointed::generate(n, k)?,
    };
    let cast = |z: C<f64>| C::new(T::lit(z.re), T::lit(z.im));
    let md = ModularData::new(
        raw.md.labels().clone(),
        raw.md.weights().to_vec(),
        raw.md.central_charge(),
        raw.md.s().map(cast),
    )?;
    let fb = match raw.fb {
        None => None,
        Some(e) => {
            let conv = |m: &std::collections::BTreeMap<_, C<f64>>| {
                m.iter().map(|(k, v)| (*k, cast(*v))).collect()
            };
            let entries = FbEntries {
                f: conv(&e.f),
                b: e.b.iter().map(|(k, v)| (*k, cast(*v))).collect(),
                b2: conv(&e.b2),
                sigma12: e.sigma12.iter().map(|(k, v)| (*k, cast(*v))).collect(),
                sigma23: e.sigma23.iter().map(|(k, v)| (*k, cast(*v))).collect(),
            };
            Some(FbData::new(&md, &raw.fusion, entries)?)
        }
    };
    Ok(Fixture {
        spec: *spec,
        md,
        fusion: raw.fusion,
        characters: raw.characters,
        fb,
    })
}
