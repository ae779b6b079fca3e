//! JSON documents and the fixture directory layout.
//!
//! A fixture directory holds `modular_data.json` and optionally
//! `fusion.json`, `fb.json`, `characters.json` and `fixture.json`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::{Fixture, FixtureSpec};
use crate::characters::CharacterSeries;
use crate::error::{Error, Result};
use crate::fb::FbEntries;
use crate::linalg::CMatrix;
use crate::modular_data::{FusionTensor, LabelSet, ModularData};
use crate::scalar::{c, format_rational, parse_rational, to_f64, Real, C};

pub const MODULAR_DATA_FILE: &str = "modular_data.json";
pub const FUSION_FILE: &str = "fusion.json";
pub const FB_FILE: &str = "fb.json";
pub const CHARACTERS_FILE: &str = "characters.json";
pub const FIXTURE_FILE: &str = "fixture.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModularDataDoc {
    pub labels: Vec<String>,
    pub vacuum: String,
    pub dual: BTreeMap<String, String>,
    pub h: BTreeMap<String, String>,
    pub c: String,
    #[serde(rename = "S")]
    pub s: Vec<Vec<[f64; 2]>>,
}

impl ModularDataDoc {
    pub fn from_modular_data<T: Real>(md: &ModularData<T>) -> Self {
        let labels = md.labels();
        let names = labels.names().to_vec();
        let dual = (0..labels.len())
            .map(|a| (names[a].clone(), names[labels.dual(a)].clone()))
            .collect();
        let h = (0..labels.len())
            .map(|a| (names[a].clone(), format_rational(&md.weight(a))))
            .collect();
        let s = md
            .s()
            .to_rows()
            .iter()
            .map(|row| row.iter().map(|z| [to_f64(z.re), to_f64(z.im)]).collect())
            .collect();
        Self {
            vacuum: labels.name(labels.vacuum()).to_string(),
            labels: names,
            dual,
            h,
            c: format_rational(&md.central_charge()),
            s,
        }
    }

    pub fn to_modular_data<T: Real>(&self) -> Result<ModularData<T>> {
        let labels = LabelSet::from_names(self.labels.clone(), &self.vacuum, &self.dual)?;
        for key in self.h.keys() {
            labels.index_of(key)?;
        }
        let weights = labels
            .names()
            .iter()
            .map(|name| {
                let v = self
                    .h
                    .get(name)
                    .ok_or_else(|| Error::Parse(format!("missing weight for label '{name}'")))?;
                parse_rational(v)
            })
            .collect::<Result<Vec<_>>>()?;
        let central_charge = parse_rational(&self.c)?;
        let rows: Vec<Vec<C<T>>> = self
            .s
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&[re, im]| c(T::lit(re), T::lit(im)))
                    .collect()
            })
            .collect();
        let s = CMatrix::from_rows(rows)
            .ok_or_else(|| Error::DimensionMismatch("S rows have unequal lengths".into()))?;
        ModularData::new(labels, weights, central_charge, s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionEntry {
    pub a1: String,
    pub a2: String,
    pub a3: String,
    pub n: u32,
}

/// Nonzero entries only, in lexicographic label-index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionDoc {
    #[serde(rename = "N")]
    pub n: Vec<FusionEntry>,
}

impl FusionDoc {
    pub fn from_tensor(n: &FusionTensor, labels: &LabelSet) -> Self {
        let entries = n
            .nonzero()
            .map(|((a1, a2, a3), v)| FusionEntry {
                a1: labels.name(a1).into(),
                a2: labels.name(a2).into(),
                a3: labels.name(a3).into(),
                n: v,
            })
            .collect();
        Self { n: entries }
    }

    pub fn to_tensor(&self, labels: &LabelSet) -> Result<FusionTensor> {
        let mut t = FusionTensor::zeros(labels.len());
        for e in &self.n {
            let (a1, a2, a3) = (
                labels.index_of(&e.a1)?,
                labels.index_of(&e.a2)?,
                labels.index_of(&e.a3)?,
            );
            if t.get(a1, a2, a3) != 0 {
                return Err(Error::Parse(format!(
                    "duplicate fusion entry ({},{},{})",
                    e.a1, e.a2, e.a3
                )));
            }
            t.set(a1, a2, a3, e.n);
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FbItem {
    pub key: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i32>,
    pub v: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FbDoc {
    #[serde(rename = "F", default)]
    pub f: Vec<FbItem>,
    #[serde(rename = "B", default)]
    pub b: Vec<FbItem>,
    #[serde(rename = "B2", default)]
    pub b2: Vec<FbItem>,
    #[serde(default)]
    pub sigma12: Vec<FbItem>,
    #[serde(default)]
    pub sigma23: Vec<FbItem>,
}

fn item<T: Real, const K: usize>(
    labels: &LabelSet,
    key: &[usize; K],
    r: Option<i32>,
    v: C<T>,
) -> FbItem {
    FbItem {
        key: key.iter().map(|&i| labels.name(i).to_string()).collect(),
        r,
        v: [to_f64(v.re), to_f64(v.im)],
    }
}

fn key_of<const K: usize>(labels: &LabelSet, it: &FbItem, kind: &str) -> Result<[usize; K]> {
    if it.key.len() != K {
        return Err(Error::Parse(format!(
            "{kind} key must have {K} labels, got {}",
            it.key.len()
        )));
    }
    let mut k = [0usize; K];
    for (slot, name) in k.iter_mut().zip(&it.key) {
        *slot = labels.index_of(name)?;
    }
    Ok(k)
}

impl FbDoc {
    pub fn from_entries<T: Real>(e: &FbEntries<T>, labels: &LabelSet) -> Self {
        Self {
            f: e.f.iter().map(|(k, v)| item(labels, k, None, *v)).collect(),
            b: e.b
                .iter()
                .map(|((r, k), v)| item(labels, k, Some(*r), *v))
                .collect(),
            b2: e
                .b2
                .iter()
                .map(|(k, v)| item(labels, k, None, *v))
                .collect(),
            sigma12: e
                .sigma12
                .iter()
                .map(|(k, v)| item(labels, k, None, *v))
                .collect(),
            sigma23: e
                .sigma23
                .iter()
                .map(|(k, v)| item(labels, k, None, *v))
                .collect(),
        }
    }

    /// Resolves labels; admissibility is checked by [`FbData::new`].
    pub fn to_entries<T: Real>(&self, labels: &LabelSet) -> Result<FbEntries<T>> {
        fn value<T: Real>(it: &FbItem) -> C<T> {
            c(T::lit(it.v[0]), T::lit(it.v[1]))
        }
        fn insert<K: Ord + Copy, V>(
            map: &mut BTreeMap<K, V>,
            k: K,
            v: V,
            kind: &str,
            it: &FbItem,
        ) -> Result<()> {
            if map.insert(k, v).is_some() {
                return Err(Error::Parse(format!(
                    "duplicate {kind} entry [{}]",
                    it.key.join(",")
                )));
            }
            Ok(())
        }
        let no_r = |it: &FbItem, kind: &str| match it.r {
            Some(_) => Err(Error::Parse(format!("{kind} entries take no 'r'"))),
            None => Ok(()),
        };
        let mut e = FbEntries::default();
        for it in &self.f {
            no_r(it, "F")?;
            insert(&mut e.f, key_of::<6>(labels, it, "F")?, value(it), "F", it)?;
        }
        for it in &self.b {
            let r =
                it.r.ok_or_else(|| Error::Parse("B entries need 'r'".into()))?;
            insert(
                &mut e.b,
                (r, key_of::<6>(labels, it, "B")?),
                value(it),
                "B",
                it,
            )?;
        }
        for it in &self.b2 {
            no_r(it, "B2")?;
            insert(
                &mut e.b2,
                key_of::<6>(labels, it, "B2")?,
                value(it),
                "B2",
                it,
            )?;
        }
        for it in &self.sigma12 {
            no_r(it, "sigma12")?;
            insert(
                &mut e.sigma12,
                key_of::<3>(labels, it, "sigma12")?,
                value(it),
                "sigma12",
                it,
            )?;
        }
        for it in &self.sigma23 {
            no_r(it, "sigma23")?;
            insert(
                &mut e.sigma23,
                key_of::<3>(labels, it, "sigma23")?,
                value(it),
                "sigma23",
                it,
            )?;
        }
        Ok(e)
    }
}

/// `fixture.json`: family and parameters, plus `paper_conditions`, which
/// records (without checking) that the family meets the structural hypotheses
/// on the vertex algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureMeta {
    #[serde(flatten)]
    pub spec: FixtureSpec,
    pub paper_conditions: bool,
}

/// Parsed contents of a fixture directory. FB entries are kept unvalidated
/// until a fusion tensor is fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct Bundle<T> {
    pub md: ModularData<T>,
    pub fusion: Option<FusionTensor>,
    pub fb: Option<FbEntries<T>>,
    pub characters: Option<Vec<CharacterSeries>>,
    pub meta: Option<FixtureMeta>,
}

fn read_json<D: for<'de> Deserialize<'de>>(path: &Path) -> Result<D> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_optional<D: for<'de> Deserialize<'de>>(dir: &Path, name: &str) -> Result<Option<D>> {
    let path = dir.join(name);
    if path.exists() {
        read_json(&path).map(Some)
    } else {
        Ok(None)
    }
}

pub fn read_modular_data<T: Real>(path: &Path) -> Result<ModularData<T>> {
    read_json::<ModularDataDoc>(path)?.to_modular_data()
}

pub fn load_dir<T: Real>(dir: &Path) -> Result<Bundle<T>> {
    if !dir.is_dir() {
        return Err(Error::Io(format!("{} is not a directory", dir.display())));
    }
    let md_path = dir.join(MODULAR_DATA_FILE);
    if !md_path.exists() {
        return Err(Error::Io(format!("{} not found", md_path.display())));
    }
    let md: ModularData<T> = read_modular_data(&md_path)?;
    let fusion = read_optional::<FusionDoc>(dir, FUSION_FILE)?
        .map(|d| d.to_tensor(md.labels()))
        .transpose()?;
    let fb = read_optional::<FbDoc>(dir, FB_FILE)?
        .map(|d| d.to_entries(md.labels()))
        .transpose()?;
    let characters = read_optional::<Vec<CharacterSeries>>(dir, CHARACTERS_FILE)?;
    let meta = read_optional::<FixtureMeta>(dir, FIXTURE_FILE)?;
    Ok(Bundle {
        md,
        fusion,
        fb,
        characters,
        meta,
    })
}

pub fn to_json<S: Serialize>(doc: &S) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialise");
    s.push('\n');
    s
}

fn write(dir: &Path, name: &str, text: String) -> Result<()> {
    fs::write(dir.join(name), text)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.join(name).display())))
}

/// Writes every document of a generated fixture into `dir`.
pub fn write_fixture<T: Real>(fx: &Fixture<T>, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let labels = fx.md.labels();
    write(
        dir,
        MODULAR_DATA_FILE,
        to_json(&ModularDataDoc::from_modular_data(&fx.md)),
    )?;
    write(
        dir,
        FUSION_FILE,
        to_json(&FusionDoc::from_tensor(&fx.fusion, labels)),
    )?;
    if let Some(fb) = &fx.fb {
        write(
            dir,
            FB_FILE,
            to_json(&FbDoc::from_entries(fb.entries(), labels)),
        )?;
    }
    if let Some(chs) = &fx.characters {
        write(dir, CHARACTERS_FILE, to_json(chs))?;
    }
    write(
        dir,
        FIXTURE_FILE,
        to_json(&FixtureMeta {
            spec: fx.spec,
            paper_conditions: true,
        }),
    )
}
