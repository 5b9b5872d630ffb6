//! JSON documents and the registry that resolves references between them.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::aset::{ASet, Base, ExactSequence};
use crate::error::{Error, Result};
use crate::geometry::affine::AffineMonoid;
use crate::geometry::scheme::{Chart, Glue, GluedScheme};
use crate::homological::{DaComplex, TruncSimplicialASet};
use crate::monoid::{build_from_presentation, FiniteMonoid, MonoidValue};
use crate::util::{DEFAULT_CARRIER_BOUND, DEFAULT_DEGREE_BOUND};

/// A point of a carrier, by index or by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRef {
    Index(usize),
    Name(String),
}

/// A monoid, given by registered name, file path, or inline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidRef {
    Name(String),
    Inline(Box<Document>),
}

/// An A-set, given by file path or inline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AsetRef {
    Path(String),
    Inline(Box<AsetDoc>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteTableDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonogenicDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineDoc {
    pub name: String,
    pub rank: usize,
    pub generators: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unit_group: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomial_ideal: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AsetDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// May be omitted inside a document that fixes the base.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<MonoidRef>,
    pub carrier: Vec<String>,
    /// Image of every carrier point under each generator.
    pub action: BTreeMap<String, Vec<PointRef>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AesDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<MonoidRef>,
    pub x: AsetRef,
    pub y: AsetRef,
    pub z: AsetRef,
    pub f: Vec<PointRef>,
    pub g: Vec<PointRef>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<MonoidRef>,
    #[serde(default)]
    pub low: i64,
    pub levels: Vec<AsetRef>,
    /// `r[k]` maps level `k` to level `k-1`; `r[0]` may be omitted or empty.
    pub r: Vec<Vec<PointRef>>,
    pub s: Vec<Vec<PointRef>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<MonoidRef>,
    pub levels: Vec<AsetRef>,
    /// `faces[n][i] = d_i : X_n -> X_{n-1}`; `faces[0]` is empty.
    pub faces: Vec<Vec<Vec<PointRef>>>,
    /// `degeneracies[n][i] = s_i : X_n -> X_{n+1}`; the top level has none.
    pub degeneracies: Vec<Vec<Vec<PointRef>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    pub generators: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_units: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GlueDoc {
    Generic,
    Fan,
}

fn default_glue() -> GlueDoc {
    GlueDoc::Generic
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub lattice_rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unit_group: Vec<i64>,
    pub charts: Vec<ChartDoc>,
    #[serde(default = "default_glue")]
    pub glue: GlueDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    FiniteTable(FiniteTableDoc),
    Monogenic(MonogenicDoc),
    Affine(AffineDoc),
    Aset(AsetDoc),
    Aes(AesDoc),
    Dacomplex(ComplexDoc),
    Simplicial(SimplicialDoc),
    Scheme(SchemeDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::FiniteTable(_) => "finite-table",
            Document::Monogenic(_) => "monogenic",
            Document::Affine(_) => "affine",
            Document::Aset(_) => "aset",
            Document::Aes(_) => "aes",
            Document::Dacomplex(_) => "dacomplex",
            Document::Simplicial(_) => "simplicial",
            Document::Scheme(_) => "scheme",
        }
    }
}

/// A validated object.
#[derive(Clone, Debug)]
pub enum Object {
    Monoid(MonoidValue),
    ASet(ASet),
    Aes(ExactSequence),
    Complex(DaComplex),
    Simplicial(TruncSimplicialASet),
    Scheme(GluedScheme),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Monoid(_) => "monoid",
            Object::ASet(_) => "aset",
            Object::Aes(_) => "aes",
            Object::Complex(_) => "dacomplex",
            Object::Simplicial(_) => "simplicial",
            Object::Scheme(_) => "scheme",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub carrier: usize,
    pub degree: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { carrier: DEFAULT_CARRIER_BOUND, degree: DEFAULT_DEGREE_BOUND }
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Loaded monoids by name, plus the bounds used while loading.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub bounds: Bounds,
    monoids: BTreeMap<String, MonoidValue>,
}

impl Workspace {
    pub fn new(bounds: Bounds) -> Self {
        Workspace { bounds, monoids: BTreeMap::new() }
    }

    pub fn monoid(&self, name: &str) -> Option<&MonoidValue> {
        self.monoids.get(name)
    }

    pub fn names(&self) -> Vec<String> {
        self.monoids.keys().cloned().collect()
    }

    /// Add a monoid; a different monoid already under the name is an error.
    pub fn register(&mut self, m: MonoidValue) -> Result<()> {
        let name = m.name();
        if let Some(old) = self.monoids.get(&name) {
            if !same_monoid(old, &m) {
                return Err(Error::Invalid(format!("two different monoids are named {name}")));
            }
            return Ok(());
        }
        self.monoids.insert(name, m);
        Ok(())
    }

    pub fn load_path(&mut self, path: &Path) -> Result<Object> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let doc = parse_document(&text)?;
        self.load(&doc, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn load_str(&mut self, text: &str, dir: &Path) -> Result<Object> {
        let doc = parse_document(text)?;
        self.load(&doc, dir)
    }

    pub fn load(&mut self, doc: &Document, dir: &Path) -> Result<Object> {
        Ok(match doc {
            Document::FiniteTable(_) | Document::Monogenic(_) | Document::Affine(_) => {
                let m = self.monoid_of(doc)?;
                self.register(m.clone())?;
                Object::Monoid(m)
            }
            Document::Aset(d) => Object::ASet(self.aset(d, None, dir)?),
            Document::Aes(d) => Object::Aes(self.aes(d, dir)?),
            Document::Dacomplex(d) => Object::Complex(self.complex(d, dir)?),
            Document::Simplicial(d) => Object::Simplicial(self.simplicial(d, dir)?),
            Document::Scheme(d) => Object::Scheme(self.scheme(d)?),
        })
    }

    fn monoid_of(&self, doc: &Document) -> Result<MonoidValue> {
        match doc {
            Document::FiniteTable(d) => Ok(MonoidValue::Finite(Arc::new(finite_table(d, self.bounds.carrier)?))),
            Document::Monogenic(_) => Ok(MonoidValue::Monogenic),
            Document::Affine(d) => {
                let a = AffineMonoid::new(d.name.clone(), d.rank, d.generators.clone(), d.unit_group.clone(), d.monomial_ideal.clone(), d.degree_bound.unwrap_or(self.bounds.degree))?;
                Ok(MonoidValue::Affine(Arc::new(a)))
            }
            other => Err(Error::Invalid(format!("expected a monoid document, found {}", other.kind()))),
        }
    }

    /// Resolve a monoid reference: a registered name, `F1`, `F1[t]`, a path (with or without `.json`), or an inline document.
    pub fn resolve_monoid(&mut self, r: &MonoidRef, dir: &Path) -> Result<MonoidValue> {
        match r {
            MonoidRef::Inline(doc) => {
                let m = self.monoid_of(doc)?;
                self.register(m.clone())?;
                Ok(m)
            }
            MonoidRef::Name(name) => {
                if let Some(m) = self.monoids.get(name) {
                    return Ok(m.clone());
                }
                match name.as_str() {
                    "F1[t]" => return Ok(MonoidValue::Monogenic),
                    "F1" => {
                        let m = MonoidValue::Finite(Arc::new(FiniteMonoid::f1()));
                        self.register(m.clone())?;
                        return Ok(m);
                    }
                    _ => {}
                }
                let mut path = dir.join(name);
                if !path.is_file() {
                    path = dir.join(format!("{name}.json"));
                }
                if path.is_file() {
                    match self.load_path(&path)? {
                        Object::Monoid(m) => Ok(m),
                        o => Err(Error::Invalid(format!("{name} is a {} document, not a monoid", o.kind()))),
                    }
                } else {
                    Err(Error::Invalid(format!("unknown monoid {name}")))
                }
            }
        }
    }

    fn base_of(&mut self, r: Option<&MonoidRef>, inherited: Option<&Base>, dir: &Path) -> Result<Base> {
        match (r, inherited) {
            (Some(r), _) => match self.resolve_monoid(r, dir)? {
                MonoidValue::Finite(m) => Ok(Base::Finite(m)),
                MonoidValue::Monogenic => Ok(Base::Monogenic),
                MonoidValue::Affine(a) => Err(Error::UnsupportedBackend(format!("A-sets over the affine monoid {}", a.name))),
            },
            (None, Some(b)) => Ok(b.clone()),
            (None, None) => Err(Error::Invalid("no base monoid given".into())),
        }
    }

    pub fn aset(&mut self, d: &AsetDoc, inherited: Option<&Base>, dir: &Path) -> Result<ASet> {
        let base = self.base_of(d.base.as_ref(), inherited, dir)?;
        let name = d.name.clone().unwrap_or_else(|| "X".into());
        let gens = base.gen_names();
        for k in d.action.keys() {
            if !gens.contains(k) {
                return Err(Error::Invalid(format!("{name}: {k} is not a generator of {}", base.name())));
            }
        }
        let n = d.carrier.len();
        let mut gen_act = Vec::new();
        for g in &gens {
            let m = match d.action.get(g) {
                Some(v) => points(v, &d.carrier, &format!("{name}: action of {g}"))?,
                None => return Err(Error::Invalid(format!("{name}: no action given for generator {g}"))),
            };
            if m.len() != n {
                return Err(Error::Invalid(format!("{name}: action of {g} has {} entries for {n} points", m.len())));
            }
            gen_act.push(m);
        }
        ASet::new(name, base, d.carrier.clone(), gen_act)
    }

    fn aset_ref(&mut self, r: &AsetRef, inherited: Option<&Base>, dir: &Path) -> Result<ASet> {
        match r {
            AsetRef::Inline(d) => self.aset(d, inherited, dir),
            AsetRef::Path(p) => {
                let path = dir.join(p);
                let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                match parse_document(&text)? {
                    Document::Aset(d) => self.aset(&d, inherited, path.parent().unwrap_or(dir)),
                    other => Err(Error::Invalid(format!("{p} is a {} document, not an A-set", other.kind()))),
                }
            }
        }
    }

    fn aes(&mut self, d: &AesDoc, dir: &Path) -> Result<ExactSequence> {
        let base = d.base.as_ref().map(|b| self.base_of(Some(b), None, dir)).transpose()?;
        let x = self.aset_ref(&d.x, base.as_ref(), dir)?;
        let base = Some(base.unwrap_or_else(|| x.base.clone()));
        let y = self.aset_ref(&d.y, base.as_ref(), dir)?;
        let z = self.aset_ref(&d.z, base.as_ref(), dir)?;
        let f = points(&d.f, &y.names, "f")?;
        let g = points(&d.g, &z.names, "g")?;
        if f.len() != x.len() || g.len() != y.len() {
            return Err(Error::NotAES("maps have the wrong length".into()));
        }
        let seq = ExactSequence { x, y, z, f, g };
        seq.validate()?;
        Ok(seq)
    }

    fn levels(&mut self, base: Option<&MonoidRef>, levels: &[AsetRef], dir: &Path) -> Result<(Base, Vec<ASet>)> {
        let mut base = base.map(|b| self.base_of(Some(b), None, dir)).transpose()?;
        let mut out = Vec::new();
        for l in levels {
            let x = self.aset_ref(l, base.as_ref(), dir)?;
            base.get_or_insert_with(|| x.base.clone());
            out.push(x);
        }
        let base = base.ok_or_else(|| Error::Invalid("no levels and no base".into()))?;
        Ok((base, out))
    }

    fn complex(&mut self, d: &ComplexDoc, dir: &Path) -> Result<DaComplex> {
        let (base, levels) = self.levels(d.base.as_ref(), &d.levels, dir)?;
        let maps = |ms: &[Vec<PointRef>], nm: &str| -> Result<Vec<Vec<usize>>> {
            let mut ms: Vec<&[PointRef]> = ms.iter().map(|v| v.as_slice()).collect();
            if ms.len() + 1 == levels.len() {
                ms.insert(0, &[]);
            }
            if ms.len() != levels.len() {
                return Err(Error::NotAComplex(format!("{nm} needs one map per level")));
            }
            ms.iter()
                .enumerate()
                .map(|(k, v)| if k == 0 && v.is_empty() { Ok(vec![0; levels[0].len()]) } else if k == 0 { points(v, &levels[0].names, nm) } else { points(v, &levels[k - 1].names, nm) })
                .collect()
        };
        let r = maps(&d.r, "r")?;
        let s = maps(&d.s, "s")?;
        DaComplex::new(base, d.low, levels, r, s)
    }

    fn simplicial(&mut self, d: &SimplicialDoc, dir: &Path) -> Result<TruncSimplicialASet> {
        let (base, levels) = self.levels(d.base.as_ref(), &d.levels, dir)?;
        let top = levels.len().saturating_sub(1);
        if d.faces.len() != levels.len() || d.degeneracies.len() != levels.len() {
            return Err(Error::Invalid("faces and degeneracies need one entry per level".into()));
        }
        let mut faces = Vec::new();
        for (n, fs) in d.faces.iter().enumerate() {
            if n == 0 {
                faces.push(vec![]);
                continue;
            }
            faces.push(fs.iter().map(|v| points(v, &levels[n - 1].names, "face")).collect::<Result<Vec<_>>>()?);
        }
        let mut degens = Vec::new();
        for (n, ss) in d.degeneracies.iter().enumerate() {
            if n == top {
                degens.push(vec![]);
                continue;
            }
            degens.push(ss.iter().map(|v| points(v, &levels[n + 1].names, "degeneracy")).collect::<Result<Vec<_>>>()?);
        }
        TruncSimplicialASet::new(base, levels, faces, degens)
    }

    fn scheme(&self, d: &SchemeDoc) -> Result<GluedScheme> {
        let name = d.name.clone().unwrap_or_else(|| "X".into());
        let charts = d
            .charts
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let m = AffineMonoid::new(format!("{name}.U{i}"), d.lattice_rank, c.generators.clone(), d.unit_group.clone(), None, self.bounds.degree)?;
                Ok(Chart { monoid: m, torsion_units: c.torsion_units.unwrap_or(true) })
            })
            .collect::<Result<Vec<_>>>()?;
        let glue = match d.glue {
            GlueDoc::Generic => Glue::Generic,
            GlueDoc::Fan => Glue::Fan,
        };
        GluedScheme::new(name, d.lattice_rank, d.unit_group.clone(), charts, glue)
    }
}

fn same_monoid(a: &MonoidValue, b: &MonoidValue) -> bool {
    match (a, b) {
        (MonoidValue::Finite(x), MonoidValue::Finite(y)) => x == y,
        (MonoidValue::Monogenic, MonoidValue::Monogenic) => true,
        (MonoidValue::Affine(x), MonoidValue::Affine(y)) => x == y,
        _ => false,
    }
}

fn finite_table(d: &FiniteTableDoc, default_bound: usize) -> Result<FiniteMonoid> {
    match (&d.elements, &d.table, &d.relations) {
        (Some(elements), Some(table), None) => match &d.generators {
            Some(gens) => {
                let idx = gens
                    .iter()
                    .map(|g| elements.iter().position(|e| e == g).ok_or_else(|| Error::Invalid(format!("{}: generator {g} is not an element", d.name))))
                    .collect::<Result<Vec<_>>>()?;
                FiniteMonoid::new(d.name.clone(), elements.clone(), table.clone(), idx)
            }
            None => FiniteMonoid::from_table(d.name.clone(), elements.clone(), table.clone()),
        },
        (None, None, Some(rels)) => {
            let gens = d.generators.clone().unwrap_or_default();
            build_from_presentation(&d.name, &gens, rels, d.bound.unwrap_or(default_bound))
        }
        _ => Err(Error::Invalid(format!("{}: give either elements and table, or generators and relations", d.name))),
    }
}

fn points(v: &[PointRef], names: &[String], what: &str) -> Result<Vec<usize>> {
    v.iter()
        .map(|p| match p {
            PointRef::Index(i) if *i < names.len() => Ok(*i),
            PointRef::Index(i) => Err(Error::Invalid(format!("{what}: index {i} is out of range"))),
            PointRef::Name(s) => names.iter().position(|n| n == s).ok_or_else(|| Error::Invalid(format!("{what}: unknown point {s}"))),
        })
        .collect()
}

/// The document describing a finite monoid by its table.
pub fn monoid_document(m: &FiniteMonoid) -> Document {
    Document::FiniteTable(FiniteTableDoc {
        name: m.name.clone(),
        elements: Some(m.elements.clone()),
        table: Some(m.table.clone()),
        generators: Some(m.generators.iter().map(|&g| m.elements[g].clone()).collect()),
        relations: None,
        bound: None,
    })
}

/// The document describing an A-set, with its base by name.
pub fn aset_doc(x: &ASet) -> AsetDoc {
    let action = x.base.gen_names().into_iter().zip(&x.gen_act).map(|(g, m)| (g, m.iter().map(|&v| PointRef::Name(x.names[v].clone())).collect())).collect();
    AsetDoc { name: Some(x.name.clone()), base: Some(MonoidRef::Name(x.base.name())), carrier: x.names.clone(), action }
}

pub fn aset_document(x: &ASet) -> Document {
    Document::Aset(aset_doc(x))
}

/// A complex with its levels inline and the base named once.
pub fn complex_document(c: &DaComplex) -> Document {
    let named = |k: usize, m: &[usize]| -> Vec<PointRef> {
        if k == 0 {
            return vec![];
        }
        m.iter().map(|&v| PointRef::Name(c.levels[k - 1].names[v].clone())).collect()
    };
    Document::Dacomplex(ComplexDoc {
        base: Some(MonoidRef::Name(c.base.name())),
        low: c.low,
        levels: c.levels.iter().map(|x| AsetRef::Inline(Box::new(AsetDoc { base: None, ..aset_doc(x) }))).collect(),
        r: c.r.iter().enumerate().map(|(k, m)| named(k, m)).collect(),
        s: c.s.iter().enumerate().map(|(k, m)| named(k, m)).collect(),
    })
}

pub fn simplicial_document(s: &TruncSimplicialASet) -> Document {
    let named = |level: &ASet, m: &[usize]| -> Vec<PointRef> { m.iter().map(|&v| PointRef::Name(level.names[v].clone())).collect() };
    let top = s.top();
    Document::Simplicial(SimplicialDoc {
        base: Some(MonoidRef::Name(s.base.name())),
        levels: s.levels.iter().map(|x| AsetRef::Inline(Box::new(AsetDoc { base: None, ..aset_doc(x) }))).collect(),
        faces: (0..=top).map(|n| if n == 0 { vec![] } else { s.faces[n].iter().map(|m| named(&s.levels[n - 1], m)).collect() }).collect(),
        degeneracies: (0..=top).map(|n| if n == top { vec![] } else { s.degens[n].iter().map(|m| named(&s.levels[n + 1], m)).collect() }).collect(),
    })
}

/// Resolve `p` against the current directory when relative.
pub fn absolute(p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        std::env::current_dir().map(|d| d.join(p)).unwrap_or_else(|_| p.to_path_buf())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const IDEM2: &str = r#"{"kind":"finite-table","name":"idem2","generators":["x","y"],"relations":["x^2=x","y^2=y"]}"#;

    #[test]
    fn presentation_and_table_agree() {
        let mut ws = Workspace::default();
        let Object::Monoid(m) = ws.load_str(IDEM2, Path::new(".")).unwrap() else { panic!() };
        let m = m.as_finite().unwrap().clone();
        assert_eq!(m.len(), 5);
        let doc = serde_json::to_string(&monoid_document(&m)).unwrap();
        let mut ws2 = Workspace::default();
        let Object::Monoid(m2) = ws2.load_str(&doc, Path::new(".")).unwrap() else { panic!() };
        assert_eq!(**m2.as_finite().unwrap(), *m);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = r#"{"kind":"monogenic","colour":"red"}"#;
        assert!(matches!(parse_document(bad), Err(Error::Parse(_))));
        assert!(matches!(parse_document("not json"), Err(Error::Parse(_))));
        assert!(matches!(parse_document(r#"{"kind":"sheaf"}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn aset_by_name_and_round_trip() {
        let mut ws = Workspace::default();
        ws.load_str(IDEM2, Path::new(".")).unwrap();
        let text = r#"{"kind":"aset","base":"idem2","carrier":["*","p","q"],"action":{"x":["*","p","q"],"y":[0,1,0]}}"#;
        let Object::ASet(x) = ws.load_str(text, Path::new(".")).unwrap() else { panic!() };
        assert_eq!(x.len(), 3);
        let again = serde_json::to_string(&aset_document(&x)).unwrap();
        let Object::ASet(y) = ws.load_str(&again, Path::new(".")).unwrap() else { panic!() };
        assert_eq!(x.gen_act, y.gen_act);
        let moved = r#"{"kind":"aset","base":"idem2","carrier":["*","p"],"action":{"x":["p","p"],"y":[0,1]}}"#;
        assert!(matches!(ws.load_str(moved, Path::new(".")), Err(Error::Invalid(_))));
    }

    #[test]
    fn scheme_document() {
        let text = r#"{"kind":"scheme","lattice_rank":2,"charts":[{"generators":[[1,0],[0,1]]},{"generators":[[-1,0],[-1,1]]},{"generators":[[0,-1],[1,-1]]}],"glue":"fan"}"#;
        let mut ws = Workspace::default();
        let Object::Scheme(s) = ws.load_str(text, Path::new(".")).unwrap() else { panic!() };
        assert_eq!(s.pic().unwrap().pic.to_string(), "Z");
    }
}
