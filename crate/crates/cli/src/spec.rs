//! The JSON spec format: raw serde types, validation into engine objects,
//! and the reverse direction for `gallery --emit`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use catfourier::enriched::{same_category, Generator};
use catfourier::kernel::Witnesses;
use catfourier::linalg::{format_rational, parse_rational, SparseVec};
use catfourier::{Antipode, FinVCat, Kernel, Matrix, Module, PromonoidalStructure, Rational, Slot, Variance};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const MAX_OBJECTS: usize = 16;
pub const MAX_HOM_DIM: usize = 8;
pub const MAX_P_DIM: usize = 64;

/// A matrix entry: `"n/d"`, `"n"`, or a plain integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Str(String),
}

/// Row-major rows of entries.
pub type MatrixSpec = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpec {
    #[serde(default = "default_scalar")]
    pub scalar: String,
    #[serde(default)]
    pub categories: Vec<CategorySpec>,
    #[serde(default)]
    pub functors: Vec<ModuleSpec>,
    #[serde(default)]
    pub promonoidal: Vec<PromonoidalSpec>,
    #[serde(default)]
    pub antipodes: Vec<AntipodeSpec>,
    #[serde(default)]
    pub kernels: Vec<KernelSpec>,
    #[serde(default)]
    pub witnesses: Vec<WitnessSpec>,
}

fn default_scalar() -> String {
    "rational".into()
}

impl Default for RawSpec {
    fn default() -> Self {
        RawSpec {
            scalar: default_scalar(),
            categories: vec![],
            functors: vec![],
            promonoidal: vec![],
            antipodes: vec![],
            kernels: vec![],
            witnesses: vec![],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub name: String,
    pub objects: Vec<String>,
    /// Shortcut: `hom(a,b) = δ_ab k`; `hom`, `comp` and `identities` are then
    /// ignored.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub discrete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom: Option<Vec<Vec<usize>>>,
    /// Missing triples compose to zero.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comp: Vec<CompEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<VectorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorSpec>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompEntry {
    pub at: [String; 3],
    pub matrix: MatrixSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorEntry {
    pub object: String,
    pub vector: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub src: String,
    pub dst: String,
    pub vector: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarianceSpec {
    Co,
    Contra,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlotSpec {
    pub category: String,
    pub variance: VarianceSpec,
}

/// A module of any arity; functors are the one-slot covariant case.
/// Discrete slots get identity actions unless overridden.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub name: String,
    pub slots: Vec<SlotSpec>,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub actions: Vec<ActionSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub slot: usize,
    /// Object tuple with slot `slot` at the source `a` of the morphisms.
    pub from: Vec<String>,
    /// The target `b` of the morphisms in that slot.
    pub to: String,
    pub matrix: MatrixSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PromonoidalSpec {
    pub name: String,
    pub category: String,
    pub p: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic_witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomMapEntry {
    pub at: [String; 2],
    pub matrix: MatrixSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntipodeSpec {
    pub name: String,
    pub category: String,
    pub object_map: Vec<String>,
    /// Omitted for discrete categories.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hom_maps: Vec<HomMapEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<HomMapEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<VectorEntry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub data: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<KernelWitnessSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelWitnessSpec {
    pub product: String,
    pub unit: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSpec {
    pub name: String,
    pub matrices: Vec<MatrixSpec>,
}

/// A validated spec with every name resolved.
#[derive(Clone, Debug)]
pub struct SpecDocument {
    pub raw: RawSpec,
    pub categories: BTreeMap<String, Arc<FinVCat>>,
    pub modules: BTreeMap<String, Arc<Module>>,
    pub antipodes: BTreeMap<String, Antipode>,
    pub structures: BTreeMap<String, Structure>,
    pub kernels: BTreeMap<String, Kernel>,
}

#[derive(Clone, Debug)]
pub struct Structure {
    pub ps: PromonoidalStructure,
    pub antipode: Option<String>,
}

impl SpecDocument {
    /// One-slot covariant modules over `cat`, in name order.
    pub fn functors_on(&self, cat: &Arc<FinVCat>) -> Vec<Arc<Module>> {
        self.modules
            .values()
            .filter(|m| m.arity() == 1 && m.slot(0).same(&Slot::co(cat)))
            .cloned()
            .collect()
    }

    pub fn module(&self, name: &str) -> Result<&Arc<Module>, CliError> {
        self.modules.get(name).ok_or_else(|| CliError::Unresolved { pointer: String::new(), name: name.into() })
    }

    pub fn kernel(&self, name: &str) -> Result<&Kernel, CliError> {
        self.kernels.get(name).ok_or_else(|| CliError::Unresolved { pointer: String::new(), name: name.into() })
    }

    /// The structure whose base carries `f`, preferring the first by name.
    pub fn structure_for(&self, f: &Module) -> Option<&Structure> {
        self.structures.values().find(|s| f.arity() == 1 && f.slot(0).same(&Slot::co(s.ps.base())))
    }
}

pub fn load_spec(path: &Path) -> Result<SpecDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_spec(&text)
}

pub fn parse_spec(text: &str) -> Result<SpecDocument, CliError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| CliError::Parse {
        offset: if e.is_eof() { text.len() } else { byte_offset(text, e.line(), e.column()) },
        message: e.to_string(),
    })?;
    resolve(raw)
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

fn invalid(pointer: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Invalid { pointer: pointer.into(), message: message.into() }
}

fn unresolved(pointer: impl Into<String>, name: &str) -> CliError {
    CliError::Unresolved { pointer: pointer.into(), name: name.into() }
}

fn parse_scalar(ptr: &str, s: &Scalar) -> Result<Rational, CliError> {
    match s {
        Scalar::Int(i) => Ok(Rational::from_integer((*i).into())),
        Scalar::Str(t) => parse_rational(t).map_err(|e| invalid(ptr, e.to_string())),
    }
}

fn parse_matrix(ptr: &str, m: &MatrixSpec, rows: usize, cols: usize) -> Result<Matrix, CliError> {
    let got_rows = m.len();
    if got_rows != rows {
        return Err(invalid(ptr, format!("expected {rows}x{cols} matrix, got {got_rows} rows")));
    }
    let mut entries = Vec::new();
    for (i, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(invalid(format!("{ptr}/{i}"), format!("expected {cols} entries, got {}", row.len())));
        }
        for (j, x) in row.iter().enumerate() {
            let v = parse_scalar(&format!("{ptr}/{i}/{j}"), x)?;
            if v != Rational::from_integer(0.into()) {
                entries.push((i, j, v));
            }
        }
    }
    Ok(Matrix::from_triplets(rows, cols, entries))
}

fn parse_vector(ptr: &str, v: &[Scalar], len: usize) -> Result<SparseVec, CliError> {
    if v.len() != len {
        return Err(invalid(ptr, format!("expected a vector of length {len}, got {}", v.len())));
    }
    let mut out = Vec::new();
    for (i, x) in v.iter().enumerate() {
        let r = parse_scalar(&format!("{ptr}/{i}"), x)?;
        if r != Rational::from_integer(0.into()) {
            out.push((i, r));
        }
    }
    Ok(out)
}

fn object(ptr: &str, cat: &FinVCat, name: &str) -> Result<usize, CliError> {
    cat.object_index(name).map_err(|_| unresolved(ptr, name))
}

fn engine(ptr: &str, e: catfourier::Error) -> CliError {
    invalid(ptr, e.to_string())
}

fn resolve(raw: RawSpec) -> Result<SpecDocument, CliError> {
    if raw.scalar != "rational" {
        return Err(invalid("/scalar", format!("unsupported scalar `{}`", raw.scalar)));
    }
    let mut categories = BTreeMap::new();
    for (i, c) in raw.categories.iter().enumerate() {
        let ptr = format!("/categories/{i}");
        if categories.contains_key(&c.name) {
            return Err(invalid(format!("{ptr}/name"), format!("duplicate category `{}`", c.name)));
        }
        categories.insert(c.name.clone(), Arc::new(resolve_category(&ptr, c)?));
    }
    let mut modules = BTreeMap::new();
    for (i, m) in raw.functors.iter().enumerate() {
        let ptr = format!("/functors/{i}");
        if modules.contains_key(&m.name) {
            return Err(invalid(format!("{ptr}/name"), format!("duplicate functor `{}`", m.name)));
        }
        modules.insert(m.name.clone(), Arc::new(resolve_module(&ptr, m, &categories)?));
    }
    let mut antipodes = BTreeMap::new();
    for (i, a) in raw.antipodes.iter().enumerate() {
        let ptr = format!("/antipodes/{i}");
        antipodes.insert(a.name.clone(), resolve_antipode(&ptr, a, &categories)?);
    }
    let mut witnesses = BTreeMap::new();
    for w in &raw.witnesses {
        witnesses.insert(w.name.clone(), w);
    }
    let mut structures = BTreeMap::new();
    for (i, p) in raw.promonoidal.iter().enumerate() {
        let ptr = format!("/promonoidal/{i}");
        let cat = categories.get(&p.category).ok_or_else(|| unresolved(format!("{ptr}/category"), &p.category))?;
        let pm = modules.get(&p.p).ok_or_else(|| unresolved(format!("{ptr}/p"), &p.p))?;
        if let Some((idx, d)) = pm.dims().iter().enumerate().find(|(_, &d)| d > MAX_P_DIM) {
            return Err(CliError::Oversized(format!("{ptr}/p: p dimension {d} at tuple {idx} exceeds {MAX_P_DIM}")));
        }
        let j = match &p.j {
            Some(n) => Some(modules.get(n).ok_or_else(|| unresolved(format!("{ptr}/j"), n))?.as_ref().clone()),
            None => None,
        };
        let mut ps = PromonoidalStructure::new(cat, pm.as_ref().clone(), j).map_err(|e| engine(&ptr, e))?;
        if let Some(a) = &p.antipode {
            let s = antipodes.get(a).ok_or_else(|| unresolved(format!("{ptr}/antipode"), a))?;
            if !same_category(s.base(), cat) {
                return Err(invalid(format!("{ptr}/antipode"), "antipode lives on another category"));
            }
        }
        if let Some(w) = &p.cyclic_witness {
            let ws = witnesses.get(w).ok_or_else(|| unresolved(format!("{ptr}/cyclic_witness"), w))?;
            let s = p
                .antipode
                .as_ref()
                .and_then(|a| antipodes.get(a))
                .ok_or_else(|| invalid(format!("{ptr}/cyclic_witness"), "a cyclic witness needs an antipode"))?;
            let n = cat.len();
            let sm = s.object_map();
            let mut mats = Vec::with_capacity(n * n * n);
            for t in 0..n * n * n {
                let (a, b, c) = (t / (n * n), (t / n) % n, t % n);
                let (rows, cols) = (ps.p_dim(b, c, sm[a]), ps.p_dim(a, b, sm[c]));
                let m = ws
                    .matrices
                    .get(t)
                    .ok_or_else(|| invalid(format!("{ptr}/cyclic_witness"), "one matrix per triple is required"))?;
                mats.push(parse_matrix(&format!("/witnesses/{w}/matrices/{t}"), m, rows, cols)?);
            }
            ps = ps.with_cyclic_witness(mats);
        }
        structures.insert(p.name.clone(), Structure { ps, antipode: p.antipode.clone() });
    }
    let mut kernels = BTreeMap::new();
    for (i, k) in raw.kernels.iter().enumerate() {
        let ptr = format!("/kernels/{i}");
        let src = structures.get(&k.source).ok_or_else(|| unresolved(format!("{ptr}/source"), &k.source))?;
        let tgt = structures.get(&k.target).ok_or_else(|| unresolved(format!("{ptr}/target"), &k.target))?;
        let data = modules.get(&k.data).ok_or_else(|| unresolved(format!("{ptr}/data"), &k.data))?;
        let mut kernel = Kernel::new(k.name.clone(), src.ps.clone(), tgt.ps.clone(), data.as_ref().clone())
            .map_err(|e| engine(&ptr, e))?;
        if let Some(w) = &k.witnesses {
            kernel = kernel.with_witnesses(resolve_kernel_witnesses(&ptr, w, &witnesses)?);
        }
        kernels.insert(k.name.clone(), kernel);
    }
    Ok(SpecDocument { raw, categories, modules, antipodes, structures, kernels })
}

fn resolve_kernel_witnesses(
    ptr: &str,
    w: &KernelWitnessSpec,
    witnesses: &BTreeMap<String, &WitnessSpec>,
) -> Result<Witnesses, CliError> {
    // Shapes are checked against the computed coends when the kernel is checked.
    let read = |name: &str, field: &str| -> Result<Vec<Matrix>, CliError> {
        let ws = witnesses.get(name).ok_or_else(|| unresolved(format!("{ptr}/witnesses/{field}"), name))?;
        ws.matrices
            .iter()
            .enumerate()
            .map(|(t, m)| {
                let rows = m.len();
                let cols = m.first().map_or(0, Vec::len);
                parse_matrix(&format!("/witnesses/{name}/matrices/{t}"), m, rows, cols)
            })
            .collect()
    };
    Ok(Witnesses { product: read(&w.product, "product")?, unit: read(&w.unit, "unit")? })
}

fn resolve_category(ptr: &str, c: &CategorySpec) -> Result<FinVCat, CliError> {
    let n = c.objects.len();
    if n == 0 {
        return Err(invalid(format!("{ptr}/objects"), "a category needs at least one object"));
    }
    if n > MAX_OBJECTS {
        return Err(CliError::Oversized(format!("{ptr}/objects: {n} objects exceed {MAX_OBJECTS}")));
    }
    if c.discrete {
        return Ok(FinVCat::discrete(c.name.clone(), c.objects.clone()));
    }
    let hom_rows = c.hom.as_ref().ok_or_else(|| invalid(format!("{ptr}/hom"), "missing hom table"))?;
    if hom_rows.len() != n || hom_rows.iter().any(|r| r.len() != n) {
        return Err(invalid(format!("{ptr}/hom"), format!("hom table must be {n}x{n}")));
    }
    let hom: Vec<usize> = hom_rows.iter().flatten().copied().collect();
    if let Some(h) = hom.iter().find(|&&h| h > MAX_HOM_DIM) {
        return Err(CliError::Oversized(format!("{ptr}/hom: hom dimension {h} exceeds {MAX_HOM_DIM}")));
    }
    let h = |a: usize, b: usize| hom[a * n + b];
    let proto = FinVCat::discrete("proto", c.objects.clone());
    let mut comp: Vec<Matrix> = (0..n * n * n)
        .map(|t| {
            let (a, b, cc) = (t / (n * n), (t / n) % n, t % n);
            Matrix::zeros(h(a, cc), h(b, cc) * h(a, b))
        })
        .collect();
    for (i, e) in c.comp.iter().enumerate() {
        let p = format!("{ptr}/comp/{i}");
        let a = object(&format!("{p}/at/0"), &proto, &e.at[0])?;
        let b = object(&format!("{p}/at/1"), &proto, &e.at[1])?;
        let cc = object(&format!("{p}/at/2"), &proto, &e.at[2])?;
        let (rows, cols) = (h(a, cc), h(b, cc) * h(a, b));
        comp[(a * n + b) * n + cc] = parse_matrix(&format!("{p}/matrix"), &e.matrix, rows, cols).map_err(|err| {
            match err {
                CliError::Invalid { pointer, message } => CliError::Invalid {
                    pointer,
                    message: format!("comp({},{},{}): {message}", e.at[0], e.at[1], e.at[2]),
                },
                other => other,
            }
        })?;
    }
    let mut ident: Vec<Option<Matrix>> = vec![None; n];
    for (i, e) in c.identities.iter().enumerate() {
        let p = format!("{ptr}/identities/{i}");
        let a = object(&format!("{p}/object"), &proto, &e.object)?;
        let v = parse_vector(&format!("{p}/vector"), &e.vector, h(a, a))?;
        ident[a] = Some(Matrix::column_vector(h(a, a), &v));
    }
    let ident = ident
        .into_iter()
        .enumerate()
        .map(|(a, m)| m.ok_or_else(|| invalid(format!("{ptr}/identities"), format!("no identity for `{}`", c.objects[a]))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cat = FinVCat::new(c.name.clone(), c.objects.clone(), hom.clone(), comp, ident)
        .map_err(|e| engine(ptr, e))?;
    if let Some(gens) = &c.generators {
        let mut out = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            let p = format!("{ptr}/generators/{i}");
            let src = object(&format!("{p}/src"), &proto, &g.src)?;
            let dst = object(&format!("{p}/dst"), &proto, &g.dst)?;
            let vector = parse_vector(&format!("{p}/vector"), &g.vector, h(src, dst))?;
            out.push(Generator { src, dst, vector });
        }
        cat = cat.with_generators(out).map_err(|e| engine(ptr, e))?;
    }
    Ok(cat)
}

fn resolve_module(ptr: &str, m: &ModuleSpec, cats: &BTreeMap<String, Arc<FinVCat>>) -> Result<Module, CliError> {
    let mut slots = Vec::with_capacity(m.slots.len());
    for (i, s) in m.slots.iter().enumerate() {
        let cat = cats.get(&s.category).ok_or_else(|| unresolved(format!("{ptr}/slots/{i}/category"), &s.category))?;
        slots.push(match s.variance {
            VarianceSpec::Co => Slot::co(cat),
            VarianceSpec::Contra => Slot::contra(cat),
        });
    }
    let mut module = Module::new(m.name.clone(), slots.clone(), m.dims.clone()).map_err(|e| engine(&format!("{ptr}/dims"), e))?;
    for (s, slot) in slots.iter().enumerate() {
        if slot.cat.is_discrete() {
            for idx in 0..module.len() {
                let a = module.slot_obj(idx, s);
                let d = module.dim(idx);
                module.set_action(s, idx, a, Matrix::identity(d)).map_err(|e| engine(ptr, e))?;
            }
        }
    }
    for (i, act) in m.actions.iter().enumerate() {
        let p = format!("{ptr}/actions/{i}");
        if act.slot >= slots.len() {
            return Err(invalid(format!("{p}/slot"), format!("slot {} out of range", act.slot)));
        }
        if act.from.len() != slots.len() {
            return Err(invalid(format!("{p}/from"), format!("expected {} object names", slots.len())));
        }
        let tuple = act
            .from
            .iter()
            .enumerate()
            .map(|(t, name)| object(&format!("{p}/from/{t}"), &slots[t].cat, name))
            .collect::<Result<Vec<_>, _>>()?;
        let b = object(&format!("{p}/to"), &slots[act.slot].cat, &act.to)?;
        let idx = module.index(&tuple);
        if slots[act.slot].cat.hom_dim(tuple[act.slot], b) == 0 {
            return Err(invalid(format!("{p}/to"), "there are no morphisms to act by"));
        }
        let (rows, cols) = module.action_shape(act.slot, idx, b);
        let mat = parse_matrix(&format!("{p}/matrix"), &act.matrix, rows, cols)?;
        module.set_action(act.slot, idx, b, mat).map_err(|e| engine(&p, e))?;
    }
    Ok(module)
}

fn resolve_antipode(ptr: &str, a: &AntipodeSpec, cats: &BTreeMap<String, Arc<FinVCat>>) -> Result<Antipode, CliError> {
    let cat = cats.get(&a.category).ok_or_else(|| unresolved(format!("{ptr}/category"), &a.category))?;
    let n = cat.len();
    if a.object_map.len() != n {
        return Err(invalid(format!("{ptr}/object_map"), format!("expected {n} objects")));
    }
    let map = a
        .object_map
        .iter()
        .enumerate()
        .map(|(i, o)| object(&format!("{ptr}/object_map/{i}"), cat, o))
        .collect::<Result<Vec<_>, _>>()?;
    if cat.is_discrete() && a.hom_maps.is_empty() {
        return Antipode::discrete_involution(cat, map).map_err(|e| engine(ptr, e));
    }
    let entries = |field: &str, list: &[HomMapEntry], shape: &dyn Fn(usize, usize) -> (usize, usize)| {
        let mut out: Vec<Matrix> = (0..n * n)
            .map(|t| {
                let (r, c) = shape(t / n, t % n);
                Matrix::zeros(r, c)
            })
            .collect();
        for (i, e) in list.iter().enumerate() {
            let p = format!("{ptr}/{field}/{i}");
            let x = object(&format!("{p}/at/0"), cat, &e.at[0])?;
            let y = object(&format!("{p}/at/1"), cat, &e.at[1])?;
            let (r, c) = shape(x, y);
            out[x * n + y] = parse_matrix(&format!("{p}/matrix"), &e.matrix, r, c)?;
        }
        Ok::<_, CliError>(out)
    };
    let hom_maps = entries("hom_maps", &a.hom_maps, &|x, y| (cat.hom_dim(map[y], map[x]), cat.hom_dim(x, y)))?;
    let nu = match &a.nu {
        Some(list) => Some(entries("nu", list, &|x, y| (cat.hom_dim(map[y], x), cat.hom_dim(map[x], y)))?),
        None => None,
    };
    let u = match &a.u {
        Some(list) => {
            let mut out = vec![Vec::new(); n];
            for (i, e) in list.iter().enumerate() {
                let p = format!("{ptr}/u/{i}");
                let x = object(&format!("{p}/object"), cat, &e.object)?;
                out[x] = parse_vector(&format!("{p}/vector"), &e.vector, cat.hom_dim(map[map[x]], x))?;
            }
            Some(out)
        }
        None => None,
    };
    Antipode::new(cat, map, hom_maps, nu, u).map_err(|e| engine(ptr, e))
}

// ---------------------------------------------------------------------------
// Emitting engine objects as a spec.

fn matrix_spec(m: &Matrix) -> MatrixSpec {
    m.to_dense()
        .into_iter()
        .map(|row| {
            row.iter().map(|x| Scalar::Str(format_rational(x))).collect()
        })
        .collect()
}

fn vector_spec(v: &SparseVec, len: usize) -> Vec<Scalar> {
    let m = Matrix::column_vector(len, v);
    matrix_spec(&m).into_iter().map(|mut r| r.remove(0)).collect()
}

/// Accumulates engine objects into a [`RawSpec`], deduplicating categories
/// by name and structure.
#[derive(Default)]
pub struct SpecBuilder {
    raw: RawSpec,
    modules: Vec<Module>,
}

impl SpecBuilder {
    pub fn new() -> Self {
        SpecBuilder::default()
    }

    pub fn category(&mut self, c: &FinVCat) -> String {
        let spec = category_spec(c);
        if let Some(existing) = self.raw.categories.iter().find(|e| e.name == spec.name) {
            if *existing == spec {
                return spec.name;
            }
            let name = format!("{}#{}", spec.name, self.raw.categories.len());
            self.raw.categories.push(CategorySpec { name: name.clone(), ..spec });
            return name;
        }
        let name = spec.name.clone();
        self.raw.categories.push(spec);
        name
    }

    /// Adds a module under a unique name and returns that name.
    pub fn module(&mut self, m: &Module) -> String {
        if let Some(pos) = self.modules.iter().position(|e| e == m) {
            return self.raw.functors[pos].name.clone();
        }
        let slots: Vec<SlotSpec> = m
            .slots()
            .iter()
            .map(|s| SlotSpec {
                category: self.category(&s.cat),
                variance: match s.variance {
                    Variance::Covariant => VarianceSpec::Co,
                    Variance::Contravariant => VarianceSpec::Contra,
                },
            })
            .collect();
        let mut name = m.name().to_string();
        let mut k = 2;
        while self.raw.functors.iter().any(|f| f.name == name) {
            name = format!("{}#{k}", m.name());
            k += 1;
        }
        let mut actions = Vec::new();
        for s in 0..m.arity() {
            let discrete = m.slot(s).cat.is_discrete();
            for (idx, b, mat) in m.action_entries(s) {
                let a = m.slot_obj(idx, s);
                if discrete && a == b && mat.is_identity() {
                    continue;
                }
                actions.push(ActionSpec {
                    slot: s,
                    from: m.tuple_names(idx),
                    to: m.slot(s).cat.objects()[b].clone(),
                    matrix: matrix_spec(mat),
                });
            }
        }
        self.raw.functors.push(ModuleSpec { name: name.clone(), slots, dims: m.dims().to_vec(), actions });
        self.modules.push(m.clone());
        name
    }

    pub fn antipode(&mut self, name: &str, s: &Antipode) -> String {
        let c = s.base();
        let category = self.category(c);
        let n = c.len();
        let names = c.objects();
        let object_map = s.object_map().iter().map(|&o| names[o].clone()).collect();
        let (hom_maps, nu, u) = if c.is_discrete() {
            (vec![], None, None)
        } else {
            let entry = |x: usize, y: usize, m: &Matrix| HomMapEntry { at: [names[x].clone(), names[y].clone()], matrix: matrix_spec(m) };
            let pairs = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
            let hom_maps = pairs().filter(|&(x, y)| c.hom_dim(x, y) > 0).map(|(x, y)| entry(x, y, s.hom_map(x, y))).collect();
            let nu = s.nu().map(|nu| {
                pairs().filter(|&(x, y)| nu[x * n + y].rows() * nu[x * n + y].cols() > 0).map(|(x, y)| entry(x, y, &nu[x * n + y])).collect()
            });
            let u = s.u().map(|u| {
                (0..n)
                    .map(|x| VectorEntry {
                        object: names[x].clone(),
                        vector: vector_spec(&u[x], c.hom_dim(s.apply(s.apply(x)), x)),
                    })
                    .collect()
            });
            (hom_maps, nu, u)
        };
        self.raw.antipodes.push(AntipodeSpec { name: name.into(), category, object_map, hom_maps, nu, u });
        name.into()
    }

    pub fn promonoidal(&mut self, name: &str, ps: &PromonoidalStructure, antipode: Option<&str>) -> String {
        let category = self.category(ps.base());
        let p = self.module(ps.p());
        let j = ps.j().map(|j| self.module(j));
        self.raw.promonoidal.push(PromonoidalSpec {
            name: name.into(),
            category,
            p,
            j,
            antipode: antipode.map(String::from),
            cyclic_witness: None,
        });
        name.into()
    }

    pub fn kernel(&mut self, k: &Kernel, source: &str, target: &str) -> String {
        let data = self.module(k.data());
        self.raw.kernels.push(KernelSpec {
            name: k.name().into(),
            source: source.into(),
            target: target.into(),
            data,
            witnesses: None,
        });
        k.name().into()
    }

    pub fn finish(self) -> RawSpec {
        self.raw
    }
}

fn category_spec(c: &FinVCat) -> CategorySpec {
    let names = c.objects();
    if c.is_discrete() && !c.has_explicit_generators() {
        return CategorySpec {
            name: c.name().into(),
            objects: names.to_vec(),
            discrete: true,
            hom: None,
            comp: vec![],
            identities: vec![],
            generators: None,
        };
    }
    let n = c.len();
    let hom = (0..n).map(|a| (0..n).map(|b| c.hom_dim(a, b)).collect()).collect();
    let mut comp = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let m = c.comp(a, b, cc);
                if !m.is_zero() {
                    comp.push(CompEntry { at: [names[a].clone(), names[b].clone(), names[cc].clone()], matrix: matrix_spec(m) });
                }
            }
        }
    }
    let identities = (0..n)
        .map(|a| VectorEntry { object: names[a].clone(), vector: vector_spec(&c.ident(a).column(0), c.hom_dim(a, a)) })
        .collect();
    let generators = c.has_explicit_generators().then(|| {
        c.generators()
            .iter()
            .map(|g| GeneratorSpec {
                src: names[g.src].clone(),
                dst: names[g.dst].clone(),
                vector: vector_spec(&g.vector, c.hom_dim(g.src, g.dst)),
            })
            .collect()
    });
    CategorySpec { name: c.name().into(), objects: names.to_vec(), discrete: false, hom: Some(hom), comp, identities, generators }
}
