use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{same_category, FinVCat, Generator};
use super::equation_record;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::report::{anchors, CheckRecord, EvidenceLevel, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        }
    }
}

/// One argument of a module: a category together with the variance of the
/// argument.
#[derive(Clone)]
pub struct Slot {
    pub cat: Arc<FinVCat>,
    pub variance: Variance,
}

impl fmt::Debug for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.variance, self.cat.name())
    }
}

impl Slot {
    pub fn co(cat: &Arc<FinVCat>) -> Slot {
        Slot { cat: cat.clone(), variance: Variance::Covariant }
    }

    pub fn contra(cat: &Arc<FinVCat>) -> Slot {
        Slot { cat: cat.clone(), variance: Variance::Contravariant }
    }

    pub fn same(&self, other: &Slot) -> bool {
        self.variance == other.variance && same_category(&self.cat, &other.cat)
    }
}

/// A `Vect`-valued functor of several variables, each co- or contravariant.
///
/// Values are indexed by object tuples in mixed radix (slot 0 most
/// significant). The action of slot `s` along a morphism `a → b` is stored
/// under the key `(tuple with slot s = a, b)`:
///
/// * covariant: `dim(t[b]) × (hom(a,b)·dim(t[a]))`
/// * contravariant: `dim(t[a]) × (hom(a,b)·dim(t[b]))`
///
/// with column index `φ·dim(input) + v`. Missing keys mean the zero map.
///
/// A functor `A → V` is a one-slot covariant module; a bimodule
/// `A^op ⊗ X → V` has slots `[contra A, co X]`.
#[derive(Clone)]
pub struct Module {
    name: String,
    slots: Vec<Slot>,
    strides: Vec<usize>,
    dims: Vec<usize>,
    actions: Vec<BTreeMap<(usize, usize), Matrix>>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module")
            .field("name", &self.name)
            .field("slots", &self.slots)
            .field("dims", &self.dims)
            .finish()
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.slots.len() == other.slots.len()
            && self.slots.iter().zip(&other.slots).all(|(a, b)| a.same(b))
            && self.dims == other.dims
            && self.actions.iter().zip(&other.actions).all(|(x, y)| {
                let nz = |m: &BTreeMap<(usize, usize), Matrix>| {
                    m.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect::<Vec<_>>()
                };
                nz(x) == nz(y)
            })
    }
}

fn strides_for(slots: &[Slot]) -> Vec<usize> {
    let mut strides = vec![1; slots.len()];
    for s in (0..slots.len().saturating_sub(1)).rev() {
        strides[s] = strides[s + 1] * slots[s + 1].cat.len();
    }
    strides
}

/// Splits `m` into `h` column blocks of width `w` and transposes each.
fn transpose_blocks(m: &Matrix, h: usize, w: usize) -> Matrix {
    let mut entries = Vec::with_capacity(m.nnz());
    for (i, j, v) in m.entries() {
        let (k, c) = (j / w, j % w);
        entries.push((c, k * m.rows() + i, v.clone()));
    }
    Matrix::from_triplets(w, h * m.rows(), entries)
}

impl Module {
    /// A module with the given values and no actions yet (all zero).
    pub fn new(name: impl Into<String>, slots: Vec<Slot>, dims: Vec<usize>) -> Result<Module> {
        let count: usize = slots.iter().map(|s| s.cat.len()).product();
        if dims.len() != count {
            return Err(Error::ShapeMismatch(format!("module has {} values, expected {count}", dims.len())));
        }
        let strides = strides_for(&slots);
        let actions = vec![BTreeMap::new(); slots.len()];
        Ok(Module { name: name.into(), slots, strides, dims, actions })
    }

    /// Builds a module from a closure giving the action under each key.
    pub fn from_fn<F>(name: impl Into<String>, slots: Vec<Slot>, dims: Vec<usize>, mut f: F) -> Result<Module>
    where
        F: FnMut(usize, usize, usize) -> Option<Matrix>,
    {
        let mut m = Module::new(name, slots, dims)?;
        for s in 0..m.arity() {
            let n = m.slots[s].cat.len();
            for idx in 0..m.len() {
                let a = m.slot_obj(idx, s);
                for b in 0..n {
                    if m.slots[s].cat.hom_dim(a, b) == 0 {
                        continue;
                    }
                    if let Some(mat) = f(s, idx, b) {
                        m.set_action(s, idx, b, mat)?;
                    }
                }
            }
        }
        Ok(m)
    }

    /// A functor `cat → V`.
    pub fn functor<F>(name: impl Into<String>, cat: &Arc<FinVCat>, dims: Vec<usize>, mut f: F) -> Result<Module>
    where
        F: FnMut(usize, usize) -> Option<Matrix>,
    {
        Module::from_fn(name, vec![Slot::co(cat)], dims, |_, a, b| f(a, b))
    }

    /// A module whose slots are all discrete, with identity actions.
    pub fn discrete(name: impl Into<String>, slots: Vec<Slot>, dims: Vec<usize>) -> Result<Module> {
        if let Some(sl) = slots.iter().find(|sl| !sl.cat.is_discrete()) {
            return Err(Error::BaseMismatch(format!("{} is not discrete", sl.cat.name())));
        }
        let mut m = Module::new(name, slots, dims)?;
        for s in 0..m.arity() {
            for idx in 0..m.len() {
                let a = m.slot_obj(idx, s);
                let d = m.dims[idx];
                m.set_action(s, idx, a, Matrix::identity(d))?;
            }
        }
        Ok(m)
    }

    pub fn set_action(&mut self, s: usize, idx_a: usize, b: usize, m: Matrix) -> Result<()> {
        let want = self.action_shape(s, idx_a, b);
        if m.shape() != want {
            return Err(Error::ShapeMismatch(format!(
                "{}: action of slot {s} at {} -> {} is {}x{}, expected {}x{}",
                self.name,
                self.tuple_label(idx_a),
                self.slots[s].cat.objects()[b],
                m.rows(),
                m.cols(),
                want.0,
                want.1
            )));
        }
        if m.is_zero() {
            self.actions[s].remove(&(idx_a, b));
        } else {
            self.actions[s].insert((idx_a, b), m);
        }
        Ok(())
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Module {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn slot(&self, s: usize) -> &Slot {
        &self.slots[s]
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    /// Number of object tuples.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, idx: usize) -> usize {
        self.dims[idx]
    }

    pub fn dim_at(&self, tuple: &[usize]) -> usize {
        self.dims[self.index(tuple)]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.strides).map(|(t, s)| t * s).sum()
    }

    pub fn tuple(&self, idx: usize) -> Vec<usize> {
        (0..self.arity()).map(|s| self.slot_obj(idx, s)).collect()
    }

    pub fn slot_obj(&self, idx: usize, s: usize) -> usize {
        (idx / self.strides[s]) % self.slots[s].cat.len()
    }

    pub fn with_slot(&self, idx: usize, s: usize, obj: usize) -> usize {
        idx - self.slot_obj(idx, s) * self.strides[s] + obj * self.strides[s]
    }

    pub fn tuple_label(&self, idx: usize) -> String {
        self.tuple_names(idx).join(",")
    }

    pub fn tuple_names(&self, idx: usize) -> Vec<String> {
        (0..self.arity())
            .map(|s| self.slots[s].cat.objects()[self.slot_obj(idx, s)].clone())
            .collect()
    }

    /// `(rows, hom, input)` for the action of slot `s` at key `(idx_a, b)`.
    fn action_dims(&self, s: usize, idx_a: usize, b: usize) -> (usize, usize, usize) {
        let a = self.slot_obj(idx_a, s);
        let h = self.slots[s].cat.hom_dim(a, b);
        let idx_b = self.with_slot(idx_a, s, b);
        match self.slots[s].variance {
            Variance::Covariant => (self.dims[idx_b], h, self.dims[idx_a]),
            Variance::Contravariant => (self.dims[idx_a], h, self.dims[idx_b]),
        }
    }

    pub fn action_shape(&self, s: usize, idx_a: usize, b: usize) -> (usize, usize) {
        let (r, h, i) = self.action_dims(s, idx_a, b);
        (r, h * i)
    }

    /// Full action matrix of slot `s` under key `(idx_a, b)`.
    pub fn action(&self, s: usize, idx_a: usize, b: usize) -> Cow<'_, Matrix> {
        match self.actions[s].get(&(idx_a, b)) {
            Some(m) => Cow::Borrowed(m),
            None => {
                let (r, c) = self.action_shape(s, idx_a, b);
                Cow::Owned(Matrix::zeros(r, c))
            }
        }
    }

    /// Stored (nonzero) actions of slot `s` as `(idx_a, b, matrix)`.
    pub fn action_entries(&self, s: usize) -> impl Iterator<Item = (usize, usize, &Matrix)> {
        self.actions[s].iter().map(|(&(i, b), m)| (i, b, m))
    }

    /// The linear map by which the morphism `g ∈ hom(a,b)` acts.
    pub fn act_by(&self, s: usize, idx_a: usize, b: usize, g: &SparseVec) -> Matrix {
        let (r, _, w) = self.action_dims(s, idx_a, b);
        let Some(m) = self.actions[s].get(&(idx_a, b)) else {
            return Matrix::zeros(r, w);
        };
        let mut entries = Vec::new();
        let coeff: BTreeMap<usize, _> = g.iter().map(|(k, c)| (*k, c)).collect();
        for (i, j, v) in m.entries() {
            if let Some(c) = coeff.get(&(j / w)) {
                entries.push((i, j % w, v * *c));
            }
        }
        Matrix::from_triplets(r, w, entries)
    }

    /// Applies a generator in slot `s` starting from tuple `idx_src`, which
    /// must sit at the generator's source (covariant) or target
    /// (contravariant). Returns the map and the resulting tuple.
    pub fn apply_generator(&self, s: usize, idx_src: usize, g: &Generator) -> (Matrix, usize) {
        match self.slots[s].variance {
            Variance::Covariant => {
                debug_assert_eq!(self.slot_obj(idx_src, s), g.src);
                (self.act_by(s, idx_src, g.dst, &g.vector), self.with_slot(idx_src, s, g.dst))
            }
            Variance::Contravariant => {
                debug_assert_eq!(self.slot_obj(idx_src, s), g.dst);
                let idx_a = self.with_slot(idx_src, s, g.src);
                (self.act_by(s, idx_a, g.dst, &g.vector), idx_a)
            }
        }
    }

    /// The object a generator must start from in slot `s`.
    pub fn generator_start(&self, s: usize, g: &Generator) -> usize {
        match self.slots[s].variance {
            Variance::Covariant => g.src,
            Variance::Contravariant => g.dst,
        }
    }

    /// Linear dual: values dualized, every variance flipped.
    pub fn dual(&self) -> Module {
        let mut out = Module {
            name: format!("{}*", self.name),
            slots: self
                .slots
                .iter()
                .map(|sl| Slot { cat: sl.cat.clone(), variance: sl.variance.flip() })
                .collect(),
            strides: self.strides.clone(),
            dims: self.dims.clone(),
            actions: vec![BTreeMap::new(); self.arity()],
        };
        for s in 0..self.arity() {
            for (&(idx_a, b), m) in &self.actions[s] {
                let (_, h, w) = self.action_dims(s, idx_a, b);
                out.actions[s].insert((idx_a, b), transpose_blocks(m, h, w));
            }
        }
        out
    }

    /// Precomposes slot `s` with a covariant functor `F: new_cat → cat`,
    /// given by its object map and its hom maps
    /// `hom_new(a,b) → hom(F a, F b)`.
    #[allow(clippy::needless_range_loop)]
    pub fn reindex_slot<H>(&self, s: usize, new_cat: &Arc<FinVCat>, obj_map: &[usize], mut hom_map: H) -> Result<Module>
    where
        H: FnMut(usize, usize) -> Matrix,
    {
        if obj_map.len() != new_cat.len() || obj_map.iter().any(|&o| o >= self.slots[s].cat.len()) {
            return Err(Error::ShapeMismatch("object map does not fit the categories".into()));
        }
        let mut slots = self.slots.clone();
        slots[s] = Slot { cat: new_cat.clone(), variance: self.slots[s].variance };
        let strides = strides_for(&slots);
        let count: usize = slots.iter().map(|sl| sl.cat.len()).product();
        let old_index = |idx: usize| -> usize {
            (0..slots.len())
                .map(|t| {
                    let o = (idx / strides[t]) % slots[t].cat.len();
                    let o = if t == s { obj_map[o] } else { o };
                    o * self.strides[t]
                })
                .sum()
        };
        let dims = (0..count).map(|i| self.dims[old_index(i)]).collect();
        let mut out = Module::new(format!("{}∘F", self.name), slots.clone(), dims)?;
        let mut cache: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
        for t in 0..out.arity() {
            for idx in 0..count {
                let a = out.slot_obj(idx, t);
                for b in 0..out.slots[t].cat.len() {
                    if out.slots[t].cat.hom_dim(a, b) == 0 {
                        continue;
                    }
                    let old_a = old_index(idx);
                    let m = if t == s {
                        let hm = cache.entry((a, b)).or_insert_with(|| hom_map(a, b)).clone();
                        let old = self.action(s, old_a, obj_map[b]);
                        let (_, _, w) = self.action_dims(s, old_a, obj_map[b]);
                        old.compose(&hm.kron(&Matrix::identity(w)))?
                    } else {
                        self.action(t, old_a, b).into_owned()
                    };
                    out.set_action(t, idx, b, m)?;
                }
            }
        }
        Ok(out)
    }

    /// Reads slot `s` over the opposite category with the opposite variance.
    pub fn op_slot(&self, s: usize) -> Module {
        let opcat = Arc::new(self.slots[s].cat.opposite());
        self.op_slot_with(s, &opcat)
    }

    /// As [`Module::op_slot`], with a caller-supplied copy of the opposite
    /// category (so that equal categories share one allocation).
    pub fn op_slot_with(&self, s: usize, opcat: &Arc<FinVCat>) -> Module {
        let mut out = self.clone();
        out.slots[s] = Slot { cat: opcat.clone(), variance: self.slots[s].variance.flip() };
        out.actions[s] = self.actions[s]
            .iter()
            .map(|(&(idx_a, b), m)| {
                let a = self.slot_obj(idx_a, s);
                ((self.with_slot(idx_a, s, b), a), m.clone())
            })
            .collect();
        out
    }

    /// New slot `i` is old slot `perm[i]`.
    pub fn permute_slots(&self, perm: &[usize]) -> Module {
        let slots: Vec<Slot> = perm.iter().map(|&p| self.slots[p].clone()).collect();
        let strides = strides_for(&slots);
        let map_idx = |old: usize| -> usize {
            perm.iter().enumerate().map(|(i, &p)| self.slot_obj(old, p) * strides[i]).sum()
        };
        let mut dims = vec![0; self.len()];
        for old in 0..self.len() {
            dims[map_idx(old)] = self.dims[old];
        }
        let mut actions = vec![BTreeMap::new(); slots.len()];
        for (i, &p) in perm.iter().enumerate() {
            actions[i] = self.actions[p].iter().map(|(&(idx, b), m)| ((map_idx(idx), b), m.clone())).collect();
        }
        Module { name: self.name.clone(), slots, strides, dims, actions }
    }

    /// Merges the adjacent slots `i` and `i+1`, of equal variance, into a
    /// single slot over the tensor product category `cat_i ⊗ cat_{i+1}`
    /// (supplied, to share allocations).
    pub fn merge_slots(&self, i: usize, product: &Arc<FinVCat>) -> Result<Module> {
        let (c1, c2) = (&self.slots[i].cat, &self.slots[i + 1].cat);
        let variance = self.slots[i].variance;
        if self.slots[i + 1].variance != variance {
            return Err(Error::ShapeMismatch("merge_slots needs two slots of the same variance".into()));
        }
        if **product != c1.tensor(c2) {
            return Err(Error::BaseMismatch("merge_slots: product category does not match".into()));
        }
        let mut slots = self.slots.clone();
        slots.remove(i + 1);
        slots[i] = Slot { cat: product.clone(), variance };
        let mut out = Module::new(self.name.clone(), slots, self.dims.clone())?;
        let n2 = c2.len();
        for t in 0..out.arity() {
            if t == i {
                continue;
            }
            let old_t = if t > i { t + 1 } else { t };
            for (&(idx, b), m) in &self.actions[old_t] {
                out.actions[t].insert((idx, b), m.clone());
            }
        }
        for idx in 0..self.len() {
            let (x, y) = (self.slot_obj(idx, i), self.slot_obj(idx, i + 1));
            for x2 in 0..c1.len() {
                for y2 in 0..n2 {
                    let (h1, h2) = (c1.hom_dim(x, x2), c2.hom_dim(y, y2));
                    if h1 * h2 == 0 {
                        continue;
                    }
                    let mut blocks = Vec::with_capacity(h1 * h2);
                    let rows = match variance {
                        Variance::Covariant => {
                            let mid = self.with_slot(idx, i + 1, y2);
                            for k1 in 0..h1 {
                                let first = self.act_by(i, mid, x2, &unit(k1));
                                for k2 in 0..h2 {
                                    blocks.push(first.mul(&self.act_by(i + 1, idx, y2, &unit(k2))));
                                }
                            }
                            self.dims[self.with_slot(mid, i, x2)]
                        }
                        Variance::Contravariant => {
                            // T(x2,y2) → T(x2,y) → T(x,y)
                            let mid = self.with_slot(idx, i, x2);
                            for k1 in 0..h1 {
                                let last = self.act_by(i, idx, x2, &unit(k1));
                                for k2 in 0..h2 {
                                    blocks.push(last.mul(&self.act_by(i + 1, mid, y2, &unit(k2))));
                                }
                            }
                            self.dims[idx]
                        }
                    };
                    let refs: Vec<&Matrix> = blocks.iter().collect();
                    let m = Matrix::hstack(&refs, rows)?;
                    out.set_action(i, idx, x2 * n2 + y2, m)?;
                }
            }
        }
        Ok(out)
    }

    /// Restricts slots `i < j` (same category, same variance) to the
    /// diagonal. A basis morphism `e_k` acts by `e_k` in both slots, which is
    /// the pointwise tensor action when every basis morphism is group-like
    /// (as for group algebras and discrete categories).
    pub fn diagonal(&self, i: usize, j: usize) -> Result<Module> {
        if i >= j || j >= self.arity() {
            return Err(Error::ShapeMismatch("diagonal needs slots i < j".into()));
        }
        let (si, sj) = (&self.slots[i], &self.slots[j]);
        if !si.same(sj) {
            return Err(Error::BaseMismatch("diagonal needs two slots over the same category".into()));
        }
        let mut slots = self.slots.clone();
        slots.remove(j);
        let strides = strides_for(&slots);
        let count: usize = slots.iter().map(|sl| sl.cat.len()).product();
        let sizes: Vec<usize> = slots.iter().map(|sl| sl.cat.len()).collect();
        let old_index = |idx: usize| -> usize {
            let mut tuple: Vec<usize> = (0..sizes.len()).map(|t| (idx / strides[t]) % sizes[t]).collect();
            tuple.insert(j, tuple[i]);
            self.index(&tuple)
        };
        let dims = (0..count).map(|idx| self.dims[old_index(idx)]).collect();
        let mut out = Module::new(self.name.clone(), slots, dims)?;
        for t in 0..out.arity() {
            let old_t = if t >= j { t + 1 } else { t };
            for idx in 0..count {
                let a = out.slot_obj(idx, t);
                for b in 0..out.slots[t].cat.len() {
                    let h = out.slots[t].cat.hom_dim(a, b);
                    if h == 0 {
                        continue;
                    }
                    let old = old_index(idx);
                    let m = if t != i {
                        self.action(old_t, old, b).into_owned()
                    } else {
                        let blocks: Vec<Matrix> = (0..h)
                            .map(|k| {
                                let g = unit(k);
                                // (a,a) → (a,b) → (b,b), read in the slot's direction.
                                let mid = self.with_slot(old, j, b);
                                match self.slots[i].variance {
                                    Variance::Covariant => {
                                        self.act_by(i, mid, b, &g).mul(&self.act_by(j, old, b, &g))
                                    }
                                    Variance::Contravariant => {
                                        self.act_by(j, old, b, &g).mul(&self.act_by(i, mid, b, &g))
                                    }
                                }
                            })
                            .collect();
                        let refs: Vec<&Matrix> = blocks.iter().collect();
                        let rows = out.action_shape(t, idx, b).0;
                        Matrix::hstack(&refs, rows)?
                    };
                    out.set_action(t, idx, b, m)?;
                }
            }
        }
        Ok(out)
    }

    /// Pointwise direct sum of two modules with the same slots.
    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        self.require_same_slots(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mut out = Module::new(format!("{}⊕{}", self.name, other.name), self.slots.clone(), dims)?;
        for s in 0..self.arity() {
            let n = self.slots[s].cat.len();
            for idx in 0..self.len() {
                let a = self.slot_obj(idx, s);
                for b in 0..n {
                    let h = self.slots[s].cat.hom_dim(a, b);
                    if h == 0 {
                        continue;
                    }
                    let blocks: Vec<Matrix> = (0..h)
                        .map(|k| {
                            self.act_by(s, idx, b, &unit(k)).direct_sum(&other.act_by(s, idx, b, &unit(k)))
                        })
                        .collect();
                    let refs: Vec<&Matrix> = blocks.iter().collect();
                    let rows = out.action_shape(s, idx, b).0;
                    out.set_action(s, idx, b, Matrix::hstack(&refs, rows)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Exterior tensor product: slots of `self` followed by slots of `other`.
    pub fn exterior(&self, other: &Module) -> Result<Module> {
        let mut slots = self.slots.clone();
        slots.extend(other.slots.iter().cloned());
        let mut dims = Vec::with_capacity(self.len() * other.len());
        for i in 0..self.len() {
            for j in 0..other.len() {
                dims.push(self.dims[i] * other.dims[j]);
            }
        }
        let mut out = Module::new(format!("{}⊠{}", self.name, other.name), slots, dims)?;
        let m = other.len();
        for s in 0..self.arity() {
            for (&(idx, b), act) in &self.actions[s] {
                for j in 0..m {
                    let d = other.dims[j];
                    // (φ ⊗ v) ⊗ w ordering: act ⊗ I_d already matches φ·(dv·d) + v·d + w.
                    out.actions[s].insert((idx * m + j, b), act.kron(&Matrix::identity(d)));
                }
            }
        }
        for s in 0..other.arity() {
            for (&(idx, b), act) in &other.actions[s] {
                let (_, h, w) = other.action_dims(s, idx, b);
                for i in 0..self.len() {
                    let d = self.dims[i];
                    // input φ ⊗ (u ⊗ w) = swap to u ⊗ (φ ⊗ w)
                    let sw = Matrix::swap(h, d).kron(&Matrix::identity(w));
                    out.actions[self.arity() + s].insert((i * m + idx, b), Matrix::identity(d).kron(act).mul(&sw));
                }
            }
        }
        Ok(out)
    }

    pub fn require_same_slots(&self, other: &Module) -> Result<()> {
        if self.slots.len() != other.slots.len() || !self.slots.iter().zip(&other.slots).all(|(a, b)| a.same(b)) {
            return Err(Error::BaseMismatch(format!(
                "{} and {} live over different categories",
                self.name, other.name
            )));
        }
        Ok(())
    }

    /// Functoriality in each slot, unit laws, and commutation of actions in
    /// different slots, all along generators.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let mut failures = 0;
        for s in 0..self.arity() {
            let cat = self.slots[s].cat.clone();
            for idx in 0..self.len() {
                let a = self.slot_obj(idx, s);
                if self.dims[idx] > 0 {
                    let id = cat.ident(a).column(0);
                    let m = self.act_by(s, idx, a, &id);
                    let want = Matrix::identity(self.dims[idx]);
                    if m != want {
                        failures += 1;
                        report.push(equation_record(
                            format!("{}/unit/slot{s}/{}", self.name, self.tuple_label(idx)),
                            anchors::FUNCTOR_AXIOMS,
                            &m,
                            &want,
                            self.tuple_names(idx),
                        ));
                    }
                }
                for g in cat.generators() {
                    let (b, c) = (g.src, g.dst);
                    let hab = cat.hom_dim(a, b);
                    if hab == 0 {
                        continue;
                    }
                    let lg = cat.left_multiplication(a, b, c, &g.vector);
                    let idx_b = self.with_slot(idx, s, b);
                    let (lhs, rhs) = match self.slots[s].variance {
                        Variance::Covariant => {
                            let lhs = self.action(s, idx, c).mul(&lg.kron(&Matrix::identity(self.dims[idx])));
                            let rhs = self.act_by(s, idx_b, c, &g.vector).mul(&self.action(s, idx, b));
                            (lhs, rhs)
                        }
                        Variance::Contravariant => {
                            let dc = self.dims[self.with_slot(idx, s, c)];
                            let lhs = self.action(s, idx, c).mul(&lg.kron(&Matrix::identity(dc)));
                            let tg = self.act_by(s, idx_b, c, &g.vector);
                            let rhs = self.action(s, idx, b).mul(&Matrix::identity(hab).kron(&tg));
                            (lhs, rhs)
                        }
                    };
                    if lhs != rhs {
                        failures += 1;
                        let mut objs = self.tuple_names(idx);
                        objs.push(cat.objects()[c].clone());
                        report.push(equation_record(
                            format!(
                                "{}/functoriality/slot{s}/{}->{}",
                                self.name,
                                self.tuple_label(idx),
                                cat.objects()[c]
                            ),
                            anchors::FUNCTOR_AXIOMS,
                            &lhs,
                            &rhs,
                            objs,
                        ));
                    }
                }
            }
        }
        for s in 0..self.arity() {
            for t in s + 1..self.arity() {
                failures += self.check_commutation(s, t, &mut report);
            }
        }
        if failures == 0 {
            report.push(CheckRecord::pass(
                format!("{}/module-axioms", self.name),
                anchors::FUNCTOR_AXIOMS,
                EvidenceLevel::ExactEquation,
            ));
        }
        report
    }

    fn check_commutation(&self, s: usize, t: usize, report: &mut Report) -> usize {
        let mut failures = 0;
        let (cs, ct) = (self.slots[s].cat.clone(), self.slots[t].cat.clone());
        for g in cs.generators() {
            for h in ct.generators() {
                let gs = self.generator_start(s, g);
                let ht = self.generator_start(t, h);
                for idx in 0..self.len() {
                    if self.slot_obj(idx, s) != gs || self.slot_obj(idx, t) != ht {
                        continue;
                    }
                    let (m1, i1) = self.apply_generator(s, idx, g);
                    let (m2, _) = self.apply_generator(t, i1, h);
                    let (n1, j1) = self.apply_generator(t, idx, h);
                    let (n2, _) = self.apply_generator(s, j1, g);
                    let lhs = m2.mul(&m1);
                    let rhs = n2.mul(&n1);
                    if lhs != rhs {
                        failures += 1;
                        report.push(equation_record(
                            format!("{}/commutation/slots{s},{t}/{}", self.name, self.tuple_label(idx)),
                            anchors::FUNCTOR_AXIOMS,
                            &lhs,
                            &rhs,
                            self.tuple_names(idx),
                        ));
                    }
                }
            }
        }
        failures
    }
}

pub(crate) fn unit(k: usize) -> SparseVec {
    vec![(k, num_traits::One::one())]
}

/// The covariant representable `A(a, −)`.
pub fn representable(cat: &Arc<FinVCat>, a: usize) -> Result<Module> {
    if a >= cat.len() {
        return Err(Error::UnknownObject(format!("object index {a}")));
    }
    let dims = (0..cat.len()).map(|b| cat.hom_dim(a, b)).collect();
    Module::functor(format!("{}({},-)", cat.name(), cat.objects()[a]), cat, dims, |b, c| {
        Some(cat.comp(a, b, c).clone())
    })
}

/// The contravariant representable `A(−, a)`.
pub fn representable_contravariant(cat: &Arc<FinVCat>, a: usize) -> Result<Module> {
    if a >= cat.len() {
        return Err(Error::UnknownObject(format!("object index {a}")));
    }
    let dims = (0..cat.len()).map(|b| cat.hom_dim(b, a)).collect();
    Module::from_fn(format!("{}(-,{})", cat.name(), cat.objects()[a]), vec![Slot::contra(cat)], dims, |_, b, c| {
        Some(cat.comp(b, c, a).mul(&Matrix::swap(cat.hom_dim(b, c), cat.hom_dim(c, a))))
    })
}

/// The hom bimodule `A(−, −)`, contravariant in the first slot.
pub fn hom_bimodule(cat: &Arc<FinVCat>) -> Module {
    let n = cat.len();
    let dims = (0..n * n).map(|i| cat.hom_dim(i / n, i % n)).collect();
    Module::from_fn(
        format!("{}(-,-)", cat.name()),
        vec![Slot::contra(cat), Slot::co(cat)],
        dims,
        |s, idx, b2| {
            let (a, b) = (idx / n, idx % n);
            Some(if s == 1 {
                cat.comp(a, b, b2).clone()
            } else {
                // a → b2 in the first slot acts hom(b2, b) → hom(a, b)
                cat.comp(a, b2, b).mul(&Matrix::swap(cat.hom_dim(a, b2), cat.hom_dim(b2, b)))
            })
        },
    )
    .expect("hom bimodule shapes")
}

pub fn check_functor(f: &Module) -> Report {
    f.check()
}

pub fn check_bimodule(t: &Module) -> Report {
    t.check()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn z2() -> Arc<FinVCat> {
        Arc::new(FinVCat::monomial("kZ2", vec!["*".into()], vec![2], |_, _, _, p, q| Some(p ^ q), |_| 0).unwrap())
    }

    fn arrow() -> Arc<FinVCat> {
        // 0 → 1 with one arrow; basis of hom(0,1) is the arrow.
        Arc::new(
            FinVCat::monomial(
                "arrow",
                vec!["0".into(), "1".into()],
                vec![1, 1, 0, 1],
                |a, b, c, _, _| if a <= b && b <= c { Some(0) } else { None },
                |_| 0,
            )
            .unwrap(),
        )
    }

    #[test]
    fn representables_pass() {
        for cat in [z2(), arrow()] {
            for a in 0..cat.len() {
                assert!(representable(&cat, a).unwrap().check().all_passed());
                assert!(representable_contravariant(&cat, a).unwrap().check().all_passed());
            }
            let h = hom_bimodule(&cat);
            assert!(h.check().all_passed(), "{:?}", h.check());
            assert!(h.dual().check().all_passed());
        }
    }

    #[test]
    fn regular_representation() {
        let r = representable(&z2(), 0).unwrap();
        assert_eq!(r.dims(), &[2]);
        // g acts by swapping the basis.
        assert_eq!(r.act_by(0, 0, 0, &unit(1)), Matrix::from_ints(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn broken_action_is_reported() {
        let cat = z2();
        let bad = Module::functor("bad", &cat, vec![1], |_, _| {
            Some(Matrix::from_ints(&[&[1, 2]]))
        })
        .unwrap();
        assert!(!bad.check().all_passed());
        let sign = Module::functor("sign", &cat, vec![1], |_, _| Some(Matrix::from_ints(&[&[1, -1]]))).unwrap();
        assert!(sign.check().all_passed());
        assert_eq!(sign.act_by(0, 0, 0, &vec![(0, int(3)), (1, int(1))]), Matrix::from_ints(&[&[2]]));
    }

    #[test]
    fn slot_manipulations_preserve_axioms() {
        let cat = arrow();
        let h = hom_bimodule(&cat);
        let p = h.permute_slots(&[1, 0]);
        assert!(p.check().all_passed());
        assert_eq!(p.dim_at(&[1, 0]), h.dim_at(&[0, 1]));
        let o = h.op_slot(0);
        assert_eq!(o.slot(0).variance, Variance::Covariant);
        assert!(o.check().all_passed());
        let prod = Arc::new(o.slot(0).cat.tensor(&cat));
        let merged = o.merge_slots(0, &prod).unwrap();
        assert_eq!(merged.arity(), 1);
        assert!(merged.check().all_passed());
        let e = representable(&cat, 0).unwrap().exterior(&h).unwrap();
        assert!(e.check().all_passed());
        let s = h.direct_sum(&h).unwrap();
        assert!(s.check().all_passed());
        assert_eq!(s.total_dim(), 2 * h.total_dim());
    }

    #[test]
    fn reindex_along_identity() {
        let cat = arrow();
        let r = representable(&cat, 0).unwrap();
        let same = r
            .reindex_slot(0, &cat, &[0, 1], |a, b| Matrix::identity(cat.hom_dim(a, b)))
            .unwrap();
        assert_eq!(same, r);
    }
}
