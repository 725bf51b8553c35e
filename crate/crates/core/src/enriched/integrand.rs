use std::sync::Arc;

use num_traits::One;

use super::module::{unit, Module, Slot, Variance};
use super::nat::NatTransform;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, Rational, SparseVec, SubquotientPresentation};

/// One tensor factor of an integrand. Slot `k` of `module` is bound to the
/// variable `bind[k]`.
#[derive(Clone, Debug)]
pub struct Factor {
    pub module: Arc<Module>,
    pub bind: Vec<usize>,
}

impl Factor {
    pub fn new(module: Arc<Module>, bind: Vec<usize>) -> Factor {
        Factor { module, bind }
    }
}

/// A tensor product of modules in separate variables:
/// `T(v_0, …, v_n) = ⊗_i M_i(v_{bind_i})`. Every variable occurs in exactly
/// one factor slot.
#[derive(Clone, Debug)]
pub struct Integrand {
    vars: Vec<Slot>,
    factors: Vec<Factor>,
    owner: Vec<(usize, usize)>,
}

impl Integrand {
    pub fn new(vars: Vec<Slot>, factors: Vec<Factor>) -> Result<Integrand> {
        let mut owner = vec![None; vars.len()];
        for (fi, f) in factors.iter().enumerate() {
            if f.bind.len() != f.module.arity() {
                return Err(Error::ShapeMismatch(format!("factor {} binds {} of {} slots", f.module.name(), f.bind.len(), f.module.arity())));
            }
            for (k, &v) in f.bind.iter().enumerate() {
                if v >= vars.len() {
                    return Err(Error::ShapeMismatch(format!("variable {v} does not exist")));
                }
                if owner[v].is_some() {
                    return Err(Error::ShapeMismatch(format!("variable {v} is used twice")));
                }
                if !f.module.slot(k).same(&vars[v]) {
                    return Err(Error::BaseMismatch(format!(
                        "slot {k} of {} does not match variable {v}",
                        f.module.name()
                    )));
                }
                owner[v] = Some((fi, k));
            }
        }
        let owner = owner
            .into_iter()
            .enumerate()
            .map(|(v, o)| o.ok_or_else(|| Error::ShapeMismatch(format!("variable {v} is unused"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Integrand { vars, factors, owner })
    }

    /// The module itself, one variable per slot.
    pub fn single(module: &Arc<Module>) -> Integrand {
        let vars = module.slots().to_vec();
        let bind = (0..vars.len()).collect();
        Integrand::new(vars, vec![Factor::new(module.clone(), bind)]).expect("single factor")
    }

    pub fn vars(&self) -> &[Slot] {
        &self.vars
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    fn factor_index(&self, fi: usize, asg: &[usize]) -> usize {
        let f = &self.factors[fi];
        let tuple: Vec<usize> = f.bind.iter().map(|&v| asg[v]).collect();
        f.module.index(&tuple)
    }

    fn factor_dims(&self, asg: &[usize]) -> Vec<usize> {
        (0..self.factors.len())
            .map(|fi| self.factors[fi].module.dim(self.factor_index(fi, asg)))
            .collect()
    }

    /// Dimension of `T` at a full assignment of the variables.
    pub fn dim(&self, asg: &[usize]) -> usize {
        self.factor_dims(asg).iter().product()
    }

    /// Action of variable `v` by `g ∈ hom(a, b)`, where `asg_a[v] = a`.
    /// Covariant: `T(asg_a) → T(asg_a[v:=b])`; contravariant the reverse.
    pub fn var_act(&self, asg_a: &[usize], v: usize, b: usize, g: &SparseVec) -> Matrix {
        let (fi, k) = self.owner[v];
        let dims = self.factor_dims(asg_a);
        let before: usize = dims[..fi].iter().product();
        let after: usize = dims[fi + 1..].iter().product();
        let m = self.factors[fi].module.act_by(k, self.factor_index(fi, asg_a), b, g);
        let mut out = m;
        if before != 1 {
            out = Matrix::identity(before).kron(&out);
        }
        if after != 1 {
            out = out.kron(&Matrix::identity(after));
        }
        out
    }
}

/// Mixed-radix enumeration of object tuples.
fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let count: usize = sizes.iter().product();
    let mut out = Vec::with_capacity(count);
    for mut i in 0..count {
        let mut t = vec![0; sizes.len()];
        for k in (0..sizes.len()).rev() {
            t[k] = i % sizes[k];
            i /= sizes[k];
        }
        out.push(t);
    }
    out
}

fn shifted(v: &SparseVec, offset: usize) -> SparseVec {
    v.iter().map(|(j, x)| (j + offset, x.clone())).collect()
}

#[derive(Clone, Debug)]
struct Block {
    diag: Vec<usize>,
    offset: usize,
    dim: usize,
}

#[derive(Clone, Debug)]
struct Part {
    pres: SubquotientPresentation,
    blocks: Vec<Block>,
}

impl Part {
    fn block(&self, diag: &[usize]) -> &Block {
        self.blocks.iter().find(|b| b.diag == diag).expect("diagonal assignment")
    }
}

/// Shared bookkeeping for coends and ends over a set of variable pairs.
#[derive(Clone, Debug)]
struct Shape {
    integrand: Integrand,
    pairs: Vec<(usize, usize)>,
    free: Vec<usize>,
    free_sizes: Vec<usize>,
    pair_sizes: Vec<usize>,
    diags: Vec<Vec<usize>>,
}

impl Shape {
    fn new(integrand: Integrand, pairs: Vec<(usize, usize)>) -> Result<Shape> {
        let nv = integrand.vars.len();
        let mut paired = vec![false; nv];
        for &(c, o) in &pairs {
            if c >= nv || o >= nv || paired[c] || paired[o] || c == o {
                return Err(Error::ShapeMismatch("coend pairs must be distinct variables".into()));
            }
            paired[c] = true;
            paired[o] = true;
            let (vc, vo) = (&integrand.vars[c], &integrand.vars[o]);
            if vc.variance != Variance::Contravariant || vo.variance != Variance::Covariant {
                return Err(Error::BaseMismatch(format!("pair ({c},{o}) must be (contravariant, covariant)")));
            }
            if !super::same_category(&vc.cat, &vo.cat) {
                return Err(Error::BaseMismatch(format!("pair ({c},{o}) ranges over different categories")));
            }
        }
        let free: Vec<usize> = (0..nv).filter(|v| !paired[*v]).collect();
        let free_sizes = free.iter().map(|&v| integrand.vars[v].cat.len()).collect();
        let pair_sizes: Vec<usize> = pairs.iter().map(|&(c, _)| integrand.vars[c].cat.len()).collect();
        let diags = tuples(&pair_sizes);
        Ok(Shape { integrand, pairs, free, free_sizes, pair_sizes, diags })
    }

    fn free_tuples(&self) -> Vec<Vec<usize>> {
        tuples(&self.free_sizes)
    }

    fn assignment(&self, free: &[usize], diag: &[usize]) -> Vec<usize> {
        let mut asg = vec![0; self.integrand.vars.len()];
        for (k, &v) in self.free.iter().enumerate() {
            asg[v] = free[k];
        }
        for (k, &(c, o)) in self.pairs.iter().enumerate() {
            asg[c] = diag[k];
            asg[o] = diag[k];
        }
        asg
    }

    fn blocks(&self, free: &[usize]) -> (Vec<Block>, usize) {
        let mut offset = 0;
        let blocks = self
            .diags
            .iter()
            .map(|d| {
                let dim = self.integrand.dim(&self.assignment(free, d));
                let b = Block { diag: d.clone(), offset, dim };
                offset += dim;
                b
            })
            .collect();
        (blocks, offset)
    }

    /// For each pair and generator `g: a → b`, calls `f` with
    /// `(asg with vc=a and vo=a, pair, g, offset of diag a, offset of diag b)`.
    fn for_each_generator<F>(&self, free: &[usize], blocks: &[Block], mut f: F)
    where
        F: FnMut(&[usize], usize, &SparseVec, usize, usize, usize),
    {
        let offset_of = |d: &[usize]| blocks.iter().find(|b| b.diag == d).map(|b| b.offset).unwrap();
        for (k, &(c, _)) in self.pairs.iter().enumerate() {
            let cat = self.integrand.vars[c].cat.clone();
            for g in cat.generators() {
                for d in &self.diags {
                    if d[k] != g.src {
                        continue;
                    }
                    let mut db = d.clone();
                    db[k] = g.dst;
                    let asg = self.assignment(free, d);
                    f(&asg, k, &g.vector, g.dst, offset_of(d), offset_of(&db));
                }
            }
        }
    }

    /// Module over the free variables induced by `part`s and `conj`, which
    /// turns a block-diagonal ambient map into a map of presentations.
    fn result_module<F>(&self, name: String, parts: &[Part], conj: F) -> Result<Module>
    where
        F: Fn(&Part, &Part, &Matrix) -> Matrix,
    {
        let slots: Vec<Slot> = self.free.iter().map(|&v| self.integrand.vars[v].clone()).collect();
        let dims = parts.iter().map(|p| p.pres.dim).collect();
        let mut out = Module::new(name, slots, dims)?;
        let free_tuples = self.free_tuples();
        for (fs, &v) in self.free.iter().enumerate() {
            let slot = self.integrand.vars[v].clone();
            for (ia, ta) in free_tuples.iter().enumerate() {
                let a = ta[fs];
                for b in 0..slot.cat.len() {
                    let h = slot.cat.hom_dim(a, b);
                    if h == 0 {
                        continue;
                    }
                    let mut tb = ta.clone();
                    tb[fs] = b;
                    let ib = out.index(&tb);
                    let (src, dst) = match slot.variance {
                        Variance::Covariant => (ia, ib),
                        Variance::Contravariant => (ib, ia),
                    };
                    if parts[src].pres.dim == 0 || parts[dst].pres.dim == 0 {
                        continue;
                    }
                    let mut blocks = Vec::with_capacity(h);
                    for kk in 0..h {
                        let g = unit(kk);
                        let diag_maps: Vec<Matrix> = self
                            .diags
                            .iter()
                            .map(|d| self.integrand.var_act(&self.assignment(ta, d), v, b, &g))
                            .collect();
                        let bd = Matrix::block_diagonal(&diag_maps);
                        blocks.push(conj(&parts[dst], &parts[src], &bd));
                    }
                    let refs: Vec<&Matrix> = blocks.iter().collect();
                    out.set_action(fs, ia, b, Matrix::hstack(&refs, parts[dst].pres.dim)?)?;
                }
            }
        }
        Ok(out)
    }
}

/// A computed coend `∫^{pairs} T`, as a module over the free variables,
/// with explicit coprojections.
#[derive(Clone, Debug)]
pub struct Coend {
    shape: Shape,
    parts: Vec<Part>,
    result: Arc<Module>,
}

/// A computed end `∫_{pairs} T` with explicit wedge inclusions.
#[derive(Clone, Debug)]
pub struct End {
    shape: Shape,
    parts: Vec<Part>,
    result: Arc<Module>,
}

macro_rules! common_accessors {
    ($t:ty) => {
        impl $t {
            pub fn result(&self) -> &Arc<Module> {
                &self.result
            }

            pub fn integrand(&self) -> &Integrand {
                &self.shape.integrand
            }

            /// Free variables, in the order of the result module's slots.
            pub fn free_vars(&self) -> &[usize] {
                &self.shape.free
            }

            pub fn pairs(&self) -> &[(usize, usize)] {
                &self.shape.pairs
            }

            /// All diagonal assignments, one object per pair.
            pub fn diagonals(&self) -> &[Vec<usize>] {
                &self.shape.diags
            }

            pub fn dim(&self, free_idx: usize) -> usize {
                self.parts[free_idx].pres.dim
            }

            pub fn total_dim(&self) -> usize {
                self.parts.iter().map(|p| p.pres.dim).sum()
            }

            pub fn presentation(&self, free_idx: usize) -> &SubquotientPresentation {
                &self.parts[free_idx].pres
            }

            /// Full variable assignment for a free tuple and a diagonal.
            pub fn assignment(&self, free_idx: usize, diag: &[usize]) -> Vec<usize> {
                self.shape.assignment(&self.result.tuple(free_idx), diag)
            }

            /// Dimension of the diagonal component `T(diag)` at a free tuple.
            pub fn component_dim(&self, free_idx: usize, diag: &[usize]) -> usize {
                self.parts[free_idx].block(diag).dim
            }

            pub fn pair_sizes(&self) -> &[usize] {
                &self.shape.pair_sizes
            }
        }
    };
}

common_accessors!(Coend);
common_accessors!(End);

impl Coend {
    pub fn compute(integrand: Integrand, pairs: Vec<(usize, usize)>) -> Result<Coend> {
        let shape = Shape::new(integrand, pairs)?;
        let mut parts = Vec::new();
        for free in shape.free_tuples() {
            let (blocks, ambient) = shape.blocks(&free);
            let mut ech = Echelon::new(ambient);
            let minus_one = -Rational::one();
            shape.for_each_generator(&free, &blocks, |asg, k, g, b, off_a, off_b| {
                if ech.is_full() {
                    return;
                }
                let (c, o) = shape.pairs[k];
                // t ∈ T(vc=b, vo=a): T_vc(g)t at diag a, T_vo(g)t at diag b.
                let mut asg_ca = asg.to_vec();
                asg_ca[o] = asg[c];
                let left = shape.integrand.var_act(&asg_ca, c, b, g).transpose();
                let mut asg_oa = asg.to_vec();
                asg_oa[c] = b;
                let right = shape.integrand.var_act(&asg_oa, o, b, g).transpose();
                for j in 0..left.rows() {
                    let rel = crate::linalg::axpy(&shifted(left.row(j), off_a), &minus_one, &shifted(right.row(j), off_b));
                    ech.insert(rel);
                }
            });
            parts.push(Part { pres: SubquotientPresentation::quotient_of(ech), blocks });
        }
        let name = coend_name(&shape);
        let result = shape.result_module(name, &parts, |dst, src, bd| {
            dst.pres.projection.mul(bd).mul(&src.pres.section)
        })?;
        Ok(Coend { shape, parts, result: Arc::new(result) })
    }

    /// The coprojection `q_d: T(diag d) → ∫^… T` at a free tuple.
    pub fn coprojection(&self, free_idx: usize, diag: &[usize]) -> Matrix {
        let p = &self.parts[free_idx];
        let b = p.block(diag);
        p.pres.projection.column_block(b.offset, b.dim)
    }

    /// Unique `m` with `m · q_d = component(d)` for every diagonal `d`, given
    /// a cowedge out of the integrand. Fails if the components do not
    /// coequalize the relations.
    pub fn factor_cowedge<F>(&self, free_idx: usize, rows: usize, mut component: F) -> Result<Matrix>
    where
        F: FnMut(&[usize]) -> Matrix,
    {
        let p = &self.parts[free_idx];
        let comps: Vec<Matrix> = p.blocks.iter().map(|b| component(&b.diag)).collect();
        for (c, b) in comps.iter().zip(&p.blocks) {
            if c.shape() != (rows, b.dim) {
                return Err(Error::ShapeMismatch(format!(
                    "cowedge component at {:?} is {}x{}, expected {}x{}",
                    b.diag,
                    c.rows(),
                    c.cols(),
                    rows,
                    b.dim
                )));
            }
        }
        let refs: Vec<&Matrix> = comps.iter().collect();
        let big = Matrix::hstack(&refs, rows)?;
        let m = big.mul(&p.pres.section);
        if m.mul(&p.pres.projection) != big {
            return Err(Error::FactorizationFailure(format!(
                "components do not form a cowedge at {}",
                self.result.tuple_label(free_idx)
            )));
        }
        Ok(m)
    }

    /// Map `∫^… T → ∫^… T'` induced by components `T(d) → T'(d)`.
    pub fn induced_map<F>(&self, target: &Coend, free_idx: usize, mut component: F) -> Result<Matrix>
    where
        F: FnMut(&[usize]) -> Matrix,
    {
        self.factor_cowedge(free_idx, target.dim(free_idx), |d| target.coprojection(free_idx, d).mul(&component(d)))
    }
}

impl End {
    pub fn compute(integrand: Integrand, pairs: Vec<(usize, usize)>) -> Result<End> {
        let shape = Shape::new(integrand, pairs)?;
        let mut parts = Vec::new();
        for free in shape.free_tuples() {
            let (blocks, ambient) = shape.blocks(&free);
            let mut ech = Echelon::new(ambient);
            let minus_one = -Rational::one();
            shape.for_each_generator(&free, &blocks, |asg, k, g, b, off_a, off_b| {
                if ech.is_full() {
                    return;
                }
                let (c, o) = shape.pairs[k];
                // T_vo(g) t_a − T_vc(g) t_b, both in T(vc=a, vo=b).
                let left = shape.integrand.var_act(asg, o, b, g);
                let mut asg_b = asg.to_vec();
                asg_b[o] = b;
                let right = shape.integrand.var_act(&asg_b, c, b, g);
                for r in 0..left.rows() {
                    let row = crate::linalg::axpy(&shifted(left.row(r), off_a), &minus_one, &shifted(right.row(r), off_b));
                    ech.insert(row);
                }
            });
            parts.push(Part { pres: SubquotientPresentation::kernel_of(ech), blocks });
        }
        let name = end_name(&shape);
        let result = shape.result_module(name, &parts, |dst, src, bd| {
            dst.pres.projection.mul(bd).mul(&src.pres.section)
        })?;
        Ok(End { shape, parts, result: Arc::new(result) })
    }

    /// The wedge component `∫_… T → T(diag d)` at a free tuple.
    pub fn projection_to(&self, free_idx: usize, diag: &[usize]) -> Matrix {
        let p = &self.parts[free_idx];
        let b = p.block(diag);
        p.pres.section.row_block(b.offset, b.dim)
    }

    /// Unique `m` with `π_d · m = component(d)` for every diagonal `d`, given
    /// a wedge into the integrand.
    pub fn factor_wedge<F>(&self, free_idx: usize, cols: usize, mut component: F) -> Result<Matrix>
    where
        F: FnMut(&[usize]) -> Matrix,
    {
        let p = &self.parts[free_idx];
        let comps: Vec<Matrix> = p.blocks.iter().map(|b| component(&b.diag)).collect();
        for (c, b) in comps.iter().zip(&p.blocks) {
            if c.shape() != (b.dim, cols) {
                return Err(Error::ShapeMismatch(format!(
                    "wedge component at {:?} is {}x{}, expected {}x{}",
                    b.diag,
                    c.rows(),
                    c.cols(),
                    b.dim,
                    cols
                )));
            }
        }
        let refs: Vec<&Matrix> = comps.iter().collect();
        let big = Matrix::vstack(&refs, cols)?;
        let m = p.pres.projection.mul(&big);
        if p.pres.section.mul(&m) != big {
            return Err(Error::FactorizationFailure(format!(
                "components do not form a wedge at {}",
                self.result.tuple_label(free_idx)
            )));
        }
        Ok(m)
    }

    /// Map `∫_… T → ∫_… T'` induced by components `T(d) → T'(d)`.
    pub fn induced_map<F>(&self, target: &End, free_idx: usize, mut component: F) -> Result<Matrix>
    where
        F: FnMut(&[usize]) -> Matrix,
    {
        target.factor_wedge(free_idx, self.dim(free_idx), |d| component(d).mul(&self.projection_to(free_idx, d)))
    }
}

fn coend_name(shape: &Shape) -> String {
    let names: Vec<&str> = shape.integrand.factors.iter().map(|f| f.module.name()).collect();
    format!("∫^({})", names.join("⊗"))
}

fn end_name(shape: &Shape) -> String {
    let names: Vec<&str> = shape.integrand.factors.iter().map(|f| f.module.name()).collect();
    format!("∫_({})", names.join("⊗"))
}

fn bimodule_pairs(t: &Module) -> Result<Vec<(usize, usize)>> {
    if t.arity() != 2 {
        return Err(Error::ShapeMismatch(format!("{} is not a bimodule", t.name())));
    }
    Ok(vec![(0, 1)])
}

/// `∫^a T(a, a)` for a bimodule `T: A^op ⊗ A → V`.
pub fn coend(t: &Arc<Module>) -> Result<Coend> {
    let pairs = bimodule_pairs(t)?;
    Coend::compute(Integrand::single(t), pairs)
}

/// `∫_a T(a, a)` for a bimodule `T: A^op ⊗ A → V`.
pub fn end(t: &Arc<Module>) -> Result<End> {
    let pairs = bimodule_pairs(t)?;
    End::compute(Integrand::single(t), pairs)
}

/// Map of coends induced by a natural transformation of bimodules.
pub fn induced_map_on_coend(c: &Coend, c2: &Coend, n: &NatTransform) -> Result<Matrix> {
    let src = n.source.clone();
    c.induced_map(c2, 0, |d| n.component(src.index(&[d[0], d[0]])).clone())
}
