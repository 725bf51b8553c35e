use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::equation_record;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, SparseVec};
use crate::report::{anchors, CheckRecord, EvidenceLevel, Locus, Report};

/// A morphism (vector in a hom-space) used to generate the category under
/// composition and linear combination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub src: usize,
    pub dst: usize,
    pub vector: SparseVec,
}

/// A finite `Vect`-enriched category.
///
/// `comp(a,b,c)` has shape `hom(a,c) × (hom(b,c)·hom(a,b))` and sends the
/// basis tensor `ψ ⊗ φ` (index `ψ·hom(a,b) + φ`) to `ψ ∘ φ`. `ident(a)` is a
/// `hom(a,a) × 1` column.
#[derive(Clone)]
pub struct FinVCat {
    name: String,
    objects: Vec<String>,
    hom: Vec<usize>,
    comp: Vec<Matrix>,
    ident: Vec<Matrix>,
    generators: Vec<Generator>,
    explicit_generators: bool,
}

impl PartialEq for FinVCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.hom == other.hom
            && self.ident == other.ident
            && self.comp == other.comp
    }
}

impl Eq for FinVCat {}

impl fmt::Debug for FinVCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinVCat")
            .field("name", &self.name)
            .field("objects", &self.objects)
            .field("hom", &self.hom)
            .finish()
    }
}

/// Same category, by pointer or by structure.
pub fn same_category(a: &Arc<FinVCat>, b: &Arc<FinVCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn basis_generators(objects: usize, hom: &[usize]) -> Vec<Generator> {
    let mut out = Vec::new();
    for a in 0..objects {
        for b in 0..objects {
            for k in 0..hom[a * objects + b] {
                out.push(Generator { src: a, dst: b, vector: vec![(k, Rational::one())] });
            }
        }
    }
    out
}

impl FinVCat {
    /// Builds a category from explicit structure constants. `comp` is indexed
    /// `(a·n + b)·n + c`. Shapes are validated; axioms are not (see
    /// [`FinVCat::check_axioms`]).
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        hom: Vec<usize>,
        comp: Vec<Matrix>,
        ident: Vec<Matrix>,
    ) -> Result<Self> {
        let n = objects.len();
        if hom.len() != n * n {
            return Err(Error::ShapeMismatch(format!("hom table has {} entries, expected {}", hom.len(), n * n)));
        }
        if comp.len() != n * n * n || ident.len() != n {
            return Err(Error::ShapeMismatch("composition or identity table has the wrong length".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let m = &comp[(a * n + b) * n + c];
                    let want = (hom[a * n + c], hom[b * n + c] * hom[a * n + b]);
                    if m.shape() != want {
                        return Err(Error::ShapeMismatch(format!(
                            "comp({},{},{}) is {}x{}, expected {}x{}",
                            objects[a], objects[b], objects[c], m.rows(), m.cols(), want.0, want.1
                        )));
                    }
                }
            }
            if ident[a].shape() != (hom[a * n + a], 1) {
                return Err(Error::ShapeMismatch(format!("ident({}) has the wrong shape", objects[a])));
            }
        }
        let generators = basis_generators(n, &hom);
        Ok(FinVCat { name: name.into(), objects, hom, comp, ident, generators, explicit_generators: false })
    }

    /// Category whose composition sends basis pairs to basis elements (or zero).
    ///
    /// `compose(a, b, c, psi, phi)` returns the basis index of `psi ∘ phi` in
    /// `hom(a,c)`; `identity(a)` the basis index of the identity.
    pub fn monomial<F, G>(name: impl Into<String>, objects: Vec<String>, hom: Vec<usize>, compose: F, identity: G) -> Result<Self>
    where
        F: Fn(usize, usize, usize, usize, usize) -> Option<usize>,
        G: Fn(usize) -> usize,
    {
        let n = objects.len();
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (hac, hbc, hab) = (hom[a * n + c], hom[b * n + c], hom[a * n + b]);
                    let mut entries = Vec::new();
                    if hac > 0 {
                        for psi in 0..hbc {
                            for phi in 0..hab {
                                if let Some(r) = compose(a, b, c, psi, phi) {
                                    entries.push((r, psi * hab + phi, Rational::one()));
                                }
                            }
                        }
                    }
                    comp.push(Matrix::from_triplets(hac, hbc * hab, entries));
                }
            }
        }
        let ident = (0..n)
            .map(|a| Matrix::from_triplets(hom[a * n + a], 1, vec![(identity(a), 0, Rational::one())]))
            .collect();
        FinVCat::new(name, objects, hom, comp, ident)
    }

    /// Discrete category: `hom(a,b) = δ_ab · k`.
    pub fn discrete(name: impl Into<String>, objects: Vec<String>) -> Self {
        let n = objects.len();
        let hom = (0..n * n).map(|i| usize::from(i / n == i % n)).collect();
        FinVCat::monomial(name, objects, hom, |_, _, _, _, _| Some(0), |_| 0).expect("discrete shapes")
    }

    /// Replaces the generating set. The generators must generate every hom
    /// space under composition and linear combination; this is used only to
    /// cut down the relations imposed by coends and ends.
    pub fn with_generators(mut self, generators: Vec<Generator>) -> Result<Self> {
        for g in &generators {
            let h = self.hom_dim(g.src, g.dst);
            if g.vector.iter().any(|(k, _)| *k >= h) {
                return Err(Error::ShapeMismatch(format!(
                    "generator {}->{} indexes outside a {h}-dimensional hom",
                    self.objects[g.src], self.objects[g.dst]
                )));
            }
        }
        self.generators = generators;
        self.explicit_generators = true;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.hom[a * self.len() + b]
    }

    pub fn comp(&self, a: usize, b: usize, c: usize) -> &Matrix {
        let n = self.len();
        &self.comp[(a * n + b) * n + c]
    }

    pub fn ident(&self, a: usize) -> &Matrix {
        &self.ident[a]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn has_explicit_generators(&self) -> bool {
        self.explicit_generators
    }

    pub fn is_discrete(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.hom_dim(a, b) == usize::from(a == b)))
    }

    /// Matrix of `χ ↦ g ∘ χ` from `hom(a,b)` to `hom(a,c)`, for `g ∈ hom(b,c)`.
    pub fn left_multiplication(&self, a: usize, b: usize, c: usize, g: &SparseVec) -> Matrix {
        let col = Matrix::column_vector(self.hom_dim(b, c), g);
        self.comp(a, b, c).mul(&col.kron(&Matrix::identity(self.hom_dim(a, b))))
    }

    /// Matrix of `χ ↦ χ ∘ g` from `hom(b,c)` to `hom(a,c)`, for `g ∈ hom(a,b)`.
    pub fn right_multiplication(&self, a: usize, b: usize, c: usize, g: &SparseVec) -> Matrix {
        let col = Matrix::column_vector(self.hom_dim(a, b), g);
        self.comp(a, b, c).mul(&Matrix::identity(self.hom_dim(b, c)).kron(&col))
    }

    /// The opposite category. Generators are carried over.
    pub fn opposite(&self) -> FinVCat {
        let n = self.len();
        let hom: Vec<usize> = (0..n * n).map(|i| self.hom_dim(i % n, i / n)).collect();
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // ψ^op ∘ φ^op = (φ ∘ ψ)^op with φ ∈ hom(b,a), ψ ∈ hom(c,b).
                    let base = self.comp(c, b, a);
                    let sw = Matrix::swap(self.hom_dim(c, b), self.hom_dim(b, a));
                    comp.push(base.mul(&sw));
                }
            }
        }
        let generators = self
            .generators
            .iter()
            .map(|g| Generator { src: g.dst, dst: g.src, vector: g.vector.clone() })
            .collect();
        FinVCat {
            name: format!("{}^op", self.name),
            objects: self.objects.clone(),
            hom,
            comp,
            ident: self.ident.clone(),
            generators,
            explicit_generators: self.explicit_generators,
        }
    }

    /// Tensor product `self ⊗ other`. Object `(x, y)` has index `x·|other| + y`;
    /// `hom((x,y),(x',y')) = hom(x,x') ⊗ hom(y,y')`.
    pub fn tensor(&self, other: &FinVCat) -> FinVCat {
        let (n1, n2) = (self.len(), other.len());
        let n = n1 * n2;
        let split = |i: usize| (i / n2, i % n2);
        let objects = (0..n)
            .map(|i| {
                let (x, y) = split(i);
                format!("({},{})", self.objects[x], other.objects[y])
            })
            .collect();
        let mut hom = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let ((x, y), (x2, y2)) = (split(i), split(j));
                hom[i * n + j] = self.hom_dim(x, x2) * other.hom_dim(y, y2);
            }
        }
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ((a1, a2), (b1, b2), (c1, c2)) = (split(a), split(b), split(c));
                    let c1m = self.comp(a1, b1, c1);
                    let c2m = other.comp(a2, b2, c2);
                    // input (ψ1⊗ψ2)⊗(φ1⊗φ2) → (ψ1⊗φ1)⊗(ψ2⊗φ2)
                    let (p1, p2) = (self.hom_dim(b1, c1), other.hom_dim(b2, c2));
                    let (f1, f2) = (self.hom_dim(a1, b1), other.hom_dim(a2, b2));
                    let mid = Matrix::identity(p1)
                        .kron(&Matrix::swap(p2, f1))
                        .kron(&Matrix::identity(f2));
                    comp.push(c1m.kron(c2m).mul(&mid));
                }
            }
        }
        let ident = (0..n)
            .map(|i| {
                let (x, y) = split(i);
                self.ident(x).kron(other.ident(y))
            })
            .collect();
        let mut generators = Vec::new();
        for g in &self.generators {
            for y in 0..n2 {
                let id = other.ident(y).column(0);
                let v = Matrix::column_vector(self.hom_dim(g.src, g.dst), &g.vector)
                    .kron(&Matrix::column_vector(other.hom_dim(y, y), &id));
                generators.push(Generator { src: g.src * n2 + y, dst: g.dst * n2 + y, vector: v.column(0) });
            }
        }
        for g in &other.generators {
            for x in 0..n1 {
                let id = self.ident(x).column(0);
                let v = Matrix::column_vector(self.hom_dim(x, x), &id)
                    .kron(&Matrix::column_vector(other.hom_dim(g.src, g.dst), &g.vector));
                generators.push(Generator { src: x * n2 + g.src, dst: x * n2 + g.dst, vector: v.column(0) });
            }
        }
        FinVCat {
            name: format!("{}⊗{}", self.name, other.name),
            objects,
            hom,
            comp,
            ident,
            generators,
            explicit_generators: self.explicit_generators || other.explicit_generators,
        }
    }

    /// For composition tables that send basis pairs to single basis vectors
    /// with coefficient 1 (or to zero), the lookup table; `None` otherwise.
    fn monomial_table(&self, a: usize, b: usize, c: usize) -> Option<Vec<Option<usize>>> {
        let m = self.comp(a, b, c);
        let mut table = vec![None; m.cols()];
        for (i, j, v) in m.entries() {
            if !v.is_one() || table[j].is_some() {
                return None;
            }
            table[j] = Some(i);
        }
        Some(table)
    }

    /// Associativity and unit laws, one record per failing object tuple (and a
    /// single summary record on success).
    pub fn check_axioms(&self) -> Report {
        let n = self.len();
        let mut report = Report::new();
        let mut failures = 0usize;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let (hab, hbc, hcd) = (self.hom_dim(a, b), self.hom_dim(b, c), self.hom_dim(c, d));
                        if hab * hbc * hcd == 0 || self.hom_dim(a, d) == 0 {
                            continue;
                        }
                        if let Some(ok) = self.associativity_by_table(a, b, c, d) {
                            if !ok {
                                failures += 1;
                                report.push(self.assoc_failure_record(a, b, c, d));
                            }
                            continue;
                        }
                        let lhs = self.comp(a, c, d).mul(&Matrix::identity(hcd).kron(self.comp(a, b, c)));
                        let rhs = self.comp(a, b, d).mul(&self.comp(b, c, d).kron(&Matrix::identity(hab)));
                        if lhs != rhs {
                            failures += 1;
                            report.push(self.assoc_failure_record(a, b, c, d));
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let hab = self.hom_dim(a, b);
                if hab == 0 {
                    continue;
                }
                let objs = vec![self.objects[a].clone(), self.objects[b].clone()];
                let left = self.comp(a, b, b).mul(&self.ident(b).kron(&Matrix::identity(hab)));
                let right = self.comp(a, a, b).mul(&Matrix::identity(hab).kron(self.ident(a)));
                let id = Matrix::identity(hab);
                for (side, m) in [("left-unit", left), ("right-unit", right)] {
                    if m != id {
                        failures += 1;
                        report.push(equation_record(
                            format!("{}/{}/{}", self.name, side, objs.join(",")),
                            anchors::CATEGORY_AXIOMS,
                            &m,
                            &id,
                            objs.clone(),
                        ));
                    }
                }
            }
        }
        if failures == 0 {
            report.push(CheckRecord::pass(
                format!("{}/axioms", self.name),
                anchors::CATEGORY_AXIOMS,
                EvidenceLevel::ExactEquation,
            ));
        }
        report
    }

    fn associativity_by_table(&self, a: usize, b: usize, c: usize, d: usize) -> Option<bool> {
        let t_abc = self.monomial_table(a, b, c)?;
        let t_acd = self.monomial_table(a, c, d)?;
        let t_bcd = self.monomial_table(b, c, d)?;
        let t_abd = self.monomial_table(a, b, d)?;
        let (hab, hbc, hcd) = (self.hom_dim(a, b), self.hom_dim(b, c), self.hom_dim(c, d));
        let hac = self.hom_dim(a, c);
        for psi in 0..hcd {
            for chi in 0..hbc {
                let bd = t_bcd[psi * hbc + chi];
                for phi in 0..hab {
                    let lhs = t_abc[chi * hab + phi].and_then(|ac| t_acd[psi * hac + ac]);
                    let rhs = bd.and_then(|bd| t_abd[bd * hab + phi]);
                    if lhs != rhs {
                        return Some(false);
                    }
                }
            }
        }
        Some(true)
    }

    fn assoc_failure_record(&self, a: usize, b: usize, c: usize, d: usize) -> CheckRecord {
        let (hab, hcd) = (self.hom_dim(a, b), self.hom_dim(c, d));
        let lhs = self.comp(a, c, d).mul(&Matrix::identity(hcd).kron(self.comp(a, b, c)));
        let rhs = self.comp(a, b, d).mul(&self.comp(b, c, d).kron(&Matrix::identity(hab)));
        let objs: Vec<String> = [a, b, c, d].iter().map(|&i| self.objects[i].clone()).collect();
        let mut r = equation_record(
            format!("{}/associativity/{}", self.name, objs.join(",")),
            anchors::CATEGORY_AXIOMS,
            &lhs,
            &rhs,
            objs.clone(),
        );
        if r.passed() {
            // Unreachable for a real failure; keep the locus explicit anyway.
            r.status = crate::report::Status::Fail;
            r.locus = Some(Locus { objects: objs, quantity: "rank(lhs-rhs)".into(), lhs: 0, rhs: 0 });
        }
        r
    }
}

/// `check_category_axioms` in operation form.
pub fn check_category_axioms(c: &FinVCat) -> Report {
    c.check_axioms()
}
