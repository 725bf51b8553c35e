use std::sync::Arc;

use crate::enriched::{equation_record, FinVCat, Module};
use crate::error::{Error, Result};
use crate::linalg::{is_isomorphism, solve, Matrix, SparseVec};
use crate::report::{anchors, CheckRecord, EvidenceLevel, Locus, Report};

/// A contravariant functor `S: A^op → A` with `S^op ⊣ S` and `S² ≅ 1`.
///
/// `hom_maps[a·n + b]` sends `hom(a,b)` to `hom(Sb,Sa)`. The adjunction is
/// held as the family `ν(a,b): hom(Sa,b) ≅ hom(Sb,a)`; `u(a) ∈ hom(S²a,a)`
/// is the square witness.
#[derive(Clone, Debug)]
pub struct Antipode {
    base: Arc<FinVCat>,
    op_base: Arc<FinVCat>,
    object_map: Vec<usize>,
    hom_maps: Vec<Matrix>,
    nu: Option<Vec<Matrix>>,
    u: Option<Vec<SparseVec>>,
}

impl Antipode {
    pub fn new(
        base: &Arc<FinVCat>,
        object_map: Vec<usize>,
        hom_maps: Vec<Matrix>,
        nu: Option<Vec<Matrix>>,
        u: Option<Vec<SparseVec>>,
    ) -> Result<Antipode> {
        let n = base.len();
        if object_map.len() != n || object_map.iter().any(|&o| o >= n) {
            return Err(Error::ShapeMismatch("antipode object map does not fit the base".into()));
        }
        if hom_maps.len() != n * n {
            return Err(Error::ShapeMismatch("antipode needs one hom map per pair".into()));
        }
        let s = &object_map;
        for a in 0..n {
            for b in 0..n {
                let want = (base.hom_dim(s[b], s[a]), base.hom_dim(a, b));
                if hom_maps[a * n + b].shape() != want {
                    return Err(Error::ShapeMismatch(format!(
                        "antipode hom map at ({},{}) has the wrong shape",
                        base.objects()[a],
                        base.objects()[b]
                    )));
                }
            }
        }
        if let Some(nu) = &nu {
            if nu.len() != n * n {
                return Err(Error::ShapeMismatch("ν needs one matrix per pair".into()));
            }
            for a in 0..n {
                for b in 0..n {
                    if nu[a * n + b].shape() != (base.hom_dim(s[b], a), base.hom_dim(s[a], b)) {
                        return Err(Error::ShapeMismatch("ν has the wrong shape".into()));
                    }
                }
            }
        }
        if let Some(u) = &u {
            if u.len() != n || (0..n).any(|a| u[a].iter().any(|(k, _)| *k >= base.hom_dim(s[s[a]], a))) {
                return Err(Error::ShapeMismatch("u has the wrong shape".into()));
            }
        }
        Ok(Antipode { base: base.clone(), op_base: Arc::new(base.opposite()), object_map, hom_maps, nu, u })
    }

    /// Antipode of a discrete category given by an involution of the
    /// objects.
    pub fn discrete_involution(base: &Arc<FinVCat>, object_map: Vec<usize>) -> Result<Antipode> {
        let n = base.len();
        if !base.is_discrete() {
            return Err(Error::BaseMismatch("discrete_involution needs a discrete category".into()));
        }
        if object_map.len() != n || (0..n).any(|a| object_map.get(a).and_then(|&b| object_map.get(b)) != Some(&a)) {
            return Err(Error::ShapeMismatch("object map is not an involution".into()));
        }
        let hom_maps = (0..n * n)
            .map(|i| if i / n == i % n { Matrix::identity(1) } else { Matrix::zeros(0, 0) })
            .collect();
        let nu = (0..n * n)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                let d = usize::from(object_map[a] == b);
                Matrix::identity(d)
            })
            .collect();
        let u = (0..n).map(|_| vec![(0, num_traits::One::one())]).collect();
        Antipode::new(base, object_map, hom_maps, Some(nu), Some(u))
    }

    pub fn base(&self) -> &Arc<FinVCat> {
        &self.base
    }

    /// The opposite of the base, shared by everything built from this antipode.
    pub fn op_base(&self) -> &Arc<FinVCat> {
        &self.op_base
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.object_map[a]
    }

    pub fn hom_map(&self, a: usize, b: usize) -> &Matrix {
        &self.hom_maps[a * self.base.len() + b]
    }

    pub fn nu(&self) -> Option<&[Matrix]> {
        self.nu.as_deref()
    }

    pub fn u(&self) -> Option<&[SparseVec]> {
        self.u.as_deref()
    }

    /// Precomposes slot `s` of a module with `S`, viewed as a covariant
    /// functor `A^op → A`. The slot ends up over `A` with flipped variance.
    pub fn precompose(&self, m: &Module, s: usize) -> Result<Module> {
        let r = m.reindex_slot(s, &self.op_base, &self.object_map, |a, b| self.hom_map(b, a).clone())?;
        Ok(r.op_slot_with(s, &self.base))
    }

    /// Functoriality, the adjunction family `ν` and the square witness `u`.
    pub fn check(&self) -> Report {
        let c = &self.base;
        let n = c.len();
        let s = &self.object_map;
        let mut report = Report::new();
        let mut failures = 0;
        let name = format!("antipode({})", c.name());
        for a in 0..n {
            let id = self.hom_map(a, a).mul(c.ident(a));
            if &id != c.ident(s[a]) {
                failures += 1;
                report.push(equation_record(
                    format!("{name}/identity/{}", c.objects()[a]),
                    anchors::ANTIPODE,
                    &id,
                    c.ident(s[a]),
                    vec![c.objects()[a].clone()],
                ));
            }
            for b in 0..n {
                for cc in 0..n {
                    let (hab, hbc) = (c.hom_dim(a, b), c.hom_dim(b, cc));
                    if hab * hbc == 0 {
                        continue;
                    }
                    let lhs = self.hom_map(a, cc).mul(c.comp(a, b, cc));
                    let rhs = c
                        .comp(s[cc], s[b], s[a])
                        .mul(&self.hom_map(a, b).kron(self.hom_map(b, cc)))
                        .mul(&Matrix::swap(hbc, hab));
                    if lhs != rhs {
                        failures += 1;
                        let objs: Vec<String> = [a, b, cc].iter().map(|&x| c.objects()[x].clone()).collect();
                        report.push(equation_record(
                            format!("{name}/functoriality/{}", objs.join(",")),
                            anchors::ANTIPODE,
                            &lhs,
                            &rhs,
                            objs,
                        ));
                    }
                }
            }
        }
        if let Some(nu) = &self.nu {
            failures += self.check_nu(nu, &name, &mut report);
        }
        if let Some(u) = &self.u {
            failures += self.check_u(u, &name, &mut report);
        }
        if failures == 0 {
            let mut r = CheckRecord::pass(name, anchors::ANTIPODE, EvidenceLevel::ExactEquation);
            if self.nu.is_none() || self.u.is_none() {
                r = r.with_note("adjunction or square witness absent; only functoriality checked");
            }
            report.push(r);
        }
        report
    }

    fn check_nu(&self, nu: &[Matrix], name: &str, report: &mut Report) -> usize {
        let c = &self.base;
        let n = c.len();
        let s = &self.object_map;
        let mut failures = 0;
        for a in 0..n {
            for b in 0..n {
                let m = &nu[a * n + b];
                if !is_isomorphism(m) {
                    failures += 1;
                    report.push(CheckRecord::fail(
                        format!("{name}/nu-invertible/{},{}", c.objects()[a], c.objects()[b]),
                        anchors::ANTIPODE,
                        EvidenceLevel::ExactEquation,
                        Locus {
                            objects: vec![c.objects()[a].clone(), c.objects()[b].clone()],
                            quantity: "rank".into(),
                            lhs: crate::linalg::rank(m),
                            rhs: m.rows().max(m.cols()),
                        },
                    ));
                }
            }
        }
        for g in c.generators() {
            // In b: ν(a,b')(ψ∘χ) = ν(a,b)(χ)∘S(ψ), for ψ: b → b'.
            let (b, b2) = (g.src, g.dst);
            let sg = self.hom_map(b, b2).mul(&Matrix::column_vector(c.hom_dim(b, b2), &g.vector)).column(0);
            for a in 0..n {
                if c.hom_dim(s[a], b) == 0 {
                    continue;
                }
                let lhs = nu[a * n + b2].mul(&c.left_multiplication(s[a], b, b2, &g.vector));
                let rhs = c.right_multiplication(s[b2], s[b], a, &sg).mul(&nu[a * n + b]);
                if lhs != rhs {
                    failures += 1;
                    report.push(equation_record(
                        format!("{name}/nu-natural-right/{},{}", c.objects()[a], c.objects()[b]),
                        anchors::ANTIPODE,
                        &lhs,
                        &rhs,
                        vec![c.objects()[a].clone(), c.objects()[b].clone()],
                    ));
                }
            }
            // In a: ν(a',b)(χ∘Sφ) = φ∘ν(a,b)(χ), for φ: a → a'.
            let (a, a2) = (g.src, g.dst);
            let sf = self.hom_map(a, a2).mul(&Matrix::column_vector(c.hom_dim(a, a2), &g.vector)).column(0);
            for b in 0..n {
                if c.hom_dim(s[a], b) == 0 {
                    continue;
                }
                let lhs = nu[a2 * n + b].mul(&c.right_multiplication(s[a2], s[a], b, &sf));
                let rhs = c.left_multiplication(s[b], a, a2, &g.vector).mul(&nu[a * n + b]);
                if lhs != rhs {
                    failures += 1;
                    report.push(equation_record(
                        format!("{name}/nu-natural-left/{},{}", c.objects()[a], c.objects()[b]),
                        anchors::ANTIPODE,
                        &lhs,
                        &rhs,
                        vec![c.objects()[a].clone(), c.objects()[b].clone()],
                    ));
                }
            }
        }
        failures
    }

    fn check_u(&self, u: &[SparseVec], name: &str, report: &mut Report) -> usize {
        let c = &self.base;
        let s = &self.object_map;
        let mut failures = 0;
        for a in 0..c.len() {
            let s2 = s[s[a]];
            // Invertibility: some v ∈ hom(a, S²a) with u∘v = id_a and v∘u = id_{S²a}.
            let lu = c.left_multiplication(a, s2, a, &u[a]);
            let inv = solve(&lu, c.ident(a)).ok().flatten();
            let ok = inv.is_some_and(|v| {
                let vcol = v.column(0);
                let back = c.left_multiplication(s2, a, s2, &vcol).mul(&Matrix::column_vector(c.hom_dim(s2, a), &u[a]));
                &back == c.ident(s2)
            });
            if !ok {
                failures += 1;
                report.push(CheckRecord::fail(
                    format!("{name}/u-invertible/{}", c.objects()[a]),
                    anchors::ANTIPODE,
                    EvidenceLevel::ExactEquation,
                    Locus { objects: vec![c.objects()[a].clone()], quantity: "invertible".into(), lhs: 0, rhs: 1 },
                ));
            }
        }
        for g in c.generators() {
            let (a, b) = (g.src, g.dst);
            let gv = Matrix::column_vector(c.hom_dim(a, b), &g.vector);
            let s2g = self.hom_map(s[b], s[a]).mul(self.hom_map(a, b)).mul(&gv).column(0);
            let lhs = c.left_multiplication(s[s[a]], a, b, &g.vector).mul(&Matrix::column_vector(
                c.hom_dim(s[s[a]], a),
                &u[a],
            ));
            let rhs = c
                .right_multiplication(s[s[a]], s[s[b]], b, &s2g)
                .mul(&Matrix::column_vector(c.hom_dim(s[s[b]], b), &u[b]));
            if lhs != rhs {
                failures += 1;
                report.push(equation_record(
                    format!("{name}/u-natural/{}->{}", c.objects()[a], c.objects()[b]),
                    anchors::ANTIPODE,
                    &lhs,
                    &rhs,
                    vec![c.objects()[a].clone(), c.objects()[b].clone()],
                ));
            }
        }
        failures
    }
}
