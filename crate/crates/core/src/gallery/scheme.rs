use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::enriched::{equation_record, FinVCat, Module, Slot};
use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::linalg::{int, one, Matrix};
use crate::promonoidal::{bimodule_composition, Antipode, PromonoidalStructure};
use crate::report::{anchors, CheckRecord, DimRow, EvidenceLevel, Report};

/// An association scheme on points `0..n`.
#[derive(Clone, Debug, Serialize)]
pub struct SchemeData {
    pub name: String,
    pub points: usize,
    /// `class_of[x·n + y]`.
    pub class_of: Vec<usize>,
    pub classes: usize,
    /// `intersection[(a·r + b)·r + c] = p(a,b,c)`.
    pub intersection: Vec<usize>,
    pub identity: usize,
    /// `a ↦ a*`, the class of transposed pairs.
    pub involution: Vec<usize>,
}

impl SchemeData {
    /// Validates a partition of `X × X`. Class labels are renumbered by first
    /// occurrence in row-major order, so the diagonal class becomes 0.
    pub fn from_partition(name: impl Into<String>, points: usize, labels: &[usize]) -> Result<SchemeData> {
        let n = points;
        if n == 0 || labels.len() != n * n {
            return Err(Error::NotAScheme(format!("need a label for each of the {} pairs", n * n)));
        }
        let mut renumber = BTreeMap::new();
        let class_of: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = renumber.len();
                *renumber.entry(*l).or_insert(next)
            })
            .collect();
        let r = renumber.len();
        let cls = |x: usize, y: usize| class_of[x * n + y];
        let identity = cls(0, 0);
        for x in 0..n {
            for y in 0..n {
                if (x == y) != (cls(x, y) == identity) {
                    return Err(Error::NotAScheme(format!(
                        "the diagonal is not a class: pair ({x},{y}) breaks it"
                    )));
                }
            }
        }
        let mut involution = vec![usize::MAX; r];
        for x in 0..n {
            for y in 0..n {
                let (a, t) = (cls(x, y), cls(y, x));
                if involution[a] == usize::MAX {
                    involution[a] = t;
                } else if involution[a] != t {
                    return Err(Error::NotAScheme(format!(
                        "transposes of class {a} fall in several classes, witness pair ({x},{y})"
                    )));
                }
            }
        }
        let mut intersection = vec![0; r * r * r];
        let mut seen = vec![None; r];
        for x in 0..n {
            for y in 0..n {
                let c = cls(x, y);
                let mut counts = vec![0usize; r * r];
                for z in 0..n {
                    counts[cls(x, z) * r + cls(z, y)] += 1;
                }
                match seen[c] {
                    None => {
                        seen[c] = Some((x, y));
                        for ab in 0..r * r {
                            intersection[ab * r + c] = counts[ab];
                        }
                    }
                    Some((x0, y0)) => {
                        if let Some(ab) = (0..r * r).find(|&ab| intersection[ab * r + c] != counts[ab]) {
                            return Err(Error::NotAScheme(format!(
                                "p({},{},{}) is {} at ({x0},{y0}) but {} at ({x},{y})",
                                ab / r,
                                ab % r,
                                c,
                                intersection[ab * r + c],
                                counts[ab]
                            )));
                        }
                    }
                }
            }
        }
        Ok(SchemeData { name: name.into(), points, class_of, classes: r, intersection, identity, involution })
    }

    /// Orbitals of the group generated by the given permutations of `0..n`.
    pub fn from_action(name: impl Into<String>, points: usize, generators: &[Vec<usize>]) -> Result<SchemeData> {
        let n = points;
        for g in generators {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(Error::NotAScheme("a generator is not a permutation of the points".into()));
            }
        }
        let mut labels = vec![usize::MAX; n * n];
        let mut next = 0;
        for start in 0..n * n {
            if labels[start] != usize::MAX {
                continue;
            }
            labels[start] = next;
            let mut stack = vec![start];
            while let Some(pair) = stack.pop() {
                let (x, y) = (pair / n, pair % n);
                for g in generators {
                    let image = g[x] * n + g[y];
                    if labels[image] == usize::MAX {
                        labels[image] = next;
                        stack.push(image);
                    }
                }
            }
            next += 1;
        }
        SchemeData::from_partition(name, n, &labels)
    }

    /// Hamming scheme `H(n,q)`: words of length `n` over `q` letters, classed
    /// by distance.
    pub fn hamming(n: u32, q: usize) -> Result<SchemeData> {
        let points = q.checked_pow(n).filter(|&p| p > 0 && p <= 64).ok_or_else(|| {
            Error::Oversized(format!("H({n},{q}) has too many points"))
        })?;
        let digits = |mut w: usize| {
            let mut out = Vec::with_capacity(n as usize);
            for _ in 0..n {
                out.push(w % q);
                w /= q;
            }
            out
        };
        let labels: Vec<usize> = (0..points * points)
            .map(|i| {
                let (x, y) = (digits(i / points), digits(i % points));
                x.iter().zip(&y).filter(|(a, b)| a != b).count()
            })
            .collect();
        SchemeData::from_partition(format!("H({n},{q})"), points, &labels)
    }

    /// The scheme of `Z/n` acting on itself by translation.
    pub fn cyclic(n: usize) -> Result<SchemeData> {
        let shift: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
        SchemeData::from_action(format!("Z{n}-scheme"), n, &[shift])
    }

    pub fn p(&self, a: usize, b: usize, c: usize) -> usize {
        let r = self.classes;
        self.intersection[(a * r + b) * r + c]
    }

    /// The 0/1 adjacency matrix of class `a`.
    pub fn matrix(&self, a: usize) -> Matrix {
        let n = self.points;
        Matrix::from_triplets(n, n, (0..n * n).filter(|&i| self.class_of[i] == a).map(|i| (i / n, i % n, one())))
    }

    pub fn valency(&self, a: usize) -> usize {
        self.p(a, self.involution[a], self.identity)
    }

    pub fn class_names(&self) -> Vec<String> {
        (0..self.classes).map(|a| a.to_string()).collect()
    }
}

/// A scheme with its discrete promonoidal category and kernel.
#[derive(Clone, Debug)]
pub struct SchemeGallery {
    pub scheme: SchemeData,
    /// Discrete on the classes.
    pub cat: Arc<FinVCat>,
    /// `p` = intersection numbers, `j` = the identity class.
    pub ps: PromonoidalStructure,
    pub antipode: Antipode,
    /// Discrete on the points.
    pub points: Arc<FinVCat>,
    /// Composition of matrices over the points.
    pub target: PromonoidalStructure,
    /// `K(a,(x,y)) = M_a(x,y)`.
    pub kernel: Kernel,
}

pub fn build_scheme(scheme: SchemeData) -> Result<SchemeGallery> {
    let r = scheme.classes;
    let n = scheme.points;
    let cat = Arc::new(FinVCat::discrete(scheme.name.clone(), scheme.class_names()));
    let slots = vec![Slot::contra(&cat), Slot::contra(&cat), Slot::co(&cat)];
    let p = Module::discrete("p", slots, scheme.intersection.clone())?;
    let j = Module::discrete("δ0", vec![Slot::co(&cat)], (0..r).map(|a| usize::from(a == scheme.identity)).collect())?;
    let ps = PromonoidalStructure::new(&cat, p, Some(j))?;
    let antipode = Antipode::discrete_involution(&cat, scheme.involution.clone())?;
    let points = Arc::new(FinVCat::discrete("X", (0..n).map(|x| x.to_string()).collect()));
    let (target, _) = bimodule_composition(&points)?;
    let kdims = (0..r).flat_map(|a| scheme.class_of.iter().map(move |&c| usize::from(c == a))).collect();
    let data = Module::discrete("M", vec![Slot::contra(&cat), Slot::co(target.base())], kdims)?;
    let kernel = Kernel::new(format!("M({})", scheme.name), ps.clone(), target.clone(), data)?;
    Ok(SchemeGallery { scheme, cat, ps, antipode, points, target, kernel })
}

/// Bose–Mesner identities, the antipode identity and the partition
/// invariants, all exact.
pub fn verify_scheme_kernel(s: &SchemeData) -> Report {
    let r = s.classes;
    let n = s.points;
    let name = format!("scheme({})", s.name);
    let mut report = Report::new();
    let ms: Vec<Matrix> = (0..r).map(|a| s.matrix(a)).collect();
    for a in 0..r {
        for b in 0..r {
            let lhs = ms[a].mul(&ms[b]);
            let mut rhs = Matrix::zeros(n, n);
            for (c, mc) in ms.iter().enumerate() {
                rhs = rhs.add(&mc.scale(&int(s.p(a, b, c) as i64))).expect("same shape");
            }
            report.push(equation_record(
                format!("{name}/bose-mesner/{a},{b}"),
                anchors::ASSOCIATION_SCHEME,
                &lhs,
                &rhs,
                vec![a.to_string(), b.to_string()],
            ));
        }
    }
    let inv = &s.involution;
    let mut rows = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                rows.push(DimRow {
                    objects: vec![a.to_string(), b.to_string(), c.to_string()],
                    lhs: s.p(a, b, c),
                    rhs: s.p(inv[b], inv[a], inv[c]),
                });
            }
        }
    }
    report.push(CheckRecord::from_table(format!("{name}/antipode"), anchors::ASSOCIATION_SCHEME, EvidenceLevel::Enumeration, rows));
    let ones = Matrix::from_triplets(n, n, (0..n * n).map(|i| (i / n, i % n, one())));
    let mut sum = Matrix::zeros(n, n);
    for m in &ms {
        sum = sum.add(m).expect("same shape");
    }
    report.push(equation_record(format!("{name}/partition"), anchors::ASSOCIATION_SCHEME, &sum, &ones, vec![]));
    report.push(equation_record(
        format!("{name}/identity-class"),
        anchors::ASSOCIATION_SCHEME,
        &ms[s.identity],
        &Matrix::identity(n),
        vec![],
    ));
    for a in 0..r {
        report.push(equation_record(
            format!("{name}/transpose/{a}"),
            anchors::ASSOCIATION_SCHEME,
            &ms[a].transpose(),
            &ms[inv[a]],
            vec![a.to_string()],
        ));
    }
    let mut rows = Vec::new();
    for a in 0..r {
        for x in 0..n {
            rows.push(DimRow {
                objects: vec![a.to_string(), x.to_string()],
                lhs: (0..n).filter(|&y| s.class_of[x * n + y] == a).count(),
                rhs: s.valency(a),
            });
        }
    }
    report.push(CheckRecord::from_table(format!("{name}/valency"), anchors::ASSOCIATION_SCHEME, EvidenceLevel::Enumeration, rows));
    report
}
