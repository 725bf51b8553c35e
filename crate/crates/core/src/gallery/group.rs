use serde::Serialize;

use crate::enriched::FinVCat;
use crate::error::{Error, Result};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    name: String,
    elements: Vec<String>,
    /// `table[a·n + b]` is the index of `ab`.
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(name: impl Into<String>, elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidGroup("a group needs at least one element".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!("table must be {n}x{n}")));
        }
        if let Some((a, b)) = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| table[a][b] >= n) {
            return Err(Error::InvalidGroup(format!("{}·{} is not an element", elements[a], elements[b])));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({},{},{})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for (a, el) in elements.iter().enumerate() {
            let inv = (0..n)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("{el} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup { name: name.into(), elements, table: flat, identity, inverse })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1).renamed("1")
    }

    /// `Z/n` with elements `0..n`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(format!("Z{n}"), elements, table).expect("cyclic group")
    }

    /// `S_n` on `1..=n`, elements in lexicographic one-line notation,
    /// product `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> FiniteGroup {
        let perms = permutations(n);
        let elements = perms
            .iter()
            .map(|p| if p.is_empty() { "()".to_string() } else { p.iter().map(|i| (i + 1).to_string()).collect() })
            .collect();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                        perms.binary_search(&st).expect("closed")
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(format!("S{n}"), elements, table).expect("symmetric group")
    }

    /// `z<n>`, `s<n>` or `trivial`.
    pub fn from_name(name: &str) -> Result<FiniteGroup> {
        let lower = name.to_ascii_lowercase();
        if lower == "trivial" || lower == "1" {
            return Ok(FiniteGroup::trivial());
        }
        let parse = |rest: &str| rest.parse::<usize>().ok().filter(|&k| k >= 1);
        if let Some(k) = lower.strip_prefix('z').and_then(parse) {
            if k > 12 {
                return Err(Error::Oversized(format!("Z{k} has more than 12 elements")));
            }
            return Ok(FiniteGroup::cyclic(k));
        }
        if let Some(k) = lower.strip_prefix('s').and_then(parse) {
            if k > 4 {
                return Err(Error::Oversized(format!("S{k} is too large")));
            }
            return Ok(FiniteGroup::symmetric(k));
        }
        Err(Error::InvalidGroup(format!("unknown group `{name}`")))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> FiniteGroup {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// The multiplication table as rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    /// The group algebra as a one-object category; `ψ ∘ φ = ψφ`.
    pub fn algebra(&self) -> FinVCat {
        let n = self.order();
        FinVCat::monomial(
            format!("k[{}]", self.name),
            vec!["*".into()],
            vec![n],
            |_, _, _, psi, phi| Some(self.mul(psi, phi)),
            |_| self.identity,
        )
        .expect("group algebra shapes")
    }

    /// The group as a discrete category on its elements.
    pub fn discrete(&self) -> FinVCat {
        FinVCat::discrete(self.name.clone(), self.elements.clone())
    }

    /// Is `f` (given on elements) a homomorphism into `other`?
    pub fn is_homomorphism(&self, other: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.order()
            && f.iter().all(|&x| x < other.order())
            && (0..self.order())
                .all(|a| (0..self.order()).all(|b| f[self.mul(a, b)] == other.mul(f[a], f[b])))
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}
