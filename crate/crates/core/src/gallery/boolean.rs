use serde::Serialize;

use crate::error::{Error, Result};

/// Largest carrier accepted by [`bool_enumerate_kernels`].
pub const MAX_BOOL_CARRIER: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoolMode {
    Submodule,
    Convexity,
}

/// A `(0 ≤ 1)`-valued promonoidal structure on a discrete carrier, with an
/// optional candidate kernel.
#[derive(Clone, Debug, Serialize)]
pub struct BoolInstance {
    pub mode: BoolMode,
    pub carrier: Vec<String>,
    /// `p[(x·n + y)·n + z]`.
    pub p: Vec<bool>,
    pub candidate: Option<Vec<bool>>,
}

impl BoolInstance {
    /// `Z/m` as a `Z`-module: `p(x,y,z) = [∃ r,s: z = rx + sy]`.
    pub fn submodule(modulus: usize) -> Result<BoolInstance> {
        let m = modulus;
        if m == 0 || m > MAX_BOOL_CARRIER {
            return Err(Error::Oversized(format!("carrier of size {m}")));
        }
        let mut p = vec![false; m * m * m];
        for x in 0..m {
            for y in 0..m {
                for r in 0..m {
                    for s in 0..m {
                        p[(x * m + y) * m + (r * x + s * y) % m] = true;
                    }
                }
            }
        }
        Ok(BoolInstance { mode: BoolMode::Submodule, carrier: (0..m).map(|x| x.to_string()).collect(), p, candidate: None })
    }

    /// `n` collinear points with `p(x,y,z) = [z lies between x and y]`.
    pub fn convexity_line(n: usize) -> Result<BoolInstance> {
        if n == 0 || n > MAX_BOOL_CARRIER {
            return Err(Error::Oversized(format!("carrier of size {n}")));
        }
        let mut p = vec![false; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in x.min(y)..=x.max(y) {
                    p[(x * n + y) * n + z] = true;
                }
            }
        }
        Ok(BoolInstance { mode: BoolMode::Convexity, carrier: (0..n).map(|x| x.to_string()).collect(), p, candidate: None })
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn with_candidate(mut self, members: &[usize]) -> BoolInstance {
        let mut k = vec![false; self.len()];
        for &x in members {
            if x < k.len() {
                k[x] = true;
            }
        }
        self.candidate = Some(k);
        self
    }

    fn holds(&self, k: &[bool]) -> bool {
        let n = self.len();
        (0..n).all(|z| {
            let reached = (0..n).any(|x| k[x] && (0..n).any(|y| k[y] && self.p[(x * n + y) * n + z]));
            reached == k[z]
        })
    }
}

/// `(∃ x,y: K x ∧ K y ∧ p(x,y,z)) = K z` for every `z`. Without a candidate
/// there is nothing to check and the answer is `false`.
pub fn bool_kernel_check(b: &BoolInstance) -> bool {
    b.candidate.as_deref().is_some_and(|k| k.len() == b.len() && b.holds(k))
}

/// Every subset passing the check, as sorted member lists, ordered by bit
/// mask.
pub fn bool_enumerate_kernels(b: &BoolInstance) -> Result<Vec<Vec<usize>>> {
    let n = b.len();
    if n > MAX_BOOL_CARRIER {
        return Err(Error::Oversized(format!("carrier of size {n} exceeds {MAX_BOOL_CARRIER}")));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let k: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        if b.holds(&k) {
            out.push((0..n).filter(|&i| k[i]).collect());
        }
    }
    Ok(out)
}
