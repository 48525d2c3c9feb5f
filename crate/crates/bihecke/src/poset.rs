//! Generic finite posets given by an explicit relation matrix.
//!
//! This is the brute-force layer: the recursive Möbius function and cover
//! computation here serve as oracles against which closed-form results
//! elsewhere in the crate are verified.

use crate::error::{Error, Result};

/// A finite poset on `{0, .., n-1}` stored as a dense `leq` matrix.
#[derive(Debug, Clone)]
pub struct ExplicitPoset {
    n: usize,
    leq: Vec<bool>,
}

impl ExplicitPoset {
    /// Builds a poset from a relation matrix and verifies the poset axioms.
    pub fn new(n: usize, leq: Vec<bool>) -> Result<Self> {
        assert_eq!(leq.len(), n * n, "relation matrix must be n*n");
        let p = ExplicitPoset { n, leq };
        p.validate()?;
        Ok(p)
    }

    /// Builds a poset from a comparison predicate.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                leq[u * n + v] = f(u, v);
            }
        }
        Self::new(n, leq)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for u in 0..n {
            if !self.leq(u, u) {
                return Err(Error::InvariantViolation(format!(
                    "relation is not reflexive at {u}"
                )));
            }
        }
        for u in 0..n {
            for v in 0..n {
                if u != v && self.leq(u, v) && self.leq(v, u) {
                    return Err(Error::InvariantViolation(format!(
                        "relation is not antisymmetric at ({u}, {v})"
                    )));
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                if !self.leq(u, v) {
                    continue;
                }
                for w in 0..n {
                    if self.leq(v, w) && !self.leq(u, w) {
                        return Err(Error::InvariantViolation(format!(
                            "relation is not transitive at ({u}, {v}, {w})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.leq[u * self.n + v]
    }

    pub fn lt(&self, u: usize, v: usize) -> bool {
        u != v && self.leq(u, v)
    }

    /// All cover pairs `(u, v)` with `u` covered by `v`, in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.lt(u, v) && !(0..self.n).any(|z| self.lt(u, z) && self.lt(z, v)) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Standard recursive Möbius value; `u <= v` is required.
    pub fn mobius(&self, u: usize, v: usize) -> Result<i64> {
        if !self.leq(u, v) {
            return Err(Error::Domain(format!(
                "mobius({u}, {v}) requires u <= v in the relation"
            )));
        }
        let mut memo = vec![None::<i64>; self.n];
        Ok(self.mobius_memo(u, v, &mut memo))
    }

    fn mobius_memo(&self, u: usize, v: usize, memo: &mut Vec<Option<i64>>) -> i64 {
        if let Some(m) = memo[v] {
            return m;
        }
        let value = if u == v {
            1
        } else {
            let mut sum = 0i64;
            for z in 0..self.n {
                if self.leq(u, z) && self.lt(z, v) {
                    sum += self.mobius_memo(u, z, memo);
                }
            }
            -sum
        };
        memo[v] = Some(value);
        value
    }

    /// Full Möbius matrix (entry `(u, v)` is `mu(u, v)` when `u <= v`, else 0).
    pub fn mobius_matrix(&self) -> Vec<i64> {
        let n = self.n;
        let mut mu = vec![0i64; n * n];
        for u in 0..n {
            let mut memo = vec![None::<i64>; n];
            for v in 0..n {
                if self.leq(u, v) {
                    mu[u * n + v] = self.mobius_memo(u, v, &mut memo);
                }
            }
        }
        mu
    }

    /// Elements of the closed interval `[u, v]`.
    pub fn interval(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| self.leq(u, z) && self.leq(z, v))
            .collect()
    }

    /// Indices that are minimal in the whole poset.
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&u| !(0..self.n).any(|z| self.lt(z, u)))
            .collect()
    }

    /// Restriction to a subset of indices (kept in the given order).
    pub fn restrict(&self, subset: &[usize]) -> Result<ExplicitPoset> {
        let k = subset.len();
        let mut leq = vec![false; k * k];
        for (a, &u) in subset.iter().enumerate() {
            for (b, &v) in subset.iter().enumerate() {
                leq[a * k + b] = self.leq(u, v);
            }
        }
        ExplicitPoset::new(k, leq)
    }

    /// The meet (greatest common lower bound) of `u` and `v`, if it exists.
    ///
    /// Returns `Ok(None)` when the pair has no meet (several maximal common
    /// lower bounds or none at all, the latter being impossible in a poset
    /// with a bottom element).
    pub fn meet(&self, u: usize, v: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.n)
            .filter(|&z| self.leq(z, u) && self.leq(z, v))
            .collect();
        let maximal: Vec<usize> = lower
            .iter()
            .copied()
            .filter(|&z| !lower.iter().any(|&y| self.lt(z, y)))
            .collect();
        match maximal.as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// The join (least common upper bound) of `u` and `v`, if it exists.
    pub fn join(&self, u: usize, v: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.n)
            .filter(|&z| self.leq(u, z) && self.leq(v, z))
            .collect();
        let minimal: Vec<usize> = upper
            .iter()
            .copied()
            .filter(|&z| !upper.iter().any(|&y| self.lt(y, z)))
            .collect();
        match minimal.as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }
}

/// Renders a Hasse diagram as a DOT digraph.
///
/// `labels` names the nodes; `emphasized` nodes get a double circle (used to
/// mark cutting points). Output is deterministic: nodes in index order, edges
/// in the order produced by [`ExplicitPoset::covers`].
pub fn hasse_dot(
    name: &str,
    covers: &[(usize, usize)],
    labels: &[String],
    emphasized: &[bool],
) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n"));
    out.push_str("  rankdir=BT;\n");
    for (i, label) in labels.iter().enumerate() {
        let shape = if emphasized.get(i).copied().unwrap_or(false) {
            " shape=doublecircle"
        } else {
            ""
        };
        out.push_str(&format!("  n{i} [label=\"{label}\"{shape}];\n"));
    }
    for &(u, v) in covers {
        out.push_str(&format!("  n{u} -> n{v};\n"));
    }
    out.push_str("}\n");
    out
}
