//! The relative root system of type `C_n`: long roots `±2e_i`, short roots
//! `±e_i ± e_j`, chains `iα + jβ`, reflections and Weyl paths.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    weights: Vec<i32>,
}

/// One factor `X_{iα+jβ}` of a Chevalley commutator expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainTerm {
    pub i: u32,
    pub j: u32,
    pub root: Root,
}

impl Root {
    pub fn new(weights: Vec<i32>) -> Result<Self> {
        let r = Root { weights };
        if r.weights.len() < 2 {
            return Err(Error::RankTooSmall(r.weights.len()));
        }
        if !(r.is_long() || r.is_short()) {
            return Err(Error::InvalidRoot(format!("{:?}", r.weights)));
        }
        Ok(r)
    }

    fn from_weights_unchecked(weights: Vec<i32>) -> Option<Self> {
        let r = Root { weights };
        (r.is_long() || r.is_short()).then_some(r)
    }

    /// `sign·2e_i` (index 1-based).
    pub fn long(n: usize, i: usize, sign: i32) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidRoot(format!("index {i} out of range 1..={n}")));
        }
        let mut w = vec![0; n];
        w[i - 1] = 2 * sign.signum();
        Root::new(w)
    }

    /// `si·e_i + sj·e_j` (indices 1-based, distinct).
    pub fn short(n: usize, i: usize, si: i32, j: usize, sj: i32) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::InvalidRoot(format!("indices ({i}, {j}) invalid for n={n}")));
        }
        let mut w = vec![0; n];
        w[i - 1] = si.signum();
        w[j - 1] = sj.signum();
        Root::new(w)
    }

    pub fn weights(&self) -> &[i32] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn is_long(&self) -> bool {
        let nz: Vec<_> = self.weights.iter().filter(|&&c| c != 0).collect();
        nz.len() == 1 && nz[0].abs() == 2
    }

    pub fn is_short(&self) -> bool {
        let nz: Vec<_> = self.weights.iter().filter(|&&c| c != 0).collect();
        nz.len() == 2 && nz.iter().all(|c| c.abs() == 1)
    }

    /// Nonzero coordinates as `(index, coefficient)`, 0-based index.
    pub fn support(&self) -> Vec<(usize, i32)> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, c))
            .collect()
    }

    pub fn neg(&self) -> Root {
        Root {
            weights: self.weights.iter().map(|c| -c).collect(),
        }
    }

    pub fn inner(&self, other: &Root) -> i32 {
        self.weights.iter().zip(&other.weights).map(|(a, b)| a * b).sum()
    }

    /// `iα + jβ` when it is a root.
    pub fn combine(&self, i: i32, other: &Root, j: i32) -> Option<Root> {
        let w = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| i * a + j * b)
            .collect();
        Root::from_weights_unchecked(w)
    }

    pub fn parse(s: &str, n: usize) -> Result<Root> {
        let bad = || Error::InvalidRoot(s.to_string());
        let mut w = vec![0; n];
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(bad());
        }
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'+' => 1,
                b'-' => -1,
                _ => return Err(bad()),
            };
            rest = &rest[1..];
            let coef = if let Some(r) = rest.strip_prefix('2') {
                rest = r;
                2
            } else {
                1
            };
            rest = rest.strip_prefix('e').ok_or_else(bad)?;
            let end = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            let idx: usize = rest[..end].parse().map_err(|_| bad())?;
            rest = &rest[end..];
            if idx == 0 || idx > n || w[idx - 1] != 0 {
                return Err(bad());
            }
            w[idx - 1] = sign * coef;
        }
        Root::new(w).map_err(|_| bad())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.support() {
            let sign = if c > 0 { '+' } else { '-' };
            if c.abs() == 2 {
                write!(f, "{sign}2e{}", k + 1)?;
            } else {
                write!(f, "{sign}e{}", k + 1)?;
            }
        }
        Ok(())
    }
}

/// All `2n²` roots of `C_n`, sorted lexicographically by weight vector.
pub fn roots(n: usize) -> Result<Vec<Root>> {
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    let mut out = Vec::with_capacity(2 * n * n);
    for i in 1..=n {
        for s in [1, -1] {
            out.push(Root::long(n, i, s)?);
        }
        for j in i + 1..=n {
            for si in [1, -1] {
                for sj in [1, -1] {
                    out.push(Root::short(n, i, si, j, sj)?);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Simple roots `e_1 − e_2, …, e_{n−1} − e_n, 2e_n`, in that order.
pub fn simple_roots(n: usize) -> Result<Vec<Root>> {
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    let mut out: Vec<Root> = (1..n)
        .map(|i| Root::short(n, i, 1, i + 1, -1))
        .collect::<Result<_>>()?;
    out.push(Root::long(n, n, 1)?);
    Ok(out)
}

/// The pairs `(i, j)`, `i, j ≥ 1`, with `iα + jβ` a root, in lexicographic order.
pub fn chain(alpha: &Root, beta: &Root) -> Result<Vec<ChainTerm>> {
    check_rank(alpha, beta)?;
    if alpha == beta || *alpha == beta.neg() {
        return Err(Error::ProportionalRoots(alpha.to_string(), beta.to_string()));
    }
    let mut terms = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            if let Some(root) = alpha.combine(i, beta, j) {
                terms.push(ChainTerm {
                    i: i as u32,
                    j: j as u32,
                    root,
                });
            }
        }
    }
    debug_assert!(terms.len() <= 2 && terms.iter().all(|t| t.i <= 2 && t.j <= 2));
    Ok(terms)
}

/// `s_α(β) = β − (2⟨β,α⟩/⟨α,α⟩)·α`.
pub fn reflect(alpha: &Root, beta: &Root) -> Root {
    let k = 2 * beta.inner(alpha) / alpha.inner(alpha);
    Root {
        weights: beta
            .weights
            .iter()
            .zip(&alpha.weights)
            .map(|(b, a)| b - k * a)
            .collect(),
    }
}

/// Shortest sequence `γ_1, …, γ_q` of simple roots with
/// `s_{γ_1} ∘ ⋯ ∘ s_{γ_q}(α) = β`, lexicographically least in the simple-root
/// order among shortest sequences.
pub fn weyl_path(alpha: &Root, beta: &Root) -> Result<Vec<Root>> {
    check_rank(alpha, beta)?;
    if alpha.is_long() != beta.is_long() {
        return Err(Error::MixedLengths(alpha.to_string(), beta.to_string()));
    }
    let simple = simple_roots(alpha.rank())?;

    // distances from α in the orbit graph
    let mut dist: HashMap<Root, usize> = HashMap::new();
    dist.insert(alpha.clone(), 0);
    let mut queue = VecDeque::from([alpha.clone()]);
    while let Some(r) = queue.pop_front() {
        let dr = dist[&r];
        for g in &simple {
            let next = reflect(g, &r);
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), dr + 1);
                queue.push_back(next);
            }
        }
    }
    let Some(&total) = dist.get(beta) else {
        return Err(Error::Internal(format!("{beta} not in the orbit of {alpha}")));
    };

    // walk back from β; γ_1 is the reflection applied last
    let mut path = Vec::with_capacity(total);
    let mut cur = beta.clone();
    for step in (0..total).rev() {
        let g = simple
            .iter()
            .find(|g| dist.get(&reflect(g, &cur)) == Some(&step))
            .ok_or_else(|| Error::Internal("broken BFS layering".into()))?;
        cur = reflect(g, &cur);
        path.push(g.clone());
    }
    Ok(path)
}

/// Applies `s_{γ_1} ∘ ⋯ ∘ s_{γ_q}` to `alpha`.
pub fn apply_path(path: &[Root], alpha: &Root) -> Root {
    path.iter().rev().fold(alpha.clone(), |r, g| reflect(g, &r))
}

fn check_rank(a: &Root, b: &Root) -> Result<()> {
    if a.rank() != b.rank() {
        return Err(Error::InvalidRoot(format!("rank mismatch: {a} vs {b}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn r(s: &str, n: usize) -> Root {
        Root::parse(s, n).unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(roots(2).unwrap().len(), 8);
        assert_eq!(roots(3).unwrap().len(), 18);
        assert!(matches!(roots(1), Err(Error::RankTooSmall(1))));
        let set: HashSet<_> = roots(4).unwrap().into_iter().collect();
        assert_eq!(set.len(), 32);
    }

    #[test]
    fn c2_contents() {
        let all = roots(2).unwrap();
        for s in ["+2e1", "+e1-e2", "+e1+e2", "-2e1", "-e1+e2", "-e1-e2", "+2e2", "-2e2"] {
            assert!(all.contains(&r(s, 2)), "{s}");
        }
    }

    #[test]
    fn text_roundtrip_and_errors() {
        for root in roots(3).unwrap() {
            assert_eq!(Root::parse(&root.to_string(), 3).unwrap(), root);
        }
        assert!(Root::parse("+e1", 2).is_err());
        assert!(Root::parse("+e1+e1", 2).is_err());
        assert!(Root::parse("+2e1+e2", 2).is_err());
        assert!(Root::parse("+e3-e1", 2).is_err());
        assert!(Root::parse("e1-e2", 2).is_err());
    }

    #[test]
    fn chain_examples() {
        let c = chain(&r("+e1-e2", 3), &r("+e2-e3", 3)).unwrap();
        assert_eq!(c, vec![ChainTerm { i: 1, j: 1, root: r("+e1-e3", 3) }]);

        let c = chain(&r("+e1-e2", 2), &r("+2e2", 2)).unwrap();
        assert_eq!(
            c,
            vec![
                ChainTerm { i: 1, j: 1, root: r("+e1+e2", 2) },
                ChainTerm { i: 2, j: 1, root: r("+2e1", 2) },
            ]
        );

        assert!(chain(&r("+2e1", 2), &r("+2e2", 2)).unwrap().is_empty());
        assert!(chain(&r("+2e1", 2), &r("-2e1", 2)).is_err());
        assert!(chain(&r("+2e1", 2), &r("+2e1", 2)).is_err());
    }

    #[test]
    fn chain_terms_are_roots() {
        for n in [2, 3] {
            let all = roots(n).unwrap();
            for a in &all {
                for b in &all {
                    if a == b || *a == b.neg() {
                        continue;
                    }
                    let c = chain(a, b).unwrap();
                    assert!(c.len() <= 2);
                    assert!(c.iter().all(|t| all.contains(&t.root)));
                }
            }
        }
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(reflect(&r("+2e1", 2), &r("+2e1", 2)), r("-2e1", 2));
        assert_eq!(reflect(&r("+2e1", 2), &r("+e1+e2", 2)), r("-e1+e2", 2));
        assert_eq!(reflect(&r("+2e1", 3), &r("+e2-e3", 3)), r("+e2-e3", 3));
    }

    #[test]
    fn reflections_permute_roots() {
        for n in [2, 3] {
            let all: HashSet<_> = roots(n).unwrap().into_iter().collect();
            for a in &all {
                let image: HashSet<_> = all.iter().map(|b| reflect(a, b)).collect();
                assert_eq!(image, all);
                for b in &all {
                    assert_eq!(reflect(a, &reflect(a, b)), *b);
                }
            }
        }
    }

    /// Independent oracle: the Weyl group of C_n as signed permutations,
    /// enumerated by BFS over generators; returns the set of roots reachable
    /// from `a`.
    fn orbit_via_group(a: &Root) -> HashSet<Root> {
        let n = a.rank();
        let simple = simple_roots(n).unwrap();
        let mut seen: HashSet<Vec<Root>> = HashSet::new();
        let all = roots(n).unwrap();
        let start = all.clone();
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start);
        let mut orbit = HashSet::new();
        while let Some(img) = queue.pop_front() {
            let pos = all.iter().position(|x| x == a).unwrap();
            orbit.insert(img[pos].clone());
            for g in &simple {
                let next: Vec<Root> = img.iter().map(|x| reflect(g, x)).collect();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        assert_eq!(seen.len(), (1..=n).product::<usize>() * (1 << n));
        orbit
    }

    #[test]
    fn weyl_path_endpoints() {
        for n in [2, 3] {
            let all = roots(n).unwrap();
            for a in &all {
                let orbit = orbit_via_group(a);
                for b in &all {
                    if a.is_long() != b.is_long() {
                        assert!(weyl_path(a, b).is_err());
                        continue;
                    }
                    assert!(orbit.contains(b));
                    let p = weyl_path(a, b).unwrap();
                    assert_eq!(apply_path(&p, a), *b);
                }
            }
        }
    }

    #[test]
    fn weyl_path_examples() {
        let a = r("+2e1", 2);
        assert!(weyl_path(&a, &a).unwrap().is_empty());
        let p = weyl_path(&a, &r("+2e2", 2)).unwrap();
        assert_eq!(p, vec![r("+e1-e2", 2)]);
        let p = weyl_path(&r("+e1-e2", 2), &r("+e1+e2", 2)).unwrap();
        assert!(!p.is_empty());
        assert_eq!(apply_path(&p, &r("+e1-e2", 2)), r("+e1+e2", 2));
    }
}
