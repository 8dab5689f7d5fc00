//! Finitely-supported multiplicity functions over the coefficient-algebra
//! basis, ordered tuples, and their enumerations.
//!
//! Enumeration orders are deterministic everywhere so that recursion results
//! and verification reports are reproducible byte-for-byte.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::BasisId;
use crate::error::{Error, Result};
use crate::rational::{factorial, Int};

/// A multiset: a finitely-supported map from basis indices to positive
/// multiplicities. Zero multiplicities are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Multiset(BTreeMap<BasisId, u32>);

/// An ordered tuple of basis indices; the empty tuple has length 0.
pub type Tuple = Vec<BasisId>;

impl Multiset {
    pub fn empty() -> Self {
        Multiset(BTreeMap::new())
    }

    /// The characteristic multiset of a single element.
    pub fn single(b: BasisId) -> Self {
        Multiset::from_pairs(&[(b, 1)])
    }

    /// `k` copies of a single element.
    pub fn repeated(b: BasisId, k: u32) -> Self {
        Multiset::from_pairs(&[(b, k)])
    }

    pub fn from_pairs(pairs: &[(BasisId, u32)]) -> Self {
        let mut m = BTreeMap::new();
        for &(b, k) in pairs {
            if k > 0 {
                *m.entry(b).or_insert(0) += k;
            }
        }
        Multiset(m)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total size `|chi|`.
    pub fn size(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn get(&self, b: BasisId) -> u32 {
        self.0.get(&b).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = BasisId> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisId, u32)> + '_ {
        self.0.iter().map(|(&b, &k)| (b, k))
    }

    /// Largest index in the support, if any.
    pub fn max_index(&self) -> Option<BasisId> {
        self.0.keys().next_back().copied()
    }

    pub fn add(&self, other: &Multiset) -> Multiset {
        let mut m = self.0.clone();
        for (b, k) in other.iter() {
            *m.entry(b).or_insert(0) += k;
        }
        Multiset(m)
    }

    pub fn add_single(&self, b: BasisId, k: u32) -> Multiset {
        self.add(&Multiset::repeated(b, k))
    }

    /// Pointwise comparison `self <= other`.
    pub fn leq(&self, other: &Multiset) -> bool {
        self.iter().all(|(b, k)| k <= other.get(b))
    }

    /// Pointwise subtraction; fails unless `other <= self`.
    pub fn sub(&self, other: &Multiset) -> Result<Multiset> {
        let mut m = self.0.clone();
        for (b, k) in other.iter() {
            let have = m.get(&b).copied().unwrap_or(0);
            if have < k {
                return Err(Error::MultisetUnderflow(b.0));
            }
            if have == k {
                m.remove(&b);
            } else {
                m.insert(b, have - k);
            }
        }
        Ok(Multiset(m))
    }

    /// The multinomial coefficient `|chi|! / prod chi(a)!`.
    pub fn multinomial(&self) -> Int {
        let mut acc = factorial(self.size());
        for (_, k) in self.iter() {
            acc /= factorial(k);
        }
        acc
    }

    /// All sub-multisets `psi <= self`, in deterministic order.
    pub fn subsets(&self) -> Vec<Multiset> {
        let entries: Vec<(BasisId, u32)> = self.iter().collect();
        let mut out = Vec::new();
        let mut current = Vec::new();
        subsets_rec(&entries, 0, &mut current, &mut out);
        out
    }

    /// All `psi <= self` with `|psi| = k`, in deterministic order: for equal
    /// prefixes, larger multiplicity of the earliest index comes first.
    pub fn subsets_of_size(&self, k: u32) -> Vec<Multiset> {
        self.subsets()
            .into_iter()
            .filter(|p| p.size() == k)
            .collect()
    }

    /// Every ordered `k`-list of multisets summing to `self`, exactly once.
    pub fn compositions(&self, k: usize) -> Vec<Vec<Multiset>> {
        assert!(k >= 1, "compositions need at least one part");
        let entries: Vec<(BasisId, u32)> = self.iter().collect();
        let mut out = Vec::new();
        let mut current = vec![Multiset::empty(); k];
        compositions_rec(&entries, 0, k, &mut current, &mut out);
        out
    }

    /// Render with labels supplied by the caller, e.g. `{t:2, t^2:1}`.
    pub fn render(&self, label: impl Fn(BasisId) -> String) -> String {
        let parts: Vec<String> = self
            .iter()
            .map(|(b, k)| format!("{}:{}", label(b), k))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(|b| format!("#{}", b.0)))
    }
}

fn subsets_rec(
    entries: &[(BasisId, u32)],
    pos: usize,
    current: &mut Vec<(BasisId, u32)>,
    out: &mut Vec<Multiset>,
) {
    if pos == entries.len() {
        out.push(Multiset::from_pairs(current));
        return;
    }
    let (b, max) = entries[pos];
    // larger multiplicities first, so the earliest-index-heavy subsets lead
    for k in (0..=max).rev() {
        if k > 0 {
            current.push((b, k));
        }
        subsets_rec(entries, pos + 1, current, out);
        if k > 0 {
            current.pop();
        }
    }
}

fn compositions_rec(
    entries: &[(BasisId, u32)],
    pos: usize,
    k: usize,
    current: &mut Vec<Multiset>,
    out: &mut Vec<Vec<Multiset>>,
) {
    if pos == entries.len() {
        out.push(current.clone());
        return;
    }
    let (b, total) = entries[pos];
    let mut split = vec![0u32; k];
    distribute_rec(b, total, 0, k, &mut split, entries, pos, current, out);
}

#[allow(clippy::too_many_arguments)]
fn distribute_rec(
    b: BasisId,
    remaining: u32,
    part: usize,
    k: usize,
    split: &mut Vec<u32>,
    entries: &[(BasisId, u32)],
    pos: usize,
    current: &mut Vec<Multiset>,
    out: &mut Vec<Vec<Multiset>>,
) {
    if part == k - 1 {
        split[part] = remaining;
        for (j, &c) in split.iter().enumerate() {
            if c > 0 {
                current[j] = current[j].add_single(b, c);
            }
        }
        compositions_rec(entries, pos + 1, k, current, out);
        for (j, &c) in split.iter().enumerate() {
            if c > 0 {
                current[j] = current[j].sub(&Multiset::repeated(b, c)).unwrap();
            }
        }
        return;
    }
    for c in 0..=remaining {
        split[part] = c;
        distribute_rec(b, remaining - c, part + 1, k, split, entries, pos, current, out);
    }
}

/// All multisets of the given size with support inside `0..window`.
pub fn multisets_of_size(window: usize, size: u32) -> Vec<Multiset> {
    let full = Multiset::from_pairs(
        &(0..window)
            .map(|i| (BasisId(i), size))
            .collect::<Vec<_>>(),
    );
    full.subsets_of_size(size)
}

/// All multisets of size at most `max` with support inside `0..window`.
pub fn multisets_up_to(window: usize, max: u32) -> Vec<Multiset> {
    (0..=max)
        .flat_map(|s| multisets_of_size(window, s))
        .collect()
}

/// All ordered tuples of length `n` over `0..window` (repeats allowed).
pub fn all_tuples(window: usize, n: usize) -> Vec<Tuple> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in all_tuples(window, n - 1) {
        for i in 0..window {
            let mut t = vec![BasisId(i)];
            t.extend_from_slice(&rest);
            out.push(t);
        }
    }
    out.sort();
    out
}

/// Strictly increasing tuples of length `n` over `0..window`.
pub fn increasing_tuples(window: usize, n: usize) -> Vec<Tuple> {
    fn rec(window: usize, n: usize, start: usize, acc: &mut Tuple, out: &mut Vec<Tuple>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for i in start..window {
            acc.push(BasisId(i));
            rec(window, n, i + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(window, n, 0, &mut Vec::new(), &mut out);
    out
}

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(pool: &mut Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pool.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..pool.len() {
            let v = pool.remove(i);
            acc.push(v);
            rec(pool, acc, out);
            acc.pop();
            pool.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..m).collect(), &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(i: usize) -> BasisId {
        BasisId(i)
    }

    #[test]
    fn sizes() {
        assert_eq!(Multiset::empty().size(), 0);
        assert_eq!(Multiset::from_pairs(&[(b(0), 2), (b(1), 1)]).size(), 3);
        assert_eq!(Multiset::single(b(0)).size(), 1);
    }

    #[test]
    fn order_and_subtraction() {
        let big = Multiset::from_pairs(&[(b(0), 2), (b(1), 1)]);
        let small = Multiset::single(b(0));
        assert!(small.leq(&big));
        assert!(!Multiset::single(b(1)).leq(&Multiset::repeated(b(0), 2)));
        assert_eq!(
            big.sub(&small).unwrap(),
            Multiset::from_pairs(&[(b(0), 1), (b(1), 1)])
        );
        assert!(small.sub(&big).is_err());
    }

    #[test]
    fn multinomials() {
        assert_eq!(Multiset::empty().multinomial(), Int::from(1));
        let m = Multiset::from_pairs(&[(b(0), 2), (b(1), 1)]);
        assert_eq!(m.multinomial(), Int::from(3));
        let m = Multiset::from_pairs(&[(b(0), 1), (b(1), 1), (b(2), 1)]);
        assert_eq!(m.multinomial(), Int::from(6));
    }

    #[test]
    fn subsets_of_size_examples() {
        assert_eq!(
            Multiset::repeated(b(0), 2).subsets_of_size(1),
            vec![Multiset::single(b(0))]
        );
        let ab = Multiset::from_pairs(&[(b(0), 1), (b(1), 1)]);
        assert_eq!(
            ab.subsets_of_size(1),
            vec![Multiset::single(b(0)), Multiset::single(b(1))]
        );
        assert!(ab.subsets_of_size(5).is_empty());
    }

    #[test]
    fn composition_examples() {
        let two_a = Multiset::repeated(b(0), 2);
        let comps = two_a.compositions(2);
        assert_eq!(
            comps,
            vec![
                vec![Multiset::empty(), two_a.clone()],
                vec![Multiset::single(b(0)), Multiset::single(b(0))],
                vec![two_a.clone(), Multiset::empty()],
            ]
        );
        let ab = Multiset::from_pairs(&[(b(0), 1), (b(1), 1)]);
        assert_eq!(ab.compositions(2).len(), 4);
        assert_eq!(ab.compositions(1), vec![vec![ab.clone()]]);
    }

    #[test]
    fn composition_count_formula() {
        // |comp_k(chi)| = prod_a binom(chi(a)+k-1, k-1)
        use crate::rational::binomial_i64;
        for window in 1..=3usize {
            for chi in multisets_up_to(window, 4) {
                for k in 1..=3usize {
                    let expect: Int = chi
                        .iter()
                        .map(|(_, c)| binomial_i64(c as i64 + k as i64 - 1, k as u32 - 1))
                        .product();
                    assert_eq!(Int::from(chi.compositions(k).len()), expect);
                }
            }
        }
    }

    #[test]
    fn enumeration_windows() {
        assert_eq!(multisets_of_size(2, 0), vec![Multiset::empty()]);
        assert_eq!(multisets_of_size(2, 2).len(), 3);
        assert_eq!(multisets_up_to(3, 3).len(), 20);
        assert_eq!(all_tuples(2, 2).len(), 4);
        assert_eq!(increasing_tuples(3, 2).len(), 3);
        assert_eq!(increasing_tuples(1, 2).len(), 0);
        assert_eq!(increasing_tuples(2, 0), vec![Vec::<BasisId>::new()]);
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
    }
}
