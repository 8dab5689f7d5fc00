//! The natural module, the Koszul-signed symmetric-group action on its
//! tensor powers, the signed-symmetric subspace with its combinatorial
//! basis, and the enveloping-algebra action through the iterated coproduct.
//!
//! The natural module is realized by explicit matrices (`x1 = e_{12}`,
//! `x2 = e_{23}`, `x3 = e_{13}`, their transposes for the negative roots,
//! `h1 = e_{11} - e_{22}`, `h2 = e_{22} + e_{33}`), independently of the
//! stored bracket table; the verifier cross-checks the two.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{AlgElem, Algebra, BasisId};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::multiset::{increasing_tuples, multisets_of_size, permutations, Multiset, Tuple};
use crate::pbw::UElem;
use crate::rational::{factorial, multichoose, Int, Rational};
use crate::sl21::GenId;

/// Basis slots of the natural module; `v2 = x_{-1} v1` and `v3 = x_{-3} v1`.
/// `v3` is the odd one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    V1,
    V2,
    V3,
}

impl Slot {
    pub fn parity(self) -> u32 {
        match self {
            Slot::V3 => 1,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Slot::V1 => "v1",
            Slot::V2 => "v2",
            Slot::V3 => "v3",
        }
    }
}

/// A basis vector of the natural module tensored with the coefficient
/// algebra: a slot together with a basis element of the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisVec {
    pub slot: Slot,
    pub basis: BasisId,
}

impl BasisVec {
    pub fn new(slot: Slot, basis: BasisId) -> Self {
        BasisVec { slot, basis }
    }

    pub fn parity(&self) -> u32 {
        self.slot.parity()
    }
}

/// Action of a Chevalley generator on a slot, from the matrix realization.
/// Returns the image slot and an integer coefficient.
pub fn slot_action(z: GenId, s: Slot) -> Option<(Slot, i64)> {
    use GenId::*;
    use Slot::*;
    match (z, s) {
        (X1, V2) => Some((V1, 1)),
        (X2, V3) => Some((V2, 1)),
        (X3, V3) => Some((V1, 1)),
        (Xm1, V1) => Some((V2, 1)),
        (Xm2, V2) => Some((V3, 1)),
        (Xm3, V1) => Some((V3, 1)),
        (H1, V1) => Some((V1, 1)),
        (H1, V2) => Some((V2, -1)),
        (H2, V2) => Some((V2, 1)),
        (H2, V3) => Some((V3, 1)),
        _ => None,
    }
}

/// `(z (x) a)(w (x) b) = (z w) (x) (a b)`, expanded over the basis.
pub fn nat_act(alg: &Algebra, z: GenId, a: &AlgElem, w: &BasisVec) -> Result<Vec<(BasisVec, Rational)>> {
    let Some((slot, coeff)) = slot_action(z, w.slot) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for (ca, c) in a.iter() {
        let prod = alg.mul_basis(ca, w.basis)?;
        for (b, r) in prod.iter() {
            out.push((BasisVec::new(slot, b), c * r * Rational::from_integer(Int::from(coeff))));
        }
    }
    Ok(out)
}

/// A finitely-supported rational combination of pure tensors of fixed
/// degree. Degree 0 is the scalar line (single empty key).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    m: usize,
    terms: BTreeMap<Vec<BasisVec>, Rational>,
}

impl Tensor {
    pub fn zero(m: usize) -> Self {
        Tensor {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn pure(key: Vec<BasisVec>, coeff: Rational) -> Self {
        let mut t = Tensor::zero(key.len());
        t.add_term(key, coeff);
        t
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<BasisVec>, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, key: Vec<BasisVec>, coeff: Rational) {
        assert_eq!(key.len(), self.m, "tensor keys must have length m");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        if self.m != other.m {
            return Err(Error::DegreeMismatch {
                expected: self.m,
                got: other.m,
            });
        }
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        if c.is_zero() {
            return Tensor::zero(self.m);
        }
        Tensor {
            m: self.m,
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "terms": self.terms()
                .map(|(k, c)| json!({
                    "coeff": c.to_string(),
                    "key": k.iter().map(|v| json!([v.slot.name(), v.basis.0])).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, alg: &Algebra) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(k, c)| {
                let key = k
                    .iter()
                    .map(|v| format!("{}({})", v.slot.name(), alg.label(v.basis)))
                    .collect::<Vec<_>>()
                    .join("(x)");
                if key.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c} {key}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&Algebra::Poly))
    }
}

/// The sign `gamma(w, sigma)`: a factor `-1` for every inversion of `sigma`
/// whose two moved factors are both odd.
fn koszul_sign(key: &[BasisVec], sigma: &[usize]) -> i64 {
    let mut sign = 1i64;
    for j in 0..sigma.len() {
        for k in (j + 1)..sigma.len() {
            if sigma[j] > sigma[k]
                && key[sigma[j]].parity() == 1
                && key[sigma[k]].parity() == 1
            {
                sign = -sign;
            }
        }
    }
    sign
}

/// The action of `sigma^{-1}` on a tensor:
/// `sigma^{-1}(w_1 (x) ... (x) w_m) = gamma(w, sigma) w_{sigma(1)} (x) ... (x) w_{sigma(m)}`.
pub fn sigma_act(sigma: &[usize], t: &Tensor) -> Result<Tensor> {
    if sigma.len() != t.m {
        return Err(Error::DegreeMismatch {
            expected: t.m,
            got: sigma.len(),
        });
    }
    let mut out = Tensor::zero(t.m);
    for (key, c) in t.terms() {
        let sign = koszul_sign(key, sigma);
        let new_key: Vec<BasisVec> = sigma.iter().map(|&j| key[j]).collect();
        out.add_term(new_key, c * Rational::from_integer(Int::from(sign)));
    }
    Ok(out)
}

/// Sum of the actions of all permutations.
pub fn symmetrize(t: &Tensor) -> Tensor {
    let mut out = Tensor::zero(t.m);
    for sigma in permutations(t.m) {
        out = out.add(&sigma_act(&sigma, t).unwrap()).unwrap();
    }
    out
}

/// Apply a single generator `z (x) b` through the primitive coproduct: it
/// acts in each slot in turn, with the Koszul sign over the slots passed.
pub fn act_gen(alg: &Algebra, z: GenId, b: BasisId, t: &Tensor) -> Result<Tensor> {
    let elem = AlgElem::basis(b);
    let mut out = Tensor::zero(t.m);
    for (key, c) in t.terms() {
        for j in 0..t.m {
            let passed: u32 = key[..j].iter().map(BasisVec::parity).sum();
            let sign = if z.parity() * (passed % 2) == 1 { -1 } else { 1 };
            for (img, r) in nat_act(alg, z, &elem, &key[j])? {
                let mut new_key = key.clone();
                new_key[j] = img;
                out.add_term(
                    new_key,
                    c * r * Rational::from_integer(Int::from(sign)),
                );
            }
        }
    }
    Ok(out)
}

/// Act by an enveloping-algebra element: each monomial is applied
/// factor-by-factor, right to left; valid because the coproduct action is an
/// algebra homomorphism.
pub fn act_elem(alg: &Algebra, u: &UElem, t: &Tensor) -> Result<Tensor> {
    let mut out = Tensor::zero(t.degree());
    for (mono, c) in u.terms() {
        let mut acc = t.clone();
        for &(g, e) in mono.factors().iter().rev() {
            for _ in 0..e {
                acc = act_gen(alg, g.gen, g.basis, &acc)?;
                if acc.is_zero() {
                    break;
                }
            }
            if acc.is_zero() {
                break;
            }
        }
        out = out.add(&acc.scale(c))?;
    }
    Ok(out)
}

/// Index of a basis vector of the symmetric subspace: multisets for the
/// `v1` and `v2` legs and a strictly increasing tuple for the `v3` legs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeylIndex {
    pub phi1: Multiset,
    pub phi2: Multiset,
    pub xi: Tuple,
}

impl WeylIndex {
    /// Canonicalize a raw triple: sorts `xi` tracking the sign of the
    /// permutation; a repeated entry means the corresponding vector is zero
    /// and yields `None`.
    pub fn canonical(phi1: Multiset, phi2: Multiset, xi: Tuple) -> Option<(WeylIndex, i64)> {
        let mut indexed: Vec<BasisId> = xi;
        let mut sign = 1i64;
        // insertion sort, counting transpositions of the odd legs
        for i in 1..indexed.len() {
            let mut j = i;
            while j > 0 && indexed[j - 1] > indexed[j] {
                indexed.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if indexed.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((
            WeylIndex {
                phi1,
                phi2,
                xi: indexed,
            },
            sign,
        ))
    }

    /// Total degree `|phi1| + |phi2| + n`.
    pub fn degree(&self) -> usize {
        self.phi1.size() as usize + self.phi2.size() as usize + self.xi.len()
    }

    pub fn to_json(&self, alg: &Algebra) -> Value {
        let ms_json = |m: &Multiset| {
            let mut obj = serde_json::Map::new();
            for (b, k) in m.iter() {
                obj.insert(alg.label(b), json!(k));
            }
            Value::Object(obj)
        };
        json!({
            "phi1": ms_json(&self.phi1),
            "phi2": ms_json(&self.phi2),
            "xi": self.xi.iter().map(|b| b.0).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, alg: &Algebra) -> String {
        let label = |b: BasisId| alg.label(b);
        format!(
            "({}, {}, ({}))",
            self.phi1.render(label),
            self.phi2.render(label),
            self.xi
                .iter()
                .map(|&b| alg.label(b))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// The basis vector attached to an index: the symmetrization of the pure
/// tensor with `phi1(a)` copies of `v1 (x) a`, `phi2(b)` copies of
/// `v2 (x) b`, and one `v3 (x) xi(j)` per tuple entry, scaled by the
/// divided-power normalization `1/phi(a)!` per repeated leg.
pub fn v_vector(alg: &Algebra, idx: &WeylIndex) -> Result<Tensor> {
    let mut key = Vec::with_capacity(idx.degree());
    let mut norm = Rational::one();
    for (b, k) in idx.phi1.iter() {
        alg.check_index(b)?;
        for _ in 0..k {
            key.push(BasisVec::new(Slot::V1, b));
        }
        norm /= Rational::from_integer(factorial(k));
    }
    for (b, k) in idx.phi2.iter() {
        alg.check_index(b)?;
        for _ in 0..k {
            key.push(BasisVec::new(Slot::V2, b));
        }
        norm /= Rational::from_integer(factorial(k));
    }
    for &b in &idx.xi {
        alg.check_index(b)?;
        key.push(BasisVec::new(Slot::V3, b));
    }
    Ok(symmetrize(&Tensor::pure(key, norm)))
}

/// The highest weight tensor `(v1 (x) 1)^{(x) m}`.
pub fn highest_weight_vector(m: usize) -> Tensor {
    Tensor::pure(vec![BasisVec::new(Slot::V1, BasisId(0)); m], Rational::one())
}

/// All canonical indices of total degree `m` with entries in `0..window`,
/// in deterministic order.
pub fn ts_basis(m: usize, window: usize) -> Vec<WeylIndex> {
    let mut out = Vec::new();
    for n in 0..=m.min(window) {
        for xi in increasing_tuples(window, n) {
            let rest = (m - n) as u32;
            for s1 in 0..=rest {
                for phi1 in multisets_of_size(window, s1) {
                    for phi2 in multisets_of_size(window, rest - s1) {
                        out.push(WeylIndex {
                            phi1: phi1.clone(),
                            phi2,
                            xi: xi.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Dimension of the symmetric subspace by the counting formula:
/// sum over n of C(window, n) * multichoose(2*window, m - n).
pub fn ts_dim_formula(m: usize, window: usize) -> Int {
    let mut acc = Int::zero();
    for n in 0..=m.min(window) {
        let odd = crate::rational::binomial_i64(window as i64, n as u32);
        let even = multichoose(2 * window, (m - n) as u32);
        acc += odd * even;
    }
    acc
}

/// Register tensor keys as coordinates, shared by rank computations.
#[derive(Default)]
pub struct KeyIndex {
    by_key: BTreeMap<Vec<BasisVec>, usize>,
    keys: Vec<Vec<BasisVec>>,
}

impl KeyIndex {
    pub fn coordinates(&mut self, t: &Tensor) -> SparseVec {
        let mut v = SparseVec::new();
        for (k, c) in t.terms() {
            let next = self.by_key.len();
            let i = *self.by_key.entry(k.clone()).or_insert(next);
            if i == self.keys.len() {
                self.keys.push(k.clone());
            }
            v.insert(i, c.clone());
        }
        v
    }

    pub fn key_of(&self, i: usize) -> Option<&Vec<BasisVec>> {
        self.keys.get(i)
    }
}

/// Rank of the symmetrizer on all pure tensors of degree `m` over the
/// window: an independent computation of the dimension of the symmetric
/// subspace.
pub fn symmetrizer_rank(m: usize, window: usize) -> usize {
    let mut keys = KeyIndex::default();
    let mut ech = Echelon::new(false);
    for key in all_keys(m, window) {
        let img = symmetrize(&Tensor::pure(key, Rational::one()));
        ech.insert(keys.coordinates(&img));
    }
    ech.rank()
}

/// All pure-tensor keys of degree `m` over the window, lexicographic.
pub fn all_keys(m: usize, window: usize) -> Vec<Vec<BasisVec>> {
    let singles: Vec<BasisVec> = [Slot::V1, Slot::V2, Slot::V3]
        .into_iter()
        .flat_map(|s| (0..window).map(move |i| BasisVec::new(s, BasisId(i))))
        .collect();
    let mut keys: Vec<Vec<BasisVec>> = vec![vec![]];
    for _ in 0..m {
        keys = keys
            .into_iter()
            .flat_map(|k| {
                singles.iter().map(move |&v| {
                    let mut k2 = k.clone();
                    k2.push(v);
                    k2
                })
            })
            .collect();
    }
    keys
}

/// Solver for coordinates in the symmetric-subspace basis at a fixed degree
/// and window. Building it verifies that the basis vectors are linearly
/// independent.
pub struct TsSolver {
    m: usize,
    indices: Vec<WeylIndex>,
    keys: KeyIndex,
    ech: Echelon,
}

impl TsSolver {
    pub fn new(alg: &Algebra, m: usize, window: usize) -> Result<TsSolver> {
        let indices = ts_basis(m, window);
        let mut keys = KeyIndex::default();
        let mut ech = Echelon::new(true);
        for idx in &indices {
            let col = v_vector(alg, idx)?;
            let coords = keys.coordinates(&col);
            if coords.is_empty() {
                return Err(Error::NotInSpan(format!(
                    "candidate basis vector {} is zero",
                    idx.render(alg)
                )));
            }
            ech.insert(coords);
        }
        Ok(TsSolver {
            m,
            indices,
            keys,
            ech,
        })
    }

    pub fn indices(&self) -> &[WeylIndex] {
        &self.indices
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// Exact coordinates of `t` over the basis. Checks first that `t` lies
    /// in the symmetric subspace via the idempotent `symmetrize / m!`.
    pub fn express(&mut self, t: &Tensor) -> Result<Vec<(usize, Rational)>> {
        if t.degree() != self.m {
            return Err(Error::DegreeMismatch {
                expected: self.m,
                got: t.degree(),
            });
        }
        let resym = symmetrize(t);
        if resym != t.scale(&Rational::from_integer(factorial(self.m as u32))) {
            return Err(Error::NotSymmetric);
        }
        let coords = self.keys.coordinates(t);
        match self.ech.solve(coords) {
            Ok(c) => Ok(c.into_iter().collect()),
            Err(residual) => {
                let coord = residual.keys().next().copied().unwrap_or(0);
                let name = self
                    .keys
                    .key_of(coord)
                    .map(|k| {
                        k.iter()
                            .map(|v| format!("{}(#{})", v.slot.name(), v.basis.0))
                            .collect::<Vec<_>>()
                            .join("(x)")
                    })
                    .unwrap_or_else(|| format!("#{coord}"));
                Err(Error::NotInSpan(name))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::sl21::{bracket, ALL_GENERATORS};

    fn b(i: usize) -> BasisId {
        BasisId(i)
    }

    fn bv(s: Slot, i: usize) -> BasisVec {
        BasisVec::new(s, b(i))
    }

    #[test]
    fn natural_action_examples() {
        let alg = Algebra::Poly;
        let one = AlgElem::unit();
        let got = nat_act(&alg, GenId::Xm1, &one, &bv(Slot::V1, 1)).unwrap();
        assert_eq!(got, vec![(bv(Slot::V2, 1), rat_int(1))]);
        assert!(nat_act(&alg, GenId::Xm1, &one, &bv(Slot::V3, 1))
            .unwrap()
            .is_empty());
        assert!(nat_act(&alg, GenId::H1, &one, &bv(Slot::V3, 1))
            .unwrap()
            .is_empty());
        let got = nat_act(&alg, GenId::H1, &one, &bv(Slot::V2, 0)).unwrap();
        assert_eq!(got, vec![(bv(Slot::V2, 0), rat_int(-1))]);
    }

    #[test]
    fn matrix_realization_reproduces_the_bracket_table() {
        // supercommutator of slot matrices == stored table, all 64 pairs
        for z in ALL_GENERATORS {
            for w in ALL_GENERATORS {
                for s in [Slot::V1, Slot::V2, Slot::V3] {
                    // z(w(s)) - (-1)^{p(z)p(w)} w(z(s))
                    let mut acc: BTreeMap<Slot, i64> = BTreeMap::new();
                    if let Some((s1, c1)) = slot_action(w, s) {
                        if let Some((s2, c2)) = slot_action(z, s1) {
                            *acc.entry(s2).or_insert(0) += c1 * c2;
                        }
                    }
                    let sign = if z.parity() * w.parity() == 1 { 1 } else { -1 };
                    if let Some((s1, c1)) = slot_action(z, s) {
                        if let Some((s2, c2)) = slot_action(w, s1) {
                            *acc.entry(s2).or_insert(0) += sign * c1 * c2;
                        }
                    }
                    acc.retain(|_, c| *c != 0);
                    let mut expect: BTreeMap<Slot, i64> = BTreeMap::new();
                    for &(g, k) in bracket(z, w) {
                        if let Some((s2, c)) = slot_action(g, s) {
                            *expect.entry(s2).or_insert(0) += k * c;
                        }
                    }
                    expect.retain(|_, c| *c != 0);
                    assert_eq!(acc, expect, "cross-check fails at [{z:?},{w:?}] on {s:?}");
                }
            }
        }
    }

    #[test]
    fn sigma_action_examples() {
        let swap = vec![1, 0];
        let odd_pair = Tensor::pure(vec![bv(Slot::V3, 0), bv(Slot::V3, 1)], rat_int(1));
        let got = sigma_act(&swap, &odd_pair).unwrap();
        assert_eq!(
            got,
            Tensor::pure(vec![bv(Slot::V3, 1), bv(Slot::V3, 0)], rat_int(-1))
        );

        let mixed = Tensor::pure(vec![bv(Slot::V1, 0), bv(Slot::V3, 1)], rat_int(1));
        let got = sigma_act(&swap, &mixed).unwrap();
        assert_eq!(
            got,
            Tensor::pure(vec![bv(Slot::V3, 1), bv(Slot::V1, 0)], rat_int(1))
        );

        let id = vec![0, 1];
        assert_eq!(sigma_act(&id, &mixed).unwrap(), mixed);
        assert!(sigma_act(&[0], &mixed).is_err());
    }

    #[test]
    fn group_action_property_s3() {
        let t = Tensor::pure(
            vec![bv(Slot::V3, 0), bv(Slot::V1, 1), bv(Slot::V3, 1)],
            rat(3, 2),
        );
        for sigma in permutations(3) {
            for tau in permutations(3) {
                // composition sigma then tau equals acting by (sigma . tau)
                let composed: Vec<usize> = (0..3).map(|j| sigma[tau[j]]).collect();
                let stepwise = sigma_act(&tau, &sigma_act(&sigma, &t).unwrap()).unwrap();
                assert_eq!(sigma_act(&composed, &t).unwrap(), stepwise);
            }
        }
    }

    #[test]
    fn symmetrize_examples() {
        let single = Tensor::pure(vec![bv(Slot::V2, 1)], rat_int(1));
        assert_eq!(symmetrize(&single), single);

        let odd_self = Tensor::pure(vec![bv(Slot::V3, 0), bv(Slot::V3, 0)], rat_int(1));
        assert!(symmetrize(&odd_self).is_zero());

        let mixed = Tensor::pure(vec![bv(Slot::V1, 0), bv(Slot::V2, 1)], rat_int(1));
        let mut expect = Tensor::zero(2);
        expect.add_term(vec![bv(Slot::V1, 0), bv(Slot::V2, 1)], rat_int(1));
        expect.add_term(vec![bv(Slot::V2, 1), bv(Slot::V1, 0)], rat_int(1));
        assert_eq!(symmetrize(&mixed), expect);
    }

    #[test]
    fn act_examples() {
        let alg = Algebra::Poly;
        let v2 = highest_weight_vector(2);
        let got = act_gen(&alg, GenId::Xm3, b(0), &v2).unwrap();
        let mut expect = Tensor::zero(2);
        expect.add_term(vec![bv(Slot::V3, 0), bv(Slot::V1, 0)], rat_int(1));
        expect.add_term(vec![bv(Slot::V1, 0), bv(Slot::V3, 0)], rat_int(1));
        assert_eq!(got, expect);

        // x1 kills the highest weight vector
        for m in 0..4 {
            let v = highest_weight_vector(m);
            assert!(act_gen(&alg, GenId::X1, b(2), &v).unwrap().is_zero());
        }
    }

    #[test]
    fn weight_eigenvalues_on_basis_vectors() {
        // h1 acts by |phi1| - |phi2|, h2 by |phi2| + n; oracle is the
        // slot-wise diagonal action
        let alg = Algebra::Trunc(2);
        for m in 0..=3 {
            for idx in ts_basis(m, 2) {
                let v = v_vector(&alg, &idx).unwrap();
                let h1v = act_elem(&alg, &UElem::gen(crate::pbw::Generator::new(GenId::H1, b(0))), &v).unwrap();
                let ev1 = idx.phi1.size() as i64 - idx.phi2.size() as i64;
                assert_eq!(h1v, v.scale(&rat_int(ev1)), "h1 on {idx:?}");
                let h2v = act_elem(&alg, &UElem::gen(crate::pbw::Generator::new(GenId::H2, b(0))), &v).unwrap();
                let ev2 = idx.phi2.size() as i64 + idx.xi.len() as i64;
                assert_eq!(h2v, v.scale(&rat_int(ev2)), "h2 on {idx:?}");
            }
        }
    }

    #[test]
    fn v_vector_examples() {
        let alg = Algebra::Poly;
        let idx = WeylIndex {
            phi1: Multiset::single(b(1)),
            phi2: Multiset::empty(),
            xi: vec![],
        };
        assert_eq!(
            v_vector(&alg, &idx).unwrap(),
            Tensor::pure(vec![bv(Slot::V1, 1)], rat_int(1))
        );

        let idx = WeylIndex {
            phi1: Multiset::empty(),
            phi2: Multiset::empty(),
            xi: vec![b(1)],
        };
        assert_eq!(
            v_vector(&alg, &idx).unwrap(),
            Tensor::pure(vec![bv(Slot::V3, 1)], rat_int(1))
        );

        let idx = WeylIndex {
            phi1: Multiset::single(b(0)),
            phi2: Multiset::single(b(1)),
            xi: vec![],
        };
        let mut expect = Tensor::zero(2);
        expect.add_term(vec![bv(Slot::V1, 0), bv(Slot::V2, 1)], rat_int(1));
        expect.add_term(vec![bv(Slot::V2, 1), bv(Slot::V1, 0)], rat_int(1));
        assert_eq!(v_vector(&alg, &idx).unwrap(), expect);

        // repeated even legs absorb the divided-power normalization
        let idx = WeylIndex {
            phi1: Multiset::repeated(b(0), 2),
            phi2: Multiset::empty(),
            xi: vec![],
        };
        assert_eq!(v_vector(&alg, &idx).unwrap(), highest_weight_vector(2));
    }

    #[test]
    fn canonicalization_of_tuples() {
        let (idx, sign) =
            WeylIndex::canonical(Multiset::empty(), Multiset::empty(), vec![b(2), b(1)]).unwrap();
        assert_eq!(idx.xi, vec![b(1), b(2)]);
        assert_eq!(sign, -1);
        assert!(WeylIndex::canonical(Multiset::empty(), Multiset::empty(), vec![b(1), b(1)])
            .is_none());
    }

    #[test]
    fn basis_counts() {
        assert_eq!(ts_basis(1, 1).len(), 3);
        assert_eq!(ts_basis(2, 1).len(), 5);
        assert_eq!(ts_basis(2, 2).len(), 19);
        assert_eq!(ts_basis(0, 1).len(), 1);
        // formula and symmetrizer rank agree
        for (m, w) in [(1usize, 1usize), (2, 1), (2, 2), (3, 1), (1, 2)] {
            let count = ts_basis(m, w).len();
            assert_eq!(Int::from(count), ts_dim_formula(m, w), "formula at ({m},{w})");
            assert_eq!(count, symmetrizer_rank(m, w), "rank at ({m},{w})");
        }
    }

    #[test]
    fn solver_expresses_basis_vectors() {
        let alg = Algebra::Trunc(2);
        let mut solver = TsSolver::new(&alg, 2, 2).unwrap();
        assert_eq!(solver.rank(), 19);
        let idx = solver.indices()[3].clone();
        let v = v_vector(&alg, &idx).unwrap();
        let coords = solver.express(&v).unwrap();
        assert_eq!(coords, vec![(3, rat_int(1))]);

        let zero_coords = solver.express(&Tensor::zero(2)).unwrap();
        assert!(zero_coords.is_empty());

        // something outside the symmetric subspace is rejected
        let lopsided = Tensor::pure(vec![bv(Slot::V1, 0), bv(Slot::V2, 0)], rat_int(1));
        assert!(matches!(
            solver.express(&lopsided),
            Err(Error::NotSymmetric)
        ));
    }

    #[test]
    fn highest_weight_cases() {
        assert_eq!(highest_weight_vector(0).degree(), 0);
        assert!(!highest_weight_vector(0).is_zero());
        assert_eq!(
            highest_weight_vector(1),
            Tensor::pure(vec![bv(Slot::V1, 0)], rat_int(1))
        );
    }

    #[test]
    fn tensor_json_shape() {
        let mut t = Tensor::zero(2);
        t.add_term(vec![bv(Slot::V1, 0), bv(Slot::V2, 1)], rat(1, 2));
        let v = t.to_json();
        assert_eq!(v["m"], 2);
        assert_eq!(v["terms"][0]["coeff"], "1/2");
        assert_eq!(v["terms"][0]["key"][0][0], "v1");
        assert_eq!(v["terms"][0]["key"][1][0], "v2");
        assert_eq!(v["terms"][0]["key"][1][1], 1);
    }

    #[test]
    fn p1_action_on_degree_one_vectors() {
        // p1(chi_a, 0) v1 = -(v2 (x) a); p1(0, chi_b) v1 = -(v1 (x) b);
        // p1(2 chi_a, 0) kills v1 (x) c
        let alg = Algebra::Poly;
        let ops = crate::operators::Operators::new(&alg);
        let v1 = Tensor::pure(vec![bv(Slot::V1, 0)], rat_int(1));

        let p = ops.p1(&Multiset::single(b(1)), &Multiset::empty()).unwrap();
        assert_eq!(
            act_elem(&alg, &p, &v1).unwrap(),
            Tensor::pure(vec![bv(Slot::V2, 1)], rat_int(-1))
        );

        let p = ops.p1(&Multiset::empty(), &Multiset::single(b(1))).unwrap();
        assert_eq!(
            act_elem(&alg, &p, &v1).unwrap(),
            Tensor::pure(vec![bv(Slot::V1, 1)], rat_int(-1))
        );

        let p = ops.p1(&Multiset::repeated(b(1), 2), &Multiset::empty()).unwrap();
        let target = Tensor::pure(vec![bv(Slot::V1, 2)], rat_int(1));
        assert!(act_elem(&alg, &p, &target).unwrap().is_zero());
    }

    #[test]
    fn low_degree_scaling_instance() {
        // degree-1 index inside degree 2: applying p(0, 0, (b)) agrees with
        // -1 times the unit-padded index
        let alg = Algebra::Trunc(2);
        let ops = crate::operators::Operators::new(&alg);
        let v = highest_weight_vector(2);
        let xi = vec![b(1)];
        let low = act_elem(&alg, &ops.p(&Multiset::empty(), &Multiset::empty(), &xi).unwrap(), &v)
            .unwrap();
        let padded = act_elem(
            &alg,
            &ops.p(&Multiset::single(b(0)), &Multiset::empty(), &xi).unwrap(),
            &v,
        )
        .unwrap();
        assert_eq!(low, padded.scale(&rat_int(-1)));
    }
}
