//! The enveloping algebra of the map superalgebra: ordered monomials, super
//! normal-ordering rewriting, divided powers, binomials in the Cartan
//! generators, and the degree/ideal-membership queries built on top of the
//! normal form.
//!
//! A monomial is a product of generators `z (x) b` (`z` a Chevalley
//! generator, `b` a basis element of the coefficient algebra), strictly
//! increasing in the total order `xm1 < h1 < xm3 < xm2 < h2 < x2 < x3 < x1`
//! refined by basis index within each family. Odd generators square to zero,
//! so they carry exponent 1. Every product is rewritten to a rational
//! combination of such monomials by bubbling the leftmost inversion:
//!
//! ```text
//! u v  ->  (-1)^{p(u)p(v)} v u + [u, v]
//! ```
//!
//! Each rewrite either shortens the word or reduces inversions at fixed
//! length, so the procedure terminates.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{AlgElem, Algebra, BasisId};
use crate::error::Result;
use crate::rational::{factorial, Int, Rational};
use crate::sl21::{bracket_tensor, GenId};

/// A single generator of the map superalgebra: `gen (x) basis`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub gen: GenId,
    pub basis: BasisId,
}

impl Generator {
    pub fn new(gen: GenId, basis: BasisId) -> Self {
        Generator { gen, basis }
    }

    pub fn parity(&self) -> u32 {
        self.gen.parity()
    }
}

/// A normally ordered monomial: factors strictly increasing in generator
/// order, exponents positive, odd factors with exponent 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Generator, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn single(g: Generator, exp: u32) -> Self {
        assert!(exp > 0);
        Monomial(vec![(g, exp)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.0
    }

    /// Run-length encode a word that is already sorted.
    fn from_sorted_word(word: &[Generator]) -> Self {
        let mut factors: Vec<(Generator, u32)> = Vec::new();
        for &g in word {
            match factors.last_mut() {
                Some((prev, e)) if *prev == g => *e += 1,
                _ => factors.push((g, 1)),
            }
        }
        debug_assert!(factors
            .iter()
            .all(|(g, e)| g.parity() == 0 || *e == 1));
        Monomial(factors)
    }

    pub fn parity(&self) -> u32 {
        self.0.iter().map(|(g, e)| g.parity() * e).sum::<u32>() % 2
    }

    /// Total number of generator factors, counted with exponents.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn family_degree(&self, family: GenId) -> u32 {
        self.0
            .iter()
            .filter(|(g, _)| g.gen == family)
            .map(|(_, e)| e)
            .sum()
    }

    fn expand(&self) -> Vec<Generator> {
        let mut word = Vec::with_capacity(self.degree() as usize);
        for &(g, e) in &self.0 {
            for _ in 0..e {
                word.push(g);
            }
        }
        word
    }
}

/// An element of the enveloping algebra: a finitely-supported rational
/// combination of normally ordered monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UElem {
    terms: BTreeMap<Monomial, Rational>,
}

impl UElem {
    pub fn zero() -> Self {
        UElem::default()
    }

    pub fn one() -> Self {
        UElem::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        let mut u = UElem::zero();
        u.add_term(Monomial::one(), c);
        u
    }

    pub fn gen(g: Generator) -> Self {
        let mut u = UElem::zero();
        u.add_term(Monomial::single(g, 1), Rational::one());
        u
    }

    /// `gen (x) a` for a general algebra element, expanded over the basis.
    pub fn gen_alg(gen: GenId, a: &AlgElem) -> Self {
        let mut u = UElem::zero();
        for (b, c) in a.iter() {
            u.add_term(Monomial::single(Generator::new(gen, b), 1), c.clone());
        }
        u
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &UElem) -> UElem {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &UElem) -> UElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UElem {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> UElem {
        if c.is_zero() {
            return UElem::zero();
        }
        UElem {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    /// Bilinear product with re-normalization of every resulting monomial.
    pub fn mul(&self, other: &UElem, alg: &Algebra) -> Result<UElem> {
        let mut out = UElem::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let mut word = m1.expand();
                word.extend(m2.expand());
                let part = normalize_word(alg, c1 * c2, word)?;
                out = out.add(&part);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32, alg: &Algebra) -> Result<UElem> {
        let mut acc = UElem::one();
        for _ in 0..n {
            acc = acc.mul(self, alg)?;
        }
        Ok(acc)
    }

    /// Parity if the element is homogeneous and nonzero.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Max total degree over monomials.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Max per-family degree over monomials.
    pub fn family_degree(&self, family: GenId) -> u32 {
        self.terms
            .keys()
            .map(|m| m.family_degree(family))
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(m, c)| {
                    json!({
                        "coeff": c.to_string(),
                        "mono": m.factors().iter()
                            .map(|(g, e)| json!([g.gen.name(), g.basis.0, e]))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }

    /// Human-readable form, e.g. `xm1:1 x1:1 + h1:1`. Exponents print in
    /// divided-power form `^(e)` with the coefficient adjusted accordingly,
    /// so the output re-parses to the identical element.
    pub fn render(&self, alg: &Algebra) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            // printed coefficient is c * prod e! so that the divided powers
            // written below multiply back to exactly this term
            let mut shown = c.clone();
            for &(_, e) in m.factors() {
                shown *= Rational::from_integer(factorial(e));
            }
            let neg = shown.is_negative();
            let mag = shown.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                parts.push(mag.to_string());
            }
            for &(g, e) in m.factors() {
                let mut s = format!("{}:{}", g.gen.name(), alg.label(g.basis));
                if e > 1 {
                    s.push_str(&format!("^({e})"));
                }
                parts.push(s);
            }
            out.push_str(&parts.join(" "));
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, e)| {
                if *e == 1 {
                    format!("{}:#{}", g.gen.name(), g.basis.0)
                } else {
                    format!("{}:#{}^{}", g.gen.name(), g.basis.0, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// One factor of an input word: either a generator or an explicit scalar.
#[derive(Debug, Clone)]
pub enum WordFactor {
    Gen(Generator),
    Scalar(Rational),
}

/// Rewrite an arbitrary word into normal form.
pub fn normal_form(alg: &Algebra, word: &[WordFactor]) -> Result<UElem> {
    let mut coeff = Rational::one();
    let mut gens = Vec::new();
    for f in word {
        match f {
            WordFactor::Gen(g) => gens.push(*g),
            WordFactor::Scalar(c) => coeff *= c,
        }
    }
    normalize_word(alg, coeff, gens)
}

/// Core rewriting loop. Bubbles the leftmost inversion; a swap of odd
/// factors contributes a sign, and every swap adds the bracket term with the
/// coefficient-algebra product on the second leg.
fn normalize_word(alg: &Algebra, coeff: Rational, word: Vec<Generator>) -> Result<UElem> {
    let mut out = UElem::zero();
    if coeff.is_zero() {
        return Ok(out);
    }
    let mut work: Vec<(Rational, Vec<Generator>)> = vec![(coeff, word)];
    while let Some((c, w)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        let mut action = None;
        for i in 0..w.len().saturating_sub(1) {
            let (u, v) = (w[i], w[i + 1]);
            if u == v && u.parity() == 1 {
                // odd square: u^2 = [u,u]/2 = 0 for every odd generator here
                action = Some((i, true));
                break;
            }
            if u > v {
                action = Some((i, false));
                break;
            }
        }
        match action {
            None => out.add_term(Monomial::from_sorted_word(&w), c),
            Some((_, true)) => continue,
            Some((i, false)) => {
                let (u, v) = (w[i], w[i + 1]);
                let sign = if u.parity() * v.parity() == 1 {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                work.push((c.clone() * sign, swapped));

                let terms = bracket_tensor(
                    alg,
                    u.gen,
                    &AlgElem::basis(u.basis),
                    v.gen,
                    &AlgElem::basis(v.basis),
                )?;
                for (g, elem) in terms {
                    for (b, r) in elem.iter() {
                        let mut shorter = Vec::with_capacity(w.len() - 1);
                        shorter.extend_from_slice(&w[..i]);
                        shorter.push(Generator::new(g, b));
                        shorter.extend_from_slice(&w[i + 2..]);
                        work.push((c.clone() * r, shorter));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The divided power `g^(r) = g^r / r!`. Odd generators with `r >= 2` give
/// the zero element rather than an error.
pub fn divided_power(g: Generator, r: u32) -> UElem {
    if r == 0 {
        return UElem::one();
    }
    if g.parity() == 1 && r >= 2 {
        return UElem::zero();
    }
    let mut u = UElem::zero();
    u.add_term(
        Monomial::single(g, r),
        Rational::new(Int::one(), factorial(r)),
    );
    u
}

/// The binomial `binom(h - offset, j)` in the single generator `h (x) 1`,
/// expanded into powers with rational coefficients.
pub fn h_binomial(h: GenId, offset: i64, j: u32) -> UElem {
    debug_assert!(matches!(h, GenId::H1 | GenId::H2));
    // integer coefficients of prod_{l<j} (X - offset - l)
    let mut poly: Vec<Int> = vec![Int::one()];
    for l in 0..j {
        let root = Int::from(offset) + Int::from(l);
        let mut next = vec![Int::zero(); poly.len() + 1];
        for (e, c) in poly.iter().enumerate() {
            next[e + 1] += c;
            next[e] -= c * &root;
        }
        poly = next;
    }
    let jfac = factorial(j);
    let hgen = Generator::new(h, BasisId(0));
    let mut u = UElem::zero();
    for (e, c) in poly.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = Rational::new(c, jfac.clone());
        if e == 0 {
            u.add_term(Monomial::one(), coeff);
        } else {
            u.add_term(Monomial::single(hgen, e as u32), coeff);
        }
    }
    u
}

/// Membership in the left ideal generated by the `x1` family. Because `x1`
/// is last in the generator order and the family is abelian, the ideal is
/// exactly the span of normal monomials containing an `x1` factor.
pub fn in_left_ideal_x1(u: &UElem) -> bool {
    u.terms.keys().all(|m| m.family_degree(GenId::X1) > 0)
}

/// Split off the part of `u` lying in the `x1` left ideal; returns the
/// remainder with no `x1` factors.
pub fn strip_x1_ideal(u: &UElem) -> UElem {
    UElem {
        terms: u
            .terms
            .iter()
            .filter(|(m, _)| m.family_degree(GenId::X1) == 0)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect(),
    }
}

/// True iff every monomial of `u` uses only the allowed families and
/// respects each family's degree bound.
pub fn in_filtered_span(u: &UElem, bounds: &[(GenId, u32)], allowed: &[GenId]) -> bool {
    u.terms.keys().all(|m| {
        m.factors().iter().all(|(g, _)| allowed.contains(&g.gen))
            && bounds
                .iter()
                .all(|&(fam, bound)| m.family_degree(fam) <= bound)
    })
}
