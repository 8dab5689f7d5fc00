//! The one-step coproduct on the enveloping algebra, materialized inside
//! the braided tensor square. Generators are primitive,
//! `z -> z (x) 1 + 1 (x) z`, and the extension to products uses the braided
//! multiplication `(u1 (x) u2)(w1 (x) w2) = (-1)^{p(u2) p(w1)} u1 w1 (x) u2 w2`.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::algebra::Algebra;
use crate::error::Result;
use crate::pbw::{Monomial, UElem};
use crate::rational::Rational;

/// An element of the tensor square of the enveloping algebra, with both
/// legs kept in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorSquare {
    terms: BTreeMap<(Monomial, Monomial), Rational>,
}

impl TensorSquare {
    pub fn zero() -> Self {
        TensorSquare::default()
    }

    pub fn one() -> Self {
        let mut t = TensorSquare::zero();
        t.add_term(Monomial::one(), Monomial::one(), Rational::one());
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &TensorSquare) -> TensorSquare {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> TensorSquare {
        if c.is_zero() {
            return TensorSquare::zero();
        }
        TensorSquare {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.clone(), x * c))
                .collect(),
        }
    }

    /// Braided product; each leg is re-normalized.
    pub fn mul(&self, other: &TensorSquare, alg: &Algebra) -> Result<TensorSquare> {
        let mut out = TensorSquare::zero();
        for ((a1, a2), c1) in &self.terms {
            for ((b1, b2), c2) in &other.terms {
                let sign = if a2.parity() * b1.parity() == 1 {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                let left = mono_elem(a1).mul(&mono_elem(b1), alg)?;
                let right = mono_elem(a2).mul(&mono_elem(b2), alg)?;
                for (ml, cl) in left.terms() {
                    for (mr, cr) in right.terms() {
                        out.add_term(ml.clone(), mr.clone(), c1 * c2 * &sign * cl * cr);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Outer product of two plain elements, `u (x) w`.
    pub fn outer(u: &UElem, w: &UElem) -> TensorSquare {
        let mut out = TensorSquare::zero();
        for (mu, cu) in u.terms() {
            for (mw, cw) in w.terms() {
                out.add_term(mu.clone(), mw.clone(), cu * cw);
            }
        }
        out
    }
}

fn mono_elem(m: &Monomial) -> UElem {
    let mut u = UElem::zero();
    u.add_term(m.clone(), Rational::one());
    u
}

/// The one-step coproduct of an element in normal form.
pub fn delta1(alg: &Algebra, u: &UElem) -> Result<TensorSquare> {
    let mut out = TensorSquare::zero();
    for (mono, c) in u.terms() {
        let mut acc = TensorSquare::one();
        for &(g, e) in mono.factors() {
            let mut primitive = TensorSquare::zero();
            let single = Monomial::single(g, 1);
            primitive.add_term(single.clone(), Monomial::one(), Rational::one());
            primitive.add_term(Monomial::one(), single, Rational::one());
            for _ in 0..e {
                acc = acc.mul(&primitive, alg)?;
            }
        }
        out = out.add(&acc.scale(c));
    }
    Ok(out)
}
