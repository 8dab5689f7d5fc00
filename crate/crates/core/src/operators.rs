//! The generating operators of the highest-weight theory: divided-power
//! products indexed by multisets, ordered products indexed by tuples, and
//! the recursively defined elements `p1`, `q1`, `p`.
//!
//! The recursions branch exponentially, so both are memoized on their
//! multiset arguments. A context owns the caches together with the
//! coefficient algebra; create one context per evaluation (they are cheap).

use std::cell::RefCell;
use std::collections::HashMap;

use num::One;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::multiset::{Multiset, Tuple};
use crate::pbw::{divided_power, normal_form, Generator, UElem, WordFactor};
use crate::rational::{Int, Rational};
use crate::sl21::GenId;

pub struct Operators<'a> {
    pub alg: &'a Algebra,
    p1_memo: RefCell<HashMap<(Multiset, Multiset), UElem>>,
    q1_memo: RefCell<HashMap<(Multiset, Multiset), UElem>>,
}

impl<'a> Operators<'a> {
    pub fn new(alg: &'a Algebra) -> Self {
        Operators {
            alg,
            p1_memo: RefCell::new(HashMap::new()),
            q1_memo: RefCell::new(HashMap::new()),
        }
    }

    /// Product of divided powers over the support of a multiset:
    /// `prod_a (gen (x) a)^(chi(a))`. The empty multiset maps to 1.
    /// Meaningful for the abelian families `x1`, `xm1`, `h1`, `h2`.
    pub fn divided_product(&self, gen: GenId, chi: &Multiset) -> Result<UElem> {
        debug_assert_eq!(gen.parity(), 0);
        let mut acc = UElem::one();
        for (b, k) in chi.iter() {
            self.alg.check_index(b)?;
            acc = acc.mul(&divided_power(Generator::new(gen, b), k), self.alg)?;
        }
        Ok(acc)
    }

    /// `X_{+1}` indexed by a multiset.
    pub fn x1(&self, chi: &Multiset) -> Result<UElem> {
        self.divided_product(GenId::X1, chi)
    }

    /// `X_{-1}` indexed by a multiset.
    pub fn xm1(&self, chi: &Multiset) -> Result<UElem> {
        self.divided_product(GenId::Xm1, chi)
    }

    /// `H_1` / `H_2` indexed by a multiset.
    pub fn h(&self, which: GenId, phi: &Multiset) -> Result<UElem> {
        debug_assert!(matches!(which, GenId::H1 | GenId::H2));
        self.divided_product(which, phi)
    }

    /// Ordered product `prod_k (gen (x) xi(k))` for the odd families
    /// `x2`, `x3`, `xm2`, `xm3`; the empty tuple maps to 1. Repeated
    /// entries give 0, reorderings contribute signs.
    pub fn ordered_product(&self, gen: GenId, xi: &Tuple) -> Result<UElem> {
        debug_assert_eq!(gen.parity(), 1);
        let word: Vec<WordFactor> = xi
            .iter()
            .map(|&b| WordFactor::Gen(Generator::new(gen, b)))
            .collect();
        for &b in xi {
            self.alg.check_index(b)?;
        }
        normal_form(self.alg, &word)
    }

    /// `X_{-3}` indexed by a tuple.
    pub fn xm3(&self, xi: &Tuple) -> Result<UElem> {
        self.ordered_product(GenId::Xm3, xi)
    }

    pub fn p1(&self, phi: &Multiset, chi: &Multiset) -> Result<UElem> {
        let key = (phi.clone(), chi.clone());
        if let Some(hit) = self.p1_memo.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let result = if phi.is_empty() && chi.is_empty() {
            UElem::one()
        } else if phi.is_empty() {
            // -(1/|chi|) sum over nonzero psi <= chi of
            //   m(psi) (h1 (x) pi(psi)) p1(0, chi - psi)
            let mut acc = UElem::zero();
            for psi in chi.subsets() {
                if psi.is_empty() {
                    continue;
                }
                let m = Rational::from_integer(psi.multinomial());
                let pi = self.alg.product_of_basis(&psi)?;
                if pi.is_zero() {
                    continue;
                }
                let head = UElem::gen_alg(GenId::H1, &pi);
                let tail = self.p1(&Multiset::empty(), &chi.sub(&psi)?)?;
                acc = acc.add(&head.mul(&tail, self.alg)?.scale(&m));
            }
            acc.scale(&-Rational::new(Int::one(), Int::from(chi.size())))
        } else {
            // -(1/|phi|) sum over d in supp phi and psi <= chi of
            //   m(psi) (xm1 (x) d pi(psi)) p1(phi - chi_d, chi - psi)
            let mut acc = UElem::zero();
            for d in phi.support().collect::<Vec<_>>() {
                let phi_rest = phi.sub(&Multiset::single(d))?;
                for psi in chi.subsets() {
                    let m = Rational::from_integer(psi.multinomial());
                    let pi = self.alg.product_of_basis(&psi)?;
                    let leg = self.alg.mul(&crate::algebra::AlgElem::basis(d), &pi)?;
                    if leg.is_zero() {
                        continue;
                    }
                    let head = UElem::gen_alg(GenId::Xm1, &leg);
                    let tail = self.p1(&phi_rest, &chi.sub(&psi)?)?;
                    acc = acc.add(&head.mul(&tail, self.alg)?.scale(&m));
                }
            }
            acc.scale(&-Rational::new(Int::one(), Int::from(phi.size())))
        };
        self.p1_memo.borrow_mut().insert(key, result.clone());
        Ok(result)
    }

    pub fn q1(&self, phi: &Multiset, chi: &Multiset) -> Result<UElem> {
        let key = (phi.clone(), chi.clone());
        if let Some(hit) = self.q1_memo.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let result = if phi.size() < chi.size() {
            UElem::zero()
        } else if phi.is_empty() && chi.is_empty() {
            UElem::one()
        } else if phi.size() == chi.size() {
            // (1/|chi|) sum over c in supp chi, d in supp phi of
            //   (h1 (x) cd) q1(phi - chi_d, chi - chi_c)
            let mut acc = UElem::zero();
            for c in chi.support().collect::<Vec<_>>() {
                for d in phi.support().collect::<Vec<_>>() {
                    let cd = self.alg.mul_basis(c, d)?;
                    if cd.is_zero() {
                        continue;
                    }
                    let head = UElem::gen_alg(GenId::H1, &cd);
                    let tail = self.q1(
                        &phi.sub(&Multiset::single(d))?,
                        &chi.sub(&Multiset::single(c))?,
                    )?;
                    acc = acc.add(&head.mul(&tail, self.alg)?);
                }
            }
            acc.scale(&Rational::new(Int::one(), Int::from(chi.size())))
        } else {
            // sum over sub-multisets of phi of size |chi|
            let mut acc = UElem::zero();
            for part in phi.subsets_of_size(chi.size()) {
                let head = self.xm1(&phi.sub(&part)?)?;
                let tail = self.q1(&part, chi)?;
                acc = acc.add(&head.mul(&tail, self.alg)?);
            }
            acc
        };
        self.q1_memo.borrow_mut().insert(key, result.clone());
        Ok(result)
    }

    /// `p(phi1, phi2, xi) = p1(phi2, phi1) X_{-3}(xi)`.
    pub fn p(&self, phi1: &Multiset, phi2: &Multiset, xi: &Tuple) -> Result<UElem> {
        let head = self.p1(phi2, phi1)?;
        let tail = self.xm3(xi)?;
        head.mul(&tail, self.alg)
    }
}
