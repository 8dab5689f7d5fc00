//! The commutative associative unital coefficient algebra `A` with a fixed
//! basis, in three flavors: polynomials in one variable, truncated
//! polynomials, and finite algebras given by an explicit product table.
//!
//! Index 0 always denotes the unit element of `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::multiset::Multiset;
use crate::rational::{parse_rational, Rational};

/// Index into the fixed basis of the coefficient algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisId(pub usize);

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `A`: a finitely-supported rational combination of basis
/// elements. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgElem(BTreeMap<BasisId, Rational>);

impl AlgElem {
    pub fn zero() -> Self {
        AlgElem(BTreeMap::new())
    }

    pub fn basis(b: BasisId) -> Self {
        AlgElem::from_terms(vec![(b, Rational::one())])
    }

    pub fn unit() -> Self {
        AlgElem::basis(BasisId(0))
    }

    pub fn from_terms(terms: Vec<(BasisId, Rational)>) -> Self {
        let mut m = BTreeMap::new();
        for (b, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = m.entry(b).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                m.remove(&b);
            }
        }
        AlgElem(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisId, &Rational)> + '_ {
        self.0.iter().map(|(&b, c)| (b, c))
    }

    pub fn add(&self, other: &AlgElem) -> AlgElem {
        let mut m = self.0.clone();
        for (b, c) in other.iter() {
            let entry = m.entry(b).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                m.remove(&b);
            }
        }
        AlgElem(m)
    }

    pub fn scale(&self, c: &Rational) -> AlgElem {
        if c.is_zero() {
            return AlgElem::zero();
        }
        AlgElem(self.0.iter().map(|(&b, x)| (b, x * c)).collect())
    }
}

/// A finite product table: dimension, labels, and the products of basis
/// pairs as sparse vectors.
#[derive(Debug, Clone)]
pub struct ProductTable {
    dim: usize,
    labels: Vec<String>,
    /// Full dim x dim matrix of products, row-major.
    products: Vec<AlgElem>,
}

impl ProductTable {
    /// Structural parse of the JSON table format:
    /// `{ "dim": d, "labels": [..], "unit": 0, "products": [[ [[k, "p/q"], ..] .. ] .. ] }`
    /// where `products[i]` holds the products `b_i * b_j`. Rows may be
    /// triangular (entries for `j >= i`; symmetry fills the rest) or full
    /// (`dim` entries; redundant entries are checked by `validate`).
    pub fn from_json(v: &Value) -> Result<ProductTable> {
        let obj = v.as_object().ok_or_else(|| err_at("$", "expected object"))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| err_at("$.dim", "expected positive integer"))? as usize;
        if dim == 0 {
            return Err(err_at("$.dim", "dimension must be positive"));
        }
        let labels: Vec<String> = match obj.get("labels") {
            Some(Value::Array(a)) => a
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    l.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| err_at(&format!("$.labels[{i}]"), "expected string"))
                })
                .collect::<Result<_>>()?,
            None => (0..dim).map(|i| format!("e{i}")).collect(),
            Some(_) => return Err(err_at("$.labels", "expected array of strings")),
        };
        if labels.len() != dim {
            return Err(err_at("$.labels", "length must equal dim"));
        }
        let unit = obj.get("unit").and_then(Value::as_u64).unwrap_or(0);
        if unit != 0 {
            return Err(err_at("$.unit", "the unit must sit at index 0"));
        }
        let rows = obj
            .get("products")
            .and_then(Value::as_array)
            .ok_or_else(|| err_at("$.products", "expected array"))?;
        if rows.len() != dim {
            return Err(err_at("$.products", "one row per basis element required"));
        }

        let mut products = vec![None::<AlgElem>; dim * dim];
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| err_at(&format!("$.products[{i}]"), "expected array"))?;
            let triangular = row.len() == dim - i;
            if !triangular && row.len() != dim {
                return Err(err_at(
                    &format!("$.products[{i}]"),
                    &format!("expected {} (triangular) or {} (full) entries", dim - i, dim),
                ));
            }
            for (pos, cell) in row.iter().enumerate() {
                let j = if triangular { i + pos } else { pos };
                let loc = format!("$.products[{i}][{pos}]");
                let pairs = cell
                    .as_array()
                    .ok_or_else(|| err_at(&loc, "expected array of [index, coeff] pairs"))?;
                let mut terms = Vec::new();
                for (p, pair) in pairs.iter().enumerate() {
                    let pair = pair
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| err_at(&format!("{loc}[{p}]"), "expected [index, coeff]"))?;
                    let k = pair[0]
                        .as_u64()
                        .ok_or_else(|| err_at(&format!("{loc}[{p}][0]"), "expected index"))?
                        as usize;
                    if k >= dim {
                        return Err(err_at(&format!("{loc}[{p}][0]"), "index out of range"));
                    }
                    let c = pair[1]
                        .as_str()
                        .ok_or_else(|| err_at(&format!("{loc}[{p}][1]"), "expected \"p/q\" string"))
                        .and_then(parse_rational)?;
                    terms.push((BasisId(k), c));
                }
                products[i * dim + j] = Some(AlgElem::from_terms(terms));
            }
        }
        // symmetry fills anything the triangular format left open
        for i in 0..dim {
            for j in 0..dim {
                if products[i * dim + j].is_none() {
                    match products[j * dim + i].clone() {
                        Some(p) => products[i * dim + j] = Some(p),
                        None => {
                            return Err(err_at(
                                &format!("$.products[{i}]"),
                                &format!("product ({i},{j}) missing"),
                            ))
                        }
                    }
                }
            }
        }
        Ok(ProductTable {
            dim,
            labels,
            products: products.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Check commutativity on all pairs, associativity on all triples, and
    /// the unit law at index 0. Returns the list of violations.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let alg = Algebra::Table(self.clone());
        for j in 0..self.dim {
            let prod = &self.products[j]; // b_0 * b_j
            if *prod != AlgElem::basis(BasisId(j)) {
                bad.push(format!("unit law fails: 1 * {} != {}", self.labels[j], self.labels[j]));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.products[i * self.dim + j] != self.products[j * self.dim + i] {
                    bad.push(format!(
                        "commutativity fails at pair ({}, {})",
                        self.labels[i], self.labels[j]
                    ));
                }
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let ij = self.products[i * self.dim + j].clone();
                    let jk = self.products[j * self.dim + k].clone();
                    let left = alg.mul(&ij, &AlgElem::basis(BasisId(k)));
                    let right = alg.mul(&AlgElem::basis(BasisId(i)), &jk);
                    match (left, right) {
                        (Ok(l), Ok(r)) if l == r => {}
                        _ => bad.push(format!(
                            "associativity fails at triple ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )),
                    }
                }
            }
        }
        bad
    }
}

fn err_at(location: &str, message: &str) -> Error {
    Error::TableFormat {
        location: location.to_string(),
        message: message.to_string(),
    }
}

/// The coefficient algebra itself. `Poly` is the polynomial algebra with
/// basis `t^k` (lazily indexed, no dimension bound); `Trunc(n)` is its
/// truncation with `t^n = 0`; `Table` is any finite commutative associative
/// unital algebra given by structure constants.
#[derive(Debug, Clone)]
pub enum Algebra {
    Poly,
    Trunc(usize),
    Table(ProductTable),
}

impl Algebra {
    /// Parse a command-line style spec: `poly`, `trunc:N`, or `table:PATH`.
    pub fn from_spec(spec: &str) -> Result<Algebra> {
        if spec == "poly" {
            return Ok(Algebra::Poly);
        }
        if let Some(n) = spec.strip_prefix("trunc:") {
            let n: usize = n
                .parse()
                .map_err(|_| Error::Unsupported(format!("bad truncation order in '{spec}'")))?;
            if n == 0 {
                return Err(Error::Unsupported("trunc:N needs N >= 1".into()));
            }
            return Ok(Algebra::Trunc(n));
        }
        if let Some(path) = spec.strip_prefix("table:") {
            return Algebra::load_table(Path::new(path));
        }
        Err(Error::Unsupported(format!(
            "unknown algebra spec '{spec}' (expected poly | trunc:N | table:PATH)"
        )))
    }

    /// Load and validate a product-table file.
    pub fn load_table(path: &Path) -> Result<Algebra> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::TableFormat {
            location: path.display().to_string(),
            message: e.to_string(),
        })?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Error::TableFormat {
            location: format!("{}:{}:{}", path.display(), e.line(), e.column()),
            message: e.to_string(),
        })?;
        let table = ProductTable::from_json(&value)?;
        let violations = table.validate();
        if !violations.is_empty() {
            return Err(Error::TableInvalid(violations.join("; ")));
        }
        Ok(Algebra::Table(table))
    }

    /// Dimension, or `None` for the polynomial algebra.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Algebra::Poly => None,
            Algebra::Trunc(n) => Some(*n),
            Algebra::Table(t) => Some(t.dim),
        }
    }

    pub fn unit(&self) -> BasisId {
        BasisId(0)
    }

    pub fn check_index(&self, b: BasisId) -> Result<()> {
        match self.dim() {
            Some(d) if b.0 >= d => Err(Error::BasisOutOfRange { index: b.0, dim: d }),
            _ => Ok(()),
        }
    }

    pub fn label(&self, b: BasisId) -> String {
        match self {
            Algebra::Poly | Algebra::Trunc(_) => match b.0 {
                0 => "1".to_string(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            },
            Algebra::Table(t) => t
                .labels
                .get(b.0)
                .cloned()
                .unwrap_or_else(|| format!("e{}", b.0)),
        }
    }

    /// Resolve a basis label; the unit label is always `1`.
    pub fn parse_label(&self, s: &str) -> Option<BasisId> {
        match self {
            Algebra::Poly | Algebra::Trunc(_) => {
                let k = if s == "1" {
                    0
                } else if s == "t" {
                    1
                } else {
                    s.strip_prefix("t^")?.parse().ok()?
                };
                match self.dim() {
                    Some(d) if k >= d => None,
                    _ => Some(BasisId(k)),
                }
            }
            Algebra::Table(t) => {
                if s == "1" {
                    return Some(BasisId(0));
                }
                t.labels.iter().position(|l| l == s).map(BasisId)
            }
        }
    }

    /// Product of two basis elements, expanded over the basis.
    pub fn mul_basis(&self, a: BasisId, b: BasisId) -> Result<AlgElem> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(match self {
            Algebra::Poly => AlgElem::basis(BasisId(a.0 + b.0)),
            Algebra::Trunc(n) => {
                if a.0 + b.0 < *n {
                    AlgElem::basis(BasisId(a.0 + b.0))
                } else {
                    AlgElem::zero()
                }
            }
            Algebra::Table(t) => t.products[a.0 * t.dim + b.0].clone(),
        })
    }

    /// Bilinear product of two elements.
    pub fn mul(&self, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
        let mut acc = AlgElem::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let prod = self.mul_basis(a, b)?;
                acc = acc.add(&prod.scale(&(ca * cb)));
            }
        }
        Ok(acc)
    }

    /// The product of basis elements with multiplicities; the empty multiset
    /// maps to the unit.
    pub fn product_of_basis(&self, psi: &Multiset) -> Result<AlgElem> {
        let mut acc = AlgElem::unit();
        for (b, k) in psi.iter() {
            for _ in 0..k {
                acc = self.mul(&acc, &AlgElem::basis(b))?;
                if acc.is_zero() {
                    return Ok(acc);
                }
            }
        }
        Ok(acc)
    }
}
