//! The Lie superalgebra sl(2,1): generators, parities, and the complete
//! bracket table.
//!
//! The bracket is stored as literal data rather than generated from the
//! matrix realization; the matrix realization lives with the natural module
//! (see `tensor`) and the two are cross-checked against each other.

use std::collections::BTreeMap;

use num::Zero;

use crate::algebra::{AlgElem, Algebra};
use crate::error::Result;
use crate::rational::{rat_int, Rational};

/// The eight Chevalley generators. `Xm<j>` denotes the negative root vector
/// `x_{-j}`. The declaration order is load-bearing: it is the total order of
/// generator families used for normal ordering in the enveloping algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenId {
    Xm1,
    H1,
    Xm3,
    Xm2,
    H2,
    X2,
    X3,
    X1,
}

pub const ALL_GENERATORS: [GenId; 8] = [
    GenId::Xm1,
    GenId::H1,
    GenId::Xm3,
    GenId::Xm2,
    GenId::H2,
    GenId::X2,
    GenId::X3,
    GenId::X1,
];

impl GenId {
    /// Parity of the generator: 0 for even, 1 for odd.
    pub fn parity(self) -> u32 {
        match self {
            GenId::X2 | GenId::X3 | GenId::Xm2 | GenId::Xm3 => 1,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenId::X1 => "x1",
            GenId::X2 => "x2",
            GenId::X3 => "x3",
            GenId::H1 => "h1",
            GenId::H2 => "h2",
            GenId::Xm1 => "xm1",
            GenId::Xm2 => "xm2",
            GenId::Xm3 => "xm3",
        }
    }

    pub fn from_name(s: &str) -> Option<GenId> {
        ALL_GENERATORS.iter().copied().find(|g| g.name() == s)
    }
}

/// A linear combination of generators with rational coefficients.
/// `h_3` is always represented as `h_1 + h_2`.
pub type GElem = BTreeMap<GenId, Rational>;

pub fn gelem_from(terms: &[(GenId, i64)]) -> GElem {
    let mut m = GElem::new();
    for &(g, c) in terms {
        if c != 0 {
            let e = m.entry(g).or_insert_with(Rational::zero);
            *e += rat_int(c);
            if e.is_zero() {
                m.remove(&g);
            }
        }
    }
    m
}

/// The super bracket of two generators, straight from the table.
/// `[x_3, x_{-3}] = h_3 = h_1 + h_2` expands into two terms.
pub fn bracket(z: GenId, w: GenId) -> &'static [(GenId, i64)] {
    use GenId::*;
    match (z, w) {
        (X1, X2) => &[(X3, 1)],
        (X1, H1) => &[(X1, -2)],
        (X1, H2) => &[(X1, 1)],
        (X1, Xm1) => &[(H1, 1)],
        (X1, Xm3) => &[(Xm2, -1)],

        (X2, X1) => &[(X3, -1)],
        (X2, H1) => &[(X2, 1)],
        (X2, Xm2) => &[(H2, 1)],
        (X2, Xm3) => &[(Xm1, 1)],

        (X3, H1) => &[(X3, -1)],
        (X3, H2) => &[(X3, 1)],
        (X3, Xm1) => &[(X2, -1)],
        (X3, Xm2) => &[(X1, 1)],
        (X3, Xm3) => &[(H1, 1), (H2, 1)],

        (H1, X1) => &[(X1, 2)],
        (H1, X2) => &[(X2, -1)],
        (H1, X3) => &[(X3, 1)],
        (H1, Xm1) => &[(Xm1, -2)],
        (H1, Xm2) => &[(Xm2, 1)],
        (H1, Xm3) => &[(Xm3, -1)],

        (H2, X1) => &[(X1, -1)],
        (H2, X3) => &[(X3, -1)],
        (H2, Xm1) => &[(Xm1, 1)],
        (H2, Xm3) => &[(Xm3, 1)],

        (Xm1, X1) => &[(H1, -1)],
        (Xm1, X3) => &[(X2, 1)],
        (Xm1, H1) => &[(Xm1, 2)],
        (Xm1, H2) => &[(Xm1, -1)],
        (Xm1, Xm2) => &[(Xm3, -1)],

        (Xm2, X2) => &[(H2, 1)],
        (Xm2, X3) => &[(X1, 1)],
        (Xm2, H1) => &[(Xm2, -1)],
        (Xm2, Xm1) => &[(Xm3, 1)],

        (Xm3, X1) => &[(Xm2, 1)],
        (Xm3, X2) => &[(Xm1, 1)],
        (Xm3, X3) => &[(H1, 1), (H2, 1)],
        (Xm3, H1) => &[(Xm3, 1)],
        (Xm3, H2) => &[(Xm3, -1)],

        _ => &[],
    }
}

/// Bracket extended bilinearly to linear combinations of generators.
pub fn bracket_elem(x: &GElem, y: &GElem) -> GElem {
    let mut out = GElem::new();
    for (&zx, cx) in x {
        for (&zy, cy) in y {
            for &(g, k) in bracket(zx, zy) {
                let e = out.entry(g).or_insert_with(Rational::zero);
                *e += cx * cy * rat_int(k);
                if e.is_zero() {
                    out.remove(&g);
                }
            }
        }
    }
    out
}

/// The map-superalgebra bracket `[z (x) a, w (x) b] = [z, w] (x) ab`,
/// expanded as sparse `(generator, algebra element)` pairs.
pub fn bracket_tensor(
    alg: &Algebra,
    z: GenId,
    a: &AlgElem,
    w: GenId,
    b: &AlgElem,
) -> Result<Vec<(GenId, AlgElem)>> {
    let ab = alg.mul(a, b)?;
    if ab.is_zero() {
        return Ok(Vec::new());
    }
    Ok(bracket(z, w)
        .iter()
        .map(|&(g, k)| (g, ab.scale(&rat_int(k))))
        .collect())
}
