//! Exact computer algebra for the map superalgebra built from sl(2,1) and a
//! commutative coefficient algebra.
//!
//! The crate provides, over arbitrary-precision rationals:
//!
//! - the coefficient algebra `A` (polynomial, truncated polynomial, or an
//!   arbitrary finite product table) with a fixed basis ([`algebra`]);
//! - multiset combinatorics over that basis ([`multiset`]);
//! - the sl(2,1) bracket table ([`sl21`]) and the enveloping algebra of
//!   `sl(2,1) (x) A` with super normal ordering, divided powers, and
//!   filtration queries ([`pbw`]);
//! - the recursively defined highest-weight operators `p1`, `q1`, `p` and
//!   the divided-power families they are built from ([`operators`]);
//! - the natural module, the signed symmetric tensor construction, and the
//!   enveloping-algebra action through the iterated coproduct ([`tensor`]);
//! - executable verification suites for the structural identities of all of
//!   the above ([`verify`]).
//!
//! Everything is exact; there are no tolerances anywhere.

pub mod algebra;
pub mod coproduct;
pub mod error;
pub mod linalg;
pub mod multiset;
pub mod operators;
pub mod pbw;
pub mod rational;
pub mod sl21;
pub mod tensor;
pub mod verify;

pub use algebra::{AlgElem, Algebra, BasisId};
pub use error::{Error, Result};
pub use multiset::{Multiset, Tuple};
pub use operators::Operators;
pub use pbw::{Generator, Monomial, UElem};
pub use rational::{Int, Rational};
pub use sl21::GenId;
pub use tensor::{Tensor, TsSolver, WeylIndex};
pub use verify::CheckReport;
