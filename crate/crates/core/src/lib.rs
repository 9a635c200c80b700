//! Exact Chen-Ruan orbifold cohomology for moduli of PSL(2,C)-bundles.
//!
//! For a smooth projective curve of genus g >= 2, the moduli space of stable
//! PSL(2,C)-bundles with nontrivial second Stiefel-Whitney class is the
//! quotient of a smooth moduli space of odd-degree rank-2 bundles by the
//! group of two-torsion line bundles of the Jacobian. This crate builds the
//! Chen-Ruan cohomology ring of that quotient with exact rational
//! arithmetic, in the canonical sector basis, and verifies the ring axioms.
//!
//! The pieces, bottom up:
//!
//! - [`rational`]: big-integer rationals, binomials, Bernoulli numbers;
//! - [`poly`]: dense rational polynomials with exact division, for Poincare
//!   series;
//! - [`labels`]: the group of two-torsion labels with its Weil pairing and
//!   the geometry of pairs of fixed loci;
//! - [`sectors`]: degree shifts (ages), sector Betti numbers, and sector
//!   descriptors;
//! - [`exterior`]: the exterior-algebra model of a single twisted sector;
//! - [`ring`]: the classes, the orbifold product, the Poincare pairing, and
//!   the Poincare polynomials;
//! - [`verify`]: exhaustive and seeded suites for associativity, the
//!   Frobenius property, the grading, and pairing ranks.
//!
//! Everything is deterministic: the same inputs (including sampler seeds)
//! produce the same outputs.

pub mod error;
pub mod exterior;
pub mod labels;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod sectors;
pub mod verify;

pub use error::{Error, Result};
pub use exterior::{theta_bar, kappa_pullback_power, ExteriorClass, ExteriorMonomial};
pub use labels::{enumerate_labels, fixed_locus_relation, FixedLocusRelation, TwoTorsionLabel};
pub use poly::Polynomial;
pub use rational::{Int, Rational};
pub use ring::{
    constants, cr_poincare, poincare_pair, product, three_point, untwisted_poincare, CrClass,
    CrPoincarePolynomial, IntersectionConstants,
};
pub use sectors::{
    eigen_data_for, obstruction_rank, sector_betti, EigenvalueData, SectorBettiTable,
    SectorDescriptor,
};
pub use verify::{
    canonical_basis, matrix_rank, run_suite, BasisElement, BasisKind, Sampler, Suite,
    VerifyReport,
};
