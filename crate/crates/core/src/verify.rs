//! Verification suites for the ring axioms.
//!
//! Four independent suites probe the assembled ring:
//!
//! - associativity of [`product`](crate::ring::product);
//! - the Frobenius property, as full symmetry of the three-point function
//!   built from [`poincare_pair`](crate::ring::poincare_pair);
//! - additivity of the orbifold grading under products;
//! - nondegeneracy of the pairing, block by block, through exact ranks of
//!   Gram matrices over the canonical basis.
//!
//! Each suite runs under a [`Sampler`]: exhaustive over the canonical basis
//! for small genus (all triples for g = 2; for g = 3 all pairs against
//! third factors of complementary degree, where the triple integral can be
//! nonzero), or deterministic seeded sampling of random homogeneous classes
//! for any supported genus. Reports never panic on failure; violations are
//! collected as text so a caller can decide how to surface them.

use crate::error::{Error, Result};
use crate::exterior::ExteriorMonomial;
use crate::labels::{enumerate_labels, TwoTorsionLabel};
use crate::rational::{binomial, integer, rational, Rational};
use crate::ring::{constants, pair_with, product_with, CrClass};
use num_traits::{ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Exhaustive basis-triple verification is limited to this genus.
pub const MAX_EXHAUSTIVE_GENUS: usize = 3;

/// The canonical basis (and with it the pairing-rank suite) is materialized
/// only up to this genus; the element count 3g-2 + (2^2g - 1) 2^(2g-3)
/// grows too fast beyond it.
pub const MAX_BASIS_GENUS: usize = 5;

const MAX_RECORDED_VIOLATIONS: usize = 20;

/// One of the four ring-axiom suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Associativity,
    Frobenius,
    Graded,
    PairingRank,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Associativity,
        Suite::Frobenius,
        Suite::Graded,
        Suite::PairingRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Associativity => "associativity",
            Suite::Frobenius => "frobenius",
            Suite::Graded => "graded",
            Suite::PairingRank => "pairing-rank",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.name())
    }
}

/// How a suite draws its test cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampler {
    /// Every case the suite defines for the genus.
    Exhaustive,
    /// Deterministic pseudorandom cases from the given seed.
    Seeded { samples: u64, seed: u64 },
}

impl fmt::Display for Sampler {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sampler::Exhaustive => out.write_str("exhaustive"),
            Sampler::Seeded { samples, seed } => {
                write!(out, "seeded(samples={samples}, seed={seed})")
            }
        }
    }
}

/// Outcome of one suite run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub genus: usize,
    pub suite: Suite,
    pub sampler: String,
    /// Number of identities tested.
    pub checked: u64,
    /// Descriptions of failed identities, capped at a small fixed number.
    pub violations: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One element of the canonical basis: a kappa power or a sector monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement {
    pub kind: BasisKind,
    pub cr_degree: usize,
    pub class: CrClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Kappa(usize),
    Sector {
        label: TwoTorsionLabel,
        monomial: ExteriorMonomial,
    },
}

impl fmt::Display for BasisKind {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKind::Kappa(m) => write!(out, "k^{m}"),
            BasisKind::Sector { label, monomial } => write!(out, "[{label}; {monomial}]"),
        }
    }
}

/// The canonical ordered basis of the computable ring: kappa powers by
/// ascending exponent, then for each nonzero label in ascending order the
/// even monomials of its sector in ascending mask order.
pub fn canonical_basis(genus: usize) -> Result<Vec<BasisElement>> {
    if genus > MAX_BASIS_GENUS {
        return Err(Error::GenusTooLarge {
            genus,
            max: MAX_BASIS_GENUS,
        });
    }
    let mut basis = Vec::new();
    for m in 0..=3 * genus - 3 {
        basis.push(BasisElement {
            kind: BasisKind::Kappa(m),
            cr_degree: 2 * m,
            class: CrClass::kappa_power(genus, m)?,
        });
    }
    let shift = 2 * (genus - 1);
    for label in enumerate_labels(genus)? {
        if label.is_zero() {
            continue;
        }
        for monomial in even_monomials(genus) {
            basis.push(BasisElement {
                kind: BasisKind::Sector { label, monomial },
                cr_degree: monomial.degree() + shift,
                class: CrClass::sector_term(&label, monomial, integer(1))?,
            });
        }
    }
    Ok(basis)
}

/// Runs one suite and reports the outcome.
pub fn run_suite(genus: usize, suite: Suite, sampler: &Sampler) -> Result<VerifyReport> {
    match suite {
        Suite::Associativity => associativity(genus, sampler),
        Suite::Frobenius => frobenius(genus, sampler),
        Suite::Graded => graded(genus, sampler),
        Suite::PairingRank => pairing_rank(genus, sampler),
    }
}

/// Exact rank of a rational matrix by Gaussian elimination. Ragged rows are
/// padded with zeros.
pub fn matrix_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    for row in &mut rows {
        row.resize(ncols, Rational::zero());
    }
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (upper, lower) = rows.split_at_mut(rank + 1);
        let pivot_row = &upper[rank];
        for row in lower.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for c in col..ncols {
                let delta = &pivot_row[c] * &factor;
                row[c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

fn even_monomials(genus: usize) -> impl Iterator<Item = ExteriorMonomial> {
    let full = (1u64 << (2 * (genus - 1))) - 1;
    (0..=full)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(ExteriorMonomial::from_mask)
}

fn monomials_of_degree(genus: usize, degree: usize) -> Vec<ExteriorMonomial> {
    let full = (1u64 << (2 * (genus - 1))) - 1;
    (0..=full)
        .filter(|m| m.count_ones() as usize == degree)
        .map(ExteriorMonomial::from_mask)
        .collect()
}

fn check_exhaustive_cap(genus: usize, sampler: &Sampler) -> Result<()> {
    if matches!(sampler, Sampler::Exhaustive) && genus > MAX_EXHAUSTIVE_GENUS {
        return Err(Error::ExhaustiveCap {
            genus,
            max: MAX_EXHAUSTIVE_GENUS,
        });
    }
    Ok(())
}

fn report(genus: usize, suite: Suite, sampler: &Sampler) -> VerifyReport {
    VerifyReport {
        genus,
        suite,
        sampler: sampler.to_string(),
        checked: 0,
        violations: Vec::new(),
    }
}

fn record(report: &mut VerifyReport, message: String) {
    if report.violations.len() < MAX_RECORDED_VIOLATIONS {
        report.violations.push(message);
    }
}

/// Indices of basis elements grouped by orbifold degree.
fn degree_index(basis: &[BasisElement]) -> BTreeMap<usize, Vec<usize>> {
    let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, element) in basis.iter().enumerate() {
        map.entry(element.cr_degree).or_default().push(i);
    }
    map
}

/// Third-factor indices for the exhaustive triple loops: every index for
/// g = 2, only the complementary degree above that.
fn third_indices<'a>(
    genus: usize,
    by_degree: &'a BTreeMap<usize, Vec<usize>>,
    all: &'a [usize],
    pair_degree: usize,
) -> &'a [usize] {
    if genus == 2 {
        return all;
    }
    let top = 6 * genus - 6;
    if pair_degree > top {
        return &[];
    }
    by_degree.get(&(top - pair_degree)).map_or(&[], Vec::as_slice)
}

fn associativity(genus: usize, sampler: &Sampler) -> Result<VerifyReport> {
    check_exhaustive_cap(genus, sampler)?;
    let v = constants(genus)?.v;
    let mut out = report(genus, Suite::Associativity, sampler);
    match *sampler {
        Sampler::Exhaustive => {
            let basis = canonical_basis(genus)?;
            let by_degree = degree_index(&basis);
            let all: Vec<usize> = (0..basis.len()).collect();
            for a in &basis {
                for b in &basis {
                    let ab = product_with(&a.class, &b.class, &v)?;
                    let thirds =
                        third_indices(genus, &by_degree, &all, a.cr_degree + b.cr_degree);
                    for &k in thirds {
                        let c = &basis[k];
                        let left = product_with(&ab, &c.class, &v)?;
                        let bc = product_with(&b.class, &c.class, &v)?;
                        let right = product_with(&a.class, &bc, &v)?;
                        out.checked += 1;
                        if left != right {
                            record(
                                &mut out,
                                format!(
                                    "associativity fails for basis triple {}, {}, {}",
                                    a.kind, b.kind, c.kind
                                ),
                            );
                        }
                    }
                }
            }
        }
        Sampler::Seeded { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for n in 0..samples {
                let (da, a) = random_homogeneous(genus, &mut rng);
                let (db, b) = random_homogeneous(genus, &mut rng);
                let (dc, c) = random_homogeneous(genus, &mut rng);
                let left = product_with(&product_with(&a, &b, &v)?, &c, &v)?;
                let right = product_with(&a, &product_with(&b, &c, &v)?, &v)?;
                out.checked += 1;
                if left != right {
                    record(
                        &mut out,
                        format!(
                            "associativity fails for sample {n} with degrees ({da}, {db}, {dc})"
                        ),
                    );
                }
            }
        }
    }
    Ok(out)
}

fn frobenius(genus: usize, sampler: &Sampler) -> Result<VerifyReport> {
    check_exhaustive_cap(genus, sampler)?;
    let v = constants(genus)?.v;
    let mut out = report(genus, Suite::Frobenius, sampler);
    let check = |out: &mut VerifyReport,
                 a: &CrClass,
                 b: &CrClass,
                 c: &CrClass,
                 describe: &dyn Fn() -> String|
     -> Result<()> {
        let v1 = pair_with(&product_with(a, b, &v)?, c, &v)?;
        let v2 = pair_with(a, &product_with(b, c, &v)?, &v)?;
        let v3 = pair_with(&product_with(a, c, &v)?, b, &v)?;
        out.checked += 1;
        if v1 != v2 || v1 != v3 {
            record(
                out,
                format!(
                    "three-point symmetry fails for {} (values {v1}, {v2}, {v3})",
                    describe()
                ),
            );
        }
        Ok(())
    };
    match *sampler {
        Sampler::Exhaustive => {
            let basis = canonical_basis(genus)?;
            let by_degree = degree_index(&basis);
            let all: Vec<usize> = (0..basis.len()).collect();
            for a in &basis {
                for b in &basis {
                    let thirds =
                        third_indices(genus, &by_degree, &all, a.cr_degree + b.cr_degree);
                    for &k in thirds {
                        let c = &basis[k];
                        check(&mut out, &a.class, &b.class, &c.class, &|| {
                            format!("basis triple {}, {}, {}", a.kind, b.kind, c.kind)
                        })?;
                    }
                }
            }
        }
        Sampler::Seeded { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Degrees are drawn complementary, summing to 6g-6; any other
            // triple pairs to zero on both sides and checks nothing.
            let half_top = (3 * genus - 3) as u64;
            for n in 0..samples {
                let h1 = below(&mut rng, half_top + 1);
                let h2 = below(&mut rng, half_top + 1 - h1);
                let h3 = half_top - h1 - h2;
                let a = random_homogeneous_of_degree(genus, 2 * h1 as usize, &mut rng);
                let b = random_homogeneous_of_degree(genus, 2 * h2 as usize, &mut rng);
                let c = random_homogeneous_of_degree(genus, 2 * h3 as usize, &mut rng);
                check(&mut out, &a, &b, &c, &|| {
                    format!(
                        "sample {n} with degrees ({}, {}, {})",
                        2 * h1,
                        2 * h2,
                        2 * h3
                    )
                })?;
            }
        }
    }
    Ok(out)
}

fn graded(genus: usize, sampler: &Sampler) -> Result<VerifyReport> {
    check_exhaustive_cap(genus, sampler)?;
    let v = constants(genus)?.v;
    let mut out = report(genus, Suite::Graded, sampler);
    let check = |out: &mut VerifyReport,
                 da: usize,
                 a: &CrClass,
                 db: usize,
                 b: &CrClass|
     -> Result<()> {
        let prod = product_with(a, b, &v)?;
        out.checked += 1;
        if !prod.is_zero() && prod.cr_degrees() != BTreeSet::from([da + db]) {
            record(
                out,
                format!(
                    "product of degrees ({da}, {db}) lands in degrees {:?}",
                    prod.cr_degrees()
                ),
            );
        }
        Ok(())
    };
    match *sampler {
        Sampler::Exhaustive => {
            let basis = canonical_basis(genus)?;
            for a in &basis {
                for b in &basis {
                    check(&mut out, a.cr_degree, &a.class, b.cr_degree, &b.class)?;
                }
            }
        }
        Sampler::Seeded { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let (da, a) = random_homogeneous(genus, &mut rng);
                let (db, b) = random_homogeneous(genus, &mut rng);
                check(&mut out, da, &a, db, &b)?;
            }
        }
    }
    Ok(out)
}

fn pairing_rank(genus: usize, sampler: &Sampler) -> Result<VerifyReport> {
    if genus > MAX_BASIS_GENUS {
        return Err(Error::ExhaustiveCap {
            genus,
            max: MAX_BASIS_GENUS,
        });
    }
    let v = constants(genus)?.v;
    let mut out = report(genus, Suite::PairingRank, sampler);
    let top = 3 * genus - 3;

    // The kappa line pairs one power against its complement; each of these
    // 1 x 1 blocks must be nonzero.
    for m in 0..=top / 2 {
        let a = CrClass::kappa_power(genus, m)?;
        let b = CrClass::kappa_power(genus, top - m)?;
        let value = pair_with(&a, &b, &v)?;
        out.checked += 1;
        if value.is_zero() {
            record(&mut out, format!("kappa pairing <k^{m}, k^{}> vanishes", top - m));
        }
    }

    let check_block = |out: &mut VerifyReport,
                       label: &TwoTorsionLabel,
                       degree: usize|
     -> Result<()> {
        let rows = monomials_of_degree(genus, degree);
        let cols = monomials_of_degree(genus, 2 * genus - 2 - degree);
        let one = integer(1);
        let mut gram = Vec::with_capacity(rows.len());
        for m1 in &rows {
            let a = CrClass::sector_term(label, *m1, one.clone())?;
            let mut row = Vec::with_capacity(cols.len());
            for m2 in &cols {
                let b = CrClass::sector_term(label, *m2, one.clone())?;
                row.push(pair_with(&a, &b, &v)?);
            }
            gram.push(row);
        }
        let expected = binomial(2 * genus - 2, degree)
            .to_usize()
            .expect("block sizes stay small for the capped genus");
        let rank = matrix_rank(gram);
        out.checked += 1;
        if rank != expected {
            record(
                out,
                format!(
                    "pairing block of sector {label} in exterior degree {degree} has rank {rank}, expected {expected}"
                ),
            );
        }
        Ok(())
    };

    match *sampler {
        Sampler::Exhaustive => {
            for label in enumerate_labels(genus)? {
                if label.is_zero() {
                    continue;
                }
                for degree in (0..=genus - 1).step_by(2) {
                    check_block(&mut out, &label, degree)?;
                }
            }
        }
        Sampler::Seeded { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let label = random_nonzero_label(genus, &mut rng);
                let degree = 2 * below(&mut rng, genus as u64) as usize;
                check_block(&mut out, &label, degree)?;
            }
        }
    }
    Ok(out)
}

fn below(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    rng.next_u64() % n
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    let numerator = loop {
        let x = below(rng, 19) as i64 - 9;
        if x != 0 {
            break x;
        }
    };
    rational(numerator, below(rng, 4) as i64 + 1)
}

fn random_nonzero_label(genus: usize, rng: &mut ChaCha8Rng) -> TwoTorsionLabel {
    let full = if genus == 32 {
        u64::MAX
    } else {
        (1u64 << (2 * genus)) - 1
    };
    loop {
        let bits = rng.next_u64() & full;
        if bits != 0 {
            return TwoTorsionLabel::new(genus, bits).expect("masked bits are in range");
        }
    }
}

fn random_monomial(genus: usize, degree: usize, rng: &mut ChaCha8Rng) -> ExteriorMonomial {
    let n = 2 * (genus - 1);
    let mut positions: Vec<usize> = (0..n).collect();
    for k in 0..degree {
        let j = k + below(rng, (n - k) as u64) as usize;
        positions.swap(k, j);
    }
    let mask = positions[..degree]
        .iter()
        .fold(0u64, |mask, &p| mask | 1u64 << p);
    ExteriorMonomial::from_mask(mask)
}

/// A random nonzero class homogeneous of the given orbifold degree, mixing
/// kappa content with up to three sector terms where the degree allows.
fn random_homogeneous_of_degree(genus: usize, degree: usize, rng: &mut ChaCha8Rng) -> CrClass {
    let lo = 2 * (genus - 1);
    let hi = 4 * (genus - 1);
    loop {
        let mut class = CrClass::zero(genus).expect("genus already validated");
        for _ in 0..=below(rng, 3) {
            if degree >= lo && degree <= hi && below(rng, 4) < 3 {
                let label = random_nonzero_label(genus, rng);
                let monomial = random_monomial(genus, degree - lo, rng);
                class
                    .add_sector_term(&label, monomial, random_coeff(rng))
                    .expect("term is valid by construction");
            } else {
                class.add_kappa_term(degree / 2, random_coeff(rng));
            }
        }
        if !class.is_zero() {
            return class;
        }
    }
}

fn random_homogeneous(genus: usize, rng: &mut ChaCha8Rng) -> (usize, CrClass) {
    let degree = 2 * below(rng, (3 * genus - 2) as u64) as usize;
    (degree, random_homogeneous_of_degree(genus, degree, rng))
}
