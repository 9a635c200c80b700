//! Twisted-sector numerology: degree shifts from eigenvalue data, sector
//! Betti numbers, and the obstruction-bundle rank entering the orbifold
//! product.
//!
//! For a nontrivial label L the involution acts on the tangent space of the
//! moduli space along the fixed locus S(L) with eigenvalues +1 and -1 of
//! complex multiplicities g-1 and 2(g-1), so every twisted sector has degree
//! shift g-1; the untwisted sector has shift 0. All dimensions here are
//! complex dimensions.

use crate::error::{Error, Result};
use crate::labels::TwoTorsionLabel;
use crate::rational::{binomial, pow2, Int, Rational};
use num_traits::Zero;

/// Eigenvalue data of a finite-order automorphism on a tangent space: pairs
/// (a_j, m_j) where the eigenvalue is exp(2 pi i a_j) with multiplicity m_j.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueData {
    entries: Vec<(Rational, usize)>,
}

impl EigenvalueData {
    /// Validates that every angle lies in [0, 1) and every multiplicity is
    /// positive.
    pub fn new(entries: Vec<(Rational, usize)>) -> Result<Self> {
        for (angle, mult) in &entries {
            if angle < &Rational::zero() || angle >= &Rational::from_integer(1.into()) {
                return Err(Error::AngleRange);
            }
            if *mult == 0 {
                return Err(Error::ZeroMultiplicity);
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(Rational, usize)] {
        &self.entries
    }

    /// Total multiplicity, the complex dimension of the ambient space.
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// The age of the automorphism: sum of a_j * m_j.
    pub fn degree_shift(&self) -> Rational {
        let mut sum = Rational::zero();
        for (angle, mult) in &self.entries {
            sum += angle * Rational::from_integer(Int::from(*mult));
        }
        sum
    }
}

/// Eigenvalue data of the involution attached to a label, acting on the
/// tangent space of the moduli space (complex dimension 3g-3).
pub fn eigen_data_for(label: &TwoTorsionLabel) -> EigenvalueData {
    let g = label.genus();
    let entries = if label.is_zero() {
        vec![(Rational::zero(), 3 * g - 3)]
    } else {
        vec![
            (Rational::zero(), g - 1),
            (crate::rational::rational(1, 2), 2 * (g - 1)),
        ]
    };
    EigenvalueData { entries }
}

/// Dimension of the degree-i piece of a twisted sector's cohomology:
/// C(2g-2, i) for even i, zero for odd i.
pub fn sector_betti(genus: usize, i: usize) -> Result<Int> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    if i % 2 != 0 {
        return Ok(Int::zero());
    }
    Ok(binomial(2 * genus - 2, i))
}

/// The full table of twisted-sector Betti numbers for one genus, degrees 0
/// through 2g-2.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorBettiTable {
    genus: usize,
    dims: Vec<Int>,
}

impl SectorBettiTable {
    pub fn new(genus: usize) -> Result<Self> {
        let dims = (0..=2 * genus - 2)
            .map(|i| sector_betti(genus, i))
            .collect::<Result<_>>()?;
        Ok(Self { genus, dims })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Dimension in degree i (zero outside 0..=2g-2).
    pub fn dim(&self, i: usize) -> Int {
        self.dims.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn dims(&self) -> &[Int] {
        &self.dims
    }

    /// Total dimension of one twisted sector, 2^(2g-3).
    pub fn total(&self) -> Int {
        self.dims.iter().sum()
    }
}

/// Static description of one sector of the orbifold.
///
/// For a nontrivial label the fixed locus is covered by the Prym variety of
/// an unramified double cover of the base curve; the covering curve has
/// genus 2g-1 and the Prym has dimension g-1. Those fields are `None` on the
/// untwisted sector.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorDescriptor {
    pub label: TwoTorsionLabel,
    /// Degree shift (age) of the sector; integer-valued in this geometry.
    pub shift: Rational,
    /// Complex dimension of the fixed locus.
    pub fixed_locus_complex_dim: usize,
    pub covering_genus: Option<usize>,
    pub prym_dim: Option<usize>,
    /// Dimension of the odd cohomology of the Prym that models the sector.
    pub w0_dim: Option<usize>,
}

impl SectorDescriptor {
    pub fn for_label(label: &TwoTorsionLabel) -> Self {
        let g = label.genus();
        if label.is_zero() {
            Self {
                label: *label,
                shift: Rational::zero(),
                fixed_locus_complex_dim: 3 * g - 3,
                covering_genus: None,
                prym_dim: None,
                w0_dim: None,
            }
        } else {
            Self {
                label: *label,
                shift: Rational::from_integer(Int::from(g - 1)),
                fixed_locus_complex_dim: g - 1,
                covering_genus: Some(2 * g - 1),
                prym_dim: Some(g - 1),
                w0_dim: Some(2 * (g - 1)),
            }
        }
    }
}

/// Complex dimension of the common fixed locus of the three labels, or an
/// error when it is empty.
fn common_fixed_dim(
    l1: &TwoTorsionLabel,
    l2: &TwoTorsionLabel,
    l3: &TwoTorsionLabel,
) -> Result<usize> {
    let g = l1.genus();
    let nonzero: Vec<&TwoTorsionLabel> =
        [l1, l2, l3].into_iter().filter(|l| !l.is_zero()).collect();
    match nonzero.len() {
        0 => Ok(3 * g - 3),
        // Two equal nonzero labels share their locus.
        2 => Ok(g - 1),
        // Three distinct nonzero labels: all pairwise Weil pairings agree,
        // and the loci meet (in finitely many points) exactly when that
        // pairing is 1.
        3 => {
            if nonzero[0].pairing(nonzero[1])? {
                Ok(0)
            } else {
                Err(Error::EmptyIntersection)
            }
        }
        _ => unreachable!("closed triples have 0, 2, or 3 nonzero labels"),
    }
}

/// Rank of the obstruction bundle over the common fixed locus of a closed
/// triple of labels (L3 = L1 + L2): dim S - (3g-3) + sum of the three degree
/// shifts. In this geometry the rank is zero for every valid triple.
pub fn obstruction_rank(
    l1: &TwoTorsionLabel,
    l2: &TwoTorsionLabel,
    l3: &TwoTorsionLabel,
) -> Result<usize> {
    let sum = l1.tensor(l2)?.tensor(l3)?;
    if !sum.is_zero() {
        return Err(Error::TripleNotClosed);
    }
    let g = l1.genus();
    let dim_s = common_fixed_dim(l1, l2, l3)? as i64;
    let shifts: i64 = [l1, l2, l3]
        .into_iter()
        .map(|l| if l.is_zero() { 0 } else { (g - 1) as i64 })
        .sum();
    let rank = dim_s - (3 * g as i64 - 3) + shifts;
    usize::try_from(rank).map_err(|_| Error::EmptyIntersection)
}

/// Total dimension of all twisted sectors together: (2^(2g) - 1) * 2^(2g-3).
pub fn twisted_total_dimension(genus: usize) -> Result<Int> {
    let table = SectorBettiTable::new(genus)?;
    Ok((pow2(2 * genus) - 1) * table.total())
}
