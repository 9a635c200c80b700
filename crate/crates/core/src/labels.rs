//! The group of two-torsion line bundles on the base curve and its Weil
//! pairing.
//!
//! A label is an element of the 2-torsion subgroup of Pic^0(X) for a smooth
//! curve X of genus g, identified with F_2^(2g) through a symplectic basis
//! a_1, b_1, ..., a_g, b_g of H_1(X, Z/2). Serialized labels are bitstrings
//! of length 2g whose leftmost character is the a_1 coordinate; internally
//! coordinate j is bit j of a 64-bit word, which caps the genus at
//! [`MAX_LABEL_GENUS`]. The letter `O` is accepted as an alias for the zero
//! label (the trivial bundle).
//!
//! Key items:
//! - [`TwoTorsionLabel`]: one group element, with [`TwoTorsionLabel::tensor`]
//!   as the group operation and [`TwoTorsionLabel::pairing`] as the Weil
//!   pairing (the standard symplectic form over F_2);
//! - [`fixed_locus_relation`]: how the fixed loci of two labels intersect;
//! - [`enumerate_labels`]: deterministic enumeration of the whole group.

use crate::error::{Error, Result};
use std::fmt;

/// Largest genus whose labels fit one 64-bit word (2g <= 64).
pub const MAX_LABEL_GENUS: usize = 32;

/// Enumeration refuses genus above this (2^(2g) labels otherwise).
pub const MAX_ENUMERATION_GENUS: usize = 10;

/// Mask of the a-coordinates (even bit positions) for a 2g-bit word.
fn a_mask(genus: usize) -> u64 {
    let full = full_mask(genus);
    0x5555_5555_5555_5555 & full
}

fn full_mask(genus: usize) -> u64 {
    if genus == MAX_LABEL_GENUS {
        u64::MAX
    } else {
        (1u64 << (2 * genus)) - 1
    }
}

fn check_genus(genus: usize) -> Result<()> {
    if genus < 2 {
        Err(Error::GenusTooSmall(genus))
    } else if genus > MAX_LABEL_GENUS {
        Err(Error::GenusTooLarge {
            genus,
            max: MAX_LABEL_GENUS,
        })
    } else {
        Ok(())
    }
}

/// A two-torsion line bundle on the genus-g base curve.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TwoTorsionLabel {
    genus: usize,
    bits: u64,
}

impl TwoTorsionLabel {
    /// Builds a label from its coordinate word; bit j is coordinate j in the
    /// order a_1, b_1, a_2, b_2, ...
    pub fn new(genus: usize, bits: u64) -> Result<Self> {
        check_genus(genus)?;
        if bits & !full_mask(genus) != 0 {
            return Err(Error::LabelRange(genus));
        }
        Ok(Self { genus, bits })
    }

    /// The trivial bundle.
    pub fn zero(genus: usize) -> Result<Self> {
        Self::new(genus, 0)
    }

    /// The generator a_i (1-based).
    pub fn a(genus: usize, i: usize) -> Result<Self> {
        if i == 0 || i > genus {
            return Err(Error::GeneratorIndex {
                index: i,
                max: genus,
            });
        }
        Self::new(genus, 1u64 << (2 * (i - 1)))
    }

    /// The generator b_i (1-based).
    pub fn b(genus: usize, i: usize) -> Result<Self> {
        if i == 0 || i > genus {
            return Err(Error::GeneratorIndex {
                index: i,
                max: genus,
            });
        }
        Self::new(genus, 1u64 << (2 * (i - 1) + 1))
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Tensor product of line bundles: coordinatewise addition over F_2.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Ok(Self {
            genus: self.genus,
            bits: self.bits ^ other.bits,
        })
    }

    /// Weil pairing, the standard symplectic form: with x = (x_{a_i}, x_{b_i})
    /// this is sum_i (x_{a_i} y_{b_i} + x_{b_i} y_{a_i}) mod 2.
    pub fn pairing(&self, other: &Self) -> Result<bool> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        let even = a_mask(self.genus);
        let swapped = ((other.bits & !even) >> 1) | ((other.bits & even) << 1);
        Ok((self.bits & swapped).count_ones() % 2 == 1)
    }

    /// Parses the serialized form: a bitstring of length 2g (leftmost
    /// character is the a_1 coordinate) or the alias `O` for the zero label.
    pub fn parse(genus: usize, text: &str) -> Result<Self> {
        check_genus(genus)?;
        if text == "O" {
            return Self::zero(genus);
        }
        let want = 2 * genus;
        let mut bits = 0u64;
        let mut got = 0usize;
        for (j, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => {
                    if j < 64 {
                        bits |= 1u64 << j;
                    }
                }
                other => return Err(Error::LabelChar(other)),
            }
            got = j + 1;
        }
        if got != want {
            return Err(Error::LabelLength { genus, want, got });
        }
        Self::new(genus, bits)
    }
}

impl fmt::Display for TwoTorsionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..2 * self.genus {
            let bit = (self.bits >> j) & 1;
            write!(f, "{bit}")?;
        }
        Ok(())
    }
}

/// How the fixed loci S(L) and S(L') of two labels sit inside the moduli
/// space.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FixedLocusRelation {
    /// One label is trivial, so one "locus" is the whole moduli space.
    FullSpace,
    /// Equal nonzero labels: the loci coincide.
    SameLocus,
    /// Distinct nonzero labels with Weil pairing 0: the loci do not meet.
    Disjoint,
    /// Distinct nonzero labels with Weil pairing 1: the loci meet in this
    /// many points, always 2^(2g-2).
    FinitePoints(u64),
}

/// Classifies the intersection of the fixed loci of two labels.
pub fn fixed_locus_relation(
    l1: &TwoTorsionLabel,
    l2: &TwoTorsionLabel,
) -> Result<FixedLocusRelation> {
    if l1.genus() != l2.genus() {
        return Err(Error::GenusMismatch(l1.genus(), l2.genus()));
    }
    if l1.is_zero() || l2.is_zero() {
        return Ok(FixedLocusRelation::FullSpace);
    }
    if l1 == l2 {
        return Ok(FixedLocusRelation::SameLocus);
    }
    if l1.pairing(l2)? {
        Ok(FixedLocusRelation::FinitePoints(
            1u64 << (2 * l1.genus() - 2),
        ))
    } else {
        Ok(FixedLocusRelation::Disjoint)
    }
}

/// Enumerates all 2^(2g) labels, zero first, in increasing coordinate-word
/// order. Refuses genus above [`MAX_ENUMERATION_GENUS`].
pub fn enumerate_labels(genus: usize) -> Result<impl Iterator<Item = TwoTorsionLabel>> {
    check_genus(genus)?;
    if genus > MAX_ENUMERATION_GENUS {
        return Err(Error::EnumerationCap {
            exponent: 2 * genus,
            cap_exponent: 2 * MAX_ENUMERATION_GENUS,
        });
    }
    Ok((0..1u64 << (2 * genus)).map(move |bits| TwoTorsionLabel { genus, bits }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lbl(genus: usize, text: &str) -> TwoTorsionLabel {
        TwoTorsionLabel::parse(genus, text).unwrap()
    }

    #[test]
    fn standard_generator_pairings() {
        let a1 = lbl(2, "1000");
        let b1 = lbl(2, "0100");
        let a2 = lbl(2, "0010");
        let b2 = lbl(2, "0001");
        assert_eq!(TwoTorsionLabel::a(2, 1).unwrap(), a1);
        assert_eq!(TwoTorsionLabel::b(2, 2).unwrap(), b2);
        assert!(a1.pairing(&b1).unwrap());
        assert!(!a1.pairing(&a2).unwrap());
        assert!(!a1.pairing(&b2).unwrap());
        assert!(a2.pairing(&b2).unwrap());
    }

    #[test]
    fn pairing_is_symmetric_bilinear_alternating() {
        for g in [2, 3] {
            let labels: Vec<_> = enumerate_labels(g).unwrap().collect();
            for x in &labels {
                assert!(!x.pairing(x).unwrap(), "alternating fails at {x}");
                for y in &labels {
                    assert_eq!(x.pairing(y).unwrap(), y.pairing(x).unwrap());
                    for z in &labels {
                        let xz = x.pairing(z).unwrap();
                        let yz = y.pairing(z).unwrap();
                        let sum = x.tensor(y).unwrap();
                        assert_eq!(sum.pairing(z).unwrap(), xz ^ yz);
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_is_nondegenerate() {
        for g in [2, 3] {
            for x in enumerate_labels(g).unwrap().filter(|x| !x.is_zero()) {
                let hit = enumerate_labels(g)
                    .unwrap()
                    .any(|y| x.pairing(&y).unwrap());
                assert!(hit, "no partner for {x}");
            }
        }
    }

    #[test]
    fn tensor_is_the_group_law() {
        let labels: Vec<_> = enumerate_labels(2).unwrap().collect();
        let zero = TwoTorsionLabel::zero(2).unwrap();
        for x in &labels {
            assert_eq!(x.tensor(x).unwrap(), zero);
            assert_eq!(x.tensor(&zero).unwrap(), *x);
        }
    }

    #[test]
    fn relation_dichotomy_examples() {
        let zero = TwoTorsionLabel::zero(2).unwrap();
        let a1 = lbl(2, "1000");
        let b1 = lbl(2, "0100");
        let a2 = lbl(2, "0010");
        assert_eq!(
            fixed_locus_relation(&zero, &a1).unwrap(),
            FixedLocusRelation::FullSpace
        );
        assert_eq!(
            fixed_locus_relation(&a1, &zero).unwrap(),
            FixedLocusRelation::FullSpace
        );
        assert_eq!(
            fixed_locus_relation(&a1, &a1).unwrap(),
            FixedLocusRelation::SameLocus
        );
        assert_eq!(
            fixed_locus_relation(&a1, &a2).unwrap(),
            FixedLocusRelation::Disjoint
        );
        assert_eq!(
            fixed_locus_relation(&a1, &b1).unwrap(),
            FixedLocusRelation::FinitePoints(4)
        );
    }

    #[test]
    fn relation_counts_over_all_pairs() {
        // Ordered pairs at g = 2: 31 involve a zero label, the 15 nonzero
        // diagonal pairs coincide, and the remaining 210 split by pairing
        // value into 90 disjoint and 120 finite.
        let labels: Vec<_> = enumerate_labels(2).unwrap().collect();
        let mut counts = [0usize; 4];
        for x in &labels {
            for y in &labels {
                match fixed_locus_relation(x, y).unwrap() {
                    FixedLocusRelation::FullSpace => counts[0] += 1,
                    FixedLocusRelation::SameLocus => counts[1] += 1,
                    FixedLocusRelation::Disjoint => counts[2] += 1,
                    FixedLocusRelation::FinitePoints(n) => {
                        assert_eq!(n, 4);
                        counts[3] += 1;
                    }
                }
            }
        }
        assert_eq!(counts, [31, 15, 90, 120]);
    }

    #[test]
    fn enumeration_is_deterministic_and_complete() {
        let labels: Vec<_> = enumerate_labels(2).unwrap().collect();
        assert_eq!(labels.len(), 16);
        assert!(labels[0].is_zero());
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, labels);
        assert_eq!(enumerate_labels(3).unwrap().count(), 64);
        assert!(matches!(
            enumerate_labels(11),
            Err(Error::EnumerationCap { .. })
        ));
    }

    #[test]
    fn serialization_round_trips() {
        for text in ["1000", "0101", "1111", "0000"] {
            let l = lbl(2, text);
            assert_eq!(l.to_string(), text);
            assert_eq!(TwoTorsionLabel::parse(2, &l.to_string()).unwrap(), l);
        }
        assert!(TwoTorsionLabel::parse(2, "O").unwrap().is_zero());
        assert_eq!(TwoTorsionLabel::parse(2, "O").unwrap().to_string(), "0000");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            TwoTorsionLabel::parse(2, "010"),
            Err(Error::LabelLength {
                genus: 2,
                want: 4,
                got: 3
            })
        );
        assert_eq!(TwoTorsionLabel::parse(2, "01x1"), Err(Error::LabelChar('x')));
        assert_eq!(TwoTorsionLabel::new(1, 0), Err(Error::GenusTooSmall(1)));
        assert_eq!(
            TwoTorsionLabel::new(33, 0),
            Err(Error::GenusTooLarge { genus: 33, max: 32 })
        );
        assert_eq!(TwoTorsionLabel::new(2, 1 << 4), Err(Error::LabelRange(2)));
        let l2 = TwoTorsionLabel::zero(2).unwrap();
        let l3 = TwoTorsionLabel::zero(3).unwrap();
        assert_eq!(l2.pairing(&l3), Err(Error::GenusMismatch(2, 3)));
    }

    #[test]
    fn max_genus_label_word_is_exact() {
        let l = TwoTorsionLabel::new(32, u64::MAX).unwrap();
        assert_eq!(l.to_string().len(), 64);
        assert!(!l.pairing(&l).unwrap());
    }
}
