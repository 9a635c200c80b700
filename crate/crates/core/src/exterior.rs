//! The exterior-algebra model of a twisted sector's cohomology.
//!
//! Every twisted sector is modeled on the rational cohomology of a Prym
//! variety of dimension g-1: the exterior algebra on a symplectic basis
//! e_1, f_1, ..., e_{g-1}, f_{g-1} of W_0 = Q^(2(g-1)). The residual
//! involution acts by -1 on W_0, so the sector itself is the even-degree
//! part; odd-degree classes are still representable here because products
//! and signs are computed in the full algebra.
//!
//! Normalization: the top monomial e_1^f_1^...^e_{g-1}^f_{g-1} is the
//! orientation class of the sector, and [`ExteriorClass::integrate_orb`]
//! reads off its coefficient. The restriction of the polarization is
//! [`theta_bar`] = sum_i e_i^f_i, and the generator kappa of the untwisted
//! sector restricts to 2 theta_bar, whose powers [`kappa_pullback_power`]
//! drive the mixed products of the orbifold ring.
//!
//! Monomials are bitmasks in one 64-bit word: generator e_i is bit 2(i-1),
//! f_i is bit 2(i-1)+1. That caps the genus at [`MAX_EXTERIOR_GENUS`].

use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Largest genus whose 2(g-1) generators fit one 64-bit mask word.
pub const MAX_EXTERIOR_GENUS: usize = 33;

fn check_genus(genus: usize) -> Result<()> {
    if genus < 2 {
        Err(Error::GenusTooSmall(genus))
    } else if genus > MAX_EXTERIOR_GENUS {
        Err(Error::GenusTooLarge {
            genus,
            max: MAX_EXTERIOR_GENUS,
        })
    } else {
        Ok(())
    }
}

fn full_mask(genus: usize) -> u64 {
    if genus == MAX_EXTERIOR_GENUS {
        u64::MAX
    } else {
        (1u64 << (2 * (genus - 1))) - 1
    }
}

/// A monomial in the generators, encoded as the set of generators it uses.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExteriorMonomial {
    mask: u64,
}

impl ExteriorMonomial {
    /// The empty product.
    pub const UNIT: Self = Self { mask: 0 };

    pub fn from_mask(mask: u64) -> Self {
        Self { mask }
    }

    /// The generator e_i (1-based).
    pub fn e(i: usize) -> Result<Self> {
        if i == 0 || i > MAX_EXTERIOR_GENUS - 1 {
            return Err(Error::GeneratorIndex {
                index: i,
                max: MAX_EXTERIOR_GENUS - 1,
            });
        }
        Ok(Self {
            mask: 1u64 << (2 * (i - 1)),
        })
    }

    /// The generator f_i (1-based).
    pub fn f(i: usize) -> Result<Self> {
        if i == 0 || i > MAX_EXTERIOR_GENUS - 1 {
            return Err(Error::GeneratorIndex {
                index: i,
                max: MAX_EXTERIOR_GENUS - 1,
            });
        }
        Ok(Self {
            mask: 1u64 << (2 * (i - 1) + 1),
        })
    }

    /// The orientation monomial: the product of all 2(g-1) generators.
    pub fn top(genus: usize) -> Result<Self> {
        check_genus(genus)?;
        Ok(Self {
            mask: full_mask(genus),
        })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Exterior degree: the number of generators used.
    pub fn degree(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Wedges two monomials, returning the merged monomial together with the
    /// Koszul sign (+1 or -1), or `None` when a generator repeats.
    ///
    /// The sign counts the transpositions needed to interleave the two
    /// ascending generator lists: one for every pair of generators (j, i)
    /// with j in `self`, i in `other`, j > i.
    pub fn wedge(&self, other: &Self) -> Option<(Self, i8)> {
        if self.mask & other.mask != 0 {
            return None;
        }
        let mut sign = 1i8;
        let mut rest = other.mask;
        while rest != 0 {
            let i = rest.trailing_zeros();
            // Generators of self strictly above position i.
            let above = (self.mask >> i) >> 1;
            if above.count_ones() % 2 == 1 {
                sign = -sign;
            }
            rest &= rest - 1;
        }
        Some((
            Self {
                mask: self.mask | other.mask,
            },
            sign,
        ))
    }
}

impl std::fmt::Display for ExteriorMonomial {
    /// Generators in ascending order joined by dots, e.g. `e1.f1.e3`; the
    /// unit monomial prints as `1`.
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.mask == 0 {
            return write!(out, "1");
        }
        let mut rest = self.mask;
        let mut first = true;
        while rest != 0 {
            let bit = rest.trailing_zeros() as usize;
            if !first {
                write!(out, ".")?;
            }
            let name = if bit % 2 == 0 { 'e' } else { 'f' };
            write!(out, "{name}{}", bit / 2 + 1)?;
            first = false;
            rest &= rest - 1;
        }
        Ok(())
    }
}

/// A class in the exterior algebra on W_0 for one genus: a finite rational
/// combination of [`ExteriorMonomial`]s.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorClass {
    genus: usize,
    terms: BTreeMap<ExteriorMonomial, Rational>,
}

impl ExteriorClass {
    pub fn zero(genus: usize) -> Result<Self> {
        check_genus(genus)?;
        Ok(Self {
            genus,
            terms: BTreeMap::new(),
        })
    }

    /// The scalar 1.
    pub fn unit(genus: usize) -> Result<Self> {
        Self::scalar(genus, Rational::one())
    }

    pub fn scalar(genus: usize, c: Rational) -> Result<Self> {
        let mut class = Self::zero(genus)?;
        class.add_term(ExteriorMonomial::UNIT, c)?;
        Ok(class)
    }

    pub fn from_terms<I>(genus: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExteriorMonomial, Rational)>,
    {
        let mut class = Self::zero(genus)?;
        for (mono, coeff) in terms {
            class.add_term(mono, coeff)?;
        }
        Ok(class)
    }

    /// Adds `coeff * mono`, keeping the term map free of zeros.
    pub fn add_term(&mut self, mono: ExteriorMonomial, coeff: Rational) -> Result<()> {
        if mono.mask & !full_mask(self.genus) != 0 {
            return Err(Error::MonomialRange(self.genus));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(mono).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &ExteriorMonomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing monomial-mask order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExteriorMonomial, &Rational)> {
        self.terms.iter()
    }

    /// The set of exterior degrees present.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(ExteriorMonomial::degree).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// True when every term has even degree (the invariant part).
    pub fn is_even(&self) -> bool {
        self.degrees().iter().all(|d| d % 2 == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        let mut out = self.clone();
        for (mono, coeff) in other.terms() {
            out.add_term(*mono, coeff.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self {
                genus: self.genus,
                terms: BTreeMap::new(),
            };
        }
        Self {
            genus: self.genus,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        let mut out = Self::zero(self.genus)?;
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                if let Some((mono, sign)) = m1.wedge(m2) {
                    let mut coeff = c1 * c2;
                    if sign < 0 {
                        coeff = -coeff;
                    }
                    out.add_term(mono, coeff)?;
                }
            }
        }
        Ok(out)
    }

    /// Integration over the sector: the coefficient of the orientation
    /// monomial.
    pub fn integrate_orb(&self) -> Rational {
        self.coefficient(&ExteriorMonomial {
            mask: full_mask(self.genus),
        })
    }
}

/// The restriction of the polarization class: sum_{i=1}^{g-1} e_i ^ f_i.
pub fn theta_bar(genus: usize) -> Result<ExteriorClass> {
    check_genus(genus)?;
    let mut class = ExteriorClass::zero(genus)?;
    for i in 1..genus {
        let (mono, sign) = ExteriorMonomial::e(i)?
            .wedge(&ExteriorMonomial::f(i)?)
            .expect("distinct generators");
        debug_assert_eq!(sign, 1);
        class.add_term(mono, Rational::one())?;
    }
    Ok(class)
}

/// The m-th power of the pullback of kappa to a twisted sector: (2 theta_bar)^m.
/// Vanishes once 2m exceeds 2(g-1).
pub fn kappa_pullback_power(genus: usize, m: usize) -> Result<ExteriorClass> {
    let base = theta_bar(genus)?.scale(&crate::rational::integer(2));
    let mut acc = ExteriorClass::unit(genus)?;
    for _ in 0..m {
        acc = acc.wedge(&base)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{binomial, factorial, integer, rational, Int};

    fn e(i: usize) -> ExteriorMonomial {
        ExteriorMonomial::e(i).unwrap()
    }

    fn f(i: usize) -> ExteriorMonomial {
        ExteriorMonomial::f(i).unwrap()
    }

    #[test]
    fn monomial_wedge_signs() {
        let (ef, s) = e(1).wedge(&f(1)).unwrap();
        assert_eq!(s, 1);
        assert_eq!(ef.degree(), 2);
        let (fe, s) = f(1).wedge(&e(1)).unwrap();
        assert_eq!(fe, ef);
        assert_eq!(s, -1);
        assert!(e(1).wedge(&e(1)).is_none());
        // Unit is neutral with positive sign.
        let (m, s) = ExteriorMonomial::UNIT.wedge(&ef).unwrap();
        assert_eq!((m, s), (ef, 1));
    }

    #[test]
    fn graded_commutativity_of_monomials() {
        // a ^ b = (-1)^(|a| |b|) b ^ a over every disjoint pair for g = 3.
        for ma in 0u64..16 {
            for mb in 0u64..16 {
                if ma & mb != 0 {
                    continue;
                }
                let a = ExteriorMonomial::from_mask(ma);
                let b = ExteriorMonomial::from_mask(mb);
                let (mab, sab) = a.wedge(&b).unwrap();
                let (mba, sba) = b.wedge(&a).unwrap();
                assert_eq!(mab, mba);
                let expect = if a.degree() * b.degree() % 2 == 0 { 1 } else { -1 };
                assert_eq!(sab, sba * expect);
            }
        }
    }

    #[test]
    fn wedge_is_associative_and_bilinear() {
        let g = 4;
        let a = ExteriorClass::from_terms(
            g,
            [
                (e(1), integer(2)),
                (f(2), rational(1, 3)),
                (ExteriorMonomial::UNIT, integer(-1)),
            ],
        )
        .unwrap();
        let b = ExteriorClass::from_terms(g, [(f(1), integer(1)), (e(3), integer(5))]).unwrap();
        let c = ExteriorClass::from_terms(
            g,
            [(e(2), rational(-3, 7)), (f(3), integer(1))],
        )
        .unwrap();
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        assert_eq!(left, right);
        let sum = a.add(&c).unwrap().wedge(&b).unwrap();
        let split = a.wedge(&b).unwrap().add(&c.wedge(&b).unwrap()).unwrap();
        assert_eq!(sum, split);
        assert_eq!(
            a.wedge(&ExteriorClass::unit(g).unwrap()).unwrap(),
            a
        );
    }

    #[test]
    fn theta_bar_examples() {
        let t2 = theta_bar(2).unwrap();
        let ef = e(1).wedge(&f(1)).unwrap().0;
        assert_eq!(t2.coefficient(&ef), integer(1));
        assert_eq!(t2.terms().count(), 1);
        let t3 = theta_bar(3).unwrap();
        assert_eq!(t3.terms().count(), 2);
        assert!(t3.is_even());
    }

    #[test]
    fn theta_power_matches_multinomial_expansion() {
        // theta_bar^m = m! * sum over size-m subsets of the pair monomials.
        for g in 2..=5 {
            for m in 0..=g - 1 {
                let mut power = ExteriorClass::unit(g).unwrap();
                for _ in 0..m {
                    power = power.wedge(&theta_bar(g).unwrap()).unwrap();
                }
                let mut expected = ExteriorClass::zero(g).unwrap();
                let fact = Rational::from_integer(factorial(m));
                for subset in 0u64..(1 << (g - 1)) {
                    if subset.count_ones() as usize != m {
                        continue;
                    }
                    let mut mask = 0u64;
                    for i in 0..g - 1 {
                        if subset >> i & 1 == 1 {
                            mask |= 0b11 << (2 * i);
                        }
                    }
                    expected
                        .add_term(ExteriorMonomial::from_mask(mask), fact.clone())
                        .unwrap();
                }
                assert_eq!(power, expected, "g = {g}, m = {m}");
            }
        }
    }

    #[test]
    fn top_power_of_theta_is_factorial() {
        for g in 2..=6 {
            let mut power = ExteriorClass::unit(g).unwrap();
            for _ in 0..g - 1 {
                power = power.wedge(&theta_bar(g).unwrap()).unwrap();
            }
            let top = ExteriorMonomial::top(g).unwrap();
            assert_eq!(power.coefficient(&top), Rational::from_integer(factorial(g - 1)));
            assert_eq!(power.terms().count(), 1);
        }
    }

    #[test]
    fn kappa_pullback_values() {
        let one = kappa_pullback_power(2, 0).unwrap();
        assert_eq!(one, ExteriorClass::unit(2).unwrap());
        let k1 = kappa_pullback_power(2, 1).unwrap();
        let ef = e(1).wedge(&f(1)).unwrap().0;
        assert_eq!(k1.coefficient(&ef), integer(2));
        assert_eq!(k1.terms().count(), 1);
        assert!(kappa_pullback_power(2, 2).unwrap().is_zero());
        assert!(kappa_pullback_power(3, 3).unwrap().is_zero());
    }

    #[test]
    fn integration_reads_the_top_coefficient() {
        let top = ExteriorMonomial::top(2).unwrap();
        let mut class = ExteriorClass::zero(2).unwrap();
        class.add_term(top, rational(5, 3)).unwrap();
        class.add_term(ExteriorMonomial::UNIT, integer(7)).unwrap();
        assert_eq!(class.integrate_orb(), rational(5, 3));
        assert_eq!(ExteriorClass::unit(2).unwrap().integrate_orb(), integer(0));
        for g in 2..=6 {
            let full = kappa_pullback_power(g, g - 1).unwrap();
            let expected = Rational::from_integer(factorial(g - 1) * crate::rational::pow2(g - 1));
            assert_eq!(full.integrate_orb(), expected, "g = {g}");
        }
    }

    #[test]
    fn sector_poincare_duality_is_perfect() {
        // The pairing (a, b) -> integrate(a ^ b) between even degrees i and
        // 2g-2-i has full rank C(2g-2, i); exhaustive for g <= 4.
        for g in 2..=4 {
            let monomials = |deg: usize| -> Vec<ExteriorMonomial> {
                (0..=full_mask(g))
                    .filter(|m| m.count_ones() as usize == deg)
                    .map(ExteriorMonomial::from_mask)
                    .collect()
            };
            for i in (0..=2 * g - 2).step_by(2) {
                let rows = monomials(i);
                let cols = monomials(2 * g - 2 - i);
                let matrix: Vec<Vec<Rational>> = rows
                    .iter()
                    .map(|a| {
                        cols.iter()
                            .map(|b| match a.wedge(b) {
                                Some((m, s)) if m == ExteriorMonomial::top(g).unwrap() => {
                                    integer(s as i64)
                                }
                                _ => Rational::zero(),
                            })
                            .collect()
                    })
                    .collect();
                let expected = binomial(2 * g - 2, i);
                assert_eq!(Int::from(rows.len()), expected);
                assert_eq!(
                    crate::verify::matrix_rank(matrix),
                    rows.len(),
                    "duality fails at g = {g}, i = {i}"
                );
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(ExteriorMonomial::e(0), Err(Error::GeneratorIndex { index: 0, max: 32 }));
        assert_eq!(ExteriorClass::zero(1).err(), Some(Error::GenusTooSmall(1)));
        assert_eq!(
            ExteriorClass::zero(34).err(),
            Some(Error::GenusTooLarge { genus: 34, max: 33 })
        );
        let mut class = ExteriorClass::zero(2).unwrap();
        assert_eq!(
            class.add_term(e(2), integer(1)),
            Err(Error::MonomialRange(2))
        );
        let a = ExteriorClass::unit(2).unwrap();
        let b = ExteriorClass::unit(3).unwrap();
        assert_eq!(a.wedge(&b).err(), Some(Error::GenusMismatch(2, 3)));
    }

    #[test]
    fn monomial_display() {
        assert_eq!(ExteriorMonomial::UNIT.to_string(), "1");
        assert_eq!(e(1).to_string(), "e1");
        assert_eq!(f(3).to_string(), "f3");
        let (ef, _) = e(1).wedge(&f(1)).unwrap();
        assert_eq!(ef.to_string(), "e1.f1");
        assert_eq!(ExteriorMonomial::top(3).unwrap().to_string(), "e1.f1.e2.f2");
    }

    #[test]
    fn terms_cancel_to_zero() {
        let mut class = ExteriorClass::zero(2).unwrap();
        class.add_term(e(1), integer(3)).unwrap();
        class.add_term(e(1), integer(-3)).unwrap();
        assert!(class.is_zero());
        assert_eq!(class, ExteriorClass::zero(2).unwrap());
    }
}
