//! The orbifold cohomology ring of the moduli space of PSL(2,C)-bundles with
//! nontrivial second Stiefel-Whitney class, as a quotient by the two-torsion
//! group of the Jacobian.
//!
//! A [`CrClass`] is supported on the computable part of the ring: the
//! subalgebra generated by kappa in the untwisted sector together with all
//! twisted sectors, each modeled by the even part of an exterior algebra
//! (see [`crate::exterior`]). The grading is the total orbifold degree: the
//! kappa power m sits in degree 2m and a twisted monomial of exterior degree
//! i sits in degree i + 2(g-1), the shift being twice the sector age.
//!
//! [`product`] multiplies classes case by case:
//!
//! - kappa powers multiply with the relation kappa^(3g-2) = 0;
//! - kappa acts on a twisted sector by wedging with its pullback
//!   2 theta_bar;
//! - two classes of the same twisted sector land back in the kappa line,
//!   with the coefficient fixed by integration against powers of the
//!   pullback and by the volume constant v;
//! - classes of distinct twisted sectors meet only when the Weil pairing of
//!   their labels is 1, where the fixed loci intersect in isolated points
//!   each contributing 1/4, and only the scalar parts survive.
//!
//! [`poincare_pair`] is the orbifold Poincare pairing and [`three_point`]
//! the associated triple product; [`constants`] supplies the untwisted
//! intersection volume, and [`untwisted_poincare`] / [`cr_poincare`] the
//! Betti generating polynomials.

use crate::error::{Error, Result};
use crate::exterior::{kappa_pullback_power, ExteriorClass, ExteriorMonomial};
use crate::labels::{TwoTorsionLabel, MAX_LABEL_GENUS};
use crate::poly::Polynomial;
use crate::rational::{bernoulli, factorial, integer, pow2, Int, Rational};
use crate::sectors::SectorBettiTable;
use num_traits::{One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

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

/// A class in the computable part of the orbifold cohomology ring.
///
/// The untwisted content is a polynomial in kappa, stored as coefficients of
/// kappa^0 .. kappa^(3g-3); every twisted sector holds an even exterior
/// class. Classes of different genus never mix.
#[derive(Clone, Debug, PartialEq)]
pub struct CrClass {
    genus: usize,
    kappa: Vec<Rational>,
    twisted: BTreeMap<TwoTorsionLabel, ExteriorClass>,
}

impl CrClass {
    pub fn zero(genus: usize) -> Result<Self> {
        check_genus(genus)?;
        Ok(Self {
            genus,
            kappa: Vec::new(),
            twisted: BTreeMap::new(),
        })
    }

    /// The multiplicative unit kappa^0.
    pub fn one(genus: usize) -> Result<Self> {
        Self::scalar(genus, Rational::one())
    }

    pub fn scalar(genus: usize, c: Rational) -> Result<Self> {
        let mut class = Self::zero(genus)?;
        class.add_kappa_term(0, c);
        Ok(class)
    }

    /// kappa^m; the zero class when m exceeds 3g-3.
    pub fn kappa_power(genus: usize, m: usize) -> Result<Self> {
        let mut class = Self::zero(genus)?;
        class.add_kappa_term(m, Rational::one());
        Ok(class)
    }

    /// Builds an untwisted class from kappa coefficients listed by ascending
    /// power. Entries beyond kappa^(3g-3) are zero in the ring and are
    /// dropped.
    pub fn from_kappa_coeffs(genus: usize, coeffs: Vec<Rational>) -> Result<Self> {
        let mut class = Self::zero(genus)?;
        for (m, c) in coeffs.into_iter().enumerate() {
            class.add_kappa_term(m, c);
        }
        Ok(class)
    }

    /// A single twisted term: coeff * monomial in the sector of `label`.
    pub fn sector_term(
        label: &TwoTorsionLabel,
        monomial: ExteriorMonomial,
        coeff: Rational,
    ) -> Result<Self> {
        let mut class = Self::zero(label.genus())?;
        class.add_sector_term(label, monomial, coeff)?;
        Ok(class)
    }

    /// Places an even exterior class in the twisted sector of `label`.
    pub fn sector_class(label: &TwoTorsionLabel, content: ExteriorClass) -> Result<Self> {
        let mut class = Self::zero(label.genus())?;
        if content.genus() != label.genus() {
            return Err(Error::GenusMismatch(label.genus(), content.genus()));
        }
        for (mono, coeff) in content.terms() {
            class.add_sector_term(label, *mono, coeff.clone())?;
        }
        Ok(class)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.kappa.is_empty() && self.twisted.is_empty()
    }

    /// Coefficient of kappa^m.
    pub fn kappa_coeff(&self, m: usize) -> Rational {
        self.kappa.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Kappa coefficients by ascending power, without trailing zeros.
    pub fn kappa_coeffs(&self) -> &[Rational] {
        &self.kappa
    }

    /// Content of one twisted sector, if any.
    pub fn sector_part(&self, label: &TwoTorsionLabel) -> Option<&ExteriorClass> {
        self.twisted.get(label)
    }

    /// Twisted sectors in increasing label order.
    pub fn sectors(&self) -> impl Iterator<Item = (&TwoTorsionLabel, &ExteriorClass)> {
        self.twisted.iter()
    }

    /// Adds c * kappa^m in place; powers beyond 3g-3 vanish.
    pub fn add_kappa_term(&mut self, m: usize, c: Rational) {
        if c.is_zero() || m > 3 * self.genus - 3 {
            return;
        }
        if self.kappa.len() <= m {
            self.kappa.resize(m + 1, Rational::zero());
        }
        self.kappa[m] += c;
        while self.kappa.last().is_some_and(Zero::is_zero) {
            self.kappa.pop();
        }
    }

    /// Adds one twisted term in place. The label must be nonzero and the
    /// monomial of even degree.
    pub fn add_sector_term(
        &mut self,
        label: &TwoTorsionLabel,
        monomial: ExteriorMonomial,
        coeff: Rational,
    ) -> Result<()> {
        if label.genus() != self.genus {
            return Err(Error::GenusMismatch(self.genus, label.genus()));
        }
        if label.is_zero() {
            return Err(Error::ZeroLabelSector);
        }
        if monomial.degree() % 2 != 0 {
            return Err(Error::OddSectorTerm(monomial.degree()));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        match self.twisted.entry(*label) {
            Entry::Occupied(mut slot) => {
                slot.get_mut().add_term(monomial, coeff)?;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                let mut content = ExteriorClass::zero(self.genus)?;
                content.add_term(monomial, coeff)?;
                slot.insert(content);
            }
        }
        Ok(())
    }

    fn add_sector_class(&mut self, label: &TwoTorsionLabel, content: &ExteriorClass) -> Result<()> {
        for (mono, coeff) in content.terms() {
            self.add_sector_term(label, *mono, coeff.clone())?;
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        let mut out = self.clone();
        for (m, c) in other.kappa.iter().enumerate() {
            out.add_kappa_term(m, c.clone());
        }
        for (label, content) in &other.twisted {
            out.add_sector_class(label, content)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self {
                genus: self.genus,
                kappa: Vec::new(),
                twisted: BTreeMap::new(),
            };
        }
        Self {
            genus: self.genus,
            kappa: self.kappa.iter().map(|x| x * c).collect(),
            twisted: self
                .twisted
                .iter()
                .map(|(l, x)| (*l, x.scale(c)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// The set of orbifold degrees present in this class.
    pub fn cr_degrees(&self) -> BTreeSet<usize> {
        let mut degrees = BTreeSet::new();
        for (m, c) in self.kappa.iter().enumerate() {
            if !c.is_zero() {
                degrees.insert(2 * m);
            }
        }
        let shift = 2 * (self.genus - 1);
        for content in self.twisted.values() {
            for d in content.degrees() {
                degrees.insert(d + shift);
            }
        }
        degrees
    }

    pub fn is_homogeneous(&self) -> bool {
        self.cr_degrees().len() <= 1
    }
}

/// The two numbers normalizing the untwisted intersection theory: the degree
/// of the top kappa power on the cover, and its quotient v by the order of
/// the group.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionConstants {
    pub genus: usize,
    /// Integral of kappa^(3g-3) over the moduli space upstairs:
    /// (3g-3)!/(2g-2)! * 2^(2g-2) * (2^(2g-2) - 2) * |B_(2g-2)|.
    pub thaddeus_number: Rational,
    /// Integral of kappa^(3g-3) over the quotient: thaddeus_number / 2^(2g).
    pub v: Rational,
}

/// Evaluates the intersection constants for one genus.
pub fn constants(genus: usize) -> Result<IntersectionConstants> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let ratio = Rational::new(factorial(3 * genus - 3), factorial(2 * genus - 2));
    let half_count = Rational::from_integer(pow2(2 * genus - 2));
    let half_minus_two = Rational::from_integer(pow2(2 * genus - 2) - Int::from(2));
    let thaddeus_number = ratio * half_count * half_minus_two * bernoulli(2 * genus - 2).abs();
    let v = &thaddeus_number / Rational::from_integer(pow2(2 * genus));
    Ok(IntersectionConstants {
        genus,
        thaddeus_number,
        v,
    })
}

/// The orbifold product. Both factors must share a genus.
///
/// ```
/// use crcoh::rational::integer;
/// use crcoh::{product, CrClass, ExteriorMonomial, TwoTorsionLabel};
///
/// let l = TwoTorsionLabel::parse(2, "1000").unwrap();
/// let unit_l = CrClass::sector_term(&l, ExteriorMonomial::UNIT, integer(1)).unwrap();
/// let square = product(&unit_l, &unit_l).unwrap();
/// assert_eq!(square.kappa_coeff(2), integer(8));
/// ```
pub fn product(a: &CrClass, b: &CrClass) -> Result<CrClass> {
    if a.genus != b.genus {
        return Err(Error::GenusMismatch(a.genus, b.genus));
    }
    let v = constants(a.genus)?.v;
    product_with(a, b, &v)
}

/// Product with the volume constant already in hand; the verification suites
/// call this in their hot loops.
pub(crate) fn product_with(a: &CrClass, b: &CrClass, v: &Rational) -> Result<CrClass> {
    let g = a.genus;
    let mut out = CrClass::zero(g)?;

    // Untwisted times untwisted: kappa powers truncate above 3g-3.
    for (m, x) in a.kappa.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (n, y) in b.kappa.iter().enumerate() {
            out.add_kappa_term(m + n, x * y);
        }
    }

    // Kappa acting on a twisted sector, on either side: wedge with
    // (2 theta_bar)^m.
    for (kappa_side, twisted_side) in [(&a.kappa, &b.twisted), (&b.kappa, &a.twisted)] {
        for (m, x) in kappa_side.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let pull = kappa_pullback_power(g, m)?;
            if pull.is_zero() {
                continue;
            }
            for (label, content) in twisted_side.iter() {
                let wedged = content.wedge(&pull)?.scale(x);
                out.add_sector_class(label, &wedged)?;
            }
        }
    }

    for (l1, c1) in &a.twisted {
        for (l2, c2) in &b.twisted {
            if l1 == l2 {
                // Same sector: the product returns to the kappa line. For
                // monomials of exterior degrees i1, i2 the only kappa power
                // in matching degree is m1 = (i1+i2)/2 + 2(g-1), and its
                // coefficient is the integral against (2 theta_bar)^m0 with
                // m1 + m0 = 3g-3, divided by v.
                for (m1, x1) in c1.terms() {
                    for (m2, x2) in c2.terms() {
                        let half = (m1.degree() + m2.degree()) / 2;
                        if half > g - 1 {
                            continue;
                        }
                        let Some((mono, sign)) = m1.wedge(m2) else {
                            continue;
                        };
                        let mut wedged = ExteriorClass::zero(g)?;
                        let mut coeff = x1 * x2;
                        if sign < 0 {
                            coeff = -coeff;
                        }
                        wedged.add_term(mono, coeff)?;
                        let c = wedged
                            .wedge(&kappa_pullback_power(g, g - 1 - half)?)?
                            .integrate_orb();
                        if !c.is_zero() {
                            out.add_kappa_term(half + 2 * (g - 1), c / v);
                        }
                    }
                }
            } else if l1.pairing(l2)? {
                // Distinct sectors meeting in isolated points: only the
                // scalar parts survive, each point contributing 1/4, and the
                // result is a multiple of the orientation class of the
                // sector of the tensor label.
                let s1 = c1.coefficient(&ExteriorMonomial::UNIT);
                let s2 = c2.coefficient(&ExteriorMonomial::UNIT);
                let scalar = s1 * s2 / integer(4);
                if !scalar.is_zero() {
                    out.add_sector_term(
                        &l1.tensor(l2)?,
                        ExteriorMonomial::top(g)?,
                        scalar,
                    )?;
                }
            }
            // Distinct sectors with Weil pairing 0 have disjoint fixed loci
            // and contribute nothing.
        }
    }
    Ok(out)
}

/// The orbifold Poincare pairing: v pairs complementary kappa powers, and
/// every twisted sector (each is its own inverse sector) integrates the
/// wedge of its two contents.
pub fn poincare_pair(a: &CrClass, b: &CrClass) -> Result<Rational> {
    if a.genus != b.genus {
        return Err(Error::GenusMismatch(a.genus, b.genus));
    }
    let v = constants(a.genus)?.v;
    pair_with(a, b, &v)
}

pub(crate) fn pair_with(a: &CrClass, b: &CrClass, v: &Rational) -> Result<Rational> {
    let top = 3 * a.genus - 3;
    let mut total = Rational::zero();
    for (m, x) in a.kappa.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let y = b.kappa_coeff(top - m);
        if !y.is_zero() {
            total += x * y * v;
        }
    }
    for (label, c1) in &a.twisted {
        if let Some(c2) = b.twisted.get(label) {
            total += c1.wedge(c2)?.integrate_orb();
        }
    }
    Ok(total)
}

/// The three-point function: the pairing of a product with a third class.
pub fn three_point(a: &CrClass, b: &CrClass, c: &CrClass) -> Result<Rational> {
    if a.genus != b.genus {
        return Err(Error::GenusMismatch(a.genus, b.genus));
    }
    if a.genus != c.genus {
        return Err(Error::GenusMismatch(a.genus, c.genus));
    }
    let v = constants(a.genus)?.v;
    pair_with(&product_with(a, b, &v)?, c, &v)
}

/// Poincare polynomial of the untwisted moduli space:
/// ((1+t^3)^2g - t^2g (1+t)^2g) / ((1-t^2)(1-t^4)), an exact division.
pub fn untwisted_poincare(genus: usize) -> Result<Polynomial> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let one_t3 = Polynomial::from_integers(&[1, 0, 0, 1]);
    let one_t = Polynomial::from_integers(&[1, 1]);
    let shift = Polynomial::term(Rational::one(), 2 * genus);
    let numerator = &one_t3.pow(2 * genus) - &(&shift * &one_t.pow(2 * genus));
    let denominator =
        &Polynomial::from_integers(&[1, 0, -1]) * &Polynomial::from_integers(&[1, 0, 0, 0, -1]);
    numerator.div_exact(&denominator)
}

/// Poincare polynomial of the full orbifold cohomology, palindromic of
/// degree 6g-6 with constant term 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CrPoincarePolynomial {
    genus: usize,
    poly: Polynomial,
}

impl CrPoincarePolynomial {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    /// Betti numbers by degree, 0 through 6g-6.
    pub fn betti_numbers(&self) -> Vec<Int> {
        (0..=6 * self.genus - 6)
            .map(|d| self.poly.coeff(d).to_integer())
            .collect()
    }

    /// Alternating sum of the Betti numbers.
    pub fn euler_characteristic(&self) -> Int {
        self.poly.eval(&integer(-1)).to_integer()
    }
}

/// Assembles the orbifold Poincare polynomial: the untwisted one plus
/// (2^2g - 1) copies of the twisted-sector dimensions shifted by 2(g-1).
pub fn cr_poincare(genus: usize) -> Result<CrPoincarePolynomial> {
    let mut poly = untwisted_poincare(genus)?;
    let table = SectorBettiTable::new(genus)?;
    let sectors = Rational::from_integer(pow2(2 * genus) - Int::one());
    let shift = 2 * (genus - 1);
    for (i, dim) in table.dims().iter().enumerate() {
        if dim.is_zero() {
            continue;
        }
        let coeff = &sectors * Rational::from_integer(dim.clone());
        poly = &poly + &Polynomial::term(coeff, shift + i);
    }
    assert!(poly.is_palindromic(), "orbifold Betti numbers must be palindromic");
    assert_eq!(poly.coeff(0), Rational::one(), "constant term must be 1");
    assert_eq!(poly.degree(), Some(6 * genus - 6));
    Ok(CrPoincarePolynomial { genus, poly })
}
