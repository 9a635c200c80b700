//! Dense univariate polynomials over the exact rationals, with the exact
//! division used to evaluate closed-form Poincare series.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable with [`Rational`] coefficients, stored densely
/// from degree zero upward with no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// c * t^d.
    pub fn term(c: Rational, d: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds from coefficients listed by ascending degree, trimming trailing
    /// zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Convenience constructor from machine integers, ascending degree.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| crate::rational::integer(c)).collect())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of t^d (zero beyond the degree).
    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    /// All coefficients by ascending degree.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at the given point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// True when the coefficient sequence reads the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Fails with [`Error::InexactDivision`] when the remainder is nonzero
    /// and [`Error::ZeroPolynomialDivisor`] when the divisor is zero.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomialDivisor);
        }
        let mut rem = self.coeffs.clone();
        let d = divisor.coeffs.len();
        let lead = &divisor.coeffs[d - 1];
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(d) + 1];
        while rem.len() >= d {
            let c = rem.last().expect("trimmed") / lead;
            let shift = rem.len() - d;
            quot[shift] = c.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let prod = &c * dc;
                rem[shift + i] -= prod;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        if rem.is_empty() {
            Ok(Polynomial::from_coeffs(quot))
        } else {
            Err(Error::InexactDivision)
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}
