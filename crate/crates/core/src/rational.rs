//! Exact scalar arithmetic: arbitrary-precision rationals and the handful of
//! combinatorial quantities the intersection-number formulas need.
//!
//! Everything downstream computes over [`Rational`]; no floating point
//! appears anywhere in this crate.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision integer, re-exported for callers of the counting
/// functions.
pub type Int = BigInt;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational built from machine integers.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integral rational.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Binomial coefficient C(n, k), zero when k > n.
pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    num_integer::binomial(Int::from(n), Int::from(k))
}

/// Factorial n!.
pub fn factorial(n: usize) -> Int {
    let mut acc = Int::one();
    for i in 2..=n {
        acc *= Int::from(i);
    }
    acc
}

/// 2^n as a big integer.
pub fn pow2(n: usize) -> Int {
    Int::one() << n
}

/// The n-th Bernoulli number in the convention with B_1 = -1/2, so that
/// sum_{k=0}^{n} C(n+1, k) B_k = 0 for every n >= 1.
///
/// B_0 = 1, B_2 = 1/6, B_4 = -1/30, and every odd index above 1 gives zero.
/// Computed by the Akiyama-Tanigawa scheme, which produces the B_1 = +1/2
/// convention; the sign flip (-1)^n converts and is the identity in even
/// degree.
pub fn bernoulli(n: usize) -> Rational {
    let mut row: Vec<Rational> = (0..=n)
        .map(|j| Rational::new(Int::one(), Int::from(j + 1)))
        .collect();
    for j in 1..=n {
        for m in 0..=(n - j) {
            let diff = &row[m] - &row[m + 1];
            row[m] = Rational::from_integer(Int::from(m + 1)) * diff;
        }
    }
    if n % 2 == 1 {
        -row[0].clone()
    } else {
        row[0].clone()
    }
}
