//! Error type shared by every module of the crate.

/// Errors reported by constructors and ring operations.
///
/// Every failure mode is an explicit variant; nothing in the crate panics on
/// bad user input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The theory is defined for genus at least 2.
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(usize),

    /// Bitmask-backed types hold one machine word; see the module docs for
    /// the per-type bound.
    #[error("genus {genus} exceeds the supported maximum {max} for this operation")]
    GenusTooLarge { genus: usize, max: usize },

    /// Two operands were built for different curves.
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),

    /// Enumerating all 2^(2g) torsion labels would exceed the configured cap.
    #[error("enumerating 2^{exponent} labels exceeds the cap of 2^{cap_exponent}")]
    EnumerationCap {
        exponent: usize,
        cap_exponent: usize,
    },

    /// Exhaustive verification is only feasible for small genus.
    #[error("exhaustive verification supports genus <= {max}, got {genus}; use seeded sampling")]
    ExhaustiveCap { genus: usize, max: usize },

    /// Polynomial division left a nonzero remainder.
    #[error("polynomial division is not exact")]
    InexactDivision,

    /// Division by the zero polynomial.
    #[error("division by the zero polynomial")]
    ZeroPolynomialDivisor,

    /// A label bitstring had the wrong length for the requested genus.
    #[error("label has {got} characters but genus {genus} requires {want}")]
    LabelLength {
        genus: usize,
        want: usize,
        got: usize,
    },

    /// A label bitstring contained a character other than '0' or '1'.
    #[error("invalid character {0:?} in label bitstring")]
    LabelChar(char),

    /// A label value does not fit in 2g bits.
    #[error("label value out of range for genus {0}")]
    LabelRange(usize),

    /// An exterior monomial used a generator index outside 1..=g-1.
    #[error("generator index {index} out of range 1..={max}")]
    GeneratorIndex { index: usize, max: usize },

    /// An exterior monomial mask referenced generators beyond 2(g-1).
    #[error("monomial mask out of range for genus {0}")]
    MonomialRange(usize),

    /// Eigenvalue angles must lie in [0, 1).
    #[error("eigenvalue angle must lie in [0,1)")]
    AngleRange,

    /// Eigenvalue multiplicities must be positive.
    #[error("eigenvalue multiplicity must be positive")]
    ZeroMultiplicity,

    /// Twisted-sector content is indexed by nonzero labels only.
    #[error("the zero label indexes the untwisted sector; use the kappa part")]
    ZeroLabelSector,

    /// Twisted-sector classes live in even exterior degree.
    #[error("twisted-sector classes must have even degree, got degree {0}")]
    OddSectorTerm(usize),

    /// The three labels of a triple must sum to zero in the group.
    #[error("labels do not satisfy L3 = L1 + L2")]
    TripleNotClosed,

    /// The fixed loci of the given labels do not meet.
    #[error("the fixed loci have empty common intersection")]
    EmptyIntersection,
}

pub type Result<T> = std::result::Result<T, Error>;
