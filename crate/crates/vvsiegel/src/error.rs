//! Error type shared by all modules.

/// Everything that can go wrong on the exact side of the toolkit.
///
/// Numeric routines report truncation through their result structs instead;
/// an `Error` from those means the *input* was outside the supported domain.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not even: diagonal entry {0} is odd")]
    NotEven(i64),
    #[error("gram matrix is degenerate (determinant 0)")]
    Degenerate,
    #[error("matrix is not square: {rows}x{cols}", rows = .0, cols = .1)]
    NotSquare(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not in Sp_2g(Z)")]
    NotSymplectic,
    #[error("matrix is not in GL_g(Z) (determinant {0})")]
    NotUnimodular(i64),
    #[error("matrix is not integral")]
    NotIntegral,
    #[error("element is not in the Klingen parabolic P_{{g,{r}}}")]
    NotInParabolic { r: usize },
    #[error("pair (C|D) is not a coprime symmetric pair")]
    NotCoprimePair,
    #[error("not a valid discriminant-group element: {0}")]
    BadDiscElement(String),
    #[error("vector is not in the dual lattice")]
    NotInDual,
    #[error("sublattice is not contained in the overlattice with finite index")]
    BadSublattice,
    #[error("milgram invariant violated: the gauss sum is not the positive square root of |D| for signature {sig} mod 8")]
    MilgramViolation { sig: i64 },
    #[error("{arg} is not a multiple of 1/{m}: not representable in Q(zeta_{m})")]
    NotInCyclotomicField { arg: String, m: i64 },
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(i64, i64),
    #[error("weight {0} is incompatible with the lattice parity (need 2k = sig mod 2 resp. mod 4 checks)")]
    BadWeight(String),
    #[error("index matrix T is not in the shift class of alpha (T - q(alpha) must be half-integral with integral diagonal)")]
    ShiftMismatch,
    #[error("index matrix T is not positive semidefinite")]
    NotPsd,
    #[error("genus mismatch: expected {expected}, got {got}")]
    GenusMismatch { expected: usize, got: usize },
    #[error("branch sign undecidable: exact subdivision exceeded depth {0} (this signals a bug, not a tolerance)")]
    BranchUndecided(usize),
    #[error("symplectic reduction did not terminate within {0} steps")]
    ReductionStuck(usize),
    #[error("decompose supports genus <= 3, got {0}")]
    GenusTooLarge(usize),
    #[error("numeric genus-2 evaluation needs integral weight, got {0}")]
    NonIntegralWeight(String),
    #[error("arithmetic overflow in integer matrix operation")]
    Overflow,
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable kind tag, used in the CLI error envelope.
    pub fn kind(&self) -> &'static str {
        use Error::*;
        match self {
            NotSymmetric => "not_symmetric",
            NotEven(_) => "not_even",
            Degenerate => "degenerate",
            NotSquare(..) => "not_square",
            DimensionMismatch { .. } => "dimension_mismatch",
            NotSymplectic => "not_symplectic",
            NotUnimodular(_) => "not_unimodular",
            NotIntegral => "not_integral",
            NotInParabolic { .. } => "not_in_parabolic",
            NotCoprimePair => "not_coprime_pair",
            BadDiscElement(_) => "bad_disc_element",
            NotInDual => "not_in_dual",
            BadSublattice => "bad_sublattice",
            MilgramViolation { .. } => "milgram_violation",
            NotInCyclotomicField { .. } => "not_in_cyclotomic_field",
            ConductorMismatch(..) => "conductor_mismatch",
            BadWeight(_) => "bad_weight",
            ShiftMismatch => "shift_mismatch",
            NotPsd => "not_psd",
            GenusMismatch { .. } => "genus_mismatch",
            BranchUndecided(_) => "branch_undecided",
            ReductionStuck(_) => "reduction_stuck",
            GenusTooLarge(_) => "genus_too_large",
            NonIntegralWeight(_) => "non_integral_weight",
            Overflow => "overflow",
            BadInput(_) => "bad_input",
            Io(_) => "io",
            Json(_) => "json",
        }
    }
}
