use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("r = {0} is not a prime >= 5")]
    InvalidPrime(u64),
    #[error("r = {r} is outside the supported range {min}..={max}")]
    PrimeOutOfRange { r: u64, min: u64, max: u64 },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("indices ({0}, {1}, {2}) are not pairwise distinct")]
    IndicesNotDistinct(usize, usize, usize),
    #[error("d = {0} is not a positive squarefree integer different from 1")]
    InvalidDiscriminant(u64),
    #[error("r = {r} divides d = {d}")]
    NotCoprime { d: u64, r: u64 },
    #[error("polynomial is not squarefree over F2")]
    NotSquarefree,
    #[error("modulus of degree {0} is not irreducible over F2")]
    ReducibleModulus(usize),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("Galois ring precision 2^{0} is below 2^3")]
    PrecisionTooLow(u32),
    #[error("2 is not inert in the real cyclotomic field for r = {0}")]
    TwoNotInert(u64),
    #[error("inexact division: determinant is not divisible by r^{exponent} for r = {r}")]
    InexactDivision { r: u64, exponent: u64 },
    #[error("gcd(x, y) = {0} is not 1")]
    NotCoprimePair(String),
    #[error("x and y are both zero")]
    ZeroPair,
    #[error("degenerate curve: ABC = 0")]
    DegenerateCurve,
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("unsupported prime: {0}")]
    UnsupportedPrime(String),
    #[error("valuation precondition failed: {0}")]
    ValuationPrecondition(String),
    #[error("unfactored cofactor {cofactor} remains after trial division up to {bound}")]
    UnfactoredCofactor { cofactor: String, bound: u64 },
    #[error("tau must differ from 0, 1 and -1")]
    DegenerateTau,
    #[error("norm criterion does not apply: {0}")]
    NotApplicable(String),
    #[error("brute-force and closed-form residue verdicts disagree for d = {d}, target = {target}")]
    ResidueDisagreement { d: u64, target: i64 },
    #[error("parity table, line {line}: {message}")]
    TableParse { line: usize, message: String },
    #[error("duplicate parity table entry for d = {d}, r = {r}")]
    DuplicateTableEntry { d: u64, r: u64 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
