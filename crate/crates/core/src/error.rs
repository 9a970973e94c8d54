use thiserror::Error;

use crate::field::FieldDescriptor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which defining condition of a Cartan subalgebra a candidate failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartanFailure {
    NotSubalgebra,
    NotNilpotent,
    NotSelfIdealising,
}

impl std::fmt::Display for CartanFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CartanFailure::NotSubalgebra => "not a subalgebra",
            CartanFailure::NotNilpotent => "not nilpotent",
            CartanFailure::NotSelfIdealising => "idealiser is strictly larger",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(FieldDescriptor, FieldDescriptor),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("invalid scalar literal `{0}`")]
    ParseScalar(String),
    #[error("invalid field descriptor `{0}` (expected `Q` or `gfp:<p>`)")]
    ParseField(String),
    #[error("invalid vector literal `{0}`")]
    ParseVector(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the given total space")]
    NotContained,
    #[error("Jacobi identity fails for basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("bracket index pair ({0}, {1}) is invalid for dimension {2}")]
    BracketIndex(usize, usize, usize),
    #[error("subspace is not an ideal")]
    NotIdeal,
    #[error("span is not a subalgebra: [{left}, {right}] = {bracket} lies outside it")]
    NotSubalgebra {
        left: String,
        right: String,
        bracket: String,
    },
    #[error("enumeration budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("operation requires a prime field, got {0}")]
    RequiresPrimeField(FieldDescriptor),
    #[error("cannot certify minimality of a {0}-dimensional factor over the rationals")]
    UncertifiedMinimality(usize),
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("subalgebra is not CAP on the given chief series")]
    NotCap,
    #[error("candidate is not a Cartan subalgebra: {0}")]
    NotCartan(CartanFailure),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("maximal subalgebra list is incomplete or invalid: {0}")]
    IncompleteMaximals(String),
    #[error("unknown builtin algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("algebra `{name}` is not available over {field}")]
    InvalidFieldForAlgebra { name: String, field: FieldDescriptor },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("declared metadata `{flag}` is {declared} but computed {computed}")]
    MetadataMismatch {
        flag: String,
        declared: String,
        computed: String,
    },
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
}
