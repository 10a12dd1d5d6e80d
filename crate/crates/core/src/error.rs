use thiserror::Error;

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function degree {degree} exceeds bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("parameter value {0} is a pole")]
    Pole(Rational),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TermError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("non-multilinear term: {0}")]
    NonMultilinear(String),
    #[error("unknown operation '{0}'")]
    UnknownOp(String),
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("arity {arity} exceeds the limit {limit} for {mode} mode (set VARIETY_FORGE_MAX_ARITY to override)")]
    ArityTooLarge { arity: usize, limit: usize, mode: &'static str },
    #[error("signatures differ: {0}")]
    SignatureMismatch(String),
    #[error("generic parameter requires rational-function coefficients")]
    NeedsGeneric,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("inconsistent product table: {0}")]
    Inconsistent(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parameter 'delta' is not bound")]
    UnboundParameter,
    #[error("unknown operation '{0}'")]
    UnknownOp(String),
    #[error("signatures differ: {0}")]
    SignatureMismatch(String),
    #[error("identity is not multilinear: {0}")]
    NonMultilinear(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperadError {
    #[error("presentation is not quadratic: relation of arity {0}")]
    NotQuadratic(usize),
    #[error("series composition needs a zero constant term")]
    ConstantTerm,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// Errors from reading variety files.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Term { line: usize, source: TermError },
}
