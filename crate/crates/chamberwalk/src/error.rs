use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("basis mismatch: {0}")]
    Basis(&'static str),
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    #[error("pole of the c-function at t = ({0}, {1})")]
    Pole(String, String),
    #[error("near-singular evaluation point (|d(t)| = {0:.3e}); perturb t and retry")]
    Singular(f64),
    #[error("series diverges: {0}")]
    Divergent(String),
    #[error("element is not W0-symmetric")]
    NotSymmetric,
    #[error("inexact division: {0}")]
    Division(&'static str),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
