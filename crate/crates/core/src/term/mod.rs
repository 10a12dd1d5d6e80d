//! Multilinear nonassociative polynomials over a finite signature of binary
//! operations.

mod element;
mod monomial;
mod parse;
mod perm;
mod polarize;

use std::fmt;

use crate::error::TermError;

pub use element::{multiply_by_var, substitute, Element, Side};
pub use monomial::{enumerate_monomials, monomial_count, normalize_tree, Monomial, Tree};
pub use parse::{multilinearize, parse_expr, parse_raw, RawTerm};
pub use perm::{act, Permutation};
pub use polarize::{depolarize_expr, polarize_expr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    None,
}

impl Symmetry {
    /// Symmetric and antisymmetric trade places; no symmetry stays.
    pub fn flipped(self) -> Symmetry {
        match self {
            Symmetry::Symmetric => Symmetry::Antisymmetric,
            Symmetry::Antisymmetric => Symmetry::Symmetric,
            Symmetry::None => Symmetry::None,
        }
    }

    pub fn parse(s: &str) -> Option<Symmetry> {
        match s {
            "symmetric" | "sym" | "commutative" => Some(Symmetry::Symmetric),
            "antisymmetric" | "antisym" | "skew" | "anticommutative" => {
                Some(Symmetry::Antisymmetric)
            }
            "none" | "plain" => Some(Symmetry::None),
            _ => None,
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Antisymmetric => "antisymmetric",
            Symmetry::None => "none",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpSymbol {
    pub name: String,
    pub symmetry: Symmetry,
}

impl OpSymbol {
    pub fn new(name: &str, symmetry: Symmetry) -> Self {
        OpSymbol { name: name.to_string(), symmetry }
    }
}

/// Ordered list of binary operations; monomials refer to operations by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<OpSymbol>,
}

fn is_reserved(name: &str) -> bool {
    name == "d"
        || name == "delta"
        || (name.len() > 1 && name.starts_with('x') && name[1..].bytes().all(|b| b.is_ascii_digit()))
}

impl Signature {
    pub fn new(ops: Vec<OpSymbol>) -> Result<Self, TermError> {
        if ops.len() > 255 {
            return Err(TermError::Signature("too many operations".into()));
        }
        for (i, op) in ops.iter().enumerate() {
            let valid = op.name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && op.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
            if !valid || is_reserved(&op.name) {
                return Err(TermError::Signature(format!("invalid operation name '{}'", op.name)));
            }
            if ops[..i].iter().any(|o| o.name == op.name) {
                return Err(TermError::Signature(format!("duplicate operation '{}'", op.name)));
            }
        }
        Ok(Signature { ops })
    }

    /// `dot` symmetric and `bracket` antisymmetric.
    pub fn poisson() -> Self {
        Signature {
            ops: vec![
                OpSymbol::new("dot", Symmetry::Symmetric),
                OpSymbol::new("bracket", Symmetry::Antisymmetric),
            ],
        }
    }

    /// A single operation `mul` without symmetry.
    pub fn magma() -> Self {
        Signature { ops: vec![OpSymbol::new("mul", Symmetry::None)] }
    }

    pub fn ops(&self) -> &[OpSymbol] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.ops.iter().position(|o| o.name == name).map(|i| i as u8)
    }

    pub fn symmetry(&self, op: u8) -> Symmetry {
        self.ops[op as usize].symmetry
    }

    pub fn name(&self, op: u8) -> &str {
        &self.ops[op as usize].name
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reserved_and_duplicate_names() {
        assert!(Signature::new(vec![OpSymbol::new("d", Symmetry::None)]).is_err());
        assert!(Signature::new(vec![OpSymbol::new("x3", Symmetry::None)]).is_err());
        assert!(Signature::new(vec![
            OpSymbol::new("m", Symmetry::None),
            OpSymbol::new("m", Symmetry::Symmetric)
        ])
        .is_err());
        assert!(Signature::new(vec![OpSymbol::new("star", Symmetry::None)]).is_ok());
    }

    #[test]
    fn flip_is_involutive() {
        for s in [Symmetry::Symmetric, Symmetry::Antisymmetric, Symmetry::None] {
            assert_eq!(s.flipped().flipped(), s);
        }
    }
}
