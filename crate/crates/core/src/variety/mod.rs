//! Varieties of algebras given by multilinear identities, and the multilinear
//! components of their ideals of consequences.

pub mod catalog;
mod engine;
mod file;

use crate::error::EngineError;
use crate::scalar::{Rational, RationalFunction, Scalar};
use crate::term::{Element, Signature};

pub use engine::{
    consequences, dim_multilinear, dims_sampled, dims_up_to, equivalent, is_consequence,
    consequence_certificate, Closure, ConsequenceSpace, EngineOptions, SampledDims,
};
pub use file::{parse_variety, write_variety};

/// Value of the parameter `d` appearing in identity coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Generic,
    Value(Rational),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Variety {
    pub name: String,
    pub signature: Signature,
    pub identities: Vec<Element<RationalFunction>>,
    pub param: Param,
}

impl Variety {
    /// Drops zero identities.
    pub fn new(name: &str, signature: Signature, identities: Vec<Element<RationalFunction>>) -> Self {
        Variety {
            name: name.to_string(),
            signature,
            identities: identities.into_iter().filter(|e| !e.is_zero()).collect(),
            param: Param::Generic,
        }
    }

    pub fn from_exprs(name: &str, signature: Signature, exprs: &[&str]) -> Result<Self, EngineError> {
        let ids = exprs
            .iter()
            .map(|s| crate::term::parse_expr(s, &signature))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(name, signature, ids))
    }

    pub fn specialize(&self, q: &Rational) -> Variety {
        Variety { param: Param::Value(q.clone()), ..self.clone() }
    }

    pub fn with_identity(&self, e: Element<RationalFunction>) -> Variety {
        let mut v = self.clone();
        if !e.is_zero() {
            v.identities.push(e);
        }
        v
    }

    /// Whether some coefficient depends on `d`.
    pub fn uses_param(&self) -> bool {
        self.identities.iter().any(|e| e.terms().any(|(_, c)| !c.is_constant()))
    }

    /// Whether computations need `Q(d)` coefficients.
    pub fn needs_generic(&self) -> bool {
        self.param == Param::Generic && self.uses_param()
    }

    pub fn max_identity_arity(&self) -> usize {
        self.identities.iter().map(|e| e.arity()).max().unwrap_or(0)
    }

    /// Identities with coefficients converted for the engine.
    pub fn coefficients<F: EngineScalar>(&self) -> Result<Vec<Element<F>>, EngineError> {
        self.identities
            .iter()
            .map(|e| e.try_map_coeffs(|c| F::convert(c, &self.param)))
            .collect()
    }

    /// Reorders operations to match `target`, which must have the same
    /// operation names and symmetries.
    pub fn align_to(&self, target: &Signature) -> Result<Variety, EngineError> {
        if self.signature == *target {
            return Ok(self.clone());
        }
        let mismatch = || {
            EngineError::SignatureMismatch(format!(
                "{:?} vs {:?}",
                self.signature.ops().iter().map(|o| (&o.name, o.symmetry)).collect::<Vec<_>>(),
                target.ops().iter().map(|o| (&o.name, o.symmetry)).collect::<Vec<_>>()
            ))
        };
        if self.signature.len() != target.len() {
            return Err(mismatch());
        }
        let mut map = Vec::new();
        for op in self.signature.ops() {
            let j = target.index_of(&op.name).ok_or_else(mismatch)?;
            if target.symmetry(j) != op.symmetry {
                return Err(mismatch());
            }
            map.push(j);
        }
        let identities = self
            .identities
            .iter()
            .map(|e| {
                let mut out = Element::zero(e.arity());
                for (m, c) in e.terms() {
                    out.add_tree(&m.map_ops(|o| map[o as usize]).to_tree(), c.clone(), target);
                }
                out
            })
            .collect();
        Ok(Variety { signature: target.clone(), identities, ..self.clone() })
    }
}

/// Coefficient fields the engine can run over.
pub trait EngineScalar: Scalar {
    fn convert(c: &RationalFunction, param: &Param) -> Result<Self, EngineError>;
}

impl EngineScalar for Rational {
    fn convert(c: &RationalFunction, param: &Param) -> Result<Self, EngineError> {
        match param {
            Param::Value(q) => Ok(c.eval_at(q)?),
            Param::Generic => c.as_rational().ok_or(EngineError::NeedsGeneric),
        }
    }
}

impl EngineScalar for RationalFunction {
    fn convert(c: &RationalFunction, param: &Param) -> Result<Self, EngineError> {
        match param {
            Param::Value(q) => Ok(RationalFunction::constant(&c.eval_at(q)?)),
            Param::Generic => Ok(c.clone()),
        }
    }
}
