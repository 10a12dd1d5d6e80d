//! Example algebras.

use super::{load_algebra, Algebra};
use crate::error::AlgebraError;
use crate::scalar::{parse_rational, Rational};

const A1: &str = "dim 3
param delta = -1
dot e1 e1 = e2
bracket e1 e2 = e3
bracket e1 e3 = e1
bracket e2 e3 = -e2";

const A2: &str = "dim 3
param delta = -1
dot e1 e1 = e3
dot e1 e3 = -e2
bracket e1 e2 = e3
bracket e1 e3 = e1
bracket e2 e3 = -e2";

const TP_THIRD: &str = "dim 5
param delta = 1/3
dot e1 e1 = e2
dot e1 e3 = e4
dot e1 e2 = e3
dot e1 e4 = e5
dot e2 e2 = e4
dot e2 e3 = e5
bracket e1 e2 = 1/3 e3
bracket e1 e3 = e4
bracket e1 e4 = 2 e5
bracket e2 e3 = e5";

const TP_HALF: &str = "dim 3
param delta = 1/2
dot e1 e1 = e1
dot e1 e2 = e2
dot e1 e3 = e3
bracket e1 e3 = e2";

const TP_ONE: &str = "dim 5
param delta = 1
dot e1 e1 = e3
dot e1 e2 = e5
dot e1 e3 = e4
bracket e2 e1 = -e1
bracket e2 e3 = -e3
bracket e2 e4 = -e4
bracket e2 e5 = -e5";

const IDEMPOTENT: &str = "dim 1
dot e1 e1 = e1";

const ZERO_POISSON_B1: &str = "dim 4
mul e1 e1 = e4
mul e2 e3 = e4
mul e3 e2 = e4
mul e1 e2 = e2
mul e2 e1 = -e2
mul e1 e3 = e1
mul e3 e1 = -e1";

const ZERO_POISSON_B2: &str = "dim 3
mul e1 e1 = e3
mul e2 e2 = e3
mul e3 e3 = e3
mul e1 e2 = e3
mul e2 e1 = -e3";

const SC_B1: &str = "dim 3
mul e1 e1 = e1
mul e2 e2 = e2
mul e1 e3 = 1/3 e3
mul e3 e1 = 2/3 e3";

const SC_B2: &str = "dim 3
mul e1 e1 = e1
mul e2 e2 = e2
mul e1 e3 = 2/3 e3
mul e3 e1 = 1/3 e3";

const LEFT_UNIT_B1: &str = "dim 3
mul e1 e3 = e1";

const LEFT_UNIT_B2: &str = "dim 3
mul e1 e1 = e1
mul e1 e3 = e2";

const TD1_B3: &str = "dim 5
mul e3 e3 = e4
mul e1 e2 = e4 + e5
mul e2 e1 = e5 - e4
mul e1 e3 = -e1
mul e3 e1 = e1
mul e2 e3 = e2
mul e3 e2 = -e2
mul e4 e3 = 2 e5";

const TSC_B2: &str = "dim 2
mul e1 e1 = e1
mul e1 e2 = -2 e2
mul e2 e1 = e2";

const DEPOL_B1: &str = "dim 2
mul e1 e1 = e2
mul e1 e2 = e2";

const DEPOL_B2: &str = "dim 2
mul e1 e1 = e2
mul e2 e2 = e1";

const DELTA_MIXED_B1: &str = "dim 5
mul e3 e3 = e4
mul e1 e2 = e4 + e5
mul e2 e1 = e5 - e4
mul e1 e3 = -e1
mul e3 e1 = e1
mul e2 e3 = e2
mul e3 e2 = -e2
mul e3 e4 = e5
mul e4 e3 = e5";

const DELTA_MIXED_B2: &str = "dim 2
mul e1 e1 = e1
mul e1 e2 = e2";

const SHIFT_SAMPLE: &str = "dim 4
mul e1 e1 = e1
mul e2 e3 = e4
mul e3 e2 = -e4";

const ZERO: &str = "dim 2";

const TABLES: &[(&str, &str)] = &[
    ("A1", A1),
    ("A2", A2),
    ("tp-third", TP_THIRD),
    ("tp-half", TP_HALF),
    ("tp-one", TP_ONE),
    ("idempotent", IDEMPOTENT),
    ("zero-poisson-B1", ZERO_POISSON_B1),
    ("zero-poisson-B2", ZERO_POISSON_B2),
    ("sc-B1", SC_B1),
    ("sc-B2", SC_B2),
    ("delta-trans-B1", LEFT_UNIT_B1),
    ("delta-trans-B2", LEFT_UNIT_B2),
    ("td1-B1", LEFT_UNIT_B1),
    ("td1-B2", LEFT_UNIT_B2),
    ("td1-B3", TD1_B3),
    ("tsc-B1", LEFT_UNIT_B2),
    ("tsc-B2", TSC_B2),
    ("depol-B1", DEPOL_B1),
    ("depol-B2", DEPOL_B2),
    ("delta-mixed-B1", DELTA_MIXED_B1),
    ("delta-mixed-B2", DELTA_MIXED_B2),
    ("shift-assoc-sample", SHIFT_SAMPLE),
    ("zero-algebra", ZERO),
];

/// The five-dimensional family `P^β`: `δ₁ = 1/(3β)`-Poisson and transposed
/// `β`-Poisson.
pub fn p_beta(beta: &Rational) -> Result<Algebra, AlgebraError> {
    if num_traits::Zero::is_zero(beta) {
        return Err(AlgebraError::Inconsistent("P-beta needs beta != 0".into()));
    }
    let text = format!(
        "dim 5\nparam beta = {beta}\ndot e1 e1 = e3\ndot e1 e2 = e5\ndot e1 e3 = e4\n\
         bracket e1 e2 = {} e3\nbracket e1 e5 = e4\nbracket e2 e3 = -2 e4\n",
        Rational::from_integer(3.into()) * beta
    );
    let mut a = load_algebra(&text)?;
    a.name = format!("P-beta:{beta}");
    Ok(a)
}

pub fn algebra_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = TABLES.iter().map(|(n, _)| *n).collect();
    v.insert(2, "P-beta");
    v
}

/// Catalog entry by name; `P-beta` takes an optional `:<beta>` suffix
/// (default 1).
pub fn algebra(name: &str) -> Option<Algebra> {
    if let Some(rest) = name.strip_prefix("P-beta") {
        let beta = match rest.strip_prefix(':') {
            Some(b) => parse_rational(b)?,
            None if rest.is_empty() => Rational::from_integer(1.into()),
            None => return None,
        };
        return p_beta(&beta).ok();
    }
    let (_, text) = TABLES.iter().find(|(n, _)| *n == name)?;
    let mut a = load_algebra(text).expect("catalog tables parse");
    a.name = name.to_string();
    Some(a)
}
