use std::fmt;

use num_traits::{One, Signed, Zero};

use super::koszul_dual_variety;
use crate::error::OperadError;
use crate::scalar::Rational;
use crate::variety::{dims_sampled, dims_up_to, EngineOptions, Variety};

/// Power series truncated after `t^order`; `coeffs[n]` is the coefficient of
/// `t^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![Rational::zero(); order + 1] }
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::new((0..=order).map(|n| self.coeff(n)).collect())
    }

    pub fn sub(&self, other: &Series) -> Series {
        let order = self.order().max(other.order());
        Series::new((0..=order).map(|n| self.coeff(n) - other.coeff(n)).collect())
    }

    pub fn mul(&self, other: &Series, order: usize) -> Series {
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Series::new(out)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match n {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{n}"),
            };
            match (n, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => f.write_str(&var)?,
                _ => write!(f, "{a}*{var}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n as u64).product::<u64>().into())
}

/// Generating series `sum (-1)^n dims[n-1] t^n / n!` truncated at the length of
/// `dims`.
pub fn hilbert_series(dims: &[usize]) -> Series {
    let mut coeffs = vec![Rational::zero()];
    for (i, &d) in dims.iter().enumerate() {
        let n = i + 1;
        let c = Rational::from_integer((d as u64).into()) / factorial(n);
        coeffs.push(if n % 2 == 1 { -c } else { c });
    }
    Series::new(coeffs)
}

/// `f(g(t))` truncated after `t^order`.
pub fn compose(f: &Series, g: &Series, order: usize) -> Result<Series, OperadError> {
    if !g.coeff(0).is_zero() {
        return Err(OperadError::ConstantTerm);
    }
    let g = g.truncate(order);
    let mut out = Series::zero(order);
    let mut power = Series::new(vec![Rational::one()]);
    for k in 0..=order.min(f.order()) {
        let c = f.coeff(k);
        if !c.is_zero() {
            for n in 0..=order {
                out.coeffs[n] += &c * power.coeff(n);
            }
        }
        power = power.mul(&g, order);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KoszulMode {
    Exact,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct KoszulVerdict {
    pub order: usize,
    pub dims: Vec<usize>,
    pub dual_dims: Vec<usize>,
    pub composition: Series,
    /// First nonzero coefficient of `H(H^!(t)) - t`.
    pub deviation: Option<(usize, Rational)>,
    pub probabilistic: bool,
}

impl KoszulVerdict {
    pub fn consistent(&self) -> bool {
        self.deviation.is_none()
    }

    /// Line-oriented `key=value` form.
    pub fn to_key_values(&self) -> String {
        let list = |d: &[usize]| d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut s = format!("order={}\n", self.order);
        s += &format!("dims={}\n", list(&self.dims));
        s += &format!("dual_dims={}\n", list(&self.dual_dims));
        match &self.deviation {
            Some((n, c)) => s += &format!("deviation_order={n}\ndeviation={c}\n"),
            None => s += "deviation_order=none\ndeviation=0\n",
        }
        s += &format!("probabilistic={}\n", self.probabilistic);
        s
    }
}

impl fmt::Display for KoszulVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "H(H!(t)) = {}", self.composition)?;
        match &self.deviation {
            Some((n, c)) => writeln!(f, "not Koszul: deviation={c} at t^{n}")?,
            None => writeln!(f, "consistent with Koszul through order {}", self.order)?,
        }
        if self.probabilistic {
            writeln!(f, "dimensions above the exact range are probabilistic")?;
        }
        Ok(())
    }
}

fn dims(v: &Variety, order: usize, mode: KoszulMode, opts: &EngineOptions) -> Result<(Vec<usize>, bool), OperadError> {
    match mode {
        KoszulMode::Exact => Ok((dims_up_to(v, order, opts)?, false)),
        KoszulMode::Sampled { samples, seed } => {
            if !v.needs_generic() && order <= opts.max_exact_arity {
                return Ok((dims_up_to(v, order, opts)?, false));
            }
            let s = dims_sampled(v, order, samples, seed, opts)?;
            Ok((s.dims, s.probabilistic))
        }
    }
}

/// Composes the generating series of `v` and of its Koszul dual through
/// `t^order` and reports the first deviation from `t`.
pub fn koszulness_witness(
    v: &Variety,
    order: usize,
    mode: KoszulMode,
    opts: &EngineOptions,
) -> Result<KoszulVerdict, OperadError> {
    let dual = koszul_dual_variety(v)?;
    let (d, p1) = dims(v, order, mode, opts)?;
    let (dd, p2) = dims(&dual, order, mode, opts)?;
    let composition = compose(&hilbert_series(&d), &hilbert_series(&dd), order)?;
    let diff = composition.sub(&Series::t(order));
    let deviation = (1..=order).map(|n| (n, diff.coeff(n))).find(|(_, c)| !c.is_zero());
    Ok(KoszulVerdict { order, dims: d, dual_dims: dd, composition, deviation, probabilistic: p1 || p2 })
}
