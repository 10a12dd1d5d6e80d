use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Poly, Rational, Scalar};
use crate::error::ScalarError;

pub const DEFAULT_DEGREE_BOUND: usize = 64;

static DEGREE_BOUND: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_BOUND);

/// Largest numerator or denominator degree allowed after reduction.
pub fn degree_bound() -> usize {
    DEGREE_BOUND.load(Ordering::Relaxed)
}

pub fn set_degree_bound(bound: usize) {
    DEGREE_BOUND.store(bound, Ordering::Relaxed);
}

/// Element of `Q(d)` in lowest terms: `gcd(num, den) = 1` over `Q[d]`, the
/// integer contents of `num` and `den` are coprime, and `den` has a positive
/// leading coefficient. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Self::normalize(num, den, true)
    }

    /// The parameter `d` itself.
    pub fn param() -> Self {
        RationalFunction { num: Poly::var(), den: Poly::one() }
    }

    pub fn constant(q: &Rational) -> Self {
        let num = Poly::constant(q.numer().clone());
        let den = Poly::constant(q.denom().clone());
        if q.is_zero() {
            return Self::zero();
        }
        RationalFunction { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, if `d` does not occur.
    pub fn as_rational(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.coeffs().first().cloned().unwrap_or_default();
        Some(Rational::new(n, self.den.coeffs()[0].clone()))
    }

    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    pub fn eval_at(&self, x: &Rational) -> Result<Rational, ScalarError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ScalarError::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    fn normalize(num: Poly, den: Poly, reduce: bool) -> Result<Self, ScalarError> {
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (mut num, mut den) = if reduce && !num.is_constant() && !den.is_constant() {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        } else {
            (num, den)
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        let degree = num.degree().max(den.degree());
        let bound = degree_bound();
        if degree > bound {
            return Err(ScalarError::DegreeOverflow { degree, bound });
        }
        Ok(RationalFunction { num, den })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            let reduce = !self.den.is_constant();
            return Self::normalize(self.num.add(&other.num), self.den.clone(), reduce);
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::normalize(num, den, true)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let (an, bd) = cancel(&self.num, &other.den);
        let (bn, ad) = cancel(&other.num, &self.den);
        Self::normalize(an.mul(&bn), ad.mul(&bd), false)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let inv = RationalFunction { num: other.den.clone(), den: other.num.clone() };
        self.checked_mul(&inv)
    }

    pub fn checked_pow(&self, k: u32) -> Result<Self, ScalarError> {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }
}

/// Removes the common factor of `a` and `b`.
fn cancel(a: &Poly, b: &Poly) -> (Poly, Poly) {
    if a.is_constant() || b.is_constant() {
        return (a.clone(), b.clone());
    }
    let g = a.gcd(b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.div_exact(&g), b.div_exact(&g))
    }
}

fn unwrap_arith(r: Result<RationalFunction, ScalarError>) -> RationalFunction {
    match r {
        Ok(v) => v,
        Err(e) => panic!("rational function arithmetic failed: {e}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field operation; reports division by zero and degree overflow.
pub fn field_arith(
    a: &RationalFunction,
    b: &RationalFunction,
    op: FieldOp,
) -> Result<RationalFunction, ScalarError> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
        FieldOp::Div => a.checked_div(b),
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction { num: Poly::one(), den: Poly::one() }
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den }
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: Self) -> Self {
                unwrap_arith(self.$checked(&rhs))
            }
        }

        impl<'a> $tr<&'a RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: Self) -> RationalFunction {
                unwrap_arith(self.$checked(rhs))
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Scalar for RationalFunction {
    fn from_rational(q: &Rational) -> Self {
        RationalFunction::constant(q)
    }

    fn weight(&self) -> usize {
        (self.num.degree() + self.den.degree()) * 4096 + (self.num.bits() + self.den.bits()) as usize
    }

    fn is_negative_form(&self) -> bool {
        self.num.leading().is_some_and(|c| c.is_negative())
    }

    fn add_ref(&self, other: &Self) -> Self {
        unwrap_arith(self.checked_add(other))
    }

    fn sub_ref(&self, other: &Self) -> Self {
        unwrap_arith(self.checked_sub(other))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        unwrap_arith(self.checked_mul(other))
    }

    fn div_ref(&self, other: &Self) -> Self {
        unwrap_arith(self.checked_div(other))
    }

    fn neg_ref(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})/", self.num)?;
        } else {
            write!(f, "{}/", self.num)?;
        }
        let bare = self.den.is_constant()
            || (self.den.term_count() == 1 && self.den.leading().unwrap().is_one());
        if bare {
            write!(f, "{}", self.den)
        } else {
            write!(f, "({})", self.den)
        }
    }
}

/// Parses an arithmetic expression in integers and `d`, such as
/// `(3*d^2-1)/(d-1)`.
pub fn parse_rational_function(text: &str) -> Result<RationalFunction, ScalarError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction, ScalarError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc.checked_add(&t)? } else { acc.checked_sub(&t)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, ScalarError> {
        let mut acc = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let t = self.factor()?;
            acc = if c == b'*' {
                acc.checked_mul(&t)?
            } else {
                if t.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc.checked_div(&t)?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RationalFunction, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg_ref())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.base()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let k = self.integer()?;
                    let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
                    return base.checked_pow(k);
                }
                Ok(base)
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn base(&mut self) -> Result<RationalFunction, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'd') => {
                self.pos += 1;
                Ok(RationalFunction::param())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFunction::constant(&Rational::from_integer(n)))
            }
            _ => Err(self.err("expected number, 'd' or '('")),
        }
    }
}
