use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Element, Signature, Tree};
use crate::error::TermError;
use crate::scalar::{Rational, RationalFunction, Scalar};

/// A term of a parsed expression before multilinearity checks: a coefficient
/// and a tree whose leaves carry the variable numbers as written.
pub type RawTerm = (RationalFunction, Tree);

enum Value {
    Scalar(RationalFunction),
    Expr(Vec<RawTerm>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Sym(u8),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sig: &'a Signature,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, TermError> {
    let b = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Num(text[s..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'-') {
                // a '-' belongs to a name only when followed by a name character
                if b[i] == b'-' && !(i + 1 < b.len() && b[i + 1].is_ascii_alphabetic() && is_named_op_dash(text, s, i)) {
                    break;
                }
                i += 1;
            }
            out.push((s, Tok::Ident(text[s..i].to_string())));
        } else if b"+-*/^(),".contains(&c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(TermError::Parse { pos: i, msg: format!("unexpected character '{}'", c as char) });
        }
    }
    Ok(out)
}

// Operation names may contain '-' ("pre-lie"); a '-' inside an identifier is
// only accepted when the part before it is not a variable or the parameter.
fn is_named_op_dash(text: &str, start: usize, dash: usize) -> bool {
    let head = &text[start..dash];
    !(head == "d" || head == "delta" || (head.starts_with('x') && head[1..].bytes().all(|b| b.is_ascii_digit())))
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> TermError {
        let pos = self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end);
        TermError::Parse { pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), TermError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Value, TermError> {
        let mut acc = self.term()?;
        loop {
            let neg = if self.eat(b'+') {
                false
            } else if self.eat(b'-') {
                true
            } else {
                break;
            };
            let t = self.term()?;
            let t = if neg { negate(t) } else { t };
            acc = self.add(acc, t)?;
        }
        Ok(acc)
    }

    fn add(&self, a: Value, b: Value) -> Result<Value, TermError> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x.checked_add(&y)?)),
            (Value::Expr(mut x), Value::Expr(y)) => {
                x.extend(y);
                Ok(Value::Expr(x))
            }
            (Value::Scalar(s), e @ Value::Expr(_)) | (e @ Value::Expr(_), Value::Scalar(s))
                if s.is_zero() =>
            {
                Ok(e)
            }
            _ => Err(self.err("cannot add a scalar to a polynomial")),
        }
    }

    fn term(&mut self) -> Result<Value, TermError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = match (acc, f) {
                    (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.checked_mul(&y)?),
                    (Value::Scalar(s), Value::Expr(e)) | (Value::Expr(e), Value::Scalar(s)) => {
                        Value::Expr(scale_terms(e, &s)?)
                    }
                    _ => return Err(self.err("product of two polynomials needs an operation")),
                };
            } else if self.eat(b'/') {
                let f = self.factor()?;
                let Value::Scalar(y) = f else {
                    return Err(self.err("division by a polynomial"));
                };
                if y.is_zero() {
                    return Err(self.err("division by zero"));
                }
                let inv = RationalFunction::one_over(&y)?;
                acc = match acc {
                    Value::Scalar(x) => Value::Scalar(x.checked_mul(&inv)?),
                    Value::Expr(e) => Value::Expr(scale_terms(e, &inv)?),
                };
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value, TermError> {
        if self.eat(b'-') {
            return Ok(negate(self.factor()?));
        }
        if self.eat(b'+') {
            return self.factor();
        }
        let base = self.base()?;
        if self.eat(b'^') {
            let Some(Tok::Num(k)) = self.peek().cloned() else {
                return Err(self.err("expected exponent"));
            };
            self.pos += 1;
            let Value::Scalar(s) = base else {
                return Err(self.err("powers of polynomials are not supported"));
            };
            let k: u32 = (&k).try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(Value::Scalar(s.checked_pow(k)?));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Value, TermError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Value::Scalar(RationalFunction::constant(&Rational::from_integer(n))))
            }
            Some(Tok::Sym(b'(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "d" || name == "delta" {
                    return Ok(Value::Scalar(RationalFunction::param()));
                }
                if let Some(num) = name.strip_prefix('x') {
                    if !num.is_empty() && num.bytes().all(|b| b.is_ascii_digit()) {
                        let l: u32 = num.parse().map_err(|_| self.err("variable index too large"))?;
                        if l == 0 || l > 255 {
                            return Err(self.err("variable index out of range 1..255"));
                        }
                        return Ok(Value::Expr(vec![(RationalFunction::one_const(), Tree::Leaf(l))]));
                    }
                }
                if self.peek() != Some(&Tok::Sym(b'(')) {
                    return Err(self.err(format!("unknown identifier '{name}'")));
                }
                let Some(op) = self.sig.index_of(&name) else {
                    return Err(TermError::UnknownOp(name));
                };
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                let (Value::Expr(a), Value::Expr(b)) = (a, b) else {
                    return Err(self.err("operation arguments must be polynomials"));
                };
                let mut out = Vec::with_capacity(a.len() * b.len());
                for (ca, ta) in &a {
                    for (cb, tb) in &b {
                        out.push((ca.checked_mul(cb)?, Tree::node(op, ta.clone(), tb.clone())));
                    }
                }
                Ok(Value::Expr(out))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

impl RationalFunction {
    fn one_const() -> Self {
        num_traits::One::one()
    }

    fn one_over(y: &Self) -> Result<Self, crate::error::ScalarError> {
        Self::one_const().checked_div(y)
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(s.neg_ref()),
        Value::Expr(e) => Value::Expr(e.into_iter().map(|(c, t)| (c.neg_ref(), t)).collect()),
    }
}

fn scale_terms(e: Vec<RawTerm>, s: &RationalFunction) -> Result<Vec<RawTerm>, TermError> {
    e.into_iter().map(|(c, t)| Ok((c.checked_mul(s)?, t))).collect()
}

/// Parses an expression into raw terms without multilinearity checks.
pub fn parse_raw(text: &str, sig: &Signature) -> Result<Vec<RawTerm>, TermError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(TermError::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), sig };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected token"));
    }
    match v {
        Value::Expr(e) => Ok(e),
        Value::Scalar(s) if s.is_zero() => Ok(Vec::new()),
        Value::Scalar(_) => Err(TermError::Parse { pos: 0, msg: "expression has no variables".into() }),
    }
}

/// Parses a multilinear expression. Variables are renumbered to `1..=n` in
/// increasing order; every term must use each variable exactly once.
pub fn parse_expr(text: &str, sig: &Signature) -> Result<Element<RationalFunction>, TermError> {
    let raw = parse_raw(text, sig)?;
    if raw.is_empty() {
        return Ok(Element::zero(0));
    }
    let mut labels: Option<Vec<u32>> = None;
    for (_, t) in &raw {
        let mut l = t.leaves();
        l.sort_unstable();
        if l.windows(2).any(|w| w[0] == w[1]) {
            return Err(TermError::NonMultilinear(t.to_text(sig)));
        }
        match &labels {
            None => labels = Some(l),
            Some(prev) if *prev != l => {
                return Err(TermError::NonMultilinear(format!(
                    "{} uses different variables than other terms",
                    t.to_text(sig)
                )))
            }
            _ => {}
        }
    }
    let labels = labels.unwrap();
    let rank = |l: u32| labels.binary_search(&l).unwrap() as u32 + 1;
    let mut out = Element::zero(labels.len());
    for (c, t) in raw {
        out.add_tree(&t.relabel(&rank), c, sig);
    }
    Ok(out)
}

/// Splits raw terms into homogeneous components and fully linearizes each:
/// a variable of degree `k` is replaced by `k` fresh variables, summing over
/// all `k!` ways to assign them. Zero components are dropped.
pub fn multilinearize(raw: &[RawTerm], sig: &Signature) -> Vec<Element<RationalFunction>> {
    let mut groups: BTreeMap<Vec<(u32, usize)>, Vec<&RawTerm>> = BTreeMap::new();
    for term in raw {
        let mut deg: BTreeMap<u32, usize> = BTreeMap::new();
        for l in term.1.leaves() {
            *deg.entry(l).or_default() += 1;
        }
        groups.entry(deg.into_iter().collect()).or_default().push(term);
    }
    let mut out = Vec::new();
    for (degs, terms) in groups {
        let n: usize = degs.iter().map(|d| d.1).sum();
        let mut offset = BTreeMap::new();
        let mut next = 1u32;
        for &(v, k) in &degs {
            offset.insert(v, next);
            next += k as u32;
        }
        let mut elem = Element::zero(n);
        for (c, t) in terms {
            let leaves = t.leaves();
            // per variable, all orderings of its fresh labels
            let blocks: Vec<Vec<Vec<u32>>> = degs
                .iter()
                .map(|&(v, k)| {
                    let base = offset[&v];
                    super::Permutation::all(k)
                        .into_iter()
                        .map(|p| p.images().iter().map(|&i| base + i as u32 - 1).collect())
                        .collect()
                })
                .collect();
            let mut choice = vec![0usize; blocks.len()];
            loop {
                let mut used = vec![0usize; blocks.len()];
                let mut assigned = Vec::with_capacity(leaves.len());
                for &l in &leaves {
                    let b = degs.binary_search_by_key(&l, |d| d.0).unwrap();
                    assigned.push(blocks[b][choice[b]][used[b]]);
                    used[b] += 1;
                }
                let mut it = assigned.into_iter();
                let relabeled = relabel_in_order(t, &mut it);
                elem.add_tree(&relabeled, c.clone(), sig);
                let mut k = 0;
                while k < choice.len() {
                    choice[k] += 1;
                    if choice[k] < blocks[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
        }
        if !elem.is_zero() {
            out.push(elem);
        }
    }
    out
}

fn relabel_in_order(t: &Tree, labels: &mut impl Iterator<Item = u32>) -> Tree {
    match t {
        Tree::Leaf(_) => Tree::Leaf(labels.next().unwrap()),
        Tree::Node(op, a, b) => {
            let a = relabel_in_order(a, labels);
            let b = relabel_in_order(b, labels);
            Tree::node(*op, a, b)
        }
    }
}
