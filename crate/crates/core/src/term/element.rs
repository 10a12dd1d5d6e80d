use std::collections::BTreeMap;

use super::{normalize_tree, Monomial, Signature, Tree};
use crate::error::TermError;
use crate::scalar::Scalar;

/// Linear combination of canonical monomials of a fixed arity, with zero
/// coefficients removed.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<F> {
    arity: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> Element<F> {
    pub fn zero(arity: usize) -> Self {
        Element { arity, terms: BTreeMap::new() }
    }

    pub fn from_monomial(m: Monomial, c: F) -> Self {
        let mut e = Self::zero(m.arity());
        e.add_term(m, c);
        e
    }

    /// Canonicalizes `tree` (labels `1..=arity`) and adds `c` times it.
    pub fn add_tree(&mut self, tree: &Tree, c: F, sig: &Signature) {
        if let Some((neg, m)) = normalize_tree(tree, sig) {
            self.add_term(m, if neg { -c } else { c });
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&F> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        debug_assert_eq!(m.arity(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Element<F>) -> Element<F> {
        assert_eq!(self.arity, other.arity, "adding elements of different arity");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element<F>) -> Element<F> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element<F> {
        Element {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Element<F> {
        if s.is_zero() {
            return Self::zero(self.arity);
        }
        Element {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(s))).collect(),
        }
    }

    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Element<G> {
        let mut out = Element::zero(self.arity);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs<G: Scalar, E>(
        &self,
        f: impl Fn(&F) -> Result<G, E>,
    ) -> Result<Element<G>, E> {
        let mut out = Element::zero(self.arity);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Canonical text form, reparseable by [`parse_expr`](super::parse_expr).
    pub fn to_text(&self, sig: &Signature) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_form();
            let abs = if neg { c.neg_ref() } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                let s = abs.to_string();
                if needs_parens(&s) {
                    out.push('(');
                    out.push_str(&s);
                    out.push(')');
                } else {
                    out.push_str(&s);
                }
                out.push('*');
            }
            out.push_str(&m.to_text(sig));
        }
        out
    }
}

fn needs_parens(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, b) in s.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

/// Replaces `x_i` by the tree `g` in every term of `e`, then renumbers the
/// variables to `1..=n'` preserving their order. The labels of `g` other than
/// `i` must not occur in `e`.
pub fn substitute<F: Scalar>(
    e: &Element<F>,
    i: u32,
    g: &Tree,
    sig: &Signature,
) -> Result<Element<F>, TermError> {
    let mut labels: Vec<u32> = (1..=e.arity() as u32).filter(|&l| l != i).collect();
    let gl = g.leaves();
    for &l in &gl {
        if l != i && labels.contains(&l) {
            return Err(TermError::NonMultilinear(format!("label x{l} occurs twice")));
        }
    }
    labels.extend(gl.iter().copied());
    labels.sort_unstable();
    labels.dedup();
    if labels.len() != e.arity() - 1 + gl.len() {
        return Err(TermError::NonMultilinear("substituted tree repeats a variable".into()));
    }
    let rank = |l: u32| labels.binary_search(&l).unwrap() as u32 + 1;
    let mut out = Element::zero(labels.len());
    for (m, c) in e.terms() {
        let t = m.to_tree().replace_leaf(i, g).relabel(&rank);
        out.add_tree(&t, c.clone(), sig);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `op(e, x_{n+1})` for `Side::Right`, `op(x_{n+1}, e)` for `Side::Left`.
pub fn multiply_by_var<F: Scalar>(e: &Element<F>, op: u8, side: Side, sig: &Signature) -> Element<F> {
    let n = e.arity() as u32;
    let mut out = Element::zero(e.arity() + 1);
    for (m, c) in e.terms() {
        let t = m.to_tree();
        let t = match side {
            Side::Right => Tree::node(op, t, Tree::Leaf(n + 1)),
            Side::Left => Tree::node(op, Tree::Leaf(n + 1), t),
        };
        out.add_tree(&t, c.clone(), sig);
    }
    out
}
