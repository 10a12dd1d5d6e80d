use std::fmt::Write as _;

use super::{Signature, Symmetry};

/// Binary tree with variable labels at the leaves and operation indices at
/// inner nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(u32),
    Node(u8, Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(op: u8, a: Tree, b: Tree) -> Tree {
        Tree::Node(op, Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Tree::Leaf(l) => out.push(*l),
            Tree::Node(_, a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn relabel(&self, f: &impl Fn(u32) -> u32) -> Tree {
        match self {
            Tree::Leaf(l) => Tree::Leaf(f(*l)),
            Tree::Node(op, a, b) => Tree::node(*op, a.relabel(f), b.relabel(f)),
        }
    }

    /// Replaces every leaf `label` by `with`.
    pub fn replace_leaf(&self, label: u32, with: &Tree) -> Tree {
        match self {
            Tree::Leaf(l) if *l == label => with.clone(),
            Tree::Leaf(l) => Tree::Leaf(*l),
            Tree::Node(op, a, b) => {
                Tree::node(*op, a.replace_leaf(label, with), b.replace_leaf(label, with))
            }
        }
    }

    pub fn to_text(&self, sig: &Signature) -> String {
        let mut s = String::new();
        self.write_text(sig, &mut s);
        s
    }

    fn write_text(&self, sig: &Signature, out: &mut String) {
        match self {
            Tree::Leaf(l) => {
                let _ = write!(out, "x{l}");
            }
            Tree::Node(op, a, b) => {
                out.push_str(sig.name(*op));
                out.push('(');
                a.write_text(sig, out);
                out.push(',');
                b.write_text(sig, out);
                out.push(')');
            }
        }
    }
}

/// Canonical multilinear monomial.
///
/// Encoded as the preorder shape (`0` for an inner node, `1` for a leaf),
/// then the operation indices in preorder, then the leaf labels left to
/// right. Byte order on encodings of equal arity compares shape first, then
/// operations, then the leaf word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Box<[u8]>);

fn arity_of(code: &[u8]) -> usize {
    (code.len() + 2) / 4
}

fn split(code: &[u8]) -> (&[u8], &[u8], &[u8]) {
    let n = arity_of(code);
    let (shape, rest) = code.split_at(2 * n - 1);
    let (ops, leaves) = rest.split_at(n - 1);
    (shape, ops, leaves)
}

fn combine(op: u8, a: &[u8], b: &[u8]) -> Vec<u8> {
    let (sa, oa, la) = split(a);
    let (sb, ob, lb) = split(b);
    let mut out = Vec::with_capacity(a.len() + b.len() + 2);
    out.push(0);
    out.extend_from_slice(sa);
    out.extend_from_slice(sb);
    out.push(op);
    out.extend_from_slice(oa);
    out.extend_from_slice(ob);
    out.extend_from_slice(la);
    out.extend_from_slice(lb);
    out
}

fn canon(tree: &Tree, sig: &Signature, negative: &mut bool) -> Option<Vec<u8>> {
    match tree {
        Tree::Leaf(l) => {
            let l = u8::try_from(*l).expect("variable label above 255");
            Some(vec![1, l])
        }
        Tree::Node(op, a, b) => {
            let ca = canon(a, sig, negative)?;
            let cb = canon(b, sig, negative)?;
            match sig.symmetry(*op) {
                Symmetry::None => Some(combine(*op, &ca, &cb)),
                sym => match ca.cmp(&cb) {
                    std::cmp::Ordering::Less => Some(combine(*op, &ca, &cb)),
                    std::cmp::Ordering::Greater => {
                        if sym == Symmetry::Antisymmetric {
                            *negative = !*negative;
                        }
                        Some(combine(*op, &cb, &ca))
                    }
                    std::cmp::Ordering::Equal => {
                        if sym == Symmetry::Antisymmetric {
                            None
                        } else {
                            Some(combine(*op, &ca, &cb))
                        }
                    }
                },
            }
        }
    }
}

/// Canonical form of a tree: the monomial together with `true` when the
/// reordering introduced a sign. Returns `None` when the tree vanishes (an
/// antisymmetric operation applied to two equal subtrees).
pub fn normalize_tree(tree: &Tree, sig: &Signature) -> Option<(bool, Monomial)> {
    let mut negative = false;
    let code = canon(tree, sig, &mut negative)?;
    Some((negative, Monomial(code.into_boxed_slice())))
}

impl Monomial {
    /// The single variable `x1`.
    pub fn variable() -> Monomial {
        Monomial(vec![1, 1].into_boxed_slice())
    }

    pub fn arity(&self) -> usize {
        arity_of(&self.0)
    }

    pub fn code(&self) -> &[u8] {
        &self.0
    }

    pub fn shape(&self) -> &[u8] {
        split(&self.0).0
    }

    pub fn ops(&self) -> &[u8] {
        split(&self.0).1
    }

    pub fn leaves(&self) -> &[u8] {
        split(&self.0).2
    }

    /// Same shape and leaves with every operation index passed through `f`.
    pub fn map_ops(&self, f: impl Fn(u8) -> u8) -> Monomial {
        let n = self.arity();
        let mut code = self.0.to_vec();
        for b in &mut code[2 * n - 1..3 * n - 2] {
            *b = f(*b);
        }
        Monomial(code.into_boxed_slice())
    }

    pub fn to_tree(&self) -> Tree {
        let (shape, ops, leaves) = split(&self.0);
        let (mut si, mut oi, mut li) = (0, 0, 0);
        build(shape, ops, leaves, &mut si, &mut oi, &mut li)
    }

    pub fn to_text(&self, sig: &Signature) -> String {
        self.to_tree().to_text(sig)
    }
}

fn build(
    shape: &[u8],
    ops: &[u8],
    leaves: &[u8],
    si: &mut usize,
    oi: &mut usize,
    li: &mut usize,
) -> Tree {
    let s = shape[*si];
    *si += 1;
    if s == 1 {
        let l = leaves[*li];
        *li += 1;
        Tree::Leaf(l as u32)
    } else {
        let op = ops[*oi];
        *oi += 1;
        let a = build(shape, ops, leaves, si, oi, li);
        let b = build(shape, ops, leaves, si, oi, li);
        Tree::node(op, a, b)
    }
}

/// All canonical multilinear monomials of arity `n` in increasing order.
pub fn enumerate_monomials(n: usize, sig: &Signature) -> Vec<Monomial> {
    assert!((1..=16).contains(&n), "arity out of range");
    if sig.is_empty() && n > 1 {
        return Vec::new();
    }
    let full = (1usize << n) - 1;
    let mut memo: Vec<Option<Vec<Vec<u8>>>> = vec![None; full + 1];
    let mut out: Vec<Monomial> = gen(full, sig, &mut memo)
        .into_iter()
        .map(|c| Monomial(c.into_boxed_slice()))
        .collect();
    out.sort_unstable();
    out
}

fn gen(mask: usize, sig: &Signature, memo: &mut Vec<Option<Vec<Vec<u8>>>>) -> Vec<Vec<u8>> {
    if let Some(v) = &memo[mask] {
        return v.clone();
    }
    let mut out = Vec::new();
    if mask.count_ones() == 1 {
        out.push(vec![1, mask.trailing_zeros() as u8 + 1]);
    } else {
        let low = mask & mask.wrapping_neg();
        let mut a = (mask - 1) & mask;
        while a > 0 {
            let b = mask ^ a;
            let ga = gen(a, sig, memo);
            let gb = gen(b, sig, memo);
            for (op, sym) in sig.ops().iter().enumerate().map(|(i, o)| (i as u8, o.symmetry)) {
                let unordered = sym != Symmetry::None;
                if unordered && a & low == 0 {
                    continue;
                }
                for x in &ga {
                    for y in &gb {
                        if unordered && y < x {
                            out.push(combine(op, y, x));
                        } else {
                            out.push(combine(op, x, y));
                        }
                    }
                }
            }
            a = (a - 1) & mask;
        }
    }
    memo[mask] = Some(out.clone());
    out
}

/// Number of multilinear monomials of arity `n`, by closed formula:
/// `n! * Catalan(n-1) * (k_plain + k_unordered / 2)^(n-1)`.
pub fn monomial_count(n: usize, sig: &Signature) -> u128 {
    if n == 0 {
        return 0;
    }
    let unordered = sig.ops().iter().filter(|o| o.symmetry != Symmetry::None).count() as u128;
    let ordered = sig.len() as u128 - unordered;
    let fact: u128 = (1..=n as u128).product();
    let mut catalan: u128 = 1;
    for i in 0..(n - 1) as u128 {
        catalan = catalan * 2 * (2 * i + 1) / (i + 2);
    }
    let per_node: u128 = (1..n).map(|_| 2 * ordered + unordered).product();
    fact * catalan * per_node / (1u128 << (n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::OpSymbol;

    fn double_factorial_odd(m: u128) -> u128 {
        (1..=m).step_by(2).product()
    }

    #[test]
    fn counts_match_closed_forms() {
        let p = Signature::poisson();
        for n in 1..=6 {
            let got = enumerate_monomials(n, &p).len() as u128;
            let expect = if n == 1 { 1 } else { double_factorial_odd(2 * n as u128 - 3) * (1 << (n - 1)) };
            assert_eq!(got, expect, "poisson n={n}");
            assert_eq!(monomial_count(n, &p), expect);
        }
        let m = Signature::magma();
        let catalan = [1u128, 1, 2, 5, 14, 42];
        let fact = [1u128, 1, 2, 6, 24, 120, 720];
        for n in 1..=6 {
            let got = enumerate_monomials(n, &m).len() as u128;
            assert_eq!(got, catalan[n - 1] * fact[n], "magma n={n}");
            assert_eq!(monomial_count(n, &m), got);
        }
        assert_eq!(enumerate_monomials(3, &p).len(), 12);
        assert_eq!(enumerate_monomials(5, &p).len(), 1680);
    }

    #[test]
    fn enumeration_is_canonical_and_sorted() {
        let p = Signature::poisson();
        let all = enumerate_monomials(4, &p);
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
        for m in &all {
            let (neg, back) = normalize_tree(&m.to_tree(), &p).unwrap();
            assert!(!neg);
            assert_eq!(&back, m);
        }
    }

    #[test]
    fn arity_three_canonical_forms_put_inner_left() {
        let p = Signature::poisson();
        let t = Tree::node(1, Tree::Leaf(3), Tree::node(0, Tree::Leaf(2), Tree::Leaf(1)));
        let (neg, m) = normalize_tree(&t, &p).unwrap();
        assert!(neg);
        assert_eq!(m.to_text(&p), "bracket(dot(x1,x2),x3)");
        assert_eq!(m.leaves(), &[1, 2, 3]);
    }

    #[test]
    fn antisymmetric_equal_subtrees_vanish() {
        let p = Signature::poisson();
        let t = Tree::node(1, Tree::Leaf(1), Tree::Leaf(1));
        assert!(normalize_tree(&t, &p).is_none());
        let s = Signature::new(vec![OpSymbol::new("m", Symmetry::None)]).unwrap();
        let t = Tree::node(0, Tree::Leaf(2), Tree::Leaf(1));
        let (neg, m) = normalize_tree(&t, &s).unwrap();
        assert!(!neg);
        assert_eq!(m.to_text(&s), "m(x2,x1)");
    }
}
