//! Finite-dimensional algebras given by structure constants.

pub mod catalog;
mod file;

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::AlgebraError;
use crate::linalg::{compact, RowBasis, SparseVec};
use crate::scalar::{Rational, RationalFunction};
use crate::term::{Element, OpSymbol, Signature, Symmetry, Tree};
use crate::variety::{Param, Variety};

pub use file::{load_algebra, write_algebra};

/// Names under which the identity parameter may be bound.
const PARAM_NAMES: [&str; 3] = ["delta", "d", "δ"];

#[derive(Clone, Debug, PartialEq)]
pub struct Algebra {
    pub name: String,
    dim: usize,
    signature: Signature,
    /// `tables[op][i * dim + j]` is the product of `e_{i+1}` and `e_{j+1}`.
    tables: Vec<Vec<SparseVec<Rational>>>,
    params: Vec<(String, Rational)>,
}

impl Algebra {
    /// Algebra with all products zero.
    pub fn zero(name: &str, dim: usize, signature: Signature) -> Self {
        let tables = vec![vec![Vec::new(); dim * dim]; signature.len()];
        Algebra { name: name.to_string(), dim, signature, tables, params: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn params(&self) -> &[(String, Rational)] {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<&Rational> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, q)| q)
    }

    pub fn set_param(&mut self, name: &str, value: Rational) {
        match self.params.iter_mut().find(|(n, _)| n == name) {
            Some(p) => p.1 = value,
            None => self.params.push((name.to_string(), value)),
        }
    }

    /// Value bound to the identity parameter, if any.
    pub fn delta(&self) -> Option<&Rational> {
        PARAM_NAMES.iter().find_map(|n| self.param(n))
    }

    /// Product of basis vectors with 1-based indices.
    pub fn product(&self, op: u8, i: usize, j: usize) -> &SparseVec<Rational> {
        &self.tables[op as usize][(i - 1) * self.dim + (j - 1)]
    }

    /// Sets `op(e_i, e_j)` (1-based) and its mirror as dictated by the
    /// operation's symmetry.
    pub fn set_product(&mut self, op: u8, i: usize, j: usize, value: Vec<Rational>) -> Result<(), AlgebraError> {
        let d = self.dim;
        if i == 0 || j == 0 || i > d || j > d || value.len() != d {
            return Err(AlgebraError::Dimension(format!("product e{i} e{j} in dimension {d}")));
        }
        let v = compact(value.into_iter().enumerate().map(|(k, c)| (k as u32, c)).collect());
        let sym = self.signature.symmetry(op);
        if sym == Symmetry::Antisymmetric && i == j && !v.is_empty() {
            return Err(AlgebraError::Inconsistent(format!(
                "{}(e{i},e{i}) must vanish",
                self.signature.name(op)
            )));
        }
        let t = &mut self.tables[op as usize];
        match sym {
            Symmetry::Symmetric => t[(j - 1) * d + (i - 1)] = v.clone(),
            Symmetry::Antisymmetric => {
                t[(j - 1) * d + (i - 1)] = v.iter().map(|(k, c)| (*k, -c.clone())).collect()
            }
            Symmetry::None => {}
        }
        t[(i - 1) * d + (j - 1)] = v;
        Ok(())
    }

    /// Product of arbitrary vectors.
    pub fn mul(&self, op: u8, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let d = self.dim;
        let mut out = vec![Rational::zero(); d];
        let table = &self.tables[op as usize];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in &table[i * d + j] {
                    out[*k as usize] += &ab * c;
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i - 1] = Rational::from_integer(1.into());
        v
    }

    /// Whether the operation is identically zero.
    pub fn is_zero_op(&self, op: u8) -> bool {
        self.tables[op as usize].iter().all(|v| v.is_empty())
    }

    /// Copy with operations reordered to `target`, which must list the same
    /// names with the same symmetries, possibly with extra operations that
    /// are then identically zero.
    pub fn align_to(&self, target: &Signature) -> Result<Algebra, AlgebraError> {
        if *target == self.signature {
            return Ok(self.clone());
        }
        let mut out = Algebra::zero(&self.name, self.dim, target.clone());
        out.params = self.params.clone();
        for (i, op) in self.signature.ops().iter().enumerate() {
            let j = target
                .index_of(&op.name)
                .ok_or_else(|| AlgebraError::UnknownOp(op.name.clone()))?;
            if target.symmetry(j) != op.symmetry {
                return Err(AlgebraError::SignatureMismatch(format!(
                    "'{}' is {} here but {} in the target",
                    op.name,
                    op.symmetry,
                    target.symmetry(j)
                )));
            }
            out.tables[j as usize] = self.tables[i].clone();
        }
        Ok(out)
    }

    /// Evaluates a tree with leaf `l` bound to `inputs[l - 1]`; `ops` maps the
    /// tree's operation indices to this algebra's.
    fn eval_tree(&self, t: &Tree, ops: &[u8], inputs: &[Vec<Rational>]) -> Vec<Rational> {
        match t {
            Tree::Leaf(l) => inputs[*l as usize - 1].clone(),
            Tree::Node(op, a, b) => {
                let u = self.eval_tree(a, ops, inputs);
                let v = self.eval_tree(b, ops, inputs);
                self.mul(ops[*op as usize], &u, &v)
            }
        }
    }
}

/// An identity prepared for evaluation in a particular algebra.
struct Prepared {
    ops: Vec<u8>,
    terms: Vec<(Tree, Rational)>,
    arity: usize,
}

fn prepare(
    a: &Algebra,
    e: &Element<RationalFunction>,
    sig: &Signature,
    param: Option<&Rational>,
) -> Result<Prepared, AlgebraError> {
    let mut ops = Vec::new();
    for op in sig.ops() {
        let j = a.signature.index_of(&op.name).ok_or_else(|| AlgebraError::UnknownOp(op.name.clone()))?;
        let (have, want) = (a.signature.symmetry(j), op.symmetry);
        if have != want && want != Symmetry::None {
            return Err(AlgebraError::SignatureMismatch(format!(
                "'{}' is {have} in the algebra but {want} in the identity",
                op.name
            )));
        }
        ops.push(j);
    }
    let mut terms = Vec::new();
    for (m, c) in e.terms() {
        let c = match (c.as_rational(), param) {
            (Some(q), _) => q,
            (None, Some(p)) => c.eval_at(p)?,
            (None, None) => return Err(AlgebraError::UnboundParameter),
        };
        terms.push((m.to_tree(), c));
    }
    Ok(Prepared { ops, terms, arity: e.arity() })
}

impl Prepared {
    fn eval(&self, a: &Algebra, inputs: &[Vec<Rational>]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.dim];
        for (t, c) in &self.terms {
            for (o, x) in out.iter_mut().zip(a.eval_tree(t, &self.ops, inputs)) {
                *o += c * x;
            }
        }
        out
    }
}

/// A basis tuple on which an identity does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// 1-based basis indices substituted for `x1, .., xn`.
    pub tuple: Vec<usize>,
    pub value: Vec<Rational>,
}

impl Witness {
    pub fn describe(&self) -> String {
        let args: Vec<String> = self.tuple.iter().map(|i| format!("e{i}")).collect();
        format!("({}) -> {}", args.join(","), vector_text(&self.value))
    }
}

/// Linear combination of basis vectors as text.
pub fn vector_text(v: &[Rational]) -> String {
    let mut s = String::new();
    for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let neg = c < &Rational::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if a != Rational::from_integer(1.into()) {
            s.push_str(&format!("{a}*"));
        }
        s.push_str(&format!("e{}", k + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Evaluates a multilinear identity on every tuple of basis vectors and
/// returns the first tuple, in lexicographic order, where it does not vanish.
/// `param` supplies the value of `d`; without it the algebra's binding is
/// used.
pub fn eval_identity(
    a: &Algebra,
    e: &Element<RationalFunction>,
    sig: &Signature,
    param: Option<&Rational>,
) -> Result<Option<Witness>, AlgebraError> {
    let p = prepare(a, e, sig, param.or_else(|| a.delta()))?;
    let (d, n) = (a.dim, p.arity);
    if d == 0 || n == 0 {
        return Ok(None);
    }
    let basis: Vec<Vec<Rational>> = (1..=d).map(|i| a.basis_vector(i)).collect();
    let total = (d as u64).checked_pow(n as u32).expect("tuple count fits in u64");
    let tuple_of = |mut t: u64| {
        let mut idx = vec![0usize; n];
        for slot in idx.iter_mut().rev() {
            *slot = (t % d as u64) as usize;
            t /= d as u64;
        }
        idx
    };
    Ok((0..total).into_par_iter().find_map_first(|t| {
        let idx = tuple_of(t);
        let inputs: Vec<Vec<Rational>> = idx.iter().map(|&i| basis[i].clone()).collect();
        let value = p.eval(a, &inputs);
        if value.iter().all(|x| x.is_zero()) {
            None
        } else {
            Some(Witness { tuple: idx.iter().map(|i| i + 1).collect(), value })
        }
    }))
}

/// Value of a multilinear identity at arbitrary vectors.
pub fn eval_at(
    a: &Algebra,
    e: &Element<RationalFunction>,
    sig: &Signature,
    param: Option<&Rational>,
    inputs: &[Vec<Rational>],
) -> Result<Vec<Rational>, AlgebraError> {
    let p = prepare(a, e, sig, param.or_else(|| a.delta()))?;
    if inputs.len() != p.arity || inputs.iter().any(|v| v.len() != a.dim) {
        return Err(AlgebraError::Dimension(format!(
            "{} inputs of dimension {} for an identity of arity {}",
            inputs.len(),
            a.dim,
            p.arity
        )));
    }
    Ok(p.eval(a, inputs))
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityResult {
    pub text: String,
    pub witness: Option<Witness>,
}

impl IdentityResult {
    pub fn satisfied(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub algebra: String,
    pub variety: String,
    pub results: Vec<IdentityResult>,
}

impl CheckReport {
    pub fn satisfied(&self) -> bool {
        self.results.iter().all(|r| r.satisfied())
    }

    pub fn first_failure(&self) -> Option<&IdentityResult> {
        self.results.iter().find(|r| !r.satisfied())
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {} against {}", self.algebra, self.variety)?;
        for r in &self.results {
            match &r.witness {
                None => writeln!(f, "  holds: {}", r.text)?,
                Some(w) => writeln!(f, "  fails: {}\n    witness {}", r.text, w.describe())?,
            }
        }
        write!(f, "{}", if self.satisfied() { "satisfied" } else { "not satisfied" })
    }
}

/// Evaluates every identity of `v`. A specialized variety supplies the
/// parameter; a generic one falls back to the algebra's binding.
pub fn check_variety(a: &Algebra, v: &Variety) -> Result<CheckReport, AlgebraError> {
    let param = match &v.param {
        Param::Value(q) => Some(q),
        Param::Generic => None,
    };
    let mut results = Vec::new();
    for e in &v.identities {
        let witness = eval_identity(a, e, &v.signature, param)?;
        results.push(IdentityResult { text: e.to_text(&v.signature), witness });
    }
    Ok(CheckReport { algebra: a.name.clone(), variety: v.name.clone(), results })
}

fn poisson_view(a: &Algebra) -> Result<Algebra, AlgebraError> {
    a.align_to(&Signature::poisson())
}

fn tensor_index(i: usize, j: usize, db: usize) -> u32 {
    (i * db + j) as u32
}

/// Tensor product with `(a⊗b)·(c⊗d) = ac⊗bd` and
/// `{a⊗b, c⊗d} = {a,c}⊗bd + ac⊗{b,d}`; `e_i⊗f_j` is basis vector
/// `(i-1)·dim(b) + j`.
/// Algebras whose operations are all plain or symmetric use
/// `(a⊗b)(c⊗d) = ac⊗bd` for each operation.
pub fn tensor(a: &Algebra, b: &Algebra) -> Result<Algebra, AlgebraError> {
    let plain = |x: &Algebra| x.signature.ops().iter().all(|o| o.symmetry != Symmetry::Antisymmetric);
    if plain(a) && a.signature == b.signature && a.signature != Signature::poisson() {
        return Ok(plain_tensor(a, b));
    }
    let (a, b) = (poisson_view(a)?, poisson_view(b)?);
    let (da, db) = (a.dim, b.dim);
    let mut out = Algebra::zero(&format!("{}⊗{}", a.name, b.name), da * db, Signature::poisson());
    if let (Some(x), Some(y)) = (a.delta(), b.delta()) {
        if x == y {
            out.set_param("delta", x.clone());
        }
    }
    let d = da * db;
    for (i, k) in (0..da).flat_map(|i| (0..da).map(move |k| (i, k))) {
        for (j, l) in (0..db).flat_map(|j| (0..db).map(move |l| (j, l))) {
            let ad = &a.tables[0][i * da + k];
            let ab = &a.tables[1][i * da + k];
            let bd = &b.tables[0][j * db + l];
            let bb = &b.tables[1][j * db + l];
            let outer = |x: &SparseVec<Rational>, y: &SparseVec<Rational>, acc: &mut Vec<(u32, Rational)>| {
                for (p, c) in x {
                    for (q, e) in y {
                        acc.push((tensor_index(*p as usize, *q as usize, db), c * e));
                    }
                }
            };
            let mut dot = Vec::new();
            outer(ad, bd, &mut dot);
            let mut br = Vec::new();
            outer(ab, bd, &mut br);
            outer(ad, bb, &mut br);
            let r = (tensor_index(i, j, db) as usize) * d + tensor_index(k, l, db) as usize;
            out.tables[0][r] = compact(dot);
            out.tables[1][r] = compact(br);
        }
    }
    Ok(out)
}

fn plain_tensor(a: &Algebra, b: &Algebra) -> Algebra {
    let (da, db) = (a.dim, b.dim);
    let d = da * db;
    let mut out = Algebra::zero(&format!("{}⊗{}", a.name, b.name), d, a.signature.clone());
    for (o, table) in out.tables.iter_mut().enumerate() {
        for (i, k) in (0..da).flat_map(|i| (0..da).map(move |k| (i, k))) {
            for (j, l) in (0..db).flat_map(|j| (0..db).map(move |l| (j, l))) {
                let mut acc = Vec::new();
                for (p, c) in &a.tables[o][i * da + k] {
                    for (q, e) in &b.tables[o][j * db + l] {
                        acc.push((tensor_index(*p as usize, *q as usize, db), c * e));
                    }
                }
                let r = (tensor_index(i, j, db) as usize) * d + tensor_index(k, l, db) as usize;
                table[r] = compact(acc);
            }
        }
    }
    out
}

fn single_plain_op(a: &Algebra) -> Result<(), AlgebraError> {
    if a.signature.len() != 1 || a.signature.symmetry(0) != Symmetry::None {
        return Err(AlgebraError::SignatureMismatch(
            "expected a single operation without symmetry".into(),
        ));
    }
    Ok(())
}

/// Splits one plain product into `x∘y = (xy+yx)/2` and `[x,y] = (xy-yx)/2`,
/// named `dot` and `bracket`.
pub fn split_polarization(a: &Algebra) -> Result<Algebra, AlgebraError> {
    single_plain_op(a)?;
    let d = a.dim;
    let half = Rational::new(1.into(), 2.into());
    let mut out = Algebra::zero(&format!("{}-split", a.name), d, Signature::poisson());
    out.params = a.params.clone();
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (&a.tables[0][i * d + j], &a.tables[0][j * d + i]);
            let neg_y = y.iter().map(|(k, c)| (*k, -c.clone()));
            let sum: Vec<_> = x.iter().cloned().chain(y.iter().cloned()).map(|(k, c)| (k, c * &half)).collect();
            let diff: Vec<_> = x.iter().cloned().chain(neg_y).map(|(k, c)| (k, c * &half)).collect();
            out.tables[0][i * d + j] = compact(sum);
            out.tables[1][i * d + j] = compact(diff);
        }
    }
    Ok(out)
}

/// Inverse of [`split_polarization`]: `xy = x∘y + [x,y]`.
pub fn join_polarization(a: &Algebra) -> Result<Algebra, AlgebraError> {
    let a = poisson_view(a)?;
    let d = a.dim;
    let sig = Signature::new(vec![OpSymbol::new("mul", Symmetry::None)]).expect("valid signature");
    let mut out = Algebra::zero(&format!("{}-joined", a.name), d, sig);
    out.params = a.params.clone();
    for r in 0..d * d {
        let v = a.tables[0][r].iter().chain(&a.tables[1][r]).cloned().collect();
        out.tables[0][r] = compact(v);
    }
    Ok(out)
}

fn sparse(v: &[Rational]) -> SparseVec<Rational> {
    compact(v.iter().enumerate().map(|(k, c)| (k as u32, c.clone())).collect())
}

/// Whether the products of `op` span the whole algebra.
pub fn is_perfect(a: &Algebra, op: u8) -> bool {
    let mut b = RowBasis::new(a.dim);
    for v in &a.tables[op as usize] {
        b.insert(v);
    }
    b.is_full()
}

/// Smallest subspace containing `gens` and closed under multiplication by
/// the algebra on both sides for the listed operations.
pub fn generated_ideal(a: &Algebra, gens: &[Vec<Rational>], ops: &[u8]) -> RowBasis<Rational> {
    let mut b = RowBasis::new(a.dim);
    let mut queue: Vec<Vec<Rational>> = Vec::new();
    for g in gens {
        if b.insert(&sparse(g)) {
            queue.push(g.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for &op in ops {
            for i in 1..=a.dim {
                let e = a.basis_vector(i);
                for w in [a.mul(op, &e, &v), a.mul(op, &v, &e)] {
                    if b.insert(&sparse(&w)) {
                        queue.push(w);
                    }
                }
            }
        }
    }
    b
}

/// Searches the ideals generated by single vectors with coordinates in
/// `{-1, 0, 1}` for a proper nonzero one. Returns a spanning set if found.
pub fn find_proper_ideal(a: &Algebra, ops: &[u8]) -> Option<Vec<Vec<Rational>>> {
    let d = a.dim;
    let count = 3usize.checked_pow(d as u32).expect("small dimension");
    let digit = |x: usize| Rational::from_integer((x as i64 - 1).into());
    (1..count).find_map(|mut t| {
        let mut v = Vec::with_capacity(d);
        for _ in 0..d {
            v.push(digit(t % 3));
            t /= 3;
        }
        if v.iter().all(|x| x.is_zero()) {
            return None;
        }
        let ideal = generated_ideal(a, &[v], ops);
        (!ideal.is_full()).then(|| {
            ideal.rows().iter().map(|r| crate::linalg::dense_from_sparse(r, d)).collect()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use crate::variety::catalog as vcat;

    fn q(n: i64) -> Rational {
        rational(n, 1)
    }

    #[test]
    fn antisymmetric_mirror_and_diagonal() {
        let mut a = Algebra::zero("t", 2, Signature::poisson());
        a.set_product(1, 1, 2, vec![q(0), q(3)]).unwrap();
        assert_eq!(a.product(1, 2, 1), &vec![(1, q(-3))]);
        assert!(a.set_product(1, 1, 1, vec![q(1), q(0)]).is_err());
        assert!(a.set_product(0, 3, 1, vec![q(1), q(0)]).is_err());
    }

    #[test]
    fn evaluation_finds_first_witness() {
        let a = catalog::algebra("P-beta").unwrap();
        let mp = vcat::identity("mixed-2").unwrap();
        let w = eval_identity(&a, &mp.elements[0], &mp.signature, None).unwrap().unwrap();
        assert_eq!(w.tuple, vec![1, 1, 2]);
        assert_eq!(w.value, vec![q(0), q(0), q(0), q(3), q(0)]);
    }

    #[test]
    fn unbound_parameter_is_reported() {
        let a = catalog::algebra("P-beta").unwrap();
        let v = vcat::variety("delta-poisson").unwrap();
        assert_eq!(check_variety(&a, &v), Err(AlgebraError::UnboundParameter));
    }

    #[test]
    fn zero_algebra_satisfies_everything() {
        let z = catalog::algebra("zero-algebra").unwrap();
        for name in vcat::variety_names() {
            let v = vcat::variety(name).unwrap();
            let v = if v.needs_generic() { v.specialize(&q(2)) } else { v };
            assert!(check_variety(&z, &v).unwrap().satisfied(), "{name}");
        }
    }

    #[test]
    fn polarization_round_trip() {
        for name in ["sc-B1", "td1-B3", "depol-B2"] {
            let a = catalog::algebra(name).unwrap();
            let s = split_polarization(&a).unwrap();
            let back = join_polarization(&s).unwrap();
            assert_eq!(back.tables, a.tables, "{name}");
        }
        let p = catalog::algebra("idempotent").unwrap();
        assert!(split_polarization(&p).is_err());
    }

    #[test]
    fn tensor_is_multiplicative() {
        let one = catalog::algebra("idempotent").unwrap();
        let t = tensor(&one, &one).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.product(0, 1, 1), &vec![(0, q(1))]);
        let a1 = catalog::algebra("A1").unwrap();
        let a2 = catalog::algebra("A2").unwrap();
        let x = tensor(&a1, &a2).unwrap();
        let y = tensor(&a2, &a1).unwrap();
        let swap = |i: usize| (i - 1) % 3 * 3 + (i - 1) / 3 + 1;
        for op in 0..2 {
            for i in 1..=9 {
                for j in 1..=9 {
                    let u: Vec<_> = x.product(op, i, j).iter().map(|(k, c)| (swap(*k as usize + 1) as u32 - 1, c.clone())).collect();
                    assert_eq!(compact(u), y.product(op, swap(i), swap(j)).clone());
                }
            }
        }
    }

    #[test]
    fn plain_tensor_keeps_associativity() {
        let a = file::load_algebra("dim 2\nmul e1 e1 = e1\nmul e1 e2 = e2\nmul e2 e1 = e2\n").unwrap();
        let b = file::load_algebra("dim 2\nmul e1 e1 = e1\nmul e1 e2 = e2\n").unwrap();
        let t = tensor(&a, &b).unwrap();
        assert_eq!((t.dim(), t.signature()), (4, a.signature()));
        let assoc = vcat::variety("associator").unwrap();
        assert!(check_variety(&b, &assoc).unwrap().satisfied());
        assert!(check_variety(&t, &assoc).unwrap().satisfied());
        let one = file::load_algebra("dim 1\nmul e1 e1 = e1\n").unwrap();
        assert_eq!(tensor(&one, &one).unwrap().dim(), 1);
    }

    #[test]
    fn simple_examples() {
        for name in ["A1", "A2"] {
            let a = catalog::algebra(name).unwrap();
            assert!(is_perfect(&a, 1));
            assert!(find_proper_ideal(&a, &[0, 1]).is_none());
            assert!(find_proper_ideal(&a, &[1]).is_none());
        }
        let p = catalog::algebra("tp-half").unwrap();
        assert!(find_proper_ideal(&p, &[0, 1]).is_some());
    }

    fn shift_associative_samples() -> Vec<Algebra> {
        let sig = Signature::new(vec![OpSymbol::new("mul", Symmetry::None)]).unwrap();
        let shift = vcat::variety("shift-assoc").unwrap();
        let mut out = Vec::new();
        for t in 0..3usize.pow(8) {
            let mut a = Algebra::zero("s", 2, sig.clone());
            let mut t = t;
            for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                let v = (0..2).map(|_| { let x = q(t as i64 % 3 - 1); t /= 3; x }).collect();
                a.set_product(0, i, j, v).unwrap();
            }
            if check_variety(&a, &shift).unwrap().satisfied() {
                out.push(a);
            }
        }
        out
    }

    #[test]
    fn shift_associative_split_is_anti_poisson_jordan() {
        let sig = Signature::poisson();
        let raw = crate::term::parse_raw("dot(dot(dot(x1,x1),x2),x1) - dot(dot(x1,x1),dot(x2,x1))", &sig).unwrap();
        let jordan = crate::term::multilinearize(&raw, &sig);
        let ap = vcat::variety("anti-poisson").unwrap();
        let apj = Variety::new("apj", sig.clone(), jordan)
            .with_identity(vcat::identity("jacobi").unwrap().elements[0].clone())
            .with_identity(ap.identities[2].clone())
            .specialize(&q(-1));
        let nested = crate::term::parse_expr("bracket(bracket(x1,x2),x3)", &sig).unwrap();
        let mut samples = shift_associative_samples();
        samples.push(catalog::algebra("shift-assoc-sample").unwrap());
        let mut mixed = 0;
        for a in &samples {
            let s = split_polarization(a).unwrap();
            assert!(check_variety(&s, &apj).unwrap().satisfied());
            let flat = eval_identity(&s, &nested, &sig, None).unwrap().is_none();
            assert_eq!(check_variety(&s, &ap).unwrap().satisfied(), flat);
            if !s.is_zero_op(0) && !s.is_zero_op(1) {
                mixed += 1;
            }
        }
        assert!(mixed > 0);
    }
}
