use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{EngineScalar, Param, Variety};
use crate::error::EngineError;
use crate::linalg::{compact, RowBasis, SparseVec};
use crate::scalar::{Rational, RationalFunction};
use crate::term::{
    act, enumerate_monomials, multiply_by_var, substitute, Element, Monomial, Permutation, Side,
    Signature, Symmetry, Tree,
};

/// How generated rows are closed under relabeling of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    /// Identity and the transpositions `(j n)`: enough because everything
    /// extended from arity `n - 1` already spans an `S_{n-1}`-stable space.
    Cosets,
    /// Every permutation of `S_n`.
    Full,
}

#[derive(Clone, Debug)]
pub struct EngineOptions {
    pub max_exact_arity: usize,
    pub max_sampled_arity: usize,
    pub closure: Closure,
}

pub const MAX_ARITY_ENV: &str = "VARIETY_FORGE_MAX_ARITY";

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { max_exact_arity: 6, max_sampled_arity: 7, closure: Closure::Cosets }
    }
}

impl EngineOptions {
    /// Defaults, with both arity limits replaced by `VARIETY_FORGE_MAX_ARITY`
    /// when it is set to a number.
    pub fn from_env() -> Self {
        let mut o = Self::default();
        if let Some(n) = std::env::var(MAX_ARITY_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            o.max_exact_arity = n;
            o.max_sampled_arity = n;
        }
        o
    }

    fn check_exact(&self, n: usize) -> Result<(), EngineError> {
        if n > self.max_exact_arity {
            return Err(EngineError::ArityTooLarge { arity: n, limit: self.max_exact_arity, mode: "exact" });
        }
        Ok(())
    }

    fn check_sampled(&self, n: usize) -> Result<(), EngineError> {
        if n > self.max_sampled_arity {
            return Err(EngineError::ArityTooLarge {
                arity: n,
                limit: self.max_sampled_arity,
                mode: "sampled",
            });
        }
        Ok(())
    }
}

/// Multilinear component of arity `n` of the ideal generated by some
/// identities.
#[derive(Clone, Debug)]
pub struct ConsequenceSpace<F> {
    arity: usize,
    signature: Signature,
    monomials: Vec<Monomial>,
    index: FxHashMap<Monomial, u32>,
    basis: RowBasis<F>,
    dims: Vec<usize>,
}

fn index_of(monomials: &[Monomial]) -> FxHashMap<Monomial, u32> {
    monomials.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect()
}

fn to_sparse<F: EngineScalar>(e: &Element<F>, index: &FxHashMap<Monomial, u32>) -> SparseVec<F> {
    compact(e.terms().map(|(m, c)| (index[m], c.clone())).collect())
}

fn from_sparse<F: EngineScalar>(v: &[(u32, F)], monomials: &[Monomial], arity: usize) -> Element<F> {
    let mut e = Element::zero(arity);
    for (c, x) in v {
        e.add_term(monomials[*c as usize].clone(), x.clone());
    }
    e
}

impl<F: EngineScalar> ConsequenceSpace<F> {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn basis(&self) -> &RowBasis<F> {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// Dimension of the quotient: monomials minus rank.
    pub fn dim(&self) -> usize {
        self.monomials.len() - self.basis.rank()
    }

    /// Quotient dimensions at arities `1..=n`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn to_sparse(&self, e: &Element<F>) -> SparseVec<F> {
        assert_eq!(e.arity(), self.arity, "element arity differs from space arity");
        to_sparse(e, &self.index)
    }

    pub fn contains(&self, e: &Element<F>) -> bool {
        e.is_zero() || self.basis.contains(&self.to_sparse(e))
    }

    /// Number of basis rows combined to express `e`, if it lies in the space.
    pub fn certificate(&self, e: &Element<F>) -> Option<usize> {
        if e.is_zero() {
            return Some(0);
        }
        let (rest, used) = self.basis.reduce_traced(&self.to_sparse(e));
        rest.is_empty().then_some(used.len())
    }

    pub fn basis_elements(&self) -> Vec<Element<F>> {
        self.basis.rows().into_iter().map(|r| from_sparse(r, &self.monomials, self.arity)).collect()
    }

    /// Whether every basis row stays in the space after applying each
    /// adjacent transposition.
    pub fn is_symmetric_group_stable(&self) -> bool {
        let gens: Vec<Permutation> =
            (1..self.arity).map(|i| Permutation::transposition(self.arity, i, i + 1)).collect();
        self.basis_elements()
            .iter()
            .all(|e| gens.iter().all(|s| self.contains(&act(s, e, &self.signature))))
    }
}

fn extensions<F: EngineScalar>(e: &Element<F>, sig: &Signature) -> Vec<Element<F>> {
    let m = e.arity() as u32;
    let mut out = Vec::new();
    for (op, o) in sig.ops().iter().enumerate() {
        let op = op as u8;
        for i in 1..=m {
            let g = Tree::node(op, Tree::Leaf(i), Tree::Leaf(m + 1));
            out.push(substitute(e, i, &g, sig).expect("fresh variable"));
            if o.symmetry == Symmetry::None {
                let g = Tree::node(op, Tree::Leaf(m + 1), Tree::Leaf(i));
                out.push(substitute(e, i, &g, sig).expect("fresh variable"));
            }
        }
        out.push(multiply_by_var(e, op, Side::Right, sig));
        if o.symmetry == Symmetry::None {
            out.push(multiply_by_var(e, op, Side::Left, sig));
        }
    }
    out
}

fn relabelings(n: usize, closure: Closure) -> Vec<Permutation> {
    match closure {
        Closure::Full => Permutation::all(n),
        Closure::Cosets => (1..=n).map(|j| Permutation::transposition(n, j, n)).collect(),
    }
}

const CHUNK: usize = 64;

/// Builds the consequence spaces arity by arity up to `n`.
pub fn build_space<F: EngineScalar>(
    sig: &Signature,
    identities: &[Element<F>],
    n: usize,
    closure: Closure,
) -> ConsequenceSpace<F> {
    assert!(n >= 1, "arity must be positive");
    let mut prev: Vec<Element<F>> = Vec::new();
    let mut dims = Vec::with_capacity(n);
    let mut m = 1;
    loop {
        let monomials = enumerate_monomials(m, sig);
        let index = index_of(&monomials);
        let mut basis = RowBasis::new(monomials.len());
        let mut kept: Vec<SparseVec<F>> = Vec::new();
        let keep = m < n;
        let mut insert = |v: SparseVec<F>, basis: &mut RowBasis<F>| {
            if basis.is_full() {
                return;
            }
            let red = basis.reduce(&v);
            if basis.insert_reduced(red) && keep {
                kept.push(v);
            }
        };
        let all = Permutation::all(m);
        for id in identities.iter().filter(|e| e.arity() == m) {
            for s in &all {
                insert(to_sparse(&act(s, id, sig), &index), &mut basis);
            }
        }
        let perms = relabelings(m, closure);
        for chunk in prev.chunks(CHUNK) {
            if basis.is_full() {
                break;
            }
            let rows: Vec<Vec<SparseVec<F>>> = chunk
                .par_iter()
                .map(|e| {
                    let mut rows = Vec::new();
                    for c in extensions(e, sig) {
                        if c.is_zero() {
                            continue;
                        }
                        for s in &perms {
                            rows.push(to_sparse(&act(s, &c, sig), &index));
                        }
                    }
                    rows
                })
                .collect();
            for r in rows.into_iter().flatten() {
                insert(r, &mut basis);
            }
        }
        dims.push(monomials.len() - basis.rank());
        if m == n {
            return ConsequenceSpace { arity: n, signature: sig.clone(), monomials, index, basis, dims };
        }
        prev = kept.iter().map(|v| from_sparse(v, &monomials, m)).collect();
        m += 1;
    }
}

/// Consequences of `v` at arity `n` over the coefficient field `F`.
pub fn consequences<F: EngineScalar>(
    v: &Variety,
    n: usize,
    opts: &EngineOptions,
) -> Result<ConsequenceSpace<F>, EngineError> {
    opts.check_exact(n)?;
    if n == 0 {
        return Err(EngineError::Invalid("arity must be positive".into()));
    }
    let ids = v.coefficients::<F>()?;
    Ok(build_space(&v.signature, &ids, n, opts.closure))
}

/// Quotient dimensions at arities `1..=n`.
pub fn dims_up_to(v: &Variety, n: usize, opts: &EngineOptions) -> Result<Vec<usize>, EngineError> {
    if v.needs_generic() {
        Ok(consequences::<RationalFunction>(v, n, opts)?.dims().to_vec())
    } else {
        Ok(consequences::<Rational>(v, n, opts)?.dims().to_vec())
    }
}

pub fn dim_multilinear(v: &Variety, n: usize, opts: &EngineOptions) -> Result<usize, EngineError> {
    Ok(*dims_up_to(v, n, opts)?.last().unwrap())
}

fn check_target(v: &Variety, target: &Element<RationalFunction>) -> Result<(), EngineError> {
    if target.arity() == 0 {
        return Err(EngineError::Invalid("target has no variables".into()));
    }
    let used = target.terms().flat_map(|(m, _)| m.ops().to_vec()).max();
    if used.is_some_and(|o| o as usize >= v.signature.len()) {
        return Err(EngineError::SignatureMismatch("target uses undeclared operations".into()));
    }
    Ok(())
}

/// Whether `target` lies in the ideal of consequences of `v`; `target` must
/// be written in the signature of `v`.
pub fn is_consequence(
    v: &Variety,
    target: &Element<RationalFunction>,
    opts: &EngineOptions,
) -> Result<bool, EngineError> {
    Ok(consequence_certificate(v, target, opts)?.is_some())
}

/// Number of basis rows needed to express `target`, or `None` when it is not
/// a consequence.
pub fn consequence_certificate(
    v: &Variety,
    target: &Element<RationalFunction>,
    opts: &EngineOptions,
) -> Result<Option<usize>, EngineError> {
    if target.is_zero() {
        return Ok(Some(0));
    }
    check_target(v, target)?;
    let n = target.arity();
    let generic = v.needs_generic() || (v.param == Param::Generic && target.terms().any(|(_, c)| !c.is_constant()));
    if generic {
        let space = consequences::<RationalFunction>(v, n, opts)?;
        let t = target.try_map_coeffs(|c| RationalFunction::convert(c, &v.param))?;
        Ok(space.certificate(&t))
    } else {
        let space = consequences::<Rational>(v, n, opts)?;
        let t = target.try_map_coeffs(|c| Rational::convert(c, &v.param))?;
        Ok(space.certificate(&t))
    }
}

fn same_span<F: EngineScalar>(a: &ConsequenceSpace<F>, b: &ConsequenceSpace<F>) -> bool {
    a.rank() == b.rank() && b.basis().rows().iter().all(|r| a.basis().contains(r))
}

/// Whether the two identity systems have the same consequences at arity `n`.
pub fn equivalent(v1: &Variety, v2: &Variety, n: usize, opts: &EngineOptions) -> Result<bool, EngineError> {
    let v2 = v2.align_to(&v1.signature)?;
    if v1.needs_generic() || v2.needs_generic() {
        let a = consequences::<RationalFunction>(v1, n, opts)?;
        let b = consequences::<RationalFunction>(&v2, n, opts)?;
        Ok(same_span(&a, &b))
    } else {
        let a = consequences::<Rational>(v1, n, opts)?;
        let b = consequences::<Rational>(&v2, n, opts)?;
        Ok(same_span(&a, &b))
    }
}

/// Dimensions from rank computations at random specializations of `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledDims {
    /// Smallest dimension seen at each arity; the generic rank is at least the
    /// corresponding rank, so these are upper bounds that are probably exact.
    pub dims: Vec<usize>,
    pub samples: Vec<(Rational, Vec<usize>)>,
    pub probabilistic: bool,
}

fn excluded(q: &Rational) -> bool {
    let small = [(0, 1), (1, 1), (-1, 1), (1, 2), (1, 3)];
    small.iter().any(|&(a, b)| *q == Rational::new(a.into(), b.into()))
}

/// Sample values of `d` avoiding `0, ±1, 1/2, 1/3` and poles of the
/// coefficients of `v`.
pub fn sample_points(v: &Variety, k: usize, seed: u64) -> Vec<Rational> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out: Vec<Rational> = Vec::new();
    while out.len() < k {
        let p: i64 = rng.random_range(-97..=97);
        let q: i64 = rng.random_range(1..=31);
        let x = Rational::new(p.into(), q.into());
        if excluded(&x) || out.contains(&x) {
            continue;
        }
        let pole = v.identities.iter().any(|e| e.terms().any(|(_, c)| c.eval_at(&x).is_err()));
        if !pole {
            out.push(x);
        }
    }
    out
}

/// Dimensions through arity `n` at `k` random rational values of `d`.
pub fn dims_sampled(
    v: &Variety,
    n: usize,
    k: usize,
    seed: u64,
    opts: &EngineOptions,
) -> Result<SampledDims, EngineError> {
    opts.check_sampled(n)?;
    if !v.needs_generic() {
        let o = EngineOptions { max_exact_arity: opts.max_sampled_arity, ..opts.clone() };
        let dims = dims_up_to(v, n, &o)?;
        return Ok(SampledDims { dims, samples: Vec::new(), probabilistic: false });
    }
    let mut samples = Vec::new();
    let mut best: Option<Vec<usize>> = None;
    for q in sample_points(v, k.max(1), seed) {
        let ids = v.specialize(&q).coefficients::<Rational>()?;
        let dims = build_space(&v.signature, &ids, n, opts.closure).dims().to_vec();
        best = Some(match best {
            None => dims.clone(),
            Some(b) => b.iter().zip(&dims).map(|(x, y)| *x.min(y)).collect(),
        });
        samples.push((q, dims));
    }
    Ok(SampledDims { dims: best.unwrap(), samples, probabilistic: true })
}
