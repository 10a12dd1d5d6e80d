use std::fmt;

use crate::error::EngineError;
use crate::scalar::{Rational, RationalFunction};
use crate::term::{Element, Permutation, Signature, Tree};
use crate::variety::{consequences, EngineOptions, Param, Variety};

const DOT: u8 = 0;
const BRACKET: u8 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: &'static str,
    pub trees: Vec<Tree>,
}

/// Multilinear part of a spanning family of the free δ-Poisson algebra, in
/// the Poisson signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeBasis {
    pub arity: usize,
    pub families: Vec<Family>,
}

impl FreeBasis {
    pub fn sizes(&self) -> Vec<usize> {
        self.families.iter().map(|f| f.trees.len()).collect()
    }

    pub fn total(&self) -> usize {
        self.sizes().iter().sum()
    }

    pub fn elements(&self) -> Vec<Element<RationalFunction>> {
        let sig = Signature::poisson();
        let one = RationalFunction::constant(&Rational::from_integer(1.into()));
        self.families
            .iter()
            .flat_map(|f| &f.trees)
            .map(|t| {
                let mut e = Element::zero(self.arity);
                e.add_tree(t, one.clone(), &sig);
                e
            })
            .collect()
    }

    /// Whether the family is linearly independent modulo the consequences of
    /// `v` and its size equals the multilinear dimension.
    pub fn is_basis_for(&self, v: &Variety, opts: &EngineOptions) -> Result<bool, EngineError> {
        let v = v.align_to(&Signature::poisson())?;
        if v.needs_generic() {
            check::<RationalFunction>(self, &v, opts)
        } else {
            check::<Rational>(self, &v, opts)
        }
    }
}

fn check<F: crate::variety::EngineScalar>(b: &FreeBasis, v: &Variety, opts: &EngineOptions) -> Result<bool, EngineError> {
    let space = consequences::<F>(v, b.arity, opts)?;
    if space.dim() != b.total() {
        return Ok(false);
    }
    let mut rows = space.basis().clone();
    let param = if v.param == Param::Generic { Param::Generic } else { v.param.clone() };
    for e in b.elements() {
        let e = e.try_map_coeffs(|c| F::convert(c, &param))?;
        if !rows.insert(&space.to_sparse(&e)) {
            return Ok(false);
        }
    }
    Ok(true)
}

impl fmt::Display for FreeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.sizes().iter().map(|s| s.to_string()).collect();
        write!(f, "{} = {}", sizes.join(" + "), self.total())
    }
}

fn x(i: u32) -> Tree {
    Tree::Leaf(i)
}

fn dot(a: Tree, b: Tree) -> Tree {
    Tree::node(DOT, a, b)
}

fn br(a: Tree, b: Tree) -> Tree {
    Tree::node(BRACKET, a, b)
}

/// Left-normed Lie monomials `[..[x_a, x_σ2]..,x_σk]` where `a` is the least
/// label and `σ` runs over orderings of the rest.
fn lie_basis(labels: &[u32]) -> Vec<Tree> {
    let (&first, rest) = labels.split_first().expect("nonempty label set");
    if rest.is_empty() {
        return vec![x(first)];
    }
    Permutation::all(rest.len())
        .iter()
        .map(|p| {
            p.images()
                .iter()
                .fold(x(first), |acc, &i| br(acc, x(rest[i as usize - 1])))
        })
        .collect()
}

fn commutative(n: u32) -> Tree {
    (2..=n).fold(x(1), |acc, i| dot(acc, x(i)))
}

/// Spanning families of the multilinear component of arity `n`.
pub fn free_delta_p_basis(n: usize) -> FreeBasis {
    assert!(n >= 1, "arity must be positive");
    let all: Vec<u32> = (1..=n as u32).collect();
    let families = match n {
        1 => vec![Family { name: "generators", trees: vec![x(1)] }],
        2 => vec![
            Family { name: "lie", trees: vec![br(x(1), x(2))] },
            Family { name: "commutative", trees: vec![dot(x(1), x(2))] },
        ],
        3 => vec![
            Family {
                name: "lie",
                trees: vec![br(x(1), br(x(2), x(3))), br(x(2), br(x(1), x(3)))],
            },
            Family {
                name: "mixed",
                trees: vec![
                    dot(x(1), br(x(2), x(3))),
                    dot(x(2), br(x(1), x(3))),
                    dot(x(3), br(x(1), x(2))),
                ],
            },
            Family { name: "commutative", trees: vec![commutative(3)] },
        ],
        4 => vec![
            Family { name: "lie", trees: lie_basis(&all) },
            Family {
                name: "mixed",
                trees: vec![
                    dot(x(1), br(x(2), br(x(3), x(4)))),
                    dot(x(1), br(x(3), br(x(2), x(4)))),
                ],
            },
            Family {
                name: "bracket-products",
                trees: vec![
                    dot(br(x(1), x(2)), br(x(3), x(4))),
                    dot(br(x(1), x(3)), br(x(2), x(4))),
                    dot(br(x(1), x(4)), br(x(2), x(3))),
                ],
            },
            Family { name: "commutative", trees: vec![commutative(4)] },
        ],
        _ => vec![
            Family { name: "lie", trees: lie_basis(&all) },
            Family {
                name: "mixed",
                trees: lie_basis(&all[1..]).into_iter().map(|t| dot(x(1), t)).collect(),
            },
            Family { name: "commutative", trees: vec![commutative(n as u32)] },
        ],
    };
    FreeBasis { arity: n, families }
}
