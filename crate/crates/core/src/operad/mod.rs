//! Binary quadratic operads: presentations, Koszul duals, generating series
//! and free bases.

mod basis;
mod series;

use rustc_hash::FxHashMap;

use crate::error::OperadError;
use crate::linalg::{compact, dense_from_sparse, RowBasis, SparseVec};
use crate::scalar::{Rational, RationalFunction, Scalar};
use crate::term::{
    act, enumerate_monomials, Element, Monomial, OpSymbol, Permutation, Signature, Symmetry, Tree,
};
use crate::variety::{EngineScalar, Param, Variety};

pub use basis::{free_delta_p_basis, FreeBasis};
pub use series::{compose, hilbert_series, koszulness_witness, KoszulMode, KoszulVerdict, Series};

/// Generators and arity-three relations of a binary quadratic operad.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticPresentation<F> {
    pub signature: Signature,
    pub relations: Vec<Element<F>>,
}

impl<F: EngineScalar> QuadraticPresentation<F> {
    pub fn new(signature: Signature, relations: Vec<Element<F>>) -> Result<Self, OperadError> {
        let relations: Vec<_> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        if let Some(r) = relations.iter().find(|r| r.arity() != 3) {
            return Err(OperadError::NotQuadratic(r.arity()));
        }
        Ok(QuadraticPresentation { signature, relations })
    }

    pub fn from_variety(v: &Variety) -> Result<Self, OperadError> {
        Self::new(v.signature.clone(), v.coefficients::<F>()?)
    }
}

/// Arity-three monomial basis with its index.
struct Arity3 {
    monomials: Vec<Monomial>,
    index: FxHashMap<Monomial, u32>,
}

impl Arity3 {
    fn new(sig: &Signature) -> Self {
        let monomials = enumerate_monomials(3, sig);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        Arity3 { monomials, index }
    }

    fn sparse<F: Scalar>(&self, e: &Element<F>) -> SparseVec<F> {
        compact(e.terms().map(|(m, c)| (self.index[m], c.clone())).collect())
    }
}

/// Row space of the relations closed under `S_3`.
fn relation_space<F: EngineScalar>(p: &QuadraticPresentation<F>, a3: &Arity3) -> RowBasis<F> {
    let mut b = RowBasis::new(a3.monomials.len());
    for r in &p.relations {
        for s in Permutation::all(3) {
            b.insert(&a3.sparse(&act(&s, r, &p.signature)));
        }
    }
    b
}

fn permutation_sign(word: &[u8]) -> bool {
    let mut neg = false;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                neg = !neg;
            }
        }
    }
    neg
}

/// Sign of the pairing at a canonical arity-three monomial: the sign of its
/// leaf permutation, flipped once more when a plain root has its inner
/// subtree on the right.
fn pairing_negative(m: &Monomial) -> bool {
    let inner_right = m.shape() == [0, 1, 0, 1, 1];
    permutation_sign(m.leaves()) ^ inner_right
}

/// Signature of the dual operad and the index of each dual generator in it.
///
/// Every generator's dual has the opposite symmetry. Symmetric and
/// antisymmetric generators are paired in order of appearance and the dual of
/// each member of a pair takes the name and position of its partner, so a
/// signature with one symmetric and one antisymmetric operation is its own
/// dual signature. Unpaired generators keep name and position.
pub fn dual_signature(sig: &Signature) -> (Signature, Vec<u8>) {
    let sym: Vec<usize> =
        (0..sig.len()).filter(|&i| sig.ops()[i].symmetry == Symmetry::Symmetric).collect();
    let anti: Vec<usize> =
        (0..sig.len()).filter(|&i| sig.ops()[i].symmetry == Symmetry::Antisymmetric).collect();
    let mut map: Vec<u8> = (0..sig.len() as u8).collect();
    for (&s, &a) in sym.iter().zip(&anti) {
        map[s] = a as u8;
        map[a] = s as u8;
    }
    let mut ops: Vec<OpSymbol> = sig.ops().to_vec();
    for (i, op) in sig.ops().iter().enumerate() {
        let j = map[i] as usize;
        ops[j] = OpSymbol::new(&sig.ops()[j].name, op.symmetry.flipped());
    }
    (Signature::new(ops).expect("names are unchanged"), map)
}

/// Koszul dual presentation: the annihilator of the `S_3`-closed relation
/// space under the sign-twisted pairing of arity-three monomials.
pub fn koszul_dual<F: EngineScalar>(
    p: &QuadraticPresentation<F>,
) -> Result<QuadraticPresentation<F>, OperadError> {
    let a3 = Arity3::new(&p.signature);
    let space = relation_space(p, &a3);
    let (dsig, map) = dual_signature(&p.signature);
    let mut relations = Vec::new();
    for z in space.nullspace_vectors() {
        let mut e = Element::zero(3);
        for (c, x) in z {
            let m = &a3.monomials[c as usize];
            let x = if pairing_negative(m) { x.neg_ref() } else { x };
            e.add_tree(&m.map_ops(|o| map[o as usize]).to_tree(), x, &dsig);
        }
        relations.push(e);
    }
    QuadraticPresentation::new(dsig, relations)
}

/// Koszul dual of a quadratic variety, with the same parameter mode.
pub fn koszul_dual_variety(v: &Variety) -> Result<Variety, OperadError> {
    let relations: Vec<Element<RationalFunction>> = if v.needs_generic() {
        koszul_dual(&QuadraticPresentation::<RationalFunction>::from_variety(v)?)?.relations
    } else {
        let d = koszul_dual(&QuadraticPresentation::<Rational>::from_variety(v)?)?;
        d.relations.iter().map(|r| r.map_coeffs(RationalFunction::constant)).collect()
    };
    let (dsig, _) = dual_signature(&v.signature);
    let mut out = Variety::new(&format!("{}-dual", v.name), dsig, relations);
    out.param = match &v.param {
        Param::Value(q) => Param::Value(q.clone()),
        Param::Generic => Param::Generic,
    };
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    Mixed,
    PureDot,
    PureBracket,
}

/// Indices of the symmetric and antisymmetric operation of a two-operation
/// signature.
fn poisson_ops(sig: &Signature) -> Option<(u8, u8)> {
    if sig.len() != 2 {
        return None;
    }
    let s = sig.ops().iter().position(|o| o.symmetry == Symmetry::Symmetric)? as u8;
    let a = sig.ops().iter().position(|o| o.symmetry == Symmetry::Antisymmetric)? as u8;
    Some((s, a))
}

fn block_columns(sig: &Signature, block: Block) -> Option<Vec<(bool, Monomial)>> {
    let (dot, br) = poisson_ops(sig)?;
    let l = |i| Tree::Leaf(i);
    let pairs = [(1, 2, 3), (1, 3, 2), (2, 3, 1)];
    let mut trees = Vec::new();
    match block {
        Block::Mixed => {
            for (a, b, c) in pairs {
                trees.push(Tree::node(br, Tree::node(dot, l(a), l(b)), l(c)));
            }
            for (a, b, c) in pairs {
                trees.push(Tree::node(dot, Tree::node(br, l(a), l(b)), l(c)));
            }
        }
        Block::PureDot | Block::PureBracket => {
            let op = if block == Block::PureDot { dot } else { br };
            for (a, b, c) in pairs {
                trees.push(Tree::node(op, Tree::node(op, l(a), l(b)), l(c)));
            }
        }
    }
    Some(trees.iter().map(|t| crate::term::normalize_tree(t, sig).unwrap()).collect())
}

/// Relabelings in the order `(x,y,z), (y,x,z), (z,x,y), (x,z,y), (z,y,x),
/// (y,z,x)`.
fn printed_order() -> Vec<Permutation> {
    [[1, 2, 3], [2, 1, 3], [3, 1, 2], [1, 3, 2], [3, 2, 1], [2, 3, 1]]
        .iter()
        .map(|w| Permutation::from_images(w.to_vec()).unwrap())
        .collect()
}

/// Coefficient rows of the relations and their relabelings restricted to a
/// block. Block columns are ordered `{xy,z}, {xz,y}, {yz,x}, {x,y}z, {x,z}y,
/// {y,z}x` for the mixed block and `(xy)z, (xz)y, (yz)x` for the pure ones.
/// Zero and repeated rows are skipped.
pub fn dual_relation_matrix<F: EngineScalar>(p: &QuadraticPresentation<F>, block: Block) -> Vec<Vec<F>> {
    let Some(cols) = block_columns(&p.signature, block) else { return Vec::new() };
    let mut rows: Vec<Vec<F>> = Vec::new();
    for r in &p.relations {
        for s in printed_order() {
            let e = act(&s, r, &p.signature);
            let row: Vec<F> =
                cols.iter()
                    .map(|(neg, m)| {
                        let c = e.coefficient(m).cloned().unwrap_or_else(F::zero);
                        if *neg { c.neg_ref() } else { c }
                    })
                    .collect();
            if row.iter().all(|x| x.is_zero()) || rows.contains(&row) {
                continue;
            }
            rows.push(row);
        }
    }
    rows
}

/// Dimensions of the intersections of the relation space with each block
/// and the total dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDims {
    pub mixed: usize,
    pub pure_dot: usize,
    pub pure_bracket: usize,
    pub total: usize,
}

impl BlockDims {
    /// Whether the relation space splits along the three blocks.
    pub fn is_block_diagonal(&self) -> bool {
        self.mixed + self.pure_dot + self.pure_bracket == self.total
    }
}

pub fn block_dims<F: EngineScalar>(p: &QuadraticPresentation<F>) -> Option<BlockDims> {
    poisson_ops(&p.signature)?;
    let a3 = Arity3::new(&p.signature);
    let space = relation_space(p, &a3);
    let rows: Vec<Vec<F>> =
        space.rows().into_iter().map(|r| dense_from_sparse(r, a3.monomials.len())).collect();
    let within = |block: Block| {
        let cols: Vec<u32> =
            block_columns(&p.signature, block).unwrap().iter().map(|(_, m)| a3.index[m]).collect();
        let mut outside = RowBasis::new(a3.monomials.len());
        for r in &rows {
            let v: SparseVec<F> = r
                .iter()
                .enumerate()
                .filter(|(i, x)| !x.is_zero() && !cols.contains(&(*i as u32)))
                .map(|(i, x)| (i as u32, x.clone()))
                .collect();
            outside.insert(&v);
        }
        space.rank() - outside.rank()
    };
    Some(BlockDims {
        mixed: within(Block::Mixed),
        pure_dot: within(Block::PureDot),
        pure_bracket: within(Block::PureBracket),
        total: space.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use crate::variety::{catalog, equivalent, EngineOptions};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn commutative_dual_is_lie() {
        let com = catalog::variety("commutative-associative").unwrap();
        let dual = koszul_dual_variety(&com).unwrap();
        assert_eq!(dual.signature.ops()[0].symmetry, Symmetry::Antisymmetric);
        let lie = catalog::variety("lie").unwrap();
        let renamed = Variety {
            signature: Signature::new(vec![OpSymbol::new("dot", Symmetry::Antisymmetric)]).unwrap(),
            ..lie.clone()
        };
        assert!(equivalent(&dual, &renamed, 3, &EngineOptions::default()).unwrap());
    }

    #[test]
    fn associative_operad_is_self_dual() {
        let a = catalog::variety("associator").unwrap();
        let d = koszul_dual_variety(&a).unwrap();
        assert_eq!(d.signature, Signature::magma());
        assert!(equivalent(&a, &d, 3, &EngineOptions::default()).unwrap());
    }

    #[test]
    fn pre_lie_dual_has_perm_dimensions() {
        let pl = catalog::variety("pre-lie").unwrap();
        let d = koszul_dual_variety(&pl).unwrap();
        let o = EngineOptions::default();
        assert_eq!(crate::variety::dims_up_to(&d, 4, &o).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn delta_poisson_block_matrix() {
        let v = catalog::variety("delta-poisson").unwrap().specialize(&q(2));
        let p = QuadraticPresentation::<Rational>::from_variety(&v).unwrap();
        let m = dual_relation_matrix(&p, Block::Mixed);
        let expect = [[1, 0, 0, 0, -2, -2], [0, 1, 0, -2, 0, 2], [0, 0, 1, 2, 2, 0]];
        assert_eq!(m.len(), 3);
        for (row, e) in m.iter().zip(expect) {
            assert_eq!(row, &e.iter().map(|&x| q(x)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn duality_of_dimensions() {
        let v = catalog::variety("anti-poisson").unwrap();
        let p = QuadraticPresentation::<Rational>::from_variety(&v).unwrap();
        let d = koszul_dual(&p).unwrap();
        let a3 = Arity3::new(&p.signature);
        let r = relation_space(&p, &a3).rank();
        let rd = relation_space(&d, &a3).rank();
        assert_eq!(r + rd, 12);
        let bd = block_dims(&d).unwrap();
        assert!(bd.is_block_diagonal() || bd.mixed > 0);
    }

    fn self_dual(v: &Variety) -> bool {
        let d = koszul_dual_variety(v).unwrap();
        assert_eq!(d.signature, v.signature);
        equivalent(v, &d, 3, &EngineOptions::default()).unwrap()
    }

    #[test]
    fn delta_poisson_is_self_dual() {
        let v = catalog::variety("delta-poisson").unwrap();
        for x in [rational(-1, 1), rational(1, 2), rational(2, 1)] {
            assert!(self_dual(&v.specialize(&x)), "{x}");
        }
        assert!(self_dual(&v));
        let t = catalog::variety("transposed-delta-poisson").unwrap();
        assert!(self_dual(&t));
        assert!(self_dual(&t.specialize(&rational(1, 2))));
    }

    #[test]
    fn delta_poisson_dual_matches_displayed_identities() {
        let v = catalog::variety("delta-poisson").unwrap();
        let d = koszul_dual_variety(&v).unwrap();
        let shown = Variety::from_exprs(
            "shown",
            Signature::poisson(),
            &[
                "dot(dot(x1,x2),x3) - dot(x1,dot(x2,x3))",
                "bracket(bracket(x1,x2),x3) + bracket(bracket(x2,x3),x1) + bracket(bracket(x3,x1),x2)",
                "-d*dot(bracket(x1,x2),x3) + d*dot(bracket(x2,x3),x1) + bracket(dot(x1,x3),x2)",
                "d*dot(bracket(x1,x3),x2) + d*dot(bracket(x2,x3),x1) + bracket(dot(x1,x3),x2) + bracket(dot(x2,x3),x1)",
                "bracket(dot(x1,x2),x3) + bracket(dot(x1,x3),x2) + bracket(dot(x2,x3),x1)",
            ],
        )
        .unwrap();
        assert!(equivalent(&d, &shown, 3, &EngineOptions::default()).unwrap());
    }

    #[test]
    fn mixed_poisson_matrix_and_dual() {
        let v = catalog::variety("mixed-poisson-combined").unwrap();
        let p = QuadraticPresentation::<Rational>::from_variety(&v).unwrap();
        let m = dual_relation_matrix(&p, Block::Mixed);
        let expect = [
            [1, 0, 0, 0, 1, -1],
            [1, 0, 0, 0, -1, 1],
            [0, 1, 0, -1, 0, -1],
            [0, 1, 0, 1, 0, 1],
            [0, 0, 1, 1, -1, 0],
            [0, 0, 1, -1, 1, 0],
        ];
        assert_eq!(m.len(), 6);
        for (row, e) in m.iter().zip(expect) {
            assert_eq!(row, &e.iter().map(|&x| q(x)).collect::<Vec<_>>());
        }
        let d = koszul_dual(&p).unwrap();
        assert!(dual_relation_matrix(&d, Block::Mixed).is_empty());
        let bd = block_dims(&d).unwrap();
        assert_eq!(bd, BlockDims { mixed: 0, pure_dot: 2, pure_bracket: 1, total: 3 });
        let mp = catalog::variety("mixed-poisson").unwrap();
        let dv = koszul_dual_variety(&mp).unwrap();
        let dims = crate::variety::dims_up_to(&dv, 4, &EngineOptions::default()).unwrap();
        assert_eq!(dims, vec![1, 2, 9, 67]);
    }

    #[test]
    fn biduality() {
        let o = EngineOptions::default();
        for name in ["anti-poisson", "mixed-poisson", "commutative-associative", "pre-lie"] {
            let v = catalog::variety(name).unwrap();
            let dd = koszul_dual_variety(&koszul_dual_variety(&v).unwrap()).unwrap();
            assert_eq!(dd.signature, v.signature);
            assert!(equivalent(&v, &dd, 3, &o).unwrap(), "{name}");
        }
    }

    #[test]
    fn rejects_non_quadratic() {
        let v = catalog::variety("zero-a").unwrap_or_else(|| {
            Variety::from_exprs("z", Signature::poisson(), &["bracket(x1,dot(dot(x2,x3),x4))"]).unwrap()
        });
        assert!(matches!(koszul_dual_variety(&v), Err(OperadError::NotQuadratic(4))));
    }
}
