use super::{Element, Signature, Symmetry, Tree};
use crate::error::TermError;
use crate::scalar::{Rational, Scalar};

fn only_op(sig: &Signature, sym: Symmetry) -> Option<u8> {
    let mut it = sig.ops().iter().enumerate().filter(|(_, o)| o.symmetry == sym);
    let first = it.next()?.0 as u8;
    if it.next().is_some() {
        None
    } else {
        Some(first)
    }
}

fn expand(
    t: &Tree,
    rule: &impl Fn(u8) -> Vec<(Rational, u8, bool)>,
) -> Vec<(Rational, Tree)> {
    match t {
        Tree::Leaf(l) => vec![(Rational::from_integer(1.into()), Tree::Leaf(*l))],
        Tree::Node(op, a, b) => {
            let ea = expand(a, rule);
            let eb = expand(b, rule);
            let mut out = Vec::new();
            for (c, new_op, swap) in rule(*op) {
                for (ca, ta) in &ea {
                    for (cb, tb) in &eb {
                        let coef = &(&c * ca) * cb;
                        let t = if swap {
                            Tree::node(new_op, tb.clone(), ta.clone())
                        } else {
                            Tree::node(new_op, ta.clone(), tb.clone())
                        };
                        out.push((coef, t));
                    }
                }
            }
            out
        }
    }
}

fn rewrite<F: Scalar>(
    e: &Element<F>,
    to: &Signature,
    rule: impl Fn(u8) -> Vec<(Rational, u8, bool)>,
) -> Element<F> {
    let mut out = Element::zero(e.arity());
    for (m, c) in e.terms() {
        for (k, t) in expand(&m.to_tree(), &rule) {
            out.add_tree(&t, c.mul_ref(&F::from_rational(&k)), to);
        }
    }
    out
}

/// Rewrites an element in a signature with one operation `ab` without
/// symmetry into the signature `to` with one symmetric operation `a·b` and
/// one antisymmetric operation `{a,b}`, using `ab = a·b + {a,b}`.
pub fn polarize_expr<F: Scalar>(
    e: &Element<F>,
    from: &Signature,
    to: &Signature,
) -> Result<Element<F>, TermError> {
    let (Some(_), 1) = (only_op(from, Symmetry::None), from.len()) else {
        return Err(TermError::Signature("polarization needs a single plain operation".into()));
    };
    let (Some(dot), Some(br), 2) =
        (only_op(to, Symmetry::Symmetric), only_op(to, Symmetry::Antisymmetric), to.len())
    else {
        return Err(TermError::Signature(
            "polarization target needs one symmetric and one antisymmetric operation".into(),
        ));
    };
    let one = Rational::from_integer(1.into());
    Ok(rewrite(e, to, |_| vec![(one.clone(), dot, false), (one.clone(), br, false)]))
}

/// Inverse of [`polarize_expr`]: `a·b = (ab + ba)/2`, `{a,b} = (ab - ba)/2`.
pub fn depolarize_expr<F: Scalar>(
    e: &Element<F>,
    from: &Signature,
    to: &Signature,
) -> Result<Element<F>, TermError> {
    let (Some(dot), Some(_), 2) =
        (only_op(from, Symmetry::Symmetric), only_op(from, Symmetry::Antisymmetric), from.len())
    else {
        return Err(TermError::Signature(
            "depolarization needs one symmetric and one antisymmetric operation".into(),
        ));
    };
    let (Some(mul), 1) = (only_op(to, Symmetry::None), to.len()) else {
        return Err(TermError::Signature("depolarization target needs a single plain operation".into()));
    };
    let half = Rational::new(1.into(), 2.into());
    Ok(rewrite(e, to, |op| {
        let sign = if op == dot { half.clone() } else { -half.clone() };
        vec![(half.clone(), mul, false), (sign, mul, true)]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RationalFunction;
    use crate::term::parse_expr;

    #[test]
    fn round_trips() {
        let p = Signature::poisson();
        let m = Signature::magma();
        let e = parse_expr("mul(mul(x1,x2),x3) - d*mul(x1,mul(x3,x2))", &m).unwrap();
        let back = depolarize_expr(&polarize_expr(&e, &m, &p).unwrap(), &p, &m).unwrap();
        assert_eq!(back, e);
        let f: Element<RationalFunction> =
            parse_expr("bracket(dot(x1,x2),x3) - d*dot(x1,bracket(x2,x3))", &p).unwrap();
        let back = polarize_expr(&depolarize_expr(&f, &p, &m).unwrap(), &m, &p).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn commutator_of_product() {
        let p = Signature::poisson();
        let m = Signature::magma();
        let e = parse_expr("bracket(x1,x2)", &p).unwrap();
        let d = depolarize_expr(&e, &p, &m).unwrap();
        assert_eq!(d.to_text(&m), "1/2*mul(x1,x2) - 1/2*mul(x2,x1)");
    }
}
