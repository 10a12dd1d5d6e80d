//! Named identities and varieties.

use super::Variety;
use crate::scalar::{Rational, RationalFunction};
use crate::term::{depolarize_expr, parse_expr, Element, OpSymbol, Signature, Symmetry};

/// Translates juxtaposition notation over the letters `x y z` into `mul`
/// terms: `(xy)z` becomes `mul(mul(x1,x2),x3)` and `x(yz)` becomes
/// `mul(x1,mul(x2,x3))`.
pub fn juxtaposed(text: &str) -> String {
    let var = |c: u8| match c {
        b'x' => Some("x1"),
        b'y' => Some("x2"),
        b'z' => Some("x3"),
        _ => None,
    };
    let b = text.as_bytes();
    let mut out = String::new();
    let mut i = 0;
    while i < b.len() {
        let at = |k: usize| b.get(i + k).copied().unwrap_or(0);
        if at(0) == b'(' && at(3) == b')' {
            if let (Some(p), Some(q), Some(r)) = (var(at(1)), var(at(2)), var(at(4))) {
                out.push_str(&format!("mul(mul({p},{q}),{r})"));
                i += 5;
                continue;
            }
        }
        if at(1) == b'(' && at(4) == b')' {
            if let (Some(p), Some(q), Some(r)) = (var(at(0)), var(at(2)), var(at(3))) {
                out.push_str(&format!("mul({p},mul({q},{r}))"));
                i += 5;
                continue;
            }
        }
        out.push(b[i] as char);
        i += 1;
    }
    out
}

const ASSOC: &str = "dot(dot(x1,x2),x3) - dot(x1,dot(x2,x3))";
const JACOBI: &str = "bracket(bracket(x1,x2),x3) + bracket(bracket(x2,x3),x1) + bracket(bracket(x3,x1),x2)";
const DELTA_LEIBNIZ: &str = "bracket(dot(x1,x2),x3) - d*dot(x1,bracket(x2,x3)) - d*dot(bracket(x1,x3),x2)";
const TRANSPOSED_LEIBNIZ: &str =
    "dot(x1,bracket(x2,x3)) - d*bracket(dot(x1,x2),x3) - d*bracket(x2,dot(x1,x3))";

const TWO_OP: &[(&str, &[&str])] = &[
    ("assoc", &[ASSOC]),
    ("jacobi", &[JACOBI]),
    ("delta-leibniz", &[DELTA_LEIBNIZ]),
    ("transposed-delta-leibniz", &[TRANSPOSED_LEIBNIZ]),
    ("mixed-1", &["bracket(dot(x1,x2),x3)"]),
    ("mixed-2", &["dot(x1,bracket(x2,x3))"]),
    ("mixed-combined", &["bracket(dot(x1,x2),x3) + dot(bracket(x1,x3),x2) - dot(bracket(x2,x3),x1)"]),
    ("scalar-2", &["dot(x1,bracket(x2,x3)) + dot(bracket(x1,x3),x2)"]),
    ("transposed-scalar-2", &["bracket(dot(x1,x2),x3) + bracket(x2,dot(x1,x3))"]),
    (
        "delta-mixed-2",
        &["dot(x1,bracket(x2,x3)) - 1/(3*d)*bracket(dot(x1,x2),x3) - 1/(3*d)*bracket(x2,dot(x1,x3))"],
    ),
    (
        "f-manifold",
        &["bracket(dot(x1,x2),dot(x3,x4)) - dot(bracket(dot(x1,x2),x3),x4) - dot(bracket(dot(x1,x2),x4),x3) \
           - dot(x1,bracket(x2,dot(x3,x4))) - dot(x2,bracket(x1,dot(x3,x4))) + dot(dot(x1,x3),bracket(x2,x4)) \
           + dot(dot(x2,x3),bracket(x1,x4)) + dot(dot(x2,x4),bracket(x1,x3)) + dot(dot(x1,x4),bracket(x2,x3))"],
    ),
    (
        "jordan-brackets",
        &[
            "bracket(dot(bracket(x1,x2),x3),x4) + bracket(dot(bracket(x2,x4),x3),x1) + bracket(dot(bracket(x4,x1),x3),x2) \
             - dot(bracket(x1,x2),bracket(x3,x4)) - dot(bracket(x2,x4),bracket(x3,x1)) - dot(bracket(x4,x1),bracket(x3,x2))",
            "dot(bracket(dot(x2,x4),x3),x1) + dot(bracket(x1,x3),dot(x2,x4)) - dot(bracket(dot(x4,x1),x3),x2) \
             - dot(bracket(x2,x3),dot(x4,x1))",
            "bracket(dot(x4,x1),dot(x2,x3)) + bracket(dot(x4,x2),dot(x1,x3)) + bracket(dot(dot(x1,x2),x3),x4) \
             - dot(bracket(dot(x4,x2),x3),x1) - dot(bracket(dot(x4,x1),x3),x2) - dot(dot(x1,x2),bracket(x3,x4))",
        ],
    ),
    (
        "strong",
        &["dot(bracket(x1,x2),bracket(x3,x4)) + dot(bracket(x2,x4),bracket(x3,x1)) + dot(bracket(x4,x1),bracket(x3,x2))"],
    ),
    ("antiP1", &["bracket(dot(x1,x2),dot(x3,x4))"]),
    ("antiP2", &["dot(bracket(x1,dot(x2,x3)),x4)"]),
    ("antiP3", &["bracket(x1,dot(dot(x2,x3),x4))"]),
    ("antiP4", &["dot(dot(bracket(x1,x2),x3),x4)"]),
    ("antiP5", &["bracket(dot(x1,x2),bracket(x3,x4))"]),
    ("cycl", &["bracket(dot(x1,x2),x3) + bracket(dot(x2,x3),x1) + bracket(dot(x3,x1),x2)"]),
    ("idtp1", &["dot(bracket(x1,x2),x3) + dot(bracket(x2,x3),x1) + dot(bracket(x3,x1),x2)"]),
    (
        "idtp2",
        &["bracket(dot(x1,x2),bracket(x3,x4)) + bracket(dot(x1,x3),bracket(x4,x2)) + bracket(dot(x1,x4),bracket(x2,x3))"],
    ),
    (
        "idtp3",
        &["bracket(dot(x1,bracket(x2,x3)),x4) + bracket(dot(x1,bracket(x3,x4)),x2) + bracket(dot(x1,bracket(x4,x2)),x3)"],
    ),
    (
        "idtp4",
        &["dot(bracket(x1,x2),bracket(x3,x4)) + dot(bracket(x1,x3),bracket(x4,x2)) + dot(bracket(x1,x4),bracket(x2,x3))"],
    ),
    (
        "idtp5",
        &["d^2*bracket(dot(x1,x3),dot(x2,x4)) + d^2*bracket(dot(x1,x4),dot(x2,x3)) - (1-d)*dot(dot(x3,x4),bracket(x1,x2))"],
    ),
    (
        "idtp6",
        &["d*dot(x1,bracket(x3,dot(x2,x4))) + d*dot(x4,bracket(dot(x1,x2),x3)) + (1-d)*dot(dot(x2,x3),bracket(x4,x1))"],
    ),
    ("zero-a", &["bracket(x1,dot(dot(x2,x3),x4))"]),
    ("zero-b", &["dot(dot(x1,x2),bracket(x3,x4))"]),
    ("zero-c", &["dot(x1,bracket(x2,dot(x3,x4)))"]),
    ("zero-d", &["bracket(dot(x1,x2),bracket(x3,x4))"]),
    ("zero-e", &["bracket(x1,dot(x2,bracket(x3,bracket(x4,x5))))"]),
    ("zero-f", &["bracket(x1,bracket(x2,dot(x3,bracket(x4,x5))))"]),
    ("zero-g", &["bracket(x1,bracket(x2,bracket(x3,dot(x4,x5))))"]),
    ("zero-h", &["dot(x1,bracket(x2,bracket(x3,dot(x4,x5))))"]),
];

const ONE_OP: &[(&str, &[&str])] = &[
    ("f-delta", &["3*d*(xy)z + (1-2*d)*y(zx) - (2*d+1)*x(yz) - x(zy) + y(xz) + d*z(xy)"]),
    ("h1", &["(xy)z + (yx)z - (zy)x - (yz)x - x(yz) - x(zy) + z(yx) + z(xy)"]),
    (
        "h2",
        &["(xy)z - (yx)z - (zy)x - (xz)y + (yz)x + (zx)y - x(yz) + y(xz) + z(yx) + x(zy) - y(zx) - z(xy)"],
    ),
    (
        "h3-delta",
        &["(xy)z + (yx)z - z(xy) - z(yx) - d*x(yz) + d*x(zy) - d*(yz)x + d*(zy)x - d*(xz)y + d*(zx)y - d*y(xz) + d*y(zx)"],
    ),
    (
        "h4-delta",
        &["x(yz) - x(zy) + (yz)x - (zy)x - d*(xy)z - d*(yx)z + d*z(xy) + d*z(yx) - d*y(xz) - d*y(zx) + d*(xz)y + d*(zx)y"],
    ),
    ("E", &["x(yz) - x(zy) + (yz)x - (zy)x + (xz)y - (zx)y + y(xz) - y(zx)"]),
    ("D", &["(xy)z - (xz)y + (yx)z - (zx)y + y(xz) - z(xy) + y(zx) - z(yx)"]),
    ("g1", &["(xy)z + (zx)y - (zy)x + x(zy) - z(xy) - y(zx)"]),
    ("g2", &["(xz)y + (zx)y - z(xy) - z(yx)"]),
    ("A1", &["3*(xz)y - 2*x(zy) + z(xy) - y(zx) - z(yx)"]),
    ("A2", &["x(yz) + x(zy) - z(xy) - z(yx)"]),
    ("F-delta", &["(zx)y - (zy)x + (2*d-1)*(x(zy) - y(zx)) + d*(z(yx) - z(xy))"]),
    ("G-delta", &["(yz)x - (zy)x + (2*d-1)*(z(xy) - y(xz)) - (2*d+1)*(y(zx) - z(yx))"]),
    ("F1", &["(zx)y - (zy)x + x(zy) - z(xy) - y(zx) + z(yx)"]),
    ("G1", &["(yz)x - (zy)x - y(xz) + z(xy) - 3*y(zx) + 3*z(yx)"]),
    ("H", &["x(yz) - x(zy) + y(zx) - y(xz) + z(xy) - z(yx)"]),
    ("S1", &["2*(xy)z - 2*(zy)x + z(xy) - 2*y(zx) + z(yx)"]),
    ("S2", &["(yz)x - (zy)x - 2*y(zx) + 2*z(yx)"]),
    ("L", &["(xz)y - y(zx)"]),
    ("shift-assoc", &["(xy)z - y(zx)"]),
    ("cyclic-assoc", &["(xy)z - (yz)x", "(yz)x - x(yz)"]),
    ("associator", &["(xy)z - x(yz)"]),
    ("flexible", &["(xy)z - x(yz) + (zy)x - z(yx)"]),
    ("anti-flexible", &["(xy)z - x(yz) - (zy)x + z(yx)"]),
];

/// A named identity or identity system.
#[derive(Clone, Debug)]
pub struct NamedIdentity {
    pub name: &'static str,
    pub signature: Signature,
    pub elements: Vec<Element<RationalFunction>>,
}

pub fn identity_names() -> Vec<&'static str> {
    TWO_OP.iter().chain(ONE_OP).map(|e| e.0).collect()
}

/// Looks up a named identity.
pub fn identity(name: &str) -> Option<NamedIdentity> {
    if let Some((n, exprs)) = TWO_OP.iter().find(|e| e.0 == name) {
        let sig = Signature::poisson();
        let elements = exprs.iter().map(|s| parse_expr(s, &sig).expect("catalog entry parses")).collect();
        return Some(NamedIdentity { name: n, signature: sig, elements });
    }
    let (n, exprs) = ONE_OP.iter().find(|e| e.0 == name)?;
    let sig = Signature::magma();
    let elements = exprs
        .iter()
        .map(|s| parse_expr(&juxtaposed(s), &sig).expect("catalog entry parses"))
        .collect();
    Some(NamedIdentity { name: n, signature: sig, elements })
}

fn ids(names: &[&str]) -> Vec<Element<RationalFunction>> {
    names.iter().flat_map(|n| identity(n).expect("registered identity").elements).collect()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

const VARIETIES: &[(&str, &[&str])] = &[
    ("delta-poisson", &["assoc", "jacobi", "delta-leibniz"]),
    ("transposed-delta-poisson", &["assoc", "jacobi", "transposed-delta-leibniz"]),
    ("mixed-poisson", &["assoc", "jacobi", "mixed-1", "mixed-2"]),
    ("mixed-poisson-combined", &["assoc", "jacobi", "mixed-combined"]),
    ("scalar-poisson", &["assoc", "jacobi", "mixed-1", "scalar-2"]),
    ("transposed-scalar-poisson", &["assoc", "jacobi", "mixed-2", "transposed-scalar-2"]),
    ("delta-mixed-poisson", &["assoc", "jacobi", "delta-leibniz", "delta-mixed-2"]),
    ("f-manifold", &["assoc", "jacobi", "f-manifold"]),
    ("jordan-brackets", &["assoc", "jordan-brackets"]),
];

const SPECIAL: &[&str] = &[
    "anti-poisson",
    "poisson",
    "transposed-poisson",
    "depol-delta-poisson",
    "commutative-associative",
    "lie",
    "pre-lie",
];

pub fn variety_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = VARIETIES.iter().map(|e| e.0).collect();
    v.extend(SPECIAL);
    v.extend(ONE_OP.iter().map(|e| e.0));
    v
}

fn single(name: &str, op: &str, sym: Symmetry, expr: &str) -> Variety {
    let sig = Signature::new(vec![OpSymbol::new(op, sym)]).unwrap();
    let e = parse_expr(expr, &sig).expect("catalog entry parses");
    Variety::new(name, sig, vec![e])
}

fn renamed(v: Variety, name: &str) -> Variety {
    Variety { name: name.to_string(), ..v }
}

/// Looks up a named variety. Every one-operation identity name also names the
/// variety it defines.
pub fn variety(name: &str) -> Option<Variety> {
    let half = Rational::new(1.into(), 2.into());
    match name {
        "anti-poisson" => return Some(renamed(variety("delta-poisson")?.specialize(&q(-1)), name)),
        "poisson" => return Some(renamed(variety("delta-poisson")?.specialize(&q(1)), name)),
        "transposed-poisson" => {
            return Some(renamed(variety("transposed-delta-poisson")?.specialize(&half), name))
        }
        "depol-delta-poisson" => return Some(depolarized(&variety("delta-poisson")?)),
        "commutative-associative" => return Some(single(name, "dot", Symmetry::Symmetric, ASSOC)),
        "lie" => return Some(single(name, "bracket", Symmetry::Antisymmetric, JACOBI)),
        "pre-lie" => {
            return Some(single(
                name,
                "mul",
                Symmetry::None,
                "mul(mul(x1,x2),x3) - mul(x1,mul(x2,x3)) - mul(mul(x2,x1),x3) + mul(x2,mul(x1,x3))",
            ))
        }
        _ => {}
    }
    if let Some((n, list)) = VARIETIES.iter().find(|e| e.0 == name) {
        return Some(Variety::new(n, Signature::poisson(), ids(list)));
    }
    let id = identity(name)?;
    if id.signature != Signature::magma() {
        return None;
    }
    Some(Variety::new(name, id.signature, id.elements))
}

/// The same variety in terms of one plain operation `mul`, via
/// `a·b = (ab + ba)/2`, `{a,b} = (ab - ba)/2`.
pub fn depolarized(v: &Variety) -> Variety {
    let m = Signature::magma();
    let ids = v
        .identities
        .iter()
        .map(|e| depolarize_expr(e, &v.signature, &m).expect("two-operation signature"))
        .collect();
    Variety { name: format!("depol-{}", v.name), signature: m, identities: ids, param: v.param.clone() }
}
