use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use super::{vector_text, Algebra};
use crate::error::AlgebraError;
use crate::scalar::{parse_rational, Rational};
use crate::term::{OpSymbol, Signature, Symmetry};

fn syntax(line: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Syntax { line, msg: msg.into() }
}

fn basis_index(tok: &str, line: usize) -> Result<usize, AlgebraError> {
    tok.strip_prefix('e')
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&i| i > 0)
        .ok_or_else(|| syntax(line, format!("expected a basis vector e<i>, found '{tok}'")))
}

/// Parses `c*e3 - e4 + 1/2 e5` into a coefficient vector.
fn parse_combination(text: &str, dim: usize, line: usize) -> Result<Vec<Rational>, AlgebraError> {
    let mut out = vec![Rational::zero(); dim];
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(out);
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (k, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && k > 0 {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.strip_prefix('+').unwrap_or(&t)),
        };
        let pos = body.rfind('e').ok_or_else(|| syntax(line, format!("term '{t}' has no basis vector")))?;
        let (coef, vec) = body.split_at(pos);
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let mut c = if coef.is_empty() {
            Rational::from_integer(1.into())
        } else {
            parse_rational(coef).ok_or_else(|| syntax(line, format!("bad coefficient '{coef}'")))?
        };
        if neg {
            c = -c;
        }
        let i = basis_index(vec, line)?;
        if i > dim {
            return Err(AlgebraError::Dimension(format!("line {line}: e{i} exceeds dimension {dim}")));
        }
        out[i - 1] += c;
    }
    Ok(out)
}

fn default_symmetry(name: &str) -> Symmetry {
    match name {
        "dot" => Symmetry::Symmetric,
        "bracket" => Symmetry::Antisymmetric,
        _ => Symmetry::None,
    }
}

/// Signature of an algebra without product lines: every catalog operation,
/// all zero.
pub(super) fn universal_signature() -> Signature {
    let mut ops = Signature::poisson().ops().to_vec();
    ops.push(OpSymbol::new("mul", Symmetry::None));
    Signature::new(ops).expect("valid signature")
}

/// Reads the algebra format: `dim <d>`, optional `name <text>`,
/// `param <name> = <rational>` and `op <name> <symmetry>` lines, then
/// products `<op> e<i> e<j> = <combination>`. Mirrors of symmetric and
/// antisymmetric products are filled in; undeclared products are zero.
/// Without `op` lines, `dot` is symmetric, `bracket` antisymmetric and
/// other names plain, and `dot`/`bracket` always come together.
pub fn load_algebra(text: &str) -> Result<Algebra, AlgebraError> {
    let mut name = String::from("algebra");
    let mut dim = None;
    let mut params = Vec::new();
    let mut declared: Vec<OpSymbol> = Vec::new();
    let mut products: Vec<(usize, String, usize, usize, String)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        match head {
            "name" => name = rest.to_string(),
            "dim" => {
                let d: usize = rest.parse().map_err(|_| syntax(line, "dim needs a nonnegative integer"))?;
                dim = Some(d);
            }
            "param" => {
                let (n, v) = rest.split_once('=').ok_or_else(|| syntax(line, "expected param <name> = <value>"))?;
                let v = parse_rational(v).ok_or_else(|| syntax(line, "bad parameter value"))?;
                params.push((n.trim().to_string(), v));
            }
            "op" => {
                let mut it = rest.split_whitespace();
                let n = it.next().ok_or_else(|| syntax(line, "expected op <name> [symmetry]"))?;
                let s = match it.next() {
                    Some(s) => Symmetry::parse(s).ok_or_else(|| syntax(line, format!("unknown symmetry '{s}'")))?,
                    None => default_symmetry(n),
                };
                declared.push(OpSymbol::new(n, s));
            }
            _ => {
                let (lhs, rhs) = body.split_once('=').ok_or_else(|| syntax(line, "expected a product line"))?;
                let toks: Vec<&str> = lhs.split_whitespace().collect();
                let [op, i, j] = toks[..] else {
                    return Err(syntax(line, "expected <op> e<i> e<j> = <combination>"));
                };
                let (i, j) = (basis_index(i, line)?, basis_index(j, line)?);
                products.push((line, op.to_string(), i, j, rhs.trim().to_string()));
            }
        }
    }
    let dim = dim.ok_or_else(|| syntax(0, "missing dim line"))?;
    let signature = if !declared.is_empty() {
        Signature::new(declared).map_err(|e| syntax(0, e.to_string()))?
    } else if products.is_empty() {
        universal_signature()
    } else {
        let mut names: Vec<&str> = Vec::new();
        for (_, op, ..) in &products {
            if !names.contains(&op.as_str()) {
                names.push(op);
            }
        }
        if names.iter().all(|n| *n == "dot" || *n == "bracket") {
            Signature::poisson()
        } else {
            let ops = names.iter().map(|n| OpSymbol::new(n, default_symmetry(n))).collect();
            Signature::new(ops).map_err(|e| syntax(0, e.to_string()))?
        }
    };
    let mut a = Algebra::zero(&name, dim, signature);
    for (n, v) in params {
        a.set_param(&n, v);
    }
    let mut seen: BTreeMap<(u8, usize, usize), (usize, Vec<Rational>)> = BTreeMap::new();
    for (line, op, i, j, rhs) in products {
        let o = a.signature.index_of(&op).ok_or_else(|| AlgebraError::UnknownOp(op.clone()))?;
        if i > dim || j > dim {
            return Err(AlgebraError::Dimension(format!("line {line}: e{} exceeds dimension {dim}", i.max(j))));
        }
        let v = parse_combination(&rhs, dim, line)?;
        let mirror = match a.signature.symmetry(o) {
            Symmetry::Symmetric => Some(v.clone()),
            Symmetry::Antisymmetric => Some(v.iter().map(|c| -c.clone()).collect()),
            Symmetry::None => None,
        };
        if let Some((l, prev)) = seen.get(&(o, i, j)) {
            if *prev != v {
                return Err(AlgebraError::Inconsistent(format!(
                    "line {line}: {op}(e{i},e{j}) conflicts with line {l}"
                )));
            }
        }
        if let Some(m) = mirror {
            if let Some((l, prev)) = seen.get(&(o, j, i)) {
                if *prev != m {
                    return Err(AlgebraError::Inconsistent(format!(
                        "line {line}: {op}(e{i},e{j}) conflicts with {op}(e{j},e{i}) on line {l}"
                    )));
                }
            }
            seen.insert((o, j, i), (line, m));
        }
        seen.insert((o, i, j), (line, v.clone()));
        a.set_product(o, i, j, v).map_err(|e| match e {
            AlgebraError::Inconsistent(m) => AlgebraError::Inconsistent(format!("line {line}: {m}")),
            e => e,
        })?;
    }
    Ok(a)
}

/// Writes an algebra in the format read by [`load_algebra`], listing each
/// nonzero product once.
pub fn write_algebra(a: &Algebra) -> String {
    let mut s = String::new();
    writeln!(s, "name {}", a.name).unwrap();
    writeln!(s, "dim {}", a.dim()).unwrap();
    for (n, v) in a.params() {
        writeln!(s, "param {n} = {v}").unwrap();
    }
    for op in a.signature().ops() {
        writeln!(s, "op {} {}", op.name, op.symmetry).unwrap();
    }
    for (o, op) in a.signature().ops().iter().enumerate() {
        for i in 1..=a.dim() {
            for j in 1..=a.dim() {
                if op.symmetry != Symmetry::None && j < i {
                    continue;
                }
                let v = a.product(o as u8, i, j);
                if v.is_empty() {
                    continue;
                }
                let dense = crate::linalg::dense_from_sparse(v, a.dim());
                writeln!(s, "{} e{i} e{j} = {}", op.name, vector_text(&dense)).unwrap();
            }
        }
    }
    s
}
