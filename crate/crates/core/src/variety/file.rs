use std::fmt::Write as _;

use super::{Param, Variety};
use crate::error::{FileError, TermError};
use crate::scalar::parse_rational;
use crate::term::{multilinearize, parse_raw, OpSymbol, Signature, Symmetry};

const DEFAULT_OPS: [(&str, Symmetry); 3] = [
    ("dot", Symmetry::Symmetric),
    ("bracket", Symmetry::Antisymmetric),
    ("mul", Symmetry::None),
];

fn mentions(text: &str, op: &str) -> bool {
    text.match_indices(op).any(|(i, _)| {
        let before = text[..i].chars().next_back();
        let after = text[i + op.len()..].trim_start().chars().next();
        !before.is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') && after == Some('(')
    })
}

/// Reads the line-oriented variety format:
///
/// ```text
/// # comment
/// name delta-poisson
/// op dot symmetric
/// op bracket antisymmetric
/// param delta
/// identity: bracket(dot(x1,x2),x3) - d*dot(x1,bracket(x2,x3)) - d*dot(bracket(x1,x3),x2)
/// ```
///
/// Without `op` lines the signature consists of whichever of `dot`
/// (symmetric), `bracket` (antisymmetric) and `mul` (no symmetry) occur.
/// Identities that are not multilinear are replaced by the full
/// linearizations of their homogeneous components.
pub fn parse_variety(text: &str) -> Result<Variety, FileError> {
    let mut name = String::from("unnamed");
    let mut ops = Vec::new();
    let mut param = Param::Generic;
    let mut exprs: Vec<(usize, &str)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let l = raw.split('#').next().unwrap().trim();
        if l.is_empty() {
            continue;
        }
        let syntax = |msg: &str| FileError::Syntax { line, msg: msg.to_string() };
        if let Some(rest) = l.strip_prefix("identity:") {
            exprs.push((line, rest.trim()));
            continue;
        }
        let words: Vec<&str> = l.split_whitespace().collect();
        match words[0] {
            "name" if words.len() == 2 => name = words[1].to_string(),
            "op" => {
                let [_, n, s] = words[..] else { return Err(syntax("expected 'op <name> <symmetry>'")) };
                let sym = Symmetry::parse(s).ok_or_else(|| syntax("unknown symmetry"))?;
                ops.push(OpSymbol::new(n, sym));
            }
            "param" => {
                let rest = l["param".len()..].trim();
                let (pname, value) = match rest.split_once('=') {
                    Some((a, b)) => (a.trim(), Some(b.trim())),
                    None => (rest, None),
                };
                if pname != "delta" && pname != "d" {
                    return Err(syntax("only the parameter 'delta' is supported"));
                }
                param = match value {
                    None => Param::Generic,
                    Some(v) => Param::Value(parse_rational(v).ok_or_else(|| syntax("bad rational value"))?),
                };
            }
            _ => return Err(syntax("expected 'op', 'param', 'name' or 'identity:'")),
        }
    }
    if ops.is_empty() {
        for (n, s) in DEFAULT_OPS {
            if exprs.iter().any(|(_, e)| mentions(e, n)) {
                ops.push(OpSymbol::new(n, s));
            }
        }
    }
    let signature =
        Signature::new(ops).map_err(|e| FileError::Term { line: 0, source: e })?;
    let mut identities = Vec::new();
    for (line, e) in exprs {
        let wrap = |source: TermError| FileError::Term { line, source };
        let raw = parse_raw(e, &signature).map_err(wrap)?;
        identities.extend(multilinearize(&raw, &signature));
    }
    let mut v = Variety::new(&name, signature, identities);
    v.param = param;
    Ok(v)
}

/// Writes a variety in the format read by [`parse_variety`].
pub fn write_variety(v: &Variety) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name {}", v.name);
    for op in v.signature.ops() {
        let _ = writeln!(out, "op {} {}", op.name, op.symmetry);
    }
    match &v.param {
        Param::Generic if v.uses_param() => out.push_str("param delta\n"),
        Param::Generic => {}
        Param::Value(q) => {
            let _ = writeln!(out, "param delta = {q}");
        }
    }
    for e in &v.identities {
        let _ = writeln!(out, "identity: {}", e.to_text(&v.signature));
    }
    out
}
