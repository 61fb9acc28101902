//! Text formats for algebras, Σ-modules and O-trees.
//!
//! All files are UTF-8 with `#` line comments and a `format = 1` header.
//! Parse errors carry line and column positions.

use std::collections::BTreeMap;
use std::fmt;

use opal::algebra_core::{AlgebraKind, StructureConstantAlgebra};
use opal::exact_linalg::{Scalar, ScalarDomain, SparseMatrix, SparseVec};
use opal::operad_kit::{SigmaComponent, SigmaModuleTruncation};
use opal::plus_construction::{EvenVertex, OTree, OddVertex};

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

/// Lines with comments stripped, 1-based line numbers, blanks skipped.
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| {
            let stripped = match l.find('#') {
                Some(pos) => &l[..pos],
                None => l,
            };
            (i + 1, stripped.trim().to_string())
        })
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn split_kv(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once('=')?;
    Some((k.trim(), v.trim()))
}

fn parse_scalar(token: &str, domain: ScalarDomain, line: usize) -> Result<Scalar, ParseError> {
    let parse_int = |s: &str| -> Result<i64, ParseError> {
        s.trim().parse::<i64>().map_err(|_| ParseError {
            line,
            column: 1,
            message: format!("bad integer `{s}`"),
        })
    };
    match token.split_once('/') {
        None => Ok(domain.from_int(parse_int(token)?)),
        Some((p, q)) => domain
            .from_ratio(parse_int(p)?, parse_int(q)?)
            .map_err(|e| ParseError {
                line,
                column: 1,
                message: e.to_string(),
            }),
    }
}

fn parse_domain(value: &str, line: usize) -> Result<ScalarDomain, ParseError> {
    if value == "Q" {
        return Ok(ScalarDomain::Rational);
    }
    if let Some(p) = value.strip_prefix("Fp:") {
        let p: u64 = p.parse().map_err(|_| ParseError {
            line,
            column: 1,
            message: format!("bad modulus `{p}`"),
        })?;
        return ScalarDomain::fp(p).map_err(|e| ParseError {
            line,
            column: 1,
            message: e.to_string(),
        });
    }
    err(
        line,
        1,
        format!("unknown scalar domain `{value}` (use Q or Fp:<p>)"),
    )
}

/// Parses an algebra definition file.
pub fn parse_algebra(text: &str) -> Result<(String, StructureConstantAlgebra), ParseError> {
    let lines = logical_lines(text);
    let mut name = String::from("algebra");
    let mut kind: Option<AlgebraKind> = None;
    let mut domain: Option<ScalarDomain> = None;
    let mut dim: Option<usize> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut products: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
    let mut format_seen = false;

    for (ln, line) in &lines {
        let ln = *ln;
        if let Some(rest) = line.strip_prefix("product ") {
            let domain = match domain {
                Some(d) => d,
                None => return err(ln, 1, "scalars must be declared before products"),
            };
            let dim = match dim {
                Some(d) => d,
                None => return err(ln, 1, "dim must be declared before products"),
            };
            let Some((indices, rhs)) = split_kv(rest) else {
                return err(ln, 1, "expected `product i j = k:c ...`");
            };
            let parts: Vec<&str> = indices.split_whitespace().collect();
            if parts.len() != 2 {
                return err(ln, 9, "expected two basis indices");
            }
            let parse_idx = |s: &str| -> Result<usize, ParseError> {
                let v: usize = s.parse().map_err(|_| ParseError {
                    line: ln,
                    column: 9,
                    message: format!("bad index `{s}`"),
                })?;
                if v >= dim {
                    return err(ln, 9, format!("index {v} out of range for dim {dim}"));
                }
                Ok(v)
            };
            let i = parse_idx(parts[0])?;
            let j = parse_idx(parts[1])?;
            let mut entries = Vec::new();
            for term in rhs.split_whitespace() {
                let Some((k, c)) = term.split_once(':') else {
                    return err(ln, 1, format!("expected `k:coeff`, got `{term}`"));
                };
                let k = parse_idx(k)?;
                let c = parse_scalar(c, domain, ln)?;
                entries.push((k, c));
            }
            products.insert((i, j), entries);
            continue;
        }
        let Some((key, value)) = split_kv(line) else {
            return err(ln, 1, format!("unrecognized line `{line}`"));
        };
        match key {
            "format" => {
                if value != "1" {
                    return err(ln, 1, format!("unsupported format version `{value}`"));
                }
                format_seen = true;
            }
            "name" => name = value.trim_matches('"').to_string(),
            "kind" => {
                kind = Some(match value {
                    "associative" => AlgebraKind::Associative,
                    "lie" => AlgebraKind::Lie,
                    "leibniz" => AlgebraKind::Leibniz,
                    other => return err(ln, 1, format!("unknown kind `{other}`")),
                })
            }
            "scalars" => domain = Some(parse_domain(value, ln)?),
            "dim" => {
                dim = Some(value.parse().map_err(|_| ParseError {
                    line: ln,
                    column: 1,
                    message: format!("bad dimension `{value}`"),
                })?)
            }
            "basis" => basis = Some(value.split_whitespace().map(|s| s.to_string()).collect()),
            other => return err(ln, 1, format!("unknown field `{other}`")),
        }
    }

    if !format_seen {
        return err(1, 1, "missing `format = 1` header");
    }
    let kind = kind.ok_or(ParseError {
        line: 1,
        column: 1,
        message: "missing kind".into(),
    })?;
    let domain = domain.ok_or(ParseError {
        line: 1,
        column: 1,
        message: "missing scalars".into(),
    })?;
    let dim = dim.ok_or(ParseError {
        line: 1,
        column: 1,
        message: "missing dim".into(),
    })?;
    let basis = basis.unwrap_or_else(|| (0..dim).map(|i| format!("x{i}")).collect());
    if basis.len() != dim {
        return err(
            1,
            1,
            format!("basis has {} labels, dim is {dim}", basis.len()),
        );
    }
    let mut product_vecs = BTreeMap::new();
    for ((i, j), entries) in products {
        let v = SparseVec::from_entries(dim, entries).map_err(|e| ParseError {
            line: 1,
            column: 1,
            message: e.to_string(),
        })?;
        if !v.is_zero() {
            product_vecs.insert((i, j), v);
        }
    }
    let algebra =
        StructureConstantAlgebra::new(kind, domain, basis, product_vecs).map_err(|e| {
            ParseError {
                line: 1,
                column: 1,
                message: e.to_string(),
            }
        })?;
    Ok((name, algebra))
}

/// Serializes an algebra to the definition format.
pub fn write_algebra(name: &str, a: &StructureConstantAlgebra) -> String {
    let mut out = String::new();
    out.push_str("format = 1\n");
    out.push_str(&format!("name = {name}\n"));
    let kind = match a.kind() {
        AlgebraKind::Associative => "associative",
        AlgebraKind::Lie => "lie",
        AlgebraKind::Leibniz => "leibniz",
    };
    out.push_str(&format!("kind = {kind}\n"));
    out.push_str(&format!("scalars = {}\n", a.domain()));
    out.push_str(&format!("dim = {}\n", a.dim()));
    out.push_str(&format!("basis = {}\n", a.labels().join(" ")));
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let p = a.basis_product(i, j);
            if p.is_zero() {
                continue;
            }
            let terms: Vec<String> = p
                .entries()
                .iter()
                .map(|(k, c)| format!("{k}:{c}"))
                .collect();
            out.push_str(&format!("product {i} {j} = {}\n", terms.join(" ")));
        }
    }
    out
}

/// Parses a Σ-module definition file.
pub fn parse_sigma_module(text: &str) -> Result<(String, SigmaModuleTruncation), ParseError> {
    let lines = logical_lines(text);
    let mut name = String::from("module");
    let mut domain: Option<ScalarDomain> = None;
    let mut arity_max = 6usize;
    let mut components: BTreeMap<usize, (Vec<String>, Vec<i64>, Vec<Vec<(usize, usize, Scalar)>>)> =
        BTreeMap::new();
    let mut current: Option<usize> = None;
    let mut format_seen = false;

    for (ln, line) in &lines {
        let ln = *ln;
        if let Some(rest) = line.strip_prefix("begin component") {
            let arity: usize = rest.trim().parse().map_err(|_| ParseError {
                line: ln,
                column: 1,
                message: format!("bad arity `{}`", rest.trim()),
            })?;
            if arity < 2 {
                return err(ln, 1, "component arity must be at least 2");
            }
            components.insert(arity, (Vec::new(), Vec::new(), vec![Vec::new(); arity - 1]));
            current = Some(arity);
            continue;
        }
        if line.starts_with("end component") {
            current = None;
            continue;
        }
        if let Some(rest) = line.strip_prefix("basis ") {
            let Some(arity) = current else {
                return err(ln, 1, "basis line outside a component block");
            };
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return err(ln, 1, "expected `basis <name> <degree>`");
            }
            let degree: i64 = parts[1].parse().map_err(|_| ParseError {
                line: ln,
                column: 1,
                message: format!("bad degree `{}`", parts[1]),
            })?;
            let entry = components
                .get_mut(&arity)
                .expect("current component exists");
            entry.0.push(parts[0].to_string());
            entry.1.push(degree);
            continue;
        }
        if let Some(rest) = line.strip_prefix("action ") {
            let Some(arity) = current else {
                return err(ln, 1, "action line outside a component block");
            };
            let domain = match domain {
                Some(d) => d,
                None => return err(ln, 1, "scalars must be declared before actions"),
            };
            let Some((lhs, rhs)) = split_kv(rest) else {
                return err(ln, 1, "expected `action <j> <name> = <combo>`");
            };
            let parts: Vec<&str> = lhs.split_whitespace().collect();
            if parts.len() != 2 {
                return err(ln, 1, "expected `action <j> <name> = <combo>`");
            }
            let j: usize = parts[0].parse().map_err(|_| ParseError {
                line: ln,
                column: 1,
                message: format!("bad transposition index `{}`", parts[0]),
            })?;
            let entry = components
                .get_mut(&arity)
                .expect("current component exists");
            if j == 0 || j > arity - 1 {
                return err(
                    ln,
                    1,
                    format!("transposition index {j} out of range 1..{}", arity - 1),
                );
            }
            let col = entry
                .0
                .iter()
                .position(|n| n == parts[1])
                .ok_or(ParseError {
                    line: ln,
                    column: 1,
                    message: format!("unknown basis element `{}`", parts[1]),
                })?;
            let combo = parse_combo(rhs, &entry.0, domain, ln)?;
            for (row, c) in combo {
                entry.2[j - 1].push((row, col, c));
            }
            continue;
        }
        let Some((key, value)) = split_kv(line) else {
            return err(ln, 1, format!("unrecognized line `{line}`"));
        };
        match key {
            "format" => {
                if value != "1" {
                    return err(ln, 1, format!("unsupported format version `{value}`"));
                }
                format_seen = true;
            }
            "name" => name = value.trim_matches('"').to_string(),
            "scalars" => domain = Some(parse_domain(value, ln)?),
            "arity_max" => {
                arity_max = value.parse().map_err(|_| ParseError {
                    line: ln,
                    column: 1,
                    message: format!("bad arity_max `{value}`"),
                })?
            }
            other => return err(ln, 1, format!("unknown field `{other}`")),
        }
    }
    if !format_seen {
        return err(1, 1, "missing `format = 1` header");
    }
    let domain = domain.ok_or(ParseError {
        line: 1,
        column: 1,
        message: "missing scalars".into(),
    })?;
    let mut comps = BTreeMap::new();
    for (arity, (labels, degrees, triplets)) in components {
        let dim = labels.len();
        let mut transpositions = Vec::new();
        for t in triplets {
            let m = SparseMatrix::from_triplets(dim, dim, domain, t).map_err(|e| ParseError {
                line: 1,
                column: 1,
                message: e.to_string(),
            })?;
            transpositions.push(m);
        }
        comps.insert(
            arity,
            SigmaComponent {
                labels,
                degrees,
                transpositions,
            },
        );
    }
    let module = SigmaModuleTruncation::new(domain, arity_max, comps).map_err(|e| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
    })?;
    Ok((name, module))
}

/// Parses `c1*name1 + c2*name2 - name3` style combinations.
fn parse_combo(
    text: &str,
    names: &[String],
    domain: ScalarDomain,
    line: usize,
) -> Result<Vec<(usize, Scalar)>, ParseError> {
    let mut out = Vec::new();
    // normalize: insert separators before +/- (keeping them attached)
    let cleaned = text.replace('-', " -").replace('+', " ");
    for raw in cleaned.split_whitespace() {
        let (negate, term) = match raw.strip_prefix('-') {
            Some(t) => (true, t),
            None => (false, raw),
        };
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) => (parse_scalar(c, domain, line)?, n),
            None => (domain.one(), term),
        };
        let idx = names.iter().position(|n| n == name).ok_or(ParseError {
            line,
            column: 1,
            message: format!("unknown basis element `{name}`"),
        })?;
        let coef = if negate { -coef } else { coef };
        out.push((idx, coef));
    }
    Ok(out)
}

/// An O-tree file: references a builtin operad by name and gives the tree
/// as nested lists, `[odd, odd]` with odd = `coef*@label(even even …)`.
pub struct OTreeFile {
    pub name: String,
    pub operad: String,
    pub arity_max: usize,
    pub tree: OTree,
}

pub fn parse_otree(text: &str, domain: ScalarDomain) -> Result<OTreeFile, ParseError> {
    let lines = logical_lines(text);
    let mut name = String::from("tree");
    let mut operad: Option<String> = None;
    let mut arity_max = 4usize;
    let mut tree: Option<(usize, String)> = None;
    let mut format_seen = false;
    for (ln, line) in &lines {
        let ln = *ln;
        let Some((key, value)) = split_kv(line) else {
            return err(ln, 1, format!("unrecognized line `{line}`"));
        };
        match key {
            "format" => {
                if value != "1" {
                    return err(ln, 1, format!("unsupported format version `{value}`"));
                }
                format_seen = true;
            }
            "name" => name = value.trim_matches('"').to_string(),
            "operad" => operad = Some(value.to_string()),
            "arity_max" => {
                arity_max = value.parse().map_err(|_| ParseError {
                    line: ln,
                    column: 1,
                    message: format!("bad arity_max `{value}`"),
                })?
            }
            "tree" => tree = Some((ln, value.to_string())),
            other => return err(ln, 1, format!("unknown field `{other}`")),
        }
    }
    if !format_seen {
        return err(1, 1, "missing `format = 1` header");
    }
    let operad = operad.ok_or(ParseError {
        line: 1,
        column: 1,
        message: "missing operad".into(),
    })?;
    let (ln, expr) = tree.ok_or(ParseError {
        line: 1,
        column: 1,
        message: "missing tree".into(),
    })?;
    let mut parser = TreeParser {
        text: expr.as_bytes(),
        pos: 0,
        line: ln,
        domain,
    };
    let root = parser.parse_even()?;
    parser.skip_ws();
    if parser.pos != parser.text.len() {
        return err(ln, parser.pos + 1, "trailing input after tree expression");
    }
    match root {
        TreeNode::Leaf => err(ln, 1, "root must be a bracketed vertex"),
        TreeNode::Vertex(v) => Ok(OTreeFile {
            name,
            operad,
            arity_max,
            tree: OTree { root: v },
        }),
    }
}

enum TreeNode {
    Leaf,
    Vertex(EvenVertex),
}

struct TreeParser<'a> {
    text: &'a [u8],
    pos: usize,
    line: usize,
    domain: ScalarDomain,
}

impl<'a> TreeParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && (self.text[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.text.len() && self.text[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            err(self.line, self.pos + 1, format!("expected `{}`", c as char))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn parse_even(&mut self) -> Result<TreeNode, ParseError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let mut children = Vec::new();
                loop {
                    self.skip_ws();
                    if self.peek() == Some(b']') {
                        self.pos += 1;
                        break;
                    }
                    children.push(self.parse_odd()?);
                    self.skip_ws();
                    if self.peek() == Some(b',') {
                        self.pos += 1;
                    }
                }
                Ok(TreeNode::Vertex(EvenVertex { children }))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(TreeNode::Leaf)
            }
            _ => err(self.line, self.pos + 1, "expected `[` or `x`"),
        }
    }

    fn parse_odd(&mut self) -> Result<OddVertex, ParseError> {
        self.skip_ws();
        // optional coefficient `p/q*`
        let start = self.pos;
        let mut coef = self.domain.one();
        let mut scan = self.pos;
        while scan < self.text.len() {
            let c = self.text[scan] as char;
            if c.is_ascii_digit() || c == '/' || c == '-' {
                scan += 1;
            } else {
                break;
            }
        }
        if scan > self.pos && self.text.get(scan) == Some(&b'*') {
            let token = std::str::from_utf8(&self.text[self.pos..scan]).expect("ascii");
            coef = parse_scalar(token, self.domain, self.line)?;
            self.pos = scan + 1;
        } else {
            self.pos = start;
        }
        self.expect(b'@')?;
        let num_start = self.pos;
        while self.pos < self.text.len() && (self.text[self.pos] as char).is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == num_start {
            return err(self.line, self.pos + 1, "expected a label index after `@`");
        }
        let label: usize = std::str::from_utf8(&self.text[num_start..self.pos])
            .expect("ascii")
            .parse()
            .expect("digits parse");
        self.expect(b'(')?;
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() == Some(b')') {
                self.pos += 1;
                break;
            }
            match self.parse_even()? {
                TreeNode::Leaf => children.push(EvenVertex { children: vec![] }),
                TreeNode::Vertex(v) => children.push(v),
            }
        }
        Ok(OddVertex {
            coef,
            label,
            children,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SL2: &str = "\
format = 1
name = sl2_Q
kind = lie
scalars = Q
dim = 3
basis = e f h
product 0 1 = 2:1
product 1 0 = 2:-1
product 2 0 = 0:2
product 0 2 = 0:-2
product 2 1 = 1:-2
product 1 2 = 1:2
";

    #[test]
    fn parses_sl2() {
        let (name, a) = parse_algebra(SL2).unwrap();
        assert_eq!(name, "sl2_Q");
        assert_eq!(a.dim(), 3);
        assert_eq!(a.kind(), AlgebraKind::Lie);
    }

    #[test]
    fn roundtrip_through_writer() {
        let (_, a) = parse_algebra(SL2).unwrap();
        let text = write_algebra("sl2_Q", &a);
        let (_, b) = parse_algebra(&text).unwrap();
        assert_eq!(a.dim(), b.dim());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a.basis_product(i, j), b.basis_product(i, j));
            }
        }
    }

    #[test]
    fn parse_error_carries_position() {
        let bad = "format = 1\nkind = lie\nscalars = Q\ndim = 2\nbasis = x y\nproduct 0 5 = 0:1\n";
        let e = parse_algebra(bad).unwrap_err();
        assert_eq!(e.line, 6);
        assert!(e.message.contains("out of range"));
    }

    #[test]
    fn missing_format_rejected() {
        let e = parse_algebra("kind = lie\nscalars = Q\ndim = 1\n").unwrap_err();
        assert!(e.message.contains("format"));
    }

    #[test]
    fn parses_minimal_tree() {
        let text = "\
format = 1
name = minimal
operad = lie
arity_max = 4
tree = [@0(x x), @0(x x)]
";
        let f = parse_otree(text, ScalarDomain::Rational).unwrap();
        assert_eq!(f.operad, "lie");
        assert_eq!(f.tree.root.children.len(), 2);
        assert_eq!(f.tree.root.children[0].children.len(), 2);
    }

    #[test]
    fn parses_tree_with_coefficient() {
        let text = "format = 1\noperad = lie\ntree = [1/2*@0(x x), 1/2*@0(x x)]\n";
        let f = parse_otree(text, ScalarDomain::Rational).unwrap();
        let c = &f.tree.root.children[0].coef;
        assert_eq!(*c, ScalarDomain::Rational.from_ratio(1, 2).unwrap());
    }

    #[test]
    fn parses_sigma_module() {
        let text = "\
format = 1
name = binary
scalars = Q
arity_max = 4
begin component 2
basis m 0
action 1 m = -1*m
end component
";
        let (name, module) = parse_sigma_module(text).unwrap();
        assert_eq!(name, "binary");
        assert_eq!(module.dim(2), 1);
    }
}
