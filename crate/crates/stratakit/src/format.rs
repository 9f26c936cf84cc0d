//! The line-oriented algebra description format.
//!
//! ```text
//! # comment
//! name borelB
//! field Q                  # or: field GF 7
//! vertices 1 2 3           # listed in stratifying order
//! arrow beta 1 3
//! arrow gamma 1 2
//! arrow db 2 3
//! relation 1*db.gamma      # c.b.a traverses a, then b, then c
//! module M
//! dims 1 1 0
//! map gamma 1              # rows separated by ';'
//! end
//! embedding                # images of the arrows in an ambient algebra
//! beta = beta
//! gamma = gamma
//! db = beta.delta
//! end
//! duality                  # arrow pairs swapped by an anti-automorphism
//! alpha = beta
//! end
//! ```
//!
//! Terms are `coeff*path` joined by `+` or `-`; the coefficient defaults
//! to 1 and `@v` is the trivial path at `v`.

use std::fmt::Write as _;

use stratakit_core::{Error as CoreError, Field, Matrix, PathAlgebra, QuiverSpec, Rational, Rep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// A linear combination of paths, kept as text until an algebra resolves it.
pub type Terms = Vec<(Rational, String)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleLiteral {
    pub name: String,
    pub dims: Vec<usize>,
    /// Arrow name and row-major matrix; unlisted arrows act by zero.
    pub maps: Vec<(String, Vec<Vec<Rational>>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub spec: QuiverSpec,
    pub modules: Vec<ModuleLiteral>,
    /// Arrow name of this algebra and its image in an ambient algebra.
    pub embedding: Option<Vec<(String, Terms)>>,
    pub duality: Option<Vec<(String, String)>>,
}

enum Block {
    None,
    Module(ModuleLiteral, usize),
    Embedding(Vec<(String, Terms)>, usize),
    Duality(Vec<(String, String)>, usize),
}

/// Splits `text` into whitespace-separated tokens with 1-based columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter().map(|(s, t)| (text[..s].chars().count() + 1, t)).collect()
}

/// Parses `c1*p1 + c2*p2 - ...` starting at column `col0`.
pub fn parse_terms(text: &str, line: usize, col0: usize) -> Result<Terms, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> =
        text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).map(|(i, c)| (i + col0, c)).collect();
    if chars.is_empty() {
        return Err(err(line, col0, "expected at least one term"));
    }
    let mut i = 0;
    while i < chars.len() {
        let mut negative = false;
        let mut signed = false;
        while i < chars.len() && (chars[i].1 == '+' || chars[i].1 == '-') {
            negative ^= chars[i].1 == '-';
            signed = true;
            i += 1;
        }
        if !signed && !out.is_empty() {
            return Err(err(line, chars[i].0, "expected + or - between terms"));
        }
        let start = i;
        while i < chars.len() && chars[i].1 != '+' && chars[i].1 != '-' {
            i += 1;
        }
        let col = chars.get(start).map_or(chars[chars.len() - 1].0, |c| c.0);
        let body: String = chars[start..i].iter().map(|c| c.1).collect();
        if body.is_empty() {
            return Err(err(line, col, "empty term"));
        }
        let (coeff, path) = match body.split_once('*') {
            Some((c, p)) => {
                let c: Rational = c.parse().map_err(|e| err(line, col, format!("{e}")))?;
                (c, p.to_string())
            }
            None => (Rational::one(), body),
        };
        if path.is_empty() || !path.chars().all(|c| c.is_alphanumeric() || "._@'".contains(c)) {
            return Err(err(line, col, format!("invalid path `{path}`")));
        }
        out.push((if negative { -coeff } else { coeff }, path));
    }
    Ok(out)
}

fn parse_row(text: &str, line: usize, col: usize) -> Result<Vec<Vec<Rational>>, ParseError> {
    text.split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|t| t.parse::<Rational>().map_err(|e| err(line, col, format!("{e}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect()
}

fn semantic(line: usize, e: CoreError) -> ParseError {
    err(line, 1, e.to_string())
}

pub fn parse(text: &str, default_name: &str) -> Result<AlgebraFile, ParseError> {
    let mut name = default_name.to_string();
    let mut field = Field::Rationals;
    let mut spec: Option<QuiverSpec> = None;
    let mut modules = Vec::new();
    let mut embedding = None;
    let mut duality = None;
    let mut block = Block::None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, head)) = toks.first() else { continue };
        let rest_col = toks.get(1).map_or(content.chars().count() + 1, |t| t.0);
        let rest: String = content.chars().skip(rest_col - 1).collect();
        if head == "end" {
            match std::mem::replace(&mut block, Block::None) {
                Block::None => return Err(err(line, col, "`end` without an open block")),
                Block::Module(m, _) => modules.push(m),
                Block::Embedding(e, _) => embedding = Some(e),
                Block::Duality(d, _) => duality = Some(d),
            }
            continue;
        }
        match &mut block {
            Block::Module(m, _) => {
                match head {
                    "dims" => {
                        m.dims = toks[1..]
                            .iter()
                            .map(|(c, t)| t.parse().map_err(|_| err(line, *c, format!("invalid dimension `{t}`"))))
                            .collect::<Result<_, _>>()?;
                    }
                    "map" => {
                        let &(_, arrow) = toks.get(1).ok_or_else(|| err(line, rest_col, "expected an arrow name"))?;
                        let mcol = toks.get(2).map_or(content.chars().count() + 1, |t| t.0);
                        let body: String = content.chars().skip(mcol - 1).collect();
                        m.maps.push((arrow.to_string(), parse_row(&body, line, mcol)?));
                    }
                    _ => return Err(err(line, col, format!("unexpected `{head}` inside a module block"))),
                }
                continue;
            }
            Block::Embedding(e, _) => {
                let (lhs, rhs) = rest_split_eq(content, line)?;
                e.push((lhs, parse_terms(&rhs.0, line, rhs.1)?));
                continue;
            }
            Block::Duality(d, _) => {
                let (lhs, rhs) = rest_split_eq(content, line)?;
                let r = rhs.0.trim();
                if r.is_empty() || r.contains(char::is_whitespace) {
                    return Err(err(line, rhs.1, "expected a single arrow name"));
                }
                d.push((lhs, r.to_string()));
                continue;
            }
            Block::None => {}
        }
        match head {
            "name" => {
                let &(c, n) = toks.get(1).ok_or_else(|| err(line, rest_col, "expected a name"))?;
                if toks.len() > 2 {
                    return Err(err(line, c, "names are a single token"));
                }
                name = n.to_string();
            }
            "field" => {
                field = match &toks[1..] {
                    [(_, "Q")] => Field::Rationals,
                    [(_, "GF"), (c, p)] => {
                        let p: u64 = p.parse().map_err(|_| err(line, *c, format!("invalid prime `{p}`")))?;
                        Field::prime(p).map_err(|e| err(line, *c, e.to_string()))?
                    }
                    _ => return Err(err(line, rest_col, "expected `Q` or `GF <p>`")),
                };
                if spec.is_some() {
                    return Err(err(line, col, "`field` must precede `vertices`"));
                }
            }
            "vertices" => {
                if spec.is_some() {
                    return Err(err(line, col, "vertices declared twice"));
                }
                let names: Vec<&str> = toks[1..].iter().map(|t| t.1).collect();
                if names.is_empty() {
                    return Err(err(line, rest_col, "expected at least one vertex"));
                }
                for (k, v) in names.iter().enumerate() {
                    if names[..k].contains(v) || v.starts_with('@') {
                        return Err(err(line, toks[k + 1].0, format!("invalid or repeated vertex `{v}`")));
                    }
                }
                spec = Some(QuiverSpec::new(&name, field, &names));
            }
            "arrow" => {
                let s = spec.as_mut().ok_or_else(|| err(line, col, "`vertices` must come first"))?;
                match &toks[1..] {
                    [(c, n), (_, src), (_, dst)] => {
                        if !n.chars().all(|ch| ch.is_alphanumeric() || ch == '_' || ch == '\'') {
                            return Err(err(line, *c, format!("invalid arrow name `{n}`")));
                        }
                        s.add_arrow(n, src, dst).map_err(|e| err(line, *c, e.to_string()))?;
                    }
                    _ => return Err(err(line, rest_col, "expected `arrow <name> <source> <target>`")),
                }
            }
            "relation" => {
                let s = spec.as_mut().ok_or_else(|| err(line, col, "`vertices` must come first"))?;
                let terms = parse_terms(&rest, line, rest_col)?;
                let mut parsed = Vec::new();
                for (c, p) in terms {
                    parsed.push((c, s.parse_path(&p).map_err(|e| semantic(line, e))?));
                }
                s.add_relation(parsed).map_err(|e| semantic(line, e))?;
            }
            "module" => {
                let n = toks.get(1).map_or("", |t| t.1).to_string();
                if n.is_empty() {
                    return Err(err(line, rest_col, "expected a module name"));
                }
                block = Block::Module(ModuleLiteral { name: n, dims: Vec::new(), maps: Vec::new() }, line);
            }
            "embedding" => block = Block::Embedding(Vec::new(), line),
            "duality" => block = Block::Duality(Vec::new(), line),
            _ => return Err(err(line, col, format!("unknown directive `{head}`"))),
        }
    }
    match block {
        Block::None => {}
        Block::Module(_, l) | Block::Embedding(_, l) | Block::Duality(_, l) => {
            return Err(err(l, 1, "block is not closed by `end`"))
        }
    }
    let mut spec = match spec {
        Some(s) => s,
        None if modules.is_empty() && duality.is_none() && embedding.is_some() => QuiverSpec::new(&name, field, &[]),
        None => return Err(err(1, 1, "missing `vertices` line")),
    };
    spec.name = name;
    Ok(AlgebraFile { spec, modules, embedding, duality })
}

/// `lhs = rhs`, returning both sides with the column of the right side.
fn rest_split_eq(content: &str, line: usize) -> Result<(String, (String, usize)), ParseError> {
    let (l, r) = content.split_once('=').ok_or_else(|| err(line, 1, "expected `name = value`"))?;
    let lhs = l.trim();
    if lhs.is_empty() || lhs.contains(char::is_whitespace) {
        return Err(err(line, 1, "expected a single arrow name before `=`"));
    }
    Ok((lhs.to_string(), (r.to_string(), l.chars().count() + 2)))
}

fn write_terms(out: &mut String, terms: &[(Rational, String)]) {
    for (k, (c, p)) in terms.iter().enumerate() {
        let sep = match (k, c.is_negative()) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        let _ = write!(out, "{sep}{}*{p}", c.abs());
    }
}

/// Canonical text for `file`; [`parse`] reads it back to an equal value.
pub fn serialize(file: &AlgebraFile) -> String {
    let s = &file.spec;
    let mut out = String::new();
    let _ = writeln!(out, "name {}", s.name);
    let _ = writeln!(out, "field {}", s.field);
    if !s.vertices.is_empty() {
        let _ = writeln!(out, "vertices {}", s.vertices.join(" "));
    }
    for a in &s.arrows {
        let _ = writeln!(out, "arrow {} {} {}", a.name, s.vertices[a.source], s.vertices[a.target]);
    }
    for r in &s.relations {
        let terms: Vec<(Rational, String)> = r.terms.iter().map(|(c, p)| (c.clone(), s.path_name(p))).collect();
        out.push_str("relation ");
        write_terms(&mut out, &terms);
        out.push('\n');
    }
    for m in &file.modules {
        let _ = writeln!(out, "module {}", m.name);
        let dims: Vec<String> = m.dims.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "dims {}", dims.join(" "));
        for (arrow, rows) in &m.maps {
            let rows: Vec<String> =
                rows.iter().map(|r| r.iter().map(Rational::to_string).collect::<Vec<_>>().join(" ")).collect();
            let _ = writeln!(out, "map {arrow} {}", rows.join(" ; "));
        }
        out.push_str("end\n");
    }
    if let Some(e) = &file.embedding {
        out.push_str("embedding\n");
        for (arrow, terms) in e {
            let _ = write!(out, "{arrow} = ");
            write_terms(&mut out, terms);
            out.push('\n');
        }
        out.push_str("end\n");
    }
    if let Some(d) = &file.duality {
        out.push_str("duality\n");
        for (x, y) in d {
            let _ = writeln!(out, "{x} = {y}");
        }
        out.push_str("end\n");
    }
    out
}

/// Builds the named module literal over `a`.
pub fn module_from_literal(a: &PathAlgebra, m: &ModuleLiteral) -> Result<Rep, CoreError> {
    let f = a.field();
    if m.dims.len() != a.num_vertices() {
        return Err(CoreError::InvalidRepresentation(format!(
            "module {} lists {} dimensions for {} vertices",
            m.name,
            m.dims.len(),
            a.num_vertices()
        )));
    }
    let mut maps: Vec<Matrix> =
        a.arrows().iter().map(|x| Matrix::zeros(f, m.dims[x.target], m.dims[x.source])).collect();
    for (name, rows) in &m.maps {
        let idx = a.spec().arrow_index(name)?;
        let x = a.arrow(idx);
        let (r, c) = (m.dims[x.target], m.dims[x.source]);
        let flat: Vec<Rational> = rows.iter().flatten().cloned().collect();
        if r * c == 0 && flat.is_empty() {
            continue;
        }
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(CoreError::InvalidRepresentation(format!("map {name} of module {} must be {r}x{c}", m.name)));
        }
        let flat = flat.iter().map(|v| f.convert(v)).collect::<Result<Vec<_>, _>>()?;
        maps[idx] = Matrix::from_rows(f, r, c, flat);
    }
    Rep::new(a, m.dims.clone(), maps)
}

/// Resolves textual terms to an element of `a`.
pub fn element(a: &PathAlgebra, terms: &Terms) -> Result<Vec<Rational>, CoreError> {
    let refs: Vec<(Rational, &str)> = terms.iter().map(|(c, p)| (c.clone(), p.as_str())).collect();
    a.element(&refs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_with_signs_and_fractions() {
        let t = parse_terms(" -1/2*b.a + c.d - 3*@v", 1, 1).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].0, Rational::new(-1, 2));
        assert_eq!(t[1], (Rational::one(), "c.d".to_string()));
        assert_eq!(t[2], (Rational::from(-3), "@v".to_string()));
        assert!(parse_terms("1*a 2*b", 4, 1).is_err());
    }

    #[test]
    fn errors_carry_locations() {
        let e = parse("vertices 1 2\narrow a 1 2\narrow b 1 2\nrelation b.a\n", "x").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("not composable"), "{e}");
        let e = parse("field Q\nvertices 1\nfoo\n", "x").unwrap_err();
        assert_eq!((e.line, e.column), (3, 1));
        let e = parse("vertices 1\narrow a 1 9\n", "x").unwrap_err();
        assert!(e.message.contains("unknown vertex"));
        let e = parse("vertices 1\nmodule M\ndims 1\n", "x").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn module_literals() {
        let f = parse("vertices 1 2\narrow a 1 2\nmodule M\ndims 1 1\nmap a 1\nend\n", "m").unwrap();
        let a = stratakit_core::build_algebra(f.spec.clone()).unwrap();
        let m = module_from_literal(&a, &f.modules[0]).unwrap();
        assert_eq!(m.dims(), &[1, 1]);
        assert!(!m.map(0).is_zero());
    }
}
