//! Quiver-with-relations presentations and their line-oriented text format.
//!
//! ```text
//! field char=2 order=4
//! vertices 1
//! arrow X 0 0
//! arrow Y 0 0
//! param k=2
//! relation X^2
//! relation Y^2
//! relation (XY)^k - (YX)^k
//! truncate 7
//! ```
//!
//! Statements:
//!
//! * `field char=<0|p> [order=<p^m>] [modulus=<poly in x>]`
//! * `vertices <n>`
//! * `arrow <name> <source> <target>`
//! * `param <name>=<integer or scalar literal>`
//! * `relation <expr>` or `relation <expr> = <expr>`
//! * `commutative` (one-vertex quivers: adds `xy - yx` for every pair of loops)
//! * `truncate <N>` (a Loewy length bound used as a build hint)
//!
//! Expressions combine arrows, parameters, integers, fractions and the field
//! generator `g` with `+ - * ^` and parentheses. Juxtaposition multiplies, and
//! an identifier that is not a declared name is split into arrow names when
//! that is possible, so `XY` means `X*Y`. Paths read left to right. An
//! exponent is an integer, an integer parameter or a parenthesised integer
//! expression; `x^0` is the identity. `#` starts a comment.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{parse_modulus, Field, Scalar};
use crate::quiver::{Arrow, Path, PathPoly, Quiver};

#[derive(Clone, Debug)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<PathPoly>,
    pub field: Field,
    pub truncation_hint: Option<usize>,
}

impl Presentation {
    pub fn format_relations(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| r.format(&self.field, &self.quiver))
            .collect()
    }
}

#[derive(Clone, Debug)]
enum Param {
    Int(i64),
    Scalar(Scalar),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Eq,
    LParen,
    RParen,
}

/// Parses presentation text. `default_field` is used when the text has no
/// `field` line.
pub fn parse_presentation(text: &str, default_field: Option<&Field>) -> Result<Presentation> {
    let mut field: Option<Field> = None;
    let mut vertices: Option<usize> = None;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut params: Vec<(String, Param)> = Vec::new();
    let mut relations: Vec<PathPoly> = Vec::new();
    let mut commutative = false;
    let mut truncation_hint = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = line.len() - trimmed.len();
        let (keyword, rest) = match trimmed.find(char::is_whitespace) {
            Some(pos) => (&trimmed[..pos], &trimmed[pos..]),
            None => (trimmed.trim_end(), ""),
        };
        let rest_col = indent + keyword.len() + 1;
        let syntax = |column: usize, message: String| Error::Syntax {
            line: line_no,
            column,
            message,
        };
        match keyword {
            "field" => {
                if field.is_some() {
                    return Err(syntax(indent + 1, "duplicate `field` line".into()));
                }
                let mut ch = None;
                let mut order = None;
                let mut modulus = None;
                for item in rest.split_whitespace() {
                    let col = rest_col + rest.find(item).unwrap_or(0);
                    let (k, v) = item
                        .split_once('=')
                        .ok_or_else(|| syntax(col, format!("expected key=value, got `{item}`")))?;
                    let num = || {
                        v.parse::<u64>()
                            .map_err(|_| syntax(col, format!("`{v}` is not a number")))
                    };
                    match k {
                        "char" => ch = Some(num()?),
                        "order" => order = Some(num()?),
                        "modulus" => modulus = Some(v.to_string()),
                        _ => return Err(syntax(col, format!("unknown field option `{k}`"))),
                    }
                }
                let ch = ch.ok_or_else(|| syntax(indent + 1, "`field` needs char=".into()))?;
                field = Some(build_field(ch, order, modulus.as_deref())?);
            }
            "vertices" => {
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| syntax(rest_col, "expected a vertex count".into()))?;
                vertices = Some(n);
            }
            "arrow" => {
                let n = vertices
                    .ok_or_else(|| syntax(indent + 1, "`arrow` before `vertices`".into()))?;
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(syntax(rest_col, "expected `arrow <name> <source> <target>`".into()));
                }
                if !is_identifier(parts[0]) || parts[0] == "g" {
                    return Err(syntax(rest_col, format!("invalid arrow name `{}`", parts[0])));
                }
                let endpoint = |s: &str| {
                    s.parse::<usize>()
                        .ok()
                        .filter(|&v| v < n)
                        .ok_or_else(|| syntax(rest_col, format!("bad vertex `{s}` (have {n})")))
                };
                arrows.push(Arrow {
                    name: parts[0].to_string(),
                    source: endpoint(parts[1])?,
                    target: endpoint(parts[2])?,
                });
            }
            "param" => {
                let body = rest.trim();
                let (name, value) = body
                    .split_once('=')
                    .ok_or_else(|| syntax(rest_col, "expected `param name=value`".into()))?;
                let (name, value) = (name.trim(), value.trim());
                if !is_identifier(name) {
                    return Err(syntax(rest_col, format!("invalid parameter name `{name}`")));
                }
                let p = match value.parse::<i64>() {
                    Ok(v) => Param::Int(v),
                    Err(_) => {
                        let f = field.as_ref().or(default_field).ok_or_else(|| {
                            syntax(rest_col, "scalar parameter before `field`".into())
                        })?;
                        Param::Scalar(f.parse_scalar(value).map_err(|e| syntax(rest_col, e.to_string()))?)
                    }
                };
                params.retain(|(n, _)| n != name);
                params.push((name.to_string(), p));
            }
            "relation" => {
                let f = field
                    .as_ref()
                    .or(default_field)
                    .ok_or_else(|| syntax(indent + 1, "`relation` before `field`".into()))?
                    .clone();
                let n = vertices
                    .ok_or_else(|| syntax(indent + 1, "`relation` before `vertices`".into()))?;
                let toks = tokenize(rest, line_no, rest_col)?;
                let mut parser = ExprParser {
                    toks,
                    pos: 0,
                    line: line_no,
                    end_col: rest_col + rest.len(),
                    field: &f,
                    vertices: n,
                    arrows: &arrows,
                    params: &params,
                };
                let rel = parser.relation()?;
                check_relation(&rel, line_no)?;
                relations.push(rel);
            }
            "commutative" => commutative = true,
            "truncate" => {
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| syntax(rest_col, "expected a positive integer".into()))?;
                truncation_hint = Some(n);
            }
            other => return Err(syntax(indent + 1, format!("unknown statement `{other}`"))),
        }
    }

    let field = field
        .or_else(|| default_field.cloned())
        .ok_or_else(|| Error::Syntax {
            line: 1,
            column: 1,
            message: "no `field` line and no default field".into(),
        })?;
    let n = vertices.ok_or_else(|| Error::Syntax {
        line: 1,
        column: 1,
        message: "missing `vertices` line".into(),
    })?;
    let quiver = Quiver::new(n, arrows)?;
    if commutative {
        if n != 1 {
            return Err(Error::Quiver("`commutative` needs a one-vertex quiver".into()));
        }
        let m = quiver.arrows().len();
        for i in 0..m {
            for j in i + 1..m {
                let mut r = PathPoly::zero();
                r.add_term(&field, quiver.path(&[i, j]).unwrap(), field.one());
                r.add_term(&field, quiver.path(&[j, i]).unwrap(), field.from_i64(-1));
                relations.push(r);
            }
        }
    }
    Ok(Presentation {
        quiver,
        relations,
        field,
        truncation_hint,
    })
}

fn build_field(ch: u64, order: Option<u64>, modulus: Option<&str>) -> Result<Field> {
    if ch == 0 {
        return Ok(Field::rationals());
    }
    let p = u32::try_from(ch).map_err(|_| Error::InvalidPrime(ch))?;
    let modulus = modulus.map(|m| parse_modulus(m, p)).transpose()?;
    Field::of_order(p, order.unwrap_or(ch), modulus)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn check_relation(rel: &PathPoly, line: usize) -> Result<()> {
    if rel.is_zero() {
        return Err(Error::Path {
            line,
            message: "relation evaluates to zero".into(),
        });
    }
    if rel.endpoints().is_none() {
        return Err(Error::Path {
            line,
            message: "relation terms are not parallel paths".into(),
        });
    }
    if rel.terms().any(|(p, _)| p.is_trivial()) {
        return Err(Error::Path {
            line,
            message: "relation has a constant term; relations must lie in the arrow ideal".into(),
        });
    }
    Ok(())
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '=' => Some(Tok::Eq),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(Error::Syntax {
                line,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    field: &'a Field,
    vertices: usize,
    arrows: &'a [Arrow],
    params: &'a [(String, Param)],
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.col(),
            message: message.into(),
        }
    }

    fn relation(&mut self) -> Result<PathPoly> {
        let lhs = self.expr()?;
        let out = if self.peek() == Some(&Tok::Eq) {
            self.pos += 1;
            let rhs = self.expr()?;
            let mut d = lhs;
            d.add_scaled(self.field, &rhs, &self.field.from_i64(-1));
            d
        } else {
            lhs
        };
        if self.pos < self.toks.len() {
            return Err(self.syntax("unexpected token"));
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<PathPoly> {
        let f = self.field;
        let mut acc = PathPoly::zero();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc.add_scaled(f, &t, &f.from_i64(sign));
            match self.peek() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<PathPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                }
                Some(Tok::Ident(_) | Tok::Int(_) | Tok::LParen) => {}
                _ => return Ok(acc),
            }
            let col = self.col();
            let rhs = self.factor()?;
            acc = self.multiply(&acc, &rhs, col)?;
        }
    }

    fn multiply(&self, a: &PathPoly, b: &PathPoly, col: usize) -> Result<PathPoly> {
        let out = a.mul(self.field, b);
        if out.is_zero() && !a.is_zero() && !b.is_zero() {
            return Err(Error::Path {
                line: self.line,
                message: format!("product at column {col} does not compose (vertex mismatch)"),
            });
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<PathPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        let e = self.exponent()?;
        if e < 0 {
            return Err(Error::Syntax {
                line: self.line,
                column: col,
                message: format!("negative exponent {e}"),
            });
        }
        let mut acc = self.identity();
        for _ in 0..e {
            acc = self.multiply(&acc, &base, col)?;
        }
        Ok(acc)
    }

    fn identity(&self) -> PathPoly {
        PathPoly::scalar(self.field, self.vertices, self.field.one())
    }

    fn exponent(&mut self) -> Result<i64> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                i64::try_from(n).map_err(|_| self.syntax("exponent too large"))
            }
            Some(Tok::Ident(name)) => {
                let v = self.int_param(&name)?;
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.int_expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.syntax("expected an exponent")),
        }
    }

    fn int_param(&self, name: &str) -> Result<i64> {
        match self.params.iter().find(|(n, _)| n == name) {
            Some((_, Param::Int(v))) => Ok(*v),
            Some((_, Param::Scalar(_))) => Err(self.syntax(format!("`{name}` is not an integer"))),
            None => Err(Error::Name {
                line: self.line,
                name: name.to_string(),
            }),
        }
    }

    fn int_expr(&mut self) -> Result<i64> {
        let mut acc = self.int_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc += self.int_term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc -= self.int_term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn int_term(&mut self) -> Result<i64> {
        let mut acc = self.int_atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc *= self.int_atom()?;
        }
        Ok(acc)
    }

    fn int_atom(&mut self) -> Result<i64> {
        match self.peek().cloned() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.int_atom()?)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.int_expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => self.exponent(),
        }
    }

    fn atom(&mut self) -> Result<PathPoly> {
        let f = self.field;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let c = if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let Some(Tok::Int(d)) = self.peek().cloned() else {
                        return Err(self.syntax("expected a denominator"));
                    };
                    self.pos += 1;
                    f.from_ratio(&n, &d).map_err(|e| self.syntax(e.to_string()))?
                } else {
                    f.from_bigint(&n)
                };
                Ok(PathPoly::scalar(f, self.vertices, c))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                let col = self.col();
                self.pos += 1;
                self.name(&name, col)
            }
            Some(_) => Err(self.syntax("unexpected token")),
            None => Err(self.syntax("unexpected end of expression")),
        }
    }

    fn arrow_poly(&self, i: usize) -> PathPoly {
        let a = &self.arrows[i];
        let p = Path {
            start: a.source,
            end: a.target,
            arrows: vec![i],
        };
        PathPoly::monomial(self.field, p, self.field.one())
    }

    fn name(&self, name: &str, col: usize) -> Result<PathPoly> {
        let f = self.field;
        if let Some(i) = self.arrows.iter().position(|a| a.name == name) {
            return Ok(self.arrow_poly(i));
        }
        if let Some((_, p)) = self.params.iter().find(|(n, _)| n == name) {
            let c = match p {
                Param::Int(v) => f.from_i64(*v),
                Param::Scalar(s) => s.clone(),
            };
            return Ok(PathPoly::scalar(f, self.vertices, c));
        }
        if name == "g" {
            if let Some(g) = f.generator() {
                return Ok(PathPoly::scalar(f, self.vertices, g));
            }
        }
        if let Some(word) = self.segment(name) {
            let mut acc = self.arrow_poly(word[0]);
            for &a in &word[1..] {
                acc = self.multiply(&acc, &self.arrow_poly(a), col)?;
            }
            return Ok(acc);
        }
        Err(Error::Name {
            line: self.line,
            name: name.to_string(),
        })
    }

    /// Splits an identifier into declared arrow names, preferring longer names first.
    fn segment(&self, s: &str) -> Option<Vec<usize>> {
        if s.is_empty() {
            return Some(Vec::new());
        }
        let mut candidates: Vec<usize> = (0..self.arrows.len())
            .filter(|&i| s.starts_with(self.arrows[i].name.as_str()))
            .collect();
        candidates.sort_by_key(|&i| std::cmp::Reverse(self.arrows[i].name.len()));
        for i in candidates {
            if let Some(mut rest) = self.segment(&s[self.arrows[i].name.len()..]) {
                rest.insert(0, i);
                return Some(rest);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C1: &str = "field char=2\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation X^2\nrelation Y^2\ncommutative\n";

    #[test]
    fn commutative_local_algebra() {
        let p = parse_presentation(C1, None).unwrap();
        assert_eq!(p.quiver.vertex_count(), 1);
        assert_eq!(p.quiver.arrows().len(), 2);
        assert_eq!(p.relations.len(), 3);
    }

    #[test]
    fn two_vertex_relation() {
        let text = "field char=2\nvertices 2\narrow alpha 0 0\narrow beta 0 1\narrow gamma 1 0\narrow eta 1 1\nrelation beta*eta\n";
        let p = parse_presentation(text, None).unwrap();
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].len(), 1);
        assert_eq!(p.format_relations(), vec!["beta*eta"]);
    }

    #[test]
    fn dangling_caret_is_a_syntax_error() {
        let err = parse_presentation("field char=0\nvertices 1\narrow X 0 0\nrelation X^\n", None)
            .unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 4, column: 12, .. }), "{err:?}");
    }

    #[test]
    fn noncomposable_product() {
        let text = "field char=0\nvertices 2\narrow b 0 1\narrow c 1 0\nrelation b*b\n";
        assert!(matches!(parse_presentation(text, None), Err(Error::Path { line: 5, .. })));
    }

    #[test]
    fn nonparallel_terms() {
        let text = "field char=0\nvertices 2\narrow b 0 1\narrow c 1 0\nrelation bc - cb\n";
        assert!(matches!(parse_presentation(text, None), Err(Error::Path { .. })));
    }

    #[test]
    fn unknown_name() {
        let text = "field char=0\nvertices 1\narrow X 0 0\nrelation X*Z\n";
        assert_eq!(
            parse_presentation(text, None).unwrap_err(),
            Error::Name { line: 4, name: "Z".into() }
        );
    }

    #[test]
    fn parameters_and_juxtaposition() {
        let text = "field char=0\nvertices 1\narrow X 0 0\narrow Y 0 0\nparam k=2\nparam c=1/2\nrelation X^2 - (YX)^(k-1)Y + c(XY)^k\n";
        let p = parse_presentation(text, None).unwrap();
        assert_eq!(p.format_relations(), vec!["1/2*XYXY - YXY + XX"]);
    }

    #[test]
    fn equation_form() {
        let text = "field char=3\nvertices 1\narrow X 0 0\nrelation X^3 = 0\n";
        let p = parse_presentation(text, None).unwrap();
        assert_eq!(p.relations[0].len(), 1);
    }

    #[test]
    fn scalar_parameter_over_extension() {
        let text = "field char=2 order=4\nvertices 1\narrow X 0 0\nparam d=g\nrelation X^2 - d X^3\n";
        let p = parse_presentation(text, None).unwrap();
        assert_eq!(p.field.order(), Some(4));
        assert_eq!(p.format_relations(), vec!["g*XXX + XX"]);
    }

    #[test]
    fn constant_terms_rejected() {
        let text = "field char=0\nvertices 1\narrow X 0 0\nrelation X^2 - 1\n";
        assert!(matches!(parse_presentation(text, None), Err(Error::Path { .. })));
    }
}
