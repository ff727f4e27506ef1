//! Recursive-descent parser for polynomial expressions and map files, and
//! the canonical printer.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' NAT)?
//! base   := NAT | IDENT | '(' expr ')' | '-' factor
//! ```
//!
//! A divisor must be a non-zero constant, so `1/2*x^2`, `x^2/2` and
//! `(x + y)^2/(1 + 1)` are all accepted while `x/y` is not.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{PolyError, PolyMap, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown variable `{name}`")]
    UnknownVariable { line: usize, col: usize, name: String },
    #[error("{line}:{col}: invalid exponent: {msg}")]
    BadExponent { line: usize, col: usize, msg: String },
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("missing `vars:` header")]
    MissingVars,
    #[error("non-square map: {vars} variables but {polys} polynomials")]
    NonSquare { vars: usize, polys: usize },
    #[error("no polynomials given")]
    NoPolynomials,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Parsed expression tree, before expansion.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Num(BigRational),
    Var(usize),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Neg(Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

impl ExprAst {
    pub fn expand(&self, n: usize) -> Polynomial {
        match self {
            ExprAst::Num(q) => Polynomial::constant(n, q.clone()),
            ExprAst::Var(i) => Polynomial::var(n, *i).expect("resolved variable"),
            ExprAst::Add(a, b) => &a.expand(n) + &b.expand(n),
            ExprAst::Sub(a, b) => &a.expand(n) - &b.expand(n),
            ExprAst::Neg(a) => -&a.expand(n),
            ExprAst::Mul(a, b) => &a.expand(n) * &b.expand(n),
            ExprAst::Pow(a, e) => a.expand(n).pow(*e),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |col: usize, msg: String| ParseError::Syntax {
        line,
        col: col0 + col,
        msg,
    };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let simple = match c {
            ' ' | '\t' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Spanned {
                tok,
                line,
                col: col0 + col,
            });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let value = BigRational::from_integer(num.parse::<BigInt>().expect("digits"));
            if i < chars.len() && (chars[i] == '.' || chars[i].is_ascii_alphabetic()) {
                return Err(err(i + 1, format!("unexpected `{}` after number", chars[i])));
            }
            out.push(Spanned {
                tok: Tok::Num(value),
                line,
                col: col0 + col,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line,
                col: col0 + col,
            });
            continue;
        }
        return Err(err(col, format!("unexpected character `{c}`")));
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        col: col0 + chars.len() + 1,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, at: &Spanned, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: at.line,
            col: at.col,
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    let at = self.bump();
                    let d = self.factor()?.expand(self.vars.len());
                    if !d.is_constant() {
                        return Err(self.syntax(&at, "can only divide by a constant"));
                    }
                    let c = d.constant_term();
                    if c.is_zero() {
                        return Err(self.syntax(&at, "division by zero"));
                    }
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(ExprAst::Num(c.recip())));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let bad = |msg: &str| ParseError::BadExponent {
            line: t.line,
            col: t.col,
            msg: msg.to_string(),
        };
        match &t.tok {
            Tok::Num(q) => {
                let e = q.to_integer().to_u32().ok_or_else(|| bad("exponent too large"))?;
                Ok(ExprAst::Pow(Box::new(base), e))
            }
            Tok::Minus => Err(bad("negative exponent")),
            Tok::LParen => Err(bad("exponent must be a natural number literal")),
            _ => Err(self.syntax(&t, "expected natural number after `^`")),
        }
    }

    fn base(&mut self) -> Result<ExprAst, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Num(q) => Ok(ExprAst::Num(q)),
            Tok::Ident(ref name) => match self.vars.iter().position(|v| v == name) {
                Some(i) => Ok(ExprAst::Var(i)),
                None => Err(ParseError::UnknownVariable {
                    line: t.line,
                    col: t.col,
                    name: name.clone(),
                }),
            },
            Tok::LParen => {
                let e = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.syntax(&close, "expected `)`"));
                }
                Ok(e)
            }
            Tok::Minus => Ok(ExprAst::Neg(Box::new(self.factor()?))),
            Tok::End => Err(self.syntax(&t, "unexpected end of input")),
            _ => Err(self.syntax(&t, "expected number, variable, `(` or `-`")),
        }
    }
}

fn parse_ast_at(src: &str, vars: &[String], line: usize, col0: usize) -> Result<ExprAst, ParseError> {
    let toks = lex(src, line, col0)?;
    let mut p = Parser { toks, pos: 0, vars };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.syntax(&t, "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses `src` into its expression tree.
pub fn parse_ast(src: &str, vars: &[String]) -> Result<ExprAst, ParseError> {
    parse_ast_at(src, vars, 1, 0)
}

/// Parses and fully expands `src` over the variables `vars`.
pub fn parse_expr(src: &str, vars: &[String]) -> Result<Polynomial, ParseError> {
    Ok(parse_ast(src, vars)?.expand(vars.len()))
}

/// Contents of a map or system file.
#[derive(Debug, Clone, PartialEq)]
pub struct MapFile {
    pub vars: Vec<String>,
    pub labels: Vec<String>,
    pub polys: Vec<Polynomial>,
    pub name: Option<String>,
}

fn valid_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a file with a `vars:` header followed by `label = expr` lines.
/// The number of polynomials is not constrained; see [`parse_map_file`].
pub fn parse_system_file(src: &str) -> Result<MapFile, ParseError> {
    let mut vars: Option<Vec<String>> = None;
    let mut name = None;
    let mut labels = Vec::new();
    let mut polys = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix("vars:") {
            if vars.is_some() {
                return Err(ParseError::Syntax {
                    line: line_no,
                    col: 1,
                    msg: "repeated `vars:` header".into(),
                });
            }
            let mut names: Vec<String> = Vec::new();
            for v in rest.split(',') {
                let v = v.trim();
                if !valid_name(v) {
                    return Err(ParseError::InvalidName(v.to_string()));
                }
                if names.iter().any(|w| w == v) {
                    return Err(ParseError::DuplicateVariable(v.to_string()));
                }
                names.push(v.to_string());
            }
            vars = Some(names);
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("name:") {
            name = Some(rest.trim().to_string());
            continue;
        }
        let Some(vs) = vars.as_ref() else {
            return Err(ParseError::MissingVars);
        };
        let Some(eq) = line.find('=') else {
            return Err(ParseError::Syntax {
                line: line_no,
                col: 1,
                msg: "expected `label = expression`".into(),
            });
        };
        let label = line[..eq].trim();
        if !valid_name(label) {
            return Err(ParseError::Syntax {
                line: line_no,
                col: 1,
                msg: format!("invalid label `{label}`"),
            });
        }
        let col0 = line[..=eq].chars().count();
        let ast = parse_ast_at(&line[eq + 1..], vs, line_no, col0)?;
        labels.push(label.to_string());
        polys.push(ast.expand(vs.len()));
    }
    let vars = vars.ok_or(ParseError::MissingVars)?;
    if polys.is_empty() {
        return Err(ParseError::NoPolynomials);
    }
    Ok(MapFile {
        vars,
        labels,
        polys,
        name,
    })
}

/// Parses a square map file into a [`PolyMap`] plus its variable names.
pub fn parse_map_file(src: &str) -> Result<(PolyMap, MapFile), ParseError> {
    let file = parse_system_file(src)?;
    if file.polys.len() != file.vars.len() {
        return Err(ParseError::NonSquare {
            vars: file.vars.len(),
            polys: file.polys.len(),
        });
    }
    let map = PolyMap::new(file.polys.clone())?;
    Ok((map, file))
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Deterministic text for `p`, terms in descending graded lexicographic
/// order. The output parses back to `p`.
pub fn print_poly(p: &Polynomial, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = k
            .as_slice()
            .iter()
            .zip(names)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if mono.is_empty() {
            out.push_str(&fmt_rat(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&fmt_rat(&mag));
                out.push('*');
            }
            out.push_str(&mono.join("*"));
        }
    }
    out
}

/// Default variable names: `x, y, z` for up to three variables, otherwise
/// `x1..xn`.
pub fn default_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}
