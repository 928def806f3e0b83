//! Expression parsing and printing, and the system-definition file format.
//!
//! Grammar:
//!   expr   := term (('+'|'-') term)*
//!   term   := factor ('*' factor)*
//!   factor := base ('^' uint)?
//!   base   := name | rational | '(' expr ')'
//! with unary minus and `a/b` rational literals. No implicit multiplication.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::monomial::Ctx;
use crate::poly::MPoly;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone)]
struct SpannedTok {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line,
            col: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        self.col += 1;
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_tok(&mut self) -> Result<SpannedTok, ParseError> {
        while let Some(c) = self.peek() {
            if c == b' ' || c == b'\t' || c == b'\r' {
                self.bump();
            } else {
                break;
            }
        }
        let (line, col) = (self.line, self.col);
        let spanned = |tok| SpannedTok { tok, line, col };
        let c = match self.peek() {
            None => return Ok(spanned(Tok::Eof)),
            Some(c) => c,
        };
        let tok = match c {
            b'+' => {
                self.bump();
                Tok::Plus
            }
            b'-' => {
                self.bump();
                Tok::Minus
            }
            b'*' => {
                self.bump();
                Tok::Star
            }
            b'^' => {
                self.bump();
                Tok::Caret
            }
            b'/' => {
                self.bump();
                Tok::Slash
            }
            b'(' => {
                self.bump();
                Tok::LParen
            }
            b')' => {
                self.bump();
                Tok::RParen
            }
            b'0'..=b'9' => {
                let mut s = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() {
                        s.push(c as char);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Int(s.parse().unwrap())
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == b'_' {
                        s.push(c as char);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Name(s)
            }
            c => return Err(self.error(format!("unexpected character `{}`", c as char))),
        };
        Ok(spanned(tok))
    }
}

struct Parser<'a> {
    toks: Vec<SpannedTok>,
    idx: usize,
    ctx: &'a Arc<Ctx>,
}

impl<'a> Parser<'a> {
    fn cur(&self) -> &SpannedTok {
        &self.toks[self.idx]
    }

    fn error_at(&self, message: impl Into<String>) -> ParseError {
        let t = self.cur();
        ParseError {
            line: t.line,
            col: t.col,
            message: message.into(),
        }
    }

    fn advance(&mut self) -> SpannedTok {
        let t = self.toks[self.idx].clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.cur().tok == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.error_at(format!("expected {}", what)))
        }
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut negate = false;
        // leading sign
        loop {
            match self.cur().tok {
                Tok::Minus => {
                    negate = !negate;
                    self.advance();
                }
                Tok::Plus => {
                    self.advance();
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            let minus = match self.cur().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.advance();
            let t = self.term()?;
            acc = if minus { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.cur().tok == Tok::Star {
            self.advance();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        let base = self.base()?;
        if self.cur().tok == Tok::Caret {
            self.advance();
            match self.cur().tok.clone() {
                Tok::Int(e) => {
                    self.advance();
                    let e: u32 = e.to_string().parse().map_err(|_| {
                        self.error_at("exponent too large")
                    })?;
                    Ok(base.pow(e))
                }
                Tok::Minus => Err(self.error_at("negative exponent")),
                _ => Err(self.error_at("malformed exponent: expected a non-negative integer")),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<MPoly, ParseError> {
        match self.cur().tok.clone() {
            Tok::Name(name) => {
                if self.ctx.var_index(&name).is_none() {
                    return Err(self.error_at(format!("unknown variable `{}`", name)));
                }
                self.advance();
                Ok(MPoly::var(self.ctx, &name).unwrap())
            }
            Tok::Int(n) => {
                self.advance();
                // rational literal a/b
                if self.cur().tok == Tok::Slash {
                    self.advance();
                    match self.cur().tok.clone() {
                        Tok::Int(d) => {
                            self.advance();
                            if d == BigInt::from(0) {
                                return Err(self.error_at("zero denominator in rational literal"));
                            }
                            Ok(MPoly::constant(self.ctx, Rat::new(n, d)))
                        }
                        _ => Err(self.error_at("expected denominator after `/`")),
                    }
                } else {
                    Ok(MPoly::constant(self.ctx, Rat::from_integer(n)))
                }
            }
            Tok::Minus => {
                self.advance();
                let f = self.factor()?;
                Ok(f.neg())
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::RParen => Err(self.error_at("unbalanced parentheses")),
            _ => Err(self.error_at("expected a name, number, or `(`")),
        }
    }
}

fn parse_poly_at(text: &str, ctx: &Arc<Ctx>, line: usize) -> Result<MPoly, ParseError> {
    let mut lexer = Lexer::new(text, line);
    let mut toks = Vec::new();
    loop {
        let t = lexer.next_tok()?;
        let eof = t.tok == Tok::Eof;
        toks.push(t);
        if eof {
            break;
        }
    }
    let mut parser = Parser { toks, idx: 0, ctx };
    let p = parser.expr()?;
    if parser.cur().tok != Tok::Eof {
        return Err(parser.error_at("trailing input after expression"));
    }
    Ok(p)
}

/// Parse a polynomial over the given ambient.
pub fn parse_poly(text: &str, ctx: &Arc<Ctx>) -> Result<MPoly, ParseError> {
    parse_poly_at(text, ctx, 1)
}

/// Canonical text form: terms in descending monomial order, explicit `*`
/// and `^`; re-parsing yields the identical polynomial.
pub fn print_poly(f: &MPoly) -> String {
    if f.is_zero_poly() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in f.terms.iter().enumerate() {
        let neg = c < &Rat::from_integer(0.into());
        let abs = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut parts: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            parts.push(crate::rat::fmt_rat(&abs));
        }
        for (vi, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                parts.push(f.ctx.vars[vi].clone());
            } else {
                parts.push(format!("{}^{}", f.ctx.vars[vi], e));
            }
        }
        out.push_str(&parts.join("*"));
    }
    out
}

/// A parsed system-definition file.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemFile {
    pub params: Vec<String>,
    pub vars: Vec<String>,
    pub base: Vec<MPoly>,
    pub system: Vec<MPoly>,
    pub options: Vec<(String, String)>,
    /// Ambient of `base`: the parameters only.
    pub param_ctx: Arc<Ctx>,
    /// Ambient of `system`: parameters then variables.
    pub full_ctx: Arc<Ctx>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse the canonical system file format: sections `params:`, `vars:`,
/// `base:`, `system:`, `options:`; one polynomial per line under
/// `base`/`system`; `#` comments; LF or CRLF.
pub fn parse_system_file(text: &str) -> Result<SystemFile, ParseError> {
    #[derive(PartialEq, Clone, Copy)]
    enum Section {
        None,
        Params,
        Vars,
        Base,
        System,
        Options,
    }
    let mut section = Section::None;
    let mut params: Vec<String> = Vec::new();
    let mut vars: Vec<String> = Vec::new();
    let mut base_lines: Vec<(usize, String)> = Vec::new();
    let mut system_lines: Vec<(usize, String)> = Vec::new();
    let mut options: Vec<(String, String)> = Vec::new();
    let mut seen_vars = false;
    let mut seen_system = false;

    for (lineno0, raw) in text.lines().enumerate() {
        let lineno = lineno0 + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let line = line.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        let err = |col: usize, message: String| ParseError {
            line: lineno,
            col,
            message,
        };
        let (head, rest) = match line.split_once(':') {
            Some((h, r)) if matches!(h.trim(), "params" | "vars" | "base" | "system" | "options") => {
                (Some(h.trim().to_string()), r.trim().to_string())
            }
            _ => (None, line.to_string()),
        };
        if let Some(head) = head {
            section = match head.as_str() {
                "params" => Section::Params,
                "vars" => {
                    seen_vars = true;
                    Section::Vars
                }
                "base" => Section::Base,
                "system" => {
                    seen_system = true;
                    Section::System
                }
                "options" => Section::Options,
                _ => unreachable!(),
            };
            if rest.is_empty() {
                continue;
            }
            match section {
                Section::Params | Section::Vars => {
                    for name in rest.split(|c: char| c == ',' || c.is_whitespace()) {
                        let name = name.trim();
                        if name.is_empty() {
                            continue;
                        }
                        if !valid_name(name) {
                            return Err(err(1, format!("invalid name `{}`", name)));
                        }
                        if section == Section::Params {
                            params.push(name.to_string());
                        } else {
                            vars.push(name.to_string());
                        }
                    }
                }
                Section::Base => base_lines.push((lineno, rest)),
                Section::System => system_lines.push((lineno, rest)),
                Section::Options => {
                    if let Some((k, v)) = rest.split_once('=') {
                        options.push((k.trim().to_string(), v.trim().to_string()));
                    } else {
                        return Err(err(1, "options entries are key=value".into()));
                    }
                }
                Section::None => unreachable!(),
            }
            continue;
        }
        match section {
            Section::None => {
                return Err(err(1, "content before any section header".into()));
            }
            Section::Params | Section::Vars => {
                for name in line.split(|c: char| c == ',' || c.is_whitespace()) {
                    let name = name.trim();
                    if name.is_empty() {
                        continue;
                    }
                    if !valid_name(name) {
                        return Err(err(1, format!("invalid name `{}`", name)));
                    }
                    if section == Section::Params {
                        params.push(name.to_string());
                    } else {
                        vars.push(name.to_string());
                    }
                }
            }
            Section::Base => base_lines.push((lineno, line.to_string())),
            Section::System => system_lines.push((lineno, line.to_string())),
            Section::Options => {
                if let Some((k, v)) = line.split_once('=') {
                    options.push((k.trim().to_string(), v.trim().to_string()));
                } else {
                    return Err(err(1, "options entries are key=value".into()));
                }
            }
        }
    }

    if !seen_vars {
        return Err(ParseError {
            line: 1,
            col: 1,
            message: "missing `vars:` section".into(),
        });
    }
    if !seen_system {
        return Err(ParseError {
            line: 1,
            col: 1,
            message: "missing `system:` section".into(),
        });
    }
    for p in &params {
        if vars.contains(p) {
            return Err(ParseError {
                line: 1,
                col: 1,
                message: format!("`{}` declared both a param and a var", p),
            });
        }
    }

    let param_ctx = Ctx::grevlex(params.clone());
    let mut all: Vec<String> = params.clone();
    all.extend(vars.iter().cloned());
    let full_ctx = Ctx::grevlex(all);

    let mut base = Vec::new();
    for (lineno, text) in base_lines {
        let p = parse_poly_at(&text, &param_ctx, lineno).map_err(|mut e| {
            if e.message.starts_with("unknown variable") {
                e.message = format!("{} (base polynomials may mention only params)", e.message);
            }
            e
        })?;
        base.push(p);
    }
    let mut system = Vec::new();
    for (lineno, text) in system_lines {
        system.push(parse_poly_at(&text, &full_ctx, lineno)?);
    }

    Ok(SystemFile {
        params,
        vars,
        base,
        system,
        options,
        param_ctx,
        full_ctx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_cubic() {
        let ctx = Ctx::grevlex(vec!["p", "q", "x"]);
        let f = parse_poly("x^3 + p*x + q", &ctx).unwrap();
        assert_eq!(print_poly(&f), "x^3 + p*x + q");
    }

    #[test]
    fn unary_minus_expansion() {
        let ctx = Ctx::grevlex(vec!["x", "y"]);
        let f = parse_poly("-(y - 1)^2 + x", &ctx).unwrap();
        let g = parse_poly("x - y^2 + 2*y - 1", &ctx).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn negative_exponent_rejected() {
        let ctx = Ctx::grevlex(vec!["x"]);
        let e = parse_poly("x^-1", &ctx).unwrap_err();
        assert!(e.message.contains("negative exponent"), "{}", e);
    }

    #[test]
    fn print_examples() {
        let ctx = Ctx::grevlex(vec!["p", "q"]);
        let f = parse_poly("4*p^3 + 27*q^2", &ctx).unwrap();
        assert_eq!(print_poly(&f), "4*p^3 + 27*q^2");
        assert_eq!(print_poly(&MPoly::zero(&ctx)), "0");
        let g = parse_poly("x - y^2", &Ctx::grevlex(vec!["x", "y"])).unwrap();
        let txt = print_poly(&g);
        let h = parse_poly(&txt, &g.ctx).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn system_file_cubic() {
        let text = "\
# depressed cubic over its discriminant
params: p, q
vars: x
base:
  4*p^3 + 27*q^2
system:
  x^3 + p*x + q
";
        let sf = parse_system_file(text).unwrap();
        assert_eq!(sf.params, vec!["p", "q"]);
        assert_eq!(sf.vars, vec!["x"]);
        assert_eq!(sf.base.len(), 1);
        assert_eq!(sf.system.len(), 1);
    }

    #[test]
    fn system_file_errors() {
        assert!(parse_system_file("params: p\nbase:\np\n").is_err()); // no vars/system
        let bad = "params: p\nvars: x\nbase:\n  x^2\nsystem:\n  x - p\n";
        let e = parse_system_file(bad).unwrap_err();
        assert_eq!(e.line, 4);
        // empty base is fine
        let ok = parse_system_file("params: t\nvars: x\nsystem:\n  x^2 - t\n").unwrap();
        assert!(ok.base.is_empty());
    }
}
