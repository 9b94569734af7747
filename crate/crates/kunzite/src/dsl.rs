//! The text DSL: lexing, parsing into a resolved session script, and the
//! canonical printer.
//!
//! Grammar sketch:
//!
//! ```text
//! script := stmt*                       (newline or ';' separated)
//! stmt   := name "=" (ring | ideal | poly) | name "(" args ")"
//! ring   := "GF(" int ")" "[" name ("," name)* "]" ("/" "(" poly ("," poly)* ")")?
//! ideal  := "ideal(" poly ("," poly)* ")"
//! poly   := ("-")? term (("+"|"-") term)*
//! term   := factor ("*"? factor)*      factor := int | name ("^" int)?
//! args   := arg ("," arg)*             arg := name "=" int | ideal | poly | name
//! ```
//!
//! Polynomials and ideals are resolved against the most recently bound
//! ring; the printer emits canonical text (explicit `*` and `^`,
//! coefficients in [0, p)) that re-parses to the same script.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(u64),
    Sym(char),
    Newline,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(source: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = source.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '\n' => {
                chars.next();
                out.push(Spanned {
                    tok: Tok::Newline,
                    line,
                    col,
                });
                line += 1;
                col = 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start_col = col;
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Name(name),
                    line,
                    col: start_col,
                });
            }
            '0'..='9' => {
                let start_col = col;
                let mut lit = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        lit.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let v = lit.parse::<u64>().map_err(|_| Error::Syntax {
                    line,
                    col: start_col,
                    token: lit.clone(),
                })?;
                out.push(Spanned {
                    tok: Tok::Int(v),
                    line,
                    col: start_col,
                });
            }
            '=' | '+' | '-' | '*' | '^' | '(' | ')' | '[' | ']' | '/' | ',' | ';' => {
                chars.next();
                out.push(Spanned {
                    tok: Tok::Sym(c),
                    line,
                    col,
                });
                col += 1;
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    col,
                    token: other.to_string(),
                });
            }
        }
    }
    Ok(out)
}

/// A ring header as bound in the script.
#[derive(Debug, Clone, PartialEq)]
pub struct RingDecl {
    pub p: u64,
    pub vars: Vec<String>,
    pub k_gens: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    LetRing { name: String, ring: RingDecl },
    LetIdeal { name: String, gens: Vec<Polynomial> },
    LetPoly { name: String, poly: Polynomial },
    Cmd { name: String, args: Vec<Arg> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    /// Reference to a bound name (ring, ideal or polynomial).
    Name(String),
    Ideal(Vec<Polynomial>),
    Poly(Polynomial),
    Keyword { key: String, value: u64 },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SessionScript {
    pub stmts: Vec<Stmt>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum NameKind {
    Ring,
    Ideal,
    Poly,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    env: HashMap<String, NameKind>,
    /// Bound polynomials, substituted into later expressions.
    polys: HashMap<String, Polynomial>,
    current_ring: Option<(PrimeField, Vec<String>)>,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn err_here(&self) -> Error {
        match self.peek() {
            Some(s) => Error::Syntax {
                line: s.line,
                col: s.col,
                token: describe(&s.tok),
            },
            None => {
                let (line, col) = self
                    .toks
                    .last()
                    .map(|s| (s.line, s.col + 1))
                    .unwrap_or((1, 1));
                Error::Syntax {
                    line,
                    col,
                    token: "<end of input>".to_string(),
                }
            }
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(s) if s.tok == Tok::Sym(c) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err_here()),
        }
    }

    fn expect_name(&mut self) -> Result<String> {
        match self.peek() {
            Some(s) => {
                if let Tok::Name(n) = &s.tok {
                    let n = n.clone();
                    self.pos += 1;
                    Ok(n)
                } else {
                    Err(self.err_here())
                }
            }
            None => Err(self.err_here()),
        }
    }

    fn expect_int(&mut self) -> Result<u64> {
        match self.peek() {
            Some(s) => {
                if let Tok::Int(v) = s.tok {
                    self.pos += 1;
                    Ok(v)
                } else {
                    Err(self.err_here())
                }
            }
            None => Err(self.err_here()),
        }
    }

    fn at_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(s) if s.tok == Tok::Sym(c))
    }

    fn skip_separators(&mut self) {
        while matches!(
            self.peek(),
            Some(s) if s.tok == Tok::Newline || s.tok == Tok::Sym(';')
        ) {
            self.pos += 1;
        }
    }

    fn ring_ctx(&self) -> Result<(PrimeField, &[String])> {
        match &self.current_ring {
            Some((f, vars)) => Ok((*f, vars)),
            None => Err(self.err_here()),
        }
    }

    /// poly := ("-")? term (("+"|"-") term)*
    fn parse_poly(&mut self) -> Result<Polynomial> {
        let (field, _) = self.ring_ctx()?;
        let nvars = self.ring_ctx()?.1.len();
        let mut acc = Polynomial::zero(field, nvars);
        let mut negate = false;
        if self.at_sym('-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let term = self.parse_term()?;
            acc = if negate { acc.sub(&term) } else { acc.add(&term) };
            if self.at_sym('+') {
                self.pos += 1;
                negate = false;
            } else if self.at_sym('-') {
                self.pos += 1;
                negate = true;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    /// term := factor ("*"? factor)*; a factor is an integer, a ring
    /// variable, or a bound polynomial name, optionally raised to a
    /// power.
    fn parse_term(&mut self) -> Result<Polynomial> {
        let (field, _) = self.ring_ctx()?;
        let nvars = self.ring_ctx()?.1.len();
        let mut acc = Polynomial::one(field, nvars);
        let mut any = false;
        loop {
            match self.peek().map(|s| s.tok.clone()) {
                Some(Tok::Int(v)) => {
                    self.pos += 1;
                    any = true;
                    acc = acc.scale(v % field.characteristic());
                    if self.at_sym('^') {
                        return Err(self.err_here());
                    }
                }
                Some(Tok::Name(n)) => {
                    let vars = self.ring_ctx()?.1;
                    let idx = vars.iter().position(|v| v == &n);
                    self.pos += 1;
                    any = true;
                    let mut e: u32 = 1;
                    if self.at_sym('^') {
                        self.pos += 1;
                        let v = self.expect_int()?;
                        e = u32::try_from(v).map_err(|_| Error::ExponentOverflow)?;
                    }
                    match idx {
                        Some(i) => {
                            let mut exps = vec![0u32; nvars];
                            exps[i] = e;
                            acc = acc.mul_term(&Monomial::new(exps), 1)?;
                        }
                        None => match self.polys.get(&n).cloned() {
                            Some(p) => acc = acc.mul(&poly_pow(&p, e)),
                            None => return Err(Error::UnboundName(n)),
                        },
                    }
                }
                _ => break,
            }
            if self.at_sym('*') {
                self.pos += 1;
                continue;
            }
            // implicit product only continues on a factor token
            match self.peek().map(|s| &s.tok) {
                Some(Tok::Int(_)) | Some(Tok::Name(_)) => continue,
                _ => break,
            }
        }
        if !any {
            return Err(self.err_here());
        }
        Ok(acc)
    }

    fn parse_poly_list(&mut self) -> Result<Vec<Polynomial>> {
        let mut out = vec![self.parse_poly()?];
        while self.at_sym(',') {
            self.pos += 1;
            out.push(self.parse_poly()?);
        }
        Ok(out)
    }

    /// ring := GF(int)[names] ("/" "(" polys ")")?
    fn parse_ring(&mut self) -> Result<RingDecl> {
        self.expect_name()?; // "GF", checked by caller
        self.expect_sym('(')?;
        let p = self.expect_int()?;
        let field = PrimeField::new(p)?;
        self.expect_sym(')')?;
        self.expect_sym('[')?;
        let mut vars = vec![self.expect_name()?];
        while self.at_sym(',') {
            self.pos += 1;
            vars.push(self.expect_name()?);
        }
        self.expect_sym(']')?;
        self.current_ring = Some((field, vars.clone()));
        let mut k_gens = Vec::new();
        if self.at_sym('/') {
            self.pos += 1;
            self.expect_sym('(')?;
            k_gens = self.parse_poly_list()?;
            self.expect_sym(')')?;
        }
        Ok(RingDecl { p, vars, k_gens })
    }

    fn parse_arg(&mut self) -> Result<Arg> {
        if let Some(Tok::Name(n)) = self.peek().map(|s| s.tok.clone()) {
            // keyword argument: name "=" int
            if matches!(self.toks.get(self.pos + 1), Some(s) if s.tok == Tok::Sym('=')) {
                self.pos += 2;
                let value = self.expect_int()?;
                return Ok(Arg::Keyword { key: n, value });
            }
            if n == "ideal" {
                self.pos += 1;
                self.expect_sym('(')?;
                let gens = self.parse_poly_list()?;
                self.expect_sym(')')?;
                return Ok(Arg::Ideal(gens));
            }
            // bare reference to a bound name; anything else is a poly
            if self.env.contains_key(&n)
                && !matches!(self.toks.get(self.pos + 1), Some(s) if matches!(s.tok, Tok::Sym('^') | Tok::Sym('*') | Tok::Sym('+') | Tok::Sym('-')))
            {
                self.pos += 1;
                return Ok(Arg::Name(n));
            }
        }
        Ok(Arg::Poly(self.parse_poly()?))
    }

    fn parse_stmt(&mut self) -> Result<Stmt> {
        let name = self.expect_name()?;
        if self.at_sym('=') {
            self.pos += 1;
            match self.peek().map(|s| s.tok.clone()) {
                Some(Tok::Name(n)) if n == "GF" => {
                    let ring = self.parse_ring()?;
                    self.env.insert(name.clone(), NameKind::Ring);
                    Ok(Stmt::LetRing { name, ring })
                }
                Some(Tok::Name(n)) if n == "ideal" => {
                    self.pos += 1;
                    self.expect_sym('(')?;
                    let gens = self.parse_poly_list()?;
                    self.expect_sym(')')?;
                    self.env.insert(name.clone(), NameKind::Ideal);
                    Ok(Stmt::LetIdeal { name, gens })
                }
                _ => {
                    let poly = self.parse_poly()?;
                    self.env.insert(name.clone(), NameKind::Poly);
                    self.polys.insert(name.clone(), poly.clone());
                    Ok(Stmt::LetPoly { name, poly })
                }
            }
        } else if self.at_sym('(') {
            self.pos += 1;
            let mut args = Vec::new();
            if !self.at_sym(')') {
                args.push(self.parse_arg()?);
                while self.at_sym(',') {
                    self.pos += 1;
                    args.push(self.parse_arg()?);
                }
            }
            self.expect_sym(')')?;
            Ok(Stmt::Cmd { name, args })
        } else {
            Err(self.err_here())
        }
    }
}

fn poly_pow(p: &Polynomial, e: u32) -> Polynomial {
    let mut acc = Polynomial::one(p.field(), p.nvars());
    let mut base = p.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Name(n) => n.clone(),
        Tok::Int(v) => v.to_string(),
        Tok::Sym(c) => c.to_string(),
        Tok::Newline => "<newline>".to_string(),
    }
}

pub fn parse(source: &str) -> Result<SessionScript> {
    let toks = lex(source)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        env: HashMap::new(),
        polys: HashMap::new(),
        current_ring: None,
    };
    let mut stmts = Vec::new();
    loop {
        parser.skip_separators();
        if parser.peek().is_none() {
            break;
        }
        stmts.push(parser.parse_stmt()?);
        // a statement must be followed by a separator or end of input
        match parser.peek() {
            None => {}
            Some(s) if s.tok == Tok::Newline || s.tok == Tok::Sym(';') => {}
            Some(_) => return Err(parser.err_here()),
        }
    }
    Ok(SessionScript { stmts })
}

/// Canonical text form; `parse(print(parse(s))) == parse(s)`.
pub fn print(script: &SessionScript, order: &MonomialOrder) -> String {
    let mut out = String::new();
    let mut vars: Vec<String> = Vec::new();
    let render = |p: &Polynomial, vars: &[String]| {
        let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        p.render(&names, order)
    };
    for stmt in &script.stmts {
        match stmt {
            Stmt::LetRing { name, ring } => {
                vars = ring.vars.clone();
                out.push_str(&format!("{} = GF({})[{}]", name, ring.p, ring.vars.join(",")));
                if !ring.k_gens.is_empty() {
                    let gens: Vec<String> =
                        ring.k_gens.iter().map(|g| render(g, &vars)).collect();
                    out.push_str(&format!("/({})", gens.join(", ")));
                }
            }
            Stmt::LetIdeal { name, gens } => {
                let gens: Vec<String> = gens.iter().map(|g| render(g, &vars)).collect();
                out.push_str(&format!("{} = ideal({})", name, gens.join(", ")));
            }
            Stmt::LetPoly { name, poly } => {
                out.push_str(&format!("{} = {}", name, render(poly, &vars)));
            }
            Stmt::Cmd { name, args } => {
                let rendered: Vec<String> = args
                    .iter()
                    .map(|a| match a {
                        Arg::Name(n) => n.clone(),
                        Arg::Ideal(gens) => {
                            let gens: Vec<String> =
                                gens.iter().map(|g| render(g, &vars)).collect();
                            format!("ideal({})", gens.join(", "))
                        }
                        Arg::Poly(p) => render(p, &vars),
                        Arg::Keyword { key, value } => format!("{}={}", key, value),
                    })
                    .collect();
                out.push_str(&format!("{}({})", name, rendered.join(", ")));
            }
        }
        out.push('\n');
    }
    out
}
