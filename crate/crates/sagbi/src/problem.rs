//! Problem-file grammar and polynomial text format.
//!
//! ```text
//! field QQ;                 -- or ZZ/101
//! vars a0..a3;              -- or an explicit comma list
//! weights [[0,1,2,3],[1,1,1,1]];   -- optional
//! order a0degrev;           -- degrevlex | deglex | a0degrev | matrix [[..],..]
//! let g2 = a1^2 - a0*a2;
//! run saturate g=a0;
//! ```
//!
//! Polynomial expressions use explicit `*` and `^`; coefficients are integers
//! or fractions `p/q`. Printing uses the same grammar with terms in
//! descending order, so print -> parse -> print is a fixpoint.

use num_bigint::BigInt;
use std::sync::Arc;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::ring::{Grading, PolyRing, Polynomial, Term, TermOrdering};

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Ident(String),
    Int(BigInt),
    Symbol(char),
    DotDot,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Token,
    line: usize,
    col: usize,
}

struct Lexer {
    toks: Vec<Spanned>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let bump = |chars: &mut std::iter::Peekable<std::str::Chars>,
                    line: &mut usize,
                    col: &mut usize| {
            let c = chars.next().unwrap();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars, &mut line, &mut col);
            continue;
        }
        if c == '#' {
            while let Some(&c2) = chars.peek() {
                if c2 == '\n' {
                    break;
                }
                bump(&mut chars, &mut line, &mut col);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_ascii_alphanumeric() || c2 == '_' {
                    s.push(bump(&mut chars, &mut line, &mut col));
                } else {
                    break;
                }
            }
            toks.push(Spanned { tok: Token::Ident(s), line: tl, col: tc });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_ascii_digit() {
                    s.push(bump(&mut chars, &mut line, &mut col));
                } else {
                    break;
                }
            }
            toks.push(Spanned {
                tok: Token::Int(s.parse::<BigInt>().unwrap()),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c == '.' {
            bump(&mut chars, &mut line, &mut col);
            if chars.peek() == Some(&'.') {
                bump(&mut chars, &mut line, &mut col);
                toks.push(Spanned { tok: Token::DotDot, line: tl, col: tc });
                continue;
            }
            return Err(Error::Parse {
                line: tl,
                col: tc,
                expected: "'..'".into(),
            });
        }
        if "+-*^/=;,[]()".contains(c) {
            bump(&mut chars, &mut line, &mut col);
            toks.push(Spanned { tok: Token::Symbol(c), line: tl, col: tc });
            continue;
        }
        return Err(Error::Parse {
            line: tl,
            col: tc,
            expected: format!("valid token, found {c:?}"),
        });
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end_line: line,
        end_col: col,
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn err(&self, expected: &str) -> Error {
        let (line, col) = self.here();
        Error::Parse {
            line,
            col,
            expected: expected.into(),
        }
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_symbol(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Token::Symbol(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(&format!("'{c}'"))),
        }
    }

    fn expect_ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Token::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("identifier")),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Token::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(&format!("'{kw}'"))),
        }
    }

    fn expect_int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Token::Int(_)) => match self.next() {
                Some(Token::Int(n)) => Ok(n),
                _ => unreachable!(),
            },
            _ => Err(self.err("integer")),
        }
    }

    fn expect_signed_int(&mut self) -> Result<BigInt> {
        if let Some(Token::Symbol('-')) = self.peek() {
            self.pos += 1;
            Ok(-self.expect_int()?)
        } else {
            self.expect_int()
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

/// Polynomial expression parser over a fixed ring. Identifiers must be ring
/// variables or found in `bindings`.
fn parse_poly_expr(
    lx: &mut Lexer,
    ring: &Arc<PolyRing>,
    bindings: &[(String, Polynomial)],
) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(ring);
    loop {
        // sign
        let mut negative = false;
        loop {
            match lx.peek() {
                Some(Token::Symbol('+')) => {
                    lx.pos += 1;
                }
                Some(Token::Symbol('-')) => {
                    negative = !negative;
                    lx.pos += 1;
                }
                _ => break,
            }
        }
        let term = parse_product(lx, ring, bindings)?;
        acc = if negative { acc.sub(&term) } else { acc.add(&term) };
        match lx.peek() {
            Some(Token::Symbol('+')) | Some(Token::Symbol('-')) => continue,
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_product(
    lx: &mut Lexer,
    ring: &Arc<PolyRing>,
    bindings: &[(String, Polynomial)],
) -> Result<Polynomial> {
    let mut acc = parse_power(lx, ring, bindings)?;
    while let Some(Token::Symbol('*')) = lx.peek() {
        lx.pos += 1;
        let rhs = parse_power(lx, ring, bindings)?;
        acc = acc.mul(&rhs);
    }
    Ok(acc)
}

fn parse_power(
    lx: &mut Lexer,
    ring: &Arc<PolyRing>,
    bindings: &[(String, Polynomial)],
) -> Result<Polynomial> {
    let base = parse_atom(lx, ring, bindings)?;
    if let Some(Token::Symbol('^')) = lx.peek() {
        lx.pos += 1;
        let e = lx.expect_int()?;
        let e: u32 = e
            .try_into()
            .map_err(|_| lx.err("non-negative exponent"))?;
        Ok(base.pow(e))
    } else {
        Ok(base)
    }
}

fn parse_atom(
    lx: &mut Lexer,
    ring: &Arc<PolyRing>,
    bindings: &[(String, Polynomial)],
) -> Result<Polynomial> {
    match lx.peek().cloned() {
        Some(Token::Int(n)) => {
            lx.pos += 1;
            let num = n;
            if let Some(Token::Symbol('/')) = lx.peek() {
                lx.pos += 1;
                let den = lx.expect_int()?;
                let c = ring.field().from_ratio(num, den)?;
                Ok(Polynomial::constant(ring, c))
            } else {
                let c = ring.field().from_ratio(num, BigInt::from(1))?;
                Ok(Polynomial::constant(ring, c))
            }
        }
        Some(Token::Ident(name)) => {
            lx.pos += 1;
            if let Some(i) = ring.var_index(&name) {
                Ok(Polynomial::variable(ring, i))
            } else if let Some((_, p)) = bindings.iter().find(|(n, _)| *n == name) {
                Ok(p.clone())
            } else {
                Err(Error::UndeclaredVariable(name))
            }
        }
        Some(Token::Symbol('(')) => {
            lx.pos += 1;
            let inner = parse_poly_expr(lx, ring, bindings)?;
            lx.expect_symbol(')')?;
            Ok(inner)
        }
        _ => Err(lx.err("coefficient, variable, or '('")),
    }
}

/// Parses a standalone polynomial in the given ring.
pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let mut lx = lex(text)?;
    if lx.at_end() {
        return Err(lx.err("polynomial expression"));
    }
    let p = parse_poly_expr(&mut lx, ring, &[])?;
    if !lx.at_end() {
        return Err(lx.err("end of expression"));
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrderSpec {
    DegRevLex,
    DegLex,
    A0DegRev,
    Matrix(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Saturate { g: Polynomial },
    SatSagbi,
    TruncSatSagbi { degree: Option<i64> },
    MinGens,
    Uinv { n: Option<usize>, degree: Option<i64> },
    Gb,
    Nf { f: Polynomial },
    RelMod { g: Polynomial },
    Toric,
    Member { f: Polynomial },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Saturate { .. } => "saturate",
            Command::SatSagbi => "satsagbi",
            Command::TruncSatSagbi { .. } => "trunc-satsagbi",
            Command::MinGens => "mingens",
            Command::Uinv { .. } => "uinv",
            Command::Gb => "gb",
            Command::Nf { .. } => "nf",
            Command::RelMod { .. } => "rel-mod",
            Command::Toric => "toric",
            Command::Member { .. } => "member",
        }
    }
}

/// A fully parsed problem: ring data, named polynomial bindings in
/// declaration order, and the command to run.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub ring: Arc<PolyRing>,
    pub order_spec: OrderSpec,
    pub bindings: Vec<(String, Polynomial)>,
    pub command: Command,
}

fn parse_matrix(lx: &mut Lexer) -> Result<Vec<Vec<i64>>> {
    lx.expect_symbol('[')?;
    let mut rows = Vec::new();
    loop {
        lx.expect_symbol('[')?;
        let mut row = Vec::new();
        loop {
            let n = lx.expect_signed_int()?;
            let n: i64 = n.try_into().map_err(|_| lx.err("word-size weight"))?;
            row.push(n);
            match lx.peek() {
                Some(Token::Symbol(',')) => {
                    lx.pos += 1;
                }
                _ => break,
            }
        }
        lx.expect_symbol(']')?;
        rows.push(row);
        match lx.peek() {
            Some(Token::Symbol(',')) => {
                lx.pos += 1;
            }
            _ => break,
        }
    }
    lx.expect_symbol(']')?;
    Ok(rows)
}

/// Splits a trailing decimal index off an identifier, e.g. `a0` -> (`a`, 0).
fn split_indexed(name: &str) -> Option<(&str, u64)> {
    let digits = name
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_ascii_digit())
        .count();
    if digits == 0 || digits == name.len() {
        return None;
    }
    let split = name.len() - digits;
    let idx = name[split..].parse().ok()?;
    Some((&name[..split], idx))
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut lx = lex(text)?;
    if lx.at_end() {
        return Err(lx.err("'field'"));
    }

    lx.expect_keyword("field")?;
    let field = match lx.next() {
        Some(Token::Ident(s)) if s == "QQ" => Field::Rational,
        Some(Token::Ident(s)) if s == "ZZ" => {
            lx.expect_symbol('/')?;
            let p = lx.expect_int()?;
            let p: u64 = p.try_into().map_err(|_| lx.err("word-size prime"))?;
            if p < 2 || p >= (1 << 63) || !is_prime(p) {
                return Err(Error::InvalidProblem(format!("{p} is not a valid prime")));
            }
            Field::Prime(p)
        }
        _ => return Err(lx.err("'QQ' or 'ZZ/<p>'")),
    };
    lx.expect_symbol(';')?;

    lx.expect_keyword("vars")?;
    let first = lx.expect_ident()?;
    let mut vars: Vec<String> = Vec::new();
    if let Some(Token::DotDot) = lx.peek() {
        lx.pos += 1;
        let last = lx.expect_ident()?;
        let (p1, i1) = split_indexed(&first).ok_or_else(|| lx.err("indexed variable range"))?;
        let (p2, i2) = split_indexed(&last).ok_or_else(|| lx.err("indexed variable range"))?;
        if p1 != p2 || i2 < i1 {
            return Err(lx.err("matching variable range"));
        }
        for i in i1..=i2 {
            vars.push(format!("{p1}{i}"));
        }
    } else {
        vars.push(first);
        while let Some(Token::Symbol(',')) = lx.peek() {
            lx.pos += 1;
            vars.push(lx.expect_ident()?);
        }
    }
    lx.expect_symbol(';')?;

    let mut weights: Option<Grading> = None;
    if let Some(Token::Ident(s)) = lx.peek() {
        if s == "weights" {
            lx.pos += 1;
            let rows = parse_matrix(&mut lx)?;
            let w = Grading::new(rows)?;
            if w.nvars() != vars.len() {
                return Err(Error::InvalidProblem(
                    "weight matrix width differs from variable count".into(),
                ));
            }
            weights = Some(w);
            lx.expect_symbol(';')?;
        }
    }

    let mut order_spec = OrderSpec::DegRevLex;
    if let Some(Token::Ident(s)) = lx.peek() {
        if s == "order" {
            lx.pos += 1;
            order_spec = match lx.next() {
                Some(Token::Ident(s)) if s == "degrevlex" => OrderSpec::DegRevLex,
                Some(Token::Ident(s)) if s == "deglex" => OrderSpec::DegLex,
                Some(Token::Ident(s)) if s == "a0degrev" => OrderSpec::A0DegRev,
                Some(Token::Ident(s)) if s == "matrix" => OrderSpec::Matrix(parse_matrix(&mut lx)?),
                _ => return Err(lx.err("'degrevlex', 'deglex', 'a0degrev', or 'matrix'")),
            };
            lx.expect_symbol(';')?;
        }
    }

    let ordering = match &order_spec {
        OrderSpec::DegRevLex => TermOrdering::degrevlex(vars.len()),
        OrderSpec::DegLex => TermOrdering::deglex(vars.len()),
        OrderSpec::A0DegRev => {
            let w = weights.as_ref().ok_or_else(|| {
                Error::InvalidProblem("order a0degrev requires a weights declaration".into())
            })?;
            TermOrdering::a0_degrev(w)?
        }
        OrderSpec::Matrix(rows) => TermOrdering::from_matrix(rows.clone())?,
    };
    let ring = PolyRing::new(vars, field, ordering, weights)?;

    let mut bindings: Vec<(String, Polynomial)> = Vec::new();
    loop {
        match lx.peek() {
            Some(Token::Ident(s)) if s == "let" => {
                lx.pos += 1;
                let name = lx.expect_ident()?;
                if ring.var_index(&name).is_some()
                    || bindings.iter().any(|(n, _)| *n == name)
                {
                    return Err(Error::InvalidProblem(format!(
                        "name `{name}` already declared"
                    )));
                }
                lx.expect_symbol('=')?;
                let p = parse_poly_expr(&mut lx, &ring, &bindings)?;
                lx.expect_symbol(';')?;
                bindings.push((name, p));
            }
            _ => break,
        }
    }

    lx.expect_keyword("run")?;
    let cmd_name = lx.expect_ident()?;
    // command arguments: key=value pairs
    let mut args: Vec<(String, ArgValue)> = Vec::new();
    while let Some(Token::Ident(_)) = lx.peek() {
        let key = lx.expect_ident()?;
        lx.expect_symbol('=')?;
        let value = match lx.peek() {
            Some(Token::Int(_)) => {
                // could still be a polynomial like `2*a0`; parse as expression
                let save = lx.pos;
                match lx.expect_signed_int() {
                    Ok(n) => match lx.peek() {
                        Some(Token::Symbol(c)) if "*^/".contains(*c) => {
                            lx.pos = save;
                            ArgValue::Poly(parse_poly_expr(&mut lx, &ring, &bindings)?)
                        }
                        _ => ArgValue::Int(n.try_into().map_err(|_| lx.err("small integer"))?),
                    },
                    Err(e) => return Err(e),
                }
            }
            _ => ArgValue::Poly(parse_poly_expr(&mut lx, &ring, &bindings)?),
        };
        args.push((key, value));
    }
    lx.expect_symbol(';')?;
    if !lx.at_end() {
        return Err(lx.err("end of file after 'run' statement"));
    }

    let get_poly = |key: &str| -> Result<Polynomial> {
        args.iter()
            .find(|(k, _)| k == key)
            .and_then(|(_, v)| match v {
                ArgValue::Poly(p) => Some(p.clone()),
                ArgValue::Int(n) => {
                    Some(Polynomial::constant(&ring, ring.field().from_i64(*n)))
                }
            })
            .ok_or_else(|| Error::InvalidProblem(format!("command requires `{key}=`")))
    };
    let get_int = |key: &str| -> Option<i64> {
        args.iter().find(|(k, _)| k == key).and_then(|(_, v)| match v {
            ArgValue::Int(n) => Some(*n),
            ArgValue::Poly(_) => None,
        })
    };

    let command = match cmd_name.as_str() {
        "saturate" => Command::Saturate { g: get_poly("g")? },
        "satsagbi" => Command::SatSagbi,
        "trunc" | "trunc_satsagbi" => Command::TruncSatSagbi {
            degree: get_int("degree"),
        },
        "mingens" => Command::MinGens,
        "uinv" => Command::Uinv {
            n: get_int("n").map(|n| n as usize),
            degree: get_int("degree"),
        },
        "gb" => Command::Gb,
        "nf" => Command::Nf { f: get_poly("f")? },
        "rel" | "rel_mod" => Command::RelMod { g: get_poly("g")? },
        "toric" => Command::Toric,
        "member" => Command::Member { f: get_poly("f")? },
        other => {
            return Err(Error::InvalidProblem(format!("unknown command `{other}`")))
        }
    };

    Ok(ProblemFile {
        ring,
        order_spec,
        bindings,
        command,
    })
}

#[derive(Debug, Clone)]
enum ArgValue {
    Int(i64),
    Poly(Polynomial),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Canonical text of a term list (used by reports).
pub fn format_term(ring: &Arc<PolyRing>, t: &Term) -> String {
    t.format(ring.vars())
}
