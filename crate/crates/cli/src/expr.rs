//! The expression language: lexer, parser, and printer.
//!
//! Grammar, in order of loosening precedence:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | "*'") factor)*
//! factor := '-' factor | scalar | call | tuple | '(' expr ')'
//! call   := ('d' | 'S' | 'eps' | 'delta' | 'smash') '(' expr (',' expr)* ')'
//! tuple  := '(' group '|' word_dot '|' word_wedge ['|' word_dot] ')'
//! group  := 'e' | 'g' digits | 'M' '(' srat ',' srat ',' srat ')'
//!         | 'perm' '(' int (',' int)* ')'
//! word   := '1' | ident (sep ident)*        with sep '.' or '^'
//! scalar := digits ['/' digits]
//! srat   := ['-'] scalar
//! ```
//!
//! The unary minus is a superset of the published grammar so that every
//! canonically printed element, including those with a negative leading
//! coefficient, parses back to an equivalent expression. Every syntax error
//! carries the line and column where scanning stopped.

use std::fmt;

use hopf_currents::{Error, Result, Scalar};

/// A group element literal; which shapes are meaningful depends on the
/// group backend of the evaluating context.
#[derive(Clone, Debug, PartialEq)]
pub enum PointLit {
    /// The identity of any group kind.
    Identity,
    /// `gK`: index K in a Cayley table.
    Cayley(u16),
    /// `M(a,b,c)`: the rational unitriangular matrix with upper row
    /// (1, a, c) and middle row (0, 1, b).
    Unitri(Scalar, Scalar, Scalar),
    /// `perm(i0,...,ik)`: one-line form.
    Perm(Vec<u8>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CallOp {
    Boundary,
    Antipode,
    Counit,
    Coproduct,
    Smash,
}

impl CallOp {
    pub fn name(self) -> &'static str {
        match self {
            CallOp::Boundary => "d",
            CallOp::Antipode => "S",
            CallOp::Counit => "eps",
            CallOp::Coproduct => "delta",
            CallOp::Smash => "smash",
        }
    }

    fn arity(self) -> usize {
        match self {
            CallOp::Smash => 2,
            _ => 1,
        }
    }

    fn from_name(name: &str) -> Option<CallOp> {
        match name {
            "d" => Some(CallOp::Boundary),
            "S" => Some(CallOp::Antipode),
            "eps" => Some(CallOp::Counit),
            "delta" => Some(CallOp::Coproduct),
            "smash" => Some(CallOp::Smash),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Scalar),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    /// `*`: convolution, or scaling when one side is a scalar.
    Convolve(Box<Expr>, Box<Expr>),
    /// `*'`: the plain group-ring product.
    GroupRing(Box<Expr>, Box<Expr>),
    /// A current term `(g | v | a)`, or a four-slot term with the optional
    /// trailing word. Empty letter lists stand for the unit slot `1`.
    Tuple {
        point: PointLit,
        even: Vec<String>,
        odd: Vec<String>,
        right: Option<Vec<String>>,
    },
    Call(CallOp, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Rat(String),
    Ident(String),
    LParen,
    RParen,
    Pipe,
    Plus,
    Minus,
    Star,
    StarPrime,
    Dot,
    Caret,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Rat(s) => write!(f, "{s}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::Pipe => write!(f, "|"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::StarPrime => write!(f, "*'"),
            Tok::Dot => write!(f, "."),
            Tok::Caret => write!(f, "^"),
            Tok::Comma => write!(f, ","),
        }
    }
}

#[derive(Clone, Debug)]
struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl fmt::Display) -> Error {
    Error::Invalid(format!("syntax error at line {line}, column {col}: {msg}"))
}

fn lex(src: &str) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = match c {
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            '|' => {
                bump(&mut chars);
                Tok::Pipe
            }
            '+' => {
                bump(&mut chars);
                Tok::Plus
            }
            '-' => {
                bump(&mut chars);
                Tok::Minus
            }
            '.' => {
                bump(&mut chars);
                Tok::Dot
            }
            '^' => {
                bump(&mut chars);
                Tok::Caret
            }
            ',' => {
                bump(&mut chars);
                Tok::Comma
            }
            '*' => {
                bump(&mut chars);
                if chars.peek() == Some(&'\'') {
                    bump(&mut chars);
                    Tok::StarPrime
                } else {
                    Tok::Star
                }
            }
            '0'..='9' => {
                let mut text = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    text.push(bump(&mut chars));
                }
                if chars.peek() == Some(&'/') {
                    let mut fork = chars.clone();
                    fork.next();
                    if fork.peek().is_some_and(|c| c.is_ascii_digit()) {
                        text.push(bump(&mut chars));
                        while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                            text.push(bump(&mut chars));
                        }
                    }
                }
                Tok::Rat(text)
            }
            c if c.is_ascii_alphabetic() => {
                let mut text = String::new();
                while chars
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    text.push(bump(&mut chars));
                }
                Tok::Ident(text)
            }
            other => return Err(syntax(tline, tcol, format!("unexpected character {other:?}"))),
        };
        out.push(Lexed { tok, line: tline, col: tcol });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |l| (l.line, l.col))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|l| l.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, msg: impl fmt::Display) -> Result<T> {
        let (line, col) = self.here();
        Err(syntax(line, col, msg))
    }

    fn expect(&mut self, want: &Tok) -> Result<()> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => {
                let t = t.clone();
                self.fail(format!("expected {want}, found {t}"))
            }
            None => self.fail(format!("expected {want}, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = Expr::Convolve(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Tok::StarPrime) => {
                    self.pos += 1;
                    acc = Expr::GroupRing(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some(Tok::Rat(text)) => {
                let value: Scalar = text.parse()?;
                self.pos += 1;
                Ok(Expr::Num(value))
            }
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                match CallOp::from_name(&name) {
                    Some(op) => self.call(op),
                    None => self.fail(format!("unknown identifier {name}")),
                }
            }
            Some(Tok::LParen) => {
                if self.paren_holds_tuple() {
                    self.tuple()
                } else {
                    self.pos += 1;
                    let inner = self.expr()?;
                    self.expect(&Tok::RParen)?;
                    Ok(inner)
                }
            }
            Some(other) => {
                let other = other.clone();
                self.fail(format!("expected an expression, found {other}"))
            }
            None => self.fail("expected an expression, found end of input"),
        }
    }

    /// Decide whether the '(' at the cursor opens a tuple: scan for a '|'
    /// before the matching ')'.
    fn paren_holds_tuple(&self) -> bool {
        let mut depth = 0usize;
        for lexed in &self.toks[self.pos..] {
            match lexed.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    if depth <= 1 {
                        return false;
                    }
                    depth -= 1;
                }
                Tok::Pipe if depth == 1 => return true,
                _ => {}
            }
        }
        false
    }

    fn call(&mut self, op: CallOp) -> Result<Expr> {
        self.pos += 1;
        self.expect(&Tok::LParen)?;
        let mut args = vec![self.expr()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            args.push(self.expr()?);
        }
        self.expect(&Tok::RParen)?;
        if args.len() != op.arity() {
            return self.fail(format!(
                "{} takes {} argument(s), found {}",
                op.name(),
                op.arity(),
                args.len()
            ));
        }
        Ok(Expr::Call(op, args))
    }

    fn tuple(&mut self) -> Result<Expr> {
        self.expect(&Tok::LParen)?;
        let point = self.point()?;
        self.expect(&Tok::Pipe)?;
        let even = self.word(&Tok::Dot)?;
        self.expect(&Tok::Pipe)?;
        let odd = self.word(&Tok::Caret)?;
        let right = if self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            Some(self.word(&Tok::Dot)?)
        } else {
            None
        };
        self.expect(&Tok::RParen)?;
        Ok(Expr::Tuple { point, even, odd, right })
    }

    fn point(&mut self) -> Result<PointLit> {
        match self.next() {
            Some(Tok::Ident(name)) => {
                if name == "e" {
                    Ok(PointLit::Identity)
                } else if name == "M" {
                    self.expect(&Tok::LParen)?;
                    let a = self.signed_rational()?;
                    self.expect(&Tok::Comma)?;
                    let b = self.signed_rational()?;
                    self.expect(&Tok::Comma)?;
                    let c = self.signed_rational()?;
                    self.expect(&Tok::RParen)?;
                    Ok(PointLit::Unitri(a, b, c))
                } else if name == "perm" {
                    self.expect(&Tok::LParen)?;
                    let mut images = vec![self.small_int()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        images.push(self.small_int()?);
                    }
                    self.expect(&Tok::RParen)?;
                    Ok(PointLit::Perm(images))
                } else if let Some(rest) = name.strip_prefix('g') {
                    match rest.parse::<u16>() {
                        Ok(k) => Ok(PointLit::Cayley(k)),
                        Err(_) => {
                            self.pos -= 1;
                            self.fail(format!("bad group element literal {name}"))
                        }
                    }
                } else {
                    self.pos -= 1;
                    self.fail(format!("bad group element literal {name}"))
                }
            }
            Some(other) => {
                self.pos -= 1;
                self.fail(format!("expected a group element, found {other}"))
            }
            None => self.fail("expected a group element, found end of input"),
        }
    }

    fn signed_rational(&mut self) -> Result<Scalar> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek() {
            Some(Tok::Rat(text)) => {
                let v: Scalar = text.parse()?;
                self.pos += 1;
                Ok(if neg { -&v } else { v })
            }
            _ => self.fail("expected a rational"),
        }
    }

    fn small_int(&mut self) -> Result<u8> {
        match self.peek() {
            Some(Tok::Rat(text)) => match text.parse::<u8>() {
                Ok(v) => {
                    self.pos += 1;
                    Ok(v)
                }
                Err(_) => self.fail("expected a small integer"),
            },
            _ => self.fail("expected a small integer"),
        }
    }

    /// A slot word: `1` for the unit, else identifiers joined by `sep`.
    fn word(&mut self, sep: &Tok) -> Result<Vec<String>> {
        match self.peek() {
            Some(Tok::Rat(text)) if text == "1" => {
                self.pos += 1;
                Ok(Vec::new())
            }
            Some(Tok::Ident(_)) => {
                let mut letters = Vec::new();
                loop {
                    match self.peek() {
                        Some(Tok::Ident(name)) => {
                            letters.push(name.clone());
                            self.pos += 1;
                        }
                        _ => return self.fail("expected a basis letter"),
                    }
                    if self.peek() == Some(sep) {
                        self.pos += 1;
                    } else {
                        return Ok(letters);
                    }
                }
            }
            _ => self.fail("expected a slot word (1 or letters)"),
        }
    }
}

/// Parse a complete expression; trailing tokens are an error.
pub fn parse(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let mut end = (1usize, 1usize);
    if let Some(last) = toks.last() {
        end = (last.line, last.col + 1);
    }
    let mut p = Parser { toks, pos: 0, end };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.fail("trailing input after the expression");
    }
    Ok(e)
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Convolve(..) | Expr::GroupRing(..) => 2,
        Expr::Neg(..) => 3,
        _ => 4,
    }
}

fn show_prec(e: &Expr, min: u8, out: &mut String) {
    let mine = precedence(e);
    if mine < min {
        out.push('(');
    }
    match e {
        Expr::Num(v) => out.push_str(&v.to_string()),
        Expr::Neg(inner) => {
            out.push('-');
            show_prec(inner, 3, out);
        }
        Expr::Add(a, b) => {
            show_prec(a, 1, out);
            out.push_str(" + ");
            show_prec(b, 2, out);
        }
        Expr::Sub(a, b) => {
            show_prec(a, 1, out);
            out.push_str(" - ");
            show_prec(b, 2, out);
        }
        Expr::Convolve(a, b) => {
            show_prec(a, 2, out);
            out.push('*');
            show_prec(b, 3, out);
        }
        Expr::GroupRing(a, b) => {
            show_prec(a, 2, out);
            out.push_str("*'");
            show_prec(b, 3, out);
        }
        Expr::Tuple { point, even, odd, right } => {
            out.push('(');
            match point {
                PointLit::Identity => out.push('e'),
                PointLit::Cayley(k) => out.push_str(&format!("g{k}")),
                PointLit::Unitri(a, b, c) => out.push_str(&format!("M({a},{b},{c})")),
                PointLit::Perm(images) => {
                    out.push_str("perm(");
                    for (i, v) in images.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        out.push_str(&v.to_string());
                    }
                    out.push(')');
                }
            }
            out.push_str(" | ");
            out.push_str(&join_word(even, '.'));
            out.push_str(" | ");
            out.push_str(&join_word(odd, '^'));
            if let Some(right) = right {
                out.push_str(" | ");
                out.push_str(&join_word(right, '.'));
            }
            out.push(')');
        }
        Expr::Call(op, args) => {
            out.push_str(op.name());
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                show_prec(a, 1, out);
            }
            out.push(')');
        }
    }
    if mine < min {
        out.push(')');
    }
}

fn join_word(letters: &[String], sep: char) -> String {
    if letters.is_empty() {
        "1".to_string()
    } else {
        letters.join(&sep.to_string())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        show_prec(self, 1, &mut s);
        write!(f, "{s}")
    }
}
