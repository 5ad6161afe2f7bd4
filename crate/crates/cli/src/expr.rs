//! Lattice expression language.
//!
//! ```text
//! expr   := term (("=>" | "<=>") expr)?     right-associative; the two
//!                                           arrows cannot be mixed at one
//!                                           level without parentheses
//! term   := factor ("v" factor)*            join, left-associative
//! factor := atom ("^" atom)*                meet, left-associative
//! atom   := "neg" atom | INT | OMEGA | "(" expr ")"
//! OMEGA  := "Omega" | "Omega({p,...})" | "Omega(~{p,...})"
//! ```
//!
//! Without a modulus, atoms evaluate in the supernatural-number algebra;
//! with one, integer atoms must divide the modulus and evaluation happens
//! in its divisor lattice.

use std::fmt;

use heyq_core::divisor::Modulus;
use heyq_core::supernatural::{PrimeSet, SupernaturalNumber};
use heyq_core::DivisorElement;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OmegaArg {
    All,
    Finite(Vec<u64>),
    Cofinite(Vec<u64>),
}

#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Int { value: u64, pos: usize },
    Omega { arg: OmegaArg, pos: usize },
    Neg(Box<Expr>),
    Meet(Box<Expr>, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
    Implies(Box<Expr>, Box<Expr>),
    Equiv(Box<Expr>, Box<Expr>),
}

#[derive(Clone, PartialEq, Debug)]
pub struct ParseError {
    pub msg: String,
    pub pos: usize,
}

#[derive(Clone, PartialEq, Debug)]
pub struct EvalError {
    pub msg: String,
    pub pos: Option<usize>,
}

#[derive(Clone, PartialEq, Debug)]
pub enum Value {
    Supernatural(SupernaturalNumber),
    Divisor(DivisorElement),
}

impl Value {
    pub fn as_supernatural(&self) -> SupernaturalNumber {
        match self {
            Value::Supernatural(s) => s.clone(),
            Value::Divisor(d) => {
                SupernaturalNumber::from_natural(d.value()).expect("divisors are positive")
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Supernatural(s) => write!(f, "{s}"),
            Value::Divisor(d) => write!(f, "{}", d.value()),
        }
    }
}

// ---------------------------------------------------------------- lexing

#[derive(Clone, PartialEq, Debug)]
enum TokenKind {
    Int(u64),
    Omega(OmegaArg),
    Neg,
    Meet,
    Join,
    Implies,
    Equiv,
    LParen,
    RParen,
}

#[derive(Clone, PartialEq, Debug)]
struct Token {
    kind: TokenKind,
    pos: usize,
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Lexer { bytes: input.as_bytes(), pos: 0 }
    }

    fn error(&self, msg: impl Into<String>, pos: usize) -> ParseError {
        ParseError { msg: msg.into(), pos }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn tokenize(mut self) -> Result<Vec<Token>, ParseError> {
        let mut tokens = Vec::new();
        loop {
            self.skip_ws();
            let pos = self.pos;
            let Some(b) = self.peek() else { break };
            let kind = match b {
                b'(' => {
                    self.pos += 1;
                    TokenKind::LParen
                }
                b')' => {
                    self.pos += 1;
                    TokenKind::RParen
                }
                b'^' => {
                    self.pos += 1;
                    TokenKind::Meet
                }
                b'=' => {
                    if self.bytes[self.pos..].starts_with(b"=>") {
                        self.pos += 2;
                        TokenKind::Implies
                    } else {
                        return Err(self.error("expected `=>`", pos));
                    }
                }
                b'<' => {
                    if self.bytes[self.pos..].starts_with(b"<=>") {
                        self.pos += 3;
                        TokenKind::Equiv
                    } else {
                        return Err(self.error("expected `<=>`", pos));
                    }
                }
                b'0'..=b'9' => TokenKind::Int(self.integer()?),
                b'a'..=b'z' | b'A'..=b'Z' => {
                    let word = self.word();
                    match word {
                        "neg" => TokenKind::Neg,
                        "v" => TokenKind::Join,
                        "Omega" => TokenKind::Omega(self.omega_argument()?),
                        other => {
                            return Err(self.error(format!("unknown word `{other}`"), pos))
                        }
                    }
                }
                other => {
                    return Err(
                        self.error(format!("unexpected character `{}`", other as char), pos)
                    )
                }
            };
            tokens.push(Token { kind, pos });
        }
        Ok(tokens)
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("digits are ascii")
            .parse()
            .map_err(|_| self.error("integer too large", start))
    }

    fn word(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).expect("letters are ascii")
    }

    /// After `Omega`, an optional `({...})` or `(~{...})` set argument. A
    /// bare `(` that does not open a brace set stays untouched so that
    /// `Omega ^ (...)` keeps working.
    fn omega_argument(&mut self) -> Result<OmegaArg, ParseError> {
        let checkpoint = self.pos;
        self.skip_ws();
        if self.peek() != Some(b'(') {
            self.pos = checkpoint;
            return Ok(OmegaArg::All);
        }
        let after_paren = self.pos + 1;
        let mut probe = after_paren;
        while self.bytes.get(probe).is_some_and(|b| b.is_ascii_whitespace()) {
            probe += 1;
        }
        let cofinite = match self.bytes.get(probe) {
            Some(b'{') => false,
            Some(b'~') => true,
            _ => {
                self.pos = checkpoint;
                return Ok(OmegaArg::All);
            }
        };
        self.pos = if cofinite { probe + 1 } else { probe };
        self.skip_ws();
        if self.peek() != Some(b'{') {
            return Err(self.error("expected `{`", self.pos));
        }
        self.pos += 1;
        let mut primes = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'}') => {
                    self.pos += 1;
                    break;
                }
                Some(b) if b.is_ascii_digit() => {
                    primes.push(self.integer()?);
                    self.skip_ws();
                    if self.peek() == Some(b',') {
                        self.pos += 1;
                    }
                }
                _ => return Err(self.error("expected a prime or `}`", self.pos)),
            }
        }
        self.skip_ws();
        if self.peek() != Some(b')') {
            return Err(self.error("expected `)`", self.pos));
        }
        self.pos += 1;
        Ok(if cofinite { OmegaArg::Cofinite(primes) } else { OmegaArg::Finite(primes) })
    }
}

// --------------------------------------------------------------- parsing

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let tokens = Lexer::new(input).tokenize()?;
    let mut parser = Parser { tokens, index: 0, input_len: input.len() };
    let expr = parser.expr()?;
    if let Some(t) = parser.peek_token() {
        return Err(ParseError { msg: "unexpected trailing input".into(), pos: t.pos });
    }
    Ok(expr)
}

struct Parser {
    tokens: Vec<Token>,
    index: usize,
    input_len: usize,
}

impl Parser {
    fn peek_token(&self) -> Option<&Token> {
        self.tokens.get(self.index)
    }

    fn end_pos(&self) -> usize {
        self.input_len
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let first = self.term()?;
        let mut arrows: Vec<(TokenKind, usize, Expr)> = Vec::new();
        while let Some(t) = self.peek_token() {
            let kind = match t.kind {
                TokenKind::Implies => TokenKind::Implies,
                TokenKind::Equiv => TokenKind::Equiv,
                _ => break,
            };
            let pos = t.pos;
            self.index += 1;
            let rhs = self.term()?;
            arrows.push((kind, pos, rhs));
        }
        if let Some(first_mixed) = arrows
            .windows(2)
            .find(|w| w[0].0 != w[1].0)
            .map(|w| w[1].1)
        {
            return Err(ParseError {
                msg: "cannot mix `=>` and `<=>` without parentheses".into(),
                pos: first_mixed,
            });
        }
        // right-associative fold
        let mut iter = arrows.into_iter().rev();
        let Some((kind, _, last)) = iter.next() else { return Ok(first) };
        let mut acc = last;
        for (_, _, operand) in iter {
            acc = arrow(&kind, operand, acc);
        }
        Ok(arrow(&kind, first, acc))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek_token(), Some(t) if t.kind == TokenKind::Join) {
            self.index += 1;
            acc = Expr::Join(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.atom()?;
        while matches!(self.peek_token(), Some(t) if t.kind == TokenKind::Meet) {
            self.index += 1;
            acc = Expr::Meet(Box::new(acc), Box::new(self.atom()?));
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(token) = self.peek_token().cloned() else {
            return Err(ParseError { msg: "expected an atom".into(), pos: self.end_pos() });
        };
        self.index += 1;
        match token.kind {
            TokenKind::Neg => Ok(Expr::Neg(Box::new(self.atom()?))),
            TokenKind::Int(value) => Ok(Expr::Int { value, pos: token.pos }),
            TokenKind::Omega(arg) => Ok(Expr::Omega { arg, pos: token.pos }),
            TokenKind::LParen => {
                let inner = self.expr()?;
                match self.peek_token() {
                    Some(t) if t.kind == TokenKind::RParen => {
                        self.index += 1;
                        Ok(inner)
                    }
                    Some(t) => Err(ParseError { msg: "expected `)`".into(), pos: t.pos }),
                    None => {
                        Err(ParseError { msg: "expected `)`".into(), pos: self.end_pos() })
                    }
                }
            }
            _ => Err(ParseError { msg: "expected an atom".into(), pos: token.pos }),
        }
    }
}

fn arrow(kind: &TokenKind, lhs: Expr, rhs: Expr) -> Expr {
    match kind {
        TokenKind::Implies => Expr::Implies(Box::new(lhs), Box::new(rhs)),
        TokenKind::Equiv => Expr::Equiv(Box::new(lhs), Box::new(rhs)),
        _ => unreachable!("only arrows reach here"),
    }
}

// ------------------------------------------------------------- rendering

const PREC_ARROW: u8 = 1;
const PREC_JOIN: u8 = 2;
const PREC_MEET: u8 = 3;
const PREC_ATOM: u8 = 4;

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Implies(..) | Expr::Equiv(..) => PREC_ARROW,
            Expr::Join(..) => PREC_JOIN,
            Expr::Meet(..) => PREC_MEET,
            Expr::Int { .. } | Expr::Omega { .. } | Expr::Neg(..) => PREC_ATOM,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.precedence();
        let parens = prec < min_prec;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Expr::Int { value, .. } => write!(f, "{value}")?,
            Expr::Omega { arg, .. } => match arg {
                OmegaArg::All => write!(f, "Omega")?,
                OmegaArg::Finite(ps) => write!(f, "Omega({{{}}})", join_ints(ps))?,
                OmegaArg::Cofinite(ps) => write!(f, "Omega(~{{{}}})", join_ints(ps))?,
            },
            Expr::Neg(inner) => {
                write!(f, "neg ")?;
                inner.write(f, PREC_ATOM)?;
            }
            Expr::Meet(l, r) => {
                l.write(f, PREC_MEET)?;
                write!(f, " ^ ")?;
                r.write(f, PREC_MEET + 1)?;
            }
            Expr::Join(l, r) => {
                l.write(f, PREC_JOIN)?;
                write!(f, " v ")?;
                r.write(f, PREC_JOIN + 1)?;
            }
            Expr::Implies(l, r) => {
                l.write(f, PREC_ARROW + 1)?;
                write!(f, " => ")?;
                // right-associative with itself; an equivalence on the
                // right would reparse as mixing, so force parentheses
                if matches!(**r, Expr::Equiv(..)) {
                    write!(f, "(")?;
                    r.write(f, 0)?;
                    write!(f, ")")?;
                } else {
                    r.write(f, PREC_ARROW)?;
                }
            }
            Expr::Equiv(l, r) => {
                l.write(f, PREC_ARROW + 1)?;
                write!(f, " <=> ")?;
                if matches!(**r, Expr::Implies(..)) {
                    write!(f, "(")?;
                    r.write(f, 0)?;
                    write!(f, ")")?;
                } else {
                    r.write(f, PREC_ARROW)?;
                }
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }

    /// Structural copy with every source position zeroed; used to compare
    /// parse trees independently of formatting.
    #[cfg(test)]
    pub fn normalized(&self) -> Expr {
        match self {
            Expr::Int { value, .. } => Expr::Int { value: *value, pos: 0 },
            Expr::Omega { arg, .. } => Expr::Omega { arg: arg.clone(), pos: 0 },
            Expr::Neg(e) => Expr::Neg(Box::new(e.normalized())),
            Expr::Meet(l, r) => Expr::Meet(Box::new(l.normalized()), Box::new(r.normalized())),
            Expr::Join(l, r) => Expr::Join(Box::new(l.normalized()), Box::new(r.normalized())),
            Expr::Implies(l, r) => {
                Expr::Implies(Box::new(l.normalized()), Box::new(r.normalized()))
            }
            Expr::Equiv(l, r) => {
                Expr::Equiv(Box::new(l.normalized()), Box::new(r.normalized()))
            }
        }
    }
}

fn join_ints(values: &[u64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

// ------------------------------------------------------------ evaluation

pub fn eval(expr: &Expr, modulus: Option<&Modulus>) -> Result<Value, EvalError> {
    match expr {
        Expr::Int { value, pos } => match modulus {
            Some(m) => m
                .element(*value)
                .map(Value::Divisor)
                .map_err(|e| EvalError { msg: e.to_string(), pos: Some(*pos) }),
            None => SupernaturalNumber::from_natural(*value)
                .map(Value::Supernatural)
                .map_err(|e| EvalError { msg: e.to_string(), pos: Some(*pos) }),
        },
        Expr::Omega { arg, pos } => {
            if modulus.is_some() {
                return Err(EvalError {
                    msg: "Omega is not a divisor; drop --n to evaluate supernaturals".into(),
                    pos: Some(*pos),
                });
            }
            let set = match arg {
                OmegaArg::All => Ok(PrimeSet::all()),
                OmegaArg::Finite(ps) => PrimeSet::of(ps.iter().copied()),
                OmegaArg::Cofinite(ps) => PrimeSet::cofinite(ps.iter().copied()),
            }
            .map_err(|e| EvalError { msg: e.to_string(), pos: Some(*pos) })?;
            Ok(Value::Supernatural(SupernaturalNumber::omega_over(&set)))
        }
        Expr::Neg(inner) => match eval(inner, modulus)? {
            Value::Supernatural(s) => Ok(Value::Supernatural(s.neg())),
            Value::Divisor(d) => Ok(Value::Divisor(d.neg())),
        },
        Expr::Meet(l, r) => binary(l, r, modulus, |a, b| a.meet(b), |a, b| a.meet(b)),
        Expr::Join(l, r) => binary(l, r, modulus, |a, b| a.join(b), |a, b| a.join(b)),
        Expr::Implies(l, r) => {
            binary(l, r, modulus, |a, b| a.implies(b), |a, b| a.implies(b))
        }
        Expr::Equiv(l, r) => binary(l, r, modulus, |a, b| a.equiv(b), |a, b| a.equiv(b)),
    }
}

fn binary(
    l: &Expr,
    r: &Expr,
    modulus: Option<&Modulus>,
    sn_op: impl Fn(&SupernaturalNumber, &SupernaturalNumber) -> SupernaturalNumber,
    div_op: impl Fn(&DivisorElement, &DivisorElement) -> Result<DivisorElement, heyq_core::divisor::Error>,
) -> Result<Value, EvalError> {
    let lv = eval(l, modulus)?;
    let rv = eval(r, modulus)?;
    match (lv, rv) {
        (Value::Supernatural(a), Value::Supernatural(b)) => {
            Ok(Value::Supernatural(sn_op(&a, &b)))
        }
        (Value::Divisor(a), Value::Divisor(b)) => div_op(&a, &b)
            .map(Value::Divisor)
            .map_err(|e| EvalError { msg: e.to_string(), pos: None }),
        _ => unreachable!("evaluation mode is fixed by the modulus argument"),
    }
}
