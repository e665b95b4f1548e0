//! A small expression language for elements of `G⟨X⟩`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power | power)*      juxtaposition multiplies
//! power  := atom ['^' ['-'] INT]
//! atom   := INT | NAME | NAME '(' [expr (',' expr)*] ')' | '(' expr ')'
//! ```
//!
//! Names are `x1`, `g1`, `p12`, `q`, `lambda` and the constructors `serreL(i,j,n)`,
//! `serreR(j,n,i)`, `bracedL(i,j,n)`, `bracedR(j,n,i)`, `bracedP(i,n)`, `bracket(a,b)`,
//! `g(i)` and `g2top()`. Adjacent atoms may be written without a separator, so
//! `x1x2^3x1` and `g1^2g2*x1` parse as products.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::chargroup::{Mode, Params};
use crate::error::{Error, Result};
use crate::freealg::{lift, Engine, GroupWord, SkewElement};
use crate::linear::Linear;
use crate::render::Format;
use crate::scalar::{Scalar, Var};

/// Parsing and evaluation settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub n: usize,
    pub mode: Mode,
    pub format: Format,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            n: 2,
            mode: Mode::Free,
            format: Format::Text,
        }
    }
}

impl EngineConfig {
    pub fn engine(&self) -> Result<Engine> {
        match self.mode {
            Mode::Free => {
                if self.n == 0 || self.n > 9 {
                    return Err(Error::Eval(format!("n must lie in 1..=9, got {}", self.n)));
                }
                Ok(Engine::new(Params::free(self.n)))
            }
            Mode::G2 if self.n == 2 => Ok(Engine::g2()),
            Mode::G2 => Err(Error::G2RankMismatch(self.n)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

const CONSTRUCTORS: [&str; 8] = ["serreL", "serreR", "bracedL", "bracedR", "bracedP", "bracket", "g2top", "g"];

fn is_known(name: &str) -> bool {
    CONSTRUCTORS.contains(&name) || Var::from_name(name).is_some() || atom_index(name).is_some()
}

/// `x3` or `g3` → the letter and index.
fn atom_index(name: &str) -> Option<(char, usize)> {
    let mut chars = name.chars();
    let c = chars.next()?;
    if c != 'x' && c != 'g' {
        return None;
    }
    let rest = chars.as_str();
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some((c, rest.parse().ok()?))
}

/// Splits glued names such as `x1x2` or `p12q` into known pieces.
fn split_ident(name: &str, col: usize) -> Result<Vec<(String, usize)>> {
    if is_known(name) {
        return Ok(vec![(name.to_string(), col)]);
    }
    let bytes = name.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
            i += 1;
        }
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i + 1 < bytes.len() && bytes[i] == b'_' && bytes[i + 1].is_ascii_digit() {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
        let piece = &name[start..i];
        if piece.is_empty() || !is_known(piece) {
            return Err(Error::Parse {
                column: col + start,
                message: format!("unknown name {name:?}"),
            });
        }
        out.push((piece.to_string(), col + start));
    }
    Ok(out)
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            for (piece, pcol) in split_ident(&s, col)? {
                out.push((Tok::Ident(piece), pcol));
            }
        } else {
            return Err(Error::Parse {
                column: col,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Parsed expression tree; `column` is the 1-based position of the node's first token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub node: Node,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Int(BigInt),
    Name(String),
    Call(String, Vec<Expr>),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.col(),
            message: message.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let column = self.col();
        let mut lhs = if self.eat(&Tok::Minus) {
            let t = self.term()?;
            Expr { node: Node::Neg(Box::new(t)), column }
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr {
                node: Node::Binary(op, Box::new(lhs), Box::new(rhs)),
                column,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let column = self.col();
        let mut lhs = self.power()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    BinOp::Mul
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    BinOp::Div
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) => BinOp::Mul,
                _ => break,
            };
            let rhs = self.power()?;
            lhs = Expr {
                node: Node::Binary(op, Box::new(lhs), Box::new(rhs)),
                column,
            };
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr> {
        let column = self.col();
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let neg = self.eat(&Tok::Minus);
        let Some(Tok::Int(k)) = self.peek().cloned() else {
            return self.err("expected integer exponent");
        };
        let Some(mut k) = k.to_i32() else {
            return self.err("exponent too large");
        };
        self.pos += 1;
        if neg {
            k = -k;
        }
        Ok(Expr {
            node: Node::Pow(Box::new(base), k),
            column,
        })
    }

    fn atom(&mut self) -> Result<Expr> {
        let column = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr { node: Node::Int(v), column })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if CONSTRUCTORS.contains(&name.as_str()) {
                    self.expect(&Tok::LParen, &format!("'(' after {name}"))?;
                    let mut args = Vec::new();
                    if !self.eat(&Tok::RParen) {
                        loop {
                            args.push(self.expr()?);
                            if self.eat(&Tok::RParen) {
                                break;
                            }
                            self.expect(&Tok::Comma, "',' or ')'")?;
                        }
                    }
                    Ok(Expr { node: Node::Call(name, args), column })
                } else {
                    Ok(Expr { node: Node::Name(name), column })
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[derive(Clone, Debug)]
enum Value {
    Scalar(Scalar),
    Skew(SkewElement),
}

impl Value {
    fn into_skew(self) -> SkewElement {
        match self {
            Value::Scalar(c) => Linear::term(GroupWord::unit(), c),
            Value::Skew(a) => a,
        }
    }

    fn as_scalar(&self) -> Option<Scalar> {
        match self {
            Value::Scalar(c) => Some(c.clone()),
            Value::Skew(a) if a.is_zero() => Some(Scalar::zero()),
            Value::Skew(a) if a.len() == 1 => {
                let (b, c) = a.iter().next()?;
                (*b == GroupWord::unit()).then(|| c.clone())
            }
            Value::Skew(_) => None,
        }
    }
}

fn eval_err<T>(column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        column,
        message: message.into(),
    })
}

struct Evaluator<'a> {
    engine: Option<&'a Engine>,
}

impl Evaluator<'_> {
    fn engine(&self, column: usize, what: &str) -> Result<&Engine> {
        match self.engine {
            Some(e) => Ok(e),
            None => eval_err(column, format!("{what} is not a scalar")),
        }
    }

    fn index(&self, e: &Expr) -> Result<u32> {
        let v = self.eval(e)?;
        let c = v.as_scalar().and_then(|s| s.as_rational());
        match c {
            Some(r) if r.is_integer() && !r.is_negative() => match r.to_integer().to_u32() {
                Some(k) => Ok(k),
                None => eval_err(e.column, "integer argument too large"),
            },
            _ => eval_err(e.column, "expected a nonnegative integer argument"),
        }
    }

    fn call(&self, name: &str, args: &[Expr], column: usize) -> Result<Value> {
        let arity = match name {
            "serreL" | "serreR" | "bracedL" | "bracedR" => 3,
            "bracedP" | "bracket" => 2,
            "g" => 1,
            _ => 0,
        };
        if args.len() != arity {
            return eval_err(column, format!("{name} takes {arity} argument(s), got {}", args.len()));
        }
        let e = self.engine(column, name)?;
        let ix = |k: usize| self.index(&args[k]).map(|v| v as usize);
        let out = match name {
            "serreL" => lift(&e.serre_left(ix(0)?, ix(1)?, ix(2)? as u32)?),
            "serreR" => lift(&e.serre_right(ix(0)?, ix(1)? as u32, ix(2)?)?),
            "bracedL" => lift(&e.braced_left(ix(0)?, ix(1)?, ix(2)? as u32)?),
            "bracedR" => lift(&e.braced_right(ix(0)?, ix(1)? as u32, ix(2)?)?),
            "bracedP" => lift(&e.braced_power(ix(0)?, ix(1)? as u32)?),
            "bracket" => {
                let a = self.eval(&args[0])?.into_skew();
                let b = self.eval(&args[1])?.into_skew();
                e.skew_bracket(&a, &b)?
            }
            "g" => e.g(ix(0)?)?,
            "g2top" => lift(&crate::g2::g2_top_element(e)?),
            _ => unreachable!("constructor list"),
        };
        Ok(Value::Skew(out))
    }

    fn name(&self, name: &str, column: usize) -> Result<Value> {
        if let Some(v) = Var::from_name(name) {
            return Ok(Value::Scalar(match self.engine {
                Some(e) => e.params().resolve(v)?,
                None => Scalar::var(v),
            }));
        }
        match atom_index(name) {
            Some(('x', i)) => Ok(Value::Skew(lift(&self.engine(column, name)?.x(i)?))),
            Some((_, i)) => Ok(Value::Skew(self.engine(column, name)?.g(i)?)),
            None => eval_err(column, format!("unknown name {name:?}")),
        }
    }

    fn eval(&self, e: &Expr) -> Result<Value> {
        match &e.node {
            Node::Int(v) => Ok(Value::Scalar(Scalar::from_rational(BigRational::from_integer(v.clone())))),
            Node::Name(n) => self.name(n, e.column),
            Node::Call(n, args) => self.call(n, args, e.column),
            Node::Neg(x) => Ok(match self.eval(x)? {
                Value::Scalar(c) => Value::Scalar(-c),
                Value::Skew(a) => Value::Skew(-a),
            }),
            Node::Pow(x, k) => self.pow(self.eval(x)?, *k, e.column),
            Node::Binary(op, a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.binary(*op, a, b, e.column)
            }
        }
    }

    fn pow(&self, v: Value, k: i32, column: usize) -> Result<Value> {
        if let Value::Scalar(c) = &v {
            return Ok(Value::Scalar(c.pow(k)?));
        }
        let e = self.engine(column, "power")?;
        let a = v.into_skew();
        if k >= 0 {
            return Ok(Value::Skew(e.power(&a, k as u32)));
        }
        // negative powers only for bare group elements
        let mut it = a.iter();
        match (it.next(), it.next()) {
            (Some((b, c)), None) if b.word.is_empty() && c.is_one() => {
                let g = b.group.pow(k);
                Ok(Value::Skew(Linear::basis(GroupWord::from_group(g))))
            }
            _ => eval_err(column, "negative powers are defined only for scalars and group elements"),
        }
    }

    fn binary(&self, op: BinOp, a: Value, b: Value, column: usize) -> Result<Value> {
        use Value::*;
        Ok(match (op, a, b) {
            (BinOp::Add, Scalar(x), Scalar(y)) => Scalar(x + y),
            (BinOp::Sub, Scalar(x), Scalar(y)) => Scalar(x - y),
            (BinOp::Mul, Scalar(x), Scalar(y)) => Scalar(x * y),
            (BinOp::Div, a, b) => {
                let Some(d) = b.as_scalar() else {
                    return eval_err(column, "division by a non-scalar");
                };
                let inv = d.inv()?;
                match a {
                    Scalar(x) => Scalar(x * inv),
                    Skew(x) => Skew(x.scale(&inv)),
                }
            }
            (BinOp::Mul, Scalar(x), Skew(y)) | (BinOp::Mul, Skew(y), Scalar(x)) => Skew(y.scale(&x)),
            (BinOp::Mul, a, b) => {
                let e = self.engine(column, "product")?;
                Skew(e.multiply(&a.into_skew(), &b.into_skew()))
            }
            (BinOp::Add, a, b) => Skew(a.into_skew() + b.into_skew()),
            (BinOp::Sub, a, b) => Skew(a.into_skew() - b.into_skew()),
        })
    }
}

/// Evaluates a parsed expression in `G⟨X⟩` with the engine's parameters.
pub fn evaluate(e: &Expr, engine: &Engine) -> Result<SkewElement> {
    Ok(Evaluator { engine: Some(engine) }.eval(e)?.into_skew())
}

/// Parses and evaluates in one step.
pub fn parse_element(text: &str, engine: &Engine) -> Result<SkewElement> {
    evaluate(&parse_expression(text)?, engine)
}

/// Parses a scalar expression over the raw indeterminates (no parameter aliasing).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let e = parse_expression(text)?;
    match (Evaluator { engine: None }).eval(&e)? {
        Value::Scalar(c) => Ok(c),
        Value::Skew(_) => eval_err(e.column, "expected a scalar"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chargroup::{GroupElement, Word};
    use crate::render::skew_text;

    fn free() -> Engine {
        Engine::free(2)
    }

    #[test]
    fn bracket_call() {
        let e = free();
        let a = parse_element("bracket(x1,x2)", &e).unwrap();
        assert_eq!(a, lift(&e.serre_left(1, 2, 1).unwrap()));
    }

    #[test]
    fn serre_and_sum_of_products() {
        let e = free();
        assert_eq!(
            parse_element("serreL(1,2,3)", &e).unwrap(),
            lift(&e.serre_left(1, 2, 3).unwrap())
        );
        let s = parse_element("x1*x2 - x2*x1", &e).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(skew_text(&s), "x1x2 - x2x1");
    }

    #[test]
    fn juxtaposition_and_powers() {
        let e = free();
        let a = parse_element("x1x2^3x1", &e).unwrap();
        assert_eq!(a, Linear::basis(GroupWord::from_word(Word::from_letters([1, 2, 2, 2, 1]))));
        let g = parse_element("g1^2g2^-1", &e).unwrap();
        assert_eq!(
            g,
            Linear::basis(GroupWord::from_group(GroupElement::from_exponents([2, -1])))
        );
        let c = parse_element("p21^-1*q^3/(1 - q)", &e).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn g2_errors() {
        let err = parse_element("g2top()", &free()).unwrap_err();
        assert_eq!(err.to_string(), "g2top requires g2 mode");
        let err = parse_element("bracedL(1,2,4)", &Engine::g2()).unwrap_err();
        assert!(err.to_string().contains("undefined scaled element"), "{err}");
        assert!(parse_element("g2top()", &Engine::g2()).is_ok());
    }

    #[test]
    fn positions_in_errors() {
        match parse_expression("x1 + * x2") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        match parse_expression("x1 + foo") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_element("x3", &free()), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn text_round_trip() {
        let e = free();
        for s in ["bracedL(1,2,2)", "serreR(2,2,1)", "g1*x2 - 3/2*p12*x2x1", "bracedP(2,3) + 1"] {
            let a = parse_element(s, &e).unwrap();
            let b = parse_element(&skew_text(&a), &e).unwrap();
            assert_eq!(a, b, "{s}");
        }
    }

    #[test]
    fn scalars_parse_raw() {
        let c = parse_scalar("(1 - p12*p21*q)/(1 - q)").unwrap();
        assert_eq!(c.to_string(), "(1 - p12*p21*q)/(1 - q)");
        assert!(parse_scalar("x1").is_err());
    }
}
