//! Tiny prefix-call expression language over numbers and ordinals.
//!
//! Grammar (whitespace-insensitive, no infix operators):
//!
//! ```text
//! program  := (let NAME = expr ;)* expr
//! expr     := call | atom
//! call     := NAME "(" expr ("," expr)* ")"
//! atom     := run literal "[...]" | ordinal notation | integer | NAME
//! ```
//!
//! Run literals are atomic tokens (everything up to the matching `]`), and
//! ordinal notations like `w^(w+1)*2` keep their parenthesized exponents
//! glued to the token, so `eps(0)` is always a call — it evaluates to the
//! number `[+eps(0)]`, which coerces back to the ordinal `eps(0)` wherever
//! an ordinal is expected.

use std::collections::HashMap;
use std::fmt;

use surreal_core::logatomic::{la_e, la_lambda, la_rho, la_shift, Convention};
use surreal_core::maps::{map_eps, map_iota, map_kappa, map_mo, map_mo_inv, map_v, StructParams};
use surreal_core::{Error, Number, OrdinalTerm, Result, SignedNumber};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Atom(String),
    Call(String, Vec<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(s) => write!(f, "{s}"),
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(Number),
    Ord(OrdinalTerm),
    Flat(SignedNumber),
    Cmp(std::cmp::Ordering),
}

impl Value {
    pub fn render(&self) -> String {
        match self {
            Value::Num(n) => n.to_string(),
            Value::Ord(o) => o.to_string(),
            Value::Flat(s) => s.to_string(),
            Value::Cmp(std::cmp::Ordering::Less) => "lt".into(),
            Value::Cmp(std::cmp::Ordering::Equal) => "eq".into(),
            Value::Cmp(std::cmp::Ordering::Greater) => "gt".into(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Num(n) => n.to_json(),
            other => serde_json::json!({ "value": other.render() }),
        }
    }

    fn as_num(&self) -> Result<Number> {
        match self {
            Value::Num(n) => Ok(n.clone()),
            Value::Ord(o) => Ok(Number::from_ordinal(o)),
            other => Err(Error::DomainError(format!("expected a number, got {}", other.render()))),
        }
    }

    fn as_ord(&self) -> Result<OrdinalTerm> {
        match self {
            Value::Ord(o) => Ok(o.clone()),
            Value::Num(n) => n.as_ordinal(),
            other => Err(Error::DomainError(format!("expected an ordinal, got {}", other.render()))),
        }
    }

    fn as_int(&self) -> Result<i64> {
        let n = self.as_num()?;
        if n.is_zero() {
            return Ok(0);
        }
        let runs = n.explicit_runs()?;
        if runs.len() != 1 {
            return Err(Error::NotFinite);
        }
        let k: i64 = runs[0]
            .len
            .as_nat()
            .and_then(|v| i64::try_from(&v).ok())
            .ok_or(Error::NotFinite)?;
        Ok(k * i64::from(runs[0].sign.as_i8()))
    }
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Atom(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Equals,
    Let,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col, msg)
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn tokens(mut self) -> Result<Vec<(Token, usize, usize)>> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.bump();
                continue;
            }
            let (line, col) = (self.line, self.col);
            let token = match c {
                b'(' => {
                    self.bump();
                    Token::LParen
                }
                b')' => {
                    self.bump();
                    Token::RParen
                }
                b',' => {
                    self.bump();
                    Token::Comma
                }
                b';' => {
                    self.bump();
                    Token::Semi
                }
                b'=' => {
                    self.bump();
                    Token::Equals
                }
                b'[' => Token::Atom(self.bracketed()?),
                _ => {
                    let atom = self.atom()?;
                    if atom == "let" {
                        Token::Let
                    } else {
                        Token::Atom(atom)
                    }
                }
            };
            out.push((token, line, col));
        }
        Ok(out)
    }

    /// A run literal: everything up to the matching `]`.
    fn bracketed(&mut self) -> Result<String> {
        let start = self.pos;
        let mut depth = 0usize;
        while let Some(c) = self.peek() {
            self.bump();
            match c {
                b'[' => depth += 1,
                b']' => {
                    depth -= 1;
                    if depth == 0 {
                        let text = &self.src[start..self.pos];
                        return Ok(String::from_utf8_lossy(text).into_owned());
                    }
                }
                _ => {}
            }
        }
        Err(self.err("unterminated run literal"))
    }

    /// A bare atom. A `(` directly after `^` belongs to an ordinal exponent
    /// and is consumed with its matching `)`; any other `(` ends the atom
    /// (it opens a call).
    fn atom(&mut self) -> Result<String> {
        let start = self.pos;
        let mut prev = 0u8;
        while let Some(c) = self.peek() {
            match c {
                b'(' if prev == b'^' => {
                    let mut depth = 0usize;
                    while let Some(c2) = self.peek() {
                        self.bump();
                        match c2 {
                            b'(' => depth += 1,
                            b')' => {
                                depth -= 1;
                                if depth == 0 {
                                    break;
                                }
                            }
                            _ => {}
                        }
                    }
                    if depth != 0 {
                        return Err(self.err("unterminated exponent"));
                    }
                    prev = b')';
                }
                c if c.is_ascii_alphanumeric() || matches!(c, b'_' | b'^' | b'*' | b'+' | b'-') => {
                    prev = self.bump();
                }
                _ => break,
            }
        }
        if self.pos == start {
            Err(self.err(format!("unexpected character {:?}", self.peek().map(char::from))))
        } else {
            Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
        }
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

pub struct Program {
    pub bindings: Vec<(String, Expr)>,
    pub body: Expr,
}

struct Parser {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn err_at(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self
            .tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((1, 1));
        Error::parse(line, col, msg)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Token, what: &str) -> Result<()> {
        match self.bump() {
            Some(ref t) if t == want => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err_at(format!("expected {what}")))
            }
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let atom = match self.bump() {
            Some(Token::Atom(s)) => s,
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.err_at("expected an expression"));
            }
        };
        if self.peek() != Some(&Token::LParen) {
            return Ok(Expr::Atom(atom));
        }
        self.bump();
        let mut args = Vec::new();
        if self.peek() == Some(&Token::RParen) {
            self.bump();
            return Ok(Expr::Call(atom, args));
        }
        loop {
            args.push(self.expr()?);
            match self.bump() {
                Some(Token::Comma) => continue,
                Some(Token::RParen) => break,
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return Err(self.err_at("expected `,` or `)`"));
                }
            }
        }
        Ok(Expr::Call(atom, args))
    }

    fn program(&mut self) -> Result<Program> {
        let mut bindings = Vec::new();
        while self.peek() == Some(&Token::Let) {
            self.bump();
            let name = match self.bump() {
                Some(Token::Atom(s)) => s,
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return Err(self.err_at("expected a name after `let`"));
                }
            };
            self.expect(&Token::Equals, "`=`")?;
            let value = self.expr()?;
            self.expect(&Token::Semi, "`;` after `let` binding")?;
            bindings.push((name, value));
        }
        let body = self.expr()?;
        if self.pos != self.tokens.len() {
            return Err(self.err_at("trailing input after expression"));
        }
        Ok(Program { bindings, body })
    }
}

pub fn parse_program(text: &str) -> Result<Program> {
    let tokens = Lexer::new(text).tokens()?;
    Parser { tokens, pos: 0 }.program()
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let program = parse_program(text)?;
    if program.bindings.is_empty() {
        Ok(program.body)
    } else {
        Err(Error::parse(1, 1, "`let` bindings are not allowed here"))
    }
}

// ---------------------------------------------------------------------------
// Evaluator
// ---------------------------------------------------------------------------

pub struct Env {
    pub convention: Convention,
    bindings: HashMap<String, Value>,
}

impl Env {
    pub fn new(convention: Convention) -> Env {
        Env { convention, bindings: HashMap::new() }
    }

    pub fn eval_program(&mut self, program: &Program) -> Result<Value> {
        for (name, expr) in &program.bindings {
            let value = self.eval(expr)?;
            self.bindings.insert(name.clone(), value);
        }
        self.eval(&program.body)
    }

    pub fn eval(&self, expr: &Expr) -> Result<Value> {
        match expr {
            Expr::Atom(text) => self.eval_atom(text),
            Expr::Call(name, args) => self.eval_call(name, args),
        }
    }

    fn eval_atom(&self, text: &str) -> Result<Value> {
        if let Some(v) = self.bindings.get(text) {
            return Ok(v.clone());
        }
        if text.starts_with('[') || text == "0" || text.starts_with('-') {
            if let Ok(n) = text.parse::<Number>() {
                return Ok(Value::Num(n));
            }
            if let Ok(k) = text.parse::<i64>() {
                return Ok(Value::Num(Number::from_int(k)));
            }
            return Err(Error::parse(1, 1, format!("cannot parse {text:?}")));
        }
        if let Ok(k) = text.parse::<i64>() {
            return Ok(Value::Num(Number::from_int(k)));
        }
        if let Ok(o) = text.parse::<OrdinalTerm>() {
            return Ok(Value::Ord(o));
        }
        Err(Error::parse(1, 1, format!("unknown name or literal {text:?}")))
    }

    fn eval_call(&self, name: &str, args: &[Expr]) -> Result<Value> {
        let vals: Vec<Value> = args.iter().map(|a| self.eval(a)).collect::<Result<_>>()?;
        let arity = |n: usize| -> Result<()> {
            if vals.len() == n {
                Ok(())
            } else {
                Err(Error::DomainError(format!(
                    "{name} expects {n} argument(s), got {}",
                    vals.len()
                )))
            }
        };
        let num = |i: usize| vals[i].as_num();
        match name {
            "mo" => {
                arity(1)?;
                Ok(Value::Num(map_mo(&num(0)?)?))
            }
            "moinv" => {
                arity(1)?;
                Ok(Value::Num(map_mo_inv(&num(0)?)?))
            }
            "eps" => {
                arity(1)?;
                Ok(Value::Num(map_eps(&num(0)?)?))
            }
            "iota" => {
                arity(1)?;
                Ok(Value::Num(map_iota(&num(0)?)?))
            }
            "kappa" => {
                arity(1)?;
                Ok(Value::Num(map_kappa(&num(0)?)?))
            }
            "rho" => {
                arity(1)?;
                Ok(Value::Num(la_rho(&num(0)?, &self.convention)?))
            }
            "lambda" => {
                arity(1)?;
                Ok(Value::Num(la_lambda(&num(0)?, &self.convention)?))
            }
            "E" => {
                arity(1)?;
                Ok(Value::Num(la_e(&num(0)?, &self.convention)?))
            }
            "V" => {
                arity(1)?;
                Ok(Value::Num(map_v(&StructParams::new(&num(0)?))?))
            }
            "shift" => {
                arity(2)?;
                Ok(Value::Num(la_shift(&num(0)?, vals[1].as_int()?)?))
            }
            "tau" => {
                arity(1)?;
                Ok(Value::Ord(num(0)?.tau()))
            }
            "flat" => {
                arity(1)?;
                Ok(Value::Flat(num(0)?.flat()?))
            }
            "simplest" => {
                arity(2)?;
                Ok(Value::Num(Number::simplest_between(&num(0)?, &num(1)?)?))
            }
            "cmp" => {
                arity(2)?;
                Ok(Value::Cmp(num(0)?.cmp_num(&num(1)?)?))
            }
            "cat" => {
                arity(2)?;
                Ok(Value::Num(num(0)?.concat(&num(1)?)?))
            }
            "neg" => {
                arity(1)?;
                Ok(Value::Num(num(0)?.neg()))
            }
            "scale" => {
                arity(2)?;
                Ok(Value::Num(num(1)?.scale_left(&vals[0].as_ord()?)?))
            }
            "rep" => {
                arity(2)?;
                Ok(Value::Num(num(0)?.repeat(vals[1].as_int()?)?))
            }
            other => Err(Error::DomainError(format!("unknown function {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(text: &str) -> String {
        let mut env = Env::new(Convention::PAPER_VERBATIM);
        let program = parse_program(text).unwrap();
        env.eval_program(&program).unwrap().render()
    }

    #[test]
    fn atoms_and_calls() {
        assert_eq!(eval("[+w, -1]"), "[+w, -1]");
        assert_eq!(eval("mo([+1, -1])"), "[+w, -w^(2)]");
        assert_eq!(eval("mo(mo([+1]))"), "[+w^(w)]");
        assert_eq!(eval("lambda([-1])"), "[+w, -w^(3)]");
        assert_eq!(eval("cmp([+w], [+w, +1])"), "lt");
        assert_eq!(eval("tau([+w, -1, +w^(2)])"), "w^(2)");
        assert_eq!(eval("eps(0)"), "[+eps(0)]");
    }

    #[test]
    fn ordinal_atoms_keep_exponents() {
        assert_eq!(eval("scale(w^(2), [+1, -1])"), "[+w^(2), -w^(2)]");
        assert_eq!(eval("rep([+1, -1], 2)"), "[+1, -1, +1, -1]");
    }

    #[test]
    fn let_bindings() {
        assert_eq!(eval("let x = mo([+1]); cmp(x, [+w])"), "eq");
        assert_eq!(eval("let x = [+1]; let y = mo(x); cat(y, neg(x))"), "[+w, -1]");
    }

    #[test]
    fn parse_errors_are_positioned() {
        for bad in ["mo(", "mo)", "let = 3; 0", "[+w", "f(1,)", "1 2"] {
            assert!(parse_program(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn parse_print_roundtrip() {
        for text in ["mo([+1, -1])", "cat([+w], neg([+1]))", "shift([+1, -1], -1)"] {
            let expr = parse_expr(text).unwrap();
            let printed = expr.to_string();
            assert_eq!(parse_expr(&printed).unwrap(), expr);
        }
    }
}
