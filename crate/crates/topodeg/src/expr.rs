//! Arithmetic expressions for field components given on the command line,
//! e.g. `vx=-sin(u)*cos(v)`. Supports + - * / ^ (right associative),
//! parentheses, unary minus, `pi`, and the one-argument functions sin,
//! cos, tan, exp, log, sqrt and abs. Variables are whatever names the
//! caller declares.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct ExprError {
    pub at: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.at, self.message)
    }
}

impl std::error::Error for ExprError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Func {
    fn by_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Exp => x.exp(),
            Func::Log => x.ln(),
            Func::Sqrt => x.sqrt(),
            Func::Abs => x.abs(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Expr {
    Const(f64),
    /// index into the caller's variable list
    Var(usize),
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn parse(src: &str, vars: &[&str]) -> Result<Expr, ExprError> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0, vars };
        let expr = p.expr()?;
        match p.peek() {
            None => Ok(expr),
            Some((at, _)) => Err(ExprError { at, message: "unexpected trailing input".into() }),
        }
    }

    pub fn eval(&self, vals: &[f64]) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var(i) => vals[*i],
            Expr::Neg(e) => -e.eval(vals),
            Expr::Call(f, e) => f.apply(e.eval(vals)),
            Expr::Add(a, b) => a.eval(vals) + b.eval(vals),
            Expr::Sub(a, b) => a.eval(vals) - b.eval(vals),
            Expr::Mul(a, b) => a.eval(vals) * b.eval(vals),
            Expr::Div(a, b) => a.eval(vals) / b.eval(vals),
            Expr::Pow(a, b) => a.eval(vals).powf(b.eval(vals)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((
                    i,
                    match c {
                        '+' => Token::Plus,
                        '-' => Token::Minus,
                        '*' => Token::Star,
                        '/' => Token::Slash,
                        '^' => Token::Caret,
                        '(' => Token::LParen,
                        _ => Token::RParen,
                    },
                ));
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && matches!(bytes[i] as char, '0'..='9' | '.') {
                    i += 1;
                }
                // exponent part
                if i < bytes.len()
                    && matches!(bytes[i] as char, 'e' | 'E')
                    && i + 1 < bytes.len()
                    && matches!(bytes[i + 1] as char, '0'..='9' | '+' | '-')
                {
                    i += 2;
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &src[start..i];
                let value = text.parse().map_err(|_| ExprError {
                    at: start,
                    message: format!("bad number {text:?}"),
                })?;
                out.push((start, Token::Num(value)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && matches!(bytes[i] as char, 'a'..='z' | 'A'..='Z' | '0'..='9' | '_')
                {
                    i += 1;
                }
                out.push((start, Token::Ident(src[start..i].to_string())));
            }
            other => {
                return Err(ExprError { at: i, message: format!("unexpected character {other:?}") })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, &Token)> {
        self.tokens.get(self.pos).map(|(at, t)| (*at, t))
    }

    fn bump(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect_rparen(&mut self, open_at: usize) -> Result<(), ExprError> {
        match self.bump() {
            Some((_, Token::RParen)) => Ok(()),
            _ => Err(ExprError { at: open_at, message: "unclosed parenthesis".into() }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some((_, t)) = self.peek() {
            let op = match t {
                Token::Plus => Expr::Add as fn(_, _) -> _,
                Token::Minus => Expr::Sub,
                _ => break,
            };
            self.bump();
            lhs = op(Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some((_, t)) = self.peek() {
            let op = match t {
                Token::Star => Expr::Mul as fn(_, _) -> _,
                Token::Slash => Expr::Div,
                _ => break,
            };
            self.bump();
            lhs = op(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if matches!(self.peek(), Some((_, Token::Minus))) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some((_, Token::Caret))) {
            self.bump();
            // right associative, and -x binds looser than ^
            let exponent = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.bump() {
            Some((_, Token::Num(v))) => Ok(Expr::Const(v)),
            Some((at, Token::LParen)) => {
                let inner = self.expr()?;
                self.expect_rparen(at)?;
                Ok(inner)
            }
            Some((at, Token::Ident(name))) => {
                if let Some(f) = Func::by_name(&name) {
                    return match self.bump() {
                        Some((open_at, Token::LParen)) => {
                            let arg = self.expr()?;
                            self.expect_rparen(open_at)?;
                            Ok(Expr::Call(f, Box::new(arg)))
                        }
                        _ => Err(ExprError {
                            at,
                            message: format!("{name} needs a parenthesized argument"),
                        }),
                    };
                }
                if name == "pi" {
                    return Ok(Expr::Const(std::f64::consts::PI));
                }
                match self.vars.iter().position(|v| **v == name) {
                    Some(i) => Ok(Expr::Var(i)),
                    None => Err(ExprError {
                        at,
                        message: format!(
                            "unknown name {name:?}; the variables here are {}",
                            self.vars.join(", ")
                        ),
                    }),
                }
            }
            Some((at, other)) => {
                Err(ExprError { at, message: format!("expected a value, found {other:?}") })
            }
            None => Err(ExprError { at: 0, message: "expression ends unexpectedly".into() }),
        }
    }
}
