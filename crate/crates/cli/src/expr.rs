//! Parser for plane-curve polynomial expressions.
//!
//! Grammar: rational coefficients (`3`, `5/2`), the variables `x` and `y`,
//! the operators `+ - * ^` and parentheses. Exponents are nonnegative
//! integers. Multiplication is always explicit (`2*x`, not `2x`).

use polarbetti::qpoly::bipoly::BiPoly;
use polarbetti::qpoly::rat::{parse_rat, Rat};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("curve expression error at byte {offset}: {message}")]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Number(Rat),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => { tokens.push((i, Token::Plus)); i += 1; }
            '-' => { tokens.push((i, Token::Minus)); i += 1; }
            '*' => { tokens.push((i, Token::Star)); i += 1; }
            '^' => { tokens.push((i, Token::Caret)); i += 1; }
            '(' => { tokens.push((i, Token::Open)); i += 1; }
            ')' => { tokens.push((i, Token::Close)); i += 1; }
            'x' => { tokens.push((i, Token::X)); i += 1; }
            'y' => { tokens.push((i, Token::Y)); i += 1; }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // optional /q with digits
                if i < bytes.len() && bytes[i] == b'/' {
                    let mut j = i + 1;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j > i + 1 {
                        i = j;
                    }
                }
                let text = &src[start..i];
                let value = parse_rat(text).ok_or(ExprError {
                    offset: start,
                    message: format!("`{text}` is not a rational"),
                })?;
                tokens.push((start, Token::Number(value)));
            }
            other => {
                return Err(ExprError {
                    offset: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<BiPoly, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly, ExprError> {
        let mut acc = self.unary()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BiPoly, ExprError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<BiPoly, ExprError> {
        let base = self.atom()?;
        if !matches!(self.peek(), Some(Token::Caret)) {
            return Ok(base);
        }
        self.bump();
        let offset = self.offset();
        let exponent = match self.bump() {
            Some(Token::Number(n)) if n.is_integer() => u32::try_from(n.to_integer()).ok(),
            _ => None,
        };
        match exponent {
            Some(e) => {
                let mut acc = BiPoly::constant(Rat::from_integer(1.into()));
                for _ in 0..e {
                    acc = &acc * &base;
                }
                Ok(acc)
            }
            None => Err(ExprError {
                offset,
                message: "exponent must be a nonnegative integer".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<BiPoly, ExprError> {
        let offset = self.offset();
        match self.bump() {
            Some(Token::Number(n)) => Ok(BiPoly::constant(n)),
            Some(Token::X) => Ok(BiPoly::x()),
            Some(Token::Y) => Ok(BiPoly::y()),
            Some(Token::Open) => {
                let inner = self.expr()?;
                let offset = self.offset();
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(ExprError { offset, message: "expected `)`".into() }),
                }
            }
            other => Err(ExprError {
                offset,
                message: match other {
                    Some(t) => format!("unexpected token {t:?}"),
                    None => "unexpected end of expression".into(),
                },
            }),
        }
    }
}

/// Parse a curve expression into a bivariate polynomial.
pub fn parse_curve(src: &str) -> Result<BiPoly, ExprError> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(ExprError { offset: 0, message: "empty expression".into() });
    }
    let mut parser = Parser { tokens, pos: 0, len: src.len() };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(ExprError {
            offset: parser.offset(),
            message: "trailing tokens after expression".into(),
        });
    }
    Ok(poly)
}
