use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::expr::{Expr, Func};
use super::SymError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    ImagUnit,
    Pi,
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(usize, Tok), SymError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((start, Tok::End));
        }
        let c = self.src[self.pos];
        if c.is_ascii_digit() {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos] == b'.' {
                return Err(SymError::Syntax {
                    pos: self.pos,
                    msg: "decimal numbers are not supported; use a rational such as 1/2".into(),
                });
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return Ok((start, Tok::Int(s.parse().unwrap())));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return Ok((start, Tok::Ident(s.to_string())));
        }
        if c == b'%' {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return match s {
                "%i" => Ok((start, Tok::ImagUnit)),
                "%pi" => Ok((start, Tok::Pi)),
                _ => Err(SymError::Syntax {
                    pos: start,
                    msg: format!("unknown constant '{}'", s),
                }),
            };
        }
        if b"+-*/^(),".contains(&c) {
            self.pos += 1;
            return Ok((start, Tok::Op(c as char)));
        }
        Err(SymError::Syntax {
            pos: start,
            msg: format!("unexpected character '{}'", c as char),
        })
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<(), SymError> {
        let (p, t) = self.lex.next()?;
        self.at = p;
        self.tok = t;
        Ok(())
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SymError> {
        Err(SymError::Syntax {
            pos: self.at,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), SymError> {
        if self.tok == Tok::Op(c) {
            self.bump()
        } else {
            self.err(format!("expected '{}'", c))
        }
    }

    fn expr(&mut self) -> Result<Expr, SymError> {
        let mut acc = vec![self.term()?];
        loop {
            match self.tok {
                Tok::Op('+') => {
                    self.bump()?;
                    acc.push(self.term()?);
                }
                Tok::Op('-') => {
                    self.bump()?;
                    acc.push(Expr::neg(self.term()?));
                }
                _ => break,
            }
        }
        Ok(Expr::add(acc))
    }

    fn term(&mut self) -> Result<Expr, SymError> {
        let mut acc = vec![self.unary()?];
        loop {
            match self.tok {
                Tok::Op('*') => {
                    self.bump()?;
                    acc.push(self.unary()?);
                }
                Tok::Op('/') => {
                    self.bump()?;
                    let at = self.at;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(SymError::Syntax {
                            pos: at,
                            msg: "division by zero".into(),
                        });
                    }
                    acc.push(Expr::pow(d, -1));
                }
                _ => break,
            }
        }
        Ok(Expr::mul(acc))
    }

    fn unary(&mut self) -> Result<Expr, SymError> {
        match self.tok {
            Tok::Op('-') => {
                self.bump()?;
                Ok(Expr::neg(self.unary()?))
            }
            Tok::Op('+') => {
                self.bump()?;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, SymError> {
        let base = self.atom()?;
        if self.tok != Tok::Op('^') {
            return Ok(base);
        }
        self.bump()?;
        let at = self.at;
        // right associative; the exponent may carry its own sign
        let ex = self.unary()?;
        let q = match ex.as_num() {
            Some(q) => q.clone(),
            None => {
                return Err(SymError::Syntax {
                    pos: at,
                    msg: "exponent must be a rational constant".into(),
                })
            }
        };
        let den = q.denom().to_i64();
        let num = q.numer().to_i64();
        let bad = |msg: &str| SymError::Syntax {
            pos: at,
            msg: msg.into(),
        };
        let num = num.ok_or_else(|| bad("exponent too large"))?;
        if base.is_zero() && num < 0 {
            return Err(bad("division by zero"));
        }
        match den {
            Some(1) => Ok(Expr::pow(base, num)),
            Some(2) => Ok(Expr::pow_half(base, num)),
            _ => Err(bad("only integer and half-integer exponents are supported")),
        }
    }

    fn atom(&mut self) -> Result<Expr, SymError> {
        let tok = self.tok.clone();
        match tok {
            Tok::Int(n) => {
                self.bump()?;
                Ok(Expr::bigint(n))
            }
            Tok::ImagUnit => {
                self.bump()?;
                Ok(Expr::i())
            }
            Tok::Pi => {
                self.bump()?;
                Ok(Expr::pi())
            }
            Tok::Ident(name) => {
                let at = self.at;
                self.bump()?;
                if self.tok == Tok::Op('(') {
                    let f = match Func::from_name(&name) {
                        Some(f) => f,
                        None => {
                            return Err(SymError::UnknownFunction { pos: at, name });
                        }
                    };
                    self.bump()?;
                    let arg = self.expr()?;
                    if self.tok == Tok::Op(',') {
                        return self.err(format!("{} takes one argument", name));
                    }
                    self.expect(')')?;
                    if f == Func::Log && arg.as_num().is_some_and(|q| !q.is_positive()) {
                        return Err(SymError::Syntax {
                            pos: at,
                            msg: "log of a non-positive constant".into(),
                        });
                    }
                    Ok(Expr::apply(f, arg))
                } else {
                    Ok(Expr::sym(&name))
                }
            }
            Tok::Op('(') => {
                self.bump()?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Op(c) => self.err(format!("unexpected '{}'", c)),
        }
    }
}

/// Parse an expression string into canonical form.
pub fn parse(text: &str) -> Result<Expr, SymError> {
    let mut p = Parser {
        lex: Lexer {
            src: text.as_bytes(),
            pos: 0,
        },
        tok: Tok::End,
        at: 0,
    };
    p.bump()?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return p.err("trailing input");
    }
    Ok(e)
}
