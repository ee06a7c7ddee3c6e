use super::{IndexError, IndexExpr, Signed, Tensor};
use crate::symkernel::Expr;

struct P<'a> {
    s: &'a [u8],
    i: usize,
}

type R<T> = Result<T, IndexError>;

impl P<'_> {
    fn err<T>(&self, msg: &str) -> R<T> {
        Err(IndexError::Parse { pos: self.i, msg: msg.to_string() })
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> R<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> R<String> {
        self.ws();
        let st = self.i;
        while self.i < self.s.len() {
            let c = self.s[self.i];
            let ok = c.is_ascii_alphabetic() || c == b'_' || c == b'%' || (self.i > st && c.is_ascii_digit());
            if !ok {
                break;
            }
            self.i += 1;
        }
        if self.i == st {
            return self.err("expected a name");
        }
        Ok(String::from_utf8_lossy(&self.s[st..self.i]).into_owned())
    }

    fn number(&mut self) -> R<i64> {
        self.ws();
        let st = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        let txt = std::str::from_utf8(&self.s[st..self.i]).unwrap();
        txt.parse().or_else(|_| self.err("bad number"))
    }

    fn list(&mut self) -> R<Vec<Signed>> {
        self.expect(b'[')?;
        let mut out = vec![];
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            let minus = self.eat(b'-');
            out.push(Signed { label: self.ident()?, minus });
            if self.eat(b']') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }

    fn tensor(&mut self, name: &str) -> R<Tensor> {
        let first = self.list()?;
        let mut second = vec![];
        let mut deriv = vec![];
        if self.eat(b',') {
            let s = self.list()?;
            if s.iter().any(|x| x.minus) {
                return self.err("minus sign in the contravariant list");
            }
            second = s.into_iter().map(|x| x.label).collect();
            while self.eat(b',') {
                deriv.push(self.ident()?);
            }
        }
        self.expect(b')')?;
        Ok(Tensor::from_lists(name, &first, &second, &deriv))
    }

    fn atom(&mut self) -> R<IndexExpr> {
        match self.peek() {
            Some(b'-') => {
                self.i += 1;
                Ok(self.atom()?.scale(&Expr::int(-1)))
            }
            Some(b'(') => {
                self.i += 1;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(IndexExpr::constant(Expr::int(self.number()?))),
            Some(_) => {
                let name = self.ident()?;
                if self.eat(b'(') {
                    Ok(IndexExpr::tensor(self.tensor(&name)?))
                } else {
                    Ok(IndexExpr::tensor(Tensor::scalar(&name)))
                }
            }
            None => self.err("unexpected end of input"),
        }
    }

    fn product(&mut self) -> R<IndexExpr> {
        let mut e = self.atom()?;
        loop {
            if self.eat(b'*') {
                e = e.mul(&self.atom()?);
            } else if self.eat(b'/') {
                let n = self.number()?;
                if n == 0 {
                    return self.err("division by zero");
                }
                e = e.scale(&Expr::rational(1, n));
            } else {
                return Ok(e);
            }
        }
    }

    fn sum(&mut self) -> R<IndexExpr> {
        self.eat(b'+');
        let mut e = self.product()?;
        loop {
            if self.eat(b'+') {
                e = e.add(&self.product()?);
            } else if self.eat(b'-') {
                e = e.sub(&self.product()?);
            } else {
                return Ok(e);
            }
        }
    }
}

/// Parse sums of products of indexed objects, e.g.
/// `g([a,b],[])*T([],[b,c]) - 1/2*S([a],[c],d)`.
pub fn parse_index_expr(src: &str) -> Result<IndexExpr, IndexError> {
    let mut p = P { s: src.as_bytes(), i: 0 };
    let e = p.sum()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    e.validate()?;
    Ok(e)
}

/// Parse a single indexed object.
pub fn parse_tensor(src: &str) -> Result<Tensor, IndexError> {
    let mut p = P { s: src.as_bytes(), i: 0 };
    let name = p.ident()?;
    let t = if p.eat(b'(') { p.tensor(&name)? } else { Tensor::scalar(&name) };
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(t)
}
