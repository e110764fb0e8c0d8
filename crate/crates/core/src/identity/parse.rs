use super::{IdentityAst, IdentityError, Term};

/// Parses `side = side`, where a side is a variable, a parenthesized product,
/// or one unparenthesized product of two terms. Whitespace is ignored.
pub fn parse_identity(text: &str) -> Result<IdentityAst, IdentityError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let lhs = p.side("left", |b| b == b'=')?;
    p.expect(b'=')?;
    let rhs = p.side("right", |_| false)?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(IdentityAst::new(lhs, rhs))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> IdentityError {
        IdentityError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), IdentityError> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.error(format!("expected `{}`, found `{}`", byte as char, b as char))),
            None => Err(self.error(format!("expected `{}`, found end of input", byte as char))),
        }
    }

    fn side(&mut self, which: &'static str, ends_side: impl Fn(u8) -> bool) -> Result<Term, IdentityError> {
        match self.peek() {
            None => return Err(IdentityError::EmptySide(which)),
            Some(b) if ends_side(b) => return Err(IdentityError::EmptySide(which)),
            _ => {}
        }
        let first = self.term()?;
        if self.peek() != Some(b'*') {
            return Ok(first);
        }
        self.pos += 1;
        let second = self.term()?;
        if self.peek() == Some(b'*') {
            return Err(self.error("ambiguous product; group it with parentheses"));
        }
        Ok(Term::product(first, second))
    }

    fn term(&mut self) -> Result<Term, IdentityError> {
        match self.peek() {
            Some(b) if b.is_ascii_lowercase() => {
                self.pos += 1;
                Ok(Term::Var(b as char))
            }
            Some(b'(') => {
                self.pos += 1;
                let left = self.term()?;
                self.expect(b'*')?;
                let right = self.term()?;
                self.expect(b')')?;
                Ok(Term::product(left, right))
            }
            Some(b) => Err(self.error(format!(
                "expected a variable `a`-`z` or `(`, found `{}`",
                b as char
            ))),
            None => Err(self.error("expected a term, found end of input")),
        }
    }
}
