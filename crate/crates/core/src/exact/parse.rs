//! Recursive-descent reader for rational-function text.
//!
//! Grammar (whitespace ignored, `−` accepted for `-`):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := integer | VAR | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{ExactError, RatFunc};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var,
    Op(char),
}

fn tokenize(text: &str, var: &str) -> Result<Vec<Tok>, ExactError> {
    let chars: Vec<char> = text.replace('\u{2212}', "-").chars().collect();
    let var_chars: Vec<char> = var.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Int(digits.parse().expect("ascii digits")));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if chars[start..i] != var_chars[..] {
                let name: String = chars[start..i].iter().collect();
                return Err(ExactError::Parse(format!(
                    "unknown variable {name:?} (expected {var:?})"
                )));
            }
            out.push(Tok::Var);
        } else {
            return Err(ExactError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ExactError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ExactError> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, ExactError> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ExactError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek_op() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let exp: u32 = match self.toks.get(self.pos) {
            Some(Tok::Int(n)) => u32::try_from(n)
                .map_err(|_| ExactError::Parse("exponent too large".into()))?,
            _ => return Err(ExactError::Parse("expected integer exponent".into())),
        };
        self.pos += 1;
        let p = base.pow(exp);
        if negative {
            p.recip()
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ExactError> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| ExactError::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(RatFunc::constant(n.into())),
            Tok::Var => Ok(RatFunc::var()),
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(ExactError::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op(c) => Err(ExactError::Parse(format!("unexpected {c:?}"))),
        }
    }
}

pub(crate) fn parse_ratfunc(text: &str, var: &str) -> Result<RatFunc, ExactError> {
    let toks = tokenize(text, var)?;
    if toks.is_empty() {
        return Err(ExactError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExactError::Parse(format!(
            "trailing input in {text:?}"
        )));
    }
    Ok(out)
}
