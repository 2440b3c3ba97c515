//! Expression syntax for rational functions in `x` and `y`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := INT | 'x' | 'y' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::One;

use crate::bpoly::{BPoly, Var};
use crate::error::{Error, Result};
use crate::rat::{from_bigint, Rat};
use crate::ratfunc::RatFunc;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Int(BigInt),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&mut self, expected: &str) -> Result<T> {
        let found = self.describe();
        Err(Error::Parse {
            offset: self.pos,
            message: format!("expected {expected}, found {found}"),
        })
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(c) => format!("'{}'", c as char),
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        digits.parse().ok()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return self.err("a nonnegative integer exponent");
        }
        let at = self.pos;
        let e = self.integer().expect("digits");
        match u32::try_from(e) {
            Ok(e) => Ok(Expr::Pow(Box::new(base), e)),
            Err(_) => Err(Error::Parse {
                offset: at,
                message: "exponent too large".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Expr::Var(Var::X))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Expr::Var(Var::Y))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer().expect("digits"))),
            _ => self.err("a number, 'x', 'y' or '('"),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("an operator");
    }
    Ok(e)
}

impl Expr {
    pub fn lower(&self) -> Result<RatFunc> {
        Ok(match self {
            Expr::Int(n) => RatFunc::from_rat(from_bigint(n.clone())),
            Expr::Var(Var::X) => RatFunc::from_poly(BPoly::x()),
            Expr::Var(Var::Y) => RatFunc::from_poly(BPoly::y()),
            Expr::Neg(e) => -e.lower()?,
            Expr::Add(a, b) => a.lower()? + b.lower()?,
            Expr::Sub(a, b) => a.lower()? - b.lower()?,
            Expr::Mul(a, b) => a.lower()? * b.lower()?,
            Expr::Div(a, b) => a.lower()?.checked_div(&b.lower()?)?,
            Expr::Pow(a, e) => a.lower()?.pow(*e),
        })
    }
}

/// Parses and lowers in one step.
pub fn parse_ratfunc(input: &str) -> Result<RatFunc> {
    parse(input)?.lower()
}

/// Parses a polynomial, rejecting proper fractions.
pub fn parse_poly(input: &str) -> Result<BPoly> {
    let f = parse_ratfunc(input)?;
    match f.den().as_constant() {
        Some(c) => Ok(f.num().scale(&(Rat::one() / c))),
        None => Err(Error::Precondition(format!("{input} is not a polynomial"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(ts: &[(i64, u32, u32)]) -> BPoly {
        BPoly::from_i64_terms(ts)
    }

    #[test]
    fn nested_product_input() {
        let f = parse_ratfunc("-(x+y+4)/((x^2+2*x+2*x*y-1+2*y+y^2)*(x^2+2*x*y+y^2-2))").unwrap();
        let num = b(&[(-1, 1, 0), (-1, 0, 1), (-4, 0, 0)]);
        let d0 = b(&[
            (1, 2, 0),
            (2, 1, 0),
            (2, 1, 1),
            (-1, 0, 0),
            (2, 0, 1),
            (1, 0, 2),
        ]);
        let d1 = b(&[(1, 2, 0), (2, 1, 1), (1, 0, 2), (-2, 0, 0)]);
        assert_eq!(f, RatFunc::new(num, &d0 * &d1).unwrap());
    }

    #[test]
    fn atoms_and_precedence() {
        assert_eq!(parse("x").unwrap(), Expr::Var(Var::X));
        assert_eq!(
            parse_ratfunc("-x^2").unwrap(),
            RatFunc::from_poly(b(&[(-1, 2, 0)]))
        );
        assert_eq!(
            parse_ratfunc("x - y - 1").unwrap(),
            RatFunc::from_poly(b(&[(1, 1, 0), (-1, 0, 1), (-1, 0, 0)]))
        );
        assert_eq!(parse_ratfunc("1/2/x").unwrap().to_string(), "1/(2*x)");
        assert_eq!(
            parse_ratfunc(" 3 * ( x + 1 ) ^ 2 ").unwrap().to_string(),
            "3*x^2 + 6*x + 3"
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse("x^(-1)"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(parse("2x"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse("(x+1"), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(parse(""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(
            parse("x + z"),
            Err(Error::Parse { offset: 4, .. })
        ));
        assert_eq!(parse_ratfunc("1/(x-x)"), Err(Error::DivisionByZero));
        assert!(parse_poly("1/x").is_err());
        assert_eq!(
            parse_poly("(x^2-1)/2").unwrap().to_string(),
            "1/2*x^2 - 1/2"
        );
    }

    #[test]
    fn printed_forms_parse_back() {
        for s in [
            "(y^2 - y)/2",
            "(x*y + y + x)/(x^2 + x)",
            "-3/(2*x + 1)",
            "1/2*x^2 - 1/2",
        ] {
            let f = parse_ratfunc(s).unwrap();
            assert_eq!(parse_ratfunc(&f.to_string()).unwrap(), f);
        }
    }
}
