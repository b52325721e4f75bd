//! Parser for the polynomial expression syntax.
//!
//! Integer literals, generator names (`x1`..`xd` by default), `h` for ħ,
//! `+ - * / ^` and parentheses. Adjacent factors multiply (`2h`, `(1/2)h`).
//! Division is only by invertible scalars. Products are noncommutative;
//! [`parse_sym`] abelianizes the result. A trailing `(mod h^k)` annotation
//! is accepted and reported by [`parse_annotated`].

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{abelianize, HSeries, NCPoly, NCWord, Names, SymPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(src: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col);
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Num(s.parse().expect("digits")), l0, c0));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                advance(&mut i, &mut line, &mut col);
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), l0, c0));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(Error::Parse {
                    line: l0,
                    column: c0,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        advance(&mut i, &mut line, &mut col);
        toks.push((t, l0, c0));
    }
    toks.push((Tok::End, line, col));
    Ok(Lexer { toks })
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    names: &'a Names,
    order: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (_, line, column) = &self.toks[self.pos];
        Err(Error::Parse {
            line: *line,
            column: *column,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn dim(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                -self.term()?
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let d = self.factor()?;
                    acc = self.divide(acc, d)?;
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn divide(&self, num: NCPoly, den: NCPoly) -> Result<NCPoly> {
        let scalar = match den.leading() {
            Some((w, c)) if den.len() == 1 && w.is_empty() => c.clone(),
            _ => return self.err("division is only defined by nonzero scalars"),
        };
        match scalar.inverse() {
            Some(inv) => Ok(num.scale(&inv)),
            None => self.err("division by a non-invertible scalar"),
        }
    }

    fn factor(&mut self) -> Result<NCPoly> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.factor()?)
            }
            Tok::Plus => {
                self.bump();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<NCPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = match self.bump() {
            Tok::Num(n) => n,
            _ => {
                self.pos -= 1;
                return self.err("expected an integer exponent");
            }
        };
        let e: u32 = match e.try_into() {
            Ok(e) if e <= 64 => e,
            _ => return self.err("exponent too large"),
        };
        let mut acc = NCPoly::one(self.dim(), self.order);
        for _ in 0..e {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<NCPoly> {
        let dim = self.dim();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(NCPoly::constant(
                    dim,
                    HSeries::constant(BigRational::from_integer(n), self.order),
                ))
            }
            Tok::Ident(name) => {
                if name == "h" {
                    self.bump();
                    return Ok(NCPoly::constant(dim, HSeries::hbar(self.order)));
                }
                match self.names.index_of(&name) {
                    Some(i) => {
                        self.bump();
                        Ok(NCPoly::monomial(dim, self.order, NCWord::letter(i)))
                    }
                    None => self.err(format!("unknown generator {name:?}")),
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            t => self.err(format!("unexpected token {t:?}")),
        }
    }
}

/// Splits off a trailing `(mod h^k)` annotation.
fn strip_annotation(src: &str) -> (&str, Option<usize>) {
    let t = src.trim_end();
    if let Some(body) = t.strip_suffix(')') {
        if let Some(idx) = body.rfind("(mod") {
            let inner = body[idx + 4..].trim();
            if let Some(k) = inner.strip_prefix("h^").and_then(|k| k.trim().parse().ok()) {
                return (&t[..idx], Some(k));
            }
            if inner == "h" {
                return (&t[..idx], Some(1));
            }
        }
    }
    (src, None)
}

/// Parses into T(V)[ħ]/ħ^{order+1}, returning any `(mod h^k)` annotation.
pub fn parse_annotated(src: &str, names: &Names, order: usize) -> Result<(NCPoly, Option<usize>)> {
    let (body, modulus) = strip_annotation(src);
    let lexer = lex(body)?;
    let mut p = Parser {
        toks: lexer.toks,
        pos: 0,
        names,
        order,
    };
    let value = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok((value, modulus))
}

pub fn parse_nc(src: &str, names: &Names, order: usize) -> Result<NCPoly> {
    parse_annotated(src, names, order).map(|(p, _)| p)
}

pub fn parse_sym(src: &str, names: &Names, order: usize) -> Result<SymPoly> {
    parse_nc(src, names, order).map(|p| abelianize(&p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hseries::rational;

    fn names() -> Names {
        Names::standard(3)
    }

    #[test]
    fn noncommutative_products_keep_order() {
        let p = parse_nc("x2*x1 - x1*x2", &names(), 2).unwrap();
        assert_eq!(p.len(), 2);
        assert!(parse_sym("x2*x1 - x1*x2", &names(), 2).unwrap().is_zero());
    }

    #[test]
    fn implicit_multiplication_and_division() {
        let a = parse_nc("(1/2)h", &names(), 2).unwrap();
        let b = parse_nc("h/2", &names(), 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a,
            NCPoly::constant(3, HSeries::monomial(rational(1, 2), 1, 2))
        );
        assert_eq!(
            parse_nc("2h*x3", &names(), 2).unwrap(),
            parse_nc("2 * h * x3", &names(), 2).unwrap()
        );
    }

    #[test]
    fn powers() {
        let p = parse_nc("x1^2*x2", &names(), 0).unwrap();
        assert_eq!(p, parse_nc("x1*x1*x2", &names(), 0).unwrap());
        assert!(parse_nc("h^3", &names(), 2).unwrap().is_zero());
    }

    #[test]
    fn annotation() {
        let (p, m) = parse_annotated("x1*x2 - h*x1*x2  (mod h^2)", &Names::standard(2), 1).unwrap();
        assert_eq!(m, Some(2));
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_nc("x1 +\n  y7", &names(), 1) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_nc("x1 / x2", &names(), 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_nc("x1 / h", &names(), 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_nc("(x1", &names(), 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_nc("x1 $", &names(), 1), Err(Error::Parse { .. })));
    }
}
