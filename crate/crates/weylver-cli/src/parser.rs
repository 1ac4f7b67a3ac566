//! Expression parser for Weyl-algebra elements, tensor chains and wedge
//! lists.
//!
//! Grammar (whitespace-insensitive, `e` reserved for eps):
//!   rational := int ['/' int]
//!   atom     := rational | 'e' ['^' int] | var ['^' uint]
//!   var      := ('p' | 'q') index
//!   term     := atom ('*' atom)*
//!   expr     := ['-'] term (('+' | '-') term)*
//!   tensor   := expr ('|' expr)*
//!   wedge    := tensor (';' tensor)*

use std::fmt;

use num::{BigInt, One};

use weylver_core::eps::{EpsScalar, Rational};
use weylver_core::hochschild::ChainTensor;
use weylver_core::weyl::WeylElement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Var(char, usize),
    Eps,
    Caret,
    Star,
    Plus,
    Minus,
    Slash,
    Bar,
    Semi,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = bytes[start..i].iter().collect();
                let value = digits.parse::<BigInt>().map_err(|_| ParseError {
                    pos: start,
                    message: format!("invalid integer `{digits}`"),
                })?;
                out.push((start, Token::Number(value)));
            }
            'p' | 'q' => {
                let start = i;
                i += 1;
                let num_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == num_start {
                    return Err(ParseError {
                        pos: start,
                        message: format!("variable `{c}` needs an index (like {c}1)"),
                    });
                }
                let digits: String = bytes[num_start..i].iter().collect();
                let index: usize = digits.parse().map_err(|_| ParseError {
                    pos: num_start,
                    message: format!("invalid variable index `{digits}`"),
                })?;
                out.push((start, Token::Var(c, index)));
            }
            'e' => {
                out.push((i, Token::Eps));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            '|' => {
                out.push((i, Token::Bar));
                i += 1;
            }
            ';' => {
                out.push((i, Token::Semi));
                i += 1;
            }
            other => {
                return Err(ParseError {
                    pos: i,
                    message: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(out)
}

/// Result of parsing: the most specific shape the input has.
#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Element(WeylElement),
    Chain(ChainTensor),
    Wedge(Vec<ChainTensor>),
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    n: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn expect_number(&mut self, what: &str) -> Result<BigInt, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Number(v)) => Ok(v),
            _ => Err(ParseError {
                pos,
                message: format!("expected {what}"),
            }),
        }
    }

    /// int := ['-'] digits (used after '^' and inside rationals).
    fn parse_signed_int(&mut self) -> Result<BigInt, ParseError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            Ok(-self.expect_number("an integer after `-`")?)
        } else {
            self.expect_number("an integer")
        }
    }

    fn parse_atom(&mut self) -> Result<WeylElement, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Number(numer)) => {
                let mut value = Rational::from_integer(numer);
                if matches!(self.peek(), Some(Token::Slash)) {
                    self.bump();
                    let dpos = self.pos();
                    let denom = self.parse_signed_int()?;
                    if denom == BigInt::from(0) {
                        return Err(ParseError {
                            pos: dpos,
                            message: "division by zero".into(),
                        });
                    }
                    value /= Rational::from_integer(denom);
                }
                Ok(WeylElement::scalar(
                    self.n,
                    EpsScalar::from_rational(value),
                ))
            }
            Some(Token::Eps) => {
                let mut exp = BigInt::one();
                if matches!(self.peek(), Some(Token::Caret)) {
                    self.bump();
                    exp = self.parse_signed_int()?;
                }
                let exp: i64 = exp.try_into().map_err(|_| ParseError {
                    pos,
                    message: "eps exponent out of range".into(),
                })?;
                Ok(WeylElement::scalar(self.n, EpsScalar::eps_pow(exp)))
            }
            Some(Token::Var(kind, index)) => {
                if index < 1 || index > self.n {
                    return Err(ParseError {
                        pos,
                        message: format!("unknown variable {kind}{index} (n = {})", self.n),
                    });
                }
                let base = match kind {
                    'p' => WeylElement::p(self.n, index),
                    _ => WeylElement::q(self.n, index),
                };
                let mut power = 1u32;
                if matches!(self.peek(), Some(Token::Caret)) {
                    self.bump();
                    let ppos = self.pos();
                    let raw = self.expect_number("a non-negative exponent")?;
                    power = raw.try_into().map_err(|_| ParseError {
                        pos: ppos,
                        message: "variable exponent out of range".into(),
                    })?;
                }
                let mut out = WeylElement::one(self.n);
                for _ in 0..power {
                    out = out.plain_mul(&base);
                }
                Ok(out)
            }
            other => Err(ParseError {
                pos,
                message: match other {
                    Some(t) => format!("expected an atom, found {t:?}"),
                    None => "expected an atom, found end of input".into(),
                },
            }),
        }
    }

    fn parse_term(&mut self) -> Result<WeylElement, ParseError> {
        let mut out = self.parse_atom()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            out = out.plain_mul(&self.parse_atom()?);
        }
        Ok(out)
    }

    fn parse_expr(&mut self) -> Result<WeylElement, ParseError> {
        let mut negate_first = false;
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            negate_first = true;
        }
        let mut out = self.parse_term()?;
        if negate_first {
            out = -&out;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    out = &out + &self.parse_term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    out = &out - &self.parse_term()?;
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn parse_tensor(&mut self) -> Result<Vec<WeylElement>, ParseError> {
        let mut slots = vec![self.parse_expr()?];
        while matches!(self.peek(), Some(Token::Bar)) {
            self.bump();
            slots.push(self.parse_expr()?);
        }
        Ok(slots)
    }

    fn parse_wedge(&mut self) -> Result<Vec<Vec<WeylElement>>, ParseError> {
        let mut tensors = vec![self.parse_tensor()?];
        while matches!(self.peek(), Some(Token::Semi)) {
            self.bump();
            tensors.push(self.parse_tensor()?);
        }
        Ok(tensors)
    }
}

/// Parse an expression, tensor (slots separated by `|`) or wedge list
/// (tensors separated by `;`) over the 2n-variable Weyl algebra.
pub fn parse_weyl_expression(text: &str, n: usize) -> Result<Parsed, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        cursor: 0,
        n,
        end: text.chars().count(),
    };
    let wedge = p.parse_wedge()?;
    if p.cursor != p.tokens.len() {
        return Err(ParseError {
            pos: p.pos(),
            message: "unexpected trailing input".into(),
        });
    }
    if wedge.len() == 1 {
        let tensor = wedge.into_iter().next().unwrap();
        if tensor.len() == 1 {
            Ok(Parsed::Element(tensor.into_iter().next().unwrap()))
        } else {
            Ok(Parsed::Chain(chain_from_slots(n, tensor)))
        }
    } else {
        Ok(Parsed::Wedge(
            wedge
                .into_iter()
                .map(|slots| chain_from_slots(n, slots))
                .collect(),
        ))
    }
}

fn chain_from_slots(n: usize, slots: Vec<WeylElement>) -> ChainTensor {
    let degree = slots.len() - 1;
    ChainTensor::from_terms(n, degree, vec![(EpsScalar::one(), slots)])
}

/// Parse a plain element (errors if tensors or wedges appear).
pub fn parse_element(text: &str, n: usize) -> Result<WeylElement, ParseError> {
    match parse_weyl_expression(text, n)? {
        Parsed::Element(e) => Ok(e),
        _ => Err(ParseError {
            pos: 0,
            message: "expected a single expression without `|` or `;`".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use weylver_core::eps::rat;

    #[test]
    fn parses_polynomial_with_eps() {
        let got = parse_element("p1*q1 + 1/2*e", 1).unwrap();
        let mut want = WeylElement::monomial(1, vec![1, 1], EpsScalar::one());
        want.add_term(vec![0, 0], &EpsScalar::term(1, rat(1, 2)));
        assert_eq!(got, want);
    }

    #[test]
    fn parses_tensor() {
        let got = parse_weyl_expression("1 | p1 | q1", 1).unwrap();
        let want = ChainTensor::elementary(vec![
            WeylElement::one(1),
            WeylElement::p(1, 1),
            WeylElement::q(1, 1),
        ]);
        assert_eq!(got, Parsed::Chain(want));
    }

    #[test]
    fn unknown_variable_is_an_error() {
        let err = parse_weyl_expression("e^-1*q2^3", 1).unwrap_err();
        assert!(err.message.contains("unknown variable q2"), "{err}");
        assert_eq!(err.pos, 5);
    }

    #[test]
    fn parses_wedge() {
        let got = parse_weyl_expression("p1 ; q1", 1).unwrap();
        match got {
            Parsed::Wedge(ts) => assert_eq!(ts.len(), 2),
            other => panic!("expected wedge, got {other:?}"),
        }
    }

    #[test]
    fn negative_eps_exponents_and_powers() {
        let got = parse_element("e^-1*q1^3", 1).unwrap();
        let want = WeylElement::monomial(1, vec![0, 3], EpsScalar::eps_pow(-1));
        assert_eq!(got, want);
        let got = parse_element("-3/4*p1^2 - e^2", 1).unwrap();
        let mut want = WeylElement::monomial(1, vec![2, 0], EpsScalar::rational(-3, 4));
        want.add_term(vec![0, 0], &EpsScalar::term(2, rat(-1, 1)));
        assert_eq!(got, want);
    }

    #[test]
    fn reports_positions() {
        let err = parse_weyl_expression("p1 + ", 1).unwrap_err();
        assert_eq!(err.pos, 5);
        let err = parse_weyl_expression("p1 $ q1", 1).unwrap_err();
        assert_eq!(err.pos, 3);
    }

    #[test]
    fn display_round_trips_through_parser() {
        let mut f = WeylElement::monomial(2, vec![1, 2, 0, 1], EpsScalar::term(-1, rat(3, 7)));
        f.add_term(vec![0, 0, 0, 0], &EpsScalar::term(2, rat(-1, 2)));
        f.add_term(vec![2, 0, 0, 0], &EpsScalar::one());
        let rendered = f.to_string();
        let reparsed = parse_element(&rendered, 2).unwrap();
        assert_eq!(reparsed, f, "rendered as {rendered}");
    }
}
