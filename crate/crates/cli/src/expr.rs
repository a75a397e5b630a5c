//! Expression grammar for exponential polynomials, plus the matching
//! printer.
//!
//! ```text
//! expr   := '-'? term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' integer)?          -- 'e' '^' '(' expr ')' is special
//! base   := number | 'i' | 'pi' | 'e' | 'ln' '(' constant ')'
//!         | var | '(' expr ')' | 'exp' '(' expr ')'
//! var    := 'z' positive-integer
//! ```
//!
//! Division requires a constant divisor; exponent arguments of e^(…)/exp(…)
//! must be exponential-free polynomials; symbolic constants evaluate to
//! complex floats at parse time. Values parse directly into canonical
//! `ExpPoly`s, no intermediate tree.

use std::fmt;

use fermat_pdde::poly::Polynomial;
use fermat_pdde::{ExpPoly, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum ParseError {
    /// Malformed input: byte position and what was expected there.
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    /// Well-formed input denoting a function outside the engine's class.
    NotInClass { position: usize, reason: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax {
                position,
                expected,
                found,
            } => {
                write!(
                    f,
                    "syntax error at byte {position}: expected {expected}, found {found}"
                )
            }
            ParseError::NotInClass { position, reason } => {
                write!(
                    f,
                    "not in the exponential-polynomial class (byte {position}): {reason}"
                )
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(x) => format!("number {x}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                out.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                out.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                out.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                let slice = &text[start..i];
                let value = slice.parse::<f64>().map_err(|_| ParseError::Syntax {
                    position: start,
                    expected: "a decimal number".into(),
                    found: format!("'{slice}'"),
                })?;
                out.push((Tok::Number(value), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                // i sits at a char boundary: everything consumed so far is
                // ASCII, so take the whole (possibly multi-byte) character
                let found = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    position: i,
                    expected: "an operator, number, name or parenthesis".into(),
                    found: format!("'{found}'"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            position: self.here(),
            expected: expected.into(),
            found: self
                .peek()
                .map(|t| t.describe())
                .unwrap_or_else(|| "end of input".into()),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(expected))
        }
    }

    fn constant(&self, value: Scalar) -> ExpPoly {
        ExpPoly::constant(self.dim, value)
    }

    fn expr(&mut self) -> Result<ExpPoly, ParseError> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut value = self.term()?;
        if negate {
            value = value.scale(Scalar::new(-1.0, 0.0));
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    value = value.add(&rhs).map_err(|e| self.class_error(e))?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    value = value.sub(&rhs).map_err(|e| self.class_error(e))?;
                }
                _ => return Ok(value),
            }
        }
    }

    fn term(&mut self) -> Result<ExpPoly, ParseError> {
        let mut value = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    value = value.mul(&rhs).map_err(|e| self.class_error(e))?;
                }
                Some(Tok::Slash) => {
                    let at = self.here();
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let divisor = rhs.as_constant().ok_or_else(|| ParseError::NotInClass {
                        position: at,
                        reason: "division by a non-constant expression".into(),
                    })?;
                    if divisor.norm() == 0.0 {
                        return Err(ParseError::NotInClass {
                            position: at,
                            reason: "division by zero".into(),
                        });
                    }
                    value = value.scale(Scalar::new(1.0, 0.0) / divisor);
                }
                _ => return Ok(value),
            }
        }
    }

    fn class_error(&self, e: fermat_pdde::Error) -> ParseError {
        ParseError::NotInClass {
            position: self.here(),
            reason: e.to_string(),
        }
    }

    fn factor(&mut self) -> Result<ExpPoly, ParseError> {
        // the exponential form 'e^(expr)' takes precedence over the
        // integer-power rule
        if let Some(Tok::Ident(name)) = self.peek() {
            if name == "e"
                && self.tokens.get(self.pos + 1).map(|(t, _)| t) == Some(&Tok::Caret)
                && self.tokens.get(self.pos + 2).map(|(t, _)| t) == Some(&Tok::LParen)
            {
                self.pos += 2;
                return self.exponential();
            }
        }
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            let at = self.here();
            self.pos += 1;
            let power = match self.advance() {
                Some(Tok::Number(x)) if x.fract() == 0.0 && (0.0..=64.0).contains(&x) => x as u32,
                _ => {
                    return Err(ParseError::Syntax {
                        position: at,
                        expected: "a non-negative integer exponent (at most 64)".into(),
                        found: "something else".into(),
                    })
                }
            };
            let mut value = self.constant(Scalar::new(1.0, 0.0));
            for _ in 0..power {
                value = value.mul(&base).map_err(|e| self.class_error(e))?;
            }
            return Ok(value);
        }
        Ok(base)
    }

    /// Parses '(' expr ')' after e^ / exp and exponentiates it.
    fn exponential(&mut self) -> Result<ExpPoly, ParseError> {
        let at = self.here();
        self.expect(Tok::LParen, "'('")?;
        let inner = self.expr()?;
        self.expect(Tok::RParen, "')'")?;
        let poly = inner
            .as_polynomial()
            .ok_or_else(|| ParseError::NotInClass {
                position: at,
                reason: "exponent must be an exponential-free polynomial".into(),
            })?;
        Ok(ExpPoly::exp_of_poly(&poly))
    }

    fn base(&mut self) -> Result<ExpPoly, ParseError> {
        let at = self.here();
        let found = self
            .peek()
            .map(|t| t.describe())
            .unwrap_or_else(|| "end of input".into());
        match self.advance() {
            Some(Tok::Number(x)) => Ok(self.constant(Scalar::new(x, 0.0))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "i" => Ok(self.constant(Scalar::new(0.0, 1.0))),
                "pi" => Ok(self.constant(Scalar::new(std::f64::consts::PI, 0.0))),
                "e" => Ok(self.constant(Scalar::new(std::f64::consts::E, 0.0))),
                "exp" => self.exponential(),
                "ln" => {
                    self.expect(Tok::LParen, "'(' after ln")?;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    let value = inner.as_constant().ok_or_else(|| ParseError::NotInClass {
                        position: at,
                        reason: "ln argument must be a constant".into(),
                    })?;
                    if value.im != 0.0 || value.re <= 0.0 {
                        return Err(ParseError::NotInClass {
                            position: at,
                            reason: "ln argument must be a positive real".into(),
                        });
                    }
                    Ok(self.constant(Scalar::new(value.re.ln(), 0.0)))
                }
                _ => {
                    if let Some(rest) = name.strip_prefix('z') {
                        let index: usize = rest.parse().map_err(|_| ParseError::Syntax {
                            position: at,
                            expected: "a variable like z1, z2, ...".into(),
                            found: format!("'{name}'"),
                        })?;
                        if index == 0 || index > self.dim {
                            return Err(ParseError::Syntax {
                                position: at,
                                expected: format!("a variable index in 1..={}", self.dim),
                                found: format!("'{name}'"),
                            });
                        }
                        let var = Polynomial::variable(self.dim, index)
                            .expect("index checked against the dimension");
                        Ok(ExpPoly::from_poly(&var))
                    } else {
                        Err(ParseError::Syntax {
                            position: at,
                            expected: "a number, constant, variable or '('".into(),
                            found: format!("'{name}'"),
                        })
                    }
                }
            },
            _ => Err(ParseError::Syntax {
                position: at,
                expected: "a number, constant, variable or '('".into(),
                found,
            }),
        }
    }
}

/// Parses `text` into a canonical exponential polynomial in n = `dim`
/// variables z1..zn.
pub fn parse_expression(text: &str, dim: usize) -> Result<ExpPoly, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        dim,
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.syntax("end of input"));
    }
    Ok(value)
}

/// Parses an exponential-free polynomial.
pub fn parse_polynomial(text: &str, dim: usize) -> Result<Polynomial, ParseError> {
    let value = parse_expression(text, dim)?;
    value.as_polynomial().ok_or_else(|| ParseError::NotInClass {
        position: 0,
        reason: "expected an exponential-free polynomial".into(),
    })
}

fn fmt_complex(c: Scalar) -> String {
    if c.im == 0.0 {
        if c.re < 0.0 {
            format!("({})", c.re)
        } else {
            format!("{}", c.re)
        }
    } else if c.re == 0.0 {
        if c.im == 1.0 {
            "i".to_string()
        } else {
            format!("({}*i)", c.im)
        }
    } else if c.im < 0.0 {
        format!("({}-{}*i)", c.re, -c.im)
    } else {
        format!("({}+{}*i)", c.re, c.im)
    }
}

/// Canonical printable form; `parse_polynomial` inverts it exactly.
pub fn print_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::with_capacity(p.term_count());
    for (index, &coeff) in p.terms() {
        let mut factors = Vec::new();
        let is_constant_monomial = index.iter().all(|&e| e == 0);
        if coeff != Scalar::new(1.0, 0.0) || is_constant_monomial {
            factors.push(fmt_complex(coeff));
        }
        for (j, &e) in index.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("z{}", j + 1)),
                _ => factors.push(format!("z{}^{}", j + 1, e)),
            }
        }
        parts.push(factors.join("*"));
    }
    parts.join(" + ")
}

/// Canonical printable form; `parse_expression` inverts it canonically.
pub fn print_exppoly(f: &ExpPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::with_capacity(f.term_count());
    for term in f.terms() {
        let coeff = format!("({})", print_polynomial(term.coeff()));
        if term.exponent().is_zero() {
            parts.push(coeff);
        } else {
            parts.push(format!("{coeff}*e^({})", print_polynomial(term.exponent())));
        }
    }
    parts.join(" + ")
}
